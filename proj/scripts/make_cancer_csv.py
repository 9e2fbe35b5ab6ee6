#!/usr/bin/env python3
"""Regenerate data/cancer.csv from scikit-learn's bundled copy of the UCI
Wisconsin Diagnostic Breast Cancer dataset (569 rows, original row order).

The label column is written as the original B/M characters so the loader's
label mapping path gets exercised: --label-map B=0,M=1.
"""
import os
from sklearn.datasets import load_breast_cancer

out = os.path.join(os.path.dirname(__file__), "..", "data", "cancer.csv")
b = load_breast_cancer()
names = [n.replace(" ", "_") for n in b.feature_names]
os.makedirs(os.path.dirname(out), exist_ok=True)
with open(out, "w") as f:
    f.write("diagnosis," + ",".join(names) + "\n")
    for row, target in zip(b.data, b.target):
        label = "B" if target == 1 else "M"
        f.write(label + "," + ",".join(repr(float(v)) for v in row) + "\n")
print("wrote", out)
