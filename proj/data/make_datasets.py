#!/usr/bin/env python3
"""Regenerates the bundled example datasets.

- iris.csv: the classic 150-row iris table (via scikit-learn), 4 numeric
  attributes, 3 classes.
- diabetes.csv: a deterministic synthetic stand-in with the shape of the
  8-attribute / 768-row / 2-class Pima diabetes table. Class-dependent
  feature distributions make it learnable; ~2% of feature cells are missing.

Both files use the project CSV dialect: header row, comma separated, `?`
for missing, class label in the last column.
"""

import numpy as np
from sklearn.datasets import load_iris


def shortest(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def write_iris(path: str) -> None:
    iris = load_iris()
    labels = ["setosa", "versicolour", "virginica"]
    with open(path, "w", newline="\n") as f:
        f.write("SL,SW,PL,PW,class\n")
        for row, target in zip(iris.data, iris.target):
            cells = [shortest(v) for v in row]
            f.write(",".join(cells) + "," + labels[int(target)] + "\n")


def write_diabetes(path: str, n: int = 768, positives: int = 268) -> None:
    rng = np.random.default_rng(20130731)
    names = ["preg", "plas", "pres", "skin", "insu", "mass", "pedi", "age"]
    # per-class means; a couple of columns carry no signal
    mean_neg = np.array([3.0, 110.0, 68.0, 20.0, 70.0, 30.0, 0.4, 31.0])
    mean_pos = np.array([4.8, 142.0, 72.0, 23.0, 110.0, 35.5, 0.55, 37.0])
    sd = np.array([3.2, 26.0, 12.0, 10.0, 85.0, 6.8, 0.3, 11.0])
    mean_pos[2] = mean_neg[2]  # 'pres' ~ noise
    decimals = [0, 0, 0, 0, 0, 1, 3, 0]

    y = np.zeros(n, dtype=int)
    y[rng.permutation(n)[:positives]] = 1
    rows = []
    for i in range(n):
        mu = mean_pos if y[i] == 1 else mean_neg
        x = rng.normal(mu, sd)
        x = np.maximum(x, 0.0)
        cells = [shortest(round(v, d)) for v, d in zip(x, decimals)]
        rows.append(cells)

    # scatter missing cells over the feature columns only
    total_cells = n * len(names)
    n_missing = int(total_cells * 0.02)
    flat = rng.permutation(total_cells)[:n_missing]
    for idx in flat:
        rows[idx // len(names)][idx % len(names)] = "?"

    labels = ["tested_negative", "tested_positive"]
    with open(path, "w", newline="\n") as f:
        f.write(",".join(names) + ",class\n")
        for cells, target in zip(rows, y):
            f.write(",".join(cells) + "," + labels[int(target)] + "\n")


if __name__ == "__main__":
    write_iris("iris.csv")
    write_diabetes("diabetes.csv")
    print("wrote iris.csv, diabetes.csv")
