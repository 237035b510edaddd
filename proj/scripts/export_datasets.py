#!/usr/bin/env python3
"""Write the four evaluation datasets as CSV files under data/.

Uses the copies bundled with scikit-learn, so no network access is needed.
Feature names are normalized to plain words ("sepal width", "alcalinity of ash",
"pixel 6,4") and the class label goes into a trailing "class" column.
"""
import csv
import pathlib
import re

from sklearn import datasets

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def clean(name):
    name = str(name)
    name = re.sub(r"\s*\(cm\)$", "", name)
    m = re.fullmatch(r"pixel_(\d+)_(\d+)", name)
    if m:
        return f"pixel {m.group(1)},{m.group(2)}"
    return name.replace("_", " ")


def write(stem, bunch):
    names = [clean(n) for n in bunch.feature_names]
    if hasattr(bunch, "target_names"):
        classes = [str(bunch.target_names[t]) for t in bunch.target]
    else:
        classes = [str(t) for t in bunch.target]
    OUT.mkdir(exist_ok=True)
    with open(OUT / f"{stem}.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names + ["class"])
        for row, label in zip(bunch.data, classes):
            w.writerow([repr(float(v)) for v in row] + [label])


if __name__ == "__main__":
    write("iris", datasets.load_iris())
    write("wine", datasets.load_wine())
    write("cancer", datasets.load_breast_cancer())
    write("digits", datasets.load_digits())
