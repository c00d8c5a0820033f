"""The seven-point toy data set and its hand-checkable objective values."""
from __future__ import annotations

import numpy as np

from .objectives import deepest, objective_lst_k, objective_lts
from .regression import Dataset

X = (5.0, 5.5, 4.0, 3.5, 3.0, 2.5, -2.0)
Y = (-0.5, -0.5, 6.0, 4.0, 2.4, 2.0, 0.5)

FLAT = (0.0, 0.0)       # y = 0
DIAGONAL = (0.0, 1.0)   # y = x

LINE_NAMES = {FLAT: "y=0", DIAGONAL: "y=x"}

# (criterion, line, size, published value)
PUBLISHED = (
    ("lts", FLAT, 4, 4.75),
    ("lts", DIAGONAL, 4, 4.86),
    ("lts", FLAT, 5, 8.525),
    ("lts", DIAGONAL, 5, 11.11),
    ("lst_k", FLAT, 4, 40.61),
    ("lst_k", DIAGONAL, 4, 26.01),
)

# published preference of each criterion between the two lines
PUBLISHED_VERDICTS = {("lts", 4): "y=0", ("lts", 5): "y=0", ("lst_k", 4): "y=x"}


def dataset() -> Dataset:
    return Dataset(np.array(X), np.array(Y))


def _decimals(value: float) -> int:
    text = repr(value)
    return len(text.split(".")[1]) if "." in text else 0


def matches(computed: float, published: float) -> bool:
    """Agreement to the precision the published value is printed with."""
    return abs(computed - published) <= 0.5 * 10.0 ** -_decimals(published) + 1e-12


def evaluate(criterion: str, line, size: int, d: Dataset = None) -> float:
    d = dataset() if d is None else d
    if criterion == "lts":
        return objective_lts(d, line, size)
    return objective_lst_k(d, line, size)


def report() -> dict:
    d = dataset()
    rows = []
    for criterion, line, size, published in PUBLISHED:
        value = evaluate(criterion, line, size, d)
        if criterion == "lts":
            r2 = (np.asarray(Y) - np.asarray(X) * line[1] - line[0]) ** 2
            kept = np.sort(np.argsort(r2, kind="stable")[:size])
        else:
            kept = deepest(d, line, size)
        rows.append({
            "criterion": criterion, "line": LINE_NAMES[line], "size": size,
            "computed": value, "published": published,
            "kept": [int(i) + 1 for i in kept],
            "status": "MATCH" if matches(value, published) else "MISMATCH",
        })
    verdicts = []
    for (criterion, size), published in PUBLISHED_VERDICTS.items():
        a = evaluate(criterion, FLAT, size, d)
        b = evaluate(criterion, DIAGONAL, size, d)
        pick = "y=0" if a < b else "y=x" if b < a else "tie"
        verdicts.append({
            "criterion": criterion, "size": size, "prefers": pick,
            "published": published,
            "status": "MATCH" if pick == published else "MISMATCH",
        })
    return {"rows": rows, "verdicts": verdicts}
