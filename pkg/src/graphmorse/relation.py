"""Relation matrices, thresholding and matrix file I/O."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class MatrixFormatError(ValueError):
    """Raised when a matrix file or array cannot be interpreted."""


@dataclass(frozen=True, eq=False)
class RelationMatrix:
    """An n x n table of real weights W(i, j).

    Indices are 1-based in the public accessors, matching the cell names
    ``v1 .. vn``.  Diagonal entries are stored but never read.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise MatrixFormatError(f"relation matrix must be square and non-empty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise MatrixFormatError("relation matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __call__(self, i: int, j: int) -> float:
        return float(self.entries[i - 1, j - 1])

    def off_diagonal(self) -> np.ndarray:
        mask = ~np.eye(self.n, dtype=bool)
        return self.entries[mask]

    def __eq__(self, other):
        if not isinstance(other, RelationMatrix):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.off_diagonal(), other.off_diagonal()))

    def __hash__(self):
        return hash((self.n, self.off_diagonal().tobytes()))

    def to_list(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class BooleanRelation:
    """The set of ordered pairs (i, j), i != j, whose weight exceeds a threshold."""

    n: int
    active: frozenset[tuple[int, int]]

    def __contains__(self, pair) -> bool:
        return pair in self.active


def threshold(W: RelationMatrix, lam: float) -> BooleanRelation:
    """Pairs with ``W(i, j) > lam`` (strict; entries equal to ``lam`` stay inactive)."""
    idx = np.argwhere(W.entries > lam)
    active = frozenset((int(i) + 1, int(j) + 1) for i, j in idx if i != j)
    return BooleanRelation(W.n, active)


def critical_values(W: RelationMatrix) -> list[float]:
    """Distinct off-diagonal entries in ascending order."""
    return [float(x) for x in np.unique(W.off_diagonal())]


def sup_distance(W: RelationMatrix, other: RelationMatrix) -> float:
    if W.n != other.n:
        raise ValueError(f"dimension mismatch: {W.n} vs {other.n}")
    if W.n == 1:
        return 0.0
    return float(np.max(np.abs(W.off_diagonal() - other.off_diagonal())))


def perturb(W: RelationMatrix, eps: float, seed: int) -> RelationMatrix:
    """Shift every off-diagonal entry by an independent uniform draw from [-eps, eps]."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    rng = np.random.default_rng(seed)
    base = W.entries
    noise = rng.uniform(-eps, eps, size=base.shape)
    np.fill_diagonal(noise, 0.0)
    out = base + noise
    # float rounding of base + noise may overshoot the eps-ball by an ulp
    bad = np.abs(out - base) > eps
    while np.any(bad):
        out[bad] = np.nextafter(out[bad], base[bad])
        bad = np.abs(out - base) > eps
    return RelationMatrix(out)


# -- file formats -----------------------------------------------------------

def parse_csv(text: str) -> RelationMatrix:
    rows = [row for row in csv.reader(io.StringIO(text)) if any(field.strip() for field in row)]
    if not rows:
        raise MatrixFormatError("empty CSV matrix")
    n = len(rows)
    values = []
    for lineno, row in enumerate(rows, 1):
        if len(row) != n:
            raise MatrixFormatError(f"row {lineno} has {len(row)} fields, expected {n}")
        try:
            values.append([float(field) for field in row])
        except ValueError as exc:
            raise MatrixFormatError(f"row {lineno}: {exc}") from None
    return RelationMatrix(np.array(values))


def parse_json(text: str) -> RelationMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "entries" not in data:
        raise MatrixFormatError('JSON matrix must be an object with "n" and "entries"')
    n, entries = data["n"], data["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError('"n" must be a positive integer')
    if not isinstance(entries, list) or len(entries) != n * n:
        raise MatrixFormatError(f'"entries" must be a flat list of {n * n} numbers')
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entries):
        raise MatrixFormatError('"entries" must contain only numbers')
    return RelationMatrix(np.array(entries, dtype=float).reshape(n, n))


def format_number(x: float) -> str:
    """Shortest decimal text that reads back to exactly ``x``."""
    short = f"{x:.12g}"
    if float(short) == x:
        return short
    return repr(float(x))


def to_csv(W: RelationMatrix) -> str:
    return "".join(",".join(format_number(x) for x in row) + "\n" for row in W.to_list())


def to_json(W: RelationMatrix) -> str:
    flat = [float(x) for x in W.entries.ravel()]
    return json.dumps({"n": W.n, "entries": flat}) + "\n"


def read_matrix(path: str | Path) -> RelationMatrix:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_csv(text)


def write_matrix(W: RelationMatrix, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    path.write_text(to_json(W) if fmt == "json" else to_csv(W))


def markov_relation(P) -> RelationMatrix:
    """Relation matrix from a row-stochastic transition matrix (diagonal zeroed)."""
    P = np.array(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise MatrixFormatError("transition matrix must be square")
    if np.any(P < 0):
        raise MatrixFormatError("transition probabilities must be nonnegative")
    sums = P.sum(axis=1)
    bad = [i + 1 for i, s in enumerate(sums) if not math.isclose(s, 1.0, rel_tol=0.0, abs_tol=1e-9)]
    if bad:
        raise MatrixFormatError(f"rows {bad} do not sum to 1 (sums: {[float(sums[i - 1]) for i in bad]})")
    W = P.copy()
    np.fill_diagonal(W, 0.0)
    return RelationMatrix(W)


def random_relation(n: int, seed: int, decimals: int | None = 4) -> RelationMatrix:
    rng = np.random.default_rng(seed)
    W = rng.uniform(0.0, 1.0, size=(n, n))
    if decimals is not None:
        W = np.round(W, decimals)
    np.fill_diagonal(W, 0.0)
    return RelationMatrix(W)


def random_markov(n: int, seed: int) -> np.ndarray:
    """A random row-stochastic matrix with Dirichlet(1, ..., 1) rows."""
    rng = np.random.default_rng(seed)
    P = rng.dirichlet(np.ones(n), size=n)
    # renormalise so each row sums to 1 within the validation tolerance
    return P / P.sum(axis=1, keepdims=True)
