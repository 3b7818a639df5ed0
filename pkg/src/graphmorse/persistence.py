"""Threshold sweeps and Morse persistence diagrams."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .conley import ConleyIndex, conley_index
from .morse import MorseDecomposition, build_mgraph, morse_decomposition
from .multivector import MultivectorField, build_mvf
from .relation import RelationMatrix, critical_values
from .space import Cell, GraphSpace, parse_cell


@dataclass(frozen=True)
class Regime:
    """One constant piece of the filtration.

    ``parameter`` is the threshold the field was evaluated at.  For every
    regime but the last it is a critical value c, and the regime holds for
    thresholds in [c, next larger critical value).  The final regime sits
    below the smallest critical value with every relation active.
    """

    parameter: float
    mvf: MultivectorField
    decomposition: MorseDecomposition
    all_active: bool = False


@dataclass(frozen=True)
class FiltrationScan:
    regimes: tuple[Regime, ...]
    critical_values: tuple[float, ...]


def _regime_at(space, W, lam, all_active=False) -> Regime:
    mvf = build_mvf(space, W, lam)
    return Regime(lam, mvf, morse_decomposition(build_mgraph(space, mvf)), all_active)


def scan_filtration(space: GraphSpace, W: RelationMatrix, threads: int = 1) -> FiltrationScan:
    """Evaluate the field at each critical value (descending), then below them all."""
    if W.n != space.n:
        raise ValueError(f"dimension mismatch: matrix n={W.n}, space n={space.n}")
    crit = critical_values(W)
    if not crit:
        return FiltrationScan((_regime_at(space, W, 0.0, all_active=True),), ())
    if len(crit) > 1:
        delta = min(b - a for a, b in zip(crit, crit[1:])) / 2
    else:
        delta = 1.0
    params = [(c, False) for c in reversed(crit)] + [(crit[0] - delta, True)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            regimes = list(pool.map(lambda p: _regime_at(space, W, *p), params))
    else:
        regimes = [_regime_at(space, W, *p) for p in params]
    return FiltrationScan(tuple(regimes), tuple(crit))


@dataclass(frozen=True)
class PersistencePoint:
    birth: float
    death: float
    essential: bool
    representative: Cell
    index_at_birth: ConleyIndex
    trajectory: tuple[tuple[float, ConleyIndex], ...] | None = field(default=None, compare=False)

    @property
    def beta0(self) -> int:
        return self.index_at_birth.beta0

    @property
    def beta1(self) -> int:
        return self.index_at_birth.beta1

    @property
    def lifetime(self) -> float:
        return self.birth - self.death


@dataclass(frozen=True)
class PersistenceDiagram:
    points: tuple[PersistencePoint, ...]
    critical_values: tuple[float, ...] = ()

    def __len__(self) -> int:
        return len(self.points)

    @property
    def essential(self) -> tuple[PersistencePoint, ...]:
        return tuple(p for p in self.points if p.essential)

    @property
    def finite(self) -> tuple[PersistencePoint, ...]:
        return tuple(p for p in self.points if not p.essential)

    def pairs(self) -> list[tuple[float, float]]:
        return [(p.birth, p.death) for p in self.points]


@dataclass
class _Track:
    rep: Cell
    birth: float
    index: ConleyIndex
    cells: frozenset
    trajectory: list | None


def _morse_index(space, morse_set) -> ConleyIndex:
    return conley_index(space, morse_set.cells)


def morse_persistence(space: GraphSpace, W: RelationMatrix, *, verbose: bool = False,
                      threads: int = 1, scan: FiltrationScan | None = None) -> PersistenceDiagram:
    """Birth/death thresholds of Morse sets along the descending sweep.

    A coarse Morse set that swallows several fine ones is a merge: the
    track with the largest birth survives (ties: more cells, then smaller
    representative) and the rest die.  Deaths are recorded at the critical
    value whose activation caused the merge, i.e. the parameter of the
    finer regime.  Tracks still alive at the end are essential and get the
    smallest critical value as their death.
    """
    scan = scan or scan_filtration(space, W, threads=threads)
    regimes = scan.regimes
    crit = scan.critical_values
    top = crit[-1] if crit else 0.0
    bottom = crit[0] if crit else 0.0

    first = regimes[0]
    alive: list[_Track] = []
    for m in first.decomposition.morse_sets:
        idx = _morse_index(space, m)
        alive.append(_Track(min(m.cells), top, idx, m.cells,
                            [(first.parameter, idx)] if verbose else None))
    dead: list[PersistencePoint] = []

    for fine, coarse in zip(regimes, regimes[1:]):
        where = coarse.decomposition.cell_index()
        groups: dict[int, list[_Track]] = {}
        for t in alive:
            targets = {where[c] for c in t.cells}
            if len(targets) != 1:
                raise AssertionError("fine Morse set is split across coarse Morse sets")
            groups.setdefault(targets.pop(), []).append(t)
        if len(groups) != len(coarse.decomposition):
            raise AssertionError("coarse Morse set without a fine predecessor")
        survivors = []
        for k, members in sorted(groups.items()):
            members.sort(key=lambda t: (-t.birth, -len(t.cells), t.rep))
            keep = members[0]
            for t in members[1:]:
                dead.append(PersistencePoint(t.birth, fine.parameter, False, t.rep, t.index,
                                             tuple(t.trajectory) if verbose else None))
            m = coarse.decomposition.morse_sets[k]
            keep.cells = m.cells
            if verbose:
                keep.trajectory.append((coarse.parameter, _morse_index(space, m)))
            survivors.append(keep)
        alive = survivors

    for t in alive:
        dead.append(PersistencePoint(t.birth, bottom, True, t.rep, t.index,
                                     tuple(t.trajectory) if verbose else None))
    dead.sort(key=lambda p: p.representative)
    return PersistenceDiagram(tuple(dead), tuple(crit))


def enriched_diagram(d: PersistenceDiagram) -> list[tuple[float, float, int, int]]:
    """``(birth, death, k, beta_k)`` for every point and every k with beta_k > 0."""
    out = []
    for p in d.points:
        for k, beta in enumerate(p.index_at_birth):
            if beta:
                out.append((p.birth, p.death, k, beta))
    return out


def slice_diagram(d: PersistenceDiagram, k: int) -> PersistenceDiagram:
    """Points whose Conley index at birth has nonzero beta_k."""
    return PersistenceDiagram(tuple(p for p in d.points if p.index_at_birth[k] > 0), d.critical_values)


# -- serialisation ----------------------------------------------------------

COLUMNS = ("birth", "death", "essential", "representative", "beta0", "beta1")


def diagram_to_obj(d: PersistenceDiagram) -> dict:
    points = []
    for p in d.points:
        row = {"birth": p.birth, "death": p.death, "essential": p.essential,
               "representative": p.representative.name, "beta0": p.beta0, "beta1": p.beta1}
        if p.trajectory is not None:
            row["trajectory"] = [{"parameter": lam, "beta0": ix.beta0, "beta1": ix.beta1}
                                 for lam, ix in p.trajectory]
        points.append(row)
    return {"critical_values": list(d.critical_values), "points": points}


def diagram_to_json(d: PersistenceDiagram) -> str:
    return json.dumps(diagram_to_obj(d), indent=2) + "\n"


def diagram_to_csv(d: PersistenceDiagram) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for p in d.points:
        writer.writerow([repr(p.birth), repr(p.death), str(p.essential).lower(),
                         p.representative.name, p.beta0, p.beta1])
    return buf.getvalue()


def _point_from_row(row) -> PersistencePoint:
    essential = row["essential"]
    if isinstance(essential, str):
        if essential.lower() not in ("true", "false"):
            raise ValueError(f"bad essential flag: {essential!r}")
        essential = essential.lower() == "true"
    return PersistencePoint(float(row["birth"]), float(row["death"]), bool(essential),
                            parse_cell(row["representative"]),
                            ConleyIndex(int(row["beta0"]), int(row["beta1"])))


def diagram_from_obj(obj: dict) -> PersistenceDiagram:
    points = tuple(_point_from_row(r) for r in obj["points"])
    return PersistenceDiagram(points, tuple(float(x) for x in obj.get("critical_values", ())))


def read_diagram(path: str | Path) -> PersistenceDiagram:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        return PersistenceDiagram(tuple(_point_from_row(r) for r in rows))
    return diagram_from_obj(json.loads(text))
