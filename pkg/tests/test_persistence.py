import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import random_corpus
from graphmorse.multivector import build_mvf, refines
from graphmorse.persistence import (diagram_from_obj, diagram_to_csv, diagram_to_json,
                                    diagram_to_obj, enriched_diagram, morse_persistence,
                                    read_diagram, scan_filtration, slice_diagram)
from graphmorse.relation import RelationMatrix, critical_values
from graphmorse.space import GraphSpace, vertex

GOLDEN = Path(__file__).parent / "golden"


def diagram(W):
    return morse_persistence(GraphSpace(W.n), W)


def point_tuples(d):
    return [(p.birth, p.death, p.essential, p.representative.name, p.beta0, p.beta1)
            for p in d.points]


def test_scan_worked(worked_w):
    scan = scan_filtration(GraphSpace(3), worked_w)
    assert [r.parameter for r in scan.regimes[:-1]] == [0.8, 0.7, 0.6, 0.5, 0.3, 0.2]
    assert scan.regimes[-1].all_active and scan.regimes[-1].parameter == pytest.approx(0.15)
    assert scan.regimes[2].mvf == build_mvf(GraphSpace(3), worked_w, 0.6)


def test_scan_single_vertex():
    scan = scan_filtration(GraphSpace(1), RelationMatrix([[0.4]]))
    assert len(scan.regimes) == 1
    assert scan.regimes[0].mvf.blocks == ((vertex(1),),)


def test_scan_constant_n2():
    W = RelationMatrix([[0, 0.5], [0.5, 0]])
    scan = scan_filtration(GraphSpace(2), W)
    assert [len(r.mvf) for r in scan.regimes] == [3, 1]
    assert scan.regimes[1].parameter == pytest.approx(-0.5)


def test_threaded_scan_identical(worked_w):
    S = GraphSpace(3)
    a, b = scan_filtration(S, worked_w), scan_filtration(S, worked_w, threads=4)
    assert [r.mvf for r in a.regimes] == [r.mvf for r in b.regimes]


def test_worked_golden(worked_w):
    golden = json.loads((GOLDEN / "worked_diagram.json").read_text())
    assert diagram_to_obj(diagram(worked_w)) == golden


def test_worked_enriched_golden(worked_w):
    golden = [tuple(x) for x in json.loads((GOLDEN / "worked_enriched.json").read_text())]
    assert sorted(enriched_diagram(diagram(worked_w))) == sorted(golden)


def test_single_vertex_diagram():
    d = diagram(RelationMatrix([[0.0]]))
    assert len(d) == 1
    p = d.points[0]
    assert p.essential and tuple(p.index_at_birth) == (1, 0)


def test_constant_n2_diagram():
    d = diagram(RelationMatrix([[0, 0.5], [0.5, 0]]))
    assert sorted((p.birth, p.death, p.essential) for p in d.points) == [
        (0.5, 0.5, False), (0.5, 0.5, False), (0.5, 0.5, True)]


def test_enriched_projection():
    from graphmorse.conley import ConleyIndex
    from graphmorse.persistence import PersistenceDiagram, PersistencePoint
    from graphmorse.space import edge

    d = PersistenceDiagram((PersistencePoint(0.7, 0.2, False, edge(1, 2), ConleyIndex(0, 1)),
                            PersistencePoint(0.7, 0.4, False, vertex(1), ConleyIndex(0, 0))))
    assert enriched_diagram(d) == [(0.7, 0.2, 1, 1)]
    assert len(slice_diagram(d, 1)) == 1 and len(slice_diagram(d, 0)) == 0


@pytest.mark.parametrize("W", random_corpus(60, seed=11, sizes=(1, 5)))
def test_matches_bruteforce_oracle(W):
    assert point_tuples(diagram(W)) == oracles.persistence(W.to_list())


@pytest.mark.parametrize("W", random_corpus(40, seed=12))
def test_diagram_invariants(W):
    S = GraphSpace(W.n)
    scan = scan_filtration(S, W)
    d = morse_persistence(S, W, scan=scan)
    crit = set(critical_values(W))
    assert all(p.birth in crit and p.death in crit and p.birth >= p.death for p in d.points)
    assert all(p.death == min(crit) for p in d.essential)
    assert len(d) == len(scan.regimes[0].decomposition)
    assert len(d.essential) == len(scan.regimes[-1].decomposition)
    # deaths at each critical value = number of Morse sets lost crossing it
    for fine, coarse in zip(scan.regimes, scan.regimes[1:]):
        lost = len(fine.decomposition) - len(coarse.decomposition)
        assert sum(1 for p in d.finite if p.death == fine.parameter) == lost
        assert refines(fine.mvf, coarse.mvf)


@pytest.mark.parametrize("W", random_corpus(20, seed=13, sizes=(2, 6)))
def test_trajectory_spans_lifetime(W):
    S = GraphSpace(W.n)
    scan = scan_filtration(S, W)
    d = morse_persistence(S, W, scan=scan, verbose=True)
    n_regimes = len(scan.regimes)
    for p in d.points:
        assert p.trajectory[0] == (scan.regimes[0].parameter, p.index_at_birth)
        assert 1 <= len(p.trajectory) <= n_regimes
        lams = [lam for lam, _ in p.trajectory]
        assert lams == sorted(lams, reverse=True)
        if not p.essential:
            assert lams[-1] == p.death


def test_deterministic(worked_w):
    assert diagram_to_json(diagram(worked_w)) == diagram_to_json(diagram(worked_w))


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 5), seed=st.integers(0, 10_000))
def test_serialisation_round_trip(n, seed, tmp_path_factory):
    rng = np.random.default_rng(seed)
    W = RelationMatrix(rng.uniform(size=(n, n)))
    d = diagram(W)
    assert diagram_from_obj(json.loads(diagram_to_json(d))) == d
    path = tmp_path_factory.mktemp("csv") / "d.csv"
    path.write_text(diagram_to_csv(d))
    assert read_diagram(path).points == d.points


def test_verbose_json_has_trajectory(worked_w):
    d = morse_persistence(GraphSpace(3), worked_w, verbose=True)
    obj = diagram_to_obj(d)
    v2 = next(p for p in obj["points"] if p["representative"] == "v2")
    assert len(v2["trajectory"]) == 7
    assert v2["trajectory"][0] == {"parameter": 0.8, "beta0": 1, "beta1": 0}
