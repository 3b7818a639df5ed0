"""M-graphs of multivector fields and their Morse decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .multivector import MultivectorField
from .space import Cell, GraphSpace


@dataclass(frozen=True)
class MGraph:
    """Directed graph on blocks; arc (B, C) when C meets the closure of B.

    ``cells`` maps each node to the cells of its block.  It may be left
    empty for abstract graphs that only need SCC structure.
    """

    nodes: tuple
    arcs: frozenset
    cells: Mapping = field(default_factory=dict, compare=False, repr=False)

    def successors(self) -> dict:
        out = {v: [] for v in self.nodes}
        for a, b in sorted(self.arcs):
            out[a].append(b)
        return out


@dataclass(frozen=True)
class MorseSet:
    blocks: tuple
    cells: frozenset

    @property
    def key(self):
        return self.blocks[0]


@dataclass(frozen=True)
class MorseDecomposition:
    """SCCs of an M-graph, sorted by minimal node.

    ``order`` contains ``(q, p)`` index pairs meaning Morse set ``q`` lies
    above ``p``: some path leads from q's component to p's.
    """

    morse_sets: tuple[MorseSet, ...]
    order: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.morse_sets)

    def cell_index(self) -> dict[Cell, int]:
        return {c: k for k, m in enumerate(self.morse_sets) for c in m.cells}


def build_mgraph(space: GraphSpace, mvf: MultivectorField) -> MGraph:
    if mvf.space != space:
        raise ValueError("multivector field is defined on a different space")
    arcs = set()
    for blk in mvf.blocks:
        src = blk[0]
        members = set(blk)
        for c in blk:
            for face in c.faces():
                if face not in members:
                    arcs.add((src, mvf.assignment[face]))
    return MGraph(mvf.block_ids, frozenset(arcs), {b[0]: frozenset(b) for b in mvf.blocks})


def strongly_connected_components(nodes: Sequence[Hashable],
                                  successors: Callable[[Hashable], Iterable[Hashable]] | Mapping) -> list[list]:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit."""
    succ = successors.__getitem__ if isinstance(successors, Mapping) else successors
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def morse_decomposition(g: MGraph) -> MorseDecomposition:
    succ = g.successors()
    comps = [sorted(c) for c in strongly_connected_components(g.nodes, succ)]
    comps.sort(key=lambda c: c[0])
    which = {v: k for k, c in enumerate(comps) for v in c}

    dag: list[set[int]] = [set() for _ in comps]
    for a, b in g.arcs:
        ca, cb = which[a], which[b]
        if ca != cb:
            dag[ca].add(cb)

    order = set()
    for q in range(len(comps)):
        seen = set()
        todo = list(dag[q])
        while todo:
            p = todo.pop()
            if p in seen:
                continue
            seen.add(p)
            todo.extend(dag[p])
        order.update((q, p) for p in seen)

    sets = []
    for c in comps:
        cells = frozenset().union(*(g.cells.get(v, frozenset()) for v in c))
        sets.append(MorseSet(tuple(c), cells))
    return MorseDecomposition(tuple(sets), frozenset(order))


def block_labels(mvf: MultivectorField) -> dict[Cell, str]:
    """Names A1, A2, ... in canonical block order."""
    return {b: f"A{k}" for k, b in enumerate(mvf.block_ids, 1)}


def to_dot(mvf: MultivectorField, g: MGraph, indices: Mapping | None = None, name: str = "MGraph") -> str:
    """DOT text with one node per block and one arc per M-graph arc.

    ``indices`` maps block ids to ``(beta0, beta1)`` pairs for annotation.
    """
    labels = block_labels(mvf)
    lines = [f"digraph {name} {{"]
    for blk in mvf.blocks:
        b = blk[0]
        text = f"{labels[b]} {{{', '.join(c.name for c in blk)}}}"
        if indices is not None and b in indices:
            b0, b1 = indices[b]
            text += f" ({b0},{b1})"
        lines.append(f'  {labels[b]} [label="{text}"];')
    for a, b in sorted(g.arcs):
        lines.append(f"  {labels[a]} -> {labels[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
