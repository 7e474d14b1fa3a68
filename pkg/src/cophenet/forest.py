"""Ramification forests of irreducible sets in a filtered matroid.

An irreducible set ramifies at the first critical value where the rank of its
image drops.  Its image is then covered by irreducible sets, which become
children, and the construction recurses.  Identical children (same elements,
same birth) are shared, so the structure is a DAG; Newick export duplicates
shared subtrees while DOT keeps them shared.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .matroid import FilteredMatroid, IrreducibleSet, MatroidError, circuits, irreducible_cover, is_irreducible


class NotIrreducibleError(MatroidError):
    pass


@dataclass(eq=False)
class RamificationNode:
    elements: tuple
    birth: float
    rank: int
    ramification: float | None = None
    children: list["RamificationNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def dissolves(self) -> bool:
        """True when the node splits into rank-0 singletons only, i.e. its
        whole image dies at the ramification value."""
        return bool(self.children) and all(len(c.elements) == 1 and c.rank == 0 for c in self.children)

    @property
    def label(self) -> str:
        return "{" + "|".join(map(str, self.elements)) + "}"

    def __repr__(self):
        return f"RamificationNode({self.label}, birth={self.birth}, ramification={self.ramification})"

    def walk(self):
        """Depth-first pre-order, visiting shared nodes once per parent."""
        yield self
        for c in self.children:
            yield from c.walk()

    def topology(self, strip_dissolution: bool = False):
        """Nested ``(frozenset, (children...))`` for structural comparison."""
        kids = self.children
        if strip_dissolution and self.dissolves:
            kids = []
        return (frozenset(self.elements), tuple(c.topology(strip_dissolution) for c in kids))


@dataclass
class RamificationForest:
    roots: list[RamificationNode]
    provenance: str = ""

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def nodes(self) -> list[RamificationNode]:
        """Distinct nodes in first-visit order."""
        seen: dict[int, RamificationNode] = {}
        for r in self.roots:
            for n in r.walk():
                seen.setdefault(id(n), n)
        return list(seen.values())

    def to_json(self, indent: int | None = 2) -> str:
        def enc(n):
            return {"set": [str(e) for e in n.elements], "birth": n.birth,
                    "ramification": n.ramification, "children": [enc(c) for c in n.children]}
        return json.dumps({"provenance": self.provenance, "roots": [enc(r) for r in self.roots]}, indent=indent)


def ramification_value(A: Iterable[Hashable], fm: FilteredMatroid, eps0: float) -> float | None:
    """First critical value ``eta > eps0`` with ``r_eta(psi(A)) < r_eps0(A)``,
    or ``None`` if the rank survives every later critical value."""
    oracle = fm.oracle(eps0)
    A = oracle.sort(set(A))
    if not is_irreducible(A, oracle):
        raise NotIrreducibleError(f"{list(A)} is not irreducible at eps={eps0}")
    r0 = oracle(A)
    for eta in fm.later(eps0):
        if fm.rank(eta, fm.psi(eps0, eta, A)) < r0:
            return eta
    return None


def build_forest(fm: FilteredMatroid, seeds: Sequence[tuple[Iterable[Hashable], float]],
                 provenance: str = "") -> RamificationForest:
    """Ramification forest with one root per ``(irreducible set, birth)`` seed."""
    memo: dict[tuple[frozenset, float], RamificationNode] = {}

    def node(A, b):
        key = (frozenset(A), b)
        if key in memo:
            return memo[key]
        eta = ramification_value(A, fm, b)
        n = RamificationNode(fm.oracle(b).sort(set(A)), b, fm.rank(b, A), eta)
        memo[key] = n
        if eta is not None:
            image = fm.psi(b, eta, A)
            n.children = [node(C.elements, eta) for C in irreducible_cover(image, fm.oracle(eta))]
        return n

    roots = []
    for A, b in seeds:
        if isinstance(A, IrreducibleSet):
            A = A.elements
        roots.append(node(tuple(A), float(b)))
    return RamificationForest(roots, provenance or fm.name)


def auto_seed(fm: FilteredMatroid) -> list[tuple[tuple, float]]:
    """Forest roots discovered by scanning the critical values in order.

    At each critical value the irreducible subsets of the current ground set
    that were not already dependent at the previous critical value are
    candidates.  A candidate inside an earlier seed is skipped since that
    seed's tree accounts for it, as is one covered by seeds already taken at
    the same value.  Exponential in the number of generators alive at once.
    """
    seeds: list[tuple[tuple, float]] = []
    prev = None
    for eps in fm.critical_values:
        oracle = fm.oracle(eps)
        if not oracle.ground:
            prev = eps
            continue
        prev_ground = set(fm.ground(prev)) if prev is not None else set()
        taken: set = set()
        for C in circuits(oracle.ground, oracle):
            if set(C) <= prev_ground and fm.rank(prev, C) < len(C):
                continue
            if any(set(C) <= set(S) for S, _ in seeds):
                continue
            if set(C) <= taken:
                continue
            seeds.append((C, eps))
            taken.update(C)
        prev = eps
    return seeds


# -- exports ------------------------------------------------------------------

def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:g}"


def _newick_label(n: RamificationNode) -> str:
    lab = n.label
    if any(ch in lab for ch in " ()[]':;,\t\n"):
        lab = "'" + lab.replace("'", "''") + "'"
    return lab


def _newick(n: RamificationNode) -> str:
    s = _newick_label(n)
    if n.children:
        s = "(" + ",".join(_newick(c) for c in n.children) + ")" + s
    if n.ramification is not None:
        s += ":" + _fmt(n.ramification - n.birth)
    return s


def export_newick(forest: RamificationForest) -> str:
    """One Newick tree per root and line.  Node labels are ``{a|b|...}``;
    a node that ramifies carries branch length ``ramification - birth``."""
    if not forest.roots:
        return "[empty forest]\n"
    return "".join(_newick(r) + ";\n" for r in forest.roots)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(forest: RamificationForest) -> str:
    """Top-down DOT digraph; shared nodes appear once with several parents."""
    lines = ["digraph ramification {", "  rankdir=TB;", "  node [shape=box];"]
    if not forest.roots:
        lines.append("  // empty forest")
    ids = {id(n): f"n{i}" for i, n in enumerate(forest.nodes())}
    for n in forest.nodes():
        info = f"born {_fmt(n.birth)}"
        if n.ramification is not None:
            info += f", splits {_fmt(n.ramification)}"
        lines.append(f'  {ids[id(n)]} [label="{_dot_escape(n.label)}\\n{info}"];')
    done = set()
    for n in forest.nodes():
        for c in n.children:
            e = (ids[id(n)], ids[id(c)])
            if e not in done:
                done.add(e)
                lines.append(f'  {e[0]} -> {e[1]} [label="{_fmt(c.birth)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_svg(forest: RamificationForest) -> str:
    from .svg import forest_svg
    return forest_svg(forest)
