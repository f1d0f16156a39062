"""Copies of small graphs in the Kneser cube, and the good-set machinery.

Two sets are adjacent in the Kneser cube when they are distinct and disjoint.
A family contains a pattern graph if the cube restricted to the family has the
pattern as a (not necessarily induced) subgraph.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .core import (
    Family,
    SetMask,
    _check_cube,
    complement,
    iter_bits,
    mask_from_elements,
)

MAX_PATTERN_VERTICES = 12


def kneser_adjacent(a: SetMask, b: SetMask) -> bool:
    if a.n != b.n:
        raise ValueError(f"width mismatch: [{a.n}] vs [{b.n}]")
    return a.bits != b.bits and not a.bits & b.bits


@dataclass(frozen=True)
class PatternGraph:
    """A small simple graph on vertices 0..vertex_count-1.

    ``parts`` is set for complete multipartite patterns built by
    :func:`complete_multipartite`; the edges are then exactly the cross-part
    pairs.
    """

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    parts: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.vertex_count - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.parts is not None:
            cross = {
                (min(u, v), max(u, v))
                for p, q in itertools.combinations(self.parts, 2)
                for u in p
                for v in q
            }
            if cross != norm or sorted(itertools.chain(*self.parts)) != list(range(self.vertex_count)):
                raise ValueError("part structure does not match the edge set")
        object.__setattr__(self, "_memo", {})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertex_count: int | None = None) -> PatternGraph:
        edges = [tuple(e) for e in edges]
        if vertex_count is None:
            vertex_count = 1 + max((max(e) for e in edges), default=-1)
        return cls(vertex_count, frozenset(edges))

    @classmethod
    def cycle(cls, k: int) -> PatternGraph:
        return cls.from_edges([(i, (i + 1) % k) for i in range(k)], k)

    @property
    def multipartite_shape(self) -> tuple[int, int] | None:
        """(s, t) if this is K_{s x t} with recorded parts."""
        if self.parts is None or not self.parts:
            return None
        sizes = {len(p) for p in self.parts}
        if len(sizes) != 1:
            return None
        return len(self.parts), sizes.pop()

    def neighbors(self) -> list[set[int]]:
        nb: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def orbits(self) -> list[tuple[int, ...]]:
        """Vertex orbits under the automorphism group, each sorted, ordered by
        their smallest vertex."""
        memo = self._memo  # type: ignore[attr-defined]
        if "orbits" not in memo:
            g = nx.Graph()
            g.add_nodes_from(range(self.vertex_count))
            g.add_edges_from(self.edges)
            same = lambda a, b: a.get("pin") == b.get("pin")  # noqa: E731
            out: list[tuple[int, ...]] = []
            seen: set[int] = set()
            for u in range(self.vertex_count):
                if u in seen:
                    continue
                g1 = g.copy()
                g1.nodes[u]["pin"] = True
                orbit = [u]
                for v in range(u + 1, self.vertex_count):
                    if v in seen:
                        continue
                    g2 = g.copy()
                    g2.nodes[v]["pin"] = True
                    if GraphMatcher(g1, g2, node_match=same).is_isomorphic():
                        orbit.append(v)
                seen.update(orbit)
                out.append(tuple(orbit))
            memo["orbits"] = out
        return memo["orbits"]

    def search_order(self, first: int | None = None) -> list[int]:
        """Vertices by degree descending; ties go to the vertex with the most
        already-ordered neighbours, then the lowest index."""
        nb = self.neighbors()
        order: list[int] = []
        placed: set[int] = set()
        if first is not None:
            order.append(first)
            placed.add(first)
        while len(order) < self.vertex_count:
            v = min(
                (v for v in range(self.vertex_count) if v not in placed),
                key=lambda v: (-len(nb[v]), -len(nb[v] & placed), v),
            )
            order.append(v)
            placed.add(v)
        return order

    def symmetry_pairs(self, fixed: int | None = None) -> list[tuple[int, int]]:
        """Pairs (u, v) such that some copy, if any exists, places u at a
        lower position than v.

        Multipartite patterns get the most: vertices of one part are
        interchangeable, and so are whole parts of equal size. A ``fixed``
        vertex keeps its place, so its part is left out of the part ordering.
        Other patterns only ask the first vertex to sit lowest in its orbit,
        and get nothing when a vertex is fixed.
        """
        if self.parts is None:
            if fixed is not None or not self.vertex_count:
                return []
            # some automorphism moves the lowest-placed vertex of an orbit to its leader
            orbit = self.orbits()[0]
            return [(orbit[0], v) for v in orbit[1:]]
        pairs = []
        leaders: dict[int, list[int]] = {}
        for part in self.parts:
            free = [v for v in part if v != fixed]
            pairs += list(zip(free, free[1:]))
            if free and len(free) == len(part):
                leaders.setdefault(len(part), []).append(free[0])
        for firsts in leaders.values():
            pairs += list(zip(firsts, firsts[1:]))
        return pairs

    def describe(self) -> dict:
        shape = self.multipartite_shape
        if shape is not None:
            return {"s": shape[0], "t": shape[1]}
        return {"vertex_count": self.vertex_count, "edges": sorted(list(e) for e in self.edges)}

    @classmethod
    def from_description(cls, d: dict) -> PatternGraph:
        if "s" in d:
            return complete_multipartite(d["s"], d["t"])
        return cls.from_edges([tuple(e) for e in d["edges"]], d["vertex_count"])


def complete_multipartite(s: int, t: int) -> PatternGraph:
    """K_{s x t}: s parts of t vertices each; part j holds vertices j*t .. j*t+t-1."""
    if s < 1 or t < 1:
        raise ValueError(f"need s >= 1 and t >= 1, got s={s}, t={t}")
    parts = tuple(tuple(range(j * t, (j + 1) * t)) for j in range(s))
    edges = frozenset(
        (u, v) for p, q in itertools.combinations(parts, 2) for u in p for v in q
    )
    return PatternGraph(s * t, edges, parts)


def complete_graph(s: int) -> PatternGraph:
    return complete_multipartite(s, 1)


@dataclass(frozen=True)
class Witness:
    """A copy of ``pattern``: ``images[v]`` is the set assigned to vertex v."""

    pattern: PatternGraph
    images: tuple[SetMask, ...]

    def is_valid(self, family: Family | None = None) -> bool:
        imgs = [x.bits for x in self.images]
        if len(imgs) != self.pattern.vertex_count or len(set(imgs)) != len(imgs):
            return False
        if family is not None and not all(x in family for x in self.images):
            return False
        return all(not imgs[u] & imgs[v] for u, v in self.pattern.edges)

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.describe(),
            "images": [list(x.elements()) for x in self.images],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict, n: int) -> Witness:
        pattern = PatternGraph.from_description(d["pattern"])
        return cls(pattern, tuple(SetMask.of(img, n) for img in d["images"]))


class KneserIndex:
    """Backtracking subgraph search over a fixed, ordered list of sets.

    Candidate domains are bitsets over positions in ``universe``; the
    disjointness neighbourhood of each position is built lazily and cached.
    ``allowed`` restricts the search to a sub-collection without rebuilding
    the index, which is what the branch-and-bound solver relies on.
    """

    def __init__(self, universe: Sequence[int]):
        self.universe = list(universe)
        self.position = {m: i for i, m in enumerate(self.universe)}
        self._adj: list[int | None] = [None] * len(self.universe)
        self._plans: dict[tuple[PatternGraph, int | None], list] = {}
        self.all_bits = (1 << len(self.universe)) - 1

    def adj(self, i: int) -> int:
        a = self._adj[i]
        if a is None:
            x = self.universe[i]
            a = 0
            for j, y in enumerate(self.universe):
                if not x & y and j != i:
                    a |= 1 << j
            self._adj[i] = a
        return a

    def _plan(self, pattern: PatternGraph, first: int | None) -> list:
        """Per depth: the vertex placed there and, for each later vertex,
        whether it is a neighbour and whether it must sit above or below."""
        key = (pattern, first)
        plan = self._plans.get(key)
        if plan is None:
            nb = pattern.neighbors()
            order = pattern.search_order(first)
            pairs = set(pattern.symmetry_pairs(first))
            plan = [
                (v, [(w, w in nb[v], (v, w) in pairs, (w, v) in pairs) for w in order[d + 1:]])
                for d, v in enumerate(order)
            ]
            self._plans[key] = plan
        return plan

    def search(
        self,
        pattern: PatternGraph,
        allowed: int | None = None,
        fixed: tuple[int, int] | None = None,
        anchor: tuple[int, int] | None = None,
    ) -> tuple[int, ...] | None:
        """Return universe positions for each pattern vertex, or None.

        ``fixed = (vertex, position)`` pins one vertex's image;
        ``anchor = (vertex, bits)`` confines it to a set of positions.
        """
        k = pattern.vertex_count
        if k == 0:
            return ()
        if allowed is None:
            allowed = self.all_bits
        if fixed is not None:
            anchor = (fixed[0], 1 << fixed[1])
        plan = self._plan(pattern, anchor[0] if anchor else None)
        doms = [allowed] * k
        if anchor is not None:
            v, bits = anchor
            doms[v] = allowed & bits
            if not doms[v]:
                return None
        assign = [-1] * k
        adj = self._adj
        build = self.adj

        def rec(depth: int, doms: list[int]) -> bool:
            if depth == k:
                return True
            v, later = plan[depth]
            d = doms[v]
            while d:
                low = d & -d
                d ^= low
                i = low.bit_length() - 1
                a = adj[i]
                if a is None:
                    a = build(i)
                new = doms[:]
                for w, is_nb, up, down in later:
                    nd = new[w] & ~low
                    if is_nb:
                        nd &= a
                    if up:
                        nd &= ~((low << 1) - 1)
                    elif down:
                        nd &= low - 1
                    if not nd:
                        break
                    new[w] = nd
                else:
                    assign[v] = i
                    if rec(depth + 1, new):
                        return True
            assign[v] = -1
            return False

        if rec(0, doms):
            return tuple(assign)
        return None

    def contains_through(self, pattern: PatternGraph, allowed: int, pos: int) -> tuple[int, ...] | None:
        """A copy inside ``allowed`` that uses the set at ``pos``."""
        return self.contains_meeting(pattern, allowed, 1 << pos)

    def contains_meeting(self, pattern: PatternGraph, allowed: int, bits: int) -> tuple[int, ...] | None:
        """A copy inside ``allowed`` using at least one position from ``bits``."""
        # an automorphism carries such a copy to one with an orbit leader in ``bits``
        for v in (orbit[0] for orbit in pattern.orbits()):
            hit = self.search(pattern, allowed, anchor=(v, bits))
            if hit is not None:
                return hit
        return None


def _check_pattern(pattern: PatternGraph) -> None:
    if pattern.vertex_count > MAX_PATTERN_VERTICES:
        raise ValueError(f"patterns are limited to {MAX_PATTERN_VERTICES} vertices")


def find_copy(family: Family, pattern: PatternGraph) -> Witness | None:
    """A copy of ``pattern`` in the Kneser cube induced on ``family``, or None.

    The answer is deterministic: members are tried in canonical order and
    pattern vertices in :meth:`PatternGraph.search_order`.
    """
    _check_pattern(pattern)
    index = KneserIndex(family.sorted())
    hit = index.search(pattern)
    if hit is None:
        return None
    return Witness(pattern, tuple(SetMask(index.universe[i], family.n) for i in hit))


def is_free(family: Family, pattern: PatternGraph) -> bool:
    return find_copy(family, pattern) is None


def disjoint_tuple(family: Family, s: int, budget: int) -> list[SetMask] | None:
    """s distinct pairwise-disjoint members of total size <= budget, or None.

    With ``budget = n`` this detects K_s. For an upward-closed family and
    ``budget = n - s`` it decides whether K_{s x 2} is present.
    """
    if s < 1:
        raise ValueError("s must be positive")
    members = family.sorted()
    sizes = [m.bit_count() for m in members]
    chosen: list[int] = []

    def rec(start: int, used: int, total: int) -> bool:
        if len(chosen) == s:
            return True
        need = s - len(chosen)
        for i in range(start, len(members)):
            # members are sorted by size, so later ones only cost more
            if total + sizes[i] * need > budget:
                return False
            m = members[i]
            if m & used:
                continue
            chosen.append(m)
            if rec(i + 1, used | m, total + sizes[i]):
                return True
            chosen.pop()
        return False

    if rec(0, 0, 0):
        return [SetMask(m, family.n) for m in chosen]
    return None


def good_family(family: Family, t: int) -> Family:
    """Sets X with at most t-2 members of their shadow inside ``family``."""
    if t < 2:
        raise ValueError(f"good sets need t >= 2, got t={t}")
    _check_cube(family.n)
    mem = family.members
    limit = t - 2
    good = []
    for x in range(1 << family.n):
        hits = 0
        for b in iter_bits(x):
            if x ^ b in mem:
                hits += 1
                if hits > limit:
                    break
        if hits <= limit:
            good.append(x)
    return Family(family.n, good)


@dataclass(frozen=True)
class LayerCount:
    i: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class GoodReport:
    """Outcome of checking the three good-set properties for one family."""

    s: int
    t: int
    good_family: Family
    upward_closed: bool
    family_is_free: bool
    downward_closed: bool
    E_is_Ks_free: bool
    counting_holds_per_layer: tuple[LayerCount, ...]
    Ks_witness: list[SetMask] | None = field(default=None)

    @property
    def counting_holds(self) -> bool:
        return all(c.holds for c in self.counting_holds_per_layer)

    @property
    def all_hold(self) -> bool:
        return self.downward_closed and self.E_is_Ks_free and self.counting_holds

    def to_dict(self) -> dict:
        return {
            "n": self.good_family.n,
            "s": self.s,
            "t": self.t,
            "good_size": len(self.good_family),
            "upward_closed": self.upward_closed,
            "family_is_free": self.family_is_free,
            "downward_closed": self.downward_closed,
            "E_is_Ks_free": self.E_is_Ks_free,
            "Ks_witness": None if self.Ks_witness is None else [list(x.elements()) for x in self.Ks_witness],
            "counting": [
                {"i": c.i, "lhs": str(c.lhs), "rhs": str(c.rhs), "holds": c.holds}
                for c in self.counting_holds_per_layer
            ],
        }


def audit_good(family: Family, s: int, t: int) -> GoodReport:
    """Check that the good sets are downward closed, that the non-good sets
    are K_s-free, and the per-layer edge count
    |G^i| (i-t+2) <= |H^(i-1)| (n-i+1) with H the complement of ``family``.

    Failures are reported in the result, never raised.
    """
    n = family.n
    good = good_family(family, t)
    rest = complement(good)
    hole = complement(family)
    ks = disjoint_tuple(rest, s, n)
    counts = []
    for i in range(max(1, t - 1), n + 1):
        lhs = good.layer_size(i) * (i - t + 2)
        rhs = hole.layer_size(i - 1) * (n - i + 1)
        counts.append(LayerCount(i, lhs, rhs))
    return GoodReport(
        s=s,
        t=t,
        good_family=good,
        upward_closed=family.is_upward_closed(),
        family_is_free=is_free(family, complete_multipartite(s, t)),
        downward_closed=good.is_downward_closed(),
        E_is_Ks_free=ks is None,
        counting_holds_per_layer=tuple(counts),
        Ks_witness=ks,
    )


def witness_from_elements(pattern: PatternGraph, images: Iterable[Iterable[int]], n: int) -> Witness:
    return Witness(pattern, tuple(SetMask(mask_from_elements(img, n), n) for img in images))

