"""Exact vex(n, G) by branch-and-bound, emb(n, G), the fractional chromatic
number, and the blow-up / shrink maps between Kneser-graph homomorphisms."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .core import (
    Family,
    binary_entropy,
    elements_of,
    format_family,
    iter_bits,
    iter_masks_of_size,
    iter_submasks,
    mask_from_elements,
    monotone_families,
)
from .freeness import MAX_PATTERN_VERTICES, KneserIndex, PatternGraph, is_free
from .lp import solve_packing_lp

MAX_VEX_N = 8


@dataclass(frozen=True)
class VexResult:
    n: int
    pattern: PatternGraph
    max_size: int
    extremal: Family
    nodes_explored: int
    elapsed: float
    optimal: bool = True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pattern": self.pattern.describe(),
            "max_size": str(self.max_size),
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "extremal": format_family(self.extremal),
        }


class SearchTimeout(Exception):
    """Raised when the solver runs out of time. ``incumbent`` is the best family
    found so far; its size is a lower bound only."""

    def __init__(self, incumbent: VexResult):
        super().__init__(f"timed out; best lower bound {incumbent.max_size}")
        self.incumbent = incumbent


def solve_vex(n: int, pattern: PatternGraph, timeout: float | None = 60.0) -> VexResult:
    """Largest P-free family in 2^[n].

    Searches upward-closed families only: any P-free family can be pushed up
    to one of the same size. Sets are decided by decreasing cardinality,
    then increasing mask. Excluding a set kills all of its subsets, and
    after each inclusion every undecided set that would already complete a
    copy is excluded too. Bounds: members so far plus live undecided sets,
    less one per copy in a greedy packing of copies through undecided sets.

    Relabelling [n] is broken as follows. Call an excluded set a leader when
    no earlier leader contains it. Each leader must be the lowest-mask set in
    its orbit under the permutations fixing all earlier leaders; such a set
    meets every cell of that group in the cell's smallest elements.
    """
    if not 1 <= n <= MAX_VEX_N:
        raise ValueError(f"solve_vex supports 1 <= n <= {MAX_VEX_N}")
    if not 1 <= pattern.vertex_count <= MAX_PATTERN_VERTICES:
        raise ValueError(f"patterns need 1 to {MAX_PATTERN_VERTICES} vertices")

    start = time.monotonic()
    deadline = None if timeout is None else start + timeout
    size = 1 << n
    order = sorted(range(size), key=lambda m: (-m.bit_count(), m))
    # searches scan large sets first, so packed copies use the sets that matter
    index = KneserIndex(order)
    pos = index.position

    dead = [False] * size
    included = 0  # bitset over index positions
    count = 0
    alive = size
    best_size = 0  # the empty family is always free
    best_members: list[int] = []
    chosen: list[int] = []
    leaders: list[int] = []
    cells = [size - 1]
    nodes = 0

    def timed_out() -> bool:
        return deadline is not None and time.monotonic() > deadline

    def kill(m: int, out: list[int]) -> None:
        for sub in iter_submasks(m):
            if not dead[sub]:
                dead[sub] = True
                out.append(sub)

    def leads_orbit(m: int) -> bool:
        for cell in cells:
            part = m & cell
            low = 0
            for _ in range(part.bit_count()):
                low |= (cell & ~low) & -(cell & ~low)
            if part != low:
                return False
        return True

    def as_leader(m: int, k: int) -> None:
        nonlocal cells
        saved = cells
        leaders.append(m)
        cells = [c for cell in saved for c in (cell & m, cell & ~m) if c]
        rec(k + 1)
        cells = saved
        leaders.pop()

    def packing_bound(k: int) -> int:
        # Copies that share no undecided set each cost at least one of them.
        rest = 0
        for x in order[k:]:
            if not dead[x]:
                rest |= 1 << pos[x]
        bound = count + alive
        while bound > best_size:
            hit = index.contains_meeting(pattern, included | rest, rest)
            if hit is None:
                break
            for i in hit:
                rest &= ~(1 << i)
            bound -= 1
        return bound

    def rec(k: int) -> None:
        nonlocal included, count, alive, best_size, best_members, nodes
        nodes += 1
        if nodes & 63 == 1 and timed_out():
            raise _Stop
        if count + alive <= best_size:
            return
        if k == size:
            best_size = count
            best_members = chosen[:]
            return
        if packing_bound(k) <= best_size:
            return
        m = order[k]
        if dead[m]:
            if any(m & ~lead == 0 for lead in leaders):
                rec(k + 1)
            elif leads_orbit(m):
                as_leader(m, k)
            return
        p = pos[m]
        trial = included | (1 << p)
        if index.contains_through(pattern, trial, p) is None:
            # Members only grow below this node, so an undecided set that
            # already completes a copy can never join; neither can its subsets.
            forced: list[int] = []
            dead[m] = True
            for x in order[k + 1:]:
                if not dead[x] and index.contains_through(pattern, trial | (1 << pos[x]), pos[x]) is not None:
                    kill(x, forced)
            alive -= 1 + len(forced)
            included, count = trial, count + 1
            chosen.append(m)
            rec(k + 1)
            chosen.pop()
            included, count = included ^ (1 << p), count - 1
            alive += 1 + len(forced)
            for x in forced:
                dead[x] = False
            dead[m] = False
        if not leads_orbit(m):
            return  # a relabelled copy of this branch is searched elsewhere
        killed: list[int] = []
        kill(m, killed)
        alive -= len(killed)
        as_leader(m, k)
        alive += len(killed)
        for sub in killed:
            dead[sub] = False

    try:
        rec(0)
    except _Stop:
        raise SearchTimeout(
            VexResult(n, pattern, best_size, Family(n, best_members), nodes,
                      time.monotonic() - start, optimal=False)
        ) from None
    return VexResult(n, pattern, best_size, Family(n, best_members), nodes, time.monotonic() - start)


class _Stop(Exception):
    pass


def vex_by_enumeration(n: int, pattern: PatternGraph) -> int:
    """Brute force over every upward-closed family (n <= 5 in practice)."""
    return max(len(F) for F in monotone_families(n) if is_free(F, pattern))


def find_kneser_copy(n: int, m: int, pattern: PatternGraph) -> tuple[int, ...] | None:
    """Images of a copy of ``pattern`` in Kn(n, m), or None.

    Kn(n, m) is vertex-transitive, so the first searched vertex is pinned to
    {1..m}.
    """
    universe = list(iter_masks_of_size(n, m))
    if not universe:
        return None
    index = KneserIndex(universe)
    first = pattern.search_order()[0]
    hit = index.search(pattern, fixed=(first, 0))
    if hit is None:
        return None
    return tuple(universe[i] for i in hit)


def emb(n: int, pattern: PatternGraph) -> int:
    """Largest m such that Kn(n, m) contains ``pattern``; 0 if none does."""
    if not pattern.edges:
        raise ValueError("emb is undefined for patterns without edges")
    if n < 1:
        raise ValueError("n must be positive")
    # Kn(n, m) has no edges once 2m > n
    for m in range(n // 2, 0, -1):
        if find_kneser_copy(n, m, pattern) is not None:
            return m
    return 0


def maximal_independent_sets(pattern: PatternGraph) -> list[int]:
    k = pattern.vertex_count
    nbr = [0] * k
    for u, v in pattern.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    out = []
    for S in range(1 << k):
        if any(nbr[v] & S for v in range(k) if S >> v & 1):
            continue
        if all(S >> v & 1 or nbr[v] & S for v in range(k)):
            out.append(S)
    return out


@dataclass(frozen=True)
class FractionalChromatic:
    value: Fraction
    coloring: tuple[tuple[tuple[int, ...], Fraction], ...]  # (independent set, weight)
    clique: tuple[Fraction, ...]  # weight per vertex
    certified: bool

    def to_dict(self) -> dict:
        return {
            "chi_f": str(self.value),
            "coloring": [{"set": list(s), "weight": str(w)} for s, w in self.coloring],
            "clique": [str(w) for w in self.clique],
            "certified": self.certified,
        }


def fractional_chromatic(pattern: PatternGraph) -> FractionalChromatic:
    """Solve the fractional clique LP over maximal independent sets exactly;
    its dual is a fractional colouring of the same weight."""
    k = pattern.vertex_count
    if k > MAX_PATTERN_VERTICES:
        raise ValueError(f"chi_f is limited to {MAX_PATTERN_VERTICES} vertices")
    if k == 0:
        return FractionalChromatic(Fraction(0), (), (), True)
    mis = maximal_independent_sets(pattern)
    A = [[1 if S >> v & 1 else 0 for v in range(k)] for S in mis]
    sol = solve_packing_lp([1] * k, A, [1] * len(mis))
    coloring = tuple(
        (tuple(v for v in range(k) if S >> v & 1), w) for S, w in zip(mis, sol.dual) if w
    )
    clique = sol.primal
    covered = all(sum((w for S, w in zip(mis, sol.dual) if S >> v & 1), Fraction(0)) >= 1 for v in range(k))
    packed = all(sum((clique[v] for v in range(k) if S >> v & 1), Fraction(0)) <= 1 for S in mis)
    certified = (
        covered
        and packed
        and all(w >= 0 for w in sol.dual)
        and all(w >= 0 for w in clique)
        and sum(sol.dual, Fraction(0)) == sol.value == sum(clique, Fraction(0))
    )
    return FractionalChromatic(sol.value, coloring, clique, certified)


def chi_f(pattern: PatternGraph) -> Fraction:
    return fractional_chromatic(pattern).value


@dataclass(frozen=True)
class Homomorphism:
    """A map from pattern vertices to b-subsets of [a]; edges go to disjoint sets."""

    pattern: PatternGraph
    a: int
    b: int
    images: tuple[int, ...]

    @classmethod
    def of(cls, pattern: PatternGraph, a: int, b: int, images: list[list[int]]) -> Homomorphism:
        return cls(pattern, a, b, tuple(mask_from_elements(img, a) for img in images))

    def is_valid(self) -> bool:
        if len(self.images) != self.pattern.vertex_count or self.b < 0 or self.a < 1:
            return False
        if any(img >> self.a or img.bit_count() != self.b for img in self.images):
            return False
        return all(not self.images[u] & self.images[v] for u, v in self.pattern.edges)

    def is_embedding(self) -> bool:
        return self.is_valid() and len(set(self.images)) == len(self.images)

    def image_elements(self) -> list[list[int]]:
        return [list(elements_of(img)) for img in self.images]

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "images": self.image_elements()}


def blow_up(h: Homomorphism, k: int) -> Homomorphism:
    """Replace each element i by the block (i-1)k+1 .. ik: a map into Kn(ak, bk)."""
    if not h.is_valid():
        raise ValueError("input is not a valid homomorphism")
    if k < 1:
        raise ValueError("blow-up factor must be at least 1")
    block = (1 << k) - 1
    images = []
    for img in h.images:
        out = 0
        for bit in iter_bits(img):
            out |= block << ((bit.bit_length() - 1) * k)
        images.append(out)
    return Homomorphism(h.pattern, h.a * k, h.b * k, tuple(images))


def shrink_injective(h: Homomorphism) -> Homomorphism | None:
    """Pick one shadow set of each image so that all picks are distinct.

    The picks form an embedding into Kn(a, b-1). Returns None when no system
    of distinct representatives exists.
    """
    if not h.is_valid():
        raise ValueError("input is not a valid homomorphism")
    if h.b < 1:
        return None
    g = nx.Graph()
    left = [("v", v) for v in range(len(h.images))]
    g.add_nodes_from(left)
    for v, img in enumerate(h.images):
        for bit in iter_bits(img):
            g.add_edge(("v", v), ("s", img ^ bit))
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    if any(node not in matching for node in left):
        return None
    images = tuple(matching[("v", v)][1] for v in range(len(h.images)))
    out = Homomorphism(h.pattern, h.a, h.b - 1, images)
    return out if out.is_embedding() else None


@dataclass(frozen=True)
class EntropyRow:
    n: int
    emb: int
    ratio: Fraction
    gap: Fraction  # |1/chi_f - emb/n|
    bounded: bool  # chi_f * emb <= n


@dataclass(frozen=True)
class EntropyReport:
    chi_f: Fraction
    entropy: float  # H(1/chi_f)
    rows: tuple[EntropyRow, ...]

    @property
    def all_bounded(self) -> bool:
        return all(r.bounded for r in self.rows)


def entropy_limit_report(pattern: PatternGraph, n_max: int, n_min: int = 1) -> EntropyReport:
    cf = chi_f(pattern)
    rows = []
    for n in range(n_min, n_max + 1):
        e = emb(n, pattern)
        ratio = Fraction(e, n)
        rows.append(EntropyRow(n, e, ratio, abs(1 / cf - ratio), cf * e <= n))
    return EntropyReport(cf, binary_entropy(1 / cf), tuple(rows))
