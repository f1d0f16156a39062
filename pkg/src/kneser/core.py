"""Subsets of [n] as bitmasks, families of subsets, and counting utilities.

Elements are 1-based everywhere a user sees them and 0-based as bit positions
internally: element ``i`` of ``[n]`` is bit ``i - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

MAX_N = 30
MAX_CUBE_N = 22


def popcount(mask: int) -> int:
    return mask.bit_count()


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key used for every deterministic member ordering."""
    return (mask.bit_count(), mask)


def mask_from_elements(elements: Iterable[int], n: int) -> int:
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside [1, {n}]")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks making up ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including ``mask`` and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def iter_masks_of_size(n: int, k: int) -> Iterator[int]:
    """k-subsets of [n] in increasing numeric order (Gosper's hack)."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise ValueError(f"ground-set size must be in [1, {MAX_N}], got {n!r}")


def _check_cube(n: int) -> None:
    if n > MAX_CUBE_N:
        raise ValueError(f"full-cube enumeration needs n <= {MAX_CUBE_N}, got {n}")


@dataclass(frozen=True, order=True)
class SetMask:
    """A subset of [n] stored as an integer bit vector."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} has bits outside [1, {self.n}]")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> SetMask:
        return cls(mask_from_elements(elements, n), n)

    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.bits >> (element - 1) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


def _as_mask(x: int | SetMask, n: int) -> int:
    if isinstance(x, SetMask):
        if x.n != n:
            raise ValueError(f"width mismatch: set over [{x.n}] in family over [{n}]")
        return x.bits
    if x < 0 or x >> n:
        raise ValueError(f"mask {x:#x} has bits outside [1, {n}]")
    return x


@dataclass(frozen=True)
class Family:
    """An explicit family of subsets of [n].

    Members are held as integer masks. Iteration, ``sorted()`` and all
    searches use the canonical order: by cardinality, then by mask value.
    """

    n: int
    members: frozenset[int] = field(default_factory=frozenset)

    def __init__(self, n: int, members: Iterable[int | SetMask] = ()) -> None:
        _check_n(n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", frozenset(_as_mask(x, n) for x in members))

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]]) -> Family:
        """Build from 1-based element lists, e.g. ``Family.of(3, [[1], [2, 3]])``."""
        return cls(n, (mask_from_elements(s, n) for s in sets))

    @classmethod
    def cube(cls, n: int) -> Family:
        _check_n(n)
        _check_cube(n)
        return cls(n, range(1 << n))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: object) -> bool:
        if isinstance(x, SetMask):
            return x.n == self.n and x.bits in self.members
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted())

    def sorted(self) -> list[int]:
        return sorted(self.members, key=canonical_key)

    def sets(self) -> list[SetMask]:
        return [SetMask(m, self.n) for m in self.sorted()]

    def layer(self, i: int) -> Family:
        return Family(self.n, (m for m in self.members if m.bit_count() == i))

    def layer_size(self, i: int) -> int:
        return sum(1 for m in self.members if m.bit_count() == i)

    def _same_n(self, other: Family) -> None:
        if other.n != self.n:
            raise ValueError(f"families over [{self.n}] and [{other.n}]")

    def __or__(self, other: Family) -> Family:
        self._same_n(other)
        return Family(self.n, self.members | other.members)

    def __and__(self, other: Family) -> Family:
        self._same_n(other)
        return Family(self.n, self.members & other.members)

    def __sub__(self, other: Family) -> Family:
        self._same_n(other)
        return Family(self.n, self.members - other.members)

    def __le__(self, other: Family) -> bool:
        self._same_n(other)
        return self.members <= other.members

    def is_upward_closed(self) -> bool:
        full = (1 << self.n) - 1
        mem = self.members
        return all(m | b in mem for m in mem for b in iter_bits(full & ~m))

    def is_downward_closed(self) -> bool:
        mem = self.members
        return all(m ^ b in mem for m in mem for b in iter_bits(m))

    def __repr__(self) -> str:
        body = ", ".join(str(SetMask(m, self.n)) for m in self.sorted()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"Family(n={self.n}, [{body}{more}], size={len(self)})"


def shadow(x: SetMask) -> Family:
    """All sets obtained from ``x`` by deleting one element."""
    return Family(x.n, (x.bits ^ b for b in iter_bits(x.bits)))


def upward_closure(family: Family) -> Family:
    full = (1 << family.n) - 1
    seen = set(family.members)
    stack = list(seen)
    while stack:
        m = stack.pop()
        for b in iter_bits(full & ~m):
            up = m | b
            if up not in seen:
                seen.add(up)
                stack.append(up)
    return Family(family.n, seen)


def downward_closure(family: Family) -> Family:
    seen = set(family.members)
    stack = list(seen)
    while stack:
        m = stack.pop()
        for b in iter_bits(m):
            down = m ^ b
            if down not in seen:
                seen.add(down)
                stack.append(down)
    return Family(family.n, seen)


def complement(family: Family) -> Family:
    """2^[n] minus the family."""
    _check_cube(family.n)
    mem = family.members
    return Family(family.n, (m for m in range(1 << family.n) if m not in mem))


def all_sets_of_size_at_least(n: int, k: int) -> Family:
    _check_n(n)
    return Family(n, (m for i in range(max(k, 0), n + 1) for m in iter_masks_of_size(n, i)))


def binom(n: int, k: int) -> int:
    """C(n, k), zero when k is out of range."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom_partial_sum(n: int, lo: int, hi: int) -> int:
    """Exact sum of C(n, i) for lo <= i <= hi."""
    if not 0 <= lo <= hi <= n:
        raise ValueError(f"need 0 <= lo <= hi <= n, got n={n}, lo={lo}, hi={hi}")
    return sum(math.comb(n, i) for i in range(lo, hi + 1))


@dataclass(frozen=True)
class GeometricBound:
    lhs: int
    rhs: Fraction
    holds: bool


def geometric_bound(n: int, m: int) -> GeometricBound:
    """Compare sum_{i<=m} C(n,i) with (n-m)/(n-2m) * C(n,m), for 2m < n."""
    if m < 0 or 2 * m >= n:
        raise ValueError(f"need 0 <= m and 2m < n, got n={n}, m={m}")
    lhs = binom_partial_sum(n, 0, m)
    rhs = Fraction(n - m, n - 2 * m) * math.comb(n, m)
    return GeometricBound(lhs, rhs, lhs <= rhs)


def binary_entropy(x: Fraction | float | int) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0."""
    if not 0 <= x <= 1:
        raise ValueError(f"entropy argument must lie in [0, 1], got {x}")
    if x == 0 or x == 1:
        return 0.0
    if isinstance(x, float):
        p, q = x, 1.0 - x
    else:
        p, q = float(x), float(1 - Fraction(x))
    return -p * math.log2(p) - q * math.log2(q)


def monotone_families(n: int) -> Iterator[Family]:
    """Every upward-closed family on [n] (Dedekind many: 168 at n=4, 7581 at n=5)."""
    _check_n(n)
    if n > 6:
        raise ValueError("monotone family enumeration is limited to n <= 6")
    full = (1 << n) - 1
    order = sorted(range(1 << n), key=lambda m: (-m.bit_count(), m))
    supers = [[m | b for b in iter_bits(full & ~m)] for m in range(1 << n)]
    chosen: set[int] = set()

    def rec(i: int) -> Iterator[Family]:
        if i == len(order):
            yield Family(n, chosen)
            return
        m = order[i]
        if all(u in chosen for u in supers[m]):
            chosen.add(m)
            yield from rec(i + 1)
            chosen.discard(m)
        yield from rec(i + 1)

    yield from rec(0)


def format_family(family: Family) -> str:
    """Text form: ``n=<int>`` then one set per line; ``{}`` is the empty set."""
    lines = [f"n={family.n}"]
    for m in family.sorted():
        lines.append(",".join(map(str, elements_of(m))) if m else "{}")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("family text must start with a line 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}") from None
    members = []
    for ln in lines[1:]:
        if ln == "{}":
            members.append(0)
            continue
        try:
            elems = [int(tok) for tok in ln.split(",")]
        except ValueError:
            raise ValueError(f"bad set line {ln!r}") from None
        members.append(mask_from_elements(elems, n))
    if len(set(members)) != len(members):
        raise ValueError("duplicate set in family text")
    return Family(n, members)
