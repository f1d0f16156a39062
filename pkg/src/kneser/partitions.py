"""Ordered partitions of [n], part-membership statistics, and Kleitman's
equipartition inequalities checked in exact arithmetic."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .core import Family, binom, complement
from .freeness import disjoint_tuple, good_family

MAX_PARTITION_N = 12


@dataclass(frozen=True)
class PartitionType:
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes or any(k < 1 for k in self.sizes):
            raise ValueError(f"partition sizes must be positive, got {self.sizes}")

    @classmethod
    def equipartition(cls, s: int, m: int) -> PartitionType:
        return cls((m,) * s)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def parts(self) -> int:
        return len(self.sizes)


def count_ordered(pi: PartitionType) -> int:
    """n! / prod(i_j!): ordered partitions of type ``pi``."""
    out = math.factorial(pi.n)
    for k in pi.sizes:
        out //= math.factorial(k)
    return out


def iter_ordered_partitions(pi: PartitionType) -> Iterator[tuple[int, ...]]:
    """Every ordered tuple of disjoint masks with the given sizes covering [n].

    Plain enumeration; :func:`rho_vector` does not use it, tests do.
    """
    n = pi.n
    full = (1 << n) - 1

    def rec(k: int, rest: int) -> Iterator[tuple[int, ...]]:
        if k == len(pi.sizes):
            yield ()
            return
        bits = [1 << i for i in range(n) if rest >> i & 1]
        for combo in itertools.combinations(bits, pi.sizes[k]):
            part = sum(combo)
            for tail in rec(k + 1, rest ^ part):
                yield (part,) + tail

    yield from rec(0, full)


def _membership_polynomial(family: Family, pi: PartitionType) -> list[int]:
    """counts[r] = number of ordered partitions of type ``pi`` with exactly r
    parts in ``family``. Dynamic programme over the covered prefix mask."""
    n = pi.n
    full = (1 << n) - 1
    mem = family.members
    p = pi.parts
    states: dict[int, list[int]] = {0: [1] + [0] * p}
    for size in pi.sizes:
        nxt: dict[int, list[int]] = {}
        for covered, poly in states.items():
            rest = full ^ covered
            bits = [1 << i for i in range(n) if rest >> i & 1]
            for combo in itertools.combinations(bits, size):
                part = sum(combo)
                hit = part in mem
                key = covered | part
                acc = nxt.get(key)
                if acc is None:
                    acc = nxt[key] = [0] * (p + 1)
                if hit:
                    for r in range(p):
                        acc[r + 1] += poly[r]
                else:
                    for r in range(p + 1):
                        acc[r] += poly[r]
        states = nxt
    return states[full]


@dataclass(frozen=True)
class RhoVector:
    """rho[r]: the fraction of ordered partitions with exactly r parts in the family."""

    rho: tuple[Fraction, ...]

    def __getitem__(self, r: int) -> Fraction:
        return self.rho[r] if 0 <= r < len(self.rho) else Fraction(0)

    def __len__(self) -> int:
        return len(self.rho)


def rho_vector(family: Family, pi: PartitionType) -> RhoVector:
    if pi.n != family.n:
        raise ValueError(f"partition of [{pi.n}] against a family over [{family.n}]")
    if pi.n > MAX_PARTITION_N:
        raise ValueError(f"partition enumeration is limited to n <= {MAX_PARTITION_N}")
    counts = _membership_polynomial(family, pi)
    total = count_ordered(pi)
    return RhoVector(tuple(Fraction(c, total) for c in counts))


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "==" or ">="

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs if self.relation == "==" else self.lhs >= self.rhs

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "relation": self.relation,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "pass": self.holds,
        }


@dataclass(frozen=True)
class KleitmanReport:
    s: int
    m: int
    upward_closed: bool
    ks_free: bool
    rho: RhoVector
    checks: tuple[Check, ...]
    # value of the un-simplified middle expression of (ii), per j; informational
    middle_form: dict[int, Fraction] = field(default_factory=dict)

    @property
    def preconditions_ok(self) -> bool:
        return self.upward_closed and self.ks_free

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "m": self.m,
            "upward_closed": self.upward_closed,
            "ks_free": self.ks_free,
            "rho": [str(r) for r in self.rho.rho],
            "checks": [c.to_dict() for c in self.checks],
            "middle_form_ii": {str(j): str(v) for j, v in self.middle_form.items()},
        }


def audit_kleitman(family: Family, s: int, m: int) -> KleitmanReport:
    """Check Kleitman's equipartition relations for B = 2^[sm] minus ``family``.

    (i)   s |B^m| / C(sm,m) = sum_j j rho_j = 1 + sum_j (j-1) rho_j
    (ii)  for 1 <= j <= m-1:
          |B^(m-j)|/C(sm,m-j) + (s-1)|B^(m+1)|/C(sm,m+1) >= 1 - sum_{r>j} (1 - r/s) rho_r
    (iii) for 0 <= j <= m-s:
          |B^(m-s+1-j)|/C(sm,m-s+1-j) + (s-1)|B^(m+1)|/C(sm,m+1) >= 1
    with rho taken over ordered equipartitions into s parts of size m.
    """
    n = s * m
    if family.n != n:
        raise ValueError(f"family over [{family.n}] but s*m = {n}")
    if n > MAX_PARTITION_N:
        raise ValueError(f"audit limited to s*m <= {MAX_PARTITION_N}")
    B = complement(family)
    rho = rho_vector(B, PartitionType.equipartition(s, m))

    def density(i: int) -> Fraction:
        return Fraction(B.layer_size(i), binom(n, i))

    checks = []
    first = s * density(m)
    second = sum((j * rho[j] for j in range(1, s + 1)), Fraction(0))
    third = 1 + sum(((j - 1) * rho[j] for j in range(1, s + 1)), Fraction(0))
    checks.append(Check("i:density=sum_j_j_rho", first, second, "=="))
    checks.append(Check("i:sum_j_j_rho=1+sum_(j-1)rho", second, third, "=="))

    top = (s - 1) * density(m + 1) if m + 1 <= n else Fraction(0)
    middle = {}
    for j in range(1, m):
        lhs = density(m - j) + top
        rhs = 1 - sum(((1 - Fraction(r, s)) * rho[r] for r in range(j + 1, s + 1)), Fraction(0))
        checks.append(Check(f"ii:j={j}", lhs, rhs, ">="))
        middle[j] = sum((Fraction(r, j) * rho[r] for r in range(j + 1, s + 1)), Fraction(0)) + sum(
            (rho[r] for r in range(1, j + 1)), Fraction(0)
        )
    for j in range(0, m - s + 1):
        lhs = density(m - s + 1 - j) + top
        checks.append(Check(f"iii:j={j}", lhs, Fraction(1), ">="))

    return KleitmanReport(
        s=s,
        m=m,
        upward_closed=family.is_upward_closed(),
        ks_free=disjoint_tuple(family, s, n) is None,
        rho=rho,
        checks=tuple(checks),
        middle_form=middle,
    )


def audit_good_partition_count(family: Family, s: int, t: int, pi: PartitionType) -> bool:
    """True iff every ordered partition of type ``pi`` has at least p-s+1
    parts that are good with respect to ``family``."""
    if pi.parts < s:
        raise ValueError(f"need at least s={s} parts, got {pi.parts}")
    rho = rho_vector(good_family(family, t), pi)
    return all(rho[r] == 0 for r in range(pi.parts - s + 1))
