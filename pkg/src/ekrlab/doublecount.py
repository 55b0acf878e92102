"""Exact double counting over pairs of cyclic permutations.

Each member set F of profile (k, l) carries the rational weight

    s(F) = C(n1,k) * C(n2,l) / (n1! * n2!)

and forms a rectangle in exactly k!(n1-k)! * l!(n2-l)! of the
(n1-1)!(n2-1)! canonical permutation pairs (full or empty parts always
form one, so their axis contributes the whole (n-1)! instead).  Summing
s(F) over all (pair, rectangle-forming member) incidences therefore
equals |F| exactly, whether grouped by member or by pair.  Everything
here is exact rational arithmetic; no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .cyclic import (
    RectFamily,
    canonical_permutations,
    is_proj_intersecting_family,
    set_to_rectangle,
)
from .families import Family, Profile, Universe, normalize_profiles, profile_of
from .bounds import binomial

ENUMERATION_CAP = 6  # (n-1)! pairs per axis stay tiny up to here


def member_weight(u: Universe, p: tuple[int, int]) -> Fraction:
    """The double-counting weight of any member with profile p, as a reduced rational."""
    k, l = Profile(*p)
    return Fraction(binomial(u.n1, k) * binomial(u.n2, l),
                    factorial(u.n1) * factorial(u.n2))


def weight(u: Universe, profiles, mask: int) -> Fraction:
    """Weight of a concrete member; its profile must be in the prescribed list."""
    p = profile_of(u, mask)
    if p not in normalize_profiles(u, profiles):
        raise ValueError(f"member profile {tuple(p)} not in the prescribed list")
    return member_weight(u, p)


def _axis_pair_count(n: int, k: int) -> int:
    # interior runs: k!(n-k)!; a full (or empty-axis) part is consecutive everywhere
    if n == 0:
        return 1
    if k == n:
        return factorial(n - 1)
    if k == 0:
        return 0
    return factorial(k) * factorial(n - k)


def rectangle_pair_count(u: Universe, mask: int) -> int:
    """Closed-form number of canonical permutation pairs where the set is a rectangle."""
    k, l = profile_of(u, mask)
    return _axis_pair_count(u.n1, k) * _axis_pair_count(u.n2, l)


def enumerate_rectangle_pair_count(u: Universe, mask: int) -> int:
    """The same count by direct enumeration over all canonical permutation pairs."""
    if u.n1 > ENUMERATION_CAP or u.n2 > ENUMERATION_CAP:
        raise ValueError(f"enumeration limited to parts of size <= {ENUMERATION_CAP}")
    count = 0
    for c1 in canonical_permutations(u.n1):
        for c2 in canonical_permutations(u.n2):
            if set_to_rectangle(u, mask, c1, c2) is not None:
                count += 1
    return count


@dataclass(frozen=True)
class DoubleCountResult:
    size: int
    by_member: Fraction
    by_pair: Fraction
    per_pair_terms: tuple[Fraction, ...]

    @property
    def exact(self) -> bool:
        return self.by_member == self.size and self.by_pair == self.size

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "by_member": str(self.by_member),
            "by_pair": str(self.by_pair),
            "exact": self.exact,
        }


def double_count_check(f: Family) -> DoubleCountResult:
    """Evaluate the weighted incidence sum both ways and compare with |f|.

    Grouped by member it uses the closed-form pair count; grouped by pair it
    enumerates every canonical permutation pair and the rectangles formed
    there.  Both groupings must equal |f| exactly.  Profiles must avoid full
    parts (k = n1 or l = n2 with the part non-empty), where the closed-form
    incidence count degenerates and the identity fails.
    """
    u = f.universe
    if u.n1 > ENUMERATION_CAP or u.n2 > ENUMERATION_CAP:
        raise ValueError(f"double counting limited to parts of size <= {ENUMERATION_CAP}")
    for m in f.sets:
        k, l = profile_of(u, m)
        if (u.n1 > 0 and k in (0, u.n1)) or (u.n2 > 0 and l in (0, u.n2)):
            raise ValueError(
                f"profile ({k},{l}) has an empty or full part; the identity needs interior profiles"
            )

    weights = {m: member_weight(u, profile_of(u, m)) for m in f.sets}
    by_member = sum(
        (Fraction(rectangle_pair_count(u, m)) * weights[m] for m in f.sets),
        start=Fraction(0),
    )

    per_pair = []
    for c1 in canonical_permutations(u.n1):
        for c2 in canonical_permutations(u.n2):
            term = Fraction(0)
            for m in f.sets:
                if set_to_rectangle(u, m, c1, c2) is not None:
                    term += weights[m]
            per_pair.append(term)
    by_pair = sum(per_pair, start=Fraction(0))
    return DoubleCountResult(len(f), by_member, by_pair, tuple(per_pair))


def family_rectangles(f: Family, c1, c2) -> RectFamily:
    """Rectangles formed by the family members under one permutation pair."""
    rects = []
    for m in f.sets:
        r = set_to_rectangle(f.universe, m, c1, c2)
        if r is not None:
            rects.append(r)
    return RectFamily(f.universe.n1, f.universe.n2, tuple(sorted(set(rects))))


@dataclass(frozen=True)
class WeightedSumCheck:
    hypothesis_ok: bool
    hypothesis_failures: tuple[str, ...]
    lhs: Fraction
    rhs: Fraction
    holds: bool

    def to_json(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "hypothesis_failures": list(self.hypothesis_failures),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "holds": self.holds,
        }


def weighted_sum_check(family: RectFamily, lambdas: dict[tuple[int, int], Fraction],
                       b: int) -> WeightedSumCheck:
    """Check sum_i lambda_i |R_i| <= max{n1 sum lambda_i l_i, n2 sum lambda_i k_i}.

    The inequality is only claimed for proj-intersecting families with all
    rectangle side lengths at most b and 9b^2 strictly below both axis
    sizes; hypothesis violations are reported, not checked.
    """
    failures = []
    shapes = family.by_shape()
    for (k, l) in shapes:
        if k > b or l > b:
            failures.append(f"shape ({k},{l}) exceeds b={b}")
        if (k, l) not in lambdas:
            failures.append(f"no weight for shape ({k},{l})")
        elif lambdas[(k, l)] <= 0:
            failures.append(f"weight for shape ({k},{l}) not positive")
    if not (9 * b * b < family.n1 and 9 * b * b < family.n2):
        failures.append(f"needs 9b^2 < n1 and n2, got b={b}, n1={family.n1}, n2={family.n2}")
    if not is_proj_intersecting_family(family.rects):
        failures.append("family is not proj-intersecting")
    if failures:
        return WeightedSumCheck(False, tuple(failures), Fraction(0), Fraction(0), False)

    lhs = sum((lambdas[s] * len(rs) for s, rs in shapes.items()), start=Fraction(0))
    sum_l = sum((lambdas[(k, l)] * l for (k, l) in shapes), start=Fraction(0))
    sum_k = sum((lambdas[(k, l)] * k for (k, l) in shapes), start=Fraction(0))
    rhs = max(family.n1 * sum_l, family.n2 * sum_k)
    return WeightedSumCheck(True, (), lhs, rhs, lhs <= rhs)
