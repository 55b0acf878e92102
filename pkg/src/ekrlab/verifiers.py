"""Verifiers for the structural facts behind the double-counting machinery.

Each check validates its stated hypotheses, then either exhaustively
enumerates every instance inside the given parameter box or samples
random hypothesis-satisfying instances with a seeded generator.  A
passing report has an empty counterexample list; sampled runs also record
how many draws were rejected for failing the hypothesis.

Check ids (the CLI exposes the same numbering):

  1   distance-graph cliques: max clique of the <=(k-1)-distance graph on
      Z_n is k, and every k-clique is consecutive
  2   interval dispersion: any k+b+1 distinct length-k intervals on Z_n
      contain a pair at distance >= b+1
  3   blocking-pair existence: any proj-intersecting family of >= 9b^2
      k x l rectangles contains a blocking pair
  4   third-rectangle overlap: a blocking pair's base meets the second
      projection of any small rectangle proj-intersecting both members
  5   distinct-base collapse: l shared-J blocking-pair bases force a
      common point in every J-projection
  6   multiplicity split: between 1 and l-1 distinct shared-J bases give
      |R| <= 4b^2 + (l-1) n1
  7   no mixed blocking pairs: a proj-intersecting union of two shape
      classes never contains both blocking-pair kinds
  8   per-shape bounds: a shared-J blocking pair in one class bounds every
      class by < 9b^2, <= 4b^2+(l_i-1)n1 or <= l_i n1 (mirrored for
      shared-I bases)
  9   large-ground bounds: with 9b^2 < n1, n2 one of the two uniform
      per-shape bounds holds across all classes
  c1  total-count bound: |R| <= l n1 under the hypotheses of check 5
  c2  five-way bound: one of the five size bounds always holds
  c3  weighted-sum bound: positive weights preserve the check-9 bounds
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cyclic import (
    I_BASE,
    J_BASE,
    Rectangle,
    RectFamily,
    all_intervals,
    find_blocking_pairs,
    interval_distance,
    point_distance,
    proj_intersecting,
)
from .doublecount import weighted_sum_check

EXHAUSTIVE_CAP = 2_000_000
SAMPLE_FACTOR = 200

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


@dataclass
class VerificationReport:
    check: str
    params: dict
    mode: str
    instances: int
    counterexamples: list
    hypothesis_rejections: int
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "lemma": self.check,
            "params": self.params,
            "mode": self.mode,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
            "hypothesis_rejections": self.hypothesis_rejections,
            "elapsed_ms": round(self.elapsed_s * 1000.0, 3),
        }


class InfeasibleExhaustive(ValueError):
    """Raised when the exhaustive range is too large; use sampled mode instead."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ValueError(f"hypothesis failed: {what}")


def _rect_json(rects) -> list[list[int]]:
    return sorted([r.i.start, r.i.length, r.j.start, r.j.length] for r in rects)


def _compat_rows(rects: list[Rectangle]) -> list[int]:
    m = len(rects)
    rows = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if proj_intersecting(rects[i], rects[j]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def _iter_proj_families(rects: list[Rectangle], rows: list[int], min_size: int,
                        cap: int = EXHAUSTIVE_CAP):
    """Every proj-intersecting subset of size >= min_size, as index tuples."""
    m = len(rects)
    seen = 0

    def rec(chosen: list[int], cand: int):
        nonlocal seen
        if len(chosen) >= min_size:
            seen += 1
            if seen > cap:
                raise InfeasibleExhaustive(
                    f"more than {cap} hypothesis-satisfying families; use sampled mode")
            yield tuple(chosen)
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c ^= 1 << v
            if len(chosen) + 1 + c.bit_count() < min_size:
                return
            chosen.append(v)
            yield from rec(chosen, c & rows[v])
            chosen.pop()

    yield from rec([], (1 << m) - 1)


def _sample_family(rng: random.Random, rects: list[Rectangle], rows: list[int],
                   size_range: tuple[int, int]) -> list[int]:
    """Grow a random proj-intersecting family toward a random target size."""
    m = len(rects)
    target = rng.randint(*size_range)
    order = list(range(m))
    rng.shuffle(order)
    chosen: list[int] = []
    cand = (1 << m) - 1
    for v in order:
        if len(chosen) >= target:
            break
        if cand >> v & 1:
            chosen.append(v)
            cand &= rows[v]
    return chosen


def _shape_space(n1: int, n2: int, shapes) -> list[Rectangle]:
    rects = set()
    for k, l in shapes:
        for i in all_intervals(n1, k):
            for j in all_intervals(n2, l):
                rects.add(Rectangle(i, j))
    return sorted(rects)


# ---------------------------------------------------------------- check 1

def _check_distance_graph_cliques(params, mode, rng, trials):
    n, k = params["n"], params["k"]
    _require(2 <= 2 * k < n, "2 <= 2k < n")
    adjacent = lambda u, v: u != v and point_distance(u, v, n) <= k - 1

    def is_clique(vs):
        return all(adjacent(a, b) for a, b in combinations(vs, 2))

    def consecutive(vs):
        pos = set(vs)
        return any(all((s + i) % n in pos for i in range(len(vs))) for s in vs)

    instances = 0
    bad = []
    if mode == EXHAUSTIVE:
        from math import comb
        if comb(n, k + 1) + comb(n, k) > EXHAUSTIVE_CAP:
            raise InfeasibleExhaustive("too many subsets; use sampled mode")
        for s in range(n):
            run = [(s + i) % n for i in range(k)]
            instances += 1
            if not is_clique(run):
                bad.append({"kind": "consecutive run not a clique", "vertices": sorted(run)})
        for vs in combinations(range(n), k + 1):
            instances += 1
            if is_clique(vs):
                bad.append({"kind": "clique larger than k", "vertices": list(vs)})
        for vs in combinations(range(n), k):
            instances += 1
            if is_clique(vs) and not consecutive(vs):
                bad.append({"kind": "non-consecutive k-clique", "vertices": list(vs)})
    else:
        for _ in range(trials):
            vs = tuple(sorted(rng.sample(range(n), k + 1)))
            instances += 1
            if is_clique(vs):
                bad.append({"kind": "clique larger than k", "vertices": list(vs)})
            vs = tuple(sorted(rng.sample(range(n), k)))
            instances += 1
            if is_clique(vs) and not consecutive(vs):
                bad.append({"kind": "non-consecutive k-clique", "vertices": list(vs)})
    return instances, bad, 0


# ---------------------------------------------------------------- check 2

def _check_interval_dispersion(params, mode, rng, trials):
    n, k, b = params["n"], params["k"], params["b"]
    _require(k >= 1 and b >= 1, "k, b positive")
    _require(2 * (k + b) <= n, "2(k+b) <= n")
    intervals = all_intervals(n, k)
    need = k + b + 1

    def dispersed(sub):
        return any(interval_distance(p, q) >= b + 1 for p, q in combinations(sub, 2))

    instances = 0
    bad = []
    if mode == EXHAUSTIVE:
        from math import comb
        if comb(len(intervals), need) > EXHAUSTIVE_CAP:
            raise InfeasibleExhaustive("too many interval subsets; use sampled mode")
        for sub in combinations(intervals, need):
            instances += 1
            if not dispersed(sub):
                bad.append({"intervals": sorted((i.start, i.length) for i in sub)})
    else:
        for _ in range(trials):
            sub = rng.sample(intervals, need)
            instances += 1
            if not dispersed(sub):
                bad.append({"intervals": sorted((i.start, i.length) for i in sub)})
    return instances, bad, 0


# ---------------------------------------------------------------- check 3

def _check_blocking_pair_existence(params, mode, rng, trials):
    n1, n2, k, l, b = (params[x] for x in ("n1", "n2", "k", "l", "b"))
    _require(1 <= k <= b and 1 <= l <= b, "k, l <= b")
    _require(2 * (k + b) <= n1, "2(k+b) <= n1")
    _require(2 * (l + b) <= n2, "2(l+b) <= n2")
    rects = _shape_space(n1, n2, [(k, l)])
    rows = _compat_rows(rects)
    need = 9 * b * b

    instances = 0
    bad = []
    rejections = 0
    if mode == EXHAUSTIVE:
        for fam in _iter_proj_families(rects, rows, need):
            instances += 1
            members = [rects[i] for i in fam]
            if not find_blocking_pairs(members, b).pairs:
                bad.append({"family": _rect_json(members)})
    else:
        draws = 0
        while instances < trials and draws < trials * SAMPLE_FACTOR:
            draws += 1
            fam = _sample_family(rng, rects, rows, (need, len(rects)))
            if len(fam) < need:
                rejections += 1
                continue
            instances += 1
            members = [rects[i] for i in fam]
            if not find_blocking_pairs(members, b).pairs:
                bad.append({"family": _rect_json(members)})
    return instances, bad, rejections


# ---------------------------------------------------------------- check 4

def _check_third_rectangle_overlap(params, mode, rng, trials):
    n1, n2, k, l, b = (params[x] for x in ("n1", "n2", "k", "l", "b"))
    _require(1 <= k <= b and 1 <= l <= b, "k, l <= b")

    i_intervals = all_intervals(n1, k)
    j_intervals = all_intervals(n2, l)
    far_pairs = [(i1, i2) for i1, i2 in combinations(i_intervals, 2)
                 if interval_distance(i1, i2) >= b + 1]
    _require(bool(far_pairs), "some I-interval pair at distance >= b+1 must exist")
    u_intervals = [iv for s in range(1, b + 1) for iv in all_intervals(n1, s)]
    v_intervals = [iv for s in range(1, b + 1) for iv in all_intervals(n2, s)]

    def conclusion(j0, i1, i2, uu, vv):
        r1, r2, third = Rectangle(i1, j0), Rectangle(i2, j0), Rectangle(uu, vv)
        if not (proj_intersecting(r1, third) and proj_intersecting(r2, third)):
            return None
        return j0.overlaps(vv)

    instances = 0
    bad = []
    rejections = 0
    if mode == EXHAUSTIVE:
        total = len(j_intervals) * len(far_pairs) * len(u_intervals) * len(v_intervals)
        if total > EXHAUSTIVE_CAP:
            raise InfeasibleExhaustive("too many triples; use sampled mode")
        for j0 in j_intervals:
            for i1, i2 in far_pairs:
                for uu in u_intervals:
                    for vv in v_intervals:
                        res = conclusion(j0, i1, i2, uu, vv)
                        if res is None:
                            continue
                        instances += 1
                        if not res:
                            bad.append({"base": (j0.start, j0.length),
                                        "pair": _rect_json([Rectangle(i1, j0), Rectangle(i2, j0)]),
                                        "third": (uu.start, uu.length, vv.start, vv.length)})
    else:
        draws = 0
        while instances < trials and draws < trials * SAMPLE_FACTOR:
            draws += 1
            j0 = rng.choice(j_intervals)
            i1, i2 = rng.choice(far_pairs)
            uu = rng.choice(u_intervals)
            vv = rng.choice(v_intervals)
            res = conclusion(j0, i1, i2, uu, vv)
            if res is None:
                rejections += 1
                continue
            instances += 1
            if not res:
                bad.append({"base": (j0.start, j0.length),
                            "pair": _rect_json([Rectangle(i1, j0), Rectangle(i2, j0)]),
                            "third": (uu.start, uu.length, vv.start, vv.length)})
    return instances, bad, rejections


# ------------------------------------------------------- checks 5, 6, c1, c2

def _single_shape_family_check(params, mode, rng, trials, hypothesis, conclusion,
                               strict_box: bool = True):
    n1, n2, k, l, b = (params[x] for x in ("n1", "n2", "k", "l", "b"))
    _require(1 <= k <= b and 1 <= l <= b, "k, l <= b")
    if strict_box:
        _require(2 * (k + b) < n1, "2(k+b) < n1")
        _require(2 * (l + b) < n2, "2(l+b) < n2")
    rects = _shape_space(n1, n2, [(k, l)])
    rows = _compat_rows(rects)

    instances = 0
    bad = []
    rejections = 0
    if mode == EXHAUSTIVE:
        for fam in _iter_proj_families(rects, rows, 2):
            members = [rects[i] for i in fam]
            scan = find_blocking_pairs(members, b)
            if not hypothesis(members, scan):
                continue
            instances += 1
            if not conclusion(members, scan):
                bad.append({"family": _rect_json(members)})
    else:
        draws = 0
        while instances < trials and draws < trials * SAMPLE_FACTOR:
            draws += 1
            fam = _sample_family(rng, rects, rows, (2, len(rects)))
            members = [rects[i] for i in fam]
            scan = find_blocking_pairs(members, b)
            if not hypothesis(members, scan):
                rejections += 1
                continue
            instances += 1
            if not conclusion(members, scan):
                bad.append({"family": _rect_json(members)})
    return instances, bad, rejections


def _check_distinct_base_collapse(params, mode, rng, trials):
    l, b = params["l"], params["b"]
    n2 = params["n2"]

    def hypothesis(members, scan):
        return len(scan.distinct_bases(J_BASE)) >= l

    def conclusion(members, scan):
        return any(all(r.j.contains(beta) for r in members) for beta in range(n2))

    return _single_shape_family_check(params, mode, rng, trials, hypothesis, conclusion)


def _check_total_count_bound(params, mode, rng, trials):
    l, n1 = params["l"], params["n1"]

    def hypothesis(members, scan):
        return len(scan.distinct_bases(J_BASE)) >= l

    def conclusion(members, scan):
        return len(members) <= l * n1

    return _single_shape_family_check(params, mode, rng, trials, hypothesis, conclusion)


def _check_multiplicity_split(params, mode, rng, trials):
    l, b, n1 = params["l"], params["b"], params["n1"]

    def hypothesis(members, scan):
        return 1 <= len(scan.distinct_bases(J_BASE)) <= l - 1

    def conclusion(members, scan):
        return len(members) <= 4 * b * b + (l - 1) * n1

    return _single_shape_family_check(params, mode, rng, trials, hypothesis, conclusion)


def _check_five_way_bound(params, mode, rng, trials):
    n1, n2, k, l, b = (params[x] for x in ("n1", "n2", "k", "l", "b"))

    def hypothesis(members, scan):
        return True

    def conclusion(members, scan):
        size = len(members)
        return (size < 9 * b * b
                or size <= 4 * b * b + (l - 1) * n1
                or size <= l * n1
                or size <= 4 * b * b + (k - 1) * n2
                or size <= k * n2)

    return _single_shape_family_check(params, mode, rng, trials, hypothesis, conclusion)


# ------------------------------------------------------- checks 7, 8, 9, c3

def _parse_shapes(params, b: int, max_shapes: int | None = None):
    shapes = [tuple(s) for s in params["shapes"]]
    _require(len(shapes) >= 1, "at least one shape")
    if max_shapes is not None:
        _require(len(shapes) <= max_shapes, f"at most {max_shapes} shapes")
    for k, l in shapes:
        _require(1 <= k <= b and 1 <= l <= b, f"shape ({k},{l}) within 1..b")
    return shapes


def _multi_shape_family_check(params, mode, rng, trials, hypothesis, conclusion,
                              shapes, min_size: int = 2):
    n1, n2 = params["n1"], params["n2"]
    rects = _shape_space(n1, n2, shapes)
    rows = _compat_rows(rects)

    instances = 0
    bad = []
    rejections = 0
    if mode == EXHAUSTIVE:
        for fam in _iter_proj_families(rects, rows, min_size):
            members = [rects[i] for i in fam]
            if not hypothesis(members):
                continue
            instances += 1
            if not conclusion(members):
                bad.append({"family": _rect_json(members)})
    else:
        draws = 0
        while instances < trials and draws < trials * SAMPLE_FACTOR:
            draws += 1
            fam = _sample_family(rng, rects, rows, (min_size, len(rects)))
            members = [rects[i] for i in fam]
            if len(fam) < min_size or not hypothesis(members):
                rejections += 1
                continue
            instances += 1
            if not conclusion(members):
                bad.append({"family": _rect_json(members)})
    return instances, bad, rejections


def _check_no_mixed_blocking_pairs(params, mode, rng, trials):
    n1, n2, b = params["n1"], params["n2"], params["b"]
    _require(4 * b < n1 and 4 * b < n2, "4b < n1 and 4b < n2")
    shapes = _parse_shapes(params, b, max_shapes=2)

    def hypothesis(members):
        return True

    def conclusion(members):
        kinds = find_blocking_pairs(members, b).kinds_present
        return not (J_BASE in kinds and I_BASE in kinds)

    return _multi_shape_family_check(params, mode, rng, trials, hypothesis, conclusion, shapes)


def _group_by_shape(members):
    classes: dict[tuple[int, int], list[Rectangle]] = {}
    for r in members:
        classes.setdefault(r.shape, []).append(r)
    return classes


def _check_per_shape_bounds(params, mode, rng, trials):
    n1, n2, b = params["n1"], params["n2"], params["b"]
    _require(4 * b < n1 and 4 * b < n2, "4b < n1 and 4b < n2")
    shapes = _parse_shapes(params, b)

    def kinds_inside_classes(members):
        kinds = set()
        for rs in _group_by_shape(members).values():
            kinds |= find_blocking_pairs(rs, b).kinds_present
        return kinds

    def hypothesis(members):
        return bool(kinds_inside_classes(members))

    def conclusion(members):
        classes = _group_by_shape(members)
        kinds = kinds_inside_classes(members)
        ok = True
        if J_BASE in kinds:
            ok = ok and all(
                len(rs) < 9 * b * b
                or len(rs) <= 4 * b * b + (l_i - 1) * n1
                or len(rs) <= l_i * n1
                for (k_i, l_i), rs in classes.items())
        if I_BASE in kinds:
            ok = ok and all(
                len(rs) < 9 * b * b
                or len(rs) <= 4 * b * b + (k_i - 1) * n2
                or len(rs) <= k_i * n2
                for (k_i, l_i), rs in classes.items())
        return ok

    return _multi_shape_family_check(params, mode, rng, trials, hypothesis, conclusion, shapes)


def _check_large_ground_bounds(params, mode, rng, trials):
    n1, n2, b = params["n1"], params["n2"], params["b"]
    _require(9 * b * b < n1 and 9 * b * b < n2, "9b^2 < n1 and 9b^2 < n2")
    shapes = _parse_shapes(params, b)

    def hypothesis(members):
        return True

    def conclusion(members):
        classes = _group_by_shape(members)
        return (all(len(rs) <= l_i * n1 for (k_i, l_i), rs in classes.items())
                or all(len(rs) <= k_i * n2 for (k_i, l_i), rs in classes.items()))

    return _multi_shape_family_check(params, mode, rng, trials, hypothesis, conclusion, shapes)


def _check_weighted_sum_bound(params, mode, rng, trials):
    n1, n2, b = params["n1"], params["n2"], params["b"]
    _require(9 * b * b < n1 and 9 * b * b < n2, "9b^2 < n1 and 9b^2 < n2")
    shapes = _parse_shapes(params, b)

    def hypothesis(members):
        return True

    def conclusion(members):
        lambdas = {s: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for s in shapes}
        fam = RectFamily(n1, n2, tuple(sorted(set(members))))
        res = weighted_sum_check(fam, lambdas, b)
        return res.hypothesis_ok and res.holds

    return _multi_shape_family_check(params, mode, rng, trials, hypothesis, conclusion, shapes)


CHECKS = {
    "1": _check_distance_graph_cliques,
    "2": _check_interval_dispersion,
    "3": _check_blocking_pair_existence,
    "4": _check_third_rectangle_overlap,
    "5": _check_distinct_base_collapse,
    "6": _check_multiplicity_split,
    "7": _check_no_mixed_blocking_pairs,
    "8": _check_per_shape_bounds,
    "9": _check_large_ground_bounds,
    "c1": _check_total_count_bound,
    "c2": _check_five_way_bound,
    "c3": _check_weighted_sum_bound,
}


def verify_check(check_id: str, params: dict, mode: str = EXHAUSTIVE,
                 seed: int | None = None, trials: int = 1000) -> VerificationReport:
    """Run one verifier and return its report (passed == no counterexamples)."""
    if check_id not in CHECKS:
        raise ValueError(f"unknown check {check_id!r}; known: {sorted(CHECKS)}")
    if mode not in (EXHAUSTIVE, SAMPLED):
        raise ValueError(f"mode must be {EXHAUSTIVE!r} or {SAMPLED!r}")
    if mode == SAMPLED and seed is None:
        raise ValueError("sampled mode needs a seed")
    rng = random.Random(seed)
    start = time.perf_counter()
    instances, bad, rejections = CHECKS[check_id](params, mode, rng, trials)
    return VerificationReport(
        check=check_id,
        params=dict(params),
        mode=mode,
        instances=instances,
        counterexamples=sorted(bad, key=repr),
        hypothesis_rejections=rejections,
        elapsed_s=time.perf_counter() - start,
    )
