"""Exact maximum intersecting family search.

Candidate sets form a compatibility graph (edge = non-empty intersection),
so intersecting families are exactly its cliques.  The solver is a
branch-and-bound maximum clique search over bitset adjacency rows with a
greedy sequential coloring bound and degeneracy-order root branching;
structural constraints (non-trivial, two-sided) are enforced with
admissible prunes plus predicate checks on every recorded clique.

A plain subset-enumeration oracle, which never looks at the graph, backs
the solver for small instances.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

from .bounds import star_bound, star_bound_proven
from .families import (
    Family,
    Universe,
    candidate_sets,
    is_intersecting,
    is_trivially_intersecting,
    is_two_sided_intersecting,
    iter_bits,
    normalize_profiles,
    sort_key,
)

VERTEX_CAP = 20_000
ORACLE_CAP = 25


class Constraint(Enum):
    ANY = "any"
    NONTRIVIAL = "nontrivial"
    TWO_SIDED = "twosided"

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        for c in cls:
            if c.value == text.lower():
                return c
        raise ValueError(f"unknown constraint {text!r}")


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int | None = None
    time_limit_s: float | None = None

    def __post_init__(self) -> None:
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.time_limit_s is not None and self.time_limit_s <= 0:
            raise ValueError("time_limit_s must be positive")


@dataclass(frozen=True)
class SearchResult:
    max_size: int
    witness: Family
    proven_optimal: bool
    nodes: int
    elapsed_s: float

    def to_json(self) -> dict:
        return {
            "max_size": self.max_size,
            "witness": self.witness.to_lists(),
            "proven_optimal": self.proven_optimal,
            "nodes": self.nodes,
            "elapsed_ms": round(self.elapsed_s * 1000.0, 3),
        }


@dataclass(frozen=True)
class CompatibilityGraph:
    universe: Universe
    profiles: tuple
    vertices: tuple[int, ...]
    adjacency: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2


def build_graph(u: Universe, profiles, vertex_cap: int = VERTEX_CAP) -> CompatibilityGraph:
    """Compatibility graph over every profile-respecting set, in canonical vertex order."""
    ps = normalize_profiles(u, profiles)
    masks = candidate_sets(u, ps)
    m = len(masks)
    if m > vertex_cap:
        raise ValueError(f"{m} candidate sets exceed the vertex cap of {vertex_cap}")
    adj = [0] * m
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            if mi & masks[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatibilityGraph(u, ps, tuple(masks), tuple(adj))


def _degeneracy_order(adj: tuple[int, ...]) -> list[int]:
    """Repeatedly remove a minimum-degree vertex; ties go to the smaller index."""
    m = len(adj)
    alive = (1 << m) - 1
    deg = [row.bit_count() for row in adj]
    order = []
    for _ in range(m):
        v = min((i for i in iter_bits(alive)), key=lambda i: (deg[i], i))
        order.append(v)
        alive &= ~(1 << v)
        for w in iter_bits(adj[v] & alive):
            deg[w] -= 1
    return order


def _swap_bits(mask: int, a: int, b: int) -> int:
    if ((mask >> a) ^ (mask >> b)) & 1:
        return mask ^ ((1 << a) | (1 << b))
    return mask


def _vertex_orbits(graph: CompatibilityGraph) -> list[int]:
    """Orbit ids of vertices under part-preserving element transpositions."""
    u = graph.universe
    index_of = {mask: i for i, mask in enumerate(graph.vertices)}
    parent = list(range(graph.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [(a, a + 1) for a in range(u.n1 - 1)]
    gens += [(a, a + 1) for a in range(u.n1, u.size - 1)]
    for a, b in gens:
        for i, mask in enumerate(graph.vertices):
            j = index_of[_swap_bits(mask, a, b)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return [find(i) for i in range(graph.size)]


class _BudgetExhausted(Exception):
    pass


class _CliqueSearch:
    def __init__(self, graph: CompatibilityGraph, constraint: Constraint,
                 budget: SearchBudget | None, symmetry: bool):
        self.graph = graph
        self.constraint = constraint
        self.budget = budget or SearchBudget()
        self.symmetry = symmetry
        self.adj = graph.adjacency
        self.masks = graph.vertices
        u = graph.universe
        self.x1m, self.x2m = u.x1_mask, u.x2_mask
        self.full = u.full_mask
        self.nodes = 0
        self.deadline = None
        self.best = 0
        self.best_witness: tuple[int, ...] = ()

    def offer(self, size: int, witness: tuple[int, ...]) -> None:
        """Record a valid clique; ties keep the lexicographically smaller witness."""
        if size > self.best or (size == self.best and witness < self.best_witness):
            self.best = size
            self.best_witness = witness

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget.node_limit is not None and self.nodes > self.budget.node_limit:
            raise _BudgetExhausted
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise _BudgetExhausted

    def _color_order(self, p: int) -> list[tuple[int, int]]:
        """Greedy sequential coloring of the candidate set, ascending color."""
        order = []
        color = 0
        while p:
            color += 1
            avail = p
            while avail:
                v = (avail & -avail).bit_length() - 1
                bit = 1 << v
                order.append((v, color))
                p ^= bit
                avail &= ~self.adj[v] & ~bit
        return order

    def _expand(self, r: list[int], and_all: int, miss1: bool, miss2: bool, p: int) -> None:
        self._tick()
        if not p:
            return
        constraint = self.constraint
        if constraint is not Constraint.ANY:
            and_p = self.full
            for w in iter_bits(p):
                and_p &= self.masks[w]
            joint = and_all & and_p
            if constraint is Constraint.NONTRIVIAL:
                if joint:
                    return
            else:
                if (not miss1 and joint & self.x1m) or (not miss2 and joint & self.x2m):
                    return
        order = self._color_order(p)
        rsize = len(r)
        for v, color in reversed(order):
            if rsize + color <= self.best:
                return
            bit = 1 << v
            vmask = self.masks[v]
            child_and = and_all & vmask
            if constraint is Constraint.TWO_SIDED:
                cm1, cm2 = miss1, miss2
                if not (cm1 and cm2):
                    for w in r:
                        inter = vmask & self.masks[w]
                        cm1 = cm1 or not inter & self.x1m
                        cm2 = cm2 or not inter & self.x2m
                        if cm1 and cm2:
                            break
            else:
                cm1 = cm2 = False
            r.append(v)
            if self._valid(child_and, cm1, cm2):
                self.offer(rsize + 1, tuple(sorted(r)))
            self._expand(r, child_and, cm1, cm2, p & self.adj[v])
            r.pop()
            p &= ~bit

    def _valid(self, and_all: int, miss1: bool, miss2: bool) -> bool:
        if self.constraint is Constraint.ANY:
            return True
        if self.constraint is Constraint.NONTRIVIAL:
            return and_all == 0
        return miss1 and miss2

    def run(self) -> tuple[bool, int]:
        start = time.perf_counter()
        if self.budget.time_limit_s is not None:
            self.deadline = start + self.budget.time_limit_s
        order = _degeneracy_order(self.adj)
        eligible = None
        if self.symmetry:
            orbit = _vertex_orbits(self.graph)
            pos = {v: i for i, v in enumerate(order)}
            best_pos: dict[int, int] = {}
            for v in order:
                o = orbit[v]
                best_pos[o] = min(best_pos.get(o, pos[v]), pos[v])
            eligible = {v for v in order if best_pos[orbit[v]] == pos[v]}
        suffix = (1 << self.graph.size) - 1
        completed = True
        try:
            for v in order:
                suffix &= ~(1 << v)
                if eligible is not None and v not in eligible:
                    continue
                self._tick()
                vmask = self.masks[v]
                if self._valid(vmask, False, False):
                    self.offer(1, (v,))
                self._expand([v], vmask, False, False, self.adj[v] & suffix)
        except _BudgetExhausted:
            completed = False
        return completed, self.nodes


def _star_seed(graph: CompatibilityGraph) -> tuple[int, ...]:
    """Vertex indices of the largest single-element star among the candidates."""
    best: tuple[int, ...] = ()
    for x in range(graph.universe.size):
        bit = 1 << x
        idx = tuple(i for i, m in enumerate(graph.vertices) if m & bit)
        if len(idx) > len(best):
            best = idx
    return best


def _seed_indices(graph: CompatibilityGraph, seed: Family, constraint: Constraint) -> tuple[int, ...]:
    if seed.universe != graph.universe:
        raise ValueError("seed family lives in a different universe")
    index_of = {mask: i for i, mask in enumerate(graph.vertices)}
    try:
        idx = tuple(sorted(index_of[m] for m in seed.sets))
    except KeyError:
        raise ValueError("seed family contains a set outside the candidate profiles") from None
    if not is_intersecting(seed):
        raise ValueError("seed family is not intersecting")
    if not _satisfies(seed, constraint):
        raise ValueError(f"seed family violates the {constraint.value} constraint")
    return idx


def _satisfies(f: Family, constraint: Constraint) -> bool:
    if constraint is Constraint.ANY:
        return True
    if constraint is Constraint.NONTRIVIAL:
        return not is_trivially_intersecting(f)
    return is_two_sided_intersecting(f)


def max_intersecting(u: Universe, profiles, constraint: Constraint = Constraint.ANY,
                     budget: SearchBudget | None = None, *, seed: Family | None = None,
                     symmetry: bool = False, vertex_cap: int = VERTEX_CAP,
                     graph: CompatibilityGraph | None = None) -> SearchResult:
    """Exact maximum intersecting family under the given structural constraint.

    Deterministic for fixed inputs: ties between maximum witnesses keep the
    lexicographically smallest vertex set found.  Exhausting the budget
    returns the incumbent with proven_optimal False, never an error.  When
    no family satisfies the constraint the result has max_size 0 and an
    empty witness.
    """
    start = time.perf_counter()
    if graph is None:
        graph = build_graph(u, profiles, vertex_cap)
    if constraint is Constraint.TWO_SIDED and not u.two_part:
        raise ValueError("two-sided constraint needs a two-part universe")
    search = _CliqueSearch(graph, constraint, budget, symmetry)
    if seed is not None:
        idx = _seed_indices(graph, seed, constraint)
        search.offer(len(idx), idx)
    elif constraint is Constraint.ANY:
        star = _star_seed(graph)
        if star:
            search.offer(len(star), star)
    completed, nodes = search.run()
    witness = Family(u, tuple(sorted((graph.vertices[i] for i in search.best_witness), key=sort_key)))
    return SearchResult(search.best, witness, completed, nodes, time.perf_counter() - start)


def exhaustive_oracle(u: Universe, profiles, constraint: Constraint = Constraint.ANY) -> int:
    """Maximum size by brute force over all candidate subsets, checked set-wise.

    Deliberately ignores the compatibility graph and the solver: every
    subset is tested directly against the intersection predicates.
    """
    masks = candidate_sets(u, profiles)
    m = len(masks)
    if m > ORACLE_CAP:
        raise ValueError(f"{m} candidate sets exceed the oracle cap of {ORACLE_CAP}")
    if constraint is Constraint.TWO_SIDED and not u.two_part:
        raise ValueError("two-sided constraint needs a two-part universe")
    x1m, x2m, full = u.x1_mask, u.x2_mask, u.full_mask
    best = 0
    for sub in range(1, 1 << m):
        if sub.bit_count() <= best:
            continue
        chosen = [masks[i] for i in iter_bits(sub)]
        ok = True
        for i in range(len(chosen)):
            a = chosen[i]
            for j in range(i + 1, len(chosen)):
                if not a & chosen[j]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if constraint is Constraint.NONTRIVIAL:
            acc = full
            for a in chosen:
                acc &= a
            if acc:
                continue
        elif constraint is Constraint.TWO_SIDED:
            miss1 = miss2 = False
            for i in range(len(chosen)):
                for j in range(i, len(chosen)):
                    inter = chosen[i] & chosen[j]
                    miss1 = miss1 or not inter & x1m
                    miss2 = miss2 or not inter & x2m
            if not (miss1 and miss2):
                continue
        best = len(chosen)
    return best


@dataclass(frozen=True)
class BoundAttainment:
    search_max: int
    bound: int
    proven_regime: bool
    equal: bool
    proven_optimal: bool

    @property
    def consistent(self) -> bool:
        """False only when an exactly solved in-regime instance misses the bound."""
        return self.equal or not (self.proven_regime and self.proven_optimal)

    def to_json(self) -> dict:
        return {
            "search_max": self.search_max,
            "star_bound": self.bound,
            "star_bound_proven": self.proven_regime,
            "equal": self.equal,
            "proven_optimal": self.proven_optimal,
        }


def verify_bound_attainment(u: Universe, profiles, budget: SearchBudget | None = None,
                            **kwargs) -> BoundAttainment:
    """Compare the exact search maximum with the star bound for these parameters."""
    result = max_intersecting(u, profiles, Constraint.ANY, budget, **kwargs)
    bound = star_bound(u, profiles)
    return BoundAttainment(
        search_max=result.max_size,
        bound=bound,
        proven_regime=star_bound_proven(u, profiles),
        equal=result.max_size == bound,
        proven_optimal=result.proven_optimal,
    )
