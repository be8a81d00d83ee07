"""Maximum independent sets in normal Cayley graphs Cay(G, C u C^-1).

The graph is vertex transitive and its components are the cosets of the
subgroup generated by the connection set, so only the identity component is
searched.  Bounds are tried before any search:

* a regular bipartite component has a perfect matching, so alpha = |V|/2;
* the ratio bound floor(hoffman * |V|) caps the answer, and a random coset
  of a connection-free subgroup or a greedy set often meets it.

Otherwise a bitset branch and bound with greedy-colouring bounds runs.  The
identity is fixed in the set (translation) and the second vertex is taken
as a class representative (conjugation fixes the identity).  The search has
a node budget; when it runs out the result reports both bounds and is
flagged as not optimal.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .characters import as_label
from .harmonic import _check_group, element_classes, hoffman_bound, symmetric_connection
from .perms import Perm, compose, group_elements
from .scalar import AlgebraicScalar

MIS_MAX_ORDER = 720
DEFAULT_NODE_LIMIT = 200_000


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class IndependenceResult:
    size: int
    witness: tuple[Perm, ...]
    optimal: bool
    upper_bound: int
    method: str
    components: int
    nodes: int = 0

    @property
    def status(self) -> str:
        return "optimal" if self.optimal else "unresolved"


@dataclass
class _Graph:
    elems: list[Perm]
    adj: list[int]          # bitsets of neighbours
    comp: list[int]         # vertex ids of the identity component
    comp_mask: int
    identity: int


def _build_graph(c, group: str, n: int) -> _Graph:
    cols = set(symmetric_connection(c, group, n))
    elems = group_elements(group, n)
    cls = element_classes(group, n)
    conn = [p for p, k in zip(elems, cls) if k in cols]
    idx = {p: i for i, p in enumerate(elems)}
    adj = []
    for x in elems:
        mask = 0
        for s in conn:
            mask |= 1 << idx[compose(x, s)]
        adj.append(mask)
    identity = idx[tuple(range(n))]
    seen, frontier = 1 << identity, [identity]
    while frontier:
        nxt = []
        for v in frontier:
            new = adj[v] & ~seen
            seen |= new
            nxt.extend(_bits(new))
        frontier = nxt
    return _Graph(elems, adj, _bits(seen), seen, identity)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _is_independent(adj: list[int], vertices) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(not (adj[v] & mask) for v in vertices)


def _bipartition(g: _Graph):
    side = {g.identity: 0}
    stack = [g.identity]
    while stack:
        v = stack.pop()
        for u in _bits(g.adj[v]):
            if u not in side:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return None
    return [v for v in g.comp if side[v] == 0]


def _floor_times(bound, k: int) -> int:
    value = AlgebraicScalar.coerce(bound) * k
    guess = math.floor(float(value))
    while AlgebraicScalar.coerce(guess + 1) <= value:
        guess += 1
    while AlgebraicScalar.coerce(guess) > value:
        guess -= 1
    return guess


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------

def _closure(gens: list[Perm], limit: int) -> set[Perm] | None:
    ident = tuple(range(len(gens[0])))
    group, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(x, s)
                if y not in group:
                    group.add(y)
                    if len(group) > limit:
                        return None
                    nxt.append(y)
        frontier = nxt
    return group


def _subgroup_candidates(g: _Graph, rng: random.Random, tries: int) -> list[int]:
    """Largest connection-free subgroup of the component among random 2-generated ones."""
    idx = {p: i for i, p in enumerate(g.elems)}
    nonadj = [g.elems[v] for v in g.comp if v != g.identity and not (g.adj[g.identity] >> v) & 1]
    best: list[int] = [g.identity]
    if not nonadj:
        return best
    for _ in range(tries):
        gens = [rng.choice(nonadj) for _ in range(rng.choice((1, 2)))]
        sub = _closure(gens, len(g.comp) // 2)
        if sub is None or len(sub) <= len(best):
            continue
        ids = [idx[p] for p in sub]
        if _is_independent(g.adj, ids):
            best = ids
    return best


def _greedy_extend(g: _Graph, start: list[int], order: list[int]) -> list[int]:
    chosen = list(start)
    blocked = 0
    for v in chosen:
        blocked |= g.adj[v] | (1 << v)
    for v in order:
        if not (blocked >> v) & 1:
            chosen.append(v)
            blocked |= g.adj[v] | (1 << v)
    return chosen


def _local_search(g: _Graph, start: list[int], rng: random.Random, iterations: int) -> list[int]:
    """Iterated (1,2)-swaps: drop x, add two non-adjacent vertices whose only
    chosen neighbour was x; when stuck, force in a random vertex."""
    nbrs = {v: [u for u in _bits(g.adj[v]) if u != v] for v in g.comp}
    chosen: set[int] = set()
    tight = dict.fromkeys(g.comp, 0)

    def add(v):
        chosen.add(v)
        for u in nbrs[v]:
            tight[u] += 1

    def drop(v):
        chosen.discard(v)
        for u in nbrs[v]:
            tight[u] -= 1

    def fill():
        for w in rng.sample(g.comp, len(g.comp)):
            if not tight[w] and w not in chosen:
                add(w)

    for v in start:
        add(v)
    fill()
    best = sorted(chosen)
    for _ in range(iterations):
        swapped = False
        for x in rng.sample(sorted(chosen), len(chosen)):
            free = [u for u in nbrs[x] if tight[u] == 1]
            pair = next(((a, b) for i, a in enumerate(free) for b in free[i + 1:]
                         if not (g.adj[a] >> b) & 1), None)
            if pair:
                drop(x)
                add(pair[0])
                add(pair[1])
                fill()
                swapped = True
                break
        if not swapped:
            v = rng.choice(g.comp)
            if v not in chosen:
                for u in nbrs[v]:
                    if u in chosen:
                        drop(u)
                add(v)
                fill()
        if len(chosen) > len(best):
            best = sorted(chosen)
    return best


def _lower_bound(g: _Graph, rng: random.Random, tries: int, iterations: int, upper: int) -> list[int]:
    best = _greedy_extend(g, _subgroup_candidates(g, rng, tries), g.comp)
    if len(best) >= upper:
        return best
    for _ in range(tries // 10 + 1):
        order = list(g.comp)
        rng.shuffle(order)
        cand = _greedy_extend(g, [], order)
        if len(cand) > len(best):
            best = cand
    if iterations and len(best) < upper:
        cand = _local_search(g, best, rng, iterations)
        if len(cand) > len(best):
            best = cand
    return best


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------

class _Search:
    def __init__(self, g: _Graph, best: list[int], upper: int, node_limit: int):
        self.g = g
        # "compatible" = distinct and non-adjacent, i.e. adjacency in the complement
        self.compat = [g.comp_mask & ~(g.adj[v] | (1 << v)) for v in range(len(g.elems))]
        self.best = list(best)
        self.upper = upper
        self.nodes = 0
        self.node_limit = node_limit

    def _colour_order(self, P: int) -> tuple[list[int], list[int]]:
        order, bounds = [], []
        colour, U = 0, P
        while U:
            colour += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~self.compat[v] & ~low
                U &= ~low
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(self, current: list[int], P: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SearchBudgetExceeded
        if len(current) > len(self.best):
            self.best = list(current)
        if not P or len(self.best) >= self.upper:
            return
        order, bounds = self._colour_order(P)
        for v, b in zip(reversed(order), reversed(bounds)):
            if len(current) + b <= len(self.best) or len(self.best) >= self.upper:
                return
            current.append(v)
            self.expand(current, P & self.compat[v])
            current.pop()
            P &= ~(1 << v)

    def run(self, class_of: list[int]) -> None:
        g = self.g
        e = g.identity
        cand = self.compat[e]
        by_class: dict[int, list[int]] = {}
        for v in _bits(cand):
            by_class.setdefault(class_of[v], []).append(v)
        excluded = 0
        self.expand([e], 0)
        for k in sorted(by_class, key=lambda k: -len(by_class[k])):
            members = by_class[k]
            rep = members[0]
            P = cand & self.compat[rep] & ~excluded
            self.expand([e, rep], P)
            for v in members:
                excluded |= 1 << v
            if len(self.best) >= self.upper:
                return


def max_independent_set(c, group: str, n: int, node_limit: int = DEFAULT_NODE_LIMIT,
                        seed: int = 0, tries: int = 200, iterations: int = 2000) -> IndependenceResult:
    """Exact independence number of Cay(G, C u C^-1) with a verified witness, within a node budget."""
    _check_group(group, n)
    order = math.factorial(n) // (2 if group == "A" else 1)
    if order > MIS_MAX_ORDER:
        raise ValueError(f"exact independent sets need |G| <= {MIS_MAX_ORDER}")
    label = as_label(c)
    g = _build_graph(label, group, n)
    components = order // len(g.comp)
    upper = _floor_times(hoffman_bound(label, group, n), len(g.comp))
    nodes = 0
    side = _bipartition(g)
    if side is not None:
        core, optimal, method = side, True, "bipartite"
        upper = min(upper, len(side))
    else:
        core = _lower_bound(g, random.Random(seed), tries, iterations, upper)
        optimal, method = len(core) >= upper, "ratio-bound"
        if not optimal:
            search = _Search(g, core, upper, node_limit)
            try:
                search.run(list(element_classes(group, n)))
                optimal, method = True, "branch-and-bound"
            except SearchBudgetExceeded:
                method = "branch-and-bound (budget exhausted)"
            core, nodes = search.best, search.nodes
            if optimal:
                upper = len(core)
    witness = _translate(g, core)
    if not _is_independent(g.adj, witness):
        raise AssertionError("independent-set witness has an edge")
    return IndependenceResult(
        size=len(witness),
        witness=tuple(sorted(g.elems[v] for v in witness)),
        optimal=optimal,
        upper_bound=upper * components,
        method=method,
        components=components,
        nodes=nodes,
    )


def _translate(g: _Graph, core: list[int]) -> list[int]:
    """Copy a set from the identity component into every coset."""
    idx = {p: i for i, p in enumerate(g.elems)}
    covered, out = 0, []
    for v in range(len(g.elems)):
        if (covered >> v) & 1:
            continue
        t = g.elems[v]
        coset = [idx[compose(t, g.elems[u])] for u in g.comp]
        for u in coset:
            covered |= 1 << u
        out.extend(idx[compose(t, g.elems[u])] for u in core)
    return out


def independence_density(result: IndependenceResult, group: str, n: int) -> Fraction:
    order = math.factorial(n) // (2 if group == "A" else 1)
    return Fraction(result.size, order)
