"""Exact solvers for the four invariants: domination, total domination,
semi-total domination, and the 2-packing number.

Two routes per invariant: ``solve_oracle`` enumerates subsets by cardinality
and is the correctness anchor (guarded to small graphs), ``solve_bnb`` is a
pruned branch-and-bound returning the same value on every input where both
run.  Witnesses always validate under the matching predicate; the oracle's
witness is the lexicographically least optimal set.
"""

from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, VertexSet, _bits

KINDS = ("gamma", "gamma_t", "gamma_t2", "rho")

ORACLE_VERTEX_LIMIT = 20


class IsolateError(ValueError):
    """Isolated vertex where an isolate-free graph is required."""


class OracleLimitError(ValueError):
    """Graph too large for the enumeration oracle."""


@dataclass(frozen=True)
class InvariantResult:
    kind: str
    value: int
    witness: VertexSet
    method: str  # "oracle" or "branch_and_bound"


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown invariant kind {kind!r}, expected one of {KINDS}")


def _check_isolate_free(g: Graph) -> None:
    for v in range(g.n):
        if g.adj[v] == 0:
            raise IsolateError(f"vertex {v} is isolated; invariant requires an isolate-free graph")


def _check_set(g: Graph, s: VertexSet) -> int:
    if s.n != g.n:
        raise ValueError("vertex set bound to a different graph order")
    return s.mask


def _dominating_mask(g: Graph, mask: int) -> bool:
    covered = mask
    for v in _bits(mask):
        covered |= g.adj[v]
    return covered == (1 << g.n) - 1


def _total_dominating_mask(g: Graph, mask: int) -> bool:
    covered = 0
    for v in _bits(mask):
        covered |= g.adj[v]
    return covered == (1 << g.n) - 1


def _semitotal_dominating_mask(g: Graph, mask: int) -> bool:
    if not _dominating_mask(g, mask):
        return False
    for v in _bits(mask):
        if not mask & g.ball2(v) & ~(1 << v):
            return False
    return True


def _two_packing_mask(g: Graph, mask: int) -> bool:
    for v in _bits(mask):
        if mask & g.ball2(v) & ~(1 << v):
            return False
    return True


def is_dominating(g: Graph, s: VertexSet) -> bool:
    """True iff N[S] covers every vertex."""
    return _dominating_mask(g, _check_set(g, s))


def is_total_dominating(g: Graph, s: VertexSet) -> bool:
    """True iff N(S) covers every vertex (members need a neighbor in S too)."""
    return _total_dominating_mask(g, _check_set(g, s))


def is_semitotal_dominating(g: Graph, s: VertexSet) -> bool:
    """True iff S dominates and every member has another member within distance 2."""
    mask = _check_set(g, s)
    _check_isolate_free(g)
    return _semitotal_dominating_mask(g, mask)


def is_two_packing(g: Graph, s: VertexSet) -> bool:
    """True iff all distinct members are at distance >= 3 (infinite included)."""
    return _two_packing_mask(g, _check_set(g, s))


_PREDICATES = {
    "gamma": _dominating_mask,
    "gamma_t": _total_dominating_mask,
    "gamma_t2": _semitotal_dominating_mask,
}


def solve_oracle(g: Graph, kind: str) -> InvariantResult:
    """Ground truth by subset enumeration in increasing cardinality.

    For the packing number the feasible sizes are downward closed, so the
    sweep stops at the first infeasible size and reports the one below.
    """
    _check_kind(kind)
    n = g.n
    if n > ORACLE_VERTEX_LIMIT:
        raise OracleLimitError(f"graph too large for oracle: {n} > {ORACLE_VERTEX_LIMIT} vertices")
    if kind == "rho":
        best_k, best_mask = 0, 0
        for k in range(1, n + 1):
            found = None
            for combo in combinations(range(n), k):
                mask = 0
                for v in combo:
                    mask |= 1 << v
                if _two_packing_mask(g, mask):
                    found = mask
                    break
            if found is None:
                break
            best_k, best_mask = k, found
        return InvariantResult("rho", best_k, VertexSet(n, best_mask), "oracle")
    _check_isolate_free(g)
    predicate = _PREDICATES[kind]
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if predicate(g, mask):
                return InvariantResult(kind, k, VertexSet(n, mask), "oracle")
    raise AssertionError("unreachable: the whole vertex set always qualifies")


def enumerate_min_semitotal_sets(g: Graph) -> list[VertexSet]:
    """All minimum semi-total dominating sets, in lexicographic order."""
    value = solve_oracle(g, "gamma_t2").value
    out = []
    for combo in combinations(range(g.n), value):
        mask = 0
        for v in combo:
            mask |= 1 << v
        if _semitotal_dominating_mask(g, mask):
            out.append(VertexSet(g.n, mask))
    return out


def _greedy_domination(g: Graph, kind: str) -> int:
    """Deterministic greedy upper bound used to seed the search incumbent."""
    n = g.n
    full = (1 << n) - 1
    cover = g.adj if kind == "gamma_t" else g.closed
    chosen = 0
    covered = 0
    while covered != full:
        best_v, best_gain = -1, -1
        for v in range(n):
            if chosen >> v & 1:
                continue
            gain = (cover[v] & ~covered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen |= 1 << best_v
        covered |= cover[best_v]
    if kind == "gamma_t2":
        ball2x = [g.ball2(v) & ~(1 << v) for v in range(n)]
        while True:
            lonely = [u for u in _bits(chosen) if not chosen & ball2x[u]]
            if not lonely:
                break
            u = lonely[0]
            best_v, best_fix = -1, -1
            for v in _bits(ball2x[u] & ~chosen):
                fix = sum(1 for w in lonely if ball2x[w] >> v & 1)
                if fix > best_fix:
                    best_v, best_fix = v, fix
            chosen |= 1 << best_v
    return chosen


def _min_domination_bnb(g: Graph, kind: str) -> int:
    """Branch and bound over coverage (and partner repair for gamma_t2).

    Branches on the most constrained uncovered vertex, candidate dominators
    ordered by degree; prunes with the incumbent and the uncovered-vertex
    lower bound ceil(uncovered / (max degree + 1)).
    """
    n = g.n
    full = (1 << n) - 1
    cover = g.adj if kind == "gamma_t" else g.closed
    need_partner = kind == "gamma_t2"
    ball2x = [g.ball2(v) & ~(1 << v) for v in range(n)] if need_partner else None
    deg = [g.degree(v) for v in range(n)]
    delta1 = max(deg) + 1

    best_mask = _greedy_domination(g, kind)
    best_size = best_mask.bit_count()

    def search(chosen: int, covered: int, excluded: int, size: int) -> None:
        nonlocal best_mask, best_size
        uncovered = full & ~covered
        bound = (uncovered.bit_count() + delta1 - 1) // delta1
        lonely_first = -1
        if need_partner and not uncovered:
            for u in _bits(chosen):
                if not chosen & ball2x[u]:
                    lonely_first = u
                    break
            if lonely_first >= 0 and bound == 0:
                bound = 1
        if size + bound >= best_size:
            return
        if not uncovered and lonely_first < 0:
            best_mask, best_size = chosen, size
            return
        if uncovered:
            avail = 0
            branch_count = n + 1
            for u in _bits(uncovered):
                options = cover[u] & ~excluded
                count = options.bit_count()
                if count == 0:
                    return  # dead branch: u can no longer be covered
                if count < branch_count:
                    avail, branch_count = options, count
        else:
            avail = ball2x[lonely_first] & ~excluded & ~chosen
            if not avail:
                return
        order = sorted(_bits(avail), key=lambda v: (-deg[v], v))
        ex = excluded
        for v in order:
            search(chosen | 1 << v, covered | cover[v], ex, size + 1)
            ex |= 1 << v
            if size + bound >= best_size:
                return  # incumbent improved below this node's bound

    search(0, 0, 0, 0)
    return best_mask


def _feasible_semitotal(g: Graph, budget: int, chosen0: int, excluded0: int) -> bool:
    """Does some semi-total dominating set of size <= budget extend ``chosen0``
    using only vertices outside ``excluded0``?"""
    n = g.n
    full = (1 << n) - 1
    cover = g.closed
    ball2x = [g.ball2(v) & ~(1 << v) for v in range(n)]
    deg = [g.degree(v) for v in range(n)]
    delta1 = max(deg) + 1

    def search(chosen: int, covered: int, excluded: int, size: int) -> bool:
        uncovered = full & ~covered
        bound = (uncovered.bit_count() + delta1 - 1) // delta1
        lonely_first = -1
        if not uncovered:
            for u in _bits(chosen):
                if not chosen & ball2x[u]:
                    lonely_first = u
                    break
            if lonely_first < 0:
                return True
            if bound == 0:
                bound = 1
        if size + bound > budget:
            return False
        if uncovered:
            avail = 0
            branch_count = n + 1
            for u in _bits(uncovered):
                options = cover[u] & ~excluded
                count = options.bit_count()
                if count == 0:
                    return False
                if count < branch_count:
                    avail, branch_count = options, count
        else:
            avail = ball2x[lonely_first] & ~excluded & ~chosen
            if not avail:
                return False
        ex = excluded
        for v in sorted(_bits(avail), key=lambda w: (-deg[w], w)):
            if search(chosen | 1 << v, covered | cover[v], ex, size + 1):
                return True
            ex |= 1 << v
        return False

    covered0 = 0
    for v in _bits(chosen0):
        covered0 |= cover[v]
    return search(chosen0, covered0, excluded0, chosen0.bit_count())


def lexleast_min_semitotal_set(g: Graph) -> VertexSet:
    """The lexicographically least minimum semi-total dominating set.

    Canonical replay witness: agrees with the oracle's witness wherever the
    oracle runs, without the oracle's size guard.  Built by locking vertices
    in ascending order against a budgeted feasibility search.
    """
    _check_isolate_free(g)
    value = solve_bnb(g, "gamma_t2").value
    chosen = 0
    floor = 0
    for _ in range(value):
        for v in range(floor, g.n):
            below = (1 << (v + 1)) - 1
            if _feasible_semitotal(g, value, chosen | 1 << v, below):
                chosen |= 1 << v
                floor = v + 1
                break
        else:
            raise AssertionError("lexicographic extension must exist at the optimum size")
    assert _semitotal_dominating_mask(g, chosen)
    return VertexSet(g.n, chosen)


def _greedy_two_packing(g: Graph) -> int:
    conf = [g.ball2(v) & ~(1 << v) for v in range(g.n)]
    chosen = 0
    for v in range(g.n):
        if not conf[v] & chosen:
            chosen |= 1 << v
    return chosen


def _max_two_packing_bnb(g: Graph) -> int:
    """Maximum independent set search on the distance-at-most-2 conflict graph."""
    n = g.n
    conf = [g.ball2(v) & ~(1 << v) for v in range(n)]
    best_mask = _greedy_two_packing(g)
    best_size = best_mask.bit_count()

    def search(candidates: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size
        if size + candidates.bit_count() <= best_size:
            return
        if not candidates:
            best_mask, best_size = chosen, size
            return
        pick, pick_deg = -1, -1
        for v in _bits(candidates):
            d = (conf[v] & candidates).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        search(candidates & ~conf[pick] & ~(1 << pick), chosen | 1 << pick, size + 1)
        search(candidates & ~(1 << pick), chosen, size)

    search((1 << n) - 1, 0, 0)
    return best_mask


def solve_bnb(g: Graph, kind: str) -> InvariantResult:
    """Fast exact solver; value always matches the oracle, witness validates."""
    _check_kind(kind)
    if kind == "rho":
        mask = _max_two_packing_bnb(g)
        assert _two_packing_mask(g, mask)
    else:
        _check_isolate_free(g)
        mask = _min_domination_bnb(g, kind)
        assert _PREDICATES[kind](g, mask)
    return InvariantResult(kind, mask.bit_count(), VertexSet(g.n, mask), "branch_and_bound")


def solve(g: Graph, kind: str, method: str = "branch_and_bound") -> InvariantResult:
    if method == "oracle":
        return solve_oracle(g, kind)
    if method == "branch_and_bound":
        return solve_bnb(g, kind)
    raise ValueError(f"unknown method {method!r}")
