"""Constructions underlying the product lower bound, materialized so every
step can be checked on concrete instances.

For a factor graph G with a maximum allied minimum semi-total dominating set
U = {u_1..u_k} (allied members first), the machinery builds:

  * the cell partition of V(G): one cell per u_i, allied cells inside the
    open neighborhood of u_i, free cells inside the closed one, with a
    distance-2 exclusion rule between allied and free cells;
  * per-cell projection profiles of a product dominating set d onto H
    (projection / missing / covered / uncovered height sets);
  * the double-counting index of (cell, height) pairs that are horizontally
    dominated or uncovered, counted by rows and by columns;
  * a per-column replacement semi-total dominating set of G witnessing the
    column bound |R^v| <= 2|D^v|;
  * per-cell connector sets turning missing+projection into a semi-total
    dominating set of H.

All tie-breaking (cell assignment, neighbor choice, path midpoints) is
least-index so findings replay exactly.  Checks report failures; they never
patch them.
"""

from dataclasses import dataclass

from .graphs import Graph, ProductGraph, VertexSet, _bits
from .solvers import (
    is_semitotal_dominating,
    _semitotal_dominating_mask,
    enumerate_min_semitotal_sets,
    solve_bnb,
)


class FalsificationError(RuntimeError):
    """A construction the argument asserts to exist could not be built.

    Raised instead of silently patching; carries enough context to replay.
    """

    def __init__(self, message: str, context: dict | None = None):
        super().__init__(message)
        self.context = dict(context or {})


@dataclass(frozen=True)
class AlliedPartition:
    """A minimum semi-total dominating set split into allied and free members.

    ``order`` lists the members with allied vertices first (ascending), then
    free vertices (ascending); cells and index sets are parallel to it.
    """

    members: VertexSet
    allied: VertexSet
    free: VertexSet
    order: tuple[int, ...]

    @property
    def allied_count(self) -> int:
        return len(self.allied)

    @property
    def free_count(self) -> int:
        return len(self.free)

    @property
    def size(self) -> int:
        return len(self.order)


def allied_split(g: Graph, u: VertexSet) -> AlliedPartition:
    """Split a minimum semi-total dominating set into allied/free members.

    A member is allied when it is adjacent to another member; rejected inputs
    name the failed predicate.
    """
    if u.n != g.n:
        raise ValueError("vertex set bound to a different graph order")
    if not is_semitotal_dominating(g, u):
        raise ValueError("allied_split: set failed predicate is_semitotal_dominating")
    minimum = solve_bnb(g, "gamma_t2").value
    if len(u) != minimum:
        raise ValueError(
            f"allied_split: set of size {len(u)} is not minimum (gamma_t2 = {minimum})"
        )
    allied_mask = 0
    for v in _bits(u.mask):
        if g.adj[v] & u.mask:
            allied_mask |= 1 << v
    free_mask = u.mask & ~allied_mask
    order = tuple(_bits(allied_mask)) + tuple(_bits(free_mask))
    return AlliedPartition(
        members=u,
        allied=VertexSet(g.n, allied_mask),
        free=VertexSet(g.n, free_mask),
        order=order,
    )


def max_allied_set(g: Graph) -> AlliedPartition:
    """Over all minimum semi-total dominating sets, the one with the largest
    allied part; ties go to the lexicographically least set."""
    best = None
    best_allied = -1
    for u in enumerate_min_semitotal_sets(g):
        allied = sum(1 for v in _bits(u.mask) if g.adj[v] & u.mask)
        if allied > best_allied:
            best, best_allied = u, allied
    assert best is not None
    return allied_split(g, best)


@dataclass(frozen=True)
class CellPartition:
    """Partition of the factor's vertices into one cell per member of U."""

    cells: tuple[VertexSet, ...]


def build_cell_partition(g: Graph, ap: AlliedPartition) -> CellPartition:
    """Assign every vertex of G to a cell, least admissible index first.

    Free members sit in their own cells; each allied member joins the cell of
    its least-index neighbor inside U; every other vertex takes the least
    cell whose owner it neighbors, skipping free cells barred by the
    distance-2 exclusion rule.  A vertex with no admissible cell contradicts
    the construction's existence argument and raises ``FalsificationError``.
    """
    order = ap.order
    k = len(order)
    ell = ap.allied_count
    cells = [0] * k
    for j in range(ell, k):
        cells[j] |= 1 << order[j]
    for i in range(ell):
        u_i = order[i]
        host = None
        for pos in range(k):
            if g.adj[u_i] >> order[pos] & 1:
                host = pos
                break
        if host is None:
            raise FalsificationError(
                f"allied member {u_i} has no neighbor inside the set",
                {"vertex": u_i, "members": ap.members.vertices()},
            )
        cells[host] |= 1 << u_i
    allied_positions = range(ell)
    for w in range(g.n):
        if ap.members.mask >> w & 1:
            continue
        assigned = None
        for pos in range(k):
            owner = order[pos]
            if not g.adj[owner] >> w & 1:
                continue
            if pos >= ell:
                barred = False
                for apos in allied_positions:
                    a = order[apos]
                    if g.dist(a, owner) == 2 and g.adj[a] >> w & 1:
                        barred = True
                        break
                if barred:
                    continue
            assigned = pos
            break
        if assigned is None:
            raise FalsificationError(
                f"no admissible cell for vertex {w}",
                {
                    "vertex": w,
                    "members": ap.members.vertices(),
                    "allied": ap.allied.vertices(),
                },
            )
        cells[assigned] |= 1 << w
    return CellPartition(cells=tuple(VertexSet(g.n, m) for m in cells))


def cell_partition_violations(g: Graph, ap: AlliedPartition, pi: CellPartition) -> list[str]:
    """Check the three cell-partition invariants; returns violation strings."""
    order = ap.order
    ell = ap.allied_count
    problems = []
    if len(pi.cells) != len(order):
        return [f"partition has {len(pi.cells)} cells for {len(order)} members"]
    union = 0
    for i, cell in enumerate(pi.cells):
        if union & cell.mask:
            problems.append(f"cell {i} overlaps an earlier cell")
        union |= cell.mask
    if union != (1 << g.n) - 1:
        problems.append("cells do not cover every vertex")
    for i, cell in enumerate(pi.cells):
        owner = order[i]
        if i < ell:
            if cell.mask & ~g.adj[owner]:
                problems.append(f"allied cell {i} leaves the open neighborhood of {owner}")
        else:
            if cell.mask & ~g.closed[owner]:
                problems.append(f"free cell {i} leaves the closed neighborhood of {owner}")
            if not cell.mask >> owner & 1:
                problems.append(f"free cell {i} does not contain its owner {owner}")
    for i in range(ell):
        a = order[i]
        for j in range(ell, len(order)):
            b = order[j]
            if g.dist(a, b) == 2 and g.adj[a] & g.adj[b] & pi.cells[j].mask:
                problems.append(
                    f"distance-2 exclusion violated between allied {a} and free {b}"
                )
    return problems


@dataclass(frozen=True)
class CellProfile:
    """Shadow of the product dominating set on H, restricted to one cell.

    ``projection`` holds the heights carrying set members over the cell,
    ``missing`` the heights the projection fails to dominate in H,
    ``covered``/``uncovered`` split the projection by whether another
    projection-or-missing height sits within distance 2.
    """

    index: int
    members: VertexSet  # in the product
    projection: VertexSet  # in H
    missing: VertexSet
    covered: VertexSet
    uncovered: VertexSet


def project_profiles(prod: ProductGraph, d: VertexSet, pi: CellPartition) -> tuple[CellProfile, ...]:
    """One profile per cell, computed from H-distances."""
    pg = prod.graph
    if d.n != pg.n:
        raise ValueError("product set bound to a different graph order")
    if not _semitotal_dominating_mask(pg, d.mask):
        raise ValueError("project_profiles: set failed predicate is_semitotal_dominating")
    h = prod.right
    n_h = prod.n_h
    full_h = (1 << n_h) - 1
    profiles = []
    for i, cell in enumerate(pi.cells):
        if cell.n != prod.n_g:
            raise ValueError("cell partition bound to a different factor order")
        members = 0
        for u in _bits(cell.mask):
            members |= d.mask & prod.row_mask(u)
        proj = 0
        for idx in _bits(members):
            proj |= 1 << (idx % n_h)
        dominated = 0
        for v in _bits(proj):
            dominated |= h.closed[v]
        missing = full_h & ~dominated
        covered = 0
        for v in _bits(proj):
            if (proj | missing) & h.ball2(v) & ~(1 << v):
                covered |= 1 << v
        uncovered = proj & ~covered
        profiles.append(
            CellProfile(
                index=i,
                members=VertexSet(pg.n, members),
                projection=VertexSet(n_h, proj),
                missing=VertexSet(n_h, missing),
                covered=VertexSet(n_h, covered),
                uncovered=VertexSet(n_h, uncovered),
            )
        )
    return tuple(profiles)


@dataclass(frozen=True)
class CoverIndex:
    """Double-counting index over (cell, height) pairs.

    A pair is present when the cell's slab at that height is horizontally
    dominated by the height's set members, or the height is uncovered for
    the cell.  ``row_counts`` and ``col_counts`` count the same entries two
    ways, so their sums agree exactly.
    """

    entries: frozenset[tuple[int, int]]
    row_counts: tuple[int, ...]
    col_counts: tuple[int, ...]
    total: int


def build_cover_index(
    prod: ProductGraph,
    d: VertexSet,
    pi: CellPartition,
    profiles: tuple[CellProfile, ...],
) -> CoverIndex:
    pg = prod.graph
    n_h = prod.n_h
    k = len(pi.cells)
    entries = set()
    for v in range(n_h):
        col = prod.col_masks[v]
        dv = d.mask & col
        horizon = 0
        for idx in _bits(dv):
            horizon |= pg.adj[idx]
        for i, cell in enumerate(pi.cells):
            slab = 0
            for u in _bits(cell.mask):
                slab |= 1 << (u * n_h + v)
            if slab & ~horizon == 0 or profiles[i].uncovered.mask >> v & 1:
                entries.add((i, v))
    row_counts = tuple(sum(1 for (i, v) in entries if i == row) for row in range(k))
    col_counts = tuple(sum(1 for (i, v) in entries if v == col) for col in range(n_h))
    total = len(entries)
    assert sum(row_counts) == sum(col_counts) == total
    return CoverIndex(
        entries=frozenset(entries),
        row_counts=row_counts,
        col_counts=col_counts,
        total=total,
    )


def build_column_witness(
    prod: ProductGraph,
    d: VertexSet,
    ap: AlliedPartition,
    pi: CellPartition,
    v: int,
    profiles: tuple[CellProfile, ...] | None = None,
    cover: CoverIndex | None = None,
) -> VertexSet:
    """Replacement semi-total dominating set of G assembled from column v.

    Union of: the G-projection of the column's members; owners of cells not
    indexed at v; one chosen neighbor for each free owner that appears in the
    projection; and free owners indexed at v that sit at distance 2 from
    another free member but at distance 3 or more from every allied member.
    """
    g = prod.left
    n_h = prod.n_h
    if not 0 <= v < n_h:
        raise ValueError(f"height {v} outside factor range")
    if profiles is None:
        profiles = project_profiles(prod, d, pi)
    if cover is None:
        cover = build_cover_index(prod, d, pi, profiles)
    order = ap.order
    k = len(order)
    ell = ap.allied_count
    col = prod.col_masks[v]
    projection_g = 0
    for idx in _bits(d.mask & col):
        projection_g |= 1 << (idx // n_h)
    witness = projection_g
    for i in range(k):
        if (i, v) in cover.entries:
            continue
        owner = order[i]
        if i < ell:
            witness |= 1 << owner
        elif not projection_g >> owner & 1:
            witness |= 1 << owner
    # Chosen neighbors: free owners that appear in the projection still need
    # a partner; prefer a neighbor inside the owner's own cell.
    for i in range(ell, k):
        owner = order[i]
        if (i, v) in cover.entries or not projection_g >> owner & 1:
            continue
        candidates = g.adj[owner] & pi.cells[i].mask
        if not candidates:
            candidates = g.adj[owner]
        witness |= candidates & -candidates  # least-index neighbor
    # Free owners indexed at v, joined when far from every allied member but
    # at distance 2 from another free member.
    for j in range(ell, k):
        owner = order[j]
        if (j, v) not in cover.entries:
            continue
        near_free = any(
            u != owner and g.dist(owner, u) == 2 for u in _bits(ap.free.mask)
        )
        far_from_allied = all(g.dist(owner, a) >= 3 for a in _bits(ap.allied.mask))
        if near_free and far_from_allied:
            witness |= 1 << owner
    return VertexSet(g.n, witness)


@dataclass(frozen=True)
class ColumnCheck:
    column: int
    indexed_rows: int  # |R^v|
    column_set_size: int  # |D^v|
    inequality_ok: bool  # |R^v| <= 2 |D^v|
    witness: VertexSet
    witness_valid: bool
    witness_size_ok: bool  # |T| <= 2|D^v| + gamma_t2(G) - |R^v|

    @property
    def ok(self) -> bool:
        return self.inequality_ok and self.witness_valid and self.witness_size_ok


@dataclass(frozen=True)
class ColumnReport:
    applicable: bool
    columns: tuple[ColumnCheck, ...]

    @property
    def ok(self) -> bool | None:
        if not self.applicable:
            return None
        return all(c.ok for c in self.columns)


def check_column_bounds(
    prod: ProductGraph,
    d: VertexSet,
    ap: AlliedPartition,
    pi: CellPartition,
    profiles: tuple[CellProfile, ...],
    cover: CoverIndex,
    minimum_value: int | None,
) -> ColumnReport:
    """Per-column bound |R^v| <= 2|D^v| plus witness validation.

    The bound's contradiction frame assumes d is a verified minimum set;
    when it is not, the report is marked not applicable instead of checked.
    """
    if minimum_value is None or len(d) != minimum_value:
        return ColumnReport(applicable=False, columns=())
    g = prod.left
    gamma_g = ap.size
    checks = []
    for v in range(prod.n_h):
        rv = cover.col_counts[v]
        dv = (d.mask & prod.col_masks[v]).bit_count()
        witness = build_column_witness(prod, d, ap, pi, v, profiles, cover)
        valid = is_semitotal_dominating(g, witness)
        size_ok = len(witness) <= 2 * dv + gamma_g - rv
        checks.append(
            ColumnCheck(
                column=v,
                indexed_rows=rv,
                column_set_size=dv,
                inequality_ok=rv <= 2 * dv,
                witness=witness,
                witness_valid=valid,
                witness_size_ok=size_ok,
            )
        )
    return ColumnReport(applicable=True, columns=tuple(checks))


@dataclass(frozen=True)
class ConnectorResult:
    """Connector heights joining far-apart uncovered vertices of one cell.

    ``base_valid`` records whether missing + projection + connectors is a
    semi-total dominating set of H; a failure is an edge-case finding, not
    an implementation error.
    """

    index: int
    connectors: VertexSet
    base_valid: bool


def build_connector_set(h: Graph, profile: CellProfile) -> ConnectorResult:
    """Greedy connectors: one midpoint per spanning-forest edge of the
    distance-exactly-3 graph on the cell's uncovered heights."""
    uncovered = profile.uncovered.vertices()
    parent = {x: x for x in uncovered}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    connectors = 0
    for ai in range(len(uncovered)):
        for bi in range(ai + 1, len(uncovered)):
            x, y = uncovered[ai], uncovered[bi]
            if h.dist(x, y) != 3:
                continue
            rx, ry = find(x), find(y)
            if rx == ry:
                continue
            parent[rx] = ry
            for z in range(h.n):
                if h.dist(z, x) <= 2 and h.dist(z, y) <= 2:
                    connectors |= 1 << z
                    break
    assert connectors.bit_count() <= max(len(uncovered) - 1, 0)
    base = profile.missing.mask | profile.projection.mask | connectors
    valid = _semitotal_dominating_mask(h, base)
    return ConnectorResult(
        index=profile.index,
        connectors=VertexSet(h.n, connectors),
        base_valid=valid,
    )


@dataclass(frozen=True)
class CountingChecks:
    """The three counting inequalities and their chained consequence."""

    index_total: int  # N
    cell_sum: int  # sum over cells of |missing| + |uncovered|
    set_size: int  # |d|
    eq1_ok: bool  # N >= cell_sum
    eq2_ok: bool  # N <= 2 |d|
    eq3_ok: bool  # cell_sum >= gamma_t2(G) gamma_t2(H) - |d|
    chain_ok: bool  # 3 |d| >= gamma_t2(G) gamma_t2(H)


def counting_checks(
    profiles: tuple[CellProfile, ...],
    cover: CoverIndex,
    d_size: int,
    gamma_g: int,
    gamma_h: int,
) -> CountingChecks:
    cell_sum = sum(len(p.missing) + len(p.uncovered) for p in profiles)
    target = gamma_g * gamma_h
    return CountingChecks(
        index_total=cover.total,
        cell_sum=cell_sum,
        set_size=d_size,
        eq1_ok=cover.total >= cell_sum,
        eq2_ok=cover.total <= 2 * d_size,
        eq3_ok=cell_sum >= target - d_size,
        chain_ok=3 * d_size >= target,
    )
