"""Open filters of an L-topological space and the filter-space structure.

Enumeration is a depth-first assignment of values to opens in an order that
puts meets early (opens sorted by how many opens sit below them), pruning by
monotonicity and meet-compatibility; every completed assignment is
re-validated against the two filter laws.  Found filters are interned so the
filter space can use them as carrier points.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .caps import DEFAULT_CAPS, Caps
from .errors import InvalidParameterError, LatcheckError, PreconditionError
from .frame import Frame
from .lorder import LOrder, is_directed, sup_of
from .lset import CarrierMap, LSubset, preimage, sub
from .ltop import LTopSpace, generate_topology, is_continuous, is_t0
from .report import EXHAUSTIVE, VerificationReport, sampled


@dataclass(frozen=True)
class OpenFilter:
    space: LTopSpace
    values: tuple  # aligned with space.opens

    def __call__(self, a: LSubset) -> int:
        return self.values[self.space.index_of(a)]

    def render(self) -> str:
        names = self.space.frame.names
        inner = ", ".join(names[v] for v in self.values)
        return f"<{inner}>"

    def __repr__(self):
        return f"OpenFilter{self.render()}"


def filter_violation(space: LTopSpace, values) -> str | None:
    """First broken filter law, rendered, or None when (F1) and (F2) hold."""
    frame = space.frame
    if len(values) != len(space.opens):
        return "value map is not total over the opens"
    meet_idx = space.meet_index()
    for i in range(len(space.opens)):
        for j in range(i, len(space.opens)):
            expect = frame.meet[values[i]][values[j]]
            got = values[meet_idx[i][j]]
            if got != expect:
                return (
                    f"F1 fails at A={space.opens[i].render()}, "
                    f"B={space.opens[j].render()}"
                )
    for a in range(frame.n):
        ci = space.const_index()[a]
        if not frame.leq[a][values[ci]]:
            return f"F2 fails at constant {frame.names[a]}"
    return None


def is_open_filter(space: LTopSpace, values) -> bool:
    return filter_violation(space, tuple(values)) is None


def pointed(space: LTopSpace, x) -> OpenFilter:
    """Evaluation of the opens at a point."""
    i = space.carrier.index(x)
    return OpenFilter(space, tuple(a.values[i] for a in space.opens))


def principal(space: LTopSpace, a: LSubset) -> OpenFilter:
    """Degrees of inclusion of a fixed L-subset in each open."""
    if a.frame is not space.frame or a.carrier != space.carrier:
        raise InvalidParameterError("principal filter: subset not over the space")
    return OpenFilter(space, tuple(sub(a, b) for b in space.opens))


def sub_filters(u: OpenFilter, v: OpenFilter) -> int:
    """Inclusion degree of filters: meet over opens of u(A) -> v(A)."""
    if u.space is not v.space:
        raise InvalidParameterError("filters live on different spaces")
    frame = u.space.frame
    return frame.meet_all(
        frame.imp[a][b] for a, b in zip(u.values, v.values)
    )


class FilterSpace:
    """The enumerated filters of a space, with their evaluation topology."""

    __slots__ = ("base_space", "points", "point_index", "phi", "topology", "_order")

    def __init__(self, base_space, points, phi, topology):
        self.base_space = base_space
        self.points = tuple(points)
        self.point_index = {u.values: i for i, u in enumerate(self.points)}
        self.phi = tuple(phi)  # phi[i] evaluates opens[i] across the points
        self.topology = topology
        self._order = None

    def __repr__(self):
        return f"FilterSpace({self.base_space.label}, filters={len(self.points)})"

    def intern(self, u: OpenFilter) -> OpenFilter:
        try:
            return self.points[self.point_index[u.values]]
        except KeyError:
            raise InvalidParameterError(
                f"{u.render()} is not an enumerated filter of {self.base_space.label}"
            ) from None

    def order(self) -> LOrder:
        """(Phi, sub) as an L-order over the interned points."""
        if self._order is None:
            e = tuple(
                tuple(sub_filters(u, v) for v in self.points) for u in self.points
            )
            self._order = LOrder(self.base_space.frame, self.points, e)
        return self._order


def _search_filters(
    space: LTopSpace,
    value_orders=None,
    limit: int | None = None,
    node_budget: int | None = None,
):
    """Depth-first filter search; returns (value tuples, search exhausted).

    `value_orders` maps each open index to the order in which values are
    tried (default ascending), `limit` stops after that many completions, and
    `node_budget` bounds the number of visited assignments.
    """
    frame = space.frame
    k = len(space.opens)
    meet_idx = space.meet_index()
    sub_tab = space.sub_table()
    leq, meet = frame.leq, frame.meet

    below = [
        sum(1 for j in range(k) if sub_tab[j][i] == frame.top) for i in range(k)
    ]
    dfs_order = sorted(range(k), key=lambda i: (below[i], i))
    rank = {open_id: pos for pos, open_id in enumerate(dfs_order)}
    if value_orders is None:
        value_orders = {i: tuple(range(frame.n)) for i in range(k)}

    const_lb = {}
    for a in range(frame.n):
        ci = space.const_index()[a]
        const_lb[ci] = frame.join[const_lb.get(ci, frame.bottom)][a]

    landing = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            m = meet_idx[i][j]
            if m != i and m != j:
                landing[m].append((i, j))

    assigned: list = [None] * k
    found: list[tuple] = []
    nodes = 0
    exhausted = True

    def admissible(i, v) -> bool:
        lb = const_lb.get(i)
        if lb is not None and not leq[lb][v]:
            return False
        for pos in range(rank[i]):
            j = dfs_order[pos]
            w = assigned[j]
            if not leq[meet[w][sub_tab[j][i]]][v]:
                return False
            if not leq[meet[v][sub_tab[i][j]]][w]:
                return False
            m = meet_idx[i][j]
            if assigned[m] is not None and assigned[m] != meet[v][w]:
                return False
        for a, b in landing[i]:
            va, vb = assigned[a], assigned[b]
            if va is not None and vb is not None and meet[va][vb] != v:
                return False
        return True

    def search(pos: int) -> bool:
        nonlocal nodes, exhausted
        if pos == k:
            values = tuple(assigned)
            if filter_violation(space, values) is None:
                found.append(values)
            return limit is not None and len(found) >= limit
        i = dfs_order[pos]
        for v in value_orders[i]:
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                exhausted = False
                return True
            if admissible(i, v):
                assigned[i] = v
                if search(pos + 1):
                    assigned[i] = None
                    if limit is not None and len(found) >= limit:
                        exhausted = False
                    return True
                assigned[i] = None
        return False

    search(0)
    return found, exhausted


def enumerate_filters(space: LTopSpace, caps: Caps = DEFAULT_CAPS) -> FilterSpace:
    """All open filters, found by pruned depth-first search.

    Cached per space object: the enumeration and the generated filter-space
    topology are deterministic, so sharing the result is safe."""
    return _enumerate_filters_cached(space, caps.max_filter_frame,
                                     caps.max_filter_search, caps.max_opens)


@lru_cache(maxsize=None)
def _enumerate_filters_cached(
    space: LTopSpace, max_filter_frame: int, max_filter_search: int, max_opens: int
) -> FilterSpace:
    caps = DEFAULT_CAPS.with_overrides(
        max_filter_frame=max_filter_frame,
        max_filter_search=max_filter_search,
        max_opens=max_opens,
    )
    frame = space.frame
    k = len(space.opens)
    caps.require(
        frame.n <= caps.max_filter_frame,
        "enumerate_filters",
        f"|L|={frame.n} exceeds max_filter_frame={caps.max_filter_frame}",
    )
    caps.require(
        frame.n ** k <= caps.max_filter_search,
        "enumerate_filters",
        f"search space |L|^|opens| = {frame.n}**{k} exceeds "
        f"max_filter_search={caps.max_filter_search}",
    )
    values, _ = _search_filters(space)
    found = [OpenFilter(space, v) for v in values]

    phi = [
        LSubset(frame, tuple(found), tuple(u.values[i] for u in found))
        for i in range(k)
    ]
    topology = generate_topology(
        tuple(found), frame, phi, caps, label=f"Phi({space.label})"
    )
    if not is_t0(topology):
        raise LatcheckError(
            f"filter space of {space.label} failed the T0 law; enumeration is broken"
        )
    return FilterSpace(space, found, phi, topology)


def pushforward(
    f: CarrierMap, x_space: LTopSpace, y_space: LTopSpace, u: OpenFilter
) -> OpenFilter:
    """Image filter along a continuous map: evaluate u on preimages."""
    if not is_continuous(f, x_space, y_space):
        raise PreconditionError("pushforward requires a continuous map")
    if u.space is not x_space:
        raise InvalidParameterError("filter does not live on the map source")
    values = tuple(
        u.values[x_space.index_of(preimage(f, b))] for b in y_space.opens
    )
    if filter_violation(y_space, values) is not None:
        raise LatcheckError("pushforward produced a non-filter; spaces are broken")
    return OpenFilter(y_space, values)


def unit(space: LTopSpace, x) -> OpenFilter:
    return pointed(space, x)


def mult(fs: FilterSpace, alpha: OpenFilter) -> OpenFilter:
    """Flatten a level-2 filter by evaluating it on the evaluation opens."""
    if alpha.space is not fs.topology:
        raise InvalidParameterError("level-2 filter does not live on the filter space")
    violation = filter_violation(fs.topology, alpha.values)
    if violation is not None:
        raise PreconditionError(f"level-2 filter invalid: {violation}")
    values = tuple(
        alpha.values[fs.topology.index_of(phi_a)] for phi_a in fs.phi
    )
    violation = filter_violation(fs.base_space, values)
    if violation is not None:
        raise LatcheckError(f"mult produced a non-filter: {violation}")
    return OpenFilter(fs.base_space, values)


def lim_conv(space: LTopSpace, u: OpenFilter) -> LSubset:
    """Convergence degrees: at x, the meet over opens of A(x) -> u(A)."""
    frame = space.frame
    vals = tuple(
        frame.meet_all(
            frame.imp[a.values[i]][u.values[ai]]
            for ai, a in enumerate(space.opens)
        )
        for i in range(len(space.carrier))
    )
    return LSubset(frame, space.carrier, vals)


def dsup_filters(fs: FilterSpace, family: LSubset) -> OpenFilter:
    """Directed supremum in (Phi, sub) by the pointwise join formula."""
    order = fs.order()
    if family.carrier != fs.points:
        raise InvalidParameterError("family must be indexed by the filter points")
    if not is_directed(order, family):
        raise PreconditionError("family is not directed in (Phi, sub)")
    frame = fs.base_space.frame
    values = tuple(
        frame.join_all(
            frame.meet[family.values[ui]][u.values[oi]]
            for ui, u in enumerate(fs.points)
        )
        for oi in range(len(fs.base_space.opens))
    )
    violation = filter_violation(fs.base_space, values)
    if violation is not None:
        raise LatcheckError(f"directed sup formula left the filter space: {violation}")
    return fs.intern(OpenFilter(fs.base_space, values))


def lift_tilde(fs: FilterSpace, family: LSubset) -> OpenFilter:
    """Level-2 filter representing a directed family of filters."""
    order = fs.order()
    if family.carrier != fs.points:
        raise InvalidParameterError("family must be indexed by the filter points")
    if not is_directed(order, family):
        raise PreconditionError("family is not directed in (Phi, sub)")
    frame = fs.base_space.frame
    values = tuple(
        frame.join_all(
            frame.meet[family.values[ui]][w.values[ui]]
            for ui in range(len(fs.points))
        )
        for w in fs.topology.opens
    )
    violation = filter_violation(fs.topology, values)
    if violation is not None:
        raise LatcheckError(f"lift of a directed family is not a filter: {violation}")
    return OpenFilter(fs.topology, values)


def canonical_directed(fs: FilterSpace, u: OpenFilter) -> LSubset:
    """The canonical directed family below a filter, via principal filters."""
    frame = fs.base_space.frame
    sub_tab = fs.base_space.sub_table()
    principal_rows = [
        OpenFilter(fs.base_space, tuple(sub_tab[i]))
        for i in range(len(fs.base_space.opens))
    ]
    vals = []
    for v in fs.points:
        acc = frame.bottom
        for i in range(len(fs.base_space.opens)):
            acc = frame.join[acc][
                frame.meet[u.values[i]][sub_filters(v, principal_rows[i])]
            ]
        vals.append(acc)
    return LSubset(frame, fs.points, tuple(vals))


def directed_family_policy(fs: FilterSpace, caps: Caps = DEFAULT_CAPS):
    """Directed families to check: exhaustive within caps, else the sampled
    policy of canonical families, principal chains and singletons.

    Returns (families, mode)."""
    from .lset import all_lsubsets

    order = fs.order()
    frame = fs.base_space.frame
    total = frame.n ** len(fs.points)
    if total <= caps.max_filter_families:
        fams = [
            a
            for a in all_lsubsets(fs.points, frame,
                                  caps.with_overrides(max_pointwise=total))
            if is_directed(order, a)
        ]
        return fams, EXHAUSTIVE
    fams = []
    seen = set()
    for u in fs.points:
        for fam in (
            canonical_directed(fs, u),
            LSubset(frame, fs.points, tuple(sub_filters(v, u) for v in fs.points)),
            LSubset(
                frame,
                fs.points,
                tuple(frame.top if v is u else frame.bottom for v in fs.points),
            ),
        ):
            if fam.values not in seen and is_directed(order, fam):
                seen.add(fam.values)
                fams.append(fam)
    return fams, sampled(len(fams))


def check_filter_laws(fs: FilterSpace, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """The filter-law suite over one enumerated filter space."""
    space = fs.base_space
    frame = space.frame
    label = space.label
    report = VerificationReport("filter", {"space": label})
    sub_tab = space.sub_table()
    k = len(space.opens)

    def run_f1f2():
        for u in fs.points:
            violation = filter_violation(space, u.values)
            if violation is not None:
                return f"u={u.render()}: {violation}"
        return None

    report.run("filter.F1F2", label, EXHAUSTIVE, run_f1f2)

    def run_f3():
        for u in fs.points:
            for b in range(k):
                expect = u.values[b]
                got = frame.bottom
                for a in range(k):
                    got = frame.join[got][frame.meet[u.values[a]][sub_tab[a][b]]]
                if got != expect:
                    return f"u={u.render()}, B={space.opens[b].render()}"
        return None

    report.run("filter.F3", label, EXHAUSTIVE, run_f3)

    def run_f4():
        for u in fs.points:
            for b in range(k):
                expect = u.values[b]
                got = frame.top
                for a in range(k):
                    got = frame.meet[got][frame.imp[sub_tab[b][a]][u.values[a]]]
                if got != expect:
                    return f"u={u.render()}, B={space.opens[b].render()}"
        return None

    report.run("filter.F4", label, EXHAUSTIVE, run_f4)

    def run_f4_prime():
        for u in fs.points:
            for b in range(k):
                principal_b = OpenFilter(space, tuple(sub_tab[b]))
                if sub_filters(principal_b, u) != u.values[b]:
                    return f"u={u.render()}, B={space.opens[b].render()}"
        return None

    report.run("filter.F4'", label, EXHAUSTIVE, run_f4_prime)

    def run_pointed():
        for x in space.carrier:
            if pointed(space, x).values not in fs.point_index:
                return f"pointed filter of {x!r} missing"
        return None

    report.run("filter.pointed-member", label, EXHAUSTIVE, run_pointed)

    def run_principal():
        for a in space.opens:
            if principal(space, a).values not in fs.point_index:
                return f"principal filter of {a.render()} missing"
        return None

    report.run("filter.principal-member", label, EXHAUSTIVE, run_principal)

    def run_antitone():
        for i in range(k):
            for j in range(k):
                if sub_tab[i][j] == frame.top:  # opens[i] <= opens[j]
                    pi = tuple(sub_tab[i])
                    pj = tuple(sub_tab[j])
                    if not all(frame.leq[b][a] for a, b in zip(pi, pj)):
                        return (
                            f"A={space.opens[i].render()}, B={space.opens[j].render()}"
                        )
        return None

    report.run("filter.principal-antitone", label, EXHAUSTIVE, run_antitone)

    report.add("filter.space-T0", label, EXHAUSTIVE, is_t0(fs.topology))

    def run_phi_const():
        for a in range(frame.n):
            phi_a = fs.phi[space.const_index()[a]]
            if not all(frame.leq[a][v] for v in phi_a.values):
                return f"phi({frame.names[a]}_X)"
        return None

    report.run("filter.phi-constant", label, EXHAUSTIVE, run_phi_const)

    from .lorder import check_axioms

    axioms = check_axioms(fs.order())
    for entry in axioms.entries:
        report.add(f"filter.{entry.law}", label, entry.mode, entry.passed, entry.witness)

    families, fam_mode = directed_family_policy(fs, caps)

    def run_dsup():
        order = fs.order()
        for fam in families:
            try:
                w = dsup_filters(fs, fam)
            except LatcheckError as exc:
                return f"family {fam.render()}: {exc}"
            witness = sup_of(order, fam)
            if witness is None or witness.element is not w:
                return f"family {fam.render()}"
        return None

    report.run("filter.dsup-formula", label, fam_mode, run_dsup)

    def run_lift():
        for fam in families:
            try:
                tilde = lift_tilde(fs, fam)
                if mult(fs, tilde).values != dsup_filters(fs, fam).values:
                    return f"family {fam.render()}"
            except LatcheckError as exc:
                return f"family {fam.render()}: {exc}"
        return None

    report.run("filter.lift-mult", label, fam_mode, run_lift)

    def run_canonical():
        order = fs.order()
        for u in fs.points:
            fam = canonical_directed(fs, u)
            if not is_directed(order, fam):
                return f"u={u.render()}: family not directed"
            try:
                if dsup_filters(fs, fam).values != u.values:
                    return f"u={u.render()}: sup of canonical family differs"
            except LatcheckError as exc:
                return f"u={u.render()}: {exc}"
        return None

    report.run("filter.canonical-family", label, EXHAUSTIVE, run_canonical)
    return report
