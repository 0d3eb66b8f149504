"""Registered mutation battery: deliberately broken structures that every
corresponding suite must reject with a rendered witness.

Each mutation builds a corrupted object and runs the real suite on it (where
the suite accepts arbitrary inputs) or replays the law that guards the
mutated component.  The acceptance gate requires at least one failing entry
with a witness per mutation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .caps import DEFAULT_CAPS, Caps
from .frame import Frame, check_frame_laws, make_chain
from .lorder import LOrder, check_axioms, self_order
from .lset import LSubset, preimage
from .ltop import LTopSpace, check_base_identity, check_topology_laws
from .report import EXHAUSTIVE, VerificationReport
from .specs import sierpinski_space


@dataclass(frozen=True)
class Mutation:
    ident: str
    description: str
    runner: object  # caps -> VerificationReport; some entry must fail

    def run(self, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
        return self.runner(caps)


def _mutate_table(table, i, j, value):
    rows = [list(row) for row in table]
    rows[i][j] = value
    return tuple(tuple(row) for row in rows)


def _broken_imp(caps: Caps) -> VerificationReport:
    f = make_chain(3)
    bad = Frame(
        f.names, f.leq, f.meet, f.join, _mutate_table(f.imp, 1, 0, 1), f.bottom, f.top,
        label="chain:3+imp-bump",
    )
    return check_frame_laws(bad, caps)


def _broken_meet(caps: Caps) -> VerificationReport:
    f = make_chain(3)
    bad = Frame(
        f.names, f.leq, _mutate_table(f.meet, 1, 2, 2), f.join, f.imp, f.bottom, f.top,
        label="chain:3+meet-bump",
    )
    return check_frame_laws(bad, caps)


def _dropped_open(caps: Caps) -> VerificationReport:
    frame = make_chain(3)
    space = sierpinski_space(frame, caps)
    kept = [a for a in space.opens if a.values != (0, 1)]
    broken = LTopSpace(frame, space.carrier, kept, label="sierpinski-holed")
    return check_topology_laws(broken, caps)


def _shrunk_base(caps: Caps) -> VerificationReport:
    frame = make_chain(3)
    space = sierpinski_space(frame, caps)
    constants_only = [
        a for a in space.base if len(set(a.values)) == 1
    ]
    broken = LTopSpace(
        frame, space.carrier, space.opens, base=constants_only,
        label="sierpinski-thin-base",
    )
    return check_base_identity(broken)


def _broken_reflexivity(caps: Caps) -> VerificationReport:
    order = self_order(make_chain(2))
    bad = LOrder(order.frame, order.carrier, _mutate_table(order.e, 0, 0, 0))
    return check_axioms(bad)


def _bumped_filter(caps: Caps) -> VerificationReport:
    from .filters import FilterSpace, OpenFilter, check_filter_laws, enumerate_filters
    from .lset import LSubset as LS

    frame = make_chain(2)
    space = sierpinski_space(frame, caps)
    fs = enumerate_filters(space, caps)
    points = list(fs.points)
    vals = list(points[0].values)
    target = next(i for i, v in enumerate(vals) if v == frame.bottom)
    vals[target] = frame.top
    points[0] = OpenFilter(space, tuple(vals))
    phi = [
        LS(frame, tuple(points), tuple(u.values[i] for u in points))
        for i in range(len(space.opens))
    ]
    from .ltop import generate_topology

    topology = generate_topology(
        tuple(points), frame, phi, caps, label="Phi(sierpinski)+bump"
    )
    broken = FilterSpace(space, points, phi, topology)
    return check_filter_laws(broken, caps)


def _non_pointed_unit(caps: Caps) -> VerificationReport:
    """A unit sending one point to a principal filter must break the
    evaluation-preimage identity."""
    from .filters import principal, pointed
    from .lset import CarrierMap

    frame = make_chain(2)
    space = sierpinski_space(frame, caps)
    from .filters import enumerate_filters

    fs = enumerate_filters(space, caps)
    empty_subset = LSubset(frame, space.carrier, (frame.bottom, frame.bottom))
    broken_graph = tuple(
        fs.intern(principal(space, empty_subset))
        if x == "x"
        else fs.intern(pointed(space, x))
        for x in space.carrier
    )
    eta = CarrierMap(space.carrier, fs.points, broken_graph)
    report = VerificationReport("mutation", {"mutation": "non-pointed-unit"})

    def run():
        for i, phi_a in enumerate(fs.phi):
            back = preimage(eta, phi_a)
            if back.values != space.opens[i].values:
                return (
                    f"unit preimage of phi({space.opens[i].render()}) is "
                    f"{back.render()}, expected {space.opens[i].render()}"
                )
        return None

    report.run("eta.continuous", "sierpinski+broken-unit", EXHAUSTIVE, run)
    return report


def _bumped_mult(caps: Caps) -> VerificationReport:
    """A multiplication bumped on one cell must break a unit law."""
    from .filters import enumerate_filters, pointed

    frame = make_chain(2)
    space = sierpinski_space(frame, caps)
    fs = enumerate_filters(space, caps)
    report = VerificationReport("mutation", {"mutation": "bumped-mult"})

    def broken_mult(alpha):
        values = list(
            alpha.values[fs.topology.index_of(phi_a)] for phi_a in fs.phi
        )
        bump = next(
            (i for i, v in enumerate(values) if v == frame.bottom), None
        )
        if bump is not None:
            values[bump] = frame.top
        return tuple(values)

    def run():
        for u in fs.points:
            got = broken_mult(pointed(fs.topology, u))
            if got != u.values:
                names = frame.names
                return (
                    f"mult([{u.render()}]) = <{', '.join(names[v] for v in got)}>"
                    f" differs from {u.render()}"
                )
        return None

    report.run("monad.unit-pointed", "sierpinski+bumped-mult", EXHAUSTIVE, run)
    return report


def _swapped_structure_map(caps: Caps) -> VerificationReport:
    from .algebra import AlgebraWitness, check_second_theorem, structure_map_r
    from .filters import enumerate_filters
    from .scott import scott_topology

    order = self_order(make_chain(2))
    space = scott_topology(order, caps, label="scott(selfL:chain:2)")
    fs = enumerate_filters(space, caps)
    witness = structure_map_r(order, space, fs, caps)
    r = list(witness.r)
    a, b = next(
        (i, j)
        for i in range(len(r))
        for j in range(len(r))
        if r[i] != r[j]
    )
    r[a], r[b] = r[b], r[a]
    broken = AlgebraWitness(space, fs, tuple(r), "user-supplied")
    return check_second_theorem(broken, caps, label="selfL:chain:2+swapped-r")


def _corrupted_waybelow(caps: Caps) -> VerificationReport:
    from .scott import way_below

    order = self_order(make_chain(2))
    wb = way_below(order, caps)
    table = _mutate_table(wb.table, 0, 1, 1)
    frame = order.frame
    report = VerificationReport("mutation", {"mutation": "corrupted-waybelow"})

    def run():
        for x in range(order.size):
            for y in range(order.size):
                if not frame.leq[table[x][y]][order.e[y][x]]:
                    return (
                        f"x={order.render_point(x)}, y={order.render_point(y)}: "
                        f"approximation degree exceeds the order"
                    )
        return None

    report.run("scott.waybelow-below", "selfL:chain:2+wb-bump", EXHAUSTIVE, run)
    return report


def _broken_order_matrix(caps: Caps) -> VerificationReport:
    frame = make_chain(2)
    e = ((1, 1), (1, 1))  # two points forced equal: antisymmetry broken
    bad = LOrder(frame, ("x", "y"), e)
    return check_axioms(bad)


MUTATIONS = (
    Mutation("imp-cell", "one residuum cell raised", _broken_imp),
    Mutation("meet-cell", "one meet cell raised", _broken_meet),
    Mutation("dropped-open", "a meet of opens removed from a topology", _dropped_open),
    Mutation("shrunk-base", "base reduced below a generating family", _shrunk_base),
    Mutation("order-reflexivity", "one diagonal order entry lowered", _broken_reflexivity),
    Mutation("bumped-filter", "one filter value raised", _bumped_filter),
    Mutation("non-pointed-unit", "unit sends a point to a principal filter", _non_pointed_unit),
    Mutation("bumped-mult", "multiplication raised on one cell", _bumped_mult),
    Mutation("swapped-structure-map", "structure map swapped on two filters", _swapped_structure_map),
    Mutation("corrupted-waybelow", "one approximation degree raised", _corrupted_waybelow),
    Mutation("flat-order", "order table constant top on two points", _broken_order_matrix),
)
