"""Fuzzy orders: axioms, cones, fuzzy suprema/infima, directedness, ideals.

Suprema and infima are found by exhaustive candidate scan with certificates
rather than by formula, because they are defined relationally; the
certificates are kept on the witness for report output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .caps import DEFAULT_CAPS, Caps
from .errors import InvalidParameterError
from .frame import Frame
from .lset import LSubset, all_lsubsets
from .report import EXHAUSTIVE, VerificationReport


@dataclass(frozen=True)
class LOrder:
    frame: Frame
    carrier: tuple
    e: tuple  # e[i][j] is the degree to which carrier[i] precedes carrier[j]

    def __post_init__(self):
        n = len(self.carrier)
        if len(self.e) != n or any(len(row) != n for row in self.e):
            raise InvalidParameterError("order table must be square over the carrier")

    @property
    def size(self) -> int:
        return len(self.carrier)

    def index(self, x) -> int:
        try:
            return self.carrier.index(x)
        except ValueError:
            raise InvalidParameterError(f"{x!r} is not in the carrier") from None

    def render_point(self, i: int) -> str:
        return str(self.carrier[i])


def self_order(frame: Frame, label: str | None = None) -> LOrder:
    """The frame ordered by its own residuum, e(x,y) = x -> y."""
    carrier = tuple(range(frame.n))
    return LOrder(frame, carrier, frame.imp)


def crisp_order(frame: Frame, carrier, leq_pairs) -> LOrder:
    """Embed a crisp partial order: e(x,y) is top when x <= y, else bottom."""
    carrier = tuple(carrier)
    pairs = set(leq_pairs)
    e = tuple(
        tuple(
            frame.top if (x == y or (x, y) in pairs) else frame.bottom
            for y in carrier
        )
        for x in carrier
    )
    return LOrder(frame, carrier, e)


def powerset_order(frame: Frame, carrier, caps: Caps = DEFAULT_CAPS) -> LOrder:
    """(L^X, sub) as an L-order; the carrier points are the L-subsets."""
    members = tuple(all_lsubsets(carrier, frame, caps))
    from .lset import sub as sub_op

    e = tuple(tuple(sub_op(a, b) for b in members) for a in members)
    return LOrder(frame, members, e)


def check_axioms(order: LOrder) -> VerificationReport:
    """Reflexivity, transitivity and antisymmetry, exhaustively."""
    report = VerificationReport("order-axioms")
    frame, e = order.frame, order.e
    n = order.size

    def run_e1():
        for i in range(n):
            if e[i][i] != frame.top:
                return f"x={order.render_point(i)}"
        return None

    def run_e2():
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if not frame.leq[frame.meet[e[i][j]][e[j][k]]][e[i][k]]:
                        return (
                            f"x={order.render_point(i)}, y={order.render_point(j)}, "
                            f"z={order.render_point(k)}"
                        )
        return None

    def run_e3():
        for i in range(n):
            for j in range(n):
                if i != j and e[i][j] == frame.top and e[j][i] == frame.top:
                    return f"x={order.render_point(i)}, y={order.render_point(j)}"
        return None

    label = "order"
    report.run("order.E1", label, EXHAUSTIVE, run_e1)
    report.run("order.E2", label, EXHAUSTIVE, run_e2)
    report.run("order.E3", label, EXHAUSTIVE, run_e3)
    return report


def is_lorder(order: LOrder) -> bool:
    return check_axioms(order).all_passed()


def _check_carrier(order: LOrder, a: LSubset) -> None:
    if a.frame is not order.frame:
        raise InvalidParameterError("subset frame differs from order frame")
    if a.carrier != order.carrier:
        raise InvalidParameterError("subset carrier differs from order carrier")


def lower_cone(order: LOrder, a: LSubset) -> LSubset:
    """Degrees of being a lower bound: meet over y of A(y) -> e(x,y)."""
    _check_carrier(order, a)
    frame, e = order.frame, order.e
    n = order.size
    vals = tuple(
        frame.meet_all(frame.imp[a.values[y]][e[x][y]] for y in range(n))
        for x in range(n)
    )
    return LSubset(frame, order.carrier, vals)


def upper_cone(order: LOrder, a: LSubset) -> LSubset:
    """Degrees of being an upper bound: meet over y of A(y) -> e(y,x)."""
    _check_carrier(order, a)
    frame, e = order.frame, order.e
    n = order.size
    vals = tuple(
        frame.meet_all(frame.imp[a.values[y]][e[y][x]] for y in range(n))
        for x in range(n)
    )
    return LSubset(frame, order.carrier, vals)


def up_set(order: LOrder, x) -> LSubset:
    i = order.index(x)
    return LSubset(order.frame, order.carrier, tuple(order.e[i]))


def down_set(order: LOrder, x) -> LSubset:
    i = order.index(x)
    return LSubset(
        order.frame, order.carrier, tuple(row[i] for row in order.e)
    )


@dataclass(frozen=True)
class SupWitness:
    element: object
    kind: str  # "sup" | "inf"
    certificate: tuple  # the two implication families, all equal to top


def sup_of(order: LOrder, a: LSubset) -> SupWitness | None:
    """The unique fuzzy supremum, or None; certified by the two cone laws."""
    _check_carrier(order, a)
    frame, e = order.frame, order.e
    n = order.size
    au = upper_cone(order, a).values
    found = None
    for x in range(n):
        j1 = all(frame.leq[a.values[y]][e[y][x]] for y in range(n))
        j2 = j1 and all(frame.leq[au[y]][e[x][y]] for y in range(n))
        if j1 and j2:
            if found is not None:
                raise InvalidParameterError(
                    "two suprema found; the order violates antisymmetry"
                )
            cert = (
                tuple(frame.imp[a.values[y]][e[y][x]] for y in range(n)),
                tuple(frame.imp[au[y]][e[x][y]] for y in range(n)),
            )
            found = SupWitness(order.carrier[x], "sup", cert)
    return found


def inf_of(order: LOrder, a: LSubset) -> SupWitness | None:
    _check_carrier(order, a)
    frame, e = order.frame, order.e
    n = order.size
    al = lower_cone(order, a).values
    found = None
    for x in range(n):
        m1 = all(frame.leq[a.values[y]][e[x][y]] for y in range(n))
        m2 = m1 and all(frame.leq[al[y]][e[y][x]] for y in range(n))
        if m1 and m2:
            if found is not None:
                raise InvalidParameterError(
                    "two infima found; the order violates antisymmetry"
                )
            cert = (
                tuple(frame.imp[a.values[y]][e[x][y]] for y in range(n)),
                tuple(frame.imp[al[y]][e[y][x]] for y in range(n)),
            )
            found = SupWitness(order.carrier[x], "inf", cert)
    return found


def is_complete(order: LOrder, caps: Caps = DEFAULT_CAPS) -> bool:
    """Every L-subset has a supremum (and, checked in tests, an infimum)."""
    for a in all_lsubsets(order.carrier, order.frame, caps):
        if sup_of(order, a) is None:
            return False
    return True


def is_directed(order: LOrder, d: LSubset) -> bool:
    _check_carrier(order, d)
    frame, e = order.frame, order.e
    meet, join, leq = frame.meet, frame.join, frame.leq
    n = order.size
    if frame.join_all(d.values) != frame.top:
        return False
    bottom = frame.bottom
    for x in range(n):
        dx = d.values[x]
        if dx == bottom:
            continue
        ex = e[x]
        for y in range(n):
            lhs = meet[dx][d.values[y]]
            if lhs == bottom:
                continue
            ey = e[y]
            acc = bottom
            ok = False
            for z in range(n):
                acc = join[acc][meet[meet[d.values[z]][ex[z]]][ey[z]]]
                if leq[lhs][acc]:
                    ok = True
                    break
            if not ok:
                return False
    return True


def is_lower_set(order: LOrder, s: LSubset) -> bool:
    _check_carrier(order, s)
    frame, e = order.frame, order.e
    n = order.size
    return all(
        frame.leq[frame.meet[s.values[x]][e[y][x]]][s.values[y]]
        for x in range(n)
        for y in range(n)
    )


def is_upper_set(order: LOrder, s: LSubset) -> bool:
    _check_carrier(order, s)
    frame, e = order.frame, order.e
    n = order.size
    return all(
        frame.leq[frame.meet[s.values[x]][e[x][y]]][s.values[y]]
        for x in range(n)
        for y in range(n)
    )


def is_ideal(order: LOrder, i: LSubset) -> bool:
    return is_directed(order, i) and is_lower_set(order, i)


def is_dcpo(order: LOrder, caps: Caps = DEFAULT_CAPS) -> bool:
    """Every directed L-subset has a supremum."""
    for d in all_lsubsets(order.carrier, order.frame, caps):
        if is_directed(order, d) and sup_of(order, d) is None:
            return False
    return True


def top_of(order: LOrder):
    for i in range(order.size):
        if all(order.e[j][i] == order.frame.top for j in range(order.size)):
            return order.carrier[i]
    return None


def bottom_of(order: LOrder):
    for i in range(order.size):
        if all(order.e[i][j] == order.frame.top for j in range(order.size)):
            return order.carrier[i]
    return None


def check_order_suite(
    order: LOrder, caps: Caps = DEFAULT_CAPS, label: str = "order"
) -> VerificationReport:
    """Axioms plus the cone/supremum laws, exhaustively over L^X."""
    report = VerificationReport("order", {"order": label})
    frame, e = order.frame, order.e
    n = order.size
    for entry in check_axioms(order).entries:
        report.add(entry.law, label, entry.mode, entry.passed, entry.witness)

    def run_res_left():
        for x in range(n):
            for y in range(n):
                got = frame.meet_all(frame.imp[e[x][z]][e[y][z]] for z in range(n))
                if got != e[y][x]:
                    return f"x={order.render_point(x)}, y={order.render_point(y)}"
        return None

    report.run("order.residuation-left", label, EXHAUSTIVE, run_res_left)

    def run_res_right():
        for x in range(n):
            for y in range(n):
                got = frame.meet_all(frame.imp[e[z][x]][e[z][y]] for z in range(n))
                if got != e[x][y]:
                    return f"x={order.render_point(x)}, y={order.render_point(y)}"
        return None

    report.run("order.residuation-right", label, EXHAUSTIVE, run_res_right)

    subsets = list(all_lsubsets(order.carrier, frame, caps))
    sups = [sup_of(order, a) for a in subsets]
    infs = [inf_of(order, a) for a in subsets]

    def run_sandwich():
        for ia, a in enumerate(subsets):
            wa = sups[ia]
            if wa is None:
                continue
            for ic, c in enumerate(subsets):
                wc = sups[ic]
                if wc is None or wc.element != wa.element or not a.leq_pointwise(c):
                    continue
                for ib, b in enumerate(subsets):
                    if a.leq_pointwise(b) and b.leq_pointwise(c):
                        wb = sups[ib]
                        if wb is None or wb.element != wa.element:
                            return (
                                f"A={a.render()}, B={b.render()}, C={c.render()}"
                            )
        return None

    report.run("order.sandwich", label, EXHAUSTIVE, run_sandwich)

    def run_cone_bounds():
        for ia, a in enumerate(subsets):
            ws, wi = sups[ia], infs[ia]
            if ws is None or wi is None:
                continue
            si, ii = order.index(ws.element), order.index(wi.element)
            for x in range(n):
                bound_val = frame.meet[e[ii][x]][e[x][si]]
                if not frame.leq[a.values[x]][bound_val]:
                    return f"A={a.render()}, x={order.render_point(x)}"
        return None

    report.run("order.cone-bounds", label, EXHAUSTIVE, run_cone_bounds)

    def run_duality():
        for ia, a in enumerate(subsets):
            ws = sups[ia]
            wu = inf_of(order, upper_cone(order, a))
            if (ws is None) != (wu is None):
                return f"A={a.render()}: sup/inf-of-upper-cone disagree on existence"
            if ws is not None and ws.element != wu.element:
                return f"A={a.render()}"
            wi = infs[ia]
            wl = sup_of(order, lower_cone(order, a))
            if (wi is None) != (wl is None):
                return f"A={a.render()}: inf/sup-of-lower-cone disagree on existence"
            if wi is not None and wi.element != wl.element:
                return f"A={a.render()}"
        return None

    report.run("order.sup-inf-duality", label, EXHAUSTIVE, run_duality)

    complete = all(w is not None for w in sups)

    def run_extremes():
        if not complete:
            return None
        if top_of(order) is None or bottom_of(order) is None:
            return "complete order lacks a top or bottom element"
        return None

    report.run("order.completeness-extremes", label, EXHAUSTIVE, run_extremes)
    report.add(
        "order.complete",
        label,
        EXHAUSTIVE,
        True,
        witness=f"verdict={complete}",
        informational=True,
    )
    report.add(
        "order.dcpo",
        label,
        EXHAUSTIVE,
        True,
        witness=f"verdict={is_dcpo(order, caps)}",
        informational=True,
    )
    return report
