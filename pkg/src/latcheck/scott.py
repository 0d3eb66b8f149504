"""Fuzzy Scott topology, the way-below table and the continuous-lattice test.

Ideal enumeration is the hot path shared by the way-below table and the
Scott-open test, so all ideals of an order (with their suprema) are
materialized once and cached per order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .caps import DEFAULT_CAPS, Caps
from .errors import PreconditionError
from .lorder import (
    LOrder,
    is_complete,
    is_directed,
    is_ideal,
    is_upper_set,
    sup_of,
)
from .lset import CarrierMap, LSubset, all_lsubsets, image, sub, sup_in_L
from .ltop import LTopSpace
from .report import EXHAUSTIVE, VerificationReport


@dataclass(frozen=True)
class WayBelowTable:
    order: LOrder
    table: tuple  # table[x][y] is the degree to which y approximates x

    def below(self, x) -> LSubset:
        """The way-below L-subset of x (the row of the table at x)."""
        i = self.order.index(x)
        return LSubset(self.order.frame, self.order.carrier, self.table[i])

    def above(self, x) -> LSubset:
        """The transpose column: degrees to which x approximates others."""
        i = self.order.index(x)
        return LSubset(
            self.order.frame,
            self.order.carrier,
            tuple(row[i] for row in self.table),
        )


@lru_cache(maxsize=None)
def _ideals_cached(order: LOrder, max_pointwise: int):
    caps = DEFAULT_CAPS.with_overrides(max_pointwise=max_pointwise)
    out = []
    for candidate in all_lsubsets(order.carrier, order.frame, caps):
        if is_ideal(order, candidate):
            witness = sup_of(order, candidate)
            out.append((candidate, None if witness is None else witness.element))
    return tuple(out)


def ideals_with_sups(order: LOrder, caps: Caps = DEFAULT_CAPS):
    """All ideals of the order paired with their suprema (None if absent)."""
    return _ideals_cached(order, caps.max_pointwise)


def directed_subsets(order: LOrder, caps: Caps = DEFAULT_CAPS):
    for candidate in all_lsubsets(order.carrier, order.frame, caps):
        if is_directed(order, candidate):
            yield candidate


def _fuzzy_image_sup(a: LSubset, d: LSubset) -> int:
    """Fuzzy join of the image of d under a viewed as a map into L."""
    frame = a.frame
    as_map = CarrierMap(a.carrier, tuple(range(frame.n)), a.values)
    return sup_in_L(image(as_map, d))


@lru_cache(maxsize=None)
def _complete_cached(order: LOrder, max_pointwise: int) -> bool:
    caps = DEFAULT_CAPS.with_overrides(max_pointwise=max_pointwise)
    return is_complete(order, caps)


def order_is_complete(order: LOrder, caps: Caps = DEFAULT_CAPS) -> bool:
    return _complete_cached(order, caps.max_pointwise)


def is_scott_open(
    order: LOrder, a: LSubset, caps: Caps = DEFAULT_CAPS, condition: int = 2
) -> bool:
    """Scott openness by any of the four equivalent conditions.

    Condition 2 (the default) quantifies over the cached ideals; 1 and 3 walk
    all directed subsets; 3 and 4 add the explicit upper-set test with an
    inequality instead of an equality.
    """
    frame = order.frame
    e = order.e

    def holds_at(d: LSubset, sup_elem, equality: bool) -> bool:
        lhs = a.values[order.index(sup_elem)]
        rhs = _fuzzy_image_sup(a, d)
        return lhs == rhs if equality else frame.leq[lhs][rhs]

    if condition in (3, 4) and not is_upper_set(order, a):
        return False
    if condition in (1, 3):
        for d in directed_subsets(order, caps):
            witness = sup_of(order, d)
            if witness is None:
                raise PreconditionError("order is not a dcpo: a directed subset lacks a sup")
            if not holds_at(d, witness.element, condition == 1):
                return False
        return True
    for ideal, sup_elem in ideals_with_sups(order, caps):
        if sup_elem is None:
            raise PreconditionError("order is not a dcpo: an ideal lacks a sup")
        if not holds_at(ideal, sup_elem, condition == 2):
            return False
    return True


@lru_cache(maxsize=None)
def _scott_space_cached(order: LOrder, max_pointwise: int) -> LTopSpace:
    caps = DEFAULT_CAPS.with_overrides(max_pointwise=max_pointwise)
    opens = [
        a for a in all_lsubsets(order.carrier, order.frame, caps)
        if is_scott_open(order, a, caps)
    ]
    base = None
    if is_continuous_lattice(order, caps):
        wb = way_below(order, caps)
        base = tuple(wb.above(x) for x in order.carrier)
    return LTopSpace(order.frame, order.carrier, opens, base=base, label="scott")


def scott_topology(order: LOrder, caps: Caps = DEFAULT_CAPS, label: str | None = None) -> LTopSpace:
    """All Scott-open L-subsets; the upper-approximation base is attached
    only when the order is a continuous lattice.  Cached per order."""
    space = _scott_space_cached(order, caps.max_pointwise)
    if label is not None and space.label == "scott":
        space.label = label
    return space


@lru_cache(maxsize=None)
def _way_below_cached(order: LOrder, max_pointwise: int) -> WayBelowTable:
    caps = DEFAULT_CAPS.with_overrides(max_pointwise=max_pointwise)
    frame = order.frame
    e = order.e
    n = order.size
    pool = ideals_with_sups(order, caps)
    for _, sup_elem in pool:
        if sup_elem is None:
            raise PreconditionError("way-below needs all ideal suprema to exist")
    sup_idx = [(ideal, order.index(sup_elem)) for ideal, sup_elem in pool]
    table = tuple(
        tuple(
            frame.meet_all(
                frame.imp[e[x][s]][ideal.values[y]] for ideal, s in sup_idx
            )
            for y in range(n)
        )
        for x in range(n)
    )
    return WayBelowTable(order, table)


def way_below(order: LOrder, caps: Caps = DEFAULT_CAPS) -> WayBelowTable:
    """Degrees of approximation through all ideals whose sup dominates x."""
    return _way_below_cached(order, caps.max_pointwise)


@lru_cache(maxsize=None)
def _continuous_cached(order: LOrder, max_pointwise: int) -> bool:
    caps = DEFAULT_CAPS.with_overrides(max_pointwise=max_pointwise)
    if not _complete_cached(order, max_pointwise):
        raise PreconditionError("continuity test requires a complete order")
    wb = way_below(order, caps)
    for x in order.carrier:
        witness = sup_of(order, wb.below(x))
        if witness is None or witness.element != x:
            return False
    return True


def is_continuous_lattice(order: LOrder, caps: Caps = DEFAULT_CAPS) -> bool:
    """Complete and every x is the fuzzy sup of its way-below subset."""
    return _continuous_cached(order, caps.max_pointwise)


def check_scott_props(order: LOrder, caps: Caps = DEFAULT_CAPS, label: str = "order") -> VerificationReport:
    """Way-below laws on a continuous lattice: interpolation, base
    reconstruction of every Scott open, and stability."""
    report = VerificationReport("scott-props", {"order": label})
    frame = order.frame
    e = order.e
    n = order.size
    if not is_continuous_lattice(order, caps):
        raise PreconditionError("scott property suite requires a continuous lattice")
    wb = way_below(order, caps)
    t = wb.table

    def run_interp():
        for x in range(n):
            for y in range(n):
                rhs = frame.join_all(
                    frame.meet[t[z][y]][t[x][z]] for z in range(n)
                )
                if t[x][y] != rhs:
                    return (
                        f"x={order.render_point(x)}, y={order.render_point(y)}: "
                        f"{frame.names[t[x][y]]} != {frame.names[rhs]}"
                    )
        return None

    report.run("scott.interpolation", label, EXHAUSTIVE, run_interp)

    def run_base():
        space = scott_topology(order, caps)
        base = [wb.above(x) for x in order.carrier]
        for a in space.opens:
            for i in range(n):
                got = frame.bottom
                for b in base:
                    got = frame.join[got][frame.meet[b.values[i]][sub(b, a)]]
                if got != a.values[i]:
                    return f"open {a.render()} at {order.render_point(i)}"
        return None

    report.run("scott.upper-base", label, EXHAUSTIVE, run_base)

    def run_stability():
        for x in range(n):
            for y in range(n):
                for x1 in range(n):
                    for y1 in range(n):
                        lhs = frame.meet[frame.meet[e[y1][y]][t[x][y]]][e[x][x1]]
                        if not frame.leq[lhs][t[x1][y1]]:
                            return (
                                f"x={order.render_point(x)}, y={order.render_point(y)}, "
                                f"x1={order.render_point(x1)}, y1={order.render_point(y1)}"
                            )
        return None

    report.run("scott.waybelow-stability", label, EXHAUSTIVE, run_stability)
    return report


def check_scott_suite(order: LOrder, caps: Caps = DEFAULT_CAPS, label: str = "order") -> VerificationReport:
    """Full Scott-module suite for one complete order."""
    from .ltop import check_topology_laws, is_t0

    report = VerificationReport("scott", {"order": label})
    frame = order.frame
    e = order.e
    n = order.size
    if not order_is_complete(order, caps):
        raise PreconditionError("scott suite requires a complete order")

    def run_conditions():
        for a in all_lsubsets(order.carrier, frame, caps):
            verdicts = {c: is_scott_open(order, a, caps, condition=c) for c in (1, 2, 3, 4)}
            if len(set(verdicts.values())) != 1:
                return f"A={a.render()}: {verdicts}"
        return None

    report.run("scott.conditions-equivalent", label, EXHAUSTIVE, run_conditions)

    wb = way_below(order, caps)
    t = wb.table

    def run_below_order():
        for x in range(n):
            for y in range(n):
                if not frame.leq[t[x][y]][e[y][x]]:
                    return f"x={order.render_point(x)}, y={order.render_point(y)}"
        return None

    report.run("scott.waybelow-below", label, EXHAUSTIVE, run_below_order)

    def run_ideal_cap():
        for ideal, sup_elem in ideals_with_sups(order, caps):
            s = order.index(sup_elem)
            for y in range(n):
                if not frame.leq[t[s][y]][ideal.values[y]]:
                    return f"I={ideal.render()}, y={order.render_point(y)}"
        return None

    report.run("scott.ideal-cap-sup", label, EXHAUSTIVE, run_ideal_cap)

    continuous = is_continuous_lattice(order, caps)
    report.add(
        "scott.continuous",
        label,
        EXHAUSTIVE,
        True,
        witness=f"verdict={continuous}",
        informational=True,
    )

    space = scott_topology(order, caps, label=f"scott({label})")
    sub_report = check_topology_laws(space, caps, expect_t0=None)
    for entry in sub_report.entries:
        report.add(entry.law, label, entry.mode, entry.passed, entry.witness)

    if continuous:
        report.add(
            "scott.T0",
            label,
            EXHAUSTIVE,
            is_t0(space),
            witness=None if is_t0(space) else "scott topology fails T0",
        )
        report.extend(check_scott_props(order, caps, label))
    return report
