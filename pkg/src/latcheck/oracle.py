"""Classical two-valued brute-force reference implementation.

Everything here works on frozensets and crisp relations and shares no code
with the fuzzy modules, on purpose: agreement between the two sides is
evidence, not tautology.  The degeneration checks assert the bijections
between fuzzy structures over the two-element frame and their classical
counterparts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .caps import DEFAULT_CAPS, Caps
from .errors import InvalidParameterError
from .report import EXHAUSTIVE, VerificationReport


@dataclass(frozen=True)
class CrispSpace:
    carrier: tuple
    opens: tuple  # frozensets, deterministically ordered


def _sorted_opens(opens):
    return tuple(sorted(opens, key=lambda s: (len(s), sorted(map(str, s)))))


def classical_topology(carrier, generators) -> CrispSpace:
    """Closure of the generators under finite intersection and arbitrary union."""
    carrier = tuple(carrier)
    full = frozenset(carrier)
    family = {frozenset(), full}
    for g in generators:
        family.add(frozenset(g) & full)
    changed = True
    while changed:
        changed = False
        current = list(family)
        for a, b in itertools.combinations_with_replacement(current, 2):
            for c in (a & b, a | b):
                if c not in family:
                    family.add(c)
                    changed = True
    return CrispSpace(carrier, _sorted_opens(family))


def classical_filters(space: CrispSpace, caps: Caps = DEFAULT_CAPS):
    """All families of opens that are upper, meet-closed and contain the carrier."""
    opens = space.opens
    caps.require(
        2 ** len(opens) <= caps.max_filter_search,
        "classical_filters",
        f"2**{len(opens)} exceeds max_filter_search",
    )
    full = frozenset(space.carrier)
    found = []
    for mask in range(1 << len(opens)):
        members = [opens[i] for i in range(len(opens)) if mask >> i & 1]
        fam = set(members)
        if full not in fam:
            continue
        ok = True
        for a in members:
            for b in members:
                if a & b not in fam:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for a in members:
                for b in opens:
                    if a <= b and b not in fam:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            found.append(frozenset(fam))
    return tuple(sorted(found, key=lambda f: (len(f), _sorted_opens(f))))


class CrispLattice:
    """A finite crisp lattice given by its order pairs; brute-force bounds."""

    def __init__(self, carrier, leq_pairs):
        self.carrier = tuple(carrier)
        rel = set(leq_pairs) | {(x, x) for x in self.carrier}
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        self.leq = rel

    def below(self, x, y) -> bool:
        return (x, y) in self.leq

    def join_all(self, elems):
        elems = list(elems)
        candidates = [
            c for c in self.carrier if all(self.below(e, c) for e in elems)
        ]
        least = [c for c in candidates if all(self.below(c, d) for d in candidates)]
        if not least:
            raise InvalidParameterError("join does not exist; not a lattice")
        return least[0]

    def meet_all(self, elems):
        elems = list(elems)
        candidates = [
            c for c in self.carrier if all(self.below(c, e) for e in elems)
        ]
        greatest = [c for c in candidates if all(self.below(d, c) for d in candidates)]
        if not greatest:
            raise InvalidParameterError("meet does not exist; not a lattice")
        return greatest[0]

    def directed_subsets(self):
        n = len(self.carrier)
        for mask in range(1, 1 << n):
            d = [self.carrier[i] for i in range(n) if mask >> i & 1]
            if all(
                any(self.below(x, z) and self.below(y, z) for z in d)
                for x in d
                for y in d
            ):
                yield d


def classical_waybelow(lattice: CrispLattice):
    """y approximates x when every directed set whose sup dominates x meets
    the up-set of y; exhaustive over directed subsets."""
    pairs = set()
    directed = list(lattice.directed_subsets())
    sups = [lattice.join_all(d) for d in directed]
    for y in lattice.carrier:
        for x in lattice.carrier:
            ok = True
            for d, s in zip(directed, sups):
                if lattice.below(x, s) and not any(lattice.below(y, z) for z in d):
                    ok = False
                    break
            if ok:
                pairs.add((y, x))
    return frozenset(pairs)


def classical_scott_topology(lattice: CrispLattice) -> CrispSpace:
    """Upper sets inaccessible by directed suprema, straight from the definition."""
    n = len(lattice.carrier)
    directed = list(lattice.directed_subsets())
    sups = [lattice.join_all(d) for d in directed]
    opens = []
    for mask in range(1 << n):
        u = frozenset(lattice.carrier[i] for i in range(n) if mask >> i & 1)
        upper = all(
            (y in u)
            for x in u
            for y in lattice.carrier
            if lattice.below(x, y)
        )
        if not upper:
            continue
        if all(
            (s not in u) or bool(u & frozenset(d))
            for d, s in zip(directed, sups)
        ):
            opens.append(u)
    return CrispSpace(lattice.carrier, _sorted_opens(opens))


def classical_continuous(lattice: CrispLattice) -> bool:
    wb = classical_waybelow(lattice)
    for x in lattice.carrier:
        approx = [y for y in lattice.carrier if (y, x) in wb]
        if lattice.join_all(approx) != x:
            return False
    return True


def classical_structure_map(lattice: CrispLattice, caps: Caps = DEFAULT_CAPS):
    """Day-style structure map on the classical Scott open-filter space.

    Returns (space, filters, r) with r mapping each filter to the join of
    the meets of its members."""
    space = classical_scott_topology(lattice)
    filters = classical_filters(space, caps)
    r = {}
    for f in filters:
        r[f] = lattice.join_all(lattice.meet_all(a) for a in f)
    return space, filters, r


def _crisp_of_lsubset(a, frame) -> frozenset:
    if frame.n != 2:
        raise InvalidParameterError("degeneration checks require the two-point frame")
    return frozenset(p for p, v in zip(a.carrier, a.values) if v == frame.top)


def degeneration_check(
    *,
    space=None,
    generators=None,
    order=None,
    caps: Caps = DEFAULT_CAPS,
    label: str | None = None,
) -> VerificationReport:
    """Bijections between the fuzzy side over chain2 and the classical side.

    With a space: opens and filter-set bijections against an independently
    computed classical topology.  With a crisp order: additionally the
    way-below table against the classical relation and the structure map
    against the Day map.
    """
    from .algebra import structure_map_r
    from .filters import enumerate_filters
    from .scott import scott_topology, way_below

    report = VerificationReport("degeneration")

    def check_space(fuzzy_space, crisp_space, name):
        frame = fuzzy_space.frame

        def run_opens():
            fuzzy_opens = set()
            for a in fuzzy_space.opens:
                if any(v not in (frame.bottom, frame.top) for v in a.values):
                    return f"open {a.render()} is not crisp-valued"
                fuzzy_opens.add(_crisp_of_lsubset(a, frame))
            classical = set(crisp_space.opens)
            if fuzzy_opens != classical:
                extra = fuzzy_opens ^ classical
                return f"open families differ at {sorted(map(sorted, extra))}"
            return None

        report.run("degeneration.opens", name, EXHAUSTIVE, run_opens)

        fs = enumerate_filters(fuzzy_space, caps)

        def run_filters():
            images = set()
            for u in fs.points:
                members = frozenset(
                    _crisp_of_lsubset(a, frame)
                    for ai, a in enumerate(fuzzy_space.opens)
                    if u.values[ai] == frame.top
                )
                images.add(members)
            classical = set(classical_filters(crisp_space, caps))
            if len(images) != len(fs.points):
                return "two fuzzy filters collapse to one classical filter"
            if images != classical:
                return (
                    f"filter families differ: fuzzy {len(images)}, "
                    f"classical {len(classical)}"
                )
            return None

        report.run("degeneration.filters", name, EXHAUSTIVE, run_filters)
        return fs

    if space is not None:
        name = label or space.label
        crisp_gens = [_crisp_of_lsubset(g, space.frame) for g in (generators or [])]
        crisp_space = classical_topology(space.carrier, crisp_gens)
        check_space(space, crisp_space, name)

    if order is not None:
        name = label or "order"
        frame = order.frame
        if frame.n != 2:
            raise InvalidParameterError("degeneration checks require the two-point frame")
        pairs = [
            (order.carrier[i], order.carrier[j])
            for i in range(order.size)
            for j in range(order.size)
            if order.e[i][j] == frame.top
        ]
        lattice = CrispLattice(order.carrier, pairs)
        fuzzy_scott = scott_topology(order, caps, label=f"scott({name})")
        crisp_scott = classical_scott_topology(lattice)
        fs = check_space(fuzzy_scott, crisp_scott, name)

        def run_waybelow():
            wb = way_below(order, caps)
            fuzzy_pairs = set()
            for xi, x in enumerate(order.carrier):
                for yi, y in enumerate(order.carrier):
                    v = wb.table[xi][yi]
                    if v not in (frame.bottom, frame.top):
                        return f"approximation degree at ({y!r},{x!r}) is not crisp"
                    if v == frame.top:
                        fuzzy_pairs.add((y, x))
            classical = classical_waybelow(lattice)
            if fuzzy_pairs != classical:
                return f"way-below differs at {sorted(fuzzy_pairs ^ classical)}"
            return None

        report.run("degeneration.waybelow", name, EXHAUSTIVE, run_waybelow)

        def run_structure_map():
            witness = structure_map_r(order, fuzzy_scott, fs, caps)
            _, cl_filters, cl_r = classical_structure_map(lattice, caps)
            for ui, u in enumerate(fs.points):
                members = frozenset(
                    _crisp_of_lsubset(a, frame)
                    for ai, a in enumerate(fuzzy_scott.opens)
                    if u.values[ai] == frame.top
                )
                if members not in cl_r:
                    return f"filter {u.render()} has no classical counterpart"
                if cl_r[members] != witness.r[ui]:
                    return (
                        f"structure maps differ at {u.render()}: "
                        f"{witness.r[ui]!r} vs {cl_r[members]!r}"
                    )
            return None

        report.run("degeneration.structure-map", name, EXHAUSTIVE, run_structure_map)

    return report
