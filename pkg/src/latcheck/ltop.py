"""Stratified L-valued topologies over finite carriers.

Topologies are generated from a family of L-subsets by a fixpoint closure:
meet-closure together with all constants, then join-closure, repeated until
stable.  Join-closure over arbitrary subfamilies reduces to repeated binary
joins because the family is finite.  The recorded base is the
meet-closure-with-constants stage; opens keep their insertion order so
counterexample reports are deterministic.
"""

from __future__ import annotations

import itertools

from .caps import DEFAULT_CAPS, Caps
from .errors import InvalidParameterError, PreconditionError
from .frame import Frame
from .lorder import LOrder, check_axioms
from .lset import CarrierMap, LSubset, constant, preimage, sub
from .report import EXHAUSTIVE, VerificationReport


class LTopSpace:
    """A finite carrier with a family of opens closed under the topology laws."""

    __slots__ = ("frame", "carrier", "opens", "open_index", "base", "label",
                 "_meet_index", "_sub_table", "_const_index")

    def __init__(self, frame: Frame, carrier, opens, base=None, label="space"):
        self.frame = frame
        self.carrier = tuple(carrier)
        self.opens = tuple(opens)
        self.open_index = {a.values: i for i, a in enumerate(self.opens)}
        self.base = tuple(base) if base is not None else None
        self.label = label
        self._meet_index = None
        self._sub_table = None
        self._const_index = None

    def __repr__(self):
        return f"LTopSpace({self.label}, |X|={len(self.carrier)}, opens={len(self.opens)})"

    def index_of(self, a: LSubset) -> int:
        try:
            return self.open_index[a.values]
        except KeyError:
            raise InvalidParameterError(
                f"{a.render()} is not an open of {self.label}"
            ) from None

    def contains_open(self, a: LSubset) -> bool:
        return a.values in self.open_index

    def meet_index(self):
        """Table mapping a pair of open indices to the index of their meet."""
        if self._meet_index is None:
            meet = self.frame.meet
            table = []
            for a in self.opens:
                row = []
                for b in self.opens:
                    vals = tuple(meet[x][y] for x, y in zip(a.values, b.values))
                    row.append(self.open_index[vals])
                table.append(tuple(row))
            self._meet_index = tuple(table)
        return self._meet_index

    def sub_table(self):
        if self._sub_table is None:
            self._sub_table = tuple(
                tuple(sub(a, b) for b in self.opens) for a in self.opens
            )
        return self._sub_table

    def const_index(self):
        """Indices of the constant opens, one per frame element."""
        if self._const_index is None:
            idx = []
            for a in range(self.frame.n):
                vals = (a,) * len(self.carrier)
                idx.append(self.open_index[vals])
            self._const_index = tuple(idx)
        return self._const_index


def generate_topology(
    carrier,
    frame: Frame,
    generators,
    caps: Caps = DEFAULT_CAPS,
    label: str = "space",
) -> LTopSpace:
    """Smallest stratified topology containing the generators."""
    carrier = tuple(carrier)
    for g in generators:
        if g.frame is not frame or g.carrier != carrier:
            raise InvalidParameterError("generator does not live on the given carrier")

    seen: dict[tuple, None] = {}
    ordered: list[LSubset] = []

    def add(values) -> bool:
        if values in seen:
            return False
        caps.require(
            len(ordered) < caps.max_opens,
            "generate_topology",
            f"open family exceeded max_opens={caps.max_opens} on {label}",
        )
        seen[values] = None
        ordered.append(LSubset(frame, carrier, values))
        return True

    for a in range(frame.n):
        add((a,) * len(carrier))
    for g in generators:
        add(g.values)

    meet, join = frame.meet, frame.join
    base_marker = 0
    while True:
        # meet closure (constants are already in, so meets with constants too)
        changed = True
        while changed:
            changed = False
            current = list(ordered)
            for i, a in enumerate(current):
                for b in current[i:]:
                    vals = tuple(meet[x][y] for x, y in zip(a.values, b.values))
                    if add(vals):
                        changed = True
        if base_marker == 0:
            base_marker = len(ordered)
        # join closure; binary joins generate all subfamily joins here
        changed = True
        while changed:
            changed = False
            current = list(ordered)
            for i, a in enumerate(current):
                for b in current[i:]:
                    vals = tuple(join[x][y] for x, y in zip(a.values, b.values))
                    if add(vals):
                        changed = True
        # one more meet pass to confirm stability
        stable = True
        current = list(ordered)
        for i, a in enumerate(current):
            for b in current[i:]:
                vals = tuple(meet[x][y] for x, y in zip(a.values, b.values))
                if vals not in seen:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            break
    return LTopSpace(frame, carrier, ordered, base=ordered[:base_marker], label=label)


def discrete_space(carrier, frame: Frame, caps: Caps = DEFAULT_CAPS, label="discrete") -> LTopSpace:
    """The full family L^X."""
    from .lset import all_lsubsets

    carrier = tuple(carrier)
    opens = tuple(all_lsubsets(carrier, frame, caps))
    return LTopSpace(frame, carrier, opens, base=opens, label=label)


def t0_violation(space: LTopSpace):
    """A pair of points no open separates, or None when the space is T0."""
    vectors = {}
    for i, x in enumerate(space.carrier):
        vec = tuple(a.values[i] for a in space.opens)
        if vec in vectors:
            return (vectors[vec], x)
        vectors[vec] = x
    return None


def is_t0(space: LTopSpace) -> bool:
    return t0_violation(space) is None


def is_continuous(f: CarrierMap, x: LTopSpace, y: LTopSpace) -> bool:
    """Preimages of opens are open; uses the base when the target has one."""
    if x.frame is not y.frame:
        raise InvalidParameterError("spaces live in different frames")
    if f.source != x.carrier or f.target != y.carrier:
        raise InvalidParameterError("map endpoints do not match the spaces")
    family = y.base if y.base is not None else y.opens
    return all(x.contains_open(preimage(f, b)) for b in family)


def specialization_order(space: LTopSpace) -> LOrder:
    """e(x,y) as the meet over opens of A(x) -> A(y); requires T0."""
    offending = t0_violation(space)
    if offending is not None:
        raise PreconditionError(
            f"space {space.label} is not T0; {offending[0]!r} and "
            f"{offending[1]!r} are inseparable",
            witness=offending,
        )
    frame = space.frame
    n = len(space.carrier)
    e = tuple(
        tuple(
            frame.meet_all(
                frame.imp[a.values[i]][a.values[j]] for a in space.opens
            )
            for j in range(n)
        )
        for i in range(n)
    )
    order = LOrder(frame, space.carrier, e)
    axioms = check_axioms(order)
    if not axioms.all_passed():
        first = axioms.failures[0]
        raise PreconditionError(
            f"specialization order violates {first.law} at {first.witness}"
        )
    return order


def check_base_identity(space: LTopSpace) -> VerificationReport:
    """Every open is recovered from the base by join of B /\\ sub(B,A)."""
    report = VerificationReport("base-identity", {"space": space.label})
    if space.base is None:
        raise PreconditionError(f"space {space.label} has no recorded base")
    frame = space.frame

    def run():
        for a in space.opens:
            for i, x in enumerate(space.carrier):
                expected = a.values[i]
                got = frame.bottom
                for b in space.base:
                    got = frame.join[got][frame.meet[b.values[i]][sub(b, a)]]
                if got != expected:
                    return f"open A={a.render()} at x={x}"
        return None

    report.run("topology.base-identity", space.label, EXHAUSTIVE, run)
    return report


def check_topology_laws(
    space: LTopSpace, caps: Caps = DEFAULT_CAPS, expect_t0: bool | None = None
) -> VerificationReport:
    """(O1)(O2)(O3), closure idempotence, base identity, T0, specialization."""
    report = VerificationReport("topology", {"space": space.label})
    frame = space.frame
    label = space.label

    def run_o1():
        for a in space.opens:
            for b in space.opens:
                if not space.contains_open(a.meet(b)):
                    return f"A={a.render()}, B={b.render()}"
        return None

    report.run("topology.O1", label, EXHAUSTIVE, run_o1)

    def run_o2():
        # binary joins exhaustively, then all subfamilies up to size 3 plus
        # the whole family; finite joins reduce to binary ones
        for a in space.opens:
            for b in space.opens:
                if not space.contains_open(a.join(b)):
                    return f"A={a.render()}, B={b.render()}"
        pool = list(space.opens)
        for size in (0, 3):
            for combo in itertools.combinations(pool, size):
                acc = constant(space.carrier, frame, frame.bottom)
                for c in combo:
                    acc = acc.join(c)
                if not space.contains_open(acc):
                    return f"join of {size} opens"
        acc = constant(space.carrier, frame, frame.bottom)
        for c in pool:
            acc = acc.join(c)
        if not space.contains_open(acc):
            return "join of the full family"
        return None

    report.run("topology.O2", label, EXHAUSTIVE, run_o2)

    def run_o3():
        for a in range(frame.n):
            if not space.contains_open(constant(space.carrier, frame, a)):
                return f"constant {frame.names[a]}"
        return None

    report.run("topology.O3", label, EXHAUSTIVE, run_o3)

    def run_idem():
        regen = generate_topology(
            space.carrier, frame, space.opens, caps, label=f"{label}+regen"
        )
        if set(a.values for a in regen.opens) != set(space.open_index):
            return "closure of the opens differs from the opens"
        return None

    report.run("topology.idempotent-closure", label, EXHAUSTIVE, run_idem)

    if space.base is not None:
        report.extend(check_base_identity(space))

    t0 = is_t0(space)
    if expect_t0 is not None:
        report.add(
            "topology.T0",
            label,
            EXHAUSTIVE,
            t0 == expect_t0,
            witness=None if t0 == expect_t0 else f"is_T0={t0}, expected {expect_t0}",
        )
    if t0:
        order = specialization_order(space)
        axioms = check_axioms(order)
        for entry in axioms.entries:
            report.add(entry.law, label, entry.mode, entry.passed, entry.witness)
    return report
