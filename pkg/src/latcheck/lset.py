"""L-subsets of a finite carrier and their calculus.

An L-subset is a total map from a carrier into a frame, stored as a flat
value tuple aligned with a fixed carrier enumeration; equality and hashing
are tuple equality, which makes L-subsets usable as keys during topology
closure.  Empty-carrier conventions follow the empty meet/join: `sub` over an
empty carrier is top, an image over an empty fiber is bottom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .caps import DEFAULT_CAPS, Caps
from .errors import InvalidParameterError
from .frame import Frame


@dataclass(frozen=True)
class LSubset:
    frame: Frame
    carrier: tuple
    values: tuple

    def __post_init__(self):
        if len(self.carrier) != len(self.values):
            raise InvalidParameterError("carrier and values differ in length")

    def __call__(self, point):
        return self.values[self.carrier.index(point)]

    def meet(self, other: "LSubset") -> "LSubset":
        _require_same_space(self, other)
        table = self.frame.meet
        return LSubset(
            self.frame,
            self.carrier,
            tuple(table[a][b] for a, b in zip(self.values, other.values)),
        )

    def join(self, other: "LSubset") -> "LSubset":
        _require_same_space(self, other)
        table = self.frame.join
        return LSubset(
            self.frame,
            self.carrier,
            tuple(table[a][b] for a, b in zip(self.values, other.values)),
        )

    def leq_pointwise(self, other: "LSubset") -> bool:
        _require_same_space(self, other)
        table = self.frame.leq
        return all(table[a][b] for a, b in zip(self.values, other.values))

    def render(self) -> str:
        names = self.frame.names
        inner = ", ".join(
            f"{p}: {names[v]}" for p, v in zip(self.carrier, self.values)
        )
        return "{" + inner + "}"


@dataclass(frozen=True)
class CarrierMap:
    source: tuple
    target: tuple
    graph: tuple  # graph[i] is the target point of source[i]

    def __post_init__(self):
        if len(self.graph) != len(self.source):
            raise InvalidParameterError("map graph must cover the whole source")
        for y in self.graph:
            if y not in self.target:
                raise InvalidParameterError(f"map value {y!r} outside target carrier")

    def __call__(self, point):
        return self.graph[self.source.index(point)]

    @classmethod
    def from_dict(cls, source, target, mapping) -> "CarrierMap":
        return cls(tuple(source), tuple(target), tuple(mapping[p] for p in source))


def identity_map(carrier) -> CarrierMap:
    carrier = tuple(carrier)
    return CarrierMap(carrier, carrier, carrier)


def _require_same_space(a: LSubset, b: LSubset) -> None:
    if a.frame is not b.frame:
        raise InvalidParameterError("operands live in different frames")
    if a.carrier != b.carrier:
        raise InvalidParameterError("operands have different carriers")


def constant(carrier, frame: Frame, a: int) -> LSubset:
    frame.check_element(a)
    carrier = tuple(carrier)
    return LSubset(frame, carrier, (a,) * len(carrier))


def sub(a: LSubset, b: LSubset) -> int:
    """Degree of inclusion: the meet over points of A(x) -> B(x)."""
    _require_same_space(a, b)
    imp = a.frame.imp
    return a.frame.meet_all(imp[x][y] for x, y in zip(a.values, b.values))


def preimage(f: CarrierMap, b: LSubset) -> LSubset:
    if b.carrier != f.target:
        raise InvalidParameterError("preimage: subset does not live on the map target")
    index = {p: i for i, p in enumerate(b.carrier)}
    return LSubset(
        b.frame, f.source, tuple(b.values[index[y]] for y in f.graph)
    )


def image(f: CarrierMap, a: LSubset) -> LSubset:
    if a.carrier != f.source:
        raise InvalidParameterError("image: subset does not live on the map source")
    frame = a.frame
    acc = {y: frame.bottom for y in f.target}
    for x_val, y in zip(a.values, f.graph):
        acc[y] = frame.join[acc[y]][x_val]
    return LSubset(frame, f.target, tuple(acc[y] for y in f.target))


def all_lsubsets(carrier, frame: Frame, caps: Caps = DEFAULT_CAPS):
    """All of L^X in a fixed order; guarded by the pointwise cap."""
    carrier = tuple(carrier)
    total = frame.n ** len(carrier)
    caps.require(
        total <= caps.max_pointwise,
        "all_lsubsets",
        f"|L|^|X| = {total} exceeds max_pointwise={caps.max_pointwise}",
    )
    for values in itertools.product(range(frame.n), repeat=len(carrier)):
        yield LSubset(frame, carrier, values)


def sup_in_L(a: LSubset) -> int:
    """Fuzzy join of an L-subset of L itself: the join of x /\\ A(x)."""
    frame = _require_self_carrier(a)
    return frame.join_all(frame.meet[x][v] for x, v in zip(a.carrier, a.values))


def inf_in_L(a: LSubset) -> int:
    """Fuzzy meet of an L-subset of L itself: the meet of A(x) -> x."""
    frame = _require_self_carrier(a)
    return frame.meet_all(frame.imp[v][x] for x, v in zip(a.carrier, a.values))


def _require_self_carrier(a: LSubset) -> Frame:
    if a.carrier != tuple(range(a.frame.n)):
        raise InvalidParameterError(
            "subset must live on the frame's own carrier (elements 0..n-1)"
        )
    return a.frame


def powerset_sup_inf(family: LSubset) -> tuple[LSubset, LSubset]:
    """Fuzzy join and meet of a family indexed by all of L^X.

    The family's carrier must be the full enumeration of L^X as produced by
    `all_lsubsets`; both formulas are evaluated literally and return
    L-subsets over X.
    """
    frame = family.frame
    if not family.carrier:
        raise InvalidParameterError("family carrier is empty")
    first = family.carrier[0]
    if not isinstance(first, LSubset):
        raise InvalidParameterError("family must be indexed by L-subsets")
    base_carrier = first.carrier
    expected = tuple(all_lsubsets(base_carrier, frame))
    if family.carrier != expected:
        raise InvalidParameterError(
            "family must be indexed by the full enumeration of L^X"
        )
    sup_vals = []
    inf_vals = []
    for i in range(len(base_carrier)):
        s = frame.bottom
        m = frame.top
        for member, degree in zip(family.carrier, family.values):
            s = frame.join[s][frame.meet[member.values[i]][degree]]
            m = frame.meet[m][frame.imp[degree][member.values[i]]]
        sup_vals.append(s)
        inf_vals.append(m)
    return (
        LSubset(frame, base_carrier, tuple(sup_vals)),
        LSubset(frame, base_carrier, tuple(inf_vals)),
    )
