"""Registered desk-scale instances driving the suites and acceptance runs."""

from __future__ import annotations

from dataclasses import dataclass

from .caps import DEFAULT_CAPS, Caps
from .errors import ResourceLimitError
from .frame import Frame, make_chain, make_powerset, make_product
from .lorder import LOrder, crisp_order, self_order
from .ltop import LTopSpace
from .specs import (
    DIAMOND_COVERS,
    discrete_space_n,
    indiscrete_space_n,
    point_space,
    sierpinski_space,
    space_generators,
)


def registered_frames(caps: Caps = DEFAULT_CAPS):
    """The frame battery: chains 2..5, powersets 1..3, one product."""
    frames = [make_chain(n) for n in (2, 3, 4, 5)]
    frames += [make_powerset(n, caps) for n in (1, 2, 3)]
    frames.append(make_product(make_chain(2), make_chain(3), caps))
    return frames


@dataclass(frozen=True)
class SpaceInstance:
    space: LTopSpace
    generators: tuple
    expect_t0: bool


def registered_spaces(frame: Frame, caps: Caps = DEFAULT_CAPS):
    """Micro spaces over one frame, with their expected separation verdicts."""
    out = [
        SpaceInstance(point_space(frame, caps), (), True),
        SpaceInstance(
            sierpinski_space(frame, caps),
            tuple(space_generators("sierpinski", frame)),
            True,
        ),
        SpaceInstance(indiscrete_space_n(frame, 2, caps), (), False),
    ]
    try:
        discrete = discrete_space_n(frame, 2, caps)
        out.append(
            SpaceInstance(discrete, tuple(space_generators("discrete:2", frame)), True)
        )
    except ResourceLimitError:
        pass
    return out


def filter_suite_spaces(frame: Frame, caps: Caps = DEFAULT_CAPS):
    """Registered spaces whose filter enumeration fits the caps."""
    out = []
    for inst in registered_spaces(frame, caps):
        k = len(inst.space.opens)
        if frame.n <= caps.max_filter_frame and frame.n ** k <= caps.max_filter_search:
            out.append(inst)
    return out


def monad_suite_spaces(frame: Frame, caps: Caps = DEFAULT_CAPS):
    """Spaces for the monad suite; level-2 mode is decided per instance.

    Over the two-point frame every registered micro space participates; over
    larger frames only the one-point space (exhaustive at level 2) and the
    two-point generator space (sampled) do, keeping level-3 work desk-scale.
    """
    spaces = [inst.space for inst in filter_suite_spaces(frame, caps)]
    if frame.n == 2:
        return spaces
    return [sp for sp in spaces if sp.label in ("point", "sierpinski")]


def crisp_diamond_order() -> LOrder:
    frame = make_chain(2)
    carrier = ("0", "a", "b", "1")
    pairs = list(DIAMOND_COVERS) + [("0", "1")]
    return crisp_order(frame, carrier, pairs)


def crisp_chain_order(n: int) -> LOrder:
    frame = make_chain(2)
    carrier = tuple(f"c{i}" for i in range(n))
    pairs = [(carrier[i], carrier[j]) for i in range(n) for j in range(i + 1, n)]
    return crisp_order(frame, carrier, pairs)


def registered_orders(caps: Caps = DEFAULT_CAPS):
    """(label, order) pairs for the order/scott/algebra suites."""
    return [
        ("selfL:chain:2", self_order(make_chain(2))),
        ("crisp-chain:1", crisp_chain_order(1)),
        ("crisp-chain:3", crisp_chain_order(3)),
        ("crisp-diamond", crisp_diamond_order()),
        ("selfL:chain:3", self_order(make_chain(3))),
    ]


def orders_for_frame(frame: Frame, caps: Caps = DEFAULT_CAPS):
    """Registered orders living over the given frame."""
    out = [(f"selfL:{frame.label}", self_order(frame))]
    if frame.n == 2:
        out += [
            ("crisp-chain:3", crisp_chain_order(3)),
            ("crisp-diamond", crisp_diamond_order()),
        ]
    return out


def continuous_lattice_orders(caps: Caps = DEFAULT_CAPS):
    """Registered orders whose continuity the way-below machinery verifies."""
    from .scott import is_continuous_lattice

    out = []
    for label, order in registered_orders(caps):
        if order.frame.n ** order.size <= caps.max_pointwise and is_continuous_lattice(
            order, caps
        ):
            out.append((label, order))
    return out
