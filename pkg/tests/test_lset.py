import pytest
from hypothesis import given, settings, strategies as st

from latcheck.errors import InvalidParameterError
from latcheck.frame import make_chain
from latcheck.lorder import powerset_order, self_order, sup_of, inf_of
from latcheck.lset import (
    CarrierMap,
    LSubset,
    all_lsubsets,
    constant,
    identity_map,
    image,
    inf_in_L,
    powerset_sup_inf,
    preimage,
    sub,
    sup_in_L,
)


def test_constant_top_is_characteristic(chain2):
    c = constant(("x", "y"), chain2, 1)
    assert c.values == (1, 1)


def test_constant_on_empty_carrier(chain3):
    c = constant((), chain3, 1)
    assert c.values == ()


def test_sub_of_constants_is_implication(chain3):
    X = ("x", "y", "z")
    for a in range(3):
        for b in range(3):
            got = sub(constant(X, chain3, a), constant(X, chain3, b))
            assert got == chain3.imp[a][b]


def test_sub_reflexive_and_empty(chain3):
    X = ("x", "y")
    a = LSubset(chain3, X, (1, 2))
    assert sub(a, a) == chain3.top
    empty_a = LSubset(chain3, (), ())
    assert sub(empty_a, empty_a) == chain3.top


def test_sub_pointwise_order_gives_top(chain3):
    X = ("x", "y")
    a = LSubset(chain3, X, (0, 1))
    b = LSubset(chain3, X, (1, 2))
    assert sub(a, b) == chain3.top


def test_sub_hand_table(chain3):
    # A=(1,m), B=(m,0): (1->m) /\ (m->0) = m /\ 0 = 0
    X = ("x", "y")
    a = LSubset(chain3, X, (2, 1))
    b = LSubset(chain3, X, (1, 0))
    assert sub(a, b) == 0


def test_sub_rejects_mismatch(chain2, chain3):
    a = LSubset(chain2, ("x",), (0,))
    b = LSubset(chain3, ("x",), (0,))
    with pytest.raises(InvalidParameterError):
        sub(a, b)


def test_preimage_identity(chain3):
    X = ("x", "y")
    b = LSubset(chain3, X, (1, 2))
    assert preimage(identity_map(X), b).values == b.values


def test_image_collapse_joins_fiber(chain3):
    X = ("x", "y", "z")
    f = CarrierMap(X, ("p",), ("p", "p", "p"))
    a = LSubset(chain3, X, (0, 1, 2))
    assert image(f, a).values == (2,)


def test_image_empty_fiber_is_bottom(chain3):
    f = CarrierMap(("x",), ("p", "q"), ("p",))
    a = LSubset(chain3, ("x",), (2,))
    img = image(f, a)
    assert img(("q") if False else "q") == chain3.bottom
    assert img("p") == 2


small_chain = st.integers(min_value=2, max_value=4)


@settings(max_examples=40, deadline=None)
@given(
    n=small_chain,
    size_x=st.integers(min_value=1, max_value=3),
    size_y=st.integers(min_value=1, max_value=3),
    data=st.data(),
)
def test_image_preimage_adjunction(n, size_x, size_y, data):
    """sub(image(f,A), B) == sub(A, preimage(f,B)) on random small instances."""
    frame = make_chain(n)
    X = tuple(f"x{i}" for i in range(size_x))
    Y = tuple(f"y{i}" for i in range(size_y))
    graph = tuple(data.draw(st.sampled_from(Y)) for _ in X)
    f = CarrierMap(X, Y, graph)
    a = LSubset(frame, X, tuple(data.draw(st.integers(0, n - 1)) for _ in X))
    b = LSubset(frame, Y, tuple(data.draw(st.integers(0, n - 1)) for _ in Y))
    assert sub(image(f, a), b) == sub(a, preimage(f, b))


def test_sub_is_fuzzy_order_on_lx(chain3):
    """Reflexive, transitive, antisymmetric over all of L^X (|L|^|X| = 9)."""
    X = ("x", "y")
    members = list(all_lsubsets(X, chain3))
    for a in members:
        assert sub(a, a) == chain3.top
        for b in members:
            if sub(a, b) == chain3.top and sub(b, a) == chain3.top:
                assert a == b
            for c in members:
                lhs = chain3.meet[sub(a, b)][sub(b, c)]
                assert chain3.leq[lhs][sub(a, c)]


def test_sup_in_L_examples(chain3):
    carrier = tuple(range(3))
    # characteristic map of {m}: fuzzy join is m
    a = LSubset(chain3, carrier, (0, 2, 0))
    assert sup_in_L(a) == 1
    # constant top: fuzzy join is the top of L
    assert sup_in_L(constant(carrier, chain3, 2)) == 2
    # spec-style table: values (1, 1, 0) on (0, m, 1) joins to m
    b = LSubset(chain3, carrier, (2, 2, 0))
    assert sup_in_L(b) == 1


def test_sup_in_L_agrees_with_generic_search():
    from latcheck.caps import DEFAULT_CAPS

    for n in (2, 3, 4, 5):
        frame = make_chain(n)
        order = self_order(frame)
        caps = DEFAULT_CAPS.with_overrides(max_pointwise=n ** n)
        for a in all_lsubsets(tuple(range(n)), frame, caps):
            witness = sup_of(order, a)
            assert witness is not None
            assert witness.element == sup_in_L(a)
            iw = inf_of(order, a)
            assert iw is not None
            assert iw.element == inf_in_L(a)


def test_sup_in_L_rejects_foreign_carrier(chain3):
    with pytest.raises(InvalidParameterError):
        sup_in_L(LSubset(chain3, ("x",), (0,)))


def test_powerset_sup_inf_singleton_and_top(chain2):
    X = ("x", "y")
    members = tuple(all_lsubsets(X, chain2))
    a0 = members[2]
    char = LSubset(
        chain2, members, tuple(chain2.top if m == a0 else 0 for m in members)
    )
    s, i = powerset_sup_inf(char)
    assert s.values == a0.values
    assert i.values == a0.values
    full = LSubset(chain2, members, (chain2.top,) * len(members))
    s, _ = powerset_sup_inf(full)
    assert s.values == (chain2.top, chain2.top)


def test_powerset_sup_inf_matches_generic(chain2):
    X = ("x", "y")
    order = powerset_order(chain2, X)
    members = order.carrier
    family = LSubset(chain2, members, (0, 1, 0, 1))
    s, i = powerset_sup_inf(family)
    ws = sup_of(order, family)
    wi = inf_of(order, family)
    assert ws is not None and ws.element.values == s.values
    assert wi is not None and wi.element.values == i.values
