import itertools

import pytest

from latcheck.caps import DEFAULT_CAPS
from latcheck.errors import InvalidParameterError
from latcheck.frame import make_chain
from latcheck.lorder import (
    LOrder,
    bottom_of,
    check_axioms,
    check_order_suite,
    crisp_order,
    down_set,
    inf_of,
    is_complete,
    is_dcpo,
    is_directed,
    is_ideal,
    is_lower_set,
    lower_cone,
    powerset_order,
    self_order,
    sup_of,
    top_of,
    up_set,
    upper_cone,
)
from latcheck.lset import LSubset, all_lsubsets, constant


@pytest.fixture(scope="module")
def selfL3():
    return self_order(make_chain(3))


@pytest.fixture(scope="module")
def antichain2():
    return crisp_order(make_chain(2), ("a", "b"), [])


def test_self_order_passes_axioms(selfL3):
    assert check_axioms(selfL3).all_passed()


def test_powerset_order_passes_axioms(chain3):
    order = powerset_order(chain3, ("x", "y"))
    assert check_axioms(order).all_passed()


def test_constant_top_relation_fails_antisymmetry(chain2):
    e = ((1, 1), (1, 1))
    bad = LOrder(chain2, ("a", "b"), e)
    report = check_axioms(bad)
    failed = {entry.law for entry in report.failures}
    assert failed == {"order.E3"}


def test_cones_and_updown(selfL3):
    frame = selfL3.frame
    # the up-set of any point has value top at the point itself
    for x in selfL3.carrier:
        assert up_set(selfL3, x)(x) == frame.top
    # lower cone of the empty fuzzy subset is constant top
    empty = constant(selfL3.carrier, frame, frame.bottom)
    assert lower_cone(selfL3, empty).values == (frame.top,) * 3
    # crisp chain: the upper cone of a down-set is the up-set
    crisp = crisp_order(make_chain(2), ("a", "b", "c"),
                        [("a", "b"), ("b", "c"), ("a", "c")])
    for x in crisp.carrier:
        assert upper_cone(crisp, down_set(crisp, x)).values == up_set(crisp, x).values
        assert lower_cone(crisp, up_set(crisp, x)).values == down_set(crisp, x).values


def test_sup_of_down_set_is_identity(selfL3):
    for x in selfL3.carrier:
        w = sup_of(selfL3, down_set(selfL3, x))
        assert w is not None and w.element == x
        wi = inf_of(selfL3, up_set(selfL3, x))
        assert wi is not None and wi.element == x


def test_sup_certificates_are_top(selfL3):
    frame = selfL3.frame
    for a in all_lsubsets(selfL3.carrier, frame):
        w = sup_of(selfL3, a)
        assert w is not None
        for fam in w.certificate:
            assert all(v == frame.top for v in fam)


def test_antichain_full_subset_has_no_sup(antichain2):
    frame = antichain2.frame
    full = constant(antichain2.carrier, frame, frame.top)
    assert sup_of(antichain2, full) is None


def test_is_complete_verdicts(selfL3, antichain2, chain2):
    assert is_complete(selfL3)
    assert not is_complete(antichain2)
    assert is_complete(powerset_order(chain2, ("x", "y")))


def test_directed_and_ideal_examples(selfL3, antichain2):
    frame = selfL3.frame
    for x in selfL3.carrier:
        assert is_ideal(selfL3, down_set(selfL3, x))
    assert not is_directed(selfL3, constant(selfL3.carrier, frame, frame.bottom))
    two = antichain2.frame
    assert not is_directed(antichain2, constant(antichain2.carrier, two, two.top))


def test_lower_set_examples(selfL3):
    frame = selfL3.frame
    for x in selfL3.carrier:
        assert is_lower_set(selfL3, down_set(selfL3, x))
    # crisp subset {0, m} is not a lower set in (L, e_L) over chain3:
    # membership of m forces membership degree of 1 at least to m
    bad = LSubset(frame, selfL3.carrier, (frame.top, frame.top, frame.bottom))
    assert not is_lower_set(selfL3, bad)


def test_dcpo_antichain_cases(antichain2):
    # every directed subset of the antichain is a single point, so it is a dcpo
    assert is_dcpo(antichain2)
    with_bottom = crisp_order(
        make_chain(2), ("bot", "a", "b"), [("bot", "a"), ("bot", "b")]
    )
    assert is_dcpo(with_bottom)
    assert not is_complete(with_bottom)


def test_dcpo_matches_classical_enumeration(antichain2):
    """Cross-check the fuzzy dcpo verdict against a crisp brute-force oracle
    on a crisp order embedded over the two-point frame."""
    order = crisp_order(
        make_chain(2), ("bot", "a", "b"), [("bot", "a"), ("bot", "b")]
    )
    carrier = order.carrier

    def crisp_directed(subset):
        return bool(subset) and all(
            any(order.e[order.index(x)][order.index(z)] and
                order.e[order.index(y)][order.index(z)] for z in subset)
            for x in subset
            for y in subset
        )

    def crisp_sup(subset):
        ups = [
            c for c in carrier
            if all(order.e[order.index(x)][order.index(c)] for x in subset)
        ]
        for c in ups:
            if all(order.e[order.index(c)][order.index(d)] for d in ups):
                return c
        return None

    classical = all(
        crisp_sup(subset) is not None
        for size in range(1, 4)
        for subset in itertools.combinations(carrier, size)
        if crisp_directed(subset)
    )
    assert is_dcpo(order) == classical == True


def test_order_suite_passes(selfL3, chain2):
    assert check_order_suite(selfL3).all_passed()
    assert check_order_suite(self_order(chain2)).all_passed()
    assert check_order_suite(powerset_order(chain2, ("x", "y"))).all_passed()


def test_order_suite_incomplete_orders_still_lawful(antichain2):
    report = check_order_suite(antichain2)
    assert report.all_passed(), report.to_text()
    verdicts = {e.law: e.witness for e in report.entries if e.informational}
    assert verdicts["order.complete"] == "verdict=False"
    assert verdicts["order.dcpo"] == "verdict=True"


def test_extremes_on_complete_order(selfL3):
    assert top_of(selfL3) == 2
    assert bottom_of(selfL3) == 0


def test_carrier_mismatch_rejected(selfL3, chain3):
    foreign = LSubset(chain3, ("x",), (0,))
    with pytest.raises(InvalidParameterError):
        sup_of(selfL3, foreign)
