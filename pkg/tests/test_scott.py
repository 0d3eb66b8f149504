import pytest

from latcheck.errors import PreconditionError
from latcheck.frame import make_chain
from latcheck.lorder import crisp_order, self_order, sup_of
from latcheck.lset import LSubset, all_lsubsets, constant
from latcheck.oracle import CrispLattice, classical_scott_topology, classical_waybelow
from latcheck.scott import (
    check_scott_props,
    check_scott_suite,
    ideals_with_sups,
    is_continuous_lattice,
    is_scott_open,
    scott_topology,
    way_below,
)


@pytest.fixture(scope="module")
def crisp_chain2():
    return crisp_order(make_chain(2), ("a", "b"), [("a", "b")])


@pytest.fixture(scope="module")
def selfL3():
    return self_order(make_chain(3))


@pytest.fixture(scope="module")
def diamond():
    return crisp_order(
        make_chain(2),
        ("0", "a", "b", "1"),
        [("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")],
    )


def test_constants_are_scott_open(selfL3):
    frame = selfL3.frame
    for a in range(frame.n):
        assert is_scott_open(selfL3, constant(selfL3.carrier, frame, a))


def test_crisp_chain_scott_opens_are_upper_sets(crisp_chain2):
    frame = crisp_chain2.frame
    space = scott_topology(crisp_chain2)
    got = {a.values for a in space.opens}
    # characteristic maps of upper sets: {}, {b}, {a,b}
    assert got == {(0, 0), (0, 1), (1, 1)}
    # the down-set of a non-top point is not Scott open
    low = LSubset(frame, crisp_chain2.carrier, (1, 0))
    assert not is_scott_open(crisp_chain2, low)


def test_scott_matches_classical_alexandrov(diamond):
    space = scott_topology(diamond)
    crisp = {
        frozenset(p for p, v in zip(a.carrier, a.values) if v) for a in space.opens
    }
    lattice = CrispLattice(
        ("0", "a", "b", "1"),
        [("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")],
    )
    assert crisp == set(classical_scott_topology(lattice).opens)


def test_scott_conditions_agree(selfL3, crisp_chain2):
    for order in (selfL3, crisp_chain2):
        for a in all_lsubsets(order.carrier, order.frame):
            verdicts = {is_scott_open(order, a, condition=c) for c in (1, 2, 3, 4)}
            assert len(verdicts) == 1


def test_way_below_on_crisp_chain_equals_order(crisp_chain2):
    wb = way_below(crisp_chain2)
    e = crisp_chain2.e
    n = crisp_chain2.size
    # finite crisp posets: approximation coincides with the order
    for x in range(n):
        for y in range(n):
            assert wb.table[x][y] == e[y][x]


def test_way_below_matches_classical(diamond):
    wb = way_below(diamond)
    lattice = CrispLattice(
        ("0", "a", "b", "1"),
        [("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")],
    )
    classical = classical_waybelow(lattice)
    frame = diamond.frame
    fuzzy = {
        (diamond.carrier[y], diamond.carrier[x])
        for x in range(diamond.size)
        for y in range(diamond.size)
        if wb.table[x][y] == frame.top
    }
    assert fuzzy == classical


def test_way_below_bounded_by_order(selfL3):
    wb = way_below(selfL3)
    frame = selfL3.frame
    for x in range(selfL3.size):
        for y in range(selfL3.size):
            assert frame.leq[wb.table[x][y]][selfL3.e[y][x]]


def test_ideal_cap_laws(selfL3):
    frame = selfL3.frame
    wb = way_below(selfL3)
    for ideal, sup_elem in ideals_with_sups(selfL3):
        s = selfL3.index(sup_elem)
        for y in range(selfL3.size):
            assert frame.leq[wb.table[s][y]][ideal.values[y]]


def test_continuity_verdicts(selfL3, crisp_chain2, diamond):
    assert is_continuous_lattice(selfL3)
    assert is_continuous_lattice(crisp_chain2)
    assert is_continuous_lattice(diamond)


def test_continuity_requires_completeness():
    antichain = crisp_order(make_chain(2), ("a", "b"), [])
    with pytest.raises(PreconditionError):
        is_continuous_lattice(antichain)


def test_scott_props_pass(selfL3, diamond):
    assert check_scott_props(selfL3).all_passed()
    assert check_scott_props(diamond).all_passed()


def test_interpolation_reflexive_instance(selfL3):
    wb = way_below(selfL3)
    frame = selfL3.frame
    bottom = 0
    rhs = frame.join_all(
        frame.meet[wb.table[z][bottom]][wb.table[bottom][z]]
        for z in range(selfL3.size)
    )
    assert wb.table[bottom][bottom] == rhs


def test_scott_suite_green(selfL3, crisp_chain2, diamond):
    for label, order in (
        ("selfL3", selfL3),
        ("crisp2", crisp_chain2),
        ("diamond", diamond),
    ):
        report = check_scott_suite(order, label=label)
        assert report.all_passed(), report.to_text()


def test_scott_base_attached_only_when_continuous(selfL3):
    space = scott_topology(selfL3)
    assert space.base is not None
    wb = way_below(selfL3)
    base_values = {b.values for b in space.base}
    assert base_values == {wb.above(x).values for x in selfL3.carrier}


def test_scott_sup_reconstruction(selfL3):
    # every point is recovered as the fuzzy sup of its approximations
    wb = way_below(selfL3)
    for x in selfL3.carrier:
        w = sup_of(selfL3, wb.below(x))
        assert w is not None and w.element == x
