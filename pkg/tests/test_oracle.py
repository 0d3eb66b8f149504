import pytest

from latcheck.errors import InvalidParameterError
from latcheck.frame import make_chain
from latcheck.instances import registered_spaces, orders_for_frame
from latcheck.lorder import crisp_order
from latcheck.oracle import (
    CrispLattice,
    classical_continuous,
    classical_filters,
    classical_scott_topology,
    classical_structure_map,
    classical_topology,
    classical_waybelow,
    degeneration_check,
)


def test_classical_topology_presets():
    sierpinski = classical_topology(("x", "y"), [{"y"}])
    assert set(sierpinski.opens) == {
        frozenset(), frozenset({"y"}), frozenset({"x", "y"})
    }
    indiscrete = classical_topology(("x", "y"), [])
    assert len(indiscrete.opens) == 2
    discrete = classical_topology(("x", "y"), [{"x"}, {"y"}])
    assert len(discrete.opens) == 4


def test_classical_filter_counts():
    assert len(classical_filters(classical_topology(("x", "y"), [{"y"}]))) == 3
    assert len(classical_filters(classical_topology(("x", "y"), []))) == 2
    assert len(classical_filters(classical_topology(("p",), [{"p"}]))) == 2


def test_waybelow_equals_order_on_lattices():
    for carrier, pairs in [
        (("a", "b", "c"), [("a", "b"), ("b", "c")]),
        (("0", "a", "b", "1"), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
    ]:
        lattice = CrispLattice(carrier, pairs)
        assert classical_waybelow(lattice) == frozenset(lattice.leq)
        assert classical_continuous(lattice)


def test_classical_structure_map_examples():
    lattice = CrispLattice(("a", "b"), [("a", "b")])
    space, filters, r = classical_structure_map(lattice)
    # pointed filter of x: all opens containing x
    for x in lattice.carrier:
        pointed = frozenset(o for o in space.opens if x in o)
        assert r[pointed] == x
    # the filter containing only the full carrier maps to the bottom
    whole = frozenset({frozenset(lattice.carrier)})
    assert r[whole] == "a"


def test_structure_map_improper_filter_goes_to_top():
    lattice = CrispLattice(("a", "b"), [("a", "b")])
    space, filters, r = classical_structure_map(lattice)
    improper = frozenset(space.opens)
    assert r[improper] == "b"


def test_not_a_lattice_rejected():
    poset = CrispLattice(("a", "b"), [])
    with pytest.raises(InvalidParameterError):
        poset.join_all(["a", "b"])


def test_degeneration_on_registered_spaces(chain2):
    for inst in registered_spaces(chain2):
        report = degeneration_check(
            space=inst.space, generators=list(inst.generators)
        )
        assert report.all_passed(), f"{inst.space.label}\n{report.to_text()}"


def test_degeneration_on_registered_orders(chain2):
    for label, order in orders_for_frame(chain2):
        report = degeneration_check(order=order, label=label)
        assert report.all_passed(), f"{label}\n{report.to_text()}"
        laws = {e.law for e in report.entries}
        assert laws == {
            "degeneration.opens",
            "degeneration.filters",
            "degeneration.waybelow",
            "degeneration.structure-map",
        }


def test_degeneration_rejects_larger_frames(chain3):
    order = crisp_order(chain3, ("a",), [])
    with pytest.raises(InvalidParameterError):
        degeneration_check(order=order)
