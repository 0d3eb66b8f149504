"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines.
Budgets are wall-clock seconds measured around the suite under test.
"""

import json
import time
from contextlib import contextmanager

import pytest

from latcheck.caps import DEFAULT_CAPS
from latcheck.frame import check_frame_laws, make_chain
from latcheck.instances import (
    continuous_lattice_orders,
    filter_suite_spaces,
    monad_suite_spaces,
    orders_for_frame,
    registered_frames,
    registered_spaces,
)
from latcheck.report import EXHAUSTIVE


@contextmanager
def criterion(number, title, budget_seconds):
    state = {"passed": False}
    start = time.perf_counter()
    try:
        yield state
        state["passed"] = True
    finally:
        elapsed = time.perf_counter() - start
        verdict = "PASS" if state["passed"] and elapsed <= budget_seconds else "FAIL"
        print(
            f"\nACCEPTANCE {number} {title}: {verdict} "
            f"({elapsed:.2f}s of {budget_seconds}s budget)"
        )
    assert elapsed <= budget_seconds, (
        f"criterion {number} exceeded its {budget_seconds}s budget ({elapsed:.2f}s)"
    )


def test_criterion_1_heyting_suite():
    with criterion(1, "Heyting suite", 5.0):
        for frame in registered_frames():
            report = check_frame_laws(frame)
            assert report.all_passed(), f"{frame.label}\n{report.to_text()}"
            by_law = {e.law for e in report.entries}
            for i in range(1, 14):
                assert f"heyting.{i:02d}" in by_law
            assert "heyting.adjunction" in by_law
            assert "heyting.inf-distributivity" in by_law


def test_criterion_2_topology_suite():
    from latcheck.ltop import check_topology_laws

    with criterion(2, "Topology suite", 10.0):
        for frame in (make_chain(2), make_chain(3)):
            for inst in registered_spaces(frame):
                report = check_topology_laws(inst.space, expect_t0=inst.expect_t0)
                assert report.all_passed(), (
                    f"{frame.label}/{inst.space.label}\n{report.to_text()}"
                )
                laws = {e.law for e in report.entries}
                assert {"topology.O1", "topology.O2", "topology.O3",
                        "topology.T0"} <= laws
                assert "topology.base-identity" in laws
                if inst.expect_t0:
                    assert {"order.E1", "order.E2", "order.E3"} <= laws


def test_criterion_3_filter_suite():
    from latcheck.filters import check_filter_laws, enumerate_filters
    from latcheck.oracle import classical_filters, classical_topology

    with criterion(3, "Filter suite", 10.0):
        for frame in (make_chain(2), make_chain(3)):
            for inst in filter_suite_spaces(frame):
                fs = enumerate_filters(inst.space)
                report = check_filter_laws(fs)
                assert report.all_passed(), (
                    f"{frame.label}/{inst.space.label}\n{report.to_text()}"
                )
                laws = {e.law for e in report.entries}
                assert {"filter.F1F2", "filter.F3", "filter.F4",
                        "filter.F4'"} <= laws
        # the flagship count, against the independent classical oracle
        chain2 = make_chain(2)
        sierpinski = next(
            inst.space for inst in registered_spaces(chain2)
            if inst.space.label == "sierpinski"
        )
        fs = enumerate_filters(sierpinski)
        assert len(fs.points) == 3
        classical = classical_filters(classical_topology(("x", "y"), [{"y"}]))
        assert len(classical) == 3


def test_criterion_4_monad_suite():
    from latcheck.monadlaws import check_monad_suite

    with criterion(4, "Monad suite", 120.0):
        for frame in (make_chain(2), make_chain(3)):
            spaces = monad_suite_spaces(frame)
            report = check_monad_suite(spaces, seed=7, sample_target=100)
            assert report.all_passed(), f"{frame.label}\n{report.to_text()}"
            laws = {e.law for e in report.entries}
            assert {"monad.unit-pointed", "monad.unit-functor", "monad.assoc",
                    "eta.natural", "mu.natural"} <= laws
            if frame.n == 2:
                # |X| <= 2 instances run exhaustively at every level
                for e in report.entries:
                    if e.law.startswith("monad."):
                        assert e.mode == EXHAUSTIVE, e
            else:
                point_assocs = [
                    e for e in report.entries
                    if e.law == "monad.assoc" and e.instance == "point"
                ]
                assert all(e.mode == EXHAUSTIVE for e in point_assocs)
                sampled_assoc = [
                    e for e in report.entries
                    if e.law == "monad.assoc" and e.instance == "sierpinski"
                ]
                assert sampled_assoc, "sierpinski instance missing"
                count = int(sampled_assoc[0].mode[len("sampled("):-1])
                assert count >= 100


def test_criterion_5_first_theorem_suite():
    from latcheck.algebra import check_first_theorem

    with criterion(5, "First-theorem suite", 120.0):
        instances = continuous_lattice_orders()
        assert instances, "no verified continuous lattices registered"
        for label, order in instances:
            report = check_first_theorem(order, label=label)
            assert report.all_passed(), f"{label}\n{report.to_text()}"
            laws = {e.law for e in report.entries}
            assert {
                "algebra.filter-section",      # Lem 5.1
                "algebra.approx-transfer",     # Lem 5.2
                "algebra.mult-compat",         # Pro 5.3
                "algebra.unit-section",        # Pro 5.4
                "algebra.scott-limit",         # Th 4.8
                "algebra.continuity-criterion",  # Pro 4.10
            } <= laws


def test_criterion_6_second_theorem_suite():
    from latcheck.algebra import AlgebraWitness, check_second_theorem, roundtrip, structure_map_r
    from latcheck.filters import enumerate_filters
    from latcheck.lorder import crisp_order
    from latcheck.oracle import CrispLattice, classical_structure_map
    from latcheck.scott import scott_topology

    with criterion(6, "Second-theorem suite", 120.0):
        expected_laws = {
            "algebra2.open-recovery",      # Lem 6.1
            "algebra2.base-reduction",     # Lem 6.2(1)
            "algebra2.monotone-r",         # Lem 6.2(2)
            "algebra2.limit-eq",           # Pro 6.3
            "algebra2.complete",           # Pro 6.4
            "algebra2.filter-dcpo",        # Lem 6.5
            "algebra2.lift",               # Lem 6.6
            "algebra2.preserves-dsups",    # Pro 6.7
            "algebra2.canonical-family",   # Lem 6.8
            "algebra2.structure-formula",  # Pro 6.9
            "algebra2.continuous-lattice",  # Pro 6.10
        }
        for label, order in continuous_lattice_orders():
            space = scott_topology(order, label=f"scott({label})")
            fs = enumerate_filters(space)
            witness = structure_map_r(order, space, fs)
            report = check_second_theorem(witness, label=label)
            assert report.all_passed(), f"{label}\n{report.to_text()}"
            assert expected_laws <= {e.law for e in report.entries}
            trip = roundtrip(order, label=label)
            assert trip.all_passed(), f"{label}\n{trip.to_text()}"
            recovered = next(
                e for e in trip.entries if e.law == "roundtrip.r-recovered"
            )
            assert recovered.passed

        # classical-oracle algebra over the diamond lattice
        chain2 = make_chain(2)
        carrier = ("0", "a", "b", "1")
        pairs = [("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")]
        lattice = CrispLattice(carrier, pairs)
        _, _, cl_r = classical_structure_map(lattice)
        order = crisp_order(chain2, carrier, pairs)
        space = scott_topology(order, label="scott(oracle-diamond)")
        fs = enumerate_filters(space)
        r = []
        for u in fs.points:
            members = frozenset(
                frozenset(p for p, v in zip(a.carrier, a.values) if v)
                for ai, a in enumerate(space.opens)
                if u.values[ai] == chain2.top
            )
            r.append(cl_r[members])
        oracle_witness = AlgebraWitness(space, fs, tuple(r), "oracle")
        report = check_second_theorem(oracle_witness, label="oracle-diamond")
        assert report.all_passed(), report.to_text()


def test_criterion_7_degeneration():
    from latcheck.oracle import degeneration_check

    with criterion(7, "Degeneration", 30.0):
        chain2 = make_chain(2)
        for inst in registered_spaces(chain2):
            report = degeneration_check(
                space=inst.space, generators=list(inst.generators)
            )
            assert report.all_passed(), (
                f"{inst.space.label}\n{report.to_text()}"
            )
        for label, order in orders_for_frame(chain2):
            report = degeneration_check(order=order, label=label)
            assert report.all_passed(), f"{label}\n{report.to_text()}"
            assert {e.law for e in report.entries} == {
                "degeneration.opens",
                "degeneration.filters",
                "degeneration.waybelow",
                "degeneration.structure-map",
            }


def test_criterion_8_mutation_sensitivity():
    from latcheck.mutations import MUTATIONS

    with criterion(8, "Mutation sensitivity", 60.0):
        assert len(MUTATIONS) >= 10
        for mutation in MUTATIONS:
            report = mutation.run()
            assert not report.all_passed(), f"{mutation.ident} went undetected"
            assert any(e.witness for e in report.failures), (
                f"{mutation.ident}: no rendered witness"
            )


def test_criterion_9_determinism(capsys):
    from latcheck.cli import main

    with criterion(9, "Determinism", 120.0):
        args = ["verify", "all", "--frame", "chain:2", "--seed", "7",
                "--format", "json"]
        code1 = main(args)
        out1 = capsys.readouterr().out
        code2 = main(args)
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["summary"]["failed"] == 0
