"""The two main theorem suites: continuous lattice -> algebra and back.

The forward suite builds the Scott topology of a continuous lattice,
enumerates its open filters and checks that the induced structure map (send a
filter to the supremum of its fuzzy lower set) satisfies the algebra laws and
the supporting lemmas.  The backward suite takes any algebra witness (a T0
space plus a structure-map table, however obtained) and checks the chain of
statements that force the specialization order to be a continuous lattice
with the same structure map.  Lemma-level checks are reported before
theorem-level ones so failures localize.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .caps import DEFAULT_CAPS, Caps
from .errors import PreconditionError
from .filters import (
    FilterSpace,
    OpenFilter,
    canonical_directed,
    directed_family_policy,
    dsup_filters,
    enumerate_filters,
    filter_violation,
    lift_tilde,
    mult,
    pointed,
    principal,
    sub_filters,
)
from .lorder import (
    LOrder,
    inf_of,
    is_complete,
    is_directed,
    is_ideal,
    lower_cone,
    sup_of,
)
from .lset import LSubset, all_lsubsets, preimage, sub
from .ltop import LTopSpace, specialization_order
from .report import EXHAUSTIVE, VerificationReport, sampled
from .scott import ideals_with_sups, is_continuous_lattice, scott_topology, way_below


@dataclass(frozen=True)
class FilterLowerSet:
    filter: OpenFilter
    lower: LSubset


@dataclass(frozen=True)
class AlgebraWitness:
    space: LTopSpace
    fs: FilterSpace
    r: tuple  # r[i] is the carrier point assigned to fs.points[i]
    provenance: str

    def r_of(self, u: OpenFilter):
        return self.r[self.fs.point_index[u.values]]


@lru_cache(maxsize=None)
def _open_lower_cones(order: LOrder, space: LTopSpace):
    return tuple(lower_cone(order, a).values for a in space.opens)


def u_lower(order: LOrder, space: LTopSpace, u: OpenFilter) -> FilterLowerSet:
    """The fuzzy lower set of a filter: join over opens of u(A) /\\ A^l."""
    if space.carrier != order.carrier:
        raise PreconditionError("space and order have different carriers")
    if u.space is not space:
        raise PreconditionError("filter does not live on the given space")
    frame = order.frame
    cones = _open_lower_cones(order, space)
    vals = tuple(
        frame.join_all(
            frame.meet[u.values[ai]][cones[ai][xi]]
            for ai in range(len(space.opens))
        )
        for xi in range(len(order.carrier))
    )
    return FilterLowerSet(u, LSubset(frame, order.carrier, vals))


def structure_map_r(
    order: LOrder, space: LTopSpace, fs: FilterSpace, caps: Caps = DEFAULT_CAPS
) -> AlgebraWitness:
    """Structure map of the forward theorem: each filter goes to sup(u^l)."""
    if not is_continuous_lattice(order, caps):
        raise PreconditionError("structure map requires a continuous lattice")
    table = []
    for u in fs.points:
        witness = sup_of(order, u_lower(order, space, u).lower)
        if witness is None:
            raise PreconditionError(
                f"lower set of {u.render()} has no supremum; order is not complete"
            )
        table.append(witness.element)
    return AlgebraWitness(space, fs, tuple(table), "built-from-order")


def scott_lim(
    order: LOrder, space: LTopSpace, u: OpenFilter, caps: Caps = DEFAULT_CAPS
) -> LSubset:
    """Scott convergence degrees via ideals: join of sub(I, u^l) /\\ e(x, sup I)."""
    frame = order.frame
    lower = u_lower(order, space, u).lower
    e = order.e
    vals = []
    pool = [
        (ideal, order.index(sup_elem))
        for ideal, sup_elem in ideals_with_sups(order, caps)
    ]
    for xi in range(len(order.carrier)):
        acc = frame.bottom
        for ideal, si in pool:
            acc = frame.join[acc][frame.meet[sub(ideal, lower)][e[xi][si]]]
        vals.append(acc)
    return LSubset(frame, order.carrier, tuple(vals))


def _level2_elements(fs: FilterSpace, caps: Caps, seed: int, target: int):
    """Available level-2 filters: full enumeration within caps, else samples."""
    from .monadlaws import generate_level2_samples

    frame = fs.base_space.frame
    k2 = len(fs.topology.opens)
    if frame.n <= caps.max_filter_frame and frame.n ** k2 <= caps.max_filter_search:
        return enumerate_filters(fs.topology, caps).points, EXHAUSTIVE
    samples, _ = generate_level2_samples(fs, caps, seed, target)
    return tuple(samples), sampled(len(samples))


def check_first_theorem(
    order: LOrder,
    caps: Caps = DEFAULT_CAPS,
    seed: int = 0,
    label: str = "order",
) -> VerificationReport:
    """Forward suite: the structure map over the Scott topology is an algebra."""
    report = VerificationReport("algebra-forward", {"order": label})
    frame = order.frame
    if not is_continuous_lattice(order, caps):
        raise PreconditionError(f"{label} is not a continuous lattice")
    space = scott_topology(order, caps, label=f"scott({label})")
    fs = enumerate_filters(space, caps)
    witness = structure_map_r(order, space, fs, caps)
    r = witness.r
    e = order.e
    wb = way_below(order, caps)
    t = wb.table
    n = order.size
    k = len(space.opens)

    from .ltop import is_t0

    report.add("algebra.scott-T0", label, EXHAUSTIVE, is_t0(space))

    def run_lower_ideal():
        for u in fs.points:
            if not is_ideal(order, u_lower(order, space, u).lower):
                return f"u={u.render()}"
        return None

    report.run("algebra.lower-ideal", label, EXHAUSTIVE, run_lower_ideal)

    def run_filter_section():
        for ai, a in enumerate(space.opens):
            for ui, u in enumerate(fs.points):
                if not frame.leq[a.values[order.index(r[ui])]][u.values[ai]]:
                    return f"A={a.render()}, u={u.render()}"
        return None

    report.run("algebra.filter-section", label, EXHAUSTIVE, run_filter_section)

    def run_approx_transfer():
        up_rows = [wb.above(x) for x in order.carrier]
        for ai, a in enumerate(space.opens):
            inf_w = inf_of(order, a)
            if inf_w is None:
                return f"open {a.render()} has no infimum"
            mi = order.index(inf_w.element)
            for xi in range(n):
                lhs = t[mi][xi]
                rhs = frame.meet_all(
                    frame.imp[u.values[ai]][
                        up_rows[xi].values[order.index(r[ui])]
                    ]
                    for ui, u in enumerate(fs.points)
                )
                if not frame.leq[lhs][rhs]:
                    return f"A={space.opens[ai].render()}, x={order.render_point(xi)}"
        return None

    report.run("algebra.approx-transfer", label, EXHAUSTIVE, run_approx_transfer)

    def run_continuous_r():
        for a in space.opens:
            back = tuple(a.values[order.index(r[ui])] for ui in range(len(fs.points)))
            if back not in fs.topology.open_index:
                return f"preimage of {a.render()} under r is not open"
        return None

    report.run("algebra.structure-map-continuous", label, EXHAUSTIVE, run_continuous_r)

    alphas, alpha_mode = _level2_elements(fs, caps, seed, 100)

    def run_mult_compat():
        r_rows = [
            tuple(a.values[order.index(r[ui])] for ui in range(len(fs.points)))
            for a in space.opens
        ]
        for alpha in alphas:
            mu_side = r[fs.point_index[mult(fs, alpha).values]]
            pushed = []
            for ai, row in enumerate(r_rows):
                wi = fs.topology.open_index.get(row)
                if wi is None:
                    return f"preimage of {space.opens[ai].render()} under r is not open"
                pushed.append(alpha.values[wi])
            pushed = tuple(pushed)
            if filter_violation(space, pushed) is not None:
                return f"functor image of {alpha.render()} is not a filter"
            target = fs.point_index.get(pushed)
            if target is None:
                return f"functor image of {alpha.render()} is not an enumerated filter"
            r_side = r[target]
            if mu_side != r_side:
                return f"alpha={alpha.render()}: {mu_side!r} != {r_side!r}"
        return None

    report.run("algebra.mult-compat", label, alpha_mode, run_mult_compat)

    def run_unit_section():
        for x in order.carrier:
            u = pointed(space, x)
            if witness.r_of(u) != x:
                return f"x={x!r} maps back to {witness.r_of(u)!r}"
        return None

    report.run("algebra.unit-section", label, EXHAUSTIVE, run_unit_section)

    def run_scott_limit():
        for u in fs.points:
            lim = scott_lim(order, space, u, caps)
            ri = order.index(witness.r_of(u))
            for xi in range(n):
                if lim.values[xi] != e[xi][ri]:
                    return f"u={u.render()}, x={order.render_point(xi)}"
        return None

    report.run("algebra.scott-limit", label, EXHAUSTIVE, run_scott_limit)

    def run_continuity_criterion():
        continuous = True  # precondition established it
        pointwise = True
        for x in order.carrier:
            low = u_lower(order, space, pointed(space, x)).lower
            w = sup_of(order, low)
            if w is None or w.element != x:
                pointwise = False
                break
        if continuous != pointwise:
            return f"continuity={continuous} but pointed-lower criterion={pointwise}"
        return None

    report.run("algebra.continuity-criterion", label, EXHAUSTIVE, run_continuity_criterion)
    return report


def check_second_theorem(
    witness: AlgebraWitness,
    caps: Caps = DEFAULT_CAPS,
    seed: int = 0,
    label: str | None = None,
) -> VerificationReport:
    """Backward suite: any algebra witness yields a continuous lattice."""
    label = label or witness.space.label
    report = VerificationReport("algebra-backward", {"witness": label})
    space = witness.space
    fs = witness.fs
    frame = space.frame
    r = witness.r
    order = specialization_order(space)  # PreconditionError when not T0
    e = order.e
    n = order.size
    k = len(space.opens)
    r_idx = tuple(order.index(p) for p in r)

    def run_witness_continuous():
        for a in space.opens:
            back = tuple(a.values[r_idx[ui]] for ui in range(len(fs.points)))
            if back not in fs.topology.open_index:
                return f"preimage of {a.render()} under r is not open"
        return None

    report.run("algebra2.witness-continuous", label, EXHAUSTIVE, run_witness_continuous)

    def run_witness_unit():
        for xi, x in enumerate(space.carrier):
            u = pointed(space, x)
            if witness.r_of(u) != x:
                return f"x={x!r} maps to {witness.r_of(u)!r}"
        return None

    report.run("algebra2.witness-unit", label, EXHAUSTIVE, run_witness_unit)

    alphas, alpha_mode = _level2_elements(fs, caps, seed, 100)

    def run_witness_mult():
        r_rows = [
            tuple(a.values[r_idx[ui]] for ui in range(len(fs.points)))
            for a in space.opens
        ]
        for alpha in alphas:
            mu_side = r[fs.point_index[mult(fs, alpha).values]]
            pushed = []
            for ai, row in enumerate(r_rows):
                wi = fs.topology.open_index.get(row)
                if wi is None:
                    return f"preimage of {space.opens[ai].render()} under r is not open"
                pushed.append(alpha.values[wi])
            pushed = tuple(pushed)
            if filter_violation(space, pushed) is not None:
                return f"functor image of {alpha.render()} is not a filter"
            target = fs.point_index.get(pushed)
            if target is None:
                return f"functor image of {alpha.render()} is not an enumerated filter"
            if r[target] != mu_side:
                return f"alpha={alpha.render()}"
        return None

    report.run("algebra2.witness-mult", label, alpha_mode, run_witness_mult)

    def run_open_recovery():
        for a in space.opens:
            for xi in range(n):
                pushed = frame.bottom
                for ui, u in enumerate(fs.points):
                    if r_idx[ui] == xi:
                        pushed = frame.join[pushed][u.values[space.index_of(a)]]
                if not frame.leq[a.values[xi]][pushed]:
                    return f"A={a.render()}, x={order.render_point(xi)}"
        return None

    report.run("algebra2.open-recovery", label, EXHAUSTIVE, run_open_recovery)

    def run_base_reduction():
        for ui, u in enumerate(fs.points):
            for vi, v in enumerate(fs.points):
                full = frame.meet_all(
                    frame.imp[w.values[ui]][w.values[vi]]
                    for w in fs.topology.opens
                )
                if full != sub_filters(u, v):
                    return f"u={u.render()}, v={v.render()}"
        return None

    report.run("algebra2.base-reduction", label, EXHAUSTIVE, run_base_reduction)

    def run_monotone_r():
        for ui, u in enumerate(fs.points):
            for vi, v in enumerate(fs.points):
                if not frame.leq[sub_filters(u, v)][e[r_idx[ui]][r_idx[vi]]]:
                    return f"u={u.render()}, v={v.render()}"
        return None

    report.run("algebra2.monotone-r", label, EXHAUSTIVE, run_monotone_r)

    def run_limit_eq():
        for ui, u in enumerate(fs.points):
            for xi in range(n):
                lim = frame.meet_all(
                    frame.imp[a.values[xi]][u.values[ai]]
                    for ai, a in enumerate(space.opens)
                )
                if lim != e[xi][r_idx[ui]]:
                    return f"u={u.render()}, x={order.render_point(xi)}"
        return None

    report.run("algebra2.limit-eq", label, EXHAUSTIVE, run_limit_eq)

    def run_complete():
        for a in all_lsubsets(order.carrier, frame, caps):
            w = inf_of(order, a)
            pr = principal(space, a)
            if pr.values not in fs.point_index:
                return f"principal filter of {a.render()} missing"
            target = r[fs.point_index[pr.values]]
            if w is None or w.element != target:
                got = None if w is None else w.element
                return f"A={a.render()}: inf {got!r} vs r([A])={target!r}"
        return None

    report.run("algebra2.complete", label, EXHAUSTIVE, run_complete)

    families, fam_mode = directed_family_policy(fs, caps)
    forder = fs.order()

    from .errors import LatcheckError

    def run_filter_dcpo():
        for fam in families:
            try:
                w = dsup_filters(fs, fam)
            except LatcheckError as exc:
                return f"family {fam.render()}: {exc}"
            generic = sup_of(forder, fam)
            if generic is None or generic.element is not w:
                return f"family {fam.render()}"
        return None

    report.run("algebra2.filter-dcpo", label, fam_mode, run_filter_dcpo)

    def run_lift():
        for fam in families:
            try:
                tilde = lift_tilde(fs, fam)
                if mult(fs, tilde).values != dsup_filters(fs, fam).values:
                    return f"family {fam.render()}"
            except LatcheckError as exc:
                return f"family {fam.render()}: {exc}"
        return None

    report.run("algebra2.lift", label, fam_mode, run_lift)

    def run_preserves_dsups():
        for fam in families:
            try:
                left = r_idx[fs.point_index[dsup_filters(fs, fam).values]]
            except LatcheckError as exc:
                return f"family {fam.render()}: {exc}"
            fibers = [frame.bottom] * n
            for ui in range(len(fs.points)):
                fibers[r_idx[ui]] = frame.join[fibers[r_idx[ui]]][fam.values[ui]]
            image_fam = LSubset(frame, order.carrier, tuple(fibers))
            w = sup_of(order, image_fam)
            if w is None or order.index(w.element) != left:
                return f"family {fam.render()}"
        return None

    report.run("algebra2.preserves-dsups", label, fam_mode, run_preserves_dsups)

    def run_canonical_family():
        for u in fs.points:
            fam = canonical_directed(fs, u)
            if not is_directed(forder, fam):
                return f"u={u.render()}: canonical family not directed"
            try:
                if dsup_filters(fs, fam).values != u.values:
                    return f"u={u.render()}: canonical family sup differs"
            except LatcheckError as exc:
                return f"u={u.render()}: {exc}"
        return None

    report.run("algebra2.canonical-family", label, EXHAUSTIVE, run_canonical_family)

    def run_structure_formula():
        for ui, u in enumerate(fs.points):
            low = u_lower(order, space, u).lower
            w = sup_of(order, low)
            if w is None or w.element != r[ui]:
                got = None if w is None else w.element
                return f"u={u.render()}: sup(u^l)={got!r} vs r(u)={r[ui]!r}"
        return None

    report.run("algebra2.structure-formula", label, EXHAUSTIVE, run_structure_formula)

    def run_continuous_lattice():
        from .scott import order_is_complete

        if not order_is_complete(order, caps):
            return "specialization order is not complete"
        if not is_continuous_lattice(order, caps):
            return "specialization order is not a continuous lattice"
        return None

    report.run("algebra2.continuous-lattice", label, EXHAUSTIVE, run_continuous_lattice)
    return report


def roundtrip(
    order: LOrder,
    caps: Caps = DEFAULT_CAPS,
    seed: int = 0,
    label: str = "order",
) -> VerificationReport:
    """Forward construction followed by the backward suite plus comparisons."""
    report = VerificationReport("roundtrip", {"order": label})
    space = scott_topology(order, caps, label=f"scott({label})")
    fs = enumerate_filters(space, caps)
    witness = structure_map_r(order, space, fs, caps)
    report.extend(check_second_theorem(witness, caps, seed, label=label))

    recovered = specialization_order(space)

    def run_recovered_r():
        for ui, u in enumerate(fs.points):
            low = u_lower(recovered, space, u).lower
            w = sup_of(recovered, low)
            if w is None or w.element != witness.r[ui]:
                got = None if w is None else w.element
                return f"u={u.render()}: recovered {got!r} vs original {witness.r[ui]!r}"
        return None

    report.run("roundtrip.r-recovered", label, EXHAUSTIVE, run_recovered_r)

    agree = recovered.e == order.e
    report.add(
        "roundtrip.order-agreement",
        label,
        EXHAUSTIVE,
        True,
        witness=f"specialization order of the Scott topology "
        f"{'matches' if agree else 'differs from'} the original order",
        informational=True,
    )
    return report
