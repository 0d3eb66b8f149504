"""Executable naturality and monad-law checks for the open-filter functor.

Level 0 and level 1 are always enumerated exhaustively.  The level-2 filter
space is enumerated when the search caps allow and otherwise replaced by a
deterministic sample universe (pointed and principal filters, lifts of
canonical directed families, meet closure, seeded principal top-ups); the
level-3 elements driving the associativity check are never enumerated, only
constructed as pointed filters and lifts over the level-2 universe in play.
Reports state which mode ran.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .caps import DEFAULT_CAPS, Caps
from .errors import ResourceLimitError
from .filters import (
    FilterSpace,
    OpenFilter,
    canonical_directed,
    enumerate_filters,
    filter_violation,
    lift_tilde,
    mult,
    pointed,
    principal,
    pushforward,
    sub_filters,
)
from .lorder import LOrder, is_directed
from .lset import CarrierMap, LSubset, preimage
from .ltop import LTopSpace, generate_topology, is_continuous
from .report import EXHAUSTIVE, VerificationReport, sampled


@dataclass
class MonadInstance:
    space: LTopSpace
    fs: FilterSpace
    alphas: tuple  # level-2 filters in play (all of them in exhaustive mode)
    level2_space: LTopSpace  # topology over the in-play level-2 points
    phi2_index: tuple  # for each open W of fs.topology, its evaluation open's index
    mode: str
    label: str
    truncated: bool = False

    def eta_map(self) -> CarrierMap:
        return CarrierMap(
            self.space.carrier,
            self.fs.points,
            tuple(self.fs.intern(pointed(self.space, x)) for x in self.space.carrier),
        )

    def mu_point_index(self) -> tuple:
        """For each in-play alpha, the index of mult(alpha) among the filters."""
        return tuple(
            self.fs.point_index[mult(self.fs, alpha).values] for alpha in self.alphas
        )


def generate_level2_samples(
    fs: FilterSpace,
    caps: Caps = DEFAULT_CAPS,
    seed: int = 0,
    target: int = 100,
) -> tuple[list[OpenFilter], bool]:
    """Deterministic level-2 sample set; returns (samples, truncated).

    Policy: pointed filters of every enumerated filter, principal filters of
    every base open of the filter-space topology, lifts of every canonical
    directed family, closure under binary pointwise meets, then a seeded walk
    through the level-2 search space until the target count is reached or the
    space is used up.
    """
    from .filters import _search_filters

    frame = fs.base_space.frame
    space2 = fs.topology
    cap = max(caps.max_level2_points, target)
    samples: list[OpenFilter] = []
    seen: set = set()

    def push(candidate: OpenFilter) -> None:
        if candidate.values in seen:
            return
        if filter_violation(space2, candidate.values) is not None:
            return
        seen.add(candidate.values)
        samples.append(candidate)

    for u in fs.points:
        push(pointed(space2, u))
    for w in space2.base or ():
        push(principal(space2, w))
    for u in fs.points:
        fam = canonical_directed(fs, u)
        push(lift_tilde(fs, fam))

    truncated = False
    frontier = list(samples)
    while frontier and len(samples) < cap:
        nxt = []
        for a, b in itertools.combinations(list(samples), 2):
            vals = tuple(frame.meet[x][y] for x, y in zip(a.values, b.values))
            if vals not in seen:
                cand = OpenFilter(space2, vals)
                push(cand)
                nxt.append(cand)
                if len(samples) >= cap:
                    truncated = True
                    break
        frontier = nxt

    goal = min(target, cap)
    if len(samples) < goal:
        rng = random.Random(seed)
        orders = {}
        for i in range(len(space2.opens)):
            vals = list(range(frame.n))
            rng.shuffle(vals)
            orders[i] = tuple(vals)
        walked, _ = _search_filters(
            space2,
            value_orders=orders,
            limit=goal + len(samples),
            node_budget=caps.max_sample_nodes,
        )
        for vals in walked:
            if len(samples) >= goal:
                break
            push(OpenFilter(space2, vals))
    if len(samples) >= cap:
        truncated = True
    return samples, truncated


def build_monad_instance(
    space: LTopSpace,
    caps: Caps = DEFAULT_CAPS,
    seed: int = 0,
    sample_target: int = 100,
    force_sampled: bool = False,
    label: str | None = None,
) -> MonadInstance:
    """Enumerate the filter space and materialize the level-2 universe."""
    label = label or space.label
    fs = enumerate_filters(space, caps)
    truncated = False
    if force_sampled:
        exhaustive = False
    else:
        k2 = len(fs.topology.opens)
        exhaustive = (
            space.frame.n <= caps.max_filter_frame
            and space.frame.n ** k2 <= caps.max_filter_search
        )
    if exhaustive:
        level2 = enumerate_filters(fs.topology, caps)
        alphas = level2.points
        level2_space = level2.topology
        mode = EXHAUSTIVE
    else:
        samples, truncated = generate_level2_samples(fs, caps, seed, sample_target)
        alphas = tuple(samples)
        phi2 = [
            LSubset(
                space.frame,
                alphas,
                tuple(alpha.values[wi] for alpha in alphas),
            )
            for wi in range(len(fs.topology.opens))
        ]
        level2_space = generate_topology(
            alphas, space.frame, phi2, caps, label=f"Phi2({label})"
        )
        mode = sampled(len(alphas))
    phi2_index = tuple(
        level2_space.open_index[
            tuple(alpha.values[wi] for alpha in alphas)
        ]
        for wi in range(len(fs.topology.opens))
    )
    return MonadInstance(space, fs, alphas, level2_space, phi2_index, mode, label, truncated)


def _level2_order(inst: MonadInstance) -> LOrder:
    e = tuple(
        tuple(sub_filters(a, b) for b in inst.alphas) for a in inst.alphas
    )
    return LOrder(inst.space.frame, inst.alphas, e)


def level3_samples(inst: MonadInstance):
    """Pointed and lifted level-3 elements over the in-play level-2 points."""
    frame = inst.space.frame
    order2 = _level2_order(inst)
    sub_tab2 = inst.fs.topology.sub_table()
    xis = []
    seen = set()

    def push(kind, origin, values):
        if values in seen:
            return
        if filter_violation(inst.level2_space, values) is not None:
            return
        seen.add(values)
        xis.append((kind, origin, OpenFilter(inst.level2_space, values)))

    def lift(family_values):
        return tuple(
            frame.join_all(
                frame.meet[family_values[bi]][v.values[bi]]
                for bi in range(len(inst.alphas))
            )
            for v in inst.level2_space.opens
        )

    for alpha in inst.alphas:
        push("pointed", alpha, pointed(inst.level2_space, alpha).values)
    for alpha in inst.alphas:
        down = LSubset(
            frame,
            inst.alphas,
            tuple(sub_filters(beta, alpha) for beta in inst.alphas),
        )
        if is_directed(order2, down):
            push("lift-down", alpha, lift(down.values))
    # canonical directed family below alpha, built from the principal
    # level-2 filters of the filter-space opens
    principal2 = [
        OpenFilter(inst.fs.topology, tuple(sub_tab2[i]))
        for i in range(len(inst.fs.topology.opens))
    ]
    for alpha in inst.alphas:
        vals = []
        for beta in inst.alphas:
            acc = frame.bottom
            for wi in range(len(inst.fs.topology.opens)):
                acc = frame.join[acc][
                    frame.meet[alpha.values[wi]][sub_filters(beta, principal2[wi])]
                ]
            vals.append(acc)
        fam = LSubset(frame, inst.alphas, tuple(vals))
        if is_directed(order2, fam):
            push("lift-canonical", alpha, lift(fam.values))
    # principal level-3 filters and binary meets of pointed ones: the lift
    # shapes alone collapse onto pointed filters, so these add the genuinely
    # non-pointed elements; both stages are capped to stay desk-scale
    for v0 in inst.level2_space.opens[:96]:
        push("principal", v0, principal(inst.level2_space, v0).values)
    for alpha in inst.alphas[:64]:
        down = LSubset(
            frame,
            inst.alphas,
            tuple(sub_filters(beta, alpha) for beta in inst.alphas),
        )
        push("principal-down", alpha, principal(inst.level2_space, down).values)
    pointed_vals = [pointed(inst.level2_space, alpha).values for alpha in inst.alphas[:48]]
    for i in range(len(pointed_vals)):
        for j in range(i + 1, len(pointed_vals)):
            merged = tuple(
                frame.meet[a][b] for a, b in zip(pointed_vals[i], pointed_vals[j])
            )
            push("meet-pointed", inst.alphas[i], merged)
    return xis


def check_monad_laws(inst: MonadInstance, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """Both unit laws over every filter; associativity over the level-3 samples."""
    report = VerificationReport("monad", {"space": inst.label})
    fs = inst.fs
    frame = inst.space.frame
    label = inst.label

    def run_mult_wellformed():
        for alpha in inst.alphas:
            w = mult(fs, alpha)
            if w.values not in fs.point_index:
                return f"mult of {alpha.render()} is not an enumerated filter"
        return None

    report.run("monad.mult-wellformed", label, inst.mode, run_mult_wellformed)

    def run_unit_pointed():
        for u in fs.points:
            if mult(fs, pointed(fs.topology, u)).values != u.values:
                return f"u={u.render()}"
        return None

    report.run("monad.unit-pointed", label, EXHAUSTIVE, run_unit_pointed)

    def run_unit_functor():
        eta = inst.eta_map()
        if not is_continuous(eta, inst.space, fs.topology):
            return "unit map is not continuous"
        for u in fs.points:
            lifted = pushforward(eta, inst.space, fs.topology, u)
            if mult(fs, lifted).values != u.values:
                return f"u={u.render()}"
        return None

    report.run("monad.unit-functor", label, EXHAUSTIVE, run_unit_functor)

    xis = level3_samples(inst)
    assoc_mode = inst.mode if inst.mode == EXHAUSTIVE else sampled(len(xis))

    def run_assoc():
        mu_idx = inst.mu_point_index()
        flatten_idx = []
        for w in fs.topology.opens:
            vals = tuple(w.values[mu_idx[ai]] for ai in range(len(inst.alphas)))
            idx = inst.level2_space.open_index.get(vals)
            if idx is None:
                return f"preimage of {w.render()} under mult is not open at level 2"
            flatten_idx.append(idx)
        for kind, origin, xi in xis:
            lhs_level2 = tuple(xi.values[i] for i in flatten_idx)
            rhs_level2 = tuple(xi.values[i] for i in inst.phi2_index)
            bad = filter_violation(fs.topology, lhs_level2)
            if bad is not None:
                return f"{kind} over {origin.render()}: flattened side invalid ({bad})"
            lhs = mult(fs, OpenFilter(fs.topology, lhs_level2))
            rhs = mult(fs, OpenFilter(fs.topology, rhs_level2))
            if lhs.values != rhs.values:
                return (
                    f"{kind} over {origin.render()}: "
                    f"{lhs.render()} != {rhs.render()}"
                )
        return None

    report.run("monad.assoc", label, assoc_mode, run_assoc)

    if inst.truncated:
        report.add(
            "monad.sample-truncation",
            label,
            inst.mode,
            True,
            witness="level-2 sample closure truncated at the cap",
            informational=True,
        )
    return report


def check_eta_naturality(
    inst_x: MonadInstance, inst_y: MonadInstance, f: CarrierMap, caps: Caps = DEFAULT_CAPS
) -> VerificationReport:
    """The unit square for one continuous map, plus continuity of the unit."""
    report = VerificationReport("eta-naturality")
    label = f"{inst_x.label}->{inst_y.label}"

    def run_continuous():
        eta = inst_x.eta_map()
        for i, u_open in enumerate(inst_x.fs.phi):
            back = preimage(eta, u_open)
            if back.values != inst_x.space.opens[i].values:
                return f"unit preimage of phi({inst_x.space.opens[i].render()})"
        return None

    report.run("eta.continuous", inst_x.label, EXHAUSTIVE, run_continuous)

    def run_square():
        for x in inst_x.space.carrier:
            left = pointed(inst_y.space, f(x))
            right = pushforward(f, inst_x.space, inst_y.space, pointed(inst_x.space, x))
            if left.values != right.values:
                return f"x={x!r}"
        return None

    report.run("eta.natural", label, EXHAUSTIVE, run_square)
    return report


def check_mu_naturality(
    inst_x: MonadInstance, inst_y: MonadInstance, f: CarrierMap, caps: Caps = DEFAULT_CAPS
) -> VerificationReport:
    """The multiplication square over the available level-2 elements."""
    report = VerificationReport("mu-naturality")
    label = f"{inst_x.label}->{inst_y.label}"
    fs_x, fs_y = inst_x.fs, inst_y.fs

    phi_f = CarrierMap(
        fs_x.points,
        fs_y.points,
        tuple(
            fs_y.intern(pushforward(f, inst_x.space, inst_y.space, u))
            for u in fs_x.points
        ),
    )

    def run_functor_continuous():
        if not is_continuous(phi_f, fs_x.topology, fs_y.topology):
            return "induced filter map is not continuous"
        return None

    report.run("mu.functor-continuous", label, EXHAUSTIVE, run_functor_continuous)

    def run_mu_continuous():
        mu_idx = inst_x.mu_point_index()
        for i, phi_a in enumerate(inst_x.fs.phi):
            vals = tuple(phi_a.values[mu_idx[ai]] for ai in range(len(inst_x.alphas)))
            if vals != tuple(
                alpha.values[inst_x.fs.topology.index_of(phi_a)]
                for alpha in inst_x.alphas
            ):
                return f"mult preimage of phi({inst_x.space.opens[i].render()})"
            if vals not in inst_x.level2_space.open_index:
                return (
                    f"evaluation open of phi({inst_x.space.opens[i].render()}) "
                    "missing at level 2"
                )
        return None

    report.run("mu.continuous", inst_x.label, inst_x.mode, run_mu_continuous)

    def run_square():
        for alpha in inst_x.alphas:
            pushed_alpha = pushforward(phi_f, fs_x.topology, fs_y.topology, alpha)
            left = mult(fs_y, pushed_alpha)
            right = pushforward(f, inst_x.space, inst_y.space, mult(fs_x, alpha))
            if left.values != right.values:
                return f"alpha={alpha.render()}"
        return None

    report.run("mu.natural", label, inst_x.mode, run_square)
    return report


def continuous_maps_between(x: LTopSpace, y: LTopSpace):
    """All continuous maps from x to y, enumerated exhaustively."""
    if not x.carrier:
        yield CarrierMap(x.carrier, y.carrier, ())
        return
    for graph in itertools.product(y.carrier, repeat=len(x.carrier)):
        candidate = CarrierMap(x.carrier, y.carrier, graph)
        if is_continuous(candidate, x, y):
            yield candidate


def check_monad_suite(
    spaces: list[LTopSpace],
    caps: Caps = DEFAULT_CAPS,
    seed: int = 0,
    sample_target: int = 100,
    force_sampled_labels: frozenset = frozenset(),
) -> VerificationReport:
    """Monad laws on each space plus naturality for every continuous map."""
    report = VerificationReport("monad")
    instances = []
    for space in spaces:
        inst = build_monad_instance(
            space,
            caps,
            seed=seed,
            sample_target=sample_target,
            force_sampled=space.label in force_sampled_labels,
        )
        instances.append(inst)
        report.extend(check_monad_laws(inst, caps))
    for inst_x in instances:
        for inst_y in instances:
            for f in continuous_maps_between(inst_x.space, inst_y.space):
                report.extend(check_eta_naturality(inst_x, inst_y, f, caps))
                report.extend(check_mu_naturality(inst_x, inst_y, f, caps))
    return report
