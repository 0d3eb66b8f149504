"""Finite complete Heyting algebras (frames).

Elements are dense small integers indexing precomputed tables, so every
lattice operation is a table lookup; the rest of the library is
enumeration-bound and leans on that.  Constructors either build the tables
directly (chains, powersets, products) or derive them from a user-supplied
cover relation, validating the full frame axioms before returning.
"""

from __future__ import annotations

import itertools
import random

from .caps import DEFAULT_CAPS, Caps
from .errors import (
    InvalidParameterError,
    NotALatticeError,
    NotDistributiveError,
    ResourceLimitError,
)
from .report import EXHAUSTIVE, VerificationReport, sampled


class Frame:
    """Carrier 0..n-1 with order, meet, join and residuum tables."""

    __slots__ = ("n", "names", "leq", "meet", "join", "imp", "bottom", "top", "label")

    def __init__(self, names, leq, meet, join, imp, bottom, top, label="frame"):
        self.n = len(names)
        self.names = tuple(names)
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self.meet = tuple(tuple(row) for row in meet)
        self.join = tuple(tuple(row) for row in join)
        self.imp = tuple(tuple(row) for row in imp)
        self.bottom = bottom
        self.top = top
        self.label = label

    def __repr__(self):
        return f"Frame({self.label}, n={self.n})"

    def name(self, a: int) -> str:
        return self.names[a]

    def element_by_name(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidParameterError(
                f"{name!r} is not an element of {self.label}"
            ) from None

    def check_element(self, a: int) -> None:
        if not (isinstance(a, int) and 0 <= a < self.n):
            raise InvalidParameterError(f"{a!r} is not an element of {self.label}")

    def meet_all(self, elems) -> int:
        acc = self.top
        for a in elems:
            acc = self.meet[acc][a]
        return acc

    def join_all(self, elems) -> int:
        acc = self.bottom
        for a in elems:
            acc = self.join[acc][a]
        return acc


def bound(frame: Frame, subset, kind: str) -> int:
    """Meet or join of an arbitrary subset; empty meet is top, empty join bottom."""
    elems = list(subset)
    for a in elems:
        frame.check_element(a)
    if kind == "meet":
        return frame.meet_all(elems)
    if kind == "join":
        return frame.join_all(elems)
    raise InvalidParameterError(f"kind must be 'meet' or 'join', got {kind!r}")


def make_chain(n: int, label: str | None = None) -> Frame:
    """The n-element chain 0 < ... < 1; residuum is top above the diagonal."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameterError(f"chain size must be a positive integer, got {n!r}")
    if n == 2:
        names = ("0", "1")
    else:
        names = tuple(_chain_name(i, n) for i in range(n))
    rng = range(n)
    leq = [[i <= j for j in rng] for i in rng]
    meet = [[min(i, j) for j in rng] for i in rng]
    join = [[max(i, j) for j in rng] for i in rng]
    imp = [[n - 1 if i <= j else j for j in rng] for i in rng]
    return Frame(names, leq, meet, join, imp, 0, n - 1, label or f"chain:{n}")


def _chain_name(i: int, n: int) -> str:
    if i == 0:
        return "0"
    if i == n - 1:
        return "1"
    if n == 3:
        return "m"
    return f"c{i}"


def make_powerset(n: int, caps: Caps = DEFAULT_CAPS, label: str | None = None) -> Frame:
    """Frame of all subsets of an n-element set; elements are bitmasks."""
    if not isinstance(n, int) or n < 0:
        raise InvalidParameterError(f"powerset size must be >= 0, got {n!r}")
    cap = 4
    if n > cap:
        raise ResourceLimitError(
            f"powerset:{n} exceeds the generator cap of {cap}", stage="make_powerset"
        )
    size = 1 << n
    full = size - 1
    names = []
    for mask in range(size):
        members = [str(i + 1) for i in range(n) if mask >> i & 1]
        names.append("{" + ",".join(members) + "}")
    rng = range(size)
    leq = [[(i | j) == j for j in rng] for i in rng]
    meet = [[i & j for j in rng] for i in rng]
    join = [[i | j for j in rng] for i in rng]
    imp = [[(full & ~i) | j for j in rng] for i in rng]
    return Frame(names, leq, meet, join, imp, 0, full, label or f"powerset:{n}")


def make_product(f: Frame, g: Frame, caps: Caps = DEFAULT_CAPS, label: str | None = None) -> Frame:
    """Componentwise product; validated against the frame axioms before return."""
    size = f.n * g.n
    caps.require(
        size <= caps.max_frame_size,
        "make_product",
        f"product size {size} exceeds max_frame_size={caps.max_frame_size}",
    )

    def idx(a, b):
        return a * g.n + b

    names = [f"({f.names[a]},{g.names[b]})" for a in range(f.n) for b in range(g.n)]
    pairs = [(a, b) for a in range(f.n) for b in range(g.n)]
    leq = [
        [f.leq[a1][a2] and g.leq[b1][b2] for (a2, b2) in pairs] for (a1, b1) in pairs
    ]
    meet = [
        [idx(f.meet[a1][a2], g.meet[b1][b2]) for (a2, b2) in pairs]
        for (a1, b1) in pairs
    ]
    join = [
        [idx(f.join[a1][a2], g.join[b1][b2]) for (a2, b2) in pairs]
        for (a1, b1) in pairs
    ]
    imp = [
        [idx(f.imp[a1][a2], g.imp[b1][b2]) for (a2, b2) in pairs]
        for (a1, b1) in pairs
    ]
    frame = Frame(
        names,
        leq,
        meet,
        join,
        imp,
        idx(f.bottom, g.bottom),
        idx(f.top, g.top),
        label or f"product:{f.label},{g.label}",
    )
    _validate_frame(frame)
    return frame


def from_cover_relation(covers, names=None, label: str = "covers") -> Frame:
    """Build a frame from `a < b` cover pairs.

    Derives the reflexive-transitive order, computes meets/joins by scanning
    bounds, rejects non-lattices and non-distributive lattices with witnesses,
    and fills the residuum table by exhaustive join of {c : a /\\ c <= b}.
    """
    if names is None:
        seen = []
        for a, b in covers:
            for x in (a, b):
                if x not in seen:
                    seen.append(x)
        names = sorted(seen, key=str)
    names = list(names)
    if not names:
        raise InvalidParameterError("cover relation has no elements")
    index = {x: i for i, x in enumerate(names)}
    n = len(names)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in covers:
        if a not in index or b not in index:
            raise InvalidParameterError(f"cover pair ({a!r},{b!r}) uses unknown element")
        leq[index[a]][index[b]] = True
    # Warshall closure
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_i, row_k = leq[i], leq[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise InvalidParameterError(
                    f"cover relation has a cycle through {names[i]!r} and {names[j]!r}"
                )

    def greatest(candidates):
        for c in candidates:
            if all(leq[d][c] for d in candidates):
                return c
        return None

    def least(candidates):
        for c in candidates:
            if all(leq[c][d] for d in candidates):
                return c
        return None

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            lower = [k for k in range(n) if leq[k][i] and leq[k][j]]
            upper = [k for k in range(n) if leq[i][k] and leq[j][k]]
            m = greatest(lower)
            u = least(upper)
            if m is None or u is None:
                which = "meet" if m is None else "join"
                raise NotALatticeError(
                    f"{names[i]!r} and {names[j]!r} have no {which}",
                    witness=(names[i], names[j]),
                )
            meet[i][j] = m
            join[i][j] = u
    bottom = least(list(range(n)))
    top = greatest(list(range(n)))
    if bottom is None or top is None:
        raise NotALatticeError("lattice has no bottom or top element")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    raise NotDistributiveError(
                        "distributivity fails at "
                        f"a={names[a]}, b={names[b]}, c={names[c]}",
                        witness=(names[a], names[b], names[c]),
                    )
    imp = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = bottom
            for c in range(n):
                if leq[meet[a][c]][b]:
                    acc = join[acc][c]
            imp[a][b] = acc
    frame = Frame([str(x) for x in names], leq, meet, join, imp, bottom, top, label)
    _validate_frame(frame)
    return frame


def _validate_frame(frame: Frame) -> None:
    """Raise unless the tables describe a frame (order, bounds, adjunction)."""
    witness = _frame_violation(frame)
    if witness is not None:
        raise InvalidParameterError(f"not a frame: {witness}")


def _frame_violation(frame: Frame) -> str | None:
    n, leq = frame.n, frame.leq
    for i in range(n):
        if not leq[i][i]:
            return f"order not reflexive at {frame.names[i]}"
        if not leq[frame.bottom][i] or not leq[i][frame.top]:
            return f"bounds wrong at {frame.names[i]}"
    for i in range(n):
        for j in range(n):
            if leq[i][j] and leq[j][i] and i != j:
                return f"order not antisymmetric at ({frame.names[i]},{frame.names[j]})"
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    return (
                        "order not transitive at "
                        f"({frame.names[i]},{frame.names[j]},{frame.names[k]})"
                    )
    for i in range(n):
        for j in range(n):
            m, u = frame.meet[i][j], frame.join[i][j]
            if not (leq[m][i] and leq[m][j]) or not (leq[i][u] and leq[j][u]):
                return f"meet/join not bounds at ({frame.names[i]},{frame.names[j]})"
            for k in range(n):
                if leq[k][i] and leq[k][j] and not leq[k][m]:
                    return f"meet not greatest at ({frame.names[i]},{frame.names[j]})"
                if leq[i][k] and leq[j][k] and not leq[u][k]:
                    return f"join not least at ({frame.names[i]},{frame.names[j]})"
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if leq[c][frame.imp[a][b]] != leq[frame.meet[a][c]][b]:
                    return (
                        "adjunction fails at "
                        f"a={frame.names[a]}, b={frame.names[b]}, c={frame.names[c]}"
                    )
    return None


def _iter_subsets(n: int):
    for mask in range(1 << n):
        yield [i for i in range(n) if mask >> i & 1]


def _subset_modes(frame: Frame, caps: Caps, seed: int):
    """Subsets to quantify over and the report mode for subset laws."""
    if frame.n <= caps.max_subset_exact:
        return list(_iter_subsets(frame.n)), EXHAUSTIVE
    rng = random.Random(seed)
    subsets = [[], list(range(frame.n))]
    subsets += [[i] for i in range(frame.n)]
    subsets += [[i, j] for i in range(frame.n) for j in range(i + 1, frame.n)]
    for _ in range(caps.random_subset_samples):
        size = rng.randrange(frame.n + 1)
        subsets.append(sorted(rng.sample(range(frame.n), size)))
    return subsets, sampled(len(subsets))


def check_frame_laws(
    frame: Frame, caps: Caps = DEFAULT_CAPS, seed: int = 0
) -> VerificationReport:
    """Verify the residuation laws, adjunction and infinite distributivity.

    Triple-quantified laws run over all element tuples.  Subset-quantified
    laws enumerate all 2^|L| subsets up to caps.max_subset_exact and fall back
    to seeded samples above it.  The two family-pair laws use a reachable-state
    fixpoint that covers every finite family exactly.
    """
    report = VerificationReport("frame", {"frame": frame.label})
    n = frame.n
    rng = range(n)
    leq, meet, join, imp = frame.leq, frame.meet, frame.join, frame.imp
    nm = frame.names

    def witness(**kw):
        return ", ".join(f"{k}={nm[v]}" if isinstance(v, int) else f"{k}={v}"
                         for k, v in kw.items())

    def scan_pairs(law, pred):
        def run():
            for a in rng:
                for b in rng:
                    if not pred(a, b):
                        return witness(a=a, b=b)
            return None

        report.run(law, frame.label, EXHAUSTIVE, run)

    def scan_triples(law, pred):
        def run():
            for a in rng:
                for b in rng:
                    for c in rng:
                        if not pred(a, b, c):
                            return witness(a=a, b=b, c=c)
            return None

        report.run(law, frame.label, EXHAUSTIVE, run)

    report.run(
        "frame.lattice-structure",
        frame.label,
        EXHAUSTIVE,
        lambda: _frame_violation(frame),
    )
    scan_pairs("heyting.01", lambda a, b: (imp[a][b] == frame.top) == leq[a][b])
    report.run(
        "heyting.02",
        frame.label,
        EXHAUSTIVE,
        lambda: next(
            (witness(a=a) for a in rng if imp[frame.top][a] != a), None
        ),
    )
    scan_pairs("heyting.03", lambda a, b: meet[a][imp[a][b]] == meet[a][b])
    scan_pairs(
        "heyting.04",
        lambda a, b: leq[b][imp[a][meet[a][b]]] and leq[a][imp[imp[a][b]][b]],
    )
    scan_triples(
        "heyting.05", lambda a, b, c: leq[meet[imp[a][b]][imp[b][c]]][imp[a][c]]
    )

    subsets, subset_mode = _subset_modes(frame, caps, seed)

    def run_06():
        for s in subsets:
            j = frame.join_all(s)
            for b in rng:
                if imp[j][b] != frame.meet_all(imp[a][b] for a in s):
                    return f"S={{{','.join(nm[a] for a in s)}}}, b={nm[b]}"
        return None

    report.run("heyting.06", frame.label, subset_mode, run_06)

    def run_07():
        for s in subsets:
            m = frame.meet_all(s)
            for a in rng:
                if imp[a][m] != frame.meet_all(imp[a][b] for b in s):
                    return f"a={nm[a]}, S={{{','.join(nm[b] for b in s)}}}"
        return None

    report.run("heyting.07", frame.label, subset_mode, run_07)

    def family_states(combine_sides):
        # Reachable (side_a, side_c, meet of implications) triples over all
        # finite families of pairs; combine_sides folds one pair into a state.
        init = combine_sides(None, None)
        states = {init}
        frontier = [init]
        while frontier:
            state = frontier.pop()
            for a in rng:
                for c in rng:
                    nxt = combine_sides(state, (a, c))
                    if nxt not in states:
                        states.add(nxt)
                        frontier.append(nxt)
        return states

    def run_08():
        def step(state, pair):
            if state is None and pair is None:
                return (frame.top, frame.top, frame.top)
            ma, mc, mi = state
            a, c = pair
            return (meet[ma][a], meet[mc][c], meet[mi][imp[a][c]])

        for ma, mc, mi in sorted(family_states(step)):
            if not leq[mi][imp[ma][mc]]:
                return f"meet(a_i)={nm[ma]}, meet(c_i)={nm[mc]}, meet(a_i->c_i)={nm[mi]}"
        return None

    report.run("heyting.08", frame.label, EXHAUSTIVE, run_08)

    def run_09():
        def step(state, pair):
            if state is None and pair is None:
                return (frame.bottom, frame.bottom, frame.top)
            ja, jc, mi = state
            a, c = pair
            return (join[ja][a], join[jc][c], meet[mi][imp[a][c]])

        for ja, jc, mi in sorted(family_states(step)):
            if not leq[mi][imp[ja][jc]]:
                return f"join(a_i)={nm[ja]}, join(c_i)={nm[jc]}, meet(a_i->c_i)={nm[mi]}"
        return None

    report.run("heyting.09", frame.label, EXHAUSTIVE, run_09)

    scan_triples(
        "heyting.10", lambda a, b, c: leq[imp[a][b]][imp[imp[c][a]][imp[c][b]]]
    )
    scan_triples(
        "heyting.11", lambda a, b, c: leq[imp[b][a]][imp[imp[a][c]][imp[b][c]]]
    )
    scan_triples(
        "heyting.12",
        lambda a, b, c: imp[a][imp[b][c]] == imp[meet[a][b]][c]
        and imp[meet[a][b]][c] == imp[b][imp[a][c]],
    )
    scan_triples(
        "heyting.13", lambda a, b, c: leq[imp[b][c]][imp[meet[a][b]][imp[a][c]]]
    )
    scan_triples(
        "heyting.adjunction",
        lambda a, b, c: leq[c][imp[a][b]] == leq[meet[a][c]][b],
    )

    def run_dist():
        for s in subsets:
            j = frame.join_all(s)
            for a in rng:
                if meet[a][j] != frame.join_all(meet[a][x] for x in s):
                    return f"a={nm[a]}, S={{{','.join(nm[x] for x in s)}}}"
        return None

    report.run("heyting.inf-distributivity", frame.label, subset_mode, run_dist)
    return report


def frames_isomorphic(f: Frame, g: Frame) -> bool:
    """Order-isomorphism test by pruned bijection search; test helper only."""
    if f.n != g.n:
        return False
    if f.n > 8:
        raise ResourceLimitError("isomorphism search limited to 8 elements",
                                 stage="frames_isomorphic")

    def signature(frame, i):
        down = sum(frame.leq[j][i] for j in range(frame.n))
        up = sum(frame.leq[i][j] for j in range(frame.n))
        return (down, up)

    sig_f = [signature(f, i) for i in range(f.n)]
    sig_g = [signature(g, i) for i in range(g.n)]
    if sorted(sig_f) != sorted(sig_g):
        return False
    candidates = [
        [j for j in range(g.n) if sig_g[j] == sig_f[i]] for i in range(f.n)
    ]
    for perm in itertools.product(*candidates):
        if len(set(perm)) != f.n:
            continue
        if all(
            f.leq[i][j] == g.leq[perm[i]][perm[j]]
            for i in range(f.n)
            for j in range(f.n)
        ):
            return True
    return False
