"""Command-line front end: instance parsing, suite orchestration, reports.

Exit codes: 0 all checks passed, 1 at least one law failed, 2 a resource cap
was hit, 3 the configuration or an instance spec could not be parsed.
"""

from __future__ import annotations

import argparse
import sys

from .caps import DEFAULT_CAPS, Caps
from .errors import InvalidParameterError, LatcheckError, PreconditionError, ResourceLimitError
from .report import VerificationReport

SUITES = (
    "frame",
    "topology",
    "order",
    "scott",
    "filter",
    "monad",
    "algebra",
    "roundtrip",
    "degeneration",
    "all",
)

EXIT_OK = 0
EXIT_LAW_FAILURE = 1
EXIT_RESOURCE = 2
EXIT_CONFIG = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latcheck", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--frame", help="frame spec (chain:<n>, powerset:<n>, "
                                       "product:<spec>,<spec>, covers:<file>)")
        p.add_argument("--space", help="space spec (point, sierpinski, "
                                       "discrete:<n>, indiscrete:<n>, or a file)")
        p.add_argument("--order", help="order spec (selfL:<frame>, "
                                       "powerset-order:<frame>,<n>, crisp-chain:<n>, "
                                       "crisp-diamond, or a file)")
        p.add_argument("--witness", help="algebra witness file (JSON)")
        p.add_argument("--exhaustive", action="store_true",
                       help="fail instead of falling back to sampling")
        p.add_argument("--sample", type=int, metavar="N", default=100,
                       help="sample target for levels beyond the caps")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--caps", metavar="FILE", help="JSON file of cap overrides")
        p.add_argument("--timings", action="store_true",
                       help="include timings in JSON output (breaks byte-for-byte "
                            "reproducibility)")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES)
    add_common(verify)

    enum = sub.add_parser("enumerate", help="enumerate structures")
    enum.add_argument("what", choices=("filters",))
    add_common(enum)

    dump = sub.add_parser("dump", help="dump derived structures")
    dump.add_argument("what", choices=("scott", "waybelow"))
    add_common(dump)

    return parser


def _load_caps(args) -> Caps:
    caps = DEFAULT_CAPS
    if args.caps:
        caps = Caps.from_file(args.caps)
    return caps


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InvalidParameterError(
                f"this command needs --{name}"
            )


def run_suite(args) -> VerificationReport:
    from . import algebra, frame, lorder, ltop, monadlaws, oracle, scott
    from .filters import check_filter_laws, enumerate_filters
    from .instances import (
        filter_suite_spaces,
        monad_suite_spaces,
        orders_for_frame,
        registered_spaces,
    )
    from .specs import parse_frame_spec, parse_order_spec, parse_space_spec, parse_witness_file, space_generators

    caps = _load_caps(args)
    suite = args.suite
    report = VerificationReport(
        suite,
        {
            "suite": suite,
            "frame": args.frame,
            "space": args.space,
            "order": args.order,
            "witness": args.witness,
            "seed": args.seed,
            "sample": args.sample,
        },
    )

    def the_frame():
        _require(args, "frame")
        return parse_frame_spec(args.frame, caps)

    def spaces_for(fr):
        if args.space:
            sp = parse_space_spec(args.space, fr, caps)
            return [(sp, space_generators(sp.label, fr), None)]
        return [
            (inst.space, list(inst.generators), inst.expect_t0)
            for inst in registered_spaces(fr, caps)
        ]

    def orders_in_scope():
        if args.order:
            order, label = parse_order_spec(args.order, caps)
            return [(label, order)]
        fr = the_frame()
        return orders_for_frame(fr, caps)

    if suite == "frame":
        report.extend(frame.check_frame_laws(the_frame(), caps, args.seed))

    elif suite == "topology":
        fr = the_frame()
        for sp, _, expect_t0 in spaces_for(fr):
            report.extend(ltop.check_topology_laws(sp, caps, expect_t0=expect_t0))

    elif suite == "order":
        for label, order in orders_in_scope():
            report.extend(lorder.check_order_suite(order, caps, label))

    elif suite == "scott":
        for label, order in orders_in_scope():
            report.extend(scott.check_scott_suite(order, caps, label))

    elif suite == "filter":
        fr = the_frame()
        for sp, _, _ in spaces_for(fr):
            fs = enumerate_filters(sp, caps)
            report.extend(check_filter_laws(fs, caps))

    elif suite == "monad":
        fr = the_frame()
        if args.space:
            spaces = [parse_space_spec(args.space, fr, caps)]
        else:
            spaces = monad_suite_spaces(fr, caps)
        report.extend(
            monadlaws.check_monad_suite(
                spaces, caps, seed=args.seed, sample_target=args.sample
            )
        )

    elif suite == "algebra":
        if args.witness:
            witness = parse_witness_file(args.witness, caps)
            report.extend(algebra.check_second_theorem(witness, caps, args.seed))
        else:
            for label, order in orders_in_scope():
                report.extend(
                    algebra.check_first_theorem(order, caps, args.seed, label)
                )

    elif suite == "roundtrip":
        for label, order in orders_in_scope():
            report.extend(algebra.roundtrip(order, caps, args.seed, label))

    elif suite == "degeneration":
        fr = parse_frame_spec(args.frame, caps) if args.frame else None
        if args.space:
            _require(args, "frame")
            sp = parse_space_spec(args.space, fr, caps)
            gens = space_generators(sp.label, fr)
            report.extend(oracle.degeneration_check(space=sp, generators=gens, caps=caps))
        if args.order:
            order, label = parse_order_spec(args.order, caps)
            report.extend(oracle.degeneration_check(order=order, caps=caps, label=label))
        if not args.space and not args.order:
            from .frame import make_chain
            from .instances import orders_for_frame as off

            c2 = fr if fr is not None else make_chain(2)
            for inst in registered_spaces(c2, caps):
                report.extend(
                    oracle.degeneration_check(
                        space=inst.space, generators=list(inst.generators), caps=caps
                    )
                )
            for label, order in off(c2, caps):
                report.extend(oracle.degeneration_check(order=order, caps=caps, label=label))

    elif suite == "all":
        fr = the_frame()
        report.extend(frame.check_frame_laws(fr, caps, args.seed))
        for sp, gens, expect_t0 in spaces_for(fr):
            report.extend(ltop.check_topology_laws(sp, caps, expect_t0=expect_t0))
        for label, order in orders_for_frame(fr, caps):
            report.extend(lorder.check_order_suite(order, caps, label))
            report.extend(scott.check_scott_suite(order, caps, label))
        for sp, gens, _ in spaces_for(fr):
            k = len(sp.opens)
            if fr.n <= caps.max_filter_frame and fr.n ** k <= caps.max_filter_search:
                fs = enumerate_filters(sp, caps)
                report.extend(check_filter_laws(fs, caps))
        if args.space:
            monad_spaces = [parse_space_spec(args.space, fr, caps)]
        else:
            monad_spaces = monad_suite_spaces(fr, caps)
        report.extend(
            monadlaws.check_monad_suite(
                monad_spaces, caps, seed=args.seed, sample_target=args.sample
            )
        )
        from .scott import is_continuous_lattice

        for label, order in orders_for_frame(fr, caps):
            if is_continuous_lattice(order, caps):
                report.extend(algebra.check_first_theorem(order, caps, args.seed, label))
                report.extend(algebra.roundtrip(order, caps, args.seed, label))
        if fr.n == 2:
            for sp, gens, _ in spaces_for(fr):
                report.extend(
                    oracle.degeneration_check(space=sp, generators=gens, caps=caps)
                )
            for label, order in orders_for_frame(fr, caps):
                report.extend(oracle.degeneration_check(order=order, caps=caps, label=label))

    return report


def run_enumerate(args) -> str:
    from .filters import enumerate_filters
    from .specs import parse_frame_spec, parse_space_spec

    caps = _load_caps(args)
    _require(args, "frame", "space")
    fr = parse_frame_spec(args.frame, caps)
    sp = parse_space_spec(args.space, fr, caps)
    fs = enumerate_filters(sp, caps)
    if args.format == "json":
        import json

        doc = {
            "schema": "latcheck-filters/1",
            "space": sp.label,
            "opens": [a.render() for a in sp.opens],
            "filters": [
                {"index": i, "values": [fr.names[v] for v in u.values]}
                for i, u in enumerate(fs.points)
            ],
        }
        return json.dumps(doc, indent=2)
    lines = [f"{len(fs.points)} open filters of {sp.label} over {fr.label}"]
    lines.append("columns: " + " | ".join(a.render() for a in sp.opens))
    for i, u in enumerate(fs.points):
        lines.append(f"  [{i}] " + " | ".join(fr.names[v] for v in u.values))
    return "\n".join(lines)


def run_dump(args) -> str:
    from .scott import scott_topology, way_below
    from .specs import parse_order_spec

    caps = _load_caps(args)
    _require(args, "order")
    order, label = parse_order_spec(args.order, caps)
    fr = order.frame
    if args.what == "scott":
        space = scott_topology(order, caps, label=f"scott({label})")
        if args.format == "json":
            import json

            doc = {
                "schema": "latcheck-scott/1",
                "order": label,
                "opens": [
                    {str(p): fr.names[v] for p, v in zip(a.carrier, a.values)}
                    for a in space.opens
                ],
            }
            return json.dumps(doc, indent=2)
        lines = [f"{len(space.opens)} Scott opens of {label}"]
        lines += ["  " + a.render() for a in space.opens]
        return "\n".join(lines)
    wb = way_below(order, caps)
    if args.format == "json":
        import json

        doc = {
            "schema": "latcheck-waybelow/1",
            "order": label,
            "table": {
                str(x): {
                    str(y): fr.names[wb.table[xi][yi]]
                    for yi, y in enumerate(order.carrier)
                }
                for xi, x in enumerate(order.carrier)
            },
        }
        return json.dumps(doc, indent=2)
    lines = [f"way-below table of {label} (rows approximate the row point)"]
    for xi, x in enumerate(order.carrier):
        cells = ", ".join(
            f"{y}:{fr.names[wb.table[xi][yi]]}" for yi, y in enumerate(order.carrier)
        )
        lines.append(f"  {x}: {cells}")
    return "\n".join(lines)


def main(argv=None) -> int:
    from .errors import NotALatticeError, NotDistributiveError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = run_suite(args)
            text = (
                report.to_json(include_timing=args.timings)
                if args.format == "json"
                else report.to_text()
            )
            print(text)
            return EXIT_OK if report.all_passed() else EXIT_LAW_FAILURE
        if args.command == "enumerate":
            print(run_enumerate(args))
            return EXIT_OK
        if args.command == "dump":
            print(run_dump(args))
            return EXIT_OK
    except (NotALatticeError, NotDistributiveError) as exc:
        # a user-supplied structure that fails the lattice laws is a law
        # failure with a witness, not a configuration problem
        report = VerificationReport(getattr(args, "suite", args.command))
        law = (
            "frame.distributivity"
            if isinstance(exc, NotDistributiveError)
            else "frame.lattice-structure"
        )
        report.add(law, args.frame or "input", "exhaustive", False, witness=str(exc))
        print(
            report.to_json(include_timing=False)
            if args.format == "json"
            else report.to_text()
        )
        return EXIT_LAW_FAILURE
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvalidParameterError, PreconditionError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LatcheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LAW_FAILURE
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
