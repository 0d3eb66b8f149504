"""Parsers for the instance grammars used by the CLI and instance files.

Frame specs:    chain:<n> | powerset:<n> | product:<spec>,<spec> | covers:<file>
Space specs:    point | sierpinski | discrete:<n> | indiscrete:<n> | <file>
Order specs:    selfL:<frame-spec> | powerset-order:<frame-spec>,<n>
                | crisp-chain:<n> | crisp-diamond | <file>
Covers files:   one `a < b` pair per line.
Space files:    space { points: [..]; frame: <frame-spec>;
                        generators: [{point: element, ...}, name, ...];
                        name = {point: element, ...} }
Order files:    order { points: [..]; frame: <frame-spec>; e: [[..], ..] }
Witness files:  JSON with points/frame/generators plus "r" mapping filter
                indices (discovery order) to carrier points.
"""

from __future__ import annotations

import json
import os
import re

from .caps import DEFAULT_CAPS, Caps
from .errors import InvalidParameterError
from .frame import Frame, from_cover_relation, make_chain, make_powerset, make_product
from .lorder import LOrder, crisp_order, powerset_order, self_order
from .lset import LSubset
from .ltop import LTopSpace, discrete_space, generate_topology


def parse_frame_spec(text: str, caps: Caps = DEFAULT_CAPS, base_dir: str = ".") -> Frame:
    text = text.strip()
    if text.startswith("chain:"):
        return make_chain(_int_arg(text, "chain:"))
    if text.startswith("powerset:"):
        return make_powerset(_int_arg(text, "powerset:"), caps)
    if text.startswith("product:"):
        rest = text[len("product:"):]
        for i, ch in enumerate(rest):
            if ch != ",":
                continue
            left, right = rest[:i], rest[i + 1:]
            try:
                f = parse_frame_spec(left, caps, base_dir)
                g = parse_frame_spec(right, caps, base_dir)
            except InvalidParameterError:
                continue
            return make_product(f, g, caps)
        raise InvalidParameterError(f"cannot split product spec {text!r}")
    if text.startswith("covers:"):
        path = os.path.join(base_dir, text[len("covers:"):])
        return from_cover_relation(parse_covers_file(path), label=text)
    raise InvalidParameterError(f"unknown frame spec {text!r}")


def _int_arg(text: str, prefix: str) -> int:
    arg = text[len(prefix):]
    try:
        return int(arg)
    except ValueError:
        raise InvalidParameterError(f"{prefix} needs an integer, got {arg!r}") from None


def parse_covers_file(path: str):
    pairs = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                m = re.fullmatch(r"(\S+)\s*<\s*(\S+)", line)
                if not m:
                    raise InvalidParameterError(
                        f"{path}:{lineno}: expected 'a < b', got {line!r}"
                    )
                pairs.append((m.group(1), m.group(2)))
    except OSError as exc:
        raise InvalidParameterError(f"cannot read covers file {path}: {exc}") from None
    return pairs


def sierpinski_space(frame: Frame, caps: Caps = DEFAULT_CAPS) -> LTopSpace:
    carrier = ("x", "y")
    g = LSubset(frame, carrier, (frame.bottom, frame.top))
    return generate_topology(carrier, frame, [g], caps, label="sierpinski")


def point_space(frame: Frame, caps: Caps = DEFAULT_CAPS) -> LTopSpace:
    return generate_topology(("p",), frame, [], caps, label="point")


def indiscrete_space_n(frame: Frame, n: int, caps: Caps = DEFAULT_CAPS) -> LTopSpace:
    carrier = tuple(f"p{i}" for i in range(n))
    return generate_topology(carrier, frame, [], caps, label=f"indiscrete:{n}")


def discrete_space_n(frame: Frame, n: int, caps: Caps = DEFAULT_CAPS) -> LTopSpace:
    carrier = tuple(f"p{i}" for i in range(n))
    return discrete_space(carrier, frame, caps, label=f"discrete:{n}")


def space_generators(space_label: str, frame: Frame) -> list:
    """Generators of the named preset, for oracle re-derivation."""
    if space_label == "sierpinski":
        return [LSubset(frame, ("x", "y"), (frame.bottom, frame.top))]
    if space_label.startswith("discrete:"):
        n = int(space_label.split(":")[1])
        carrier = tuple(f"p{i}" for i in range(n))
        out = []
        for i in range(n):
            vals = tuple(frame.top if j == i else frame.bottom for j in range(n))
            out.append(LSubset(frame, carrier, vals))
        return out
    return []


def parse_space_spec(
    text: str, frame: Frame, caps: Caps = DEFAULT_CAPS, base_dir: str = "."
) -> LTopSpace:
    text = text.strip()
    if text == "point":
        return point_space(frame, caps)
    if text == "sierpinski":
        return sierpinski_space(frame, caps)
    if text.startswith("discrete:"):
        return discrete_space_n(frame, _int_arg(text, "discrete:"), caps)
    if text.startswith("indiscrete:"):
        return indiscrete_space_n(frame, _int_arg(text, "indiscrete:"), caps)
    path = os.path.join(base_dir, text)
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            space, _ = parse_space_block(fh.read(), caps, base_dir, label=text)
        return space
    raise InvalidParameterError(f"unknown space spec {text!r}")


def _split_top_level(text: str, sep: str = ","):
    parts, depth, buf = [], 0, []
    for ch in text:
        if ch in "{[(":
            depth += 1
        elif ch in "}])":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
    tail = "".join(buf).strip()
    if tail:
        parts.append(tail)
    return parts


def _parse_lsubset_literal(text: str, frame: Frame, carrier) -> LSubset:
    """`{point: element, ...}` with omitted points defaulting to bottom."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise InvalidParameterError(f"expected an L-subset literal, got {text!r}")
    body = text[1:-1].strip()
    values = {p: frame.bottom for p in carrier}
    if body:
        for item in _split_top_level(body):
            if ":" not in item:
                raise InvalidParameterError(f"bad L-subset entry {item!r}")
            point, element = (s.strip() for s in item.split(":", 1))
            if point not in values:
                raise InvalidParameterError(f"unknown point {point!r} in literal")
            values[point] = frame.element_by_name(element)
    return LSubset(frame, tuple(carrier), tuple(values[p] for p in carrier))


def _parse_block(text: str, keyword: str) -> dict:
    text = text.strip()
    m = re.fullmatch(rf"{keyword}\s*\{{(.*)\}}", text, re.S)
    if not m:
        raise InvalidParameterError(f"expected `{keyword} {{ ... }}`")
    fields: dict[str, str] = {}
    for stmt in _split_top_level(m.group(1), sep=";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        if ":" in stmt and ("=" not in stmt or stmt.index(":") < stmt.index("=")):
            key, value = stmt.split(":", 1)
            fields[key.strip()] = value.strip()
        elif "=" in stmt:
            key, value = stmt.split("=", 1)
            fields.setdefault("__named__", {})
            fields["__named__"][key.strip()] = value.strip()
        else:
            raise InvalidParameterError(f"cannot parse statement {stmt!r}")
    return fields


def _parse_list(text: str):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise InvalidParameterError(f"expected a [..] list, got {text!r}")
    inner = text[1:-1].strip()
    return _split_top_level(inner) if inner else []


def parse_space_block(
    text: str, caps: Caps = DEFAULT_CAPS, base_dir: str = ".", label: str = "space"
):
    """Parse a `space { ... }` block; returns (space, generators)."""
    fields = _parse_block(text, "space")
    for required in ("points", "frame"):
        if required not in fields:
            raise InvalidParameterError(f"space block is missing `{required}`")
    carrier = tuple(_parse_list(fields["points"]))
    frame = parse_frame_spec(fields["frame"], caps, base_dir)
    named = fields.get("__named__", {})
    generators = []
    for item in _parse_list(fields.get("generators", "[]")):
        if item.startswith("{"):
            generators.append(_parse_lsubset_literal(item, frame, carrier))
        elif item in named:
            generators.append(_parse_lsubset_literal(named[item], frame, carrier))
        else:
            raise InvalidParameterError(f"generator {item!r} is not defined")
    space = generate_topology(carrier, frame, generators, caps, label=label)
    return space, generators


DIAMOND_COVERS = [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]


def parse_order_spec(
    text: str, caps: Caps = DEFAULT_CAPS, base_dir: str = "."
) -> tuple[LOrder, str]:
    text = text.strip()
    if text.startswith("selfL:"):
        frame = parse_frame_spec(text[len("selfL:"):], caps, base_dir)
        return self_order(frame), text
    if text.startswith("powerset-order:"):
        rest = text[len("powerset-order:"):]
        parts = _split_top_level(rest)
        if len(parts) != 2:
            raise InvalidParameterError(
                f"powerset-order needs <frame-spec>,<n>, got {rest!r}"
            )
        frame = parse_frame_spec(parts[0], caps, base_dir)
        n = int(parts[1])
        carrier = tuple(f"p{i}" for i in range(n))
        return powerset_order(frame, carrier, caps), text
    if text.startswith("crisp-chain:"):
        n = _int_arg(text, "crisp-chain:")
        frame = make_chain(2)
        carrier = tuple(f"c{i}" for i in range(n))
        pairs = [
            (carrier[i], carrier[j]) for i in range(n) for j in range(i + 1, n)
        ]
        return crisp_order(frame, carrier, pairs), text
    if text == "crisp-diamond":
        frame = make_chain(2)
        carrier = ("0", "a", "b", "1")
        pairs = [(x, y) for x, y in DIAMOND_COVERS] + [("0", "1")]
        return crisp_order(frame, carrier, pairs), text
    path = os.path.join(base_dir, text)
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return parse_order_block(fh.read(), caps, base_dir), text
    raise InvalidParameterError(f"unknown order spec {text!r}")


def parse_order_block(text: str, caps: Caps = DEFAULT_CAPS, base_dir: str = ".") -> LOrder:
    fields = _parse_block(text, "order")
    for required in ("points", "frame", "e"):
        if required not in fields:
            raise InvalidParameterError(f"order block is missing `{required}`")
    carrier = tuple(_parse_list(fields["points"]))
    frame = parse_frame_spec(fields["frame"], caps, base_dir)
    rows = _parse_list(fields["e"])
    if len(rows) != len(carrier):
        raise InvalidParameterError("order matrix row count differs from points")
    e = []
    for row_text in rows:
        entries = _parse_list(row_text)
        if len(entries) != len(carrier):
            raise InvalidParameterError("order matrix is not square")
        e.append(tuple(frame.element_by_name(v) for v in entries))
    from .lorder import check_axioms

    order = LOrder(frame, carrier, tuple(e))
    axioms = check_axioms(order)
    if not axioms.all_passed():
        first = axioms.failures[0]
        raise InvalidParameterError(
            f"order matrix violates {first.law} at {first.witness}"
        )
    return order


def parse_witness_file(path: str, caps: Caps = DEFAULT_CAPS, base_dir: str = "."):
    """JSON witness: a space description plus the structure-map table."""
    from .algebra import AlgebraWitness
    from .filters import enumerate_filters

    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidParameterError(f"cannot read witness file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"witness file {path} is not valid JSON: {exc}") from None
    for required in ("points", "frame", "r"):
        if required not in data:
            raise InvalidParameterError(f"witness file is missing {required!r}")
    frame = parse_frame_spec(str(data["frame"]), caps, base_dir)
    carrier = tuple(data["points"])
    by_name = {str(p): p for p in carrier}
    generators = []
    for g in data.get("generators", []):
        if not isinstance(g, dict):
            raise InvalidParameterError("witness generators must be objects")
        values = {p: frame.bottom for p in carrier}
        for point, element in g.items():
            if point not in by_name:
                raise InvalidParameterError(f"unknown point {point!r} in generator")
            values[by_name[point]] = frame.element_by_name(str(element))
        generators.append(
            LSubset(frame, carrier, tuple(values[p] for p in carrier))
        )
    space = generate_topology(
        carrier, frame, generators, caps, label=os.path.basename(path)
    )
    fs = enumerate_filters(space, caps)
    r_table = data["r"]
    r = []
    for i in range(len(fs.points)):
        key = str(i)
        if key not in r_table:
            raise InvalidParameterError(
                f"witness r-table is missing filter index {i} "
                f"(the space has {len(fs.points)} filters)"
            )
        point = r_table[key]
        if point not in carrier:
            if str(point) in by_name:
                point = by_name[str(point)]
            else:
                raise InvalidParameterError(
                    f"r({i}) = {point!r} is not a carrier point"
                )
        r.append(point)
    return AlgebraWitness(space, fs, tuple(r), "user-supplied")
