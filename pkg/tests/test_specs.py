import json

import pytest

from latcheck.errors import InvalidParameterError, NotDistributiveError
from latcheck.frame import frames_isomorphic, make_chain, make_powerset
from latcheck.specs import (
    parse_covers_file,
    parse_frame_spec,
    parse_order_block,
    parse_order_spec,
    parse_space_block,
    parse_space_spec,
    parse_witness_file,
)


def test_parse_chain_and_powerset():
    assert parse_frame_spec("chain:4").n == 4
    assert parse_frame_spec("powerset:2").n == 4


def test_parse_product():
    f = parse_frame_spec("product:chain:2,chain:3")
    assert f.n == 6
    assert frames_isomorphic(parse_frame_spec("product:chain:2,chain:2"),
                             make_powerset(2))


def test_parse_nested_product():
    f = parse_frame_spec("product:product:chain:2,chain:2,chain:2")
    assert f.n == 8


def test_parse_frame_errors():
    for bad in ("chain:x", "nonsense", "product:chain:2", "powerset:"):
        with pytest.raises(InvalidParameterError):
            parse_frame_spec(bad)


def test_covers_file_roundtrip(tmp_path):
    path = tmp_path / "chain.cov"
    path.write_text("# three-element chain\n0 < m\nm < 1\n")
    pairs = parse_covers_file(str(path))
    assert pairs == [("0", "m"), ("m", "1")]
    frame = parse_frame_spec(f"covers:{path}")
    assert frames_isomorphic(frame, make_chain(3))


def test_covers_file_m3_rejected(tmp_path):
    path = tmp_path / "m3.cov"
    path.write_text("0 < a\n0 < b\n0 < c\na < 1\nb < 1\nc < 1\n")
    with pytest.raises(NotDistributiveError):
        parse_frame_spec(f"covers:{path}")


def test_covers_file_bad_line(tmp_path):
    path = tmp_path / "bad.cov"
    path.write_text("a <= b\n")
    with pytest.raises(InvalidParameterError):
        parse_covers_file(str(path))


def test_space_presets(chain2):
    assert len(parse_space_spec("point", chain2).carrier) == 1
    sp = parse_space_spec("sierpinski", chain2)
    assert len(sp.opens) == 3
    assert len(parse_space_spec("discrete:2", chain2).opens) == 4
    assert len(parse_space_spec("indiscrete:2", chain2).opens) == 2


def test_space_block_inline_literal():
    text = """space {
        points: [x, y];
        frame: chain:3;
        generators: [{y: 1}];
    }"""
    space, gens = parse_space_block(text)
    assert len(space.carrier) == 2
    assert len(gens) == 1
    assert gens[0].values == (0, 2)
    assert len(space.opens) == 6


def test_space_block_named_generator():
    text = """space {
        points: [x, y];
        frame: chain:3;
        generators: [g];
        g = {y: m, x: 0}
    }"""
    space, gens = parse_space_block(text)
    assert gens[0].values == (0, 1)


def test_space_block_defaults_to_bottom():
    text = """space {
        points: [x, y, z];
        frame: chain:2;
        generators: [{z: 1}];
    }"""
    _, gens = parse_space_block(text)
    assert gens[0].values == (0, 0, 1)


def test_space_file(tmp_path, chain3):
    path = tmp_path / "inst.space"
    path.write_text("space { points: [x, y]; frame: chain:3; generators: [{y: 1}]; }")
    space = parse_space_spec(str(path), chain3)
    assert len(space.opens) == 6


def test_space_block_errors():
    with pytest.raises(InvalidParameterError):
        parse_space_block("space { points: [x] }")
    with pytest.raises(InvalidParameterError):
        parse_space_block("space { points: [x]; frame: chain:2; generators: [g]; }")
    with pytest.raises(InvalidParameterError):
        parse_space_block(
            "space { points: [x]; frame: chain:2; generators: [{y: 1}]; }"
        )


def test_order_presets():
    order, label = parse_order_spec("selfL:chain:3")
    assert order.size == 3
    order, _ = parse_order_spec("powerset-order:chain:2,2")
    assert order.size == 4
    order, _ = parse_order_spec("crisp-chain:3")
    assert order.size == 3
    order, _ = parse_order_spec("crisp-diamond")
    assert order.size == 4


def test_order_block():
    text = """order {
        points: [a, b];
        frame: chain:2;
        e: [[1, 1], [0, 1]];
    }"""
    order = parse_order_block(text)
    assert order.e == ((1, 1), (0, 1))


def test_order_block_rejects_non_order():
    text = """order {
        points: [a, b];
        frame: chain:2;
        e: [[1, 1], [1, 1]];
    }"""
    with pytest.raises(InvalidParameterError):
        parse_order_block(text)


def test_witness_file_roundtrip(tmp_path, chain2):
    from latcheck.algebra import check_second_theorem, structure_map_r
    from latcheck.filters import enumerate_filters
    from latcheck.lorder import self_order
    from latcheck.scott import scott_topology

    order = self_order(make_chain(2))
    space = scott_topology(order)
    fs = enumerate_filters(space)
    witness = structure_map_r(order, space, fs)

    # the Scott opens of selfL(chain2) are generated by the identity subset
    doc = {
        "points": [0, 1],
        "frame": "chain:2",
        "generators": [{"1": "1"}],
        "r": {str(i): witness.r[i] for i in range(len(fs.points))},
    }
    path = tmp_path / "witness.json"
    path.write_text(json.dumps(doc))
    loaded = parse_witness_file(str(path))
    assert loaded.provenance == "user-supplied"
    report = check_second_theorem(loaded, label="from-file")
    assert report.all_passed(), report.to_text()


def test_witness_file_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    with pytest.raises(InvalidParameterError):
        parse_witness_file(str(path))
    path.write_text("not json")
    with pytest.raises(InvalidParameterError):
        parse_witness_file(str(path))
