"""End-to-end runs of the command line driver."""

import io
import json
import random
from fractions import Fraction

import pytest

from unipavg import (
    QQ,
    NilMatrix,
    PolyRing,
    SectionTuple,
    bch,
    embed_simplex,
    exp_nilpotent,
    wav,
    wsym,
)
from unipavg.cli import _HANDLERS, main
from unipavg.errors import InvariantViolation
from unipavg import serialize
from unipavg.fixtures import (
    cover_local_sections,
    heisenberg_span,
    six_point_cover,
    sqrt2_orbit,
    two_point_tuple,
)
from helpers import rand_tuple


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    out = json.loads(captured.out) if captured.out.strip() else None
    err = json.loads(captured.err) if captured.err.strip() else None
    return code, out, err


# ---------------------------------------------------------------------------
# wav
# ---------------------------------------------------------------------------

def test_wav_roundtrip(tmp_path, capsys):
    t = two_point_tuple()
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, out, err = run(capsys, ["wav", "--input", path])
    assert code == 0 and err is None
    assert out["q"] == 1
    assert serialize.uni_from_json(QQ, out["wav"]) == wav(t)


def test_wav_with_vertex_weights(tmp_path, capsys):
    t = two_point_tuple()
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, out, _ = run(capsys, ["wav", "--input", path, "--weights", "[0, 1]"])
    assert code == 0
    assert serialize.uni_from_json(QQ, out["evaluated"]) == t.sections[1]


def test_wav_weight_errors(tmp_path, capsys):
    t = two_point_tuple()
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, _, err = run(capsys, ["wav", "--input", path, "--weights",
                                '[{"num":1,"den":2},{"num":1,"den":4}]'])
    assert code == 2
    assert err["error"]["kind"] == "input-error"
    code, _, err = run(capsys, ["wav", "--input", path, "--weights", "[1]"])
    assert code == 2


def test_wav_iteration_override(tmp_path, capsys):
    t = two_point_tuple()
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, out, _ = run(capsys, ["wav", "--input", path, "--iterations", "3"])
    assert code == 0
    assert serialize.uni_from_json(QQ, out["wav"]) == wav(t)
    code, _, err = run(capsys, ["wav", "--input", path, "--iterations", "1"])
    assert code == 2
    assert err["error"]["kind"] == "input-error"


def test_wav_rejects_simplex_sections(tmp_path, capsys):
    rng = random.Random(701)
    heis = heisenberg_span()
    t = rand_tuple(rng, heis, 1)
    lifted = SectionTuple(heis, [embed_simplex(p, 1) for p in t.sections])
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(lifted))
    code, _, err = run(capsys, ["wav", "--input", path])
    assert code == 2


def test_wav_output_file(tmp_path, capsys):
    t = two_point_tuple()
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    out_path = tmp_path / "out.json"
    code = main(["wav", "--input", path, "--output", str(out_path)])
    capsys.readouterr()
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert serialize.uni_from_json(QQ, doc["wav"]) == wav(t)


def test_stdin_input(capsys, monkeypatch):
    t = two_point_tuple()
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(serialize.tuple_to_json(t))))
    code, out, _ = run(capsys, ["wav", "--input", "-"])
    assert code == 0
    assert out["q"] == 1


# ---------------------------------------------------------------------------
# wsym, exp, log, bch
# ---------------------------------------------------------------------------

def test_wsym_roundtrip(tmp_path, capsys):
    rng = random.Random(702)
    heis = heisenberg_span()
    t = rand_tuple(rng, heis, 1)
    lifted = SectionTuple(heis, [embed_simplex(p, 1) for p in t.sections])
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(lifted))
    code, out, _ = run(capsys, ["wsym", "--input", path])
    assert code == 0
    assert serialize.tuple_from_json(out) == wsym(lifted)


def test_wsym_rejects_constant_sections(tmp_path, capsys):
    rng = random.Random(703)
    t = rand_tuple(rng, heisenberg_span(), 1)
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, _, err = run(capsys, ["wsym", "--input", path])
    assert code == 2


def test_exp_log_inverse_through_cli(tmp_path, capsys):
    ring = PolyRing(QQ, 1)
    N = NilMatrix.from_entries(ring, 3, {(0, 1): ring.coordinate(0),
                                         (1, 2): ring.one(),
                                         (0, 2): ring.constant(Fraction(1, 3))})
    path = write_doc(tmp_path, "n.json", serialize.matrix_to_json(N))
    code, out, _ = run(capsys, ["exp", "--input", path])
    assert code == 0
    assert serialize.uni_from_json(QQ, out) == exp_nilpotent(N)
    path2 = write_doc(tmp_path, "u.json", out)
    code, out2, _ = run(capsys, ["log", "--input", path2])
    assert code == 0
    assert serialize.nil_from_json(QQ, out2) == N


def test_bch_through_cli(tmp_path, capsys):
    ring = PolyRing(QQ, 0)
    a = NilMatrix.from_entries(ring, 3, {(0, 1): 1})
    b = NilMatrix.from_entries(ring, 3, {(1, 2): 1})
    doc = {"a": serialize.matrix_to_json(a), "b": serialize.matrix_to_json(b)}
    path = write_doc(tmp_path, "ab.json", doc)
    code, out, _ = run(capsys, ["bch", "--input", path])
    assert code == 0
    assert serialize.nil_from_json(QQ, out) == bch(a, b)
    path = write_doc(tmp_path, "bad.json", {"a": serialize.matrix_to_json(a)})
    code, _, err = run(capsys, ["bch", "--input", path])
    assert code == 2


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

def build_sections_doc():
    cover = six_point_cover()
    span, locals_ = cover_local_sections()
    return {"field": serialize.field_to_json(QQ),
            "cover": serialize.cover_to_json(cover),
            "group": serialize.span_to_json(span),
            "locals": serialize.locals_to_json(locals_)}


def test_sections_build(tmp_path, capsys):
    path = write_doc(tmp_path, "cover.json", build_sections_doc())
    code, out, _ = run(capsys, ["sections", "--input", path, "--max-q", "2"])
    assert code == 0
    assert out["report"]["ok"] is True
    assert out["max_q"] == 2
    assert "0.1" in out["levels"]


def test_sections_validate_mode(tmp_path, capsys):
    path = write_doc(tmp_path, "cover.json", build_sections_doc())
    code, built, _ = run(capsys, ["sections", "--input", path, "--max-q", "2"])
    assert code == 0
    built.pop("report")
    path2 = write_doc(tmp_path, "built.json", built)
    code, out, _ = run(capsys, ["sections", "--input", path2, "--max-q", "2"])
    assert code == 0
    assert out["mode"] == "validate"
    assert out["report"]["ok"] is True


def test_sections_validate_catches_corruption(tmp_path, capsys):
    path = write_doc(tmp_path, "cover.json", build_sections_doc())
    code, built, _ = run(capsys, ["sections", "--input", path, "--max-q", "2"])
    built.pop("report")
    # tamper with one glued value: clear the level-1 datum at (0,1), point c
    poly = built["levels"]["0.1"]["c"]["entries"][0][1]
    poly["terms"] = [{"exp": [0], "coef": {"num": 9, "den": 1}}]
    path2 = write_doc(tmp_path, "broken.json", built)
    code, out, _ = run(capsys, ["sections", "--input", path2, "--max-q", "2"])
    assert code == 2
    assert out["report"]["ok"] is False
    named = [f["map"] for f in out["report"]["failures"] if f.get("map")]
    assert named and named[0].startswith(("d^", "s^"))


# ---------------------------------------------------------------------------
# galois
# ---------------------------------------------------------------------------

def test_galois_rational_point(tmp_path, capsys):
    from unipavg import rational_point

    orbit = sqrt2_orbit()
    path = write_doc(tmp_path, "orbit.json", serialize.orbit_to_json(orbit))
    code, out, _ = run(capsys, ["galois", "--input", path])
    assert code == 0
    assert serialize.uni_from_json(QQ, out["rational_point"]) == rational_point(orbit)


def test_galois_rejects_broken_orbit(tmp_path, capsys):
    orbit = sqrt2_orbit()
    doc = serialize.orbit_to_json(orbit)
    doc["points"] = doc["points"][:1]
    path = write_doc(tmp_path, "orbit.json", doc)
    code, _, err = run(capsys, ["galois", "--input", path])
    assert code == 2
    assert "closed" in err["error"]["message"]


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------

def test_figure_data_line(tmp_path, capsys):
    t = two_point_tuple()
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, out, _ = run(capsys, ["figure-data", "--input", path, "--resolution", "4"])
    assert code == 0
    assert out["resolution"] == 4 and len(out["samples"]) == 5
    # endpoints are the input sections: the grid starts at w = (0, 1)
    first, last = out["samples"][0], out["samples"][-1]
    assert first["weights"] == [{"num": 0, "den": 1}, {"num": 1, "den": 1}]
    assert last["weights"] == [{"num": 1, "den": 1}, {"num": 0, "den": 1}]
    a01 = serialize.scalar_from_json(QQ, first["entries"][0][1]["value"])
    assert a01 == t.sections[1].entry(0, 1).constant_value()
    b01 = serialize.scalar_from_json(QQ, last["entries"][0][1]["value"])
    assert b01 == t.sections[0].entry(0, 1).constant_value()
    # decimal advisory renders the exact value
    cell = out["samples"][2]["entries"][0][1]
    val = serialize.scalar_from_json(QQ, cell["value"]).as_fraction()
    assert cell["decimal"] == format(float(val), ".12g")


def test_figure_data_triangle_count(tmp_path, capsys):
    rng = random.Random(704)
    t = rand_tuple(rng, heisenberg_span(), 2)
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, out, _ = run(capsys, ["figure-data", "--input", path, "--resolution", "3"])
    assert code == 0
    assert len(out["samples"]) == 10     # C(3+2, 2)


def test_figure_data_rejections(tmp_path, capsys):
    rng = random.Random(705)
    t3 = rand_tuple(rng, heisenberg_span(), 3)
    path = write_doc(tmp_path, "t3.json", serialize.tuple_to_json(t3))
    code, _, err = run(capsys, ["figure-data", "--input", path])
    assert code == 2
    t1 = two_point_tuple()
    path = write_doc(tmp_path, "t1.json", serialize.tuple_to_json(t1))
    code, _, err = run(capsys, ["figure-data", "--input", path, "--resolution", "0"])
    assert code == 2


# ---------------------------------------------------------------------------
# failure plumbing
# ---------------------------------------------------------------------------

def test_invalid_json_and_missing_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, ["wav", "--input", str(bad)])
    assert code == 2
    assert err["error"]["kind"] == "input-error"
    code, _, err = run(capsys, ["wav", "--input", str(tmp_path / "absent.json")])
    assert code == 2


def test_invariant_violation_exit_code(tmp_path, capsys, monkeypatch):
    def boom(job):
        raise InvariantViolation("averaging failed to converge")

    monkeypatch.setitem(_HANDLERS, "wav", boom)
    t = two_point_tuple()
    path = write_doc(tmp_path, "t.json", serialize.tuple_to_json(t))
    code, _, err = run(capsys, ["wav", "--input", path])
    assert code == 3
    assert err["error"]["kind"] == "invariant-violation"
