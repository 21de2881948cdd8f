import io
import json
import subprocess
import sys

import pytest

from ahexp.artinhasse import ah_build, ep_bar
from ahexp.charp import synthesize
from ahexp.cli import main
from ahexp.documents import DocumentError, SeriesDocument, read_stream
from ahexp.series import FpSeries


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, stdin="": run(argv, stdin, monkeypatch, capsys)


def doc_line(f, meta=None):
    return SeriesDocument.from_series(f, meta).dumps() + "\n"


# --------------------------------------------------------------- documents


def test_fp_document_roundtrip():
    text = doc_line(ep_bar(5, 12), {"note": "x"}).strip()
    doc = SeriesDocument.loads(text)
    assert doc.dumps() == text
    assert doc.to_series() == ep_bar(5, 12)


def test_padic_document_roundtrip():
    f = ah_build(3, 20).exact
    text = doc_line(f).strip()
    doc = SeriesDocument.loads(text)
    assert doc.dumps() == text
    assert doc.to_series() == f
    units = [c["unit"] for c in json.loads(text)["coeffs"]]
    assert all(isinstance(u, str) for u in units)


@pytest.mark.parametrize("bad", [
    "{not json",
    '{"coeffs":[1],"p":4,"ring":"fp","trunc":0}',
    '{"coeffs":[1,2],"p":2,"ring":"fp","trunc":1}',
    '{"coeffs":[1],"p":2,"ring":"fp","trunc":1}',
    '{"coeffs":[1],"p":2,"ring":"zz","trunc":0}',
    '{"coeffs":[{"digits":2,"unit":"3","val":0}],"p":3,"ring":"padic","trunc":0}',
    '{"coeffs":[{"digits":0,"unit":"0","val":"inf","x":1}],"p":3,"ring":"padic","trunc":0}',
    '{"coeffs":[1],"extra":1,"p":2,"ring":"fp","trunc":0}',
])
def test_invalid_documents(bad):
    with pytest.raises(DocumentError):
        read_stream(bad)


# --------------------------------------------------------------------- ep


def test_ep_examples(cli):
    code, out, _ = cli(["ep", "--p", "2", "--deg", "4", "--ring", "fp"])
    assert code == 0 and json.loads(out)["coeffs"] == [1, 1, 1, 0, 0]
    code, out, _ = cli(["ep", "--p", "7", "--deg", "0"])
    assert code == 0 and json.loads(out)["coeffs"] == [1]
    code, _, err = cli(["ep", "--p", "4", "--deg", "10"])
    assert code == 2 and "4" in err


def test_ep_both_rings(cli):
    code, out, _ = cli(["ep", "--p", "3", "--deg", "9", "--ring", "both"])
    docs = read_stream(out)
    assert code == 0 and [d.ring for d in docs] == ["fp", "padic"]
    assert docs[1].to_series().reduce_modp() == docs[0].to_series()


def test_ep_precision_failure(cli):
    code, _, err = cli(["ep", "--p", "2", "--deg", "40", "--prec", "3"])
    assert code == 3 and "precision" in err


def test_usage_errors(cli):
    assert cli(["ep", "--p", "2"])[0] == 2
    assert cli(["frobnicate"])[0] == 2
    assert cli(["check", "--mode", "theorem"], "")[0] == 2
    assert cli(["check", "--mode", "dwork"], doc_line(ep_bar(3, 5)))[0] == 2
    assert cli(["check", "--mode", "theorem"], doc_line(FpSeries(3, [2, 1], 4)))[0] == 2
    assert cli(["enumerate", "--p", "2", "--deg", "11"])[0] == 2


# ------------------------------------------------------------------ check


def test_check_examples(cli):
    code, out, _ = cli(["check", "--mode", "theorem"], doc_line(ep_bar(5, 40)))
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = cli(["check", "--mode", "theorem"], doc_line(FpSeries(2, [1, 1], 4)))
    rep = json.loads(out)
    assert code == 1 and rep["first_violation"]["index"] == [2, 1]
    g = FpSeries(3, [1, 2, 1], 2)
    code, out, _ = cli(["check", "--mode", "corollary"], doc_line(g.plug_xp(3, 6)))
    rep = json.loads(out)
    assert code == 0 and rep["c"] == 0


def test_dwork_and_prop_commands(cli):
    line = doc_line(ah_build(5, 25).exact)
    assert cli(["dwork"], line)[0] == 0
    code, out, _ = cli(["prop"], line)
    assert code == 0 and json.loads(out)["detail"] == "agree-pass"


def test_text_format(cli):
    code, out, _ = cli(["check", "--mode", "theorem", "--format", "text"], doc_line(FpSeries(2, [1, 1], 4)))
    assert code == 1 and out.startswith("FAIL")


# -------------------------------------------------------------- decompose


def test_decompose_examples(cli):
    code, out, _ = cli(["decompose"], doc_line(ep_bar(3, 12)))
    doc = json.loads(out)
    assert code == 0 and doc["meta"]["c"] == 1 and doc["coeffs"] == [1, 0, 0, 0, 0]
    f = synthesize(2, FpSeries(5, [1, 1], 4), 20)
    for via in ("direct", "padic"):
        code, out, _ = cli(["decompose", "--via", via], doc_line(f))
        doc = json.loads(out)
        assert code == 0 and doc["meta"]["c"] == 2 and doc["coeffs"] == [1, 1, 0, 0, 0]
    for via in ("direct", "padic"):
        code, out, _ = cli(["decompose", "--via", via], doc_line(FpSeries(2, [1, 1], 6)))
        assert code == 1 and not json.loads(out)["passed"]


# ------------------------------------------------------ enumerate / random


def test_enumerate_counts(cli):
    code, out, _ = cli(["enumerate", "--p", "2", "--deg", "4"])
    docs = read_stream(out)
    prop = [d for d in docs if d.meta["set"] == "property"]
    form = [d for d in docs if d.meta["set"] == "form"]
    assert code == 0 and len(prop) == len(form) == 8
    assert [d.coeffs for d in prop] == [d.coeffs for d in form]


@pytest.mark.parametrize("kind", ["property", "arbitrary", "cond2"])
def test_random_is_deterministic(cli, kind):
    argv = ["random", "--kind", kind, "--p", "3", "--deg", "12", "--seed", "42", "--count", "5"]
    a, b = cli(argv)[1], cli(argv)[1]
    assert a == b and len(a.splitlines()) == 5
    assert cli(argv[:-3] + ["43", "--count", "5"])[1] != a


def test_random_seed_bounds(cli):
    assert cli(["random", "--p", "3", "--deg", "5", "--seed", str(2**64)])[0] == 2
    assert cli(["random", "--p", "3", "--deg", "-1", "--seed", "1"])[0] == 2


def test_random_property_passes_theorem(cli):
    _, out, _ = cli(["random", "--kind", "property", "--p", "3", "--deg", "30", "--seed", "7", "--count", "4"])
    assert cli(["check", "--mode", "theorem"], out)[0] == 0


def test_random_cond2_passes_prop(cli):
    _, out, _ = cli(["random", "--kind", "cond2", "--p", "2", "--deg", "12", "--seed", "9", "--count", "4"])
    code, rep, _ = cli(["prop"], out)
    assert code == 0
    assert all(json.loads(line)["detail"] == "agree-pass" for line in rep.splitlines())
    assert cli(["dwork"], out)[0] == 0


def test_pipe_closure(cli, tmp_path):
    # every emitted document parses and feeds each compatible command
    streams = {
        "fp": cli(["ep", "--p", "3", "--deg", "9"])[1]
        + cli(["random", "--kind", "property", "--p", "3", "--deg", "9", "--seed", "1", "--count", "3"])[1]
        + cli(["enumerate", "--p", "3", "--deg", "4"])[1],
        "padic": cli(["ep", "--p", "3", "--deg", "9", "--ring", "padic"])[1]
        + cli(["random", "--kind", "cond2", "--p", "3", "--deg", "9", "--seed", "1", "--count", "3"])[1],
    }
    for line in streams["fp"].splitlines() + streams["padic"].splitlines():
        assert SeriesDocument.loads(line).dumps() == line
    for mode in ("theorem", "corollary"):
        assert cli(["check", "--mode", mode], streams["fp"])[0] in (0, 1)
    assert cli(["decompose"], streams["fp"])[0] in (0, 1)
    _, out, _ = cli(["decompose"], cli(["ep", "--p", "3", "--deg", "9"])[1])
    assert cli(["check", "--mode", "theorem"], out)[0] == 0
    for mode in ("dwork", "prop"):
        assert cli(["check", "--mode", mode], streams["padic"])[0] in (0, 1)
    path = tmp_path / "docs.jsonl"
    path.write_text(streams["padic"])
    out_path = tmp_path / "out.jsonl"
    assert cli(["dwork", "--in", str(path), "--out", str(out_path)])[0] == 0
    assert len(out_path.read_text().splitlines()) == 4


def test_subprocess_pipeline():
    gen = subprocess.run([sys.executable, "-m", "ahexp", "random", "--p", "5", "--deg", "20",
                          "--seed", "3", "--count", "3"], capture_output=True, text=True, check=True)
    chk = subprocess.run([sys.executable, "-m", "ahexp", "check", "--mode", "theorem"],
                         input=gen.stdout, capture_output=True, text=True)
    assert chk.returncode == 0 and len(chk.stdout.splitlines()) == 3
