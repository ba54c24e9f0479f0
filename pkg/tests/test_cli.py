import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from planeposets.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out=out, err=err)
    return status, out.getvalue(), err.getvalue()


def test_pair():
    assert call("pair", "--left", "12", "--right", "21") == (0, "q\n", "")


def test_enum_words_and_json():
    assert call("enum", "--n", "3", "--format", "words")[1] == "123 132 213 231 312 321\n"
    status, out, _ = call("enum", "--n", "2", "--format", "json")
    assert json.loads(out) == [{"n": 2, "h": [[1, 2]]}, {"n": 2, "h": []}]
    assert call("enum", "--n", "3", "--forests")[1] == "123 132 231 312 321\n"


def test_psi_roundtrip_examples():
    status, out, _ = call("psi", "--perm", "2413")
    assert json.loads(out) == {"n": 4, "h": [[1, 3], [2, 3], [2, 4]]}
    assert call("psi-inv", "--poset", out.strip())[1] == "2413\n"
    assert call("psi-inv", "--poset", "2413")[1] == "2413\n"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_psi_then_psi_inv_is_identity(word):
    w = "".join(map(str, word))
    _, out, _ = call("psi", "--perm", w)
    assert call("psi-inv", "--poset", out.strip())[1] == w + "\n"


@pytest.mark.parametrize(
    "left, right, verdict",
    [("123", "213", "LE"), ("213", "123", "GE"), ("132", "132", "EQ"), ("132", "213", "INCOMPARABLE")],
)
def test_order(left, right, verdict):
    assert call("order", "--left", left, "--right", right)[1] == verdict + "\n"


def test_covers_and_level():
    assert call("covers", "--poset", "123")[1] == "132 213\n"
    assert call("covers", "--poset", "321")[1] == "\n"
    assert call("level", "--poset", "213")[1] == "1\n"


def test_hasse_dot_and_json():
    status, out, _ = call("hasse", "--n", "3", "--dot")
    assert status == 0
    assert '"123" -> "213";' in out and out.count("->") == 6
    status, out, _ = call("hasse", "--n", "4", "--forests")
    data = json.loads(out)
    assert len(data["nodes"]) == 14 and len(data["edges"]) == 21


def test_hasse_figure(tmp_path):
    path = tmp_path / "h3.png"
    status, _, _ = call("hasse", "--n", "3", "--dot", "--figure", str(path))
    assert status == 0 and path.stat().st_size > 0


def test_coproduct():
    assert call("coproduct", "--poset", "12")[1] == "[|12] + q*[1|1] + [12|]\n"
    assert call("coproduct", "--poset", "312", "--prime")[1] == "[|312] + q^2*[12|1] + [312|]\n"


def test_gram_symbolic_and_evaluated(tmp_path):
    rows = list(csv.reader(io.StringIO(call("gram", "--n", "2")[1])))
    assert rows == [["", "12", "21"], ["12", "0", "q"], ["21", "q", "1"]]
    status, out, err = call("gram", "--n", "3", "--eval", "q=2", "--mod", str(2**61 - 1), "--rank")
    assert status == 0 and err == "rank 6\n"
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1] == ["123", "0", "0", "0", "0", "0", "8"]
    fig = tmp_path / "g.png"
    assert call("gram", "--n", "3", "--figure", str(fig))[0] == 0 and fig.exists()


def test_gram_jobs_gives_identical_output():
    assert call("gram", "--n", "4", "--jobs", "2")[1] == call("gram", "--n", "4")[1]


def test_tamari():
    status, out, _ = call("tamari", "--n", "4")
    assert status == 0 and json.loads(out) == {"n": 4, "isomorphic": True}


def test_verify_single_and_all():
    status, out, _ = call("verify", "--suite", "pairing-hopf-m", "--max-n", "5")
    report = json.loads(out)
    assert status == 0
    assert report["identity"] == "pairing-hopf-m" and report["failures"] == []
    assert report["cases_checked"] > 0
    status, out, _ = call("verify", "--suite", "all", "--max-n", "3", "--jobs", "2")
    assert status == 0 and all(r["failures"] == [] for r in json.loads(out))


def test_verify_failure_exit_status(monkeypatch):
    from planeposets import verify

    def broken(report):
        report.cases_checked += 1
        report.failures.append("forced")

    monkeypatch.setitem(verify.IDENTITIES, "coassoc", broken)
    assert call("verify", "--suite", "coassoc", "--max-n", "2")[0] == 2


def test_usage_and_guard_errors():
    assert call("enum")[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("pair", "--left", "1x", "--right", "12")[0] == 1
    assert call("order", "--left", "12", "--right", "123")[0] == 1
    assert call("gram", "--n", "2", "--eval", "x=3")[0] == 1
    status, _, err = call("enum", "--n", "10")
    assert status == 3 and "limit 9" in err
    assert call("hasse", "--n", "12", "--dot")[0] == 3


def test_unsafe_n_lifts_guard():
    status, out, err = call("--unsafe-n", "psi-inv", "--poset", "10,9,8,7,6,5,4,3,2,1")
    assert status == 0 and "warning" in err
    assert out == "10,9,8,7,6,5,4,3,2,1\n"


def test_deterministic_output():
    for argv in (("hasse", "--n", "4", "--dot"), ("enum", "--n", "4", "--format", "json"), ("coproduct", "--poset", "2413")):
        assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "planeposets", "pair", "--left", "132", "--right", "231"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "q^3\n"
