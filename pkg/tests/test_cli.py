import json

import pytest
from click.testing import CliRunner

from modcut.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


# ---------------------------------------------------------------------------
# expand

GOLDEN_EXPAND = [
    (("mgcf", "0"), "J"),
    (("ocf", "5/14"), "0;2,1,4"),
    (("acf", "5/14"), "FRRFRFRRRRF"),
    (("farey", "5/14"), "DDRDDDD"),
    (("cutting", "5/14"), "JLLC1LLLLJ"),
    (("mgcf", "5/14"), "JRRCRRRRJ"),
]


@pytest.mark.parametrize("args,expected", GOLDEN_EXPAND)
def test_expand_golden(runner, args, expected):
    res = invoke(runner, "expand", *args)
    assert res.exit_code == 0
    assert res.output.strip() == expected


def test_expand_surd_limit(runner):
    res = invoke(runner, "expand", "cutting", "(1*sqrt(3)-1)/2", "--limit", "9")
    assert res.exit_code == 0
    word = res.output.strip()
    assert len(word.replace("C1", "C").replace("C2", "C")) == 9
    # periodic (2, 1_h) digit pattern: J, 2-run, J, 1-run, J, 2-run, ...
    assert word == "JLLJRJLLJ"


def test_expand_json_roundtrip(runner):
    res = invoke(runner, "expand", "ocf", "5/14", "--json")
    doc = json.loads(res.output)
    assert doc == {"kind": "ocf", "theta": "5/14", "limit": 64,
                   "word": "0;2,1,4"}


def test_expand_errors(runner):
    assert invoke(runner, "expand", "ocf", "nonsense").exit_code == 2
    assert invoke(runner, "expand", "mgcf", "7").exit_code == 3
    assert invoke(runner, "expand", "ocf", "5/14", "--limit", "0").exit_code == 3


# ---------------------------------------------------------------------------
# convert


def test_convert_routes(runner):
    assert invoke(runner, "convert", "0;2,1,4", "--from", "ocf",
                  "--to", "acf").output.strip() == "FRRFRFRRRRF"
    assert invoke(runner, "convert", "FRRFRFRRRRF", "--from", "acf",
                  "--to", "farey").output.strip() == "DDRDDDD"
    assert invoke(runner, "convert", "JRRJRJ", "--from", "mgcf",
                  "--to", "cutting").output.strip() == "JLLJRJ"
    assert invoke(runner, "convert", "JLLJRJ", "--from", "cutting",
                  "--to", "mgcf").output.strip() == "JRRJRJ"
    assert invoke(runner, "convert", "JLLJRJ", "--from", "cutting",
                  "--to", "acf").output.strip() == "FRRFR"


def test_convert_bad_word(runner):
    assert invoke(runner, "convert", "JQX", "--from", "cutting",
                  "--to", "acf").exit_code == 2


# ---------------------------------------------------------------------------
# trace


def test_trace_basic(runner):
    res = invoke(runner, "trace", "--geodesic", "-5/2,5/2", "--limit", "5")
    assert res.exit_code == 0
    assert res.output.strip() == "RRJLL"


def test_trace_svg(runner, tmp_path):
    out = tmp_path / "g.svg"
    res = invoke(runner, "trace", "--geodesic", "-5/2,5/2", "--limit", "8",
                 "--svg", str(out), "--json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["svg"] == str(out)
    assert out.read_text().startswith("<svg")


def test_trace_bad_endpoints(runner):
    assert invoke(runner, "trace", "--geodesic", "1/2").exit_code == 2


# ---------------------------------------------------------------------------
# block / central / forbidden / corners


def test_block_verdicts(runner):
    res = invoke(runner, "block", "JLLJLLJ", "--json")
    doc = json.loads(res.output)
    assert doc["status"] == "whole-forbidden"
    res = invoke(runner, "block", "JLLJRJLLLJ", "--json")
    doc = json.loads(res.output)
    assert doc["status"] == "admissible"
    assert doc["witness"]["head"] == "inf"


def test_block_budget(runner):
    res = invoke(runner, "block", "JLLJRJLLLJ", "--max-len", "4")
    assert res.exit_code == 4


def test_central(runner):
    res = invoke(runner, "central", "2", "--json")
    doc = json.loads(res.output)
    assert doc == {"head": [2], "tail": [4], "word": "JLLC1LLLLJ",
                   "theta": "5/14"}


def test_forbidden_listing(runner):
    res = invoke(runner, "forbidden", "--max-len", "17", "--max-head", "1",
                 "--json")
    blocks = json.loads(res.output)
    assert len(blocks) == 11
    assert "JJ" in blocks


def test_corners(runner):
    res = invoke(runner, "corners", "--theta", "1/2", "--json")
    doc = json.loads(res.output)
    assert {h["r"] for h in doc["hits"]} == {"1/2", "1/6"}
    res = invoke(runner, "corners", "--surd", "13", "--json")
    assert json.loads(res.output)["corner_count"] == 4
    assert invoke(runner, "corners").exit_code == 2


# ---------------------------------------------------------------------------
# bench


def test_bench_small(runner):
    res = invoke(runner, "bench", "100", "--json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert [r["length"] for r in doc["rows"]] == [100, 200, 400]
    assert doc["max_retained_digits"] >= doc["rows"][0]["retained_digits"]


def test_bench_domain(runner):
    assert invoke(runner, "bench", "50").exit_code == 3
