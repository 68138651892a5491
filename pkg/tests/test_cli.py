import json
import os
import subprocess
import sys

import pytest

from dcont.cli import main, run_command
from dcont.directed import builtin_names
from dcont.dsl import load, parse_spec, print_spec
from dcont.values import Inl

from conftest import EXAMPLES, GOLDEN

SUFFIX = os.path.join(EXAMPLES, "suffix.dcont")
CYCLIC = os.path.join(EXAMPLES, "cyclic.dcont")
BAD = os.path.join(EXAMPLES, "broken", "bad.dcont")
REGENERATE = os.environ.get("DCONT_REGEN_GOLDEN") == "1"


def golden_path(name: str) -> str:
    safe = "".join(ch if ch.isalnum() or ch == "-" else "_" for ch in name)
    return os.path.join(GOLDEN, f"{safe}.json")


@pytest.fixture(autouse=True)
def default_bounds(monkeypatch):
    monkeypatch.delenv("DCONT_DEFAULT_BOUNDS", raising=False)


def test_check_suffix_json():
    code, out = run_command(["check", SUFFIX, "--shape-bound", "6", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["object"] == "suffix"
    assert data["bounds"] == {"shapes": 6, "fuel": 8, "payloads": 3}
    assert [x["status"] for x in data["laws"]] == ["pass"] * 5
    assert [x["id"] for x in data["laws"]] == [f"dc-law-{i}" for i in range(1, 6)]


def test_check_bad_reports_first_failure():
    code, out = run_command(["check", BAD])
    assert code == 1
    assert out.rstrip().endswith("first failure: bad dc-law-1 at s=1")
    code, out = run_command(["check", BAD, "--json"])
    first = json.loads(out)["laws"][0]
    assert first == {"id": "dc-law-1", "status": "fail", "cases": 2, "counterexample": {"s": "1"}}


def test_check_examples_directory():
    code, out = run_command(["check", EXAMPLES])
    assert code == 0, out
    assert "0 failing law(s)" in out
    assert "bad" not in out
    code, out = run_command(["check", EXAMPLES, "--json"])
    labels = [r["object"] for r in json.loads(out)]
    assert "morphisms.dcont:reversal" in labels and "suffix.dcont:suffix" in labels


def test_check_single_object_and_deep():
    code, out = run_command(["check", os.path.join(EXAMPLES, "morphisms.dcont"), "--object", "drop_even", "--json"])
    assert code == 0
    assert [x["id"] for x in json.loads(out)["laws"]] == ["dc-morphism-m1", "dc-morphism-m2", "dc-morphism-m3"]
    code, out = run_command(["check", CYCLIC, "--deep", "--json"])
    ids = [x["id"] for x in json.loads(out)["laws"]]
    assert code == 0 and "comonad-coassociativity" in ids and "update-associativity" in ids


def test_unlawful_morphism_in_dsl_fails(tmp_path):
    text = (
        "directed s on nelist { down(s, p) = s - p; root(s) = 0; plus(s, p, q) = p + q; }\n"
        "morphism rev : s -> s { shape(s) = s; position(s, p) = s - p; }\n"
    )
    path = tmp_path / "rev.dcont"
    path.write_text(text, encoding="utf-8")
    code, out = run_command(["check", str(path), "--object", "rev"])
    assert code == 1
    assert "first failure: rev dc-morphism-m1 at s=1, p=0" in out


def test_environment_bounds(monkeypatch):
    monkeypatch.setenv("DCONT_DEFAULT_BOUNDS", "3,4,5")
    code, out = run_command(["check", SUFFIX, "--json"])
    assert json.loads(out)["bounds"] == {"shapes": 3, "fuel": 4, "payloads": 5}
    code, out = run_command(["check", SUFFIX, "--json", "--pos-fuel", "9"])
    assert json.loads(out)["bounds"] == {"shapes": 3, "fuel": 9, "payloads": 5}
    monkeypatch.setenv("DCONT_DEFAULT_BOUNDS", "nonsense")
    assert run_command(["check", SUFFIX])[0] == 2


def test_comonad_commands():
    assert run_command(["duplicate", SUFFIX, "--shape", "2", "--payloads", "a,b,c"]) == (
        0,
        "(2,[(2,[a,b,c]),(1,[b,c]),(0,[c])])\n",
    )
    assert run_command(["duplicate", CYCLIC, "--shape", "1", "--payloads", "a,b"]) == (
        0,
        "(1,[(1,[a,b]),(1,[b,a])])\n",
    )
    assert run_command(["extract", SUFFIX, "--shape", "2", "--payloads", "a,b,c"]) == (0, "a\n")
    assert run_command(["extend", SUFFIX, "--shape", "2", "--payloads", "a,b,c", "--fn", "size"]) == (
        0,
        "(2,[3,2,1])\n",
    )
    assert run_command(["interp", "--builtin", "list-zipper", "--shape", "(1, 1)", "--payloads", "x,y,z"]) == (
        0,
        "((1,1),[x,y,z])\n",
    )


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["check"],
        ["check", "no/such/file.dcont"],
        ["check", SUFFIX, "--shape-bound", "0"],
        ["check", "--builtin", "nothing-like-this"],
        ["duplicate", SUFFIX, "--shape", "9", "--payloads", "a"],
        ["duplicate", SUFFIX, "--shape", "1 div 0", "--payloads", "a,b"],
        ["construct", "coproduct", "ghost", "nonempty-suffix"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out = run_command(argv)
    assert code == 2, out


def test_parse_error_reports_location(tmp_path):
    path = tmp_path / "broken.dcont"
    path.write_text("container c {\n  shapes = nat\n  positions(s) = fin(s);\n}\n", encoding="utf-8")
    code, out = run_command(["check", str(path)])
    assert code == 2
    assert "3:3" in out and "expected one of" in out


def test_construct_emits_loadable_dsl():
    code, text = run_command(["construct", "coproduct", "suffix", "nonempty-cyclic", "--file", SUFFIX, "--name", "both"])
    assert code == 0
    assert 'builtin nonempty_cyclic = "nonempty-cyclic";' in text
    assert "construct both = coproduct(suffix, nonempty_cyclic);" in text
    spec = parse_spec(text)
    assert print_spec(parse_spec(print_spec(spec))) == print_spec(spec) == text
    assert load(text)["both"].root(Inl(3)) == 0
    code, text = run_command(["construct", "cofree", "maybe", "recursive"])
    assert code == 0 and "cofree(maybe, recursive)" in text
    code, text = run_command(["construct", "focus", "list", "--name", "lens"])
    assert code == 0 and "construct lens = focus(list);" in text


def test_builtins_listing():
    code, out = run_command(["builtins"])
    assert code == 0
    for name in ("nonempty-suffix", "list-zipper", "cofree-recursive(maybe)", "strict-suffix", "reversal : nelist -> nelist"):
        assert name in out


def test_main_writes_streams(capsys):
    assert main(["extract", SUFFIX, "--shape", "0", "--payloads", "z"]) == 0
    assert capsys.readouterr().out == "z\n"
    assert main(["check"]) == 2
    assert "needs a path" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dcont", "check", BAD], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 1
    assert "dc-law-1" in proc.stdout


# --- golden files -----------------------------------------------------------------


@pytest.mark.parametrize("name", builtin_names())
def test_builtin_reports_match_golden(name):
    code, out = run_command(["check", "--builtin", name, "--json"])
    assert code == 0
    path = golden_path(name)
    if REGENERATE:
        os.makedirs(GOLDEN, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    with open(path, encoding="utf-8") as fh:
        assert fh.read() == out


def test_json_is_byte_stable_across_runs():
    for name in builtin_names():
        first = run_command(["check", "--builtin", name, "--json"])
        second = run_command(["check", "--builtin", name, "--json"])
        assert first == second
