import io
import subprocess
import sys

import pytest

from phishuffle.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv,expected",
    [
        (("product", "--law", "stuffle", "y1", "y1"), "2 y1.y1 + 1 y2"),
        (("product", "--law", "shuffle", "a.b", "c"), "1 a.b.c + 1 a.c.b + 1 c.a.b"),
        (("product", "--law", "stuffle", "1", "y1"), "1 y1"),
        (("lyndon", "--alphabet", "a<b", "--max", "3"), "a aab ab abb b"),
        (("zetacheck", "--law", "stuffle", "-N", "2", "--left", "y1", "--right", "y1"), "OK lhs=rhs=9/4"),
    ],
)
def test_examples(argv, expected):
    code, out, _ = run(*argv)
    assert code == 0
    assert out.strip() == expected


def test_muffle_lawcheck_exceeds_threshold():
    code, out, _ = run("lawcheck", "--law", "muffle", "--window", "x[1],x[2],x[1/2]")
    assert code == 0
    assert "commutative: yes" in out
    assert "dualizable-evidence: exceeds-threshold" in out
    assert "dualizable-analytic: no" in out
    assert "(x[1/256],x[256])" in out


def test_stuffle_lawcheck_finite():
    code, out, _ = run("lawcheck", "--law", "stuffle", "--window", "y1,y2,y3")
    assert code == 0
    assert "associative: yes" in out
    assert "dualizable-evidence: finite" in out


def test_nonassociative_custom_law(tmp_path):
    f = tmp_path / "phi.txt"
    f.write_text("a a -> b\na b -> a\n")
    code, out, _ = run("lawcheck", "--law", f"custom:file={f}", "--signature", "enum(a<b)", "--window", "a,b")
    assert code == 0
    assert "associative: no" in out


def test_exit_codes():
    assert run("product", "--law", "stuffle", "z[3]", "y1")[0] == 2
    assert run("product", "--law", "nosuchlaw", "a", "b")[0] in (2, 3)
    assert run("product", "--law", "stuffle", "y0", "y1")[0] == 2
    code, _, err = run("coproduct", "--law", "huffle", "--kind", "phi", "(y1,z[0])")
    assert code == 3
    assert "(y1,z[0])" in err
    assert run("decompose", "--law", f"custom:text=a a -> b\na b -> a", "--signature", "enum(a<b)", "a.b")[0] == 3
    assert run("bogus")[0] == 2


def test_zetacheck_failure_is_exit_one(monkeypatch):
    import phishuffle.cli as cli
    from phishuffle.zeta import IdentityReport

    monkeypatch.setattr(cli, "verify_product_identity", lambda *a, **k: IdentityReport(2, (), (), 1, 2))
    code, out, _ = run("zetacheck", "--law", "stuffle", "-N", "2", "--left", "y1", "--right", "y1")
    assert code == 1
    assert out.startswith("FAIL")


def test_machine_mode():
    code, out, _ = run("product", "--law", "stuffle", "--machine", "y1", "y1")
    assert code == 0
    assert out.splitlines() == ["1\ty2", "2\ty1.y1"]


def test_decompose_and_coproduct():
    assert run("decompose", "--law", "stuffle", "y1.y1")[1].splitlines() == ["-1/2 {y2:1}", "1/2 {y1:2}"]
    assert run("coproduct", "--law", "shuffle", "a.b")[1].strip() == "1 1 ⊗ a.b + 1 a ⊗ b + 1 a.b ⊗ 1"
    assert run("coproduct", "--law", "stuffle", "--kind", "phi", "y2")[1].strip() == "1 1 ⊗ y2 + 1 y1 ⊗ y1 + 1 y2 ⊗ 1"


def test_deterministic_output():
    argv = ("product", "--law", "luffle", "(y1,z[1/2],x[-1/3]).(y2,z[0],x[1])", "(y1,z[-1],x[1/2])")
    first = run(*argv)
    assert first[0] == 0
    assert all(run(*argv) == first for _ in range(3))


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "phishuffle", "product", "--law", "stuffle", "y1", "y1"],
        capture_output=True,
        text=True,
    )
    assert p.returncode == 0
    assert p.stdout.strip() == "2 y1.y1 + 1 y2"
