"""Smoke test for the Python bindings.

Build and install first:  maturin build --release -m crates/python/Cargo.toml
then pip install the wheel, and run:  python python/smoke_test.py
"""

from pathlib import Path

import oomid

FIXTURE = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures" / "wildcatter.json"


def check_calculus():
    a = oomid.OomValue("(+,1)")
    b = oomid.OomValue("(-,1)")
    assert str(a + b) == "(+-,1)"
    assert str(a * b) == "(-,2)"
    assert a.dominates(oomid.OomValue("(+,2)"))
    assert oomid.OomValue("(+,inf)") == oomid.OomValue("(+-,inf)")
    assert oomid.OomValue("(+-,inf)").order is None

    a1 = oomid.OomSet("{(+-,3),(+-,4)}")
    a2 = oomid.OomSet("{(+-,3),(+-,6)}")
    assert str(a1.max(a2)) == "{(+-,3),(+-,6)}"
    assert str(a1.sum(a2)) == "{(+-,3),(+-,4)}"
    raw = [oomid.OomValue(s) for s in ("(+-,3)", "(+-,4)", "(+-,6)")]
    assert oomid.OomSet.canonicalize(raw).equiv(a2)


def check_wildcatter():
    d = oomid.InfluenceDiagram.load(str(FIXTURE))
    assert d.validate() == []
    meu, policy = d.solve_exact()
    assert abs(meu - 42.75) < 1e-9, meu
    assert "Drill | Test=yes, Seismic=diffuse | {no}" in policy
    assert abs(d.brute_force_meu() - meu) < 1e-9
    value = d.evaluate_policy([["no"], ["yes"] * 6])
    assert abs(value - 20.0) < 1e-9, value

    for eps, count in [(0.1, 2), (0.01, 4), (0.001, 128)]:
        o = d.convert(eps)
        meu, n, _ = o.solve()
        assert n == count, (eps, n)
        bf_meu, bf_n, _ = o.brute_force()
        assert bf_meu.equiv(meu) and bf_n == n
    assert str(oomid.spohn_prob(0.01, 0.1)) == "(+,2)"
    assert str(oomid.spohn_util(200.0, 0.1)) == "{(+,-2)}"


def check_bench():
    g = oomid.generate(15, "P", seed=3)
    assert g.validate() == []
    csv = oomid.run_experiment(15, [0.5], instances=2, samples=5, seed=3)
    lines = csv.strip().splitlines()
    assert lines[0].startswith("instance_id,n,class,epsilon")
    assert len(lines) == 3


if __name__ == "__main__":
    check_calculus()
    check_wildcatter()
    check_bench()
    print("python smoke test passed")
