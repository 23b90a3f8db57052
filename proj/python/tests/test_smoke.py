"""Smoke tests for the Python bindings."""

from fractions import Fraction

import pytest

import obstr

Q8_CHAIN = {
    "p": 2,
    "chain": [
        {"from": 0, "subgroup": "whole"},
        {"from": 2, "subgroup": "center"},
        {"from": 4, "subgroup": "trivial"},
    ],
}


def test_version():
    assert obstr.__version__.count(".") == 2


def test_q8_report():
    r = obstr.analyze("q:8", Q8_CHAIN)
    center = [row for row in r["b"] if row["order"] == 2][0]
    assert Fraction(center["value"]) == Fraction(-1, 2)
    assert r["bertin"]["vanishes"] is False
    assert obstr.check_report(r) == []


def test_invalid_chain_raises():
    bad = {"p": 2, "chain": [{"from": 0, "subgroup": [0, 1]}]}
    with pytest.raises(obstr.ObstrError):
        obstr.analyze("d:8", bad)


def test_gm_and_family():
    assert obstr.gm("a4", 2)["is_gm"] is True
    q = obstr.family("quaternion", [1, 2], [2, 2, 2])
    assert q["family"] == "quaternion"
    assert q["bertin"]["vanishes"] is True
    c = obstr.cpxcp(3, 2)
    assert c["bertin"] is True and c["kgb"] is False


def test_search_and_enumerate():
    r = obstr.search("sd:16", 2, jump_bound=20, threads=1)
    assert r["outcome"] == "counterexample found"
    data = obstr.enumerate("dihedral:8", 2, jump_bound=8)
    assert len(data) > 0
    assert all(d["chain"][-1]["subgroup"] == [0] for d in data)
