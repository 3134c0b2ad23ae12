import math

import pytest

import zeroerr

HALF_LOG5 = 0.5 * math.log2(5)


def test_pentagon_capacity():
    c5 = zeroerr.catalog("cycle", 5)
    b = zeroerr.c0_bounds(c5, max_n=2)
    assert b["quantity"] == "C0"
    assert b["lo"] == pytest.approx(HALF_LOG5, abs=1e-6)
    assert b["hi"] == pytest.approx(HALF_LOG5, abs=1e-6)
    assert zeroerr.alpha(zeroerr.and_power(c5, 2))["size"] == 5
    assert zeroerr.theta_transitive(c5) == pytest.approx(math.sqrt(5), abs=1e-6)


def test_schlafli():
    s = zeroerr.catalog("schlafli")
    assert s["n"] == 27
    assert zeroerr.alpha(s)["size"] == 3
    assert zeroerr.alpha(zeroerr.complement(s))["size"] == 6
    assert zeroerr.is_perfect(s)["perfect"] == "no"


def test_entropies():
    k3 = zeroerr.catalog("complete", 3)
    assert zeroerr.korner_entropy(k3)["value"] == pytest.approx(math.log2(3), abs=1e-6)
    pg = dict(zeroerr.catalog("empty", 4), dist=[0.1, 0.2, 0.3, 0.4])
    assert zeroerr.korner_entropy(pg)["value"] == pytest.approx(0.0, abs=1e-9)
    assert zeroerr.min_entropy_coloring(pg)["h_chi"] == pytest.approx(0.0, abs=1e-12)
    hb = zeroerr.hbar_bounds(zeroerr.catalog("cycle", 5), max_n=2)
    assert hb["hi"] - hb["lo"] <= 1e-6


def test_sum_channel_weights():
    p, value = zeroerr.sum_channel_weights([math.log2(3), math.log2(7)])
    assert value == pytest.approx(math.log2(10))
    assert p == pytest.approx([0.3, 0.7])


def test_eta_mixture_contains_value():
    c5, k2 = zeroerr.catalog("cycle", 5), zeroerr.catalog("complete", 2)
    b = zeroerr.eta_bounds([c5, k2], [1, 1], 2)
    value = 0.25 * math.log2(5) + 0.5
    assert b["lo"] - 1e-6 <= value <= b["hi"] + 1e-6


def test_codec_zero_errors():
    t5 = {"x_count": 5, "y_count": 5,
          "support": [[x, y] for x in range(5) for y in (x, (x + 1) % 5)]}
    r = zeroerr.simulate_si(t5, n=2, eps=0.3, trials=2000, seed=7)
    assert r["errors"] == 0
    assert r["rate"] <= r["rate_budget"] + 0.5
    book = zeroerr.channel_code(t5, 2)
    assert len(book["codewords"]) == 5


def test_errors_are_python_exceptions():
    with pytest.raises(zeroerr.Error, match="edges"):
        zeroerr.alpha({"n": 2, "edges": [[0, 2]]})
    with pytest.raises(zeroerr.BudgetError):
        zeroerr.and_power(zeroerr.catalog("cycle", 5), 9)


def test_verify_subset():
    report = zeroerr.verify(tags=["schlafli"])
    assert [s["id"] for s in report["scenarios"]] == ["schlafli-strict"]
    assert report["summary"]["failed"] == 0
