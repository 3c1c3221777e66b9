#!/usr/bin/env python3
"""Smoke test of the ionmux_py extension module.

Build the module first:

    cargo build -p ionmux-py            # or --release

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libionmux_py.so", "ionmux_py.so", "libionmux_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p ionmux-py")
    stage = Path(tempfile.mkdtemp(prefix="ionmux_py_"))
    shutil.copy2(built, stage / "ionmux_py.so")
    sys.path.insert(0, str(stage))
    import ionmux_py

    return ionmux_py


def approx(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def main():
    m = load_module()
    print(f"ionmux_py {m.__version__}")

    # Attempt probability: 0.2 dB/km over 50 km is one order of magnitude.
    assert approx(m.attempt_success_probability(0.0), 0.5)
    assert approx(m.attempt_success_probability(50.0), 0.05)

    # Multiplexing algebra.
    assert approx(m.multiplexed_success(0.5, 2, 1), 0.75)
    product = m.required_multiplex_product(0.05, 0.855)
    assert approx(product, 37.646666286855655)
    assert m.multiplexed_success(0.05, product, 1) >= 0.855 - 1e-12

    try:
        m.required_multiplex_product(0.0, 0.855)
    except ValueError as e:
        assert "unreachable threshold" in str(e)
    else:
        sys.exit("expected ValueError for p = 0")

    # Timing: the repeat-until-success point lands at ~638.6 us.
    cycle = m.code_cycle(0.5, 1)
    assert approx(cycle["tau4"], 6.385875194647154e-4, rel=1e-9)
    budget = m.ion_budget(0.05, 1)
    assert approx(budget["memory"], 1204.693321179381, rel=1e-9)
    assert budget["communication"] == 96.0

    # Repeater chain trade-off at 200 km with three repeaters.
    p0, p0p = m.per_hop_success_with_repeaters(200.0, 3)
    assert approx(p0, 5e-5) and approx(p0p, 0.05)
    mprime = m.repeater_spatial_multiplex(p0p, 1.0, 0.855, 3)
    assert approx(m.chain_success(p0p, 1.0, mprime, 3), 0.855, rel=1e-9)
    with_rep = m.repeater_ion_budget(200.0, 3, 1.0)
    assert approx(with_rep["memory"], 8134.001382302035, rel=1e-6)

    # Heralded-state model and the tolerance inequality.
    b1, b2, _ = m.bell_coefficients(0.81, 0.1)
    assert approx(b1, 0.9518351951254895) and approx(b1 + 4 * b2, 1.0)
    delta, rate = m.depolarizing_equivalent(0.81, 0.1)
    assert approx(delta, math.sqrt(b1)) and approx(rate, 0.75 * (1 - delta))
    ok = m.ft_evaluate(1e-4, 1e-4, 1.0)
    assert ok["satisfied"] and approx(ok["lhs"], 3.1875e-4)
    bad = m.ft_evaluate(1e-4, 1e-4, 0.98)
    assert not bad["satisfied"]

    # Coefficient audit: exact rationals.
    audit = m.verify_appendix()
    assert audit["matches"] is True
    assert audit["total"] == ((384, 5), (168, 1), (42, 1))
    assert audit["decoherence_coeff"] == (35, 16)
    assert audit["depol_coeff"] == (35, 64)
    assert audit["rhs"] == (1, 256) and audit["rhs_float"] == 0.00390625

    # Seeded simulation: deterministic and in statistical agreement.
    a = m.simulate_bond(0.05, temporal_m=38, trials=20000, seed=42)
    b = m.simulate_bond(0.05, temporal_m=38, trials=20000, seed=42)
    assert a == b
    assert abs(a["z"]) < 4.0
    chain = m.simulate_chain(0.4, 2, temporal_m=3, trials=20000, seed=7)
    assert abs(chain["z"]) < 4.0
    layers = m.simulate_two_layer(0.855, trials=5000, seed=3)
    assert abs(layers["per_bond_failure"]["z"]) < 4.0
    assert sum(layers["failure_counts"]) == 5000

    print("smoke test passed")


if __name__ == "__main__":
    main()
