"""Smoke test for the compiled extension.

Build with `cargo build --release -p catalan-hyperlab-py`, copy
`target/release/libcatalan_hyperlab.so` next to this file as
`catalan_hyperlab.so`, then run `python3 smoke_test.py`.
"""

import json
import math

import catalan_hyperlab as ch

G = 0.915965594177219015


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    k = ch.ellipk(0.5)
    close(k.value, 1.685750354812596, 1e-13)
    assert k.method == "agm" and k.converged
    close(float(ch.ellipe(0.5)), 1.467462209339427, 1e-13)

    for method in ["beta_series", "k_integral", "e_integral", "arctan_integral", "arcsin_integral"]:
        close(ch.catalan(method).value, G, 1e-11)

    r = ch.pfq([0.5, 0.5, 0.5], [1.0, 1.5], 1.0)
    close(r.value, 4 * G / math.pi, 1e-10)
    assert r.method == "accelerated"

    close(ch.integral_a(1.0).value * 2 / math.pi, 4 * G / math.pi, 1e-10)
    close(ch.integral_b(1.0).value, 0.5 + G, 1e-10)
    close(ch.integral_c(0.5).value + ch.integral_d(0.5).value, math.pi * math.log(0.25), 1e-9)

    close(ch.pochhammer(0.5, 3) / ch.pochhammer(1.5, 3), 1 / 7, 1e-15)
    close(ch.gauss_2f1_at_one(0.5, 0.5, 2.0), 4 / math.pi, 1e-14)
    close(ch.quad(math.log, 0.0, 1.0, singular_lo=True).value, -1.0, 1e-12)
    close(ch.central_diff(lambda s: ch.integral_a(s).value, 0.5), k.value, 1e-7)

    try:
        ch.ellipk(1.0)
    except ValueError as e:
        assert "diverges" in str(e)
    else:
        raise AssertionError("K(1) should raise")

    try:
        ch.quad(lambda x: 1 / 0, 0.0, 1.0)
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("integrand error should propagate")

    [res] = ch.verify("ramanujan_3f2")
    assert res.passed and res.abs_residual <= 1e-10, res
    assert "ramanujan_3f2" in ch.identity_ids()

    report = json.loads(ch.verify_all_json())
    assert report["summary"]["failed"] == 0
    assert report["summary"]["total"] == len(ch.identity_ids())
    assert len(json.loads(ch.catalog_json())) == len(ch.identity_ids())

    print(f"catalan_hyperlab {ch.__version__}: smoke test passed "
          f"({report['summary']['total']} identities verified)")


if __name__ == "__main__":
    main()
