"""Smoke test for the `bazilevic` Python extension.

Build first:

    cargo build --release -p bazilevic-py --features extension-module

then run `python3 python/smoke_test.py`. If the module is not installed
(e.g. via maturin), the freshly built library under target/ is loaded.
"""

import json
import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import bazilevic  # noqa: F401
    except ImportError:
        for profile in ("release", "debug"):
            lib = ROOT / "target" / profile / "libbazilevic.so"
            if lib.exists():
                tmp = Path(tempfile.mkdtemp())
                shutil.copy(lib, tmp / "bazilevic.so")
                sys.path.insert(0, str(tmp))
                break
        else:
            sys.exit("bazilevic extension not found; build it first")
    import bazilevic

    return bazilevic


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    bz = load()

    close(bz.gamma(0.5), math.sqrt(math.pi), 1e-14)
    close(bz.gamma(1 + 1j), 0.49801566811835604 - 0.15494982830181069j, 1e-13)
    close(bz.mittag_leffler(1, 1, 2.5), math.exp(2.5), 1e-10)

    close(bz.radius_r1(1, 1, 1), 2 - math.sqrt(3), 1e-12)
    iota, iota1 = bz.iota(0.0, 1.0, 0.0)
    close(iota1, math.log(2), 1e-10)
    close(iota, 2 * math.log(2) - 1, 1e-10)

    ident = bz.OperatorParams()
    f = [0, 1, 0.1 - 0.2j, 1 / 3 + 0.7j]
    assert bz.apply_operator(f, ident) == [complex(c) for c in f]

    op = bz.OperatorParams(m=1, lam=0.5, alpha=1.5 + 0.2j, beta=1)
    close(op.multiplier(1), 1, 1e-15)
    back = bz.bernardi(bz.bernardi(f, 0.5), 0.5, inverse=True)
    for a, b in zip(back, f):
        close(a, b, 1e-14)

    cp = bz.ClassParams(k=2.5, rho=0.2, theta=1.5, gamma=0.8)
    p = bz.herglotz_series([(0.0, 2.25), (math.pi, -0.25)], 0.2, 12, fejer=True)
    verdict = bz.in_pk_rho(p, 2.5, 0.2)
    assert verdict["verdict"] in ("member", "boundary"), verdict
    g = bz.solve_functional_inverse(p, cp, op)
    for a, b in zip(bz.class_functional(g, cp, op), p):
        close(a, b, 1e-11)

    koebe = [0, 1, 2, 3, 4]
    fb = bz.bazilevic_construct(1.0, koebe, [1, 0, 0, 0], 4)
    for a, b in zip(fb, [0, 1, 1, 1, 1]):
        close(a, b, 1e-14)

    sharp = bz.sharp_function(bz.ClassParams(), bz.OperatorParams(), 16)
    r_formula, r_emp, gap = bz.empirical_radius(sharp, bz.ClassParams(), bz.OperatorParams())
    close(r_formula, 2 - math.sqrt(3), 1e-12)
    close(gap, r_emp - r_formula, 1e-15)

    report = json.loads(bz.verify("2.1", trials=20, seed=7))
    assert report["theorem"] == "T2.1" and report["failures"] == 0, report
    assert bz.verify("T2.2", trials=10, threads=1) == bz.verify("T2.2", trials=10, threads=3)

    try:
        bz.ClassParams(k=1.0)
    except bz.BazilevicError as e:
        assert str(e).startswith("invalid-parameter"), e
        assert isinstance(e, ValueError)
    else:
        raise AssertionError("k < 2 accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
