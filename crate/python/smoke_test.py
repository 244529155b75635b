#!/usr/bin/env python3
"""End-to-end smoke test for the `ordlex` Python extension module.

Builds the `ordlex-py` crate, loads the resulting shared library as the
module `ordlex`, and exercises the bindings: ordinal arithmetic, automaton
classification, evaluation, synthesis, and minimal sizes.

Run from anywhere:  python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "ordlex-py"],
        cwd=ROOT,
        check=True,
    )
    for name in ("libordlex_py.so", "libordlex_py.dylib", "ordlex_py.dll"):
        candidate = ROOT / "target" / "debug" / name
        if candidate.exists():
            return candidate
    sys.exit("built library not found under target/debug/")


def main() -> None:
    library = build_extension()
    staging = Path(tempfile.mkdtemp(prefix="ordlex-py-"))
    shutil.copy2(library, staging / "ordlex.so")
    sys.path.insert(0, str(staging))

    import ordlex

    # --- ordinal arithmetic -------------------------------------------------
    alpha = ordlex.Cnf("w^3*2 + w")
    assert str(alpha) == "w^3*2 + w"
    assert repr(alpha) == 'Cnf("w^3*2 + w")'
    assert alpha == ordlex.Cnf("w^3 + w^3 + w")
    assert alpha.degree() == 3
    assert alpha.terms() == [(3, 2), (1, 1)]
    assert not alpha.is_zero()
    assert ordlex.Cnf.zero().is_zero()
    assert ordlex.Cnf.zero() == ordlex.Cnf("0")
    assert ordlex.Cnf.omega_power(2) == ordlex.Cnf("w^2")

    big = 2**40 + 1
    assert ordlex.Cnf.from_nat(big).terms() == [(0, big)]

    # Addition is ordinal addition: absorbing on the left, not commutative.
    w = ordlex.Cnf("w")
    five = ordlex.Cnf("5")
    assert five + w == w
    assert w + five == ordlex.Cnf("w + 5")
    assert five.mul_omega() == w
    assert ordlex.Cnf("5") < w < ordlex.Cnf("w*2") < ordlex.Cnf("w^2")
    assert len({w, ordlex.Cnf("w"), five}) == 2

    try:
        ordlex.Cnf("w^")
    except ValueError:
        pass
    else:
        raise AssertionError("parsing 'w^' must raise ValueError")

    try:
        ordlex.Cnf.zero().degree()
    except ValueError:
        pass
    else:
        raise AssertionError("degree of 0 must raise ValueError")

    # --- synthesis and evaluation ------------------------------------------
    aut = ordlex.synthesize(alpha)
    assert aut.startswith("ordaut v1\n")
    assert ordlex.cnf_of(aut) == alpha
    assert ordlex.oracle_of(aut) == alpha
    assert ordlex.check(aut) == "ordinal"
    assert ordlex.isomorphic(aut, aut)
    assert not ordlex.isomorphic(aut, ordlex.synthesize(w))

    assert ordlex.min_size(alpha) == 6
    assert ordlex.size_upper_bound(alpha) == 6
    assert ordlex.min_size(ordlex.Cnf("23")) == 7
    assert ordlex.size_upper_bound(ordlex.Cnf("23")) == 8
    assert ordlex.g_size(23) == 8
    assert ordlex.g_size(2**40) == 41

    normalized = ordlex.normalize(aut)
    assert ordlex.normalize(normalized) == normalized
    assert ordlex.cnf_of(normalized) == alpha

    # --- classification -----------------------------------------------------
    scattered = "ordaut v1\nstates 2\ninitial 0\nfinal 1\n0 0 0\n0 1 1\n"
    assert ordlex.check(scattered) == "scattered"

    empty = "ordaut v1\nstates 1\ninitial 0\n0 0 0\n"
    assert ordlex.check(empty) == "ordinal"
    assert ordlex.cnf_of(empty).is_zero()

    try:
        ordlex.cnf_of(scattered)
    except ValueError:
        pass
    else:
        raise AssertionError("cnf_of on a scattered language must raise")

    print("smoke test passed")


if __name__ == "__main__":
    main()
