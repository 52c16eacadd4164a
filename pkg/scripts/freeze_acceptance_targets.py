#!/usr/bin/env python3
"""Regenerate src/coulombpacket/data/acceptance_targets.json.

Computes the frozen reference values for the self-validation suite with the
independent brute-force oracles (composite Simpson + Richardson in log
domain, cross-checked against arbitrary-precision tanh-sinh quadrature) and
writes them to the package data file.  Run from the repository root:

    python3 scripts/freeze_acceptance_targets.py

The package itself is deliberately not imported: frozen targets must not
depend on the code they are meant to check.
"""

import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import brute_oracle as bo  # noqa: E402

OUT = ROOT / "src" / "coulombpacket" / "data" / "acceptance_targets.json"

CROSS_TOL = 1e-9  # Simpson vs mpmath must agree this closely or we abort


def frozen_point(A, B, gamma):
    ln_simpson, ln_err = bo.simpson_ln_T(A, B, gamma, return_err=True)
    ln_mp = bo.mp_ln_T(A, B, gamma)
    cross = abs(ln_simpson - ln_mp)
    if cross > CROSS_TOL:
        raise SystemExit(
            f"oracle disagreement at A={A} B={B} gamma={gamma}: "
            f"simpson={ln_simpson!r} mpmath={ln_mp!r} diff={cross:.3e}"
        )
    print(f"  A={A:g} B={B:g} gamma={gamma:g}: ln_T={ln_simpson!r} "
          f"(richardson err {ln_err:.1e}, cross-check diff {cross:.1e})")
    return {"A": A, "B": B, "gamma": gamma, "ln_T": ln_simpson}


def main():
    print("gamma=1 closed-form equivalence targets:")
    gamma1 = [frozen_point(700.0, B, 1.0) for B in (1e-5, 1e-4, 1e-3, 1e-2)]

    print("enhancement-magnitude targets:")
    enhancement = [
        frozen_point(700.0, 1e-3, 2.0),
        frozen_point(700.0, 1e-5, 1.0),
    ]

    payload = {
        "meta": {
            "generator": "scripts/freeze_acceptance_targets.py",
            "oracle": ("composite Simpson (2^17 nodes/segment) + Richardson "
                       "extrapolation in log domain over a scanned window, "
                       "cross-checked against mpmath tanh-sinh quadrature "
                       f"to {CROSS_TOL:g} absolute in ln T"),
        },
        "gamma1_closed_form": gamma1,
        "enhancement": enhancement,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {OUT.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
