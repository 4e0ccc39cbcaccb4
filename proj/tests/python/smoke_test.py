"""Smoke tests for the python bindings: exercise each exposed operation once
and cross-check a few exact values."""

import json
import sys
from fractions import Fraction

import ellkit


def frac(s):
    return Fraction(s)


def check(cond, label):
    if not cond:
        print(f"FAIL {label}")
        sys.exit(1)
    print(f"ok   {label}")


def main():
    zi = ellkit.EndRing.order(0, 1)
    tau = ellkit.RingElem("0", "1")
    sq = ellkit.ring_mul(zi, tau, tau)
    check(sq.x == "-1" and sq.y == "0", "tau^2 = -1 in Z[i]")
    check(ellkit.norm_sq(zi, ellkit.RingElem("1", "1")) == "2", "norm of 1+i")

    phi = ellkit.Morphism.from_json(json.dumps({
        "r": 2, "g": 3, "ring": {"kind": "integers"},
        "entries": [[["1", "0"], ["0", "0"], ["2", "0"]],
                    [["0", "0"], ["1", "0"], ["1", "0"]]],
    }))
    ok, reason = ellkit.is_gauss_reduced(phi)
    check(not ok and reason == "height exceeds pivot", "diagnosis on the 2x3 fixture")

    form = json.loads(ellkit.gauss_reduce(phi))
    check(form["a"] == ["2", "0"], "reduced pivot is 2")
    check(form["sigma"] == [1, 2, 0], "column permutation")
    check(ellkit.verify(json.dumps(form))[0], "reduction certificate replays")

    f, fv = ellkit.dirichlet_approx(["1", "7/10", "3/10"], "2")
    check(f == "1" and fv == ["1", "1", "0"], "dirichlet approximation fixture")

    big = ellkit.Morphism.from_json(json.dumps({
        "r": 2, "g": 3, "ring": {"kind": "integers"},
        "entries": [[["10", "0"], ["0", "0"], ["7", "0"]],
                    [["0", "0"], ["10", "0"], ["3", "0"]]],
    }))
    cert = json.loads(ellkit.approx_gauss_reduced(big, "2"))
    check(frac(cert["lhs"]) == Fraction(9, 100), "approximation lhs")
    check(ellkit.verify(json.dumps(cert))[0], "approximation certificate replays")

    check(len(ellkit.enumerate_gauss_reduced(2, 1, "1")) == 5, "five reduced 1x2 morphisms")

    model = ellkit.MWModel.from_json(json.dumps({
        "ring": {"kind": "integers"},
        "gram": [["1", "9/10"], ["9/10", "1"]],
        "gamma0": [0, 1],
    }))
    c1, c2, eps0 = ellkit.c1_constant(model, [0, 1])
    check(frac(c1) == Fraction(1, 10), "certified minimal eigenvalue 1/10")
    check(frac(c2) == Fraction(1, 20), "halved constant")
    n0, lam = ellkit.quasi_orthonormal_basis(model, "1")
    check(frac(lam) >= Fraction(1, 9), "quasi-orthonormal eigenvalue bound")

    curve = json.dumps({"a3": "1", "a4": "-1"})  # y^2 + y = x^3 - x
    lo, hi = ellkit.canonical_height(curve, json.dumps({"x": "0", "y": "0"}), "1/1000000")
    mid = (frac(lo) + frac(hi)) / 2
    check(abs(mid - frac("511114082/10000000000")) < Fraction(2, 10**6), "canonical height 37a")

    gram = json.loads(ellkit.height_pairing_gram(
        curve, json.dumps([{"x": "0", "y": "0"}]), "1/1000"))
    check(gram["type"] == "height_gram", "gram report shape")

    bounds = json.loads(ellkit.compute_bounds(json.dumps({
        "g": 2, "s": 1, "deg_c": "1",
        "K0": "1", "K1": "1", "K2": "1", "K3": "1",
        "vojta_c1": "1", "c_double_prime": "1",
        "min_p_norm": "1", "max_p_norm": "1", "c_p": "1", "eps_p": "1/8",
        "bogomolov_c": {"default": "1"},
    })))
    check(bounds["eta0"]["value"] == "1/48", "eta0 for g=2, s=1")
    check(ellkit.verify(json.dumps(bounds))[0], "bounds report replays")

    ident = ellkit.MWModel.from_json(json.dumps({
        "ring": {"kind": "integers"},
        "gram": [["1", "0"], ["0", "1"]],
        "gamma0": [0, 1],
    }))
    lines = ellkit.run_scenario(json.dumps({
        "kind": "cover", "model": json.loads(ident.to_json()),
        "g": 3, "r": 2, "trials": 3, "seed": 11, "pivot_max": "100000",
    }))
    all_ok, reports = ellkit.verify_stream(lines)
    check(all_ok and len(reports) == 3, "scenario certificates replay")

    print("smoke test passed")


if __name__ == "__main__":
    main()
