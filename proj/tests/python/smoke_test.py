"""Python binding smoke tests; run from the repository root."""

import json
import math
import sys

import hnnwalk


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    # Z-projection oracle values.
    approx(hnnwalk.return_gf(0.8, 0.5), 0.4, 1e-12)
    approx(hnnwalk.first_passage_gf(0.8, 0.5, +1), 1.0, 1e-12)
    approx(hnnwalk.first_passage_gf(0.8, 0.5, -1), 0.25, 1e-12)
    approx(hnnwalk.green_gf(0.8, 0.5), 1.0 / 0.6, 1e-12)
    approx(hnnwalk.lazy_green_identity(0.8, 0.5), 10.0 / 3.0, 1e-12)
    approx(hnnwalk.degenerate_drift(0.5, 0.8), 0.3, 1e-12)
    try:
        hnnwalk.return_gf(0.5, 0.5)
        raise AssertionError("p = 1/2 must be rejected")
    except RuntimeError:
        pass

    # Normal forms on the Klein-group presentation.
    exp = hnnwalk.Experiment.from_file("data/example21.json")
    assert exp.regime() == "transient_general"
    w = exp.normalize("a b t^-1")
    assert w.text == "a t^-1 a", w.text
    assert w.t_length == 1 and w.word_length == 3
    assert exp.normalize("t b t^-1").text == "a"
    assert exp.normalize("a t t").text == exp.normalize("t b t").text
    assert exp.normalize("").text == "e"

    # Deterministic simulation.
    s1 = exp.simulate(steps=5000, seed=99)
    s2 = exp.simulate(steps=5000, seed=99)
    assert s1 == s2
    assert exp.config_hash() == exp.config_hash()

    # Degenerate drift pipeline against the exact oracle.
    deg = hnnwalk.Experiment.from_file("data/degenerate.json")
    assert deg.regime() == "transient_degenerate"
    report = deg.drift(steps=20000, replicas=30, threads=2)
    lam = report["lambda_direct"]
    assert abs(lam["point"] - 0.3) <= 3.0 * lam["std_error"] + 1e-9, lam
    assert report["cross_consistent"]

    # Escape probability from t^-1 a dies out when the walk drifts upward.
    xi = deg.xi("t^-1", "a", trials=1000)
    assert xi["estimate"]["point"] < 0.02, xi

    # Recurrent configs are rejected by the drift pipeline.
    rec = hnnwalk.Experiment.from_file("data/recurrent.json")
    assert rec.regime() == "recurrent"
    try:
        rec.drift(steps=1000, replicas=4)
        raise AssertionError("recurrent drift must raise")
    except RuntimeError:
        pass

    print("python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
