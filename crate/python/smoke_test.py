"""Smoke test for the vrbound Python extension.

Build and install first:
    pip install maturin
    maturin develop -m crates/python/Cargo.toml --release
"""

import json
import math
from pathlib import Path

import vrbound

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def main():
    theta = vrbound.Surface.load(str(FIXTURES / "fn_theta_g2.json"))
    assert theta.genus == 2 and theta.model == "fenchel_nielsen"
    assert theta.curve_names == ["a", "b", "c"]
    est = vrbound.estimate_curve(theta, "a")
    assert est.contains(0.5 / math.pi) and est.upper == 0.25 * math.exp(0.25)

    report = json.loads(vrbound.evaluate(theta))
    assert report["verdict"] == "NegativeCertified"
    assert vrbound.Surface.from_json(theta.to_json()).to_json() == theta.to_json()

    torus = vrbound.Surface.load(str(FIXTURES / "mesh_square_torus.json"))
    est, converged = vrbound.el_discrete(torus, "horizontal", tol=1e-3)
    assert converged and est.contains(1.0), est

    verdict, threshold, route = vrbound.certify(0.5, 2)
    assert verdict == "NegativeCertified" and route == "small_length_bound"
    assert abs(threshold - math.pi / 3) < 1e-15
    assert abs(vrbound.vr_bound_genus(1.0, 2) - (1 + math.pi)) < 1e-12
    assert vrbound.vr_bound_small_l(math.sqrt(math.pi / 4), 3)[0] < 1e-12

    o = vrbound.PointH3.origin()
    p = vrbound.PointH3([math.cosh(1), math.sinh(1), 0.0, 0.0])
    assert abs(vrbound.h3_distance(o, p) - 1.0) < 1e-12
    pentagon = vrbound.regular_polygon(5, math.acosh(1 / math.tan(math.pi / 5)))
    area, exterior, slack = vrbound.polygon_report(pentagon)
    assert abs(area - math.pi / 2) < 1e-9 and abs(slack) < 1e-9

    assert vrbound.cover_counts(2, 2) == (17, 9)
    assert vrbound.cover_counts(3, 40)[1] == 5**40
    volume, ball_area, ratio = vrbound.ball_isoperimetric(1.0)
    assert ratio < 0.5
    assert json.loads(vrbound.verify_lemmas(0))["all_pass"]

    try:
        vrbound.Surface.from_json("{}")
    except vrbound.VrboundError as e:
        assert isinstance(e, ValueError)
    else:
        raise AssertionError("expected VrboundError")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
