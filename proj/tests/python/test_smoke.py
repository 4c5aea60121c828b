"""Smoke tests for the _shadowlab python module.

Each block exercises one exported operation group end to end with loose
numerical checks; the heavy verification lives in the C++ suites.
"""
import math
import sys

import _shadowlab as sl


def approx(a, b, tol=1e-6):
    assert abs(a - b) < tol, f"{a} !~ {b}"


def main():
    print("module version:", sl.__version__)
    kinds = [k for k, _ in sl.catalog()]
    assert "pendulum" in kinds and "lorenz" in kinds

    # flow core
    pend = sl.make_system("pendulum")
    assert pend.dimension == 2
    approx(pend.divergence([0.3, 0.1]), 0.0, 1e-12)
    end = sl.flow_endpoint(pend, [1.2, 0.0], 5.0)
    h0 = 0.0 * 0.0 / 2 - math.cos(1.2)
    h1 = end[1] ** 2 / 2 - math.cos(end[0])
    approx(h0, h1, 1e-6)

    lin = sl.make_system("linear", {"n": 2, "a00": -2.0, "a11": 1.0})
    m = sl.monodromy(lin, [0.0, 0.0], 1.0)
    approx(m[0][0], math.exp(-2.0), 1e-6)
    approx(m[1][1], math.exp(1.0), 1e-6)

    times, states = sl.integrate(pend, [0.5, 0.5], 2.0)
    assert len(times) == len(states) and times[0] == 0.0

    # pseudo-orbits and shadowing
    cat = sl.make_system("suspended_toral_automorphism")
    po = sl.generate_noisy(cat, [0.2, 0.6, 0.1], 25, 1e-3, seed=7)
    prof = sl.gap_profile(cat, po)
    assert sl.is_delta_pseudo(prof, 1e-3)
    ok, big_n = sl.is_average_pseudo(prof, 1e-3)
    assert ok and big_n == 1
    x, report = sl.search_shadowing_orbit(cat, po, candidate_seeds=2, refine=8, seed=3)
    assert report.value < 0.05, report.value
    assert report.orbit_defect < 1e-8
    h = report.reparam
    assert h(0.0) == 0.0

    # chain dynamics on digraphs
    g = sl.Digraph(3, [(0, 1), (1, 2), (2, 2)])
    assert sl.chain_recurrent_set(g) == [2]
    holds, truncated, count = sl.check_conley_identity(g)
    assert holds and not truncated and count > 0
    ct, proper, consistent = sl.check_transitive_iff_no_proper_attractor(g, [0, 1, 2])
    assert (not ct) and proper and consistent
    assert sl.omega_limit(g, [0]) == [2]
    records = sl.attractors(g)
    assert records[0]["boxes"] == [2]

    # box transition graph on the gradient system
    grad = sl.make_system("gradient_morse_smale")
    tg = sl.build_transition_graph(grad, [0.0, 0.0], [1.0, 1.0], depth=5, t_step=3.0, seed=5)
    assert tg.node_count == 1024
    cr = sl.chain_recurrent_set(tg.graph)
    assert len(cr) > 0
    crit = [[0.0, 0.0], [0.5, 0.0], [0.0, 0.5], [0.5, 0.5]]
    for v in cr:
        c = tg.node_center(v)
        d = min(grad.distance(c, p) for p in crit)
        assert d <= 2 * tg.box_diameter

    # hyperbolicity
    orbits = sl.find_critical_orbits(pend, [0.0, -2.0], [2 * math.pi, 2.0], periodic=False)
    sings = [o for o in orbits if o.kind == "singularity"]
    assert len(sings) == 2
    saddle = [o for o in sings if o.hyperbolic]
    assert len(saddle) == 1 and sl.morse_index(saddle[0]) == 1

    fiber = sl.classify_periodic(cat, [0.0, 0.0, 0.0], math.log((3 + math.sqrt(5)) / 2))
    assert fiber.hyperbolic and sl.morse_index(fiber) == 1

    est = sl.estimate_splitting(lin, [1e-8, 1e-8], span=20.0, s_dim=1)
    assert est["conclusive"]
    approx(est["lambda_contract"], 2.0, 0.1)
    approx(est["lambda_dom"], 3.0, 0.15)

    # error surface
    try:
        sl.make_system("linear", {"n": 2, "bogus": 1.0})
        raise AssertionError("expected ShadowlabError")
    except sl.ShadowlabError:
        pass

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
