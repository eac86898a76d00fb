"""Acceptance gate: eleven end-to-end criteria, one test each.

Each test asserts the stated tolerance; the pytest -v line for the test
is the pass/fail record for the corresponding criterion.
"""

import math
import time

import numpy as np
import pytest

from dunkl_darboux.darboux import (intertwining_residual, transform,
                                   wronskian, wronskian_first_derivative)
from dunkl_darboux.model import DunklParams, dunkl_residual, modified_norm
from dunkl_darboux.numerics import derivative
from dunkl_darboux.pointmap import (energy_relation_residual, forward_map,
                                    induced_potential, inverse_map)
from dunkl_darboux.scenarios import (DUNKL_GRID, ScenarioGaussianMass,
                                     ScenarioHarmonicEnergy,
                                     ScenarioHarmonicEnergyPdm,
                                     bound_state_energy, closed_form_hatpsi_E4,
                                     closed_form_hatv4, confluent_chain,
                                     gaussian_solution,
                                     gaussian_solution_function,
                                     harmonic_initial_solution_function,
                                     mapped_initial_solution, parity_exponent,
                                     pdm_equivalence_nu, pipeline_hatpsi,
                                     pipeline_vhat, printed_bound_state,
                                     standard_chain_order1, standard_chain_u12)

ODD_HALF = DunklParams(nu=0.5, delta=-1, mu=1)
EVEN_HALF = DunklParams(nu=0.5, delta=1, mu=1)
TRANSFORM_PARAMS = DunklParams(nu=2.5, delta=-1, mu=1)
E1 = 12.0 ** (2.0 / 3.0)


def test_criterion_01_printed_states_solve_equation():
    start = time.monotonic()
    for delta, params in ((-1, ODD_HALF), (1, EVEN_HALF)):
        system = ScenarioGaussianMass().system(params)
        for n in range(3):
            psi = printed_bound_state(n, delta)
            E = bound_state_energy(n, params, "ene0")
            worst = max(abs(dunkl_residual(system, psi, E, float(x),
                                           relative=True))
                        for x in DUNKL_GRID)
            assert worst <= 1e-10, (delta, n, worst)
    assert time.monotonic() - start < 1.0


def test_criterion_02_energy_formulas():
    for n in range(6):
        assert abs(bound_state_energy(n, ODD_HALF, "ene0") - (n + 0.75)) <= 1e-14
    assert abs(bound_state_energy(0, TRANSFORM_PARAMS, "ene1") - 4.0) <= 1e-12


def test_criterion_03_kummer_route_equivalence():
    rng = np.random.default_rng(11)
    xs = np.linspace(0.1, 3.0, 25)
    for _ in range(20):
        delta = int(rng.choice([-1, 1]))
        nu = rng.uniform(0.5, 3.0)
        E = rng.uniform(0.5, 4.0)
        params = DunklParams(nu=nu, delta=delta, mu=1)
        for x in xs:
            direct = gaussian_solution(params, E, float(x), form="direct")
            decaying = gaussian_solution(params, E, float(x), form="decaying")
            assert abs(direct - decaying) <= 1e-10 * max(
                abs(direct), abs(decaying), 1e-8)


def test_criterion_04_point_transformation_theorem():
    cases = [
        (ScenarioGaussianMass(), ODD_HALF,
         bound_state_energy(0, ODD_HALF, "ene0"),
         gaussian_solution_function, np.linspace(0.3, 2.0, 9), 0.9),
        (ScenarioHarmonicEnergy(), TRANSFORM_PARAMS, 4.0,
         harmonic_initial_solution_function, np.linspace(-1.5, 0.8, 9), 0.9),
    ]
    for scenario, params, E, solution, ys, x_rt in cases:
        psi = solution(params, E)
        coord, mass = scenario.coord(), scenario.mass()

        def phi(y):
            return forward_map(psi, coord, mass, params, y)

        # grid-level scale: the largest term magnitude over the probe set
        terms = []
        residuals = []
        for y in ys:
            second = derivative(phi, float(y), 2, 1e-3)
            u = induced_potential(coord, mass, scenario.potential(), params,
                                  E, float(y))
            residuals.append(second + (E - u) * phi(float(y)))
            terms.append(abs(second) + abs((E - u) * phi(float(y))))
        scale = max(terms)
        assert max(abs(r) for r in residuals) <= 1e-7 * scale
        back = inverse_map(phi, coord, mass, params, x_rt)
        assert abs(back - psi.f(x_rt)) <= 1e-10 * max(1.0, abs(psi.f(x_rt)))


def test_criterion_05_pipeline_matches_printed_closed_forms():
    start = time.monotonic()
    chain = standard_chain_u12(4.0, validate=False)
    xs = np.linspace(0.2, 3.0, 60)
    ratios = np.array([pipeline_hatpsi(TRANSFORM_PARAMS, 4.0, chain, float(x))
                       / closed_form_hatpsi_E4(float(x)) for x in xs])
    assert np.std(ratios) / abs(np.mean(ratios)) <= 1e-6
    for x in xs:
        got = pipeline_vhat(4.0, chain, float(x))
        want = closed_form_hatv4(float(x))
        assert abs(got - want) <= 1e-6 * max(1.0, abs(want))
    assert time.monotonic() - start < 5.0


def _pruned_grid(chain, ys):
    """Drop 1e-2-radius disks around Wronskian sign changes."""
    vals = [wronskian(chain, float(y)) for y in ys]
    zeros = []
    for i in range(len(ys) - 1):
        if vals[i] == 0.0:
            zeros.append(float(ys[i]))
        elif vals[i] * vals[i + 1] < 0:
            # linear interpolation of the crossing inside the bracket
            t = vals[i] / (vals[i] - vals[i + 1])
            zeros.append(float(ys[i] + t * (ys[i + 1] - ys[i])))
    keep = [y for y in ys
            if all(abs(y - z) > 1e-2 for z in zeros)]
    return np.array(keep)


def test_criterion_06_intertwining():
    for E in (4.0, E1):
        phi = mapped_initial_solution(TRANSFORM_PARAMS, E)
        chains = [
            (standard_chain_order1(E, validate=False), 1e-6),
            (standard_chain_u12(E, validate=False), 1e-6),
            (confluent_chain(E), 1e-4),
        ]
        ys = np.linspace(-2.0, 1.0, 151)
        for chain, tol in chains:
            grid = _pruned_grid(chain, ys)
            output = transform(chain, phi, grid)
            assert output.wronskian_floor > 0
            floor = max(abs(output.phi_hat(float(y))) * (abs(phi.eps) + 1.0)
                        for y in grid[::5])
            for y in grid[::5]:
                y = float(y)
                res = intertwining_residual(chain, output, phi.eps, y)
                # scale of the transformed-equation terms at this point
                second = derivative(output.phi_hat, y, 2, 1e-3)
                scale = (abs(second)
                         + abs((phi.eps - output.u_hat(y)) * output.phi_hat(y)))
                assert abs(res) <= tol * max(scale, floor), \
                    (E, chain.kind, len(chain.eps), y)


def test_criterion_07_wronskian_first_derivative_identities():
    std = standard_chain_u12(4.0, validate=False)
    con = confluent_chain(4.0)
    ys = np.linspace(-1.8, 0.9, 10)
    # the stencil reference inherits the Wronskian evaluation noise, so
    # "relative" means relative to the grid-level derivative magnitude
    std_scale = max(abs(wronskian_first_derivative(std, float(y))) for y in ys)
    con_scale = max(abs(wronskian_first_derivative(con, float(y))) for y in ys)
    for y in ys:
        want = derivative(lambda t: wronskian(std, t), float(y), 1, 1e-4)
        got = wronskian_first_derivative(std, float(y))
        assert abs(got - want) <= 1e-7 * std_scale
        u1 = std.funcs[0][0](float(y))
        u2 = std.funcs[1][0](float(y))
        assert abs(got - (std.eps[0] - std.eps[1]) * u1 * u2) <= 1e-7 * std_scale
        # the confluent Wronskian carries parameter-stencil noise, so
        # its reference derivative needs the wider step
        want = derivative(lambda t: wronskian(con, t), float(y), 1, 1e-3)
        got = wronskian_first_derivative(con, float(y))
        assert abs(got - want) <= 1e-7 * con_scale
        v1 = con.funcs[0][0](float(y))
        assert abs(got + v1 * v1) <= 1e-7 * con_scale


def test_criterion_08_norm_preservation_relation():
    rng = np.random.default_rng(23)
    cases = [
        (ScenarioGaussianMass(), ODD_HALF, (0.5, 3.0), (0.3, 3.5)),
        (ScenarioHarmonicEnergy(), TRANSFORM_PARAMS, (2.0, 6.0), (-2.0, 1.0)),
        (ScenarioHarmonicEnergyPdm(),
         DunklParams(nu=pdm_equivalence_nu(2.5, -1, -1), delta=-1, mu=1),
         (2.0, 6.0), (-2.0, 1.0)),
    ]
    for scenario, params, (e_lo, e_hi), (y_lo, y_hi) in cases:
        for _ in range(50):
            E = rng.uniform(e_lo, e_hi)
            y = rng.uniform(y_lo, y_hi)
            res = energy_relation_residual(scenario.coord(), scenario.mass(),
                                           scenario.potential(), params, E, y)
            assert abs(res) <= 1e-6, (type(scenario).__name__, E, y, res)


def test_criterion_09_parity_classification_table():
    for nu in (0.5, 1.0, 2.5):
        odd = parity_exponent(DunklParams(nu=nu, delta=-1, mu=1))
        assert odd.exponent == pytest.approx(1.0, abs=1e-13)
        assert odd.classification == "odd"
    for nu in (0.5, 1.7, 3.0):
        even = parity_exponent(DunklParams(nu=nu, delta=1, mu=1))
        assert even.exponent == pytest.approx(0.0, abs=1e-13)
        assert even.classification == "even"
    for nu in (0.1, 0.3, 0.49):
        bad = parity_exponent(DunklParams(nu=nu, delta=1, mu=1))
        assert bad.classification == "no admissible parity"


def test_criterion_10_modified_norms():
    for delta, params in ((-1, ODD_HALF), (1, EVEN_HALF)):
        system = ScenarioGaussianMass().system(params)
        for n in range(3):
            psi = printed_bound_state(n, delta)
            E = bound_state_energy(n, params, "ene0")
            res = modified_norm(system, psi, E)
            assert math.isfinite(res.value) and res.value > 0
    system = ScenarioGaussianMass().system(ODD_HALF)
    ground = modified_norm(system, printed_bound_state(0, -1),
                           bound_state_energy(0, ODD_HALF, "ene0"))
    assert abs(ground.value - 2.0) <= 1e-8


def test_criterion_11_scenario_equivalence():
    harm = ScenarioHarmonicEnergy()
    pdm = ScenarioHarmonicEnergyPdm()
    coord = harm.coord()
    for nu_bar, delta_bar in ((2.5, -1), (1.0, 1), (0.5, -1)):
        nu = pdm_equivalence_nu(nu_bar, delta_bar, delta_bar)
        bar_params = DunklParams(nu=nu_bar, delta=delta_bar, mu=1)
        pdm_params = DunklParams(nu=nu, delta=delta_bar, mu=1)
        for E in (4.0, E1):
            for y in np.linspace(-2.0, 1.0, 40):
                u_harm = induced_potential(coord, harm.mass(),
                                           harm.potential(), bar_params,
                                           E, float(y))
                u_pdm = induced_potential(coord, pdm.mass(), pdm.potential(),
                                          pdm_params, E, float(y))
                assert abs(u_harm - u_pdm) <= 1e-10 * max(1.0, abs(u_harm))
