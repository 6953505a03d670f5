"""Self-checks of bounds, inequalities, closed forms and identities.

Each suite returns a list of Check records; ``run_suite`` prints one line
per check. The sample sizes here are sized for an interactive run; the
test suite exercises larger ones.
"""

from dataclasses import dataclass

import numpy as np

from .exact import accord_from_omcp, omcp_isotropic, omcp_pure, omcp_two_qubit
from .measures import (
    DiscordConfig,
    concurrence,
    discord_isotropic,
    discord_min_side,
    discord_numerical,
    j_function,
    singlet_fraction_pure,
)
from .minimax import (
    OptimizerConfig,
    haar_random_unitary,
    hadamard_trace_identity,
    mcp,
    mcp_pure_fast,
    mcp_pure_trace_form,
    omcp_numerical,
)
from .sampling import random_bell_diagonal, random_classical_state, random_pure_state, sample_states
from .states import SchmidtForm, local_unitary_conjugate, make_isotropic, pure_state, schmidt_decompose, zero_accord_example

QUICK = OptimizerConfig(inner_restarts=6, outer_restarts=3)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _worst(name, errors, tol):
    worst = float(np.max(errors)) if len(errors) else 0.0
    return Check(name, worst <= tol, f"worst {worst:.3e} (tol {tol:g}, n={len(errors)})")


def _violations(name, slack_values):
    bad = int(np.sum(np.asarray(slack_values) < 0))
    return Check(name, bad == 0, f"{bad} violation(s) in {len(slack_values)} states")


def bounds_suite(seed=0, count=200):
    rng = np.random.default_rng([seed, 10])
    omcps = []
    for d in (2, 3):
        for _ in range(3):
            psi = random_pure_state(d, rng)
            omcps.append((d, omcp_numerical(psi.density(), QUICK).value))
    omcps += [(2, omcp_two_qubit(random_bell_diagonal(rng)).value) for _ in range(count)]
    omcps += [(2, omcp_two_qubit(s).value) for s in sample_states("general_i", count, seed)]
    slack = [min(v - 1 / d + 1e-6, 1 + 1e-9 - v) for d, v in omcps]
    checks = [_violations("1/d <= OMCP <= 1", slack)]
    classical = [random_classical_state(d, rng) for d in (2, 3) for _ in range(3)]
    acc = [accord_from_omcp(omcp_numerical(s, QUICK).value, s.d) for s in classical]
    checks.append(_worst("classical states have zero accord", acc, 1e-6))
    return checks


def bell_suite(seed=0, count=1000):
    states = sample_states("bell_diagonal", count, seed)
    accords = [accord_from_omcp(omcp_two_qubit(s).value, 2) for s in states]
    conc_slack = [a + 1e-9 - concurrence(s) for s, a in zip(states, accords)]
    cfg = DiscordConfig(restarts=8, seed=seed)
    j_slack = [discord_min_side(s, cfg).value + 1e-6 - j_function(a) for s, a in zip(states, accords)]
    general = sample_states("general_i", max(count // 10, 1), seed) + sample_states("general_ii", max(count // 10, 1), seed)
    g_slack = [
        discord_min_side(s, cfg).value + 1e-6 - j_function(accord_from_omcp(omcp_two_qubit(s).value, 2))
        for s in general
    ]
    return [
        _violations("Bell-diagonal: concurrence <= accord", conc_slack),
        _violations("Bell-diagonal: J(accord) <= discord", j_slack),
        _violations("general two-qubit: J(accord) <= discord", g_slack),
    ]


def oracle_suite(seed=0, count=5):
    rng = np.random.default_rng([seed, 11])
    pure_err = []
    for d in (2, 3):
        for _ in range(count):
            psi = random_pure_state(d, rng)
            pure_err.append(abs(omcp_numerical(psi.density(), QUICK).value - omcp_pure(psi).value))
    mixed = sample_states("general_i", count, seed)
    mixed_err = [abs(omcp_numerical(s, QUICK).value - omcp_two_qubit(s).value) for s in mixed]
    iso_err = [
        abs(omcp_numerical(make_isotropic(p, 3), QUICK).value - omcp_isotropic(p, 3).value) for p in (0.0, 0.5, 1.0)
    ]
    grid = np.linspace(0, 1, 21)
    discord_err = [abs(discord_numerical(make_isotropic(p, 2)).value - discord_isotropic(p)) for p in grid]
    fixture = zero_accord_example()
    fixture_accord = max(
        accord_from_omcp(omcp_two_qubit(fixture).value, 2),
        accord_from_omcp(omcp_numerical(fixture, QUICK).value, 2),
    )
    return [
        _worst("pure states: numerical vs Schmidt formula", pure_err, 1e-4),
        _worst("two-qubit mixed: numerical vs singular-value formula", mixed_err, 1e-4),
        _worst("isotropic d=3: numerical vs closed form", iso_err, 1e-4),
        _worst("isotropic discord: numerical vs I - J(accord)", discord_err, 1e-4),
        Check(
            "zero-accord entangled fixture",
            fixture_accord <= 1e-6 and concurrence(fixture) > 0,
            f"accord {fixture_accord:.3e}, concurrence {concurrence(fixture):.3e}",
        ),
    ]


def identities_suite(seed=0, count=100):
    rng = np.random.default_rng([seed, 12])
    lemma_err = []
    for d in (2, 3, 5):
        for _ in range(count):
            a, b = (rng.standard_normal((2, d, d)) + 1j * rng.standard_normal((2, d, d)))
            lhs, rhs = hadamard_trace_identity(a, b)
            lemma_err.append(abs(lhs - rhs))
    form_err = []
    sf_err = []
    for k in range(count // 2):
        d = (2, 3, 4)[k % 3]
        s = SchmidtForm.from_coeffs(np.sort(rng.dirichlet(np.ones(d)))[::-1] ** 0.5)
        u_a, u_b = haar_random_unitary(d, rng), haar_random_unitary(d, rng)
        full = mcp(pure_state(s.compose(), d), u_a, u_b)
        fast = mcp_pure_fast(s.coeffs, u_a, u_b)
        trace = mcp_pure_trace_form(np.diag(s.coeffs), u_a, u_b)
        form_err.append(max(abs(full - fast), abs(full - trace)))
        sf_err.append(abs(singlet_fraction_pure(s) - omcp_pure(s).value))
    # local unitaries leave the closed form untouched
    psi = random_pure_state(3, rng)
    rotated = local_unitary_conjugate(psi.density(), haar_random_unitary(3, rng), haar_random_unitary(3, rng))
    lu_err = abs(omcp_pure(schmidt_decompose(psi)).value - omcp_pure(pure_state(np.linalg.eigh(rotated.matrix)[1][:, -1], 3)).value)
    return [
        _worst("Hadamard trace lemma", lemma_err, 1e-12),
        _worst("pure-state MCP: full = Hadamard = trace forms", form_err, 1e-12),
        Check("singlet fraction equals pure OMCP", max(sf_err) == 0.0, f"max difference {max(sf_err):.1e}"),
        _worst("pure OMCP invariant under local unitaries", [lu_err], 1e-12),
    ]


SUITES = {
    "bounds": bounds_suite,
    "bell": bell_suite,
    "oracle": oracle_suite,
    "identities": identities_suite,
}


def run_suite(name, seed=0, echo=print):
    """Run one suite (or ``"all"``); print a line per check and return all Check records."""
    names = list(SUITES) if name == "all" else [name]
    checks = []
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}; choose from {sorted(SUITES) + ['all']}")
        for check in SUITES[n](seed):
            echo(check.line())
            checks.append(check)
    return checks
