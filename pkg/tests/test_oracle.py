import ast
import inspect
import math

import numpy as np
import pytest
from hypothesis import assume, given

from spfc import oracle, scattering
from spfc.errors import DegenerateSystemError
from spfc.params import SystemParams
from spfc.verify import random_draws

from conftest import FIG2A, FIG4C_LOSSLESS, detunings, lossless_params, lossy_params


def solved(p, da):
    try:
        system = oracle.assemble(p, da)
        return system, oracle.solve(system)
    except DegenerateSystemError:
        assume(False)


def test_unknown_order_documented():
    assert oracle.UNKNOWNS == ("t1", "t2", "A", "F", "D")


def test_sparsity_of_jump_rows():
    m = oracle.assemble(FIG4C_LOSSLESS.with_dissipation(0.1), 0.4).matrix
    assert m.shape == (5, 5)
    assert set(np.flatnonzero(m[0])) == {0, 2}
    assert set(np.flatnonzero(m[1])) == {1, 4}
    assert np.all(np.isfinite(m))


def test_retrieval_sparsity():
    m = oracle.assemble_retrieval(FIG4C_LOSSLESS, 0.4).matrix
    assert set(np.flatnonzero(m[0])) == {1, 2}
    assert set(np.flatnonzero(m[1])) == {0, 4}


def test_decoupled_drives_block_diagonal():
    p = SystemParams(gamma1=2.0, gamma2=1.0, delta1=1.0, delta2=-2.0)
    system = oracle.assemble(p, 0.5)
    m = system.matrix
    # {t1, A} block and {t2, D} block do not talk to each other or to F
    assert m[0, 1] == m[0, 4] == m[2, 1] == m[2, 4] == m[2, 3] == 0
    assert m[1, 0] == m[1, 2] == m[4, 0] == m[4, 2] == m[4, 3] == 0
    assert oracle.solve(system).t2 == 0


def test_fig2a_resonance_zero_t1():
    sol = oracle.solve(oracle.assemble(FIG2A, 0.0))
    assert abs(sol.t1) < 1e-12


def test_two_level_limit():
    sol = oracle.solve(oracle.assemble(SystemParams(gamma1=1.0), 1.0))
    assert abs(sol.t1 - 1j) < 1e-12


def test_fig4c_unity():
    sol = oracle.solve(oracle.assemble(FIG4C_LOSSLESS, 3.0))
    assert abs(abs(sol.t2) - 1) < 1e-10


def test_singular_system_reported():
    # both drives off and every detuning zero: level f has an all-zero row
    with pytest.raises(DegenerateSystemError):
        oracle.solve(oracle.assemble(SystemParams(), 0.0))


def test_symmetric_retrieval_equals_forward():
    p = SystemParams(gamma1=1.3, gamma2=1.3, omega1=2.0, omega2=2.0, delta1=0.5,
                     delta2=0.5, gamma_a=0.05, gamma_f=0.02, gamma_d=0.05)
    fwd = oracle.solve(oracle.assemble(p, 1.1))
    back = oracle.solve_retrieval(p, 1.1)
    assert abs(fwd.t1 - back.t1) < 1e-12
    assert abs(fwd.t2 - back.t2) < 1e-12


def test_fig4c_retrieval_unity():
    assert abs(abs(oracle.solve_retrieval(FIG4C_LOSSLESS, 3.0).t2) - 1) < 1e-10


@given(lossless_params(), detunings)
def test_oracle_unitarity(p, da):
    _, sol = solved(p, da)
    assert abs(abs(sol.t1) ** 2 + abs(sol.t2) ** 2 - 1) < 1e-12


@given(lossless_params(), detunings)
def test_oracle_retrieval_reciprocity(p, da):
    _, fwd = solved(p, da)
    try:
        back = oracle.solve_retrieval(p, da)
    except DegenerateSystemError:
        assume(False)
    assert abs(abs(back.t2) - abs(fwd.t2)) < 1e-10


@given(lossy_params(), detunings)
def test_residual_small(p, da):
    system, sol = solved(p, da)
    assert oracle.residual(system, sol) < 1e-12 * np.linalg.norm(system.matrix, 2)


def test_differential_equivalence_sample():
    for d in random_draws(500, seed=7):
        sol = oracle.solve(oracle.assemble(d.params, d.delta_a))
        closed = scattering.amplitudes(d.params, d.delta_a)
        assert abs(sol.t1 - closed.t1) < 1e-10
        assert abs(sol.t2 - closed.t2) < 1e-10


def _imports(module):
    tree = ast.parse(inspect.getsource(module))
    names = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            names.add(node.module or "")
            names.update(a.name for a in node.names)
        elif isinstance(node, ast.Import):
            names.update(a.name for a in node.names)
    return names


def test_oracle_and_closed_form_are_independent():
    assert not any("scattering" in n for n in _imports(oracle))
    assert not any("oracle" in n for n in _imports(scattering))
