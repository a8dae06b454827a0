import numpy as np
import pytest

from coeff_bounds import kernels
from coeff_bounds.bounds import CLASSES, delta_objective, schur_from_flat
from coeff_bounds.omega import stratified_inputs

BACKENDS = kernels.available_backends()


def _points(rng, count, real_z1, n):
    cols = []
    if real_z1:
        cols.append(rng.uniform(-1, 1, count))
    else:
        r, a = np.sqrt(rng.random(count)), rng.random(count) * 2 * np.pi
        cols += [r * np.cos(a), r * np.sin(a)]
    for _ in range(n - 2):
        r, a = np.sqrt(rng.random(count)), rng.random(count) * 2 * np.pi
        cols += [r * np.cos(a), r * np.sin(a)]
    return np.column_stack(cols)


def test_compiled_backend_is_built():
    # the package ships the extension; this guards against a silent fallback
    assert "cython" in BACKENDS


@pytest.mark.parametrize("name", sorted(CLASSES))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_batch_matches_scalar_objective(name, n):
    spec = CLASSES[name]
    real = spec.needs_real_zeta1(n)
    pts = _points(np.random.default_rng(n), 200, real, n)
    want = np.array([delta_objective(spec, n, schur_from_flat(spec, n, x)) for x in pts])
    for b in BACKENDS:
        got = kernels.get_backend(b).delta_abs_batch(spec.b, n, pts, real)
        assert np.max(np.abs(got - want)) < 1e-12


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
@pytest.mark.parametrize("real", [True, False])
def test_backend_parity_batch_and_point(real):
    py, cy = kernels.get_backend("python"), kernels.get_backend("cython")
    pts = _points(np.random.default_rng(1), 5000, real, 5)
    for spec in CLASSES.values():
        a = py.delta_abs_batch(spec.b, 5, pts, real)
        c = cy.delta_abs_batch(spec.b, 5, pts, real)
        assert np.max(np.abs(a - c)) < 1e-12
        for x in pts[:50]:
            assert abs(py.delta_abs_point(spec.b, 5, x, real) - cy.delta_abs_point(spec.b, 5, x, real)) < 1e-12


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backend_parity_omega():
    py, cy = kernels.get_backend("python"), kernels.get_backend("cython")
    for inp in stratified_inputs(3, 70, per_branch=10):
        a = py.omega_oracle(*inp.as_tuple(), 64, 2000)[0]
        c = cy.omega_oracle(*inp.as_tuple(), 64, 2000)[0]
        assert abs(a - c) < 1e-10


def test_bad_backend_and_n():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
    with pytest.raises(ValueError):
        kernels.delta_abs_batch((1, 1, 1, 1), 6, np.zeros((1, 7)), True)
