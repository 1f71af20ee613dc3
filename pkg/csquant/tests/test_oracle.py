import pytest

from csquant import oracle


@pytest.fixture(scope="module")
def grid():
    return oracle.OracleGrid()


def test_grid_must_be_dense():
    with pytest.raises(ValueError):
        oracle.OracleGrid(n_theta=100, n_phi=100)
    with pytest.raises(ValueError):
        oracle.OracleGrid(n_circle=1000)


def test_grid_mass(grid):
    assert grid.sphere(lambda t, p: 1.0 + 0.0 * t).real == pytest.approx(1.0, abs=1e-6)
    assert grid.circle(lambda t: 1.0 + 0.0 * t).real == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("L", [1, 3])
def test_theta_norms(grid, L):
    for value in oracle.theta_norms(grid, L):
        assert value == pytest.approx(1 / (L + 1), abs=oracle.AGREEMENT_TOL)


@pytest.mark.parametrize("L, expected", [(1, 2 / 3), (2, 0.5)])
def test_lambda_constant(grid, L, expected):
    assert oracle.lambda_constant(grid, L) == pytest.approx(expected, abs=oracle.AGREEMENT_TOL)


def test_lambda_needs_positive_L(grid):
    with pytest.raises(ValueError):
        oracle.lambda_constant(grid, 0)


def test_sphere_berezin_lieb(grid):
    values = oracle.sphere_berezin_lieb_sigma3(grid)
    assert values["lower"] == pytest.approx(2 / 3, abs=oracle.AGREEMENT_TOL)
    assert values["trace"] == 2.0
    assert values["upper"] == pytest.approx(6.0, abs=oracle.AGREEMENT_TOL)


def test_circle_berezin_lieb(grid):
    values = oracle.circle_berezin_lieb_diag(grid)
    assert values["lower"] == pytest.approx(1.0, abs=1e-9)
    assert values["upper"] == pytest.approx(4.0, abs=1e-9)
