"""Tests for data models."""

import math

import numpy as np
import pytest

from hyperadia.core.exceptions import ConfigError, DomainError
from hyperadia.core.models import (
    AdiabaticSolution,
    Channel,
    Comparison,
    GridSpec,
    ModelKind,
    OutputFormat,
    RadialProblem,
    RitzBasisSpec,
    RitzSpectrum,
    RunConfig,
    Spacing,
    StepPotential,
    TableResult,
)
from hyperadia.analysis.asymptotics import coefficients_log


class TestChannel:
    """Test channel quantum numbers."""

    def test_derived_orders(self):
        channel = Channel(-2, 1, 3)
        assert channel.M == 3
        assert channel.N == 9
        assert channel.inplane_momentum == -1
        assert channel.abs_l1 == 2
        assert channel.canonical() == Channel(2, 1, 3)

    def test_from_string(self):
        assert Channel.from_string("1, -1, 2") == Channel(1, -1, 2)

    @pytest.mark.parametrize("text", ["1,2", "a,b,c", "1,2,3,4"])
    def test_from_string_invalid(self, text):
        with pytest.raises(ConfigError):
            Channel.from_string(text)

    def test_negative_radial_index(self):
        with pytest.raises(DomainError):
            Channel(0, 0, -1)

    def test_non_integer(self):
        with pytest.raises(DomainError):
            Channel(0.5, 0, 0)

    def test_to_dict(self):
        assert Channel(1, 0, 2).to_dict() == {"l1": 1, "l2": 0, "l": 2, "N": 5}


class TestStepPotential:
    """Test potential parameterizations."""

    def test_from_lambda_star(self):
        potential = StepPotential.from_lambda_star(10.0)
        assert potential.v0bar == pytest.approx(8 * math.pi ** 2 / 100, rel=1e-15)
        assert potential.lambda_star == pytest.approx(10.0, rel=1e-14)

    def test_free(self):
        assert StepPotential(0.0).is_free
        assert StepPotential(0.0).lambda_star == math.inf

    @pytest.mark.parametrize("value", [-1.0, math.inf, math.nan])
    def test_invalid_strength(self, value):
        with pytest.raises(DomainError):
            StepPotential(value)

    @pytest.mark.parametrize("value", [0.0, -2.0])
    def test_invalid_lambda_star(self, value):
        with pytest.raises(DomainError):
            StepPotential.from_lambda_star(value)


class TestRitzBasisSpec:
    """Test basis truncation bookkeeping."""

    def test_size_and_orders(self):
        spec = RitzBasisSpec(Channel(1, 2, 0), n_max=11)
        assert spec.size == 5
        assert list(spec.orders) == [3, 5, 7, 9, 11]

    def test_cutoff_below_lowest_order(self):
        with pytest.raises(DomainError):
            RitzBasisSpec(Channel(2, 2, 0), n_max=3)

    def test_nodes_minimum(self):
        spec = RitzBasisSpec(Channel(0, 0, 0), n_max=10, quadrature_nodes=3)
        with pytest.raises(DomainError):
            spec.nodes()

    def test_nodes_default(self):
        spec = RitzBasisSpec(Channel(0, 0, 0), n_max=10)
        assert spec.nodes(extra=8) == spec.size + 8


class TestRitzSpectrum:
    def test_v_eff_subtracts_matching_free_term(self):
        rho = 2.0
        free = [((2 * i + 1) ** 2 - 0.25) / rho ** 2 for i in range(3)]
        spectrum = RitzSpectrum(Channel(0, 0, 1), tuple(f + 0.1 for f in free), 4, rho)
        assert spectrum.v_eff() == pytest.approx(0.1, abs=1e-14)
        assert spectrum.lowest == pytest.approx(free[0] + 0.1)

    @pytest.mark.parametrize("index", [2, 5, -2])
    def test_index_beyond_truncation(self, index):
        spectrum = RitzSpectrum(Channel(0, 0, 1), (0.1, 0.2, 0.3), 4, 2.0)
        with pytest.raises(DomainError) as excinfo:
            spectrum.v_eff(index)
        assert excinfo.value.context["size"] == 3
        assert excinfo.value.context["channel"] == "0,0,1"


class TestRadialProblem:
    def test_outer_radius_default(self):
        problem = RadialProblem(Channel(0, 0, 0), StepPotential(1.0), k=0.01)
        assert problem.outer_radius(20.0) == pytest.approx(2000.0)

    @pytest.mark.parametrize("kwargs", [
        {"k": 0.0},
        {"k": 1.0, "rho_min": 0.5},
        {"k": 1.0, "rho_min": 1.0, "rho_max": 0.9},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            RadialProblem(Channel(0, 0, 0), StepPotential(1.0), **kwargs)


class TestGridSpec:
    """Test grid parsing."""

    def test_log_grid(self):
        grid = GridSpec.from_string("1:100:3:log")
        np.testing.assert_allclose(grid.values(), [1.0, 10.0, 100.0])

    def test_linear_grid(self):
        grid = GridSpec.from_string("1:3:3:lin")
        assert grid.spacing is Spacing.LINEAR
        np.testing.assert_allclose(grid.values(), [1.0, 2.0, 3.0])

    def test_default_spacing_is_log(self):
        assert GridSpec.from_string("1:10:2").spacing is Spacing.LOG

    def test_range_shorthand(self):
        grid = GridSpec.from_string("1e-6..1e-3")
        assert grid.points == 4
        np.testing.assert_allclose(grid.values(), [1e-6, 1e-5, 1e-4, 1e-3])

    @pytest.mark.parametrize("text", ["1:2", "5:1:3", "0:1:3:log", "1:2:x", "1:2:3:cubic", "3..1"])
    def test_invalid(self, text):
        with pytest.raises(ConfigError):
            GridSpec.from_string(text)

    def test_string_round_trip(self):
        grid = GridSpec(0.75, 1000.0, 17, Spacing.LOG)
        assert GridSpec.from_string(grid.to_string()) == grid


class TestAsymptoticModel:
    def test_with_kind_keeps_coefficients(self):
        model = coefficients_log(Channel(0, 0, 0), StepPotential.from_lambda_star(10.0))
        wider = model.with_kind(ModelKind.WIDER)
        assert wider.kind is ModelKind.WIDER
        assert wider.A_star == model.A_star

    def test_cannot_switch_class(self):
        model = coefficients_log(Channel(0, 0, 0), StepPotential.from_lambda_star(10.0))
        with pytest.raises(DomainError):
            model.with_kind(ModelKind.INVERSE_POWER)


class TestTableResult:
    def test_comparison_pass_fail(self):
        ok = Comparison("a", 1.0, 1.0 + 1e-9, 1e-8, "Table 1")
        bad = Comparison("b", 1.0, 1.1, 1e-3, "Table 1")
        nan = Comparison("c", math.nan, 1.0, 1.0, "Table 1")
        assert ok.passed
        assert not bad.passed
        assert not nan.passed

    def test_sidecar_flags(self):
        table = TableResult("t", ["x"], rows=[{"x": 1.0}], metadata={"rho": 5.0})
        assert not table.partial
        assert table.reference_ok

        table.errors.append("row failed")
        table.comparisons.append(Comparison("k", 2.0, 1.0, 0.5, "Table 2"))
        sidecar = table.sidecar()
        assert sidecar["partial"] is True
        assert sidecar["reference_ok"] is False
        assert sidecar["rho"] == 5.0
        assert sidecar["comparisons"][0]["abs_diff"] == 1.0

    def test_column(self):
        table = TableResult("t", ["x"], rows=[{"x": 1}, {"x": 2}])
        assert table.column("x") == [1, 2]


class TestRunConfig:
    """Test the command-line run configuration."""

    def test_exactly_one_strength(self):
        with pytest.raises(ConfigError):
            RunConfig()
        with pytest.raises(ConfigError):
            RunConfig(lambda_star=10.0, v0bar=1.0)

    def test_rho_above_critical(self):
        with pytest.raises(ConfigError):
            RunConfig(v0bar=1.0, rho=0.5)
        with pytest.raises(ConfigError):
            RunConfig(v0bar=1.0, rho_grid=GridSpec(0.6, 2.0, 3))

    def test_potential(self):
        assert RunConfig(v0bar=2.0).potential == StepPotential(2.0)
        assert RunConfig(lambda_star=10.0).potential == StepPotential.from_lambda_star(10.0)

    def test_dict_round_trip(self):
        run = RunConfig(
            lambda_star=10.0,
            channels=[Channel(0, 0, 0), Channel(1, -1, 2)],
            rho_grid=GridSpec(1.0, 100.0, 5),
            n_max=[20, 40],
            k_grid=GridSpec(1e-4, 1e-2, 3),
            output_format=OutputFormat.JSON,
            jobs=2,
            overrides=["adiabatic.xtol=1e-14"],
        )
        assert RunConfig.from_dict(run.to_dict()) == run


class TestAdiabaticSolution:
    def test_to_dict_uses_lambda_key(self):
        solution = AdiabaticSolution(Channel(0, 0, 0), 5.0, 0.1, 0.1, 0.2, 0.01, 0.0)
        data = solution.to_dict()
        assert data["lambda"] == 0.2
        assert data["channel"] == "0,0,0"
