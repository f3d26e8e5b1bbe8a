"""Rayleigh-Ritz estimates of the adiabatic eigenvalues in a truncated basis.

The basis is the orthonormal dual-polar harmonic set of one channel. The step
occupies [-1, -1 + 1/rho^2]; there the integrand of every potential matrix
element is a polynomial, so Gauss-Legendre quadrature on that interval is exact.
"""

import logging
import os
import tempfile
from typing import List, Optional, Sequence

import numpy as np
from scipy import linalg

from ..core import adiabatic
from ..core.exceptions import DomainError, NumericError
from ..core.models import (
    RHO_CRITICAL,
    Channel,
    RitzBasisSpec,
    RitzSpectrum,
    StepPotential,
    TableResult,
)
from ..core.settings import MatrixSettings, SolverSettings
from ..specfun.jacobi import dual_polar_basis

logger = logging.getLogger(__name__)

DEFAULT_MATRIX = MatrixSettings()


def _check(spec: RitzBasisSpec, rho: float, settings: MatrixSettings) -> None:
    if not rho > RHO_CRITICAL:
        raise DomainError(f"rho must exceed 1/sqrt(2), got {rho}", {"rho": rho})
    if spec.size > settings.max_size:
        raise DomainError(
            f"basis of {spec.size} functions exceeds the {settings.max_size} limit",
            {"n_max": spec.n_max},
        )


def step_quadrature(rho: float, nodes: int):
    """Gauss-Legendre nodes and weights on the step support [-1, -1 + 1/rho^2]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 / rho ** 2
    return -1.0 + half * (x + 1.0), half * w


def potential_matrix(
    spec: RitzBasisSpec,
    potential: StepPotential,
    rho: float,
    settings: Optional[MatrixSettings] = None,
) -> np.ndarray:
    """v0bar * integral of phi_i phi_j over the step support, exactly symmetric."""
    s = settings or DEFAULT_MATRIX
    _check(spec, rho, s)
    size = spec.size
    if potential.is_free:
        return np.zeros((size, size))
    z, w = step_quadrature(rho, spec.nodes(s.extra_nodes))
    phi = dual_polar_basis(size, spec.channel.l1, spec.channel.l2, z)
    weighted = phi * w
    upper = np.triu(weighted @ phi.T)
    matrix = upper + np.triu(upper, 1).T
    return potential.v0bar * matrix


def hamiltonian(
    spec: RitzBasisSpec,
    potential: StepPotential,
    rho: float,
    settings: Optional[MatrixSettings] = None,
) -> np.ndarray:
    """Centrifugal diagonal plus the potential matrix."""
    centrifugal = ((spec.orders + 1.0) ** 2 - 0.25) / rho ** 2
    return np.diag(centrifugal) + potential_matrix(spec, potential, rho, settings)


def _dump(matrix: np.ndarray) -> str:
    fd, path = tempfile.mkstemp(prefix="hyperadia-ritz-", suffix=".npy")
    os.close(fd)
    np.save(path, matrix)
    return path


def ritz_eigenvalues(
    spec: RitzBasisSpec,
    potential: StepPotential,
    rho: float,
    settings: Optional[MatrixSettings] = None,
) -> RitzSpectrum:
    """Ascending eigenvalues of the truncated channel Hamiltonian."""
    matrix = hamiltonian(spec, potential, rho, settings)
    try:
        values = linalg.eigh(matrix, eigvals_only=True)
    except (linalg.LinAlgError, ValueError) as e:
        path = _dump(matrix)
        raise NumericError(
            f"symmetric eigensolver failed: {e}",
            dump_path=path,
            context={"n_max": spec.n_max, "rho": rho},
        ) from e
    logger.debug(f"ritz n_max={spec.n_max} rho={rho:g}: lowest {values[0]:.12e}")
    return RitzSpectrum(spec.channel, tuple(float(v) for v in values), spec.n_max, rho)


def eigen_decomposition(matrix: np.ndarray):
    """Eigenvalues and orthonormal eigenvectors of a symmetric matrix."""
    try:
        return linalg.eigh(matrix)
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericError(f"symmetric eigensolver failed: {e}", dump_path=_dump(matrix)) from e


def convergence_study(
    channel: Channel,
    potential: StepPotential,
    rho: float,
    n_max_list: Sequence[int],
    settings: Optional[MatrixSettings] = None,
    solver: Optional[SolverSettings] = None,
) -> TableResult:
    """Ritz V_eff of the channel for growing n_max against the direct solve."""
    n_values: List[int] = [int(n) for n in n_max_list]
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise DomainError("n_max list must be strictly ascending")
    direct = adiabatic.solve(channel, potential, rho, solver)
    table = TableResult(
        name="convergence_study",
        columns=["n_max", "v_eff_ritz", "v_eff_direct", "gap"],
        metadata={"channel": channel.label, "rho": rho, "v0bar": potential.v0bar},
    )
    for n_max in n_values:
        spectrum = ritz_eigenvalues(RitzBasisSpec(channel, n_max), potential, rho, settings)
        v_ritz = spectrum.v_eff()
        table.rows.append({
            "n_max": n_max,
            "v_eff_ritz": v_ritz,
            "v_eff_direct": direct.v_eff,
            "gap": v_ritz - direct.v_eff,
        })
    return table
