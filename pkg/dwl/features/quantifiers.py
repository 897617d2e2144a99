"""
Purity, relative linear entropies and mutual information of Dirac Wigner matrices.

Every phase-space integral is taken over dx dk = ds dk / sqrt(eB) and purities
carry the extra factor 2 pi / sqrt(eB), so a pure state has purity 1.

The quantifiers accept a LandauState, a WignerMatrixField or a MixtureField;
anything with an `eB` attribute and a `__call__(PhasePoint) -> (..., 4, 4)` works.
A SampledWigner carries omega already evaluated on its grid and is reused as is.
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict

import numpy as np

from entities.clifford import GAMMA0_DIAG, decompose
from entities.grid import QuadratureGrid, default_grid, turning_point
from entities.landau import LandauState, coefficients, spinor_from_s
from entities.wigner import SampledWigner, WignerMatrixField, kernel_cross, kernel_L, kernel_M
from features.concurrence import (concurrence_general, concurrence_sq_field, concurrence_sq_tabulated,
                                  concurrence_sq_trace, eof_from_concurrence, spin_parity_density)
from features.currents import spin_expectation
from utils.errors import ArgumentError, NumericalAccuracyError
from utils.numerics import resolution_residual, sample_2d, weighted_sum


logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-8


def _as_field(source):
    if isinstance(source, LandauState):
        return WignerMatrixField(source)
    if not (callable(source) and hasattr(source, 'eB')):
        raise ArgumentError(f"source: expected a Landau state or a Wigner matrix field, got {type(source).__name__}")
    return source


def _sampled(source, grid) -> SampledWigner:
    if isinstance(source, SampledWigner):
        if grid is not None and grid != source.grid:
            raise ArgumentError("grid: differs from the grid the Wigner matrix was sampled on")
        return source
    return SampledWigner(_as_field(source), _grid_for(source, grid))


def _phase_space_integral(f, grid: QuadratureGrid, scale: float, check: bool, tolerance: float,
                          values=None) -> float:
    """
    scale * int ds dk f, optionally checked against the coarsened grid.

    `values` are f already sampled on `grid`; f itself is then only evaluated
    on the coarsened grid.
    """
    values = sample_2d(f, grid) if values is None else values
    value = float(np.real(weighted_sum(values, grid))) * scale
    if check:
        residual = resolution_residual(f, grid, value / scale) * scale
        if residual > tolerance:
            raise NumericalAccuracyError(
                f"grid: under-resolved, coarse/fine residual {residual:.3e} exceeds {tolerance:.1e}",
                residual=residual,
            )
    return value


def _purity_scale(eB: float) -> float:
    # (2 pi / sqrt(eB)) * (1 / sqrt(eB)) from dx = ds / sqrt(eB)
    return 2.0 * np.pi / eB


def _trace_square(omega):
    """
    Tr[(omega gamma_0)^2] pointwise.
    """
    product = omega * GAMMA0_DIAG
    return np.real(np.einsum('...ij,...ji->...', product, product))


def purity_trace(source, grid: QuadratureGrid = None, check: bool = True,
                 tolerance: float = DEFAULT_TOLERANCE) -> float:
    """
    P = (2 pi / sqrt(eB)) int dx dk Tr[(gamma_0 omega)^2].
    """
    sampled = _sampled(source, grid)
    return _phase_space_integral(lambda p: _trace_square(sampled.field(p)), sampled.grid,
                                 _purity_scale(sampled.eB), check, tolerance,
                                 values=_trace_square(sampled.omega))


def purity_clifford(source, grid: QuadratureGrid = None, check: bool = True,
                    tolerance: float = DEFAULT_TOLERANCE) -> float:
    """
    P = 4 (2 pi / sqrt(eB)) int dx dk [S^2 + Pi^2 + V.V + A.A + 1/2 T.T], all sums Euclidean.
    """
    sampled = _sampled(source, grid)

    def clifford_square(omega):
        components = decompose(omega)
        imaginary = components.max_imag()
        if imaginary > 1e-10 * max(1.0, sampled.eB):
            logger.warning(f"Clifford components carry imaginary parts up to {imaginary:.3e}")
        return 4.0 * np.real(components.euclidean_square())

    return _phase_space_integral(lambda p: clifford_square(sampled.field(p)), sampled.grid,
                                 _purity_scale(sampled.eB), check, tolerance,
                                 values=clifford_square(sampled.omega))


def _coordinate_grid(st: LandauState, points: int, pad: float) -> QuadratureGrid:
    # s along the first axis, the separation t = sqrt(eB) u along the second
    half_width = turning_point(st.n) + pad
    return QuadratureGrid(-half_width, half_width, -2 * half_width, 2 * half_width, points, points)


def _coordinate_purity(st, density_of, grid, check, tolerance):
    def integrand(p):
        return density_of(spinor_from_s(st, p.s - 0.5 * p.k)) * density_of(spinor_from_s(st, p.s + 0.5 * p.k))

    return _phase_space_integral(integrand, grid, 1.0 / st.eB, check, tolerance)


def _dagger_density(psi):
    return np.sum(np.abs(psi) ** 2, axis=-1)


def _bar_density(psi):
    return np.sum(GAMMA0_DIAG * np.abs(psi) ** 2, axis=-1)


def purity_coordinate(st: LandauState, grid: QuadratureGrid = None, check: bool = True,
                      tolerance: float = DEFAULT_TOLERANCE, points: int = 512, pad: float = 6.0) -> float:
    """
    P = int dx du rho(x - u/2) rho(x + u/2) with rho = psi^dagger psi.
    """
    grid = _coordinate_grid(st, points, pad) if grid is None else grid
    return _coordinate_purity(st, _dagger_density, grid, check, tolerance)


def purity_coordinate_bar(st: LandauState, grid: QuadratureGrid = None, check: bool = True,
                          tolerance: float = DEFAULT_TOLERANCE, points: int = 512, pad: float = 6.0) -> float:
    """
    Same double integral with rho = psi-bar psi; it equals (int psi-bar psi dx)^2 = (m/E_n)^2.
    """
    grid = _coordinate_grid(st, points, pad) if grid is None else grid
    return _coordinate_purity(st, _bar_density, grid, check, tolerance)


def coordinate_bar_closed(st: LandauState) -> float:
    return (st.params.m / st.energy) ** 2


def local_purity(st: LandauState, p, tabulated: bool = False):
    """
    Non-integrated purity eta^2 [(1+A^2)^2 L_lead^2 + 2 B^2 (1+A^2) |K_n|^2 + B^4 L_other^2].

    With `tabulated` the cross term uses M_n^2 = (Re K_n)^2 only.
    """
    a, b, eta = coefficients(st)
    lead = kernel_L(st.leading_order, p, st.eB)
    other = kernel_L(st.other_order, p, st.eB)
    if tabulated:
        cross_sq = kernel_M(st.n, p, st.eB) ** 2
    else:
        cross_sq = np.abs(kernel_cross(st.n, p, st.eB)) ** 2

    weight = 1.0 + a * a
    return eta * eta * (weight ** 2 * lead ** 2 + 2.0 * b * b * weight * cross_sq + b ** 4 * other ** 2)


def purity_tabulated(st: LandauState, grid: QuadratureGrid = None) -> float:
    """
    Integral of the tabulated local purity; eta^2 [(1+A^2)^2 + B^2 (1+A^2) + B^4] < 1.
    """
    grid = _grid_for(st, grid)
    return _phase_space_integral(lambda p: local_purity(st, p, tabulated=True), grid,
                                 _purity_scale(st.eB), False, 0.0)


def purity_tabulated_closed(st: LandauState) -> float:
    a, b, eta = coefficients(st)
    weight = 1.0 + a * a
    return eta * eta * (weight ** 2 + b * b * weight + b ** 4)


def average_omega(source, grid: QuadratureGrid = None) -> np.ndarray:
    """
    <omega> = int dx dk omega, a 4x4 matrix.
    """
    sampled = _sampled(source, grid)
    return weighted_sum(sampled.omega, sampled.grid) / np.sqrt(sampled.eB)


def entropy_sp_closed(st: LandauState) -> float:
    """
    1 - eta^2 [(1+A^2)^2 + B^4].
    """
    a, b, eta = coefficients(st)
    return 1.0 - eta * eta * ((1.0 + a * a) ** 2 + b ** 4)


def entropy_sp_definition(source, grid: QuadratureGrid = None) -> float:
    """
    1 - Tr[(gamma_0 <omega>)^2].
    """
    average = average_omega(source, grid)
    return 1.0 - float(_trace_square(average))


def entropy_sp(source, grid: QuadratureGrid = None, tolerance: float = 1e-6) -> float:
    """
    Spin-parity relative linear entropy.

    For a Landau state the closed form is returned and the quadrature of the
    definition is only compared against it; mixtures use the definition.
    """
    defined = entropy_sp_definition(source, grid)
    st = source.state if isinstance(source, SampledWigner) else source
    if not isinstance(st, LandauState):
        return defined

    closed = entropy_sp_closed(st)
    difference = abs(defined - closed)
    logger.debug(f"I_SP {st.label()}: closed {closed:.12f}, definition {defined:.12f}")
    if difference > tolerance:
        logger.warning(f"I_SP definition and closed form differ by {difference:.3e} for {st.label()}")
    return closed


def entropy_xk(source, grid: QuadratureGrid = None, check: bool = True,
               tolerance: float = DEFAULT_TOLERANCE) -> float:
    """
    1 - (2 pi / sqrt(eB)) int dx dk rho^2, with rho = Tr[omega gamma_0].
    """
    sampled = _sampled(source, grid)
    return 1.0 - _phase_space_integral(lambda p: sampled.field.density(p) ** 2, sampled.grid,
                                       _purity_scale(sampled.eB), check, tolerance,
                                       values=sampled.rho ** 2)


def mutual_information(n: int, eps: float, kappa: float) -> float:
    """
    M = 2 n eps / (1 + kappa + 2 n eps) * [1 + kappa / (sqrt(1 + kappa + 2 n eps) + 1)^2].
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ArgumentError(f"n: Landau index must be an integer >= 0, got {n!r}")
    if not eps > 0:
        raise ArgumentError(f"eps: must be positive, got {eps}")
    if not kappa >= 0:
        raise ArgumentError(f"kappa: must be non-negative, got {kappa}")

    total = 1.0 + kappa + 2.0 * n * eps
    return 2.0 * n * eps / total * (1.0 + kappa / (np.sqrt(total) + 1.0) ** 2)


def mutual_information_from_parts(source, grid: QuadratureGrid = None,
                                  tolerance: float = DEFAULT_TOLERANCE) -> float:
    """
    M = I_xk + I_SP - (1 - P), every term by quadrature.
    """
    sampled = _sampled(source, grid)
    return (entropy_xk(sampled, tolerance=tolerance)
            + entropy_sp_definition(sampled)
            - (1.0 - purity_trace(sampled, tolerance=tolerance)))


def _grid_for(source, grid):
    if grid is not None:
        return grid
    if isinstance(source, SampledWigner):
        return source.grid
    if isinstance(source, LandauState):
        return default_grid(source.n)
    if isinstance(source, WignerMatrixField):
        return default_grid(source.state.n)
    levels = [component.state.n for _, component in getattr(source, 'components', ())
              if isinstance(component, WignerMatrixField)]
    return default_grid(max(levels, default=0))


@dataclass
class QuantifierReport:
    state: str
    purity_trace: float
    purity_clifford: float
    purity_coordinate: float
    entropy_sp: float
    entropy_xk: float
    mutual_info_def: float
    mutual_info_closed: float
    concurrence_sq_integral: float
    purity_tabulated: float
    purity_coordinate_bar: float
    concurrence_sq_tabulated_integral: float
    spin_z: float
    concurrence_spin_parity: float
    eof_spin_parity: float
    residuals: Dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


def build_report(st: LandauState, grid: QuadratureGrid = None,
                 tolerance: float = DEFAULT_TOLERANCE) -> QuantifierReport:
    """
    Every quantifier of one Landau state, plus the residuals between routes that should agree.
    """
    grid = _grid_for(st, grid)
    logger.debug(f"Building report for {st.label()} (eps={st.params.eps:g}, kappa={st.params.kappa:g})")

    sampled = SampledWigner(st, grid)
    p_trace = purity_trace(sampled, tolerance=tolerance)
    p_clifford = purity_clifford(sampled, tolerance=tolerance)
    p_coordinate = purity_coordinate(st, tolerance=tolerance)
    p_bar = purity_coordinate_bar(st, tolerance=tolerance)
    p_tabulated = purity_tabulated(st, grid)

    i_sp_def = entropy_sp_definition(sampled)
    i_sp = entropy_sp_closed(st)
    i_xk = entropy_xk(sampled, tolerance=tolerance)
    m_def = i_xk + i_sp_def - (1.0 - p_trace)
    m_closed = mutual_information(st.n, st.params.eps, st.params.kappa)

    scale = _purity_scale(st.eB)
    points = grid.points()
    c_field = concurrence_sq_field(st, points)
    c_traced = concurrence_sq_trace(sampled.omega)
    c_tabulated = concurrence_sq_tabulated(st, points)
    c_integral = float(weighted_sum(c_field, grid)) * scale
    c_tab_integral = float(weighted_sum(c_tabulated, grid)) * scale

    spin = spin_expectation(st, grid, omega=sampled.omega)
    reduced = spin_parity_density(sampled, grid)
    c_reduced = concurrence_general(reduced)

    residuals = {
        'purity_trace_vs_clifford': abs(p_trace - p_clifford),
        'purity_trace_vs_coordinate': abs(p_trace - p_coordinate),
        'purity_coordinate_bar_vs_closed': abs(p_bar - coordinate_bar_closed(st)),
        'purity_tabulated_vs_closed': abs(p_tabulated - purity_tabulated_closed(st)),
        'entropy_sp_definition_vs_closed': abs(i_sp_def - i_sp),
        'entropy_sp_vs_xk': abs(i_sp - i_xk),
        'mutual_info_parts_vs_closed': abs(m_def - m_closed),
        'concurrence_trace_vs_closed': float(np.max(np.abs(c_traced - c_field))) / st.eB,
        'concurrence_closed_vs_tabulated': float(np.max(np.abs(c_field - c_tabulated))) / st.eB,
        'spin_z_phase_space_vs_direct': spin.residual,
    }

    return QuantifierReport(
        state=st.label(),
        purity_trace=p_trace,
        purity_clifford=p_clifford,
        purity_coordinate=p_coordinate,
        entropy_sp=i_sp,
        entropy_xk=i_xk,
        mutual_info_def=m_def,
        mutual_info_closed=m_closed,
        concurrence_sq_integral=c_integral,
        purity_tabulated=p_tabulated,
        purity_coordinate_bar=p_bar,
        concurrence_sq_tabulated_integral=c_tab_integral,
        spin_z=spin.phase_space,
        concurrence_spin_parity=c_reduced,
        eof_spin_parity=eof_from_concurrence(c_reduced),
        residuals=residuals,
    )
