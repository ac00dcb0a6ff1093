"""Local cross-section of the unitary orbit map through a Hermitian
reference operator.

Given T with spectral projections E_1, ..., E_p, a unitary V close enough
to commuting with T has invertible block compressions E_i V E_i.  Polar
decomposing each block, E_i V E_i = X_i Q_i, the block-diagonal unitary
psi(V) = sum_i X_i* commutes with T, and phi = psi(V) V conjugates T to
V* T V while depending only on the orbit point V* T V, not on V itself.
The map V* T V -> phi is therefore a continuous local section of the
orbit map, canonical up to nothing: it is exactly reproduced when applied
to its own output.

Interpolation polynomials e_i with e_i(lambda_j) = delta_ij express the
projections as e_i(T) and give a computable neighborhood criterion
max_i ||e_i(R) - e_i(T)|| < 1 for the construction to apply at R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .errors import CornerSingular, NotCommuting, NotUnitary, SingleCluster
from .opcore import (
    SpectralData,
    as_matrix,
    clustered_eigh,
    default_cluster_tol,
    is_unitary,
    require_hermitian,
    require_same_size,
    spectral_norm,
)
from .norming import NormingFunctionSpec, op_norm

CORNER_TOL = 1e-8


@dataclass(frozen=True)
class ReferenceOperator:
    """Hermitian reference with clustered spectral data, orthonormal
    bases of the eigenspaces, and the Lagrange interpolation polynomials
    of its distinct eigenvalues."""

    T: np.ndarray = field(repr=False)
    spectral: SpectralData
    interp_polys: list[Polynomial] = field(repr=False)
    block_bases: list[np.ndarray] = field(repr=False)

    @property
    def size(self) -> int:
        return self.T.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectral.eigenvalues

    def interp_scalar(self, i: int, x) -> np.ndarray:
        """Evaluate e_i at scalars by the Lagrange product form (stable
        for the handful of nodes that occur at matrix scale)."""
        nodes = self.eigenvalues
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        for j, lam in enumerate(nodes):
            if j == i:
                continue
            out = out * (x - lam) / (nodes[i] - lam)
        return out

    def interp_on_hermitian(self, i: int, r: np.ndarray) -> np.ndarray:
        """e_i(R) for Hermitian R, evaluated eigenvalue-wise."""
        w, v = np.linalg.eigh(r)
        return (v * self.interp_scalar(i, w)) @ v.conj().T


@dataclass(frozen=True)
class CrossSectionResult:
    """Output of the block-polar construction at a unitary V."""

    phi: np.ndarray = field(repr=False)
    psi: np.ndarray = field(repr=False)
    delta: np.ndarray = field(repr=False)
    corner_min_sv: float
    residual: float


def build_reference(t, cluster_tol: float | None = None) -> ReferenceOperator:
    """Spectral data plus Lagrange interpolation polynomials for a
    Hermitian reference; e_i(T) reproduces the projection E_i."""
    tm = require_hermitian(t, name="T")
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(tm)
    w, v, groups = clustered_eigh(tm, cluster_tol)
    reps = np.array([w[g].mean() for g in groups])
    mults = np.array([len(g) for g in groups], dtype=int)
    bases = [np.ascontiguousarray(v[:, g]) for g in groups]
    projections = [b @ b.conj().T for b in bases]
    polys = []
    for i, lam in enumerate(reps):
        p = Polynomial([1.0])
        for j, mu in enumerate(reps):
            if j != i:
                p = p * Polynomial([-mu, 1.0]) / (lam - mu)
        polys.append(p)
    spectral = SpectralData(reps, mults, projections, float(cluster_tol))
    return ReferenceOperator(T=tm, spectral=spectral, interp_polys=polys, block_bases=bases)


@dataclass(frozen=True)
class NeighborhoodCheck:
    max_dev: float
    inside: bool


def neighborhood_check(ref: ReferenceOperator, r) -> NeighborhoodCheck:
    """Deviation max_i ||e_i(R) - e_i(T)|| and whether it is below 1, the
    criterion for R to lie in the cross-section neighborhood."""
    rm = require_hermitian(r, name="R")
    require_same_size(ref.T, rm)
    dev = 0.0
    for i, e in enumerate(ref.spectral.projections):
        dev = max(dev, spectral_norm(ref.interp_on_hermitian(i, rm) - e))
    return NeighborhoodCheck(max_dev=dev, inside=dev < 1.0)


def _require_unitary(v) -> np.ndarray:
    m = as_matrix(v, "V")
    if not is_unitary(m):
        raise NotUnitary("matrix is not unitary within tolerance")
    return m


def delta_map(ref: ReferenceOperator, v) -> np.ndarray:
    """Block-diagonal compression sum_i E_i V E_i of a unitary along the
    spectral blocks of the reference."""
    vm = _require_unitary(v)
    require_same_size(ref.T, vm)
    out = np.zeros_like(vm)
    for e in ref.spectral.projections:
        out += e @ vm @ e
    return out


def _block_polars(ref: ReferenceOperator, vm: np.ndarray, corner_tol: float):
    """Per-block polar factors of the compressions, plus the smallest
    corner singular value; raises CornerSingular outside the neighborhood."""
    factors = []
    min_sv = np.inf
    for b in ref.block_bases:
        m = b.conj().T @ vm @ b
        u, s, wh = np.linalg.svd(m)
        min_sv = min(min_sv, float(s[-1]))
        if s[-1] <= corner_tol:
            raise CornerSingular(
                f"spectral-block compression has smallest singular value {s[-1]:.3e}"
            )
        x = u @ wh
        q = wh.conj().T @ np.diag(s) @ wh
        factors.append((b, x, q))
    return factors, min_sv


def psi_map(ref: ReferenceOperator, v, corner_tol: float = CORNER_TOL) -> np.ndarray:
    """Block-diagonal unitary psi(V) = sum_i X_i* built from the polar
    factors E_i V E_i = X_i Q_i; psi(V) commutes with the reference and
    psi(V)* (sum_i Q_i) is the polar decomposition of the compression
    delta(V)."""
    vm = _require_unitary(v)
    require_same_size(ref.T, vm)
    factors, _ = _block_polars(ref, vm, corner_tol)
    psi = np.zeros_like(vm)
    for b, x, _ in factors:
        psi += b @ x.conj().T @ b.conj().T
    return psi


def cross_section_phi(ref: ReferenceOperator, v, corner_tol: float = CORNER_TOL) -> CrossSectionResult:
    """Canonical unitary phi = psi(V) V with phi* T phi = V* T V.

    phi depends only on the orbit point V* T V: multiplying V on the left
    by any unitary commuting with T leaves phi unchanged.
    """
    vm = _require_unitary(v)
    require_same_size(ref.T, vm)
    factors, min_sv = _block_polars(ref, vm, corner_tol)
    psi = np.zeros_like(vm)
    delta = np.zeros_like(vm)
    for b, x, q in factors:
        psi += b @ x.conj().T @ b.conj().T
        delta += b @ (x @ q) @ b.conj().T
    phi = psi @ vm
    residual = spectral_norm(phi.conj().T @ ref.T @ phi - vm.conj().T @ ref.T @ vm)
    return CrossSectionResult(
        phi=phi, psi=psi, delta=delta, corner_min_sv=min_sv, residual=residual
    )


def well_definedness_check(ref: ReferenceOperator, v, g) -> float:
    """||phi(GV) - phi(V)|| for a unitary G commuting with the reference;
    both products represent the same orbit point, so the deviation is
    roundoff only."""
    vm = _require_unitary(v)
    gm = _require_unitary(g)
    require_same_size(vm, gm)
    comm = spectral_norm(gm @ ref.T - ref.T @ gm)
    if comm > 1e-10 * max(1.0, spectral_norm(ref.T)):
        raise NotCommuting(f"G does not commute with the reference (residual {comm:.3e})")
    phi_v = cross_section_phi(ref, vm).phi
    phi_gv = cross_section_phi(ref, gm @ vm).phi
    return spectral_norm(phi_gv - phi_v)


@dataclass(frozen=True)
class ContinuityRecord:
    op_dist: float
    phi_dist: float


def continuity_modulus(
    ref: ReferenceOperator,
    phi_norm: NormingFunctionSpec,
    v_sequence: Sequence,
) -> list[ContinuityRecord]:
    """Distances along a sequence of unitaries whose conjugates approach
    the reference: op_dist = ||V* T V - T|| against
    phi_dist = ||phi(V* T V) - 1|| in the ideal norm.  phi_dist goes to
    zero together with op_dist."""
    records = []
    n = ref.size
    eye = np.eye(n)
    for v in v_sequence:
        vm = _require_unitary(v)
        op_dist = spectral_norm(vm.conj().T @ ref.T @ vm - ref.T)
        phi = cross_section_phi(ref, vm).phi
        records.append(
            ContinuityRecord(op_dist=op_dist, phi_dist=op_norm(phi_norm, phi - eye))
        )
    return records


@dataclass(frozen=True)
class OffdiagBound:
    max_violation: float


def offdiag_bound_check(ref: ReferenceOperator, phi_norm: NormingFunctionSpec, w) -> OffdiagBound:
    """Spectral-gap-weighted bound on off-diagonal compressions:
    ||E_i W E_j||_phi |lambda_i - lambda_j| <= ||TW - WT||_phi for i != j.
    Returns the largest left-minus-right difference over the pairs."""
    wm = _require_unitary(w)
    require_same_size(ref.T, wm)
    lams = ref.eigenvalues
    if len(lams) < 2:
        raise SingleCluster("the reference has a single eigenvalue cluster")
    comm_norm = op_norm(phi_norm, ref.T @ wm - wm @ ref.T)
    worst = -np.inf
    projs = ref.spectral.projections
    for i in range(len(lams)):
        for j in range(len(lams)):
            if i == j:
                continue
            lhs = op_norm(phi_norm, projs[i] @ wm @ projs[j]) * abs(lams[i] - lams[j])
            worst = max(worst, lhs - comm_norm)
    return OffdiagBound(max_violation=float(worst))


def minimal_polynomial(t, tol: float | None = None) -> Polynomial:
    """Monic polynomial whose roots are the distinct eigenvalue clusters
    of a Hermitian matrix; it annihilates the matrix up to
    tol (1 + ||T||)^degree."""
    tm = require_hermitian(t, name="T")
    if tol is None:
        tol = default_cluster_tol(tm)
    w, _, groups = clustered_eigh(tm, tol)
    reps = [w[g].mean() for g in groups]
    return Polynomial.fromroots(reps) if reps else Polynomial([0.0, 1.0])


def generated_algebra_dimension(t, tol: float | None = None) -> int:
    """Complex dimension of the (non-unital) *-algebra generated by a
    Hermitian matrix: the number of distinct nonzero eigenvalue clusters,
    i.e. of independent nonzero spectral projections."""
    tm = require_hermitian(t, name="T")
    if tol is None:
        tol = default_cluster_tol(tm)
    w, _, groups = clustered_eigh(tm, tol)
    reps = np.array([w[g].mean() for g in groups])
    return int(np.count_nonzero(np.abs(reps) > max(tol, 0.0)))
