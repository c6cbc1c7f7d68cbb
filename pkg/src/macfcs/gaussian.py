"""Differential entropies and mutual informations of jointly Gaussian scalars.

Every variable is a linear combination of a shared basis of independent,
unit-variance latent components, so the covariance of any subset is
``A @ A.T`` over the selected coefficient rows and every information
quantity reduces to a log-determinant.  Sharing latents across variables
is what produces coherent cross terms (two transmitters riding the same
auxiliary signal add in amplitude, not in power).

All quantities are in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import OverlappingSets, SingularCovariance, UnknownVariable

#: variables whose total variance falls below this are treated as deterministic zeros
DEGENERATE_VARIANCE = 1e-12

# relative singular-value cutoff when reducing a set to independent directions
_RANK_RTOL = 1e-9

_BITS_PER_DIM = math.log2(2.0 * math.pi * math.e)


def _as_names(selection) -> tuple[str, ...]:
    if isinstance(selection, str):
        return (selection,)
    return tuple(selection)


@dataclass(frozen=True)
class GaussianSystem:
    """Named scalar Gaussians over a shared basis of independent unit latents.

    ``coefficients[i, k]`` is the amplitude of latent ``k`` in variable
    ``names[i]``; the covariance of any subset is the Gram matrix of the
    corresponding rows.
    """

    latent_count: int
    names: tuple[str, ...]
    coefficients: np.ndarray

    def __post_init__(self):
        names = tuple(self.names)
        coeff = np.array(self.coefficients, dtype=float)
        if self.latent_count < 1:
            raise ValueError("latent_count must be a positive integer")
        if coeff.ndim != 2 or coeff.shape != (len(names), self.latent_count):
            raise ValueError(
                f"coefficients must have shape ({len(names)}, {self.latent_count}), "
                f"got {coeff.shape}"
            )
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if not np.all(np.isfinite(coeff)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "coefficients", coeff)

    def indices(self, selection) -> tuple[int, ...]:
        lookup = {name: i for i, name in enumerate(self.names)}
        out = []
        for name in _as_names(selection):
            if name not in lookup:
                raise UnknownVariable(f"no variable named {name!r}")
            out.append(lookup[name])
        return tuple(out)

    def rows(self, selection) -> np.ndarray:
        idx = self.indices(selection)
        if not idx:
            return np.zeros((0, self.latent_count))
        return self.coefficients[list(idx)]

    def variance(self, name: str) -> float:
        row = self.rows(name)[0]
        return float(row @ row)


class SystemBuilder:
    """Incrementally defines variables as amplitude maps over named latents."""

    def __init__(self):
        self._latents: dict[str, int] = {}
        self._vars: dict[str, dict[str, float]] = {}

    def variable(self, name: str, terms: Mapping[str, float]) -> None:
        """Define ``name`` as a combination of latents, ``{latent: amplitude}``."""
        if name in self._vars:
            raise ValueError(f"variable {name!r} already defined")
        cleaned = {label: float(a) for label, a in terms.items() if float(a) != 0.0}
        for label in cleaned:
            self._latents.setdefault(label, len(self._latents))
        self._vars[name] = cleaned

    def mix(self, name: str, parts: Mapping[str, float],
            terms: Mapping[str, float] | None = None) -> None:
        """Define ``name`` as a linear combination of existing variables plus fresh latents."""
        combo: dict[str, float] = {}
        for var, scale in parts.items():
            if var not in self._vars:
                raise UnknownVariable(f"no variable named {var!r}")
            for label, amp in self._vars[var].items():
                combo[label] = combo.get(label, 0.0) + float(scale) * amp
        for label, amp in (terms or {}).items():
            combo[label] = combo.get(label, 0.0) + float(amp)
        self.variable(name, combo)

    def build(self) -> GaussianSystem:
        latent_count = max(1, len(self._latents))
        coeff = np.zeros((len(self._vars), latent_count))
        for i, terms in enumerate(self._vars.values()):
            for label, amp in terms.items():
                coeff[i, self._latents[label]] = amp
        return GaussianSystem(latent_count, tuple(self._vars), coeff)


def covariance(system: GaussianSystem, variables) -> np.ndarray:
    """Covariance matrix of the selected variables, exactly symmetrized."""
    rows = system.rows(variables)
    cov = rows @ rows.T
    return (cov + cov.T) / 2.0


def _drop_degenerate(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    keep = np.einsum("ij,ij->i", rows, rows) >= DEGENERATE_VARIANCE
    return rows[keep]


def _orthonormal_rowspace(rows: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the row space, with small directions cut off."""
    if rows.shape[0] == 0:
        return rows
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        return rows[:0]
    return vt[s > _RANK_RTOL * s[0]]


def _project_off(rows: np.ndarray, basis: np.ndarray) -> np.ndarray:
    # two classical Gram-Schmidt passes keep small residuals accurate
    if rows.shape[0] == 0 or basis.shape[0] == 0:
        return rows
    for _ in range(2):
        rows = rows - (rows @ basis.T) @ basis
    return rows


def diff_entropy(system: GaussianSystem, variables) -> float:
    """Differential entropy h(V) = 1/2 log2((2*pi*e)^k det Sigma) in bits.

    Variables with total variance below ``DEGENERATE_VARIANCE`` are pruned
    (they are deterministic zeros); the empty set has entropy 0 by
    convention.  A Cholesky failure after pruning raises
    ``SingularCovariance`` rather than being silently regularized.
    """
    names = _as_names(variables)
    rows = _drop_degenerate(system.rows(names))
    k = rows.shape[0]
    if k == 0:
        return 0.0
    cov = rows @ rows.T
    cov = (cov + cov.T) / 2.0
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise SingularCovariance(
            f"covariance of {names} is singular after degenerate-variable pruning"
        ) from exc
    return 0.5 * k * _BITS_PER_DIM + float(np.sum(np.log2(np.diagonal(chol))))


def mutual_info(system: GaussianSystem, a, b, cond=()) -> float:
    """Conditional mutual information I(A; B | C) in bits.

    Equals 1/2 log2(det S_AC det S_BC / (det S_C det S_ABC)) with
    det S_empty = 1.  It is evaluated through exact subspace reduction:
    conditioning on C projects coefficient rows onto the orthogonal
    complement of C's row space, each set is reduced to an orthonormal
    basis of its span (directions that are deterministic given C carry no
    information and drop out), and the determinant of the remaining
    residual Gram matrix is taken by Cholesky with no artificial ridge.
    This keeps boundary cases exact, e.g. two transmitters carrying the
    same auxiliary signal, where the raw determinant ratio degenerates.

    Raises ``OverlappingSets`` if the three sets share names and
    ``SingularCovariance`` if A and B share a deterministic component not
    explained by C (the mutual information is infinite).
    """
    a_names = _as_names(a)
    b_names = _as_names(b)
    c_names = _as_names(cond)
    ia = set(system.indices(a_names))
    ib = set(system.indices(b_names))
    ic = set(system.indices(c_names))
    clashes = (ia & ib) | (ia & ic) | (ib & ic)
    if clashes:
        shared = sorted(system.names[i] for i in clashes)
        raise OverlappingSets(f"sets share variables: {shared}")

    rows_a = _drop_degenerate(system.rows(a_names))
    rows_b = _drop_degenerate(system.rows(b_names))
    rows_c = _drop_degenerate(system.rows(c_names))
    if rows_c.shape[0]:
        basis_c = _orthonormal_rowspace(rows_c)
        rows_a = _drop_degenerate(_project_off(rows_a, basis_c))
        rows_b = _drop_degenerate(_project_off(rows_b, basis_c))
    if rows_a.shape[0] == 0 or rows_b.shape[0] == 0:
        return 0.0

    basis_a = _orthonormal_rowspace(rows_a)
    basis_b = _orthonormal_rowspace(rows_b)
    resid = _project_off(basis_b, basis_a)
    gram = resid @ resid.T
    gram = (gram + gram.T) / 2.0
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise SingularCovariance(
            f"{sorted(b_names)} and {sorted(a_names)} share a deterministic "
            f"component given {sorted(c_names)}"
        ) from exc
    mi = -float(np.sum(np.log2(np.diagonal(chol))))
    return max(0.0, mi)
