"""Hermitian matrices, spectral calculus and the Loewner order.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Functions that
accept user data run them through :func:`as_hermitian`, which checks the
Hermitian symmetry and returns a symmetrised copy.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DecompositionError, DomainError, GenerationError, InputError, PreconditionError
from .functions import domain_lower

__all__ = [
    "EPS_REL",
    "SpectralDecomposition",
    "PsdVerdict",
    "as_hermitian",
    "spectral_norm",
    "loewner_tolerance",
    "decompose",
    "apply_function",
    "apply_function_batch",
    "min_eigenvalue",
    "is_psd",
    "loewner_leq",
    "rng_stream",
    "random_hermitian",
    "random_unit_vector",
    "pair_qualifies",
    "random_qualified_pair",
    "matrix_to_json",
    "matrix_from_json",
    "load_matrix",
    "vector_to_json",
]

EPS_REL = 1e-8
HERMITIAN_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10
# eigenvalues in (-CLAMP_TOL * scale, 0) count as round-off on PSD input
CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self, values=None) -> np.ndarray:
        lam = self.eigenvalues if values is None else values
        q = self.eigenvectors
        return _symmetrize((q * lam) @ q.conj().T)


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of a positive semidefiniteness test.

    ``witness`` is a unit eigenvector for ``min_eigenvalue`` and is only
    attached when the test fails.
    """

    is_psd: bool
    min_eigenvalue: float
    tolerance_used: float
    witness: np.ndarray | None = None

    def __bool__(self):
        return self.is_psd


def _symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + np.swapaxes(m, -1, -2).conj())


def as_hermitian(m, name: str = "matrix") -> np.ndarray:
    """Validate and return a symmetrised complex copy of ``m``."""
    a = np.array(m, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InputError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    scale = max(float(np.abs(a).max()), 1e-300)
    asym = float(np.abs(a - a.conj().T).max())
    if asym > HERMITIAN_TOL * scale:
        raise InputError(f"{name} is not Hermitian (max |a_ij - conj(a_ji)| = {asym:.3e})")
    return _symmetrize(a)


def spectral_norm(m) -> float:
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def loewner_tolerance(*mats, eps_rel: float = EPS_REL) -> float:
    """Relative tolerance ``eps_rel * max(1, ||M||...)`` for Loewner tests."""
    return eps_rel * max([1.0] + [spectral_norm(m) for m in mats])


def decompose(a, name: str = "matrix") -> SpectralDecomposition:
    """Eigen-decomposition with ascending eigenvalues and a residual check."""
    a = np.asarray(a, dtype=complex)
    try:
        lam, q = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"eigensolver failed on {name}: {exc}") from exc
    dec = SpectralDecomposition(lam, q)
    scale = max(1.0, float(np.abs(lam).max()))
    resid = spectral_norm(dec.reconstruct() - a)
    if resid > RECONSTRUCTION_TOL * scale:
        raise DecompositionError(f"reconstruction residual {resid:.3e} too large for {name}")
    return dec


def _function_values(f, lam: np.ndarray, scale) -> np.ndarray:
    lo = domain_lower(f)
    if np.isfinite(lo):
        slack = CLAMP_TOL * np.maximum(1.0, scale)
        bad = lam < lo - slack
        if np.any(bad):
            raise DomainError(
                f"eigenvalue {float(lam[bad].min()):.6g} lies outside the domain [{lo}, inf)"
            )
        lam = np.maximum(lam, lo)
    return np.asarray(f(lam), dtype=float)


def apply_function(f, a) -> np.ndarray:
    """Spectral calculus ``f(A) = Q diag(f(lambda)) Q*``."""
    dec = decompose(a)
    scale = float(np.abs(dec.eigenvalues).max())
    return dec.reconstruct(_function_values(f, dec.eigenvalues, scale))


def apply_function_batch(f, stack: np.ndarray) -> np.ndarray:
    """``f`` applied to each matrix of a ``(k, n, n)`` Hermitian stack."""
    try:
        lam, q = np.linalg.eigh(stack)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"eigensolver failed on a stack of {len(stack)} matrices") from exc
    scale = np.maximum(1.0, np.abs(lam).max(axis=-1, keepdims=True))
    recon = (q * lam[..., None, :]) @ np.swapaxes(q, -1, -2).conj()
    resid = np.abs(recon - stack).max(axis=(-1, -2))
    if np.any(resid > RECONSTRUCTION_TOL * scale[..., 0]):
        raise DecompositionError(f"reconstruction residual {resid.max():.3e} too large in batch")
    vals = _function_values(f, lam, scale)
    return _symmetrize((q * vals[..., None, :]) @ np.swapaxes(q, -1, -2).conj())


def min_eigenvalue(m) -> float:
    return float(decompose(m).eigenvalues[0])


def is_psd(m, tol: float | None = None) -> PsdVerdict:
    """Test ``M >= -tol`` in the Loewner order; the default tol is relative."""
    m = np.asarray(m, dtype=complex)
    if tol is None:
        tol = loewner_tolerance(m)
    if tol < 0:
        raise InputError(f"tolerance must be nonnegative, got {tol}")
    dec = decompose(m)
    lam0 = float(dec.eigenvalues[0])
    ok = lam0 >= -tol
    witness = None if ok else dec.eigenvectors[:, 0].copy()
    return PsdVerdict(ok, lam0, float(tol), witness)


def loewner_leq(a, b, tol: float | None = None) -> PsdVerdict:
    """Is ``A <= B``, i.e. is ``B - A`` positive semidefinite?"""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise InputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if tol is None:
        tol = loewner_tolerance(a, b)
    return is_psd(b - a, tol)


def rng_stream(seed: int, index: int = 0) -> np.random.Generator:
    """Counter-based generator for ``(seed, stream index)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(index)])))


def _haar_basis(dim: int, rng: np.random.Generator, real: bool) -> np.ndarray:
    z = rng.standard_normal((dim, dim))
    if not real:
        z = (z + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    phases = d / np.where(np.abs(d) == 0, 1.0, np.abs(d))
    return (q * phases).astype(complex)


def random_hermitian(dim: int, eigenvalue_range=(0.0, 1.0), rng=None, real: bool = False) -> np.ndarray:
    """``Q diag(lambda) Q*`` with uniform eigenvalues and a Haar-distributed ``Q``."""
    lo, hi = eigenvalue_range
    if lo > hi:
        raise InputError(f"empty eigenvalue range [{lo}, {hi}]")
    if dim < 1:
        raise InputError(f"dim must be >= 1, got {dim}")
    rng = rng if rng is not None else rng_stream(0)
    lam = rng.uniform(lo, hi, size=dim)
    q = _haar_basis(dim, rng, real)
    return _symmetrize((q * lam) @ q.conj().T)


def random_unit_vector(dim: int, rng=None, real: bool = False) -> np.ndarray:
    rng = rng if rng is not None else rng_stream(0)
    v = rng.standard_normal(dim).astype(complex)
    if not real:
        v = v + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def pair_qualifies(a, b, tol: float | None = None) -> PsdVerdict:
    """Is ``AB + BA >= 0`` for the PSD pair ``(A, B)``?"""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise InputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    for name, m in (("A", a), ("B", b)):
        v = is_psd(m, tol)
        if not v:
            raise PreconditionError(f"{name} is not positive semidefinite (min eig {v.min_eigenvalue:.3e})")
    anti = a @ b + b @ a
    if tol is None:
        tol = loewner_tolerance(anti, a @ b)
    return is_psd(_symmetrize(anti), tol)


def random_qualified_pair(dim: int, rng=None, eigenvalue_range=(0.0, 4.0), real: bool = False):
    """Commuting PSD pair sharing one Haar eigenbasis, so ``AB + BA >= 0``."""
    lo, hi = eigenvalue_range
    if lo < 0 or lo > hi:
        raise InputError(f"qualified pairs need a nonnegative range, got [{lo}, {hi}]")
    if dim < 1:
        raise InputError(f"dim must be >= 1, got {dim}")
    rng = rng if rng is not None else rng_stream(0)
    q = _haar_basis(dim, rng, real)
    lam = rng.uniform(lo, hi, size=dim)
    mu = rng.uniform(lo, hi, size=dim)
    a = _symmetrize((q * lam) @ q.conj().T)
    b = _symmetrize((q * mu) @ q.conj().T)
    try:
        ok = pair_qualifies(a, b)
    except PreconditionError as exc:
        raise GenerationError(f"generated pair is not PSD: {exc}") from exc
    if not ok:
        raise GenerationError(f"generated pair fails AB+BA >= 0 (min eig {ok.min_eigenvalue:.3e})")
    return a, b


# -- JSON ------------------------------------------------------------------


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    out = {"dim": int(m.shape[0]), "real": m.real.tolist()}
    if np.any(m.imag != 0):
        out["imag"] = m.imag.tolist()
    return out


def vector_to_json(v) -> dict:
    v = np.asarray(v, dtype=complex)
    out = {"real": v.real.tolist()}
    if np.any(v.imag != 0):
        out["imag"] = v.imag.tolist()
    return out


def matrix_from_json(obj, name: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise InputError(f"{name}: expected a JSON object")
    for key in ("dim", "real"):
        if key not in obj:
            raise InputError(f"{name}: missing field '{key}'")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError(f"{name}: field 'dim' must be a positive integer")
    try:
        re = np.array(obj["real"], dtype=float)
        im = np.array(obj.get("imag", np.zeros((dim, dim))), dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: non-numeric entries ({exc})") from exc
    for key, arr in (("real", re), ("imag", im)):
        if arr.shape != (dim, dim):
            raise InputError(f"{name}: field '{key}' must be {dim}x{dim}, got shape {arr.shape}")
    return as_hermitian(re + 1j * im, name)


def load_matrix(path) -> np.ndarray:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: cannot read matrix JSON ({exc})") from exc
    return matrix_from_json(obj, str(path))
