"""Dense complex linear algebra for 2- and 4-dimensional states and operators.

Matrices are plain complex numpy arrays in row-major order; nothing here ever
exceeds 4x4, so exact dense arithmetic is used throughout.  Comparisons are
absolute with a default tolerance of 1e-12, which leaves ample double-precision
headroom at this size.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-12

# Pauli operators and friends, as 2x2 complex arrays.
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

# Computational and conjugate basis states.
KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


class DimensionMismatchError(ValueError):
    """Operand dimensions are incompatible for the requested operation."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got ndim={m.ndim}")
    return m


def as_state(v) -> np.ndarray:
    """Coerce to a 1-D complex array."""
    s = np.asarray(v, dtype=complex)
    if s.ndim != 1:
        raise DimensionMismatchError(f"expected a vector, got ndim={s.ndim}")
    return s


def tensor(a, b) -> np.ndarray:
    """Kronecker product; output dims are the products of the input dims."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    # np.kron carries heavy shape gymnastics; at 2x2/4x4 scale the direct
    # broadcast is several times faster and bit-identical.
    if a.ndim == 1 and b.ndim == 1:
        return (a[:, None] * b[None, :]).reshape(a.size * b.size)
    if a.ndim == 2 and b.ndim == 2:
        out = a[:, None, :, None] * b[None, :, None, :]
        return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return np.kron(a, b)


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit inner-dimension check."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(
            f"inner dimensions do not match: {a.shape} x {b.shape}"
        )
    return a @ b


def _check_same_square(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(
            f"operands must be square and of equal shape: {a.shape} vs {b.shape}"
        )


def commutator(a, b) -> np.ndarray:
    """ab - ba."""
    a, b = as_matrix(a), as_matrix(b)
    _check_same_square(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    """ab + ba."""
    a, b = as_matrix(a), as_matrix(b)
    _check_same_square(a, b)
    return a @ b + b @ a


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def norm_sq(v) -> float:
    """Sum of squared amplitude moduli."""
    s = as_state(v)
    return float(np.real(np.vdot(s, s)))


def is_normalized(v, tol: float = 1e-10) -> bool:
    return abs(norm_sq(v) - 1.0) <= tol


def equal_up_to_global_phase(a, b, tol: float = DEFAULT_TOL) -> bool:
    """True iff a = c*b entrywise for some unit-modulus scalar c, within tol.

    The phase c is read off the largest-modulus entry of b, which avoids
    division by near-zero entries; a zero matrix only matches another zero
    matrix.  Works for vectors as well as matrices.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    flat_b = b.ravel()
    idx = int(np.argmax(np.abs(flat_b)))
    if abs(flat_b[idx]) <= tol:
        return bool(np.max(np.abs(a)) <= tol)
    c = a.ravel()[idx] / flat_b[idx]
    if abs(c) == 0.0:
        return False
    c /= abs(c)
    return bool(np.max(np.abs(a - c * b)) <= tol)


_IDENTITIES = {2: I2, 4: I4}


def is_unitary(a, tol: float = DEFAULT_TOL) -> bool:
    """max |a†a - I| <= tol."""
    a = as_matrix(a)
    n = a.shape[0]
    if n != a.shape[1]:
        raise DimensionMismatchError(f"matrix must be square, got {a.shape}")
    ident = _IDENTITIES.get(n)
    if ident is None:
        ident = np.eye(n)
    return bool(np.abs(a.conj().T @ a - ident).max() <= tol)
