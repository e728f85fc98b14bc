"""Momentum-space form of the regrouped walk: blocks, trace formula, dispersion.

Conventions
-----------
The Fourier transform used is psi_hat(k) = sum_x exp(i*k*x) psi(x, s), under
which the shift S|x,s> = |x+s,s> becomes the diagonal block
S(k) = diag(exp(ik), exp(-ik)). A walk step is then the 2x2 block
W(t, k) = S(k) * M(t) (matrix-before-shift rules) or M(t) * S(k)
(shift-before-matrix rules), and the regrouped product over one field period
m is time-independent for rational fields.

Trace formula
-------------
For a 2x2 matrix M and a unitary R whose eigenvalues form a conjugate pair of
primitive m-th roots of unity, the cyclic product trace

    tau_m(M) = tr(M R^0 M R^1 ... M R^(m-1))

has the closed form (with a~ and d~ the diagonal entries of M in R's
eigenbasis):

    m odd:  tau_m = a~^m + d~^m
    m even: tau_m = -(a~^m + d~^m) + 2*(-1)^(m/2) * ((a~ d~)^(m/2) - det(M)^(m/2))

The primitivity requirement is essential: R = I with m = 3, or any R whose
order is a proper divisor of m, satisfies R^m = I yet breaks the closed form,
so ``trace_formula`` validates it and raises otherwise. The degenerate orders
m = 1 (R = I) and m = 2 (R = -I) are valid and basis-independent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from .spinops import HADAMARD_BASIS, eigenbasis_unitary2, is_unitary
from .walk import TimeRule, WalkParams

TWO_PI = 2.0 * math.pi


def shift_momentum(k: float) -> np.ndarray:
    """The shift block S(k) = diag(exp(ik), exp(-ik))."""
    ph = cmath.exp(1j * k)
    return np.array([[ph, 0], [0, np.conj(ph)]])


def step_block(k: float, t: int, params: WalkParams) -> np.ndarray:
    """The single-step momentum block W(t, k)."""
    m = params.step_matrix(t)
    s = shift_momentum(k)
    return s @ m if params.matrix_before_shift else m @ s


def regrouped_block(k: float, params: WalkParams, m: int, t_from: int = 1) -> np.ndarray:
    """Momentum block of W(t_from+m-1) ... W(t_from): m steps composed in time order."""
    if m < 1:
        raise ValueError("m must be positive")
    out = np.eye(2, dtype=complex)
    for t in range(t_from, t_from + m):
        out = step_block(k, t, params) @ out
    return out


@dataclass(frozen=True)
class TildePair:
    """Diagonal entries of M in the x-rotation eigenbasis (see tilde_pair)."""

    alpha_tilde: complex
    delta_tilde: complex


def tilde_pair(coin_times_shift: np.ndarray) -> TildePair:
    """Diagonal entries of B M B^dagger for B = HADAMARD_BASIS.

    With M = [[alpha, beta], [gamma, delta]] this is
    a~ = (alpha+beta+gamma+delta)/2 and d~ = (alpha-beta-gamma+delta)/2.
    For M = C * S(k) with a special-unitary coin, d~ = conj(a~) and in polar
    coin entries a = |a| e^(i k_a), b = |b| e^(i k_b):

        a~ = |a| cos(k_a + k) + i |b| sin(k_b - k).
    """
    m = np.asarray(coin_times_shift, dtype=complex)
    alpha, beta, gamma, delta = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    return TildePair(alpha_tilde=(alpha + beta + gamma + delta) / 2.0,
                     delta_tilde=(alpha - beta - gamma + delta) / 2.0)


def coin_shift_matrix(params: WalkParams, k: float) -> np.ndarray:
    """M = C * S(k), the matrix whose tilde entries drive the dispersion."""
    return params.coin @ shift_momentum(k)


def alpha_tilde(params: WalkParams, k: float) -> complex:
    """a~(k) for the walk's step content, by time rule.

    RX_FIELD diagonalizes the x-rotation (Hadamard basis); GAUGED_SZ
    diagonalizes a z-rotation, which is already diagonal, so there
    a~ = (C S(k))_11 = a e^(ik).
    """
    m = coin_shift_matrix(params, k)
    if params.time_rule is TimeRule.RX_FIELD:
        return tilde_pair(m).alpha_tilde
    return complex(m[0, 0])


def alpha_tilde_sup(a: complex, b: complex) -> float:
    """sup over k of |a~(k)| for the x-rotation rule, in closed form.

    |a~(k)|^2 = 1/2 + Re((a^2 - conj(b)^2) e^(2ik))/2, so the supremum is
    sqrt(1/2 + |a^2 - conj(b)^2|/2). Balanced coins (|a|=|b|=1/sqrt 2 with
    a^2 = conj(b)^2) give 1/sqrt(2); a = i/sqrt(2), b = 1/sqrt(2) gives 1.
    """
    a, b = complex(a), complex(b)
    return math.sqrt(0.5 + 0.5 * abs(a * a - np.conj(b) ** 2))


def _primitive_order_check(eigenvalue: complex, m: int) -> None:
    angle = cmath.phase(eigenvalue)
    j = round(angle * m / TWO_PI) % m
    approx = TWO_PI * j / m
    diff = abs(cmath.exp(1j * approx) - eigenvalue)
    if diff > 1e-8:
        raise ValueError(
            f"R's eigenphase {angle!r} is not an m-th root of unity for m={m}")
    if gcd(j, m) != 1 and not (j == 0 and m == 1):
        raise ValueError(
            f"R's eigenvalues must be primitive {m}-th roots of unity; "
            f"got exp(2*pi*i*{j}/{m}) whose order divides m properly")


def trace_formula(M: np.ndarray, R: np.ndarray, m: int) -> complex:
    """Closed form for tr(M R^0 M R^1 ... M R^(m-1)); see module docstring.

    Raises
    ------
    ValueError
        If R is not unitary, R^m != I within 1e-10, or R's eigenvalues are
        not primitive m-th roots of unity (the formula's validity domain).
    """
    if m < 1:
        raise ValueError("m must be positive")
    M = np.asarray(M, dtype=complex)
    R = np.asarray(R, dtype=complex)
    if not is_unitary(R, tol=1e-10):
        raise ValueError("R must be unitary within 1e-10")
    basis, lam1, lam2 = eigenbasis_unitary2(R)
    _primitive_order_check(lam1, m)
    _primitive_order_check(lam2, m)
    if abs(lam1 * lam2 - 1.0) > 1e-8 and abs(lam1 - lam2) > 1e-8:
        raise ValueError("R's eigenvalues must form a conjugate pair")
    mt = basis @ M @ basis.conj().T
    at, dt = mt[0, 0], mt[1, 1]
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if m % 2 == 1:
        return at ** m + dt ** m
    half = m // 2
    return -(at ** m + dt ** m) + 2.0 * (-1) ** half * ((at * dt) ** half - det ** half)


def regrouped_trace(k: float, params: WalkParams, m: int) -> complex:
    """tr W^{[m,1]}(k) via the closed trace formula (no m-fold product)."""
    at = alpha_tilde(params, k)
    dt = np.conj(at)
    if m % 2 == 1:
        return complex(at ** m + dt ** m)
    half = m // 2
    det = 1.0  # special-unitary coin and unit-determinant shift block
    return complex(-(at ** m + dt ** m) + 2.0 * (-1) ** half * ((at * dt) ** half - det))


def dispersion(k: float, params: WalkParams, m: int) -> tuple[float, float]:
    """Eigenphases (omega_plus, omega_minus) of the regrouped block W^{[m,1]}(k).

    The block is special-unitary, so its eigenvalues are exp(+/- i*omega) with
    2*cos(omega) = tr W^{[m,1]}(k). In terms of a~ = |a~| e^(i*theta):

        m odd:  cos(omega) = |a~|^m cos(m*theta)
        m even: cos(omega) = -|a~|^m cos(m*theta) + (-1)^(m/2+1) (1 - |a~|^m)

    As |a~|^m -> 0 the block tends to -I (m odd, after squaring to 2m steps)
    or (-1)^(m/2+1) I (m even), which is the revival mechanism.

    Raises
    ------
    ValueError
        If the field is not rational with denominator m, or the cosine leaves
        [-1, 1] by more than 1e-9 (implementation inconsistency, since the
        exact trace of a special-unitary matrix cannot).
    """
    field = params.field
    if not field.is_rational or field.denominator != m:
        raise ValueError("dispersion requires a rational field with denominator m")
    at = alpha_tilde(params, k)
    r = abs(at)
    if r == 0.0:
        cos_m_theta_term = 0.0
    else:
        theta = cmath.phase(at)
        cos_m_theta_term = (r ** m) * math.cos(m * theta)
    if m % 2 == 1:
        c = cos_m_theta_term
    else:
        c = -cos_m_theta_term + (-1) ** (m // 2 + 1) * (1.0 - r ** m)
    if abs(c) > 1.0 + 1e-9:
        raise ValueError(f"dispersion cosine {c!r} leaves [-1, 1]: inconsistent inputs")
    c = min(1.0, max(-1.0, c))
    omega = math.acos(c)
    return (omega, -omega)
