"""Closed-form point counts of Grassmannians, Lagrangian Grassmannians and
their intersection strata, with the matching probability bounds.

Counts are exact Python integers; ratios are :class:`fractions.Fraction`.
``q`` is accepted as any integer >= 2: the formulas are polynomial in q, but
only prime powers count points of an actual variety.

Bounds are floats padded upward by a few ulps so that rounding never
understates them (relative pad 2**-48, far above the error of the handful of
double operations involved).
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, prod

from .errors import BoundaryCase, InvalidEpsilon, InvalidRange, OddL

_PAD = 1.0 + 2.0**-48


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise InvalidRange(f"q must be an integer >= 2, got {q!r}")


def _up(x: float) -> float:
    return math.nextafter(x * _PAD, math.inf)


def _qprod(q: int, lo: int, hi: int, shift: int = 1) -> int:
    """prod_{i=lo}^{hi} (q**(shift*i) - 1); empty product is 1."""
    return prod(q ** (shift * i) - 1 for i in range(lo, hi + 1))


def _exact_div(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    if rem:  # pragma: no cover - guarded by the algebra
        raise ArithmeticError(f"non-integral quotient {num}/{den}")
    return quo


# --------------------------------------------------------------------------
# type A


def grassmannian_count(l: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^l (the Gaussian binomial)."""
    _check_q(q)
    if not 0 <= k <= l:
        raise InvalidRange(f"need 0 <= k <= l, got l={l}, k={k}")
    return _exact_div(_qprod(q, l - k + 1, l), _qprod(q, 1, k))


def _F_low(l: int, k: int, j: int, q: int) -> int:
    # j + k <= l: subspaces meeting F^j trivially
    return q ** (k * j) * _exact_div(_qprod(q, l - k - j + 1, l - j), _qprod(q, 1, k))


def _F_high(l: int, k: int, j: int, q: int) -> int:
    # j + k >= l: subspaces meeting F^j in the minimal dimension j + k - l
    return q ** ((l - j) * (l - k)) * _exact_div(_qprod(q, j + k - l + 1, j), _qprod(q, 1, l - k))


def avoid_count_F(l: int, k: int, j: int, q: int) -> int:
    """Number of L in Gr(l, k) with dim(L ∩ F^j) = max(0, j + k - l)."""
    _check_q(q)
    if not (0 <= k <= l and 0 <= j <= l):
        raise InvalidRange(f"need 0 <= k, j <= l, got l={l}, k={k}, j={j}")
    if j + k < l:
        return _F_low(l, k, j, q)
    if j + k > l:
        return _F_high(l, k, j, q)
    low, high = _F_low(l, k, j, q), _F_high(l, k, j, q)
    if low != high:  # pragma: no cover
        raise ArithmeticError(f"branch formulas disagree at l={l}, k={k}, j={j}, q={q}")
    return low


def intersection_count_H(l: int, k: int, j: int, s: int, q: int) -> int:
    """Number of L in Gr(l, k) with dim(L ∩ F^j) = s."""
    _check_q(q)
    if not (0 <= k <= l and 0 <= j <= l):
        raise InvalidRange(f"need 0 <= k, j <= l, got l={l}, k={k}, j={j}")
    if not max(0, j + k - l) <= s <= min(j, k):
        raise InvalidRange(f"s={s} outside [{max(0, j + k - l)}, {min(j, k)}]")
    return grassmannian_count(j, s, q) * avoid_count_F(l - s, k - s, j - s, q)


# --------------------------------------------------------------------------
# type C


def lagrangian_count(l: int, q: int) -> int:
    """Number of Lagrangian subspaces of the symplectic space F_q^{2l}."""
    _check_q(q)
    if l < 0:
        raise InvalidRange(f"need l >= 0, got {l}")
    return prod(q**i + 1 for i in range(1, l + 1))


def isotropic_count(l: int, k: int, q: int) -> int:
    """Number of k-dimensional isotropic subspaces of F_q^{2l}."""
    _check_q(q)
    if not 0 <= k <= l:
        raise InvalidRange(f"need 0 <= k <= l, got l={l}, k={k}")
    return _exact_div(_qprod(q, l - k + 1, l, shift=2), _qprod(q, 1, k))


def avoidE_count_K(l: int, j: int, q: int) -> int:
    """Lagrangians meeting E^j (first j x-coordinates) trivially."""
    _check_q(q)
    if not 0 <= j <= l:
        raise InvalidRange(f"need 0 <= j <= l, got l={l}, j={j}")
    return q ** (j * (2 * l - j + 1) // 2) * prod(q**i + 1 for i in range(1, l - j + 1))


def lag_intersection_count_M(l: int, j: int, s: int, q: int) -> int:
    """Lagrangians L with dim L ∩ (E^j + F^j) = s."""
    _check_q(q)
    if not 0 <= j <= l:
        raise InvalidRange(f"need 0 <= j <= l, got l={l}, j={j}")
    if not max(0, 2 * j - l) <= s <= j:
        raise InvalidRange(f"s={s} outside [{max(0, 2 * j - l)}, {j}]")
    num = _qprod(q, j - s + 1, j, shift=2) * _qprod(q, 1, l - j, shift=2)
    den = _qprod(q, 1, s) * _qprod(q, 1, l + s - 2 * j)
    return q ** ((j - s) ** 2) * _exact_div(num, den)


def lag_avoid_count_J(l: int, j: int, q: int) -> int:
    """Lagrangians meeting E^j + F^j in the minimal dimension max(0, 2j - l)."""
    _check_q(q)
    if not 0 <= j <= l:
        raise InvalidRange(f"need 0 <= j <= l, got l={l}, j={j}")
    if 2 * j > l:
        return lag_intersection_count_M(l, j, 2 * j - l, q)
    return q ** (j * j) * _exact_div(_qprod(q, 1, l - j, shift=2), _qprod(q, 1, l - 2 * j))


def jk_ratio(l: int, j: int, q: int) -> Fraction:
    """J_{lj} / K_{lj} for 2j <= l, as the product formula prod (1 - q^-i)."""
    if not 0 <= 2 * j <= l:
        raise InvalidRange(f"need 0 <= 2j <= l, got l={l}, j={j}")
    return prod((1 - Fraction(1, q**i) for i in range(l - 2 * j + 1, l - j + 1)), start=Fraction(1))


# --------------------------------------------------------------------------
# Euler numbers


def css_euler_alternating_sum(l: int, k: int) -> int:
    """sum_{j=l-k+1}^{l} (-1)^j C(l, j) (j + k - l)."""
    return sum((-1) ** j * comb(l, j) * (j + k - l) for j in range(l - k + 1, l + 1))


def lag_euler_alternating_sum(l: int) -> int:
    """sum over j > l/2 of (-1)^j C(l, j) (2j - l)."""
    return sum((-1) ** j * comb(l, j) * (2 * j - l) for j in range(l // 2 + 1, l + 1))


def expected_euler_css(l: int, k: int) -> int:
    """Generic normalised rank of the concentrated homology of a CSS sample."""
    if l < 2 or not 0 <= k <= l:
        raise InvalidRange(f"need l >= 2 and 0 <= k <= l, got l={l}, k={k}")
    chi = comb(l - 2, k - 1) if k > 0 else 0
    alt = css_euler_alternating_sum(l, k)
    if alt != (-1) ** (l - k + 1) * chi:
        raise ArithmeticError(f"Euler sum {alt} disagrees with chi={chi} at l={l}, k={k}")
    return chi


def expected_euler_lag(l: int) -> int:
    """Absolute generic normalised Euler number of a Lagrangian sample (even l)."""
    if l < 2:
        raise InvalidRange(f"need l >= 2, got {l}")
    if l % 2:
        raise OddL(f"l={l} is odd")
    chi = 2 * comb(l - 2, l // 2 - 1)
    alt = lag_euler_alternating_sum(l)
    if abs(alt) != chi:
        raise ArithmeticError(f"Euler sum {alt} disagrees with chi={chi} at l={l}")
    return chi


# --------------------------------------------------------------------------
# exact probabilities


def css_nongeneric_probability(l: int, k: int, j: int, N: int, q: int) -> Fraction:
    """1 - F/G at scale N: P(dim L ∩ F^{Nj} is larger than generic)."""
    if N < 1:
        raise InvalidRange(f"need N >= 1, got {N}")
    return 1 - Fraction(avoid_count_F(N * l, N * k, N * j, q), grassmannian_count(N * l, N * k, q))


def lag_nongeneric_probability(l: int, j: int, N: int, q: int) -> Fraction:
    """1 - J/L at scale N."""
    if N < 1:
        raise InvalidRange(f"need N >= 1, got {N}")
    return 1 - Fraction(lag_avoid_count_J(N * l, N * j, q), lagrangian_count(N * l, q))


def _tail_start(N: int, epsilon: float) -> int:
    if not epsilon > 0:
        raise InvalidEpsilon(f"epsilon must be > 0, got {epsilon}")
    if N < 1:
        raise InvalidRange(f"need N >= 1, got {N}")
    return math.ceil(Fraction(epsilon) * N)


def css_tail_probability(l: int, k: int, j: int, N: int, epsilon: float, q: int) -> Fraction:
    """Exact P(dim L ∩ F^{Nj} >= N*epsilon) for uniform L in Gr(Nl, Nk)."""
    s0 = _tail_start(N, epsilon)
    L, K, J = N * l, N * k, N * j
    lo, hi = max(0, J + K - L), min(J, K)
    total = sum(intersection_count_H(L, K, J, s, q) for s in range(max(lo, s0), hi + 1))
    return Fraction(total, grassmannian_count(L, K, q))


def lag_tail_probability(l: int, j: int, N: int, epsilon: float, q: int) -> Fraction:
    """Exact P(dim L ∩ (E^{Nj} + F^{Nj}) >= N*epsilon) for uniform Lagrangian L."""
    s0 = _tail_start(N, epsilon)
    L, J = N * l, N * j
    lo, hi = max(0, 2 * J - L), J
    total = sum(lag_intersection_count_M(L, J, s, q) for s in range(max(lo, s0), hi + 1))
    return Fraction(total, lagrangian_count(L, q))


# --------------------------------------------------------------------------
# bounds


def css_bound_constant(q: int) -> float:
    """|log(1 - 1/q)| / (1 - 1/q)."""
    _check_q(q)
    return _up(-math.log1p(-1.0 / q) / (1.0 - 1.0 / q))


def lag_bound_constant(q: int) -> float:
    """(1/q + |log(1 - 1/q)|) / (1 - 1/q)."""
    _check_q(q)
    return _up((1.0 / q - math.log1p(-1.0 / q)) / (1.0 - 1.0 / q))


def tail_prefactor(q: int) -> float:
    """exp(2q/(q-1) |log(1 - 1/q)|) * (q^2-1)^2 / ((q^2-1)^2 - q)."""
    _check_q(q)
    a = (q * q - 1) ** 2
    return _up(math.exp(-2.0 * q / (q - 1) * math.log1p(-1.0 / q)) * a / (a - q))


def deviation_bound_css(l: int, k: int, j: int, N: int, q: int) -> float:
    """Upper bound on 1 - F_{Nl,Nk,Nj} / G_{Nl,Nk}, valid when j + k != l."""
    if j + k == l:
        raise BoundaryCase("j + k = l: the ratio F/G does not tend to one")
    if N < 1:
        raise InvalidRange(f"need N >= 1, got {N}")
    return _up(css_bound_constant(q) * float(q) ** (-abs(l - k - j) * N))


def deviation_bound_lag(l: int, j: int, N: int, q: int) -> float:
    """Upper bound on 1 - J_{Nl,Nj} / L_{Nl}, valid when 2j != l."""
    if 2 * j == l:
        raise BoundaryCase("2j = l: the ratio J/L does not tend to one")
    if N < 1:
        raise InvalidRange(f"need N >= 1, got {N}")
    return _up(lag_bound_constant(q) * float(q) ** (-abs(l - 2 * j) * N))


def tail_bound(q: int, N: int, epsilon: float) -> float:
    """Bound on P(dim of the boundary-case intersection >= N*epsilon)."""
    if not epsilon > 0:
        raise InvalidEpsilon(f"epsilon must be > 0, got {epsilon}")
    if N < 1:
        raise InvalidRange(f"need N >= 1, got {N}")
    return _up(tail_prefactor(q) * float(q) ** (-(N * N) * epsilon * epsilon))


def tail_bound_at(q: int, s: int) -> float:
    """The same bound with the exponent N^2 eps^2 replaced by s^2, s = ceil(N eps) >= 1."""
    if s < 1:
        raise InvalidRange(f"need s >= 1, got {s}")
    return _up(tail_prefactor(q) * float(q) ** (-s * s))


# --------------------------------------------------------------------------
# finite-N expectations


def expected_meet_dim_css(l: int, k: int, j: int, q: int) -> Fraction:
    """E[dim L ∩ F^j] for uniform L in Gr(l, k)."""
    total = grassmannian_count(l, k, q)
    return sum((Fraction(s * intersection_count_H(l, k, j, s, q), total)
                for s in range(max(0, j + k - l), min(j, k) + 1)), start=Fraction(0))


def expected_meet_dim_lag(l: int, j: int, q: int) -> Fraction:
    """E[dim L ∩ (E^j + F^j)] for uniform Lagrangian L in F_q^{2l}."""
    total = lagrangian_count(l, q)
    return sum((Fraction(s * lag_intersection_count_M(l, j, s, q), total)
                for s in range(max(0, 2 * j - l), j + 1)), start=Fraction(0))


def expected_chain_dims_css(l: int, k: int, N: int, q: int) -> list[Fraction]:
    """E[dim C^j] for j = 0..l, L uniform in Gr(Nl, Nk) with l parties of N qudits."""
    return [comb(l, j) * expected_meet_dim_css(N * l, N * k, N * j, q) if j else Fraction(0)
            for j in range(l + 1)]


def expected_chain_dims_lag(l: int, N: int, q: int) -> list[Fraction]:
    """E[dim C^j] for j = 0..l, L a uniform Lagrangian of F_q^{2Nl}."""
    return [comb(l, j) * expected_meet_dim_lag(N * l, N * j, q) if j else Fraction(0)
            for j in range(l + 1)]


def expected_euler(chain_dims: list[Fraction]) -> Fraction:
    return sum(((-1) ** j * c for j, c in enumerate(chain_dims)), start=Fraction(0))
