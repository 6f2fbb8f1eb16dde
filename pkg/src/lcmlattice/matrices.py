"""Power GCD/LCM matrices, the Psi function and exact determinants.

``psi(S, alpha, i)`` is ``sum(mu(x_k, x_i) / x_k**alpha)`` over the divisors
``x_k`` of ``x_i`` in ``S``; the determinant of the power GCD matrix with
entries ``1 / gcd(x_i, x_j)**alpha`` is the product of the Psi values, and
the power LCM matrix is singular exactly when some Psi value vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import factorint, integer_nthroot

from .certified import CertifiedReal, power_sum
from .errors import FactoringTooHard, NonIntegerAlphaInExactMode
from .integer_sets import as_gcd_closed, divisibility_poset

ExactMatrix = list[list[Fraction]]


def exact_alpha(alpha) -> Fraction | None:
    """The exponent as a Fraction, or None when it is not exactly rational."""
    if isinstance(alpha, bool):
        raise TypeError("boolean exponent")
    if isinstance(alpha, (int, Fraction)):
        return Fraction(alpha)
    if isinstance(alpha, str):
        return Fraction(alpha)
    if isinstance(alpha, float) and alpha.is_integer():
        return Fraction(int(alpha))
    return None


def exact_power(m: int, alpha) -> Fraction:
    """``m ** alpha`` as an exact rational.

    Raises NonIntegerAlphaInExactMode unless ``alpha`` is an integer or a
    rational ``p/q`` with ``m`` a perfect q-th power.
    """
    a = exact_alpha(alpha)
    if a is None:
        raise NonIntegerAlphaInExactMode(f"exponent {alpha!r} is not exact")
    p, q = a.numerator, a.denominator
    base = m
    if q != 1:
        root, is_exact = integer_nthroot(m, q)
        if not is_exact:
            raise NonIntegerAlphaInExactMode(f"{m} ** {a} is irrational")
        base = root
    return Fraction(base) ** p


@dataclass(frozen=True)
class ArithFn:
    """``N^alpha`` (``kind="power"``) or ``1/N^alpha`` (``kind="reciprocal_power"``)."""

    kind: str
    alpha: object = 1

    def __post_init__(self):
        if self.kind not in ("power", "reciprocal_power"):
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def power(cls, alpha=1) -> "ArithFn":
        return cls("power", alpha)

    @classmethod
    def reciprocal_power(cls, alpha=1) -> "ArithFn":
        return cls("reciprocal_power", alpha)

    def __call__(self, m: int) -> Fraction:
        v = exact_power(m, self.alpha)
        return v if self.kind == "power" else 1 / v


def meet_matrix(S: Sequence[int], f: ArithFn) -> ExactMatrix:
    """Entries ``f(gcd(x_i, x_j))``."""
    xs = list(S)
    return [[f(math.gcd(a, b)) for b in xs] for a in xs]


def join_matrix(S: Sequence[int], f: ArithFn) -> ExactMatrix:
    """Entries ``f(lcm(x_i, x_j))``."""
    xs = list(S)
    return [[f(math.lcm(a, b)) for b in xs] for a in xs]


def det_direct(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant: clear denominators row-wise, then Bareiss elimination."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    rows = []
    scale = Fraction(1)
    for row in M:
        row = [Fraction(v) for v in row]
        if len(row) != n:
            raise ValueError("matrix is not square")
        d = math.lcm(*(v.denominator for v in row))
        rows.append([int(v * d) for v in row])
        scale /= d
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if rows[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return sign * rows[-1][-1] * scale


# ----------------------------------------------------------------------
# Psi


def psi_terms(S, i: int) -> list[tuple[int, int]]:
    """``(mu(x_k, x_i), x_k)`` for every divisor ``x_k`` of ``x_i`` in ``S``."""
    S = as_gcd_closed(S)
    mu = divisibility_poset(S).mobius()
    return [(mu[k, i], S[k]) for k in range(i + 1) if mu[k, i] != 0]


def _weighted_sum(terms, alpha, precision):
    if exact_alpha(alpha) is not None:
        try:
            return sum((c / exact_power(b, alpha) for c, b in terms), Fraction(0))
        except NonIntegerAlphaInExactMode:
            pass
    return power_sum(terms, alpha, precision)


def psi(S, alpha, i: int, precision: int = 256) -> Fraction | CertifiedReal:
    """Psi at ``x_i`` (0-based): a Fraction when every power is exactly
    rational, otherwise a certified enclosure."""
    S = as_gcd_closed(S)
    return _weighted_sum(psi_terms(S, i), alpha, precision)


def psi_vector(S, alpha, precision: int = 256) -> list:
    S = as_gcd_closed(S)
    return [psi(S, alpha, i, precision) for i in range(len(S))]


def psi_summands(S, i: int, alpha: int = 1) -> tuple[int, list[tuple[int, int]]]:
    """Integer numerators of Psi over the common denominator ``x_i**alpha``.

    Returns ``(x_i**alpha, [(x_k, mu * (x_i / x_k)**alpha), ...])`` with
    ``x_k`` ascending; the numerators sum to ``x_i**alpha * Psi(x_i)``.
    """
    S = as_gcd_closed(S)
    xi = S[i]
    return xi**alpha, [(xk, c * (xi // xk) ** alpha) for c, xk in psi_terms(S, i)]


def _mobius_nt(exponents: dict[int, int]) -> int:
    if any(e > 1 for e in exponents.values()):
        return 0
    return -1 if len(exponents) % 2 else 1


def psi_dirichlet(S, alpha, i: int, max_divisors: int = 100_000, precision: int = 256):
    """Psi at ``x_i`` through divisors of ``x_i`` that divide no earlier element.

    Each such ``z`` contributes ``sum(w**(-alpha) * mu(z / w))`` over ``w | z``
    with the number-theoretic Möbius function.  Needs the factorization of
    ``x_i``.
    """
    S = as_gcd_closed(S)
    x = S[i]
    if x > 10**30:
        raise FactoringTooHard(f"{x} is too large to factor")
    fac = factorint(x)
    count = math.prod(e + 1 for e in fac.values())
    if count > max_divisors:
        raise FactoringTooHard(f"{x} has {count} divisors (budget {max_divisors})")

    def divisors(f: dict[int, int]) -> list[dict[int, int]]:
        out = [{}]
        for p, e in f.items():
            out = [{**d, p: k} for d in out for k in range(e + 1)]
        return out

    def value(d: dict[int, int]) -> int:
        return math.prod(p**k for p, k in d.items())

    earlier = S.elems[:i]
    coeffs: dict[int, int] = {}
    for z in divisors(fac):
        zv = value(z)
        if any(xj % zv == 0 for xj in earlier):
            continue
        for w in divisors(z):
            quotient = {p: z[p] - w.get(p, 0) for p in z if z[p] - w.get(p, 0)}
            m = _mobius_nt(quotient)
            if m:
                wv = value(w)
                coeffs[wv] = coeffs.get(wv, 0) + m
    terms = sorted((c, w) for w, c in coeffs.items() if c)
    return _weighted_sum(terms, alpha, precision)


# ----------------------------------------------------------------------
# determinants and singularity


def _require_exact(alpha) -> Fraction:
    a = exact_alpha(alpha)
    if a is None or a.denominator != 1:
        raise NonIntegerAlphaInExactMode(f"exact mode needs an integer exponent, got {alpha!r}")
    return a


def det_product(S, alpha) -> Fraction:
    """Determinant of the ``1/N^alpha`` GCD matrix as the product of Psi values."""
    _require_exact(alpha)
    S = as_gcd_closed(S)
    return math.prod(psi_vector(S, alpha), start=Fraction(1))


def reciprocal_gcd_matrix(S, alpha) -> ExactMatrix:
    return meet_matrix(as_gcd_closed(S), ArithFn.reciprocal_power(alpha))


def power_lcm_matrix(S, alpha) -> ExactMatrix:
    return join_matrix(as_gcd_closed(S), ArithFn.power(alpha))


@dataclass(frozen=True)
class Singularity:
    """Verdict on the power LCM matrix.

    ``singular`` is True/False when decided and None when some Psi enclosure
    still contains zero at the highest precision tried; ``witnesses`` are
    the (0-based) indices whose Psi is zero or undecided.
    """

    singular: bool | None
    witnesses: tuple[int, ...]
    exact: bool
    psi: tuple


def is_singular_power_lcm(S, alpha, precision: int = 256, max_precision: int = 4096) -> Singularity:
    S = as_gcd_closed(S)
    values = psi_vector(S, alpha, precision)
    if all(isinstance(v, Fraction) for v in values):
        zeros = tuple(i for i, v in enumerate(values) if v == 0)
        return Singularity(bool(zeros), zeros, True, tuple(values))
    values = list(values)
    prec = precision
    while True:
        open_ = [i for i, v in enumerate(values) if isinstance(v, CertifiedReal) and not v.certified]
        if not open_ or prec >= max_precision:
            break
        prec = min(2 * prec, max_precision)
        for i in open_:
            values[i] = psi(S, alpha, i, prec)
    zeros = tuple(
        i for i, v in enumerate(values)
        if (v == 0 if isinstance(v, Fraction) else not v.certified)
    )
    exact_zero = any(isinstance(values[i], Fraction) for i in zeros)
    verdict = True if exact_zero else (None if zeros else False)
    return Singularity(verdict, zeros, False, tuple(values))


def scaling_identity_check(S, alpha) -> bool:
    """``[S]_{N^a} == diag(x^a) (S)_{1/N^a} diag(x^a)`` entrywise."""
    S = as_gcd_closed(S)
    lcm_m = power_lcm_matrix(S, alpha)
    gcd_m = reciprocal_gcd_matrix(S, alpha)
    d = [exact_power(x, alpha) for x in S]
    n = len(S)
    return all(lcm_m[i][j] == d[i] * gcd_m[i][j] * d[j] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class SingularNumberCertificate:
    number: int
    set: tuple[int, ...]
    denominator: int
    summands: tuple[tuple[int, int], ...]

    def check(self) -> bool:
        return sum(c for _, c in self.summands) == 0 and psi(self.set, 1, len(self.set) - 1) == 0


def singular_number_certificate(S) -> SingularNumberCertificate | None:
    """Certificate that ``max(S)`` is a singular number, if ``Psi(max S) = 0``.

    One-sided: None says nothing about other sets with the same maximum.
    """
    S = as_gcd_closed(S)
    i = len(S) - 1
    if psi(S, 1, i) != 0:
        return None
    den, summands = psi_summands(S, i, 1)
    return SingularNumberCertificate(S[i], S.elems, den, tuple(summands))


def dual_determinant_check(S, alpha) -> dict[str, bool]:
    """Compare ``det [S']_{N^a}`` (``S' = {x_n / x_i}``) with the two candidate
    identities ``x_n**n * det[1/gcd^a]`` and ``x_n**(n*a) * det[1/gcd^a]``."""
    from .integer_sets import dual_lcm_closed

    S = as_gcd_closed(S)
    dual = dual_lcm_closed(S)
    n, top = len(S), S[-1]
    lhs = det_direct(join_matrix(dual, ArithFn.power(alpha)))
    g = det_direct(reciprocal_gcd_matrix(S, alpha))
    return {
        "x_n^n": lhs == top**n * g,
        "x_n^(n*alpha)": lhs == exact_power(top, alpha) ** n * g,
    }
