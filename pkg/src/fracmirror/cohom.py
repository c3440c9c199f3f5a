"""Cohomology-valued solutions: nilpotent deformations, B-series, I-functions.

Deforming the holomorphic solution coefficientwise by n -> n + rho, with
rho nilpotent of order m, produces the full Frobenius tower in one object:
the rho^k-slices of z^rho * deformed are omega0, omega0 log z + tau, and the
higher partners.  The same shape with weight data (w_a; u_b) gives the
untwisted I-function

    I(q) = sum_d q^d prod_a prod_(t=1)^(w_a d) (w_a eps + t)
                     / prod_b prod_(t=1)^(u_b d) (u_b eps + t),

whose eps^0 and eps^1 slices encode the mirror map.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FracmirrorError
from .picard_fuchs import apply
from .series import EpsPoly, LogSeries, NilpotentSeries, RationalSeries

__all__ = [
    "CohomRing",
    "deformed_solution",
    "frobenius_residue",
    "b_series",
    "i_function_untwisted",
    "i_function_mirror_map",
    "i_weights_from_kernel",
    "pairing_matrix",
]


@dataclass(frozen=True)
class CohomRing:
    """Rank-1 graded ring Q[eps]/(eps^m) with named divisor classes.

    ``classes`` maps a label to the rational multiple of eps representing
    that divisor; ``integral_scale`` is the value of the integral of
    eps^(m-1) over the space.
    """

    m: int
    classes: tuple  # ((label, Fraction multiple), ...)
    integral_scale: Fraction
    rank: int = 1

    def __init__(self, m, classes, integral_scale, rank=1, distinguished=None):
        object.__setattr__(self, "m", int(m))
        if isinstance(classes, dict):
            classes = classes.items()
        pairs = tuple((str(k), Fraction(v)) for k, v in classes)
        object.__setattr__(self, "classes", pairs)
        object.__setattr__(self, "integral_scale", Fraction(integral_scale))
        object.__setattr__(self, "rank", int(rank))
        if distinguished is not None:
            mult = dict(pairs)
            rest = sum(
                (v for k, v in pairs if k != distinguished), Fraction(0)
            )
            if mult[distinguished] != -rest:
                raise FracmirrorError(
                    "distinguished class must equal minus the sum of the others"
                )

    def cls(self, label):
        for k, v in self.classes:
            if k == label:
                return EpsPoly(self.m, (0, v))
        raise KeyError(label)

    def integral(self, x):
        if not isinstance(x, EpsPoly) or x.m != self.m:
            raise TypeError("integral takes an EpsPoly of matching order")
        return x.coeff(self.m - 1) * self.integral_scale


def _rising_eps(base, count):
    """(base)(base+1)...(base+count-1) for an EpsPoly base."""
    out = EpsPoly.constant(base.m, 1)
    for t in range(count):
        out = out * (base + t)
    return out


def deformed_solution(ell, alpha, N, m):
    """Coefficients deformed by n -> n + rho with rho^m = 0.

    c_n(rho) = prod_(l_e<0) prod_(j=0)^(k_e n - 1) (-a_e + k_e rho + j)
             / prod_(l_e>0) prod_(t=1)^(l_e n)     (a_e + l_e rho + t),

    normalized so c_0 = 1 (the rho-dependent constant is a unit and has been
    divided out).  Slice rho^1 of the result is the tau-series of the
    log partner.
    """
    ell = tuple(int(x) for x in ell)
    alpha = tuple(Fraction(a) for a in alpha)
    d = sum(le for le in ell if le > 0)
    if m > d + 1:
        raise FracmirrorError(
            "nilpotency order m exceeds operator degree + 1"
        )
    if m == 1:
        from .gkz import holo_solution

        plain = holo_solution(ell, alpha, N)
        return NilpotentSeries(
            1, [EpsPoly.constant(1, c) for c in plain.c], N
        )
    coeffs = []
    for n in range(N + 1):
        num = EpsPoly.constant(m, 1)
        den = EpsPoly.constant(m, 1)
        for le, ae in zip(ell, alpha):
            if le < 0:
                if ae.denominator == 1:
                    raise FracmirrorError(
                        "unsupported shape: negative kernel entry on an "
                        "integer-exponent column"
                    )
                k = -le
                base = EpsPoly(m, (-ae, k))
                num = num * _rising_eps(base, k * n)
            elif le > 0:
                base = EpsPoly(m, (ae + 1, le))
                den = den * _rising_eps(base, le * n)
        coeffs.append(num / den)
    return NilpotentSeries(m, coeffs, N)


def _log_prefactor(deformed):
    """z^rho * deformed as a LogSeries: parts[k] = deformed * rho^k / k!."""
    m = deformed.m
    parts = []
    for k in range(m):
        scale = EpsPoly.eps(m, k) * Fraction(1, math.factorial(k))
        parts.append(deformed * scale)
    return LogSeries(parts)


def frobenius_residue(op, deformed, N=None):
    """apply(op, z^rho * deformed): must collapse to a pure constant.

    For the operator conjugate to the kernel vector of the deformation the
    only surviving coefficient is the (z^0, log^0) entry, equal to the
    indicial value F(rho) — rho^degree times a unit.  Any other nonvanishing
    coefficient is reported with its (order, log-power).
    """
    m = deformed.m
    if m != op.degree + 1:
        raise FracmirrorError(
            "frobenius_residue needs nilpotency order = operator degree + 1"
        )
    if N is None:
        N = deformed.N
    W = _log_prefactor(deformed.truncate(N))
    out = apply(op, W)
    bad = []
    for k in range(out.log_degree + 1):
        part = out.part(k)
        for n in range(N + 1):
            if n == 0 and k == 0:
                continue
            if not part.coeff(n).is_zero:
                bad.append((n, k))
    if bad:
        raise FracmirrorError(
            "operator does not annihilate the deformed solution; "
            f"nonvanishing coefficients at (order, log-power) = {bad[:5]}"
        )
    return out.part(0).coeff(0)


def b_series(ring, ell, alpha, N):
    """The cohomology-valued series z^eps * deformed over the given ring.

    Gamma-factor units are already divided out (the z-independent constant
    is 1); slices are eps^0 = omega0 and eps^1 = omega0 log z + tau.
    """
    if ring.rank != 1:
        raise FracmirrorError("b_series requires a rank-1 cohomology ring")
    deformed = deformed_solution(ell, alpha, N, ring.m)
    return _log_prefactor(deformed)


def i_weights_from_kernel(ell, alpha):
    """Numerator/denominator weights of the untwisted I-function.

    Each negative kernel entry of size k contributes numerator weight 2k and
    denominator weight k; each positive entry contributes its own value to
    the denominator.
    """
    num = []
    den = []
    for le, ae in zip(ell, alpha):
        if le < 0:
            num.append(-2 * le)
        elif le > 0:
            den.append(le)
    for le in ell:
        if le < 0:
            den.append(-le)
    return tuple(num), tuple(sorted(den))


def i_function_untwisted(num_weights, den_weights, m, N):
    """I(q) = sum_d q^d prod_a prod_(t=1)^(w_a d)(w_a eps + t) /
    prod_b prod_(t=1)^(u_b d)(u_b eps + t), an eps-truncated series."""
    coeffs = []
    for d in range(N + 1):
        num = EpsPoly.constant(m, 1)
        den = EpsPoly.constant(m, 1)
        for w in num_weights:
            base = EpsPoly(m, (1, w))
            num = num * _rising_eps(base, w * d)
        for u in den_weights:
            base = EpsPoly(m, (1, u))
            den = den * _rising_eps(base, u * d)
        coeffs.append(num / den)
    return NilpotentSeries(m, coeffs, N)


def i_function_mirror_map(I):
    """The series part B/A of the mirror map t(q) = log q + B(q)/A(q).

    A is the eps^0 slice and B the eps^1 slice of the I-function; A must be
    a unit (constant term 1).
    """
    A = I.eps_slice(0)
    if A.coeff(0) != 1:
        raise FracmirrorError("eps^0 slice of the I-function is not a unit")
    B = I.eps_slice(1)
    return B / A


def pairing_matrix(ring, basis):
    """Gram matrix of ring.integral(b_i * b_j) over the given basis."""
    basis = [b if isinstance(b, EpsPoly) else EpsPoly.constant(ring.m, b) for b in basis]
    return tuple(
        tuple(ring.integral(bi * bj) for bj in basis) for bi in basis
    )
