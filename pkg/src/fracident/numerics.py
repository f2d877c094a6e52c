"""Extended-precision polynomial algebra and an Aberth-Ehrlich root finder.

Everything here runs on :mod:`mpmath` numbers.  The working precision is
carried by a :class:`PrecisionContext` rather than by mpmath's global state:
every public function enters ``mp.workdps`` for the duration of the call, so
results do not depend on whatever precision the caller left active.

Roots are returned as plain ``mpmath.mpc`` values (``.real`` / ``.imag``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import mpmath
from mpmath import mp, mpf, mpc

from .errors import ConfigurationError, DomainError, RootFindingError

__all__ = [
    "PrecisionContext",
    "DEFAULT_CONTEXT",
    "RealPoly",
    "to_mpf",
    "poly_add",
    "poly_mul",
    "poly_eval",
    "poly_from_roots",
    "find_roots",
    "classify_real_roots",
]

# extra digits used inside the root finder so the returned roots are good to
# the full context precision
_GUARD_DIGITS = 10


def to_mpf(x) -> mpf:
    """Convert ``x`` to ``mpf`` at the current precision.

    Python floats go through their shortest decimal ``repr`` so that a value
    typed as ``0.2`` becomes the decimal 0.2 and not the nearest binary double.
    """
    if isinstance(x, mpf):
        return +x
    if isinstance(x, float):
        return mpf(repr(x))
    if isinstance(x, (mpc, complex)):
        raise TypeError(f"expected a real number, got {x!r}")
    return mpf(x)


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and root-finder controls.

    ``root_tolerance`` defaults to ``10**(-0.8 * decimal_digits)``.
    """

    decimal_digits: int = 60
    root_tolerance: mpf = field(default=None)  # type: ignore[assignment]
    max_iterations: int = 500

    def __post_init__(self):
        if int(self.decimal_digits) != self.decimal_digits or self.decimal_digits < 30:
            raise ConfigurationError(
                f"decimal_digits must be an integer >= 30, got {self.decimal_digits}"
            )
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be positive")
        with mp.workdps(self.decimal_digits + _GUARD_DIGITS):
            if self.root_tolerance is None:
                tol = mpf(10) ** (-0.8 * self.decimal_digits)
            else:
                tol = to_mpf(self.root_tolerance)
            if not tol > 0:
                raise ConfigurationError("root_tolerance must be positive")
            if tol < mpf(10) ** (-self.decimal_digits):
                raise ConfigurationError(
                    "root_tolerance below 10**-decimal_digits cannot be reached"
                )
        object.__setattr__(self, "root_tolerance", tol)

    @property
    def half_digits_eps(self) -> mpf:
        """``10**(-decimal_digits/2)``, the default realness/degeneracy threshold."""
        with mp.workdps(self.decimal_digits):
            return mpf(10) ** (-mpf(self.decimal_digits) / 2)

    def workdps(self):
        return mp.workdps(self.decimal_digits)


DEFAULT_CONTEXT = PrecisionContext()


class RealPoly:
    """Dense real polynomial, coefficients in ascending powers.

    Trailing (highest-power) exact zeros are trimmed, so the zero polynomial
    has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("_coeffs", "_ctx")

    def __init__(self, coeffs: Iterable, context: PrecisionContext = DEFAULT_CONTEXT):
        with context.workdps():
            cs = [to_mpf(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)
        self._ctx = context

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def context(self) -> PrecisionContext:
        return self._ctx

    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> mpf:
        if not self._coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def monic(self) -> "RealPoly":
        lead = self.leading
        with self._ctx.workdps():
            return RealPoly([c / lead for c in self._coeffs], self._ctx)

    def scale(self, c) -> "RealPoly":
        with self._ctx.workdps():
            c = to_mpf(c)
            return RealPoly([c * a for a in self._coeffs], self._ctx)

    def __add__(self, other):
        return poly_add(self, _coerce(other, self._ctx))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return poly_add(self, -_coerce(other, self._ctx))

    def __rsub__(self, other):
        return poly_add(_coerce(other, self._ctx), -self)

    def __mul__(self, other):
        if isinstance(other, RealPoly):
            return poly_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if not isinstance(other, RealPoly):
            return NotImplemented
        return self._coeffs == other._coeffs and self._ctx == other._ctx

    def __hash__(self):
        return hash((self._coeffs, self._ctx))

    def __repr__(self):
        terms = ", ".join(mpmath.nstr(c, 8) for c in self._coeffs)
        return f"RealPoly([{terms}])"


def _coerce(x, ctx: PrecisionContext) -> RealPoly:
    if isinstance(x, RealPoly):
        return x
    return RealPoly([x], ctx)


def _check_ctx(p: RealPoly, q: RealPoly) -> PrecisionContext:
    if p.context != q.context:
        raise ConfigurationError(
            f"mismatched precision contexts: {p.context} vs {q.context}"
        )
    return p.context


def poly_add(p: RealPoly, q: RealPoly) -> RealPoly:
    ctx = _check_ctx(p, q)
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    with ctx.workdps():
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
    return RealPoly(out, ctx)


def poly_mul(p: RealPoly, q: RealPoly) -> RealPoly:
    ctx = _check_ctx(p, q)
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return RealPoly([], ctx)
    with ctx.workdps():
        out = [mpf(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return RealPoly(out, ctx)


def poly_eval(p: RealPoly, x):
    """Horner evaluation; ``x`` may be real or complex."""
    with p.context.workdps():
        if not isinstance(x, (mpf, mpc)):
            x = mpc(x) if isinstance(x, complex) else to_mpf(x)
        acc = mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc


def poly_from_roots(roots: Sequence, context: PrecisionContext = DEFAULT_CONTEXT) -> RealPoly:
    """Monic polynomial prod(x - r) for real roots ``r``."""
    p = RealPoly([1], context)
    for r in roots:
        with context.workdps():
            r = to_mpf(r)
        p = poly_mul(p, RealPoly([-r, 1], context))
    return p


def _horner_with_derivative(cs, z):
    # cs ascending; returns p(z), p'(z)
    p = cs[-1]
    dp = mpc(0)
    for c in reversed(cs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def find_roots(p: RealPoly) -> list:
    """All complex roots of ``p`` (with multiplicity) by Aberth-Ehrlich iteration.

    The polynomial is made monic first.  Initial guesses lie on a circle whose
    radius is the Cauchy bound ``1 + max|c_i| / |c_lead|``, rotated off the
    real axis so conjugate pairs are not started symmetrically.

    Raises
    ------
    DomainError
        for the zero polynomial or a constant.
    RootFindingError
        when the largest per-root update has not dropped below
        ``context.root_tolerance`` after ``context.max_iterations`` sweeps.
    """
    ctx = p.context
    if p.is_zero():
        raise DomainError("cannot find roots of the zero polynomial")
    n = p.degree()
    if n < 1:
        raise DomainError("polynomial must have degree >= 1")

    with mp.workdps(ctx.decimal_digits + _GUARD_DIGITS):
        lead = p.leading
        cs = [mpc(c / lead) for c in p.coeffs]
        if n == 1:
            return [mpc(-cs[0])]
        radius = 1 + max(abs(c) for c in cs[:-1])
        z = [
            radius * mpmath.expj(2 * mp.pi * k / n + mpf("0.4"))
            for k in range(n)
        ]
        tol = ctx.root_tolerance
        converged = False
        for _ in range(ctx.max_iterations):
            biggest = mpf(0)
            for k in range(n):
                pk, dpk = _horner_with_derivative(cs, z[k])
                if pk == 0:
                    continue
                if dpk == 0:
                    # stationary point: nudge and retry next sweep
                    z[k] += tol * radius
                    biggest = max(biggest, mpf(1))
                    continue
                ratio = pk / dpk
                repulsion = mpc(0)
                for j in range(n):
                    if j != k:
                        repulsion += 1 / (z[k] - z[j])
                step = ratio / (1 - ratio * repulsion)
                z[k] -= step
                biggest = max(biggest, abs(step) / max(1, abs(z[k])))
            if biggest < tol:
                converged = True
                break
        if not converged:
            residuals = [abs(_horner_with_derivative(cs, zk)[0]) for zk in z]
            raise RootFindingError(
                f"Aberth iteration did not converge in {ctx.max_iterations} sweeps",
                residuals=residuals,
            )
    with ctx.workdps():
        return [+zk for zk in z]


def classify_real_roots(roots: Iterable, im_threshold) -> list:
    """Real parts of the roots with ``|imag| < im_threshold``, ascending."""
    if not im_threshold > 0:
        raise DomainError("im_threshold must be positive")
    out = []
    for r in roots:
        r = mpc(r)
        if abs(r.imag) < im_threshold:
            out.append(r.real)
    return sorted(out)
