"""Grünwald-Letnikov discretisation of the two-CPE circuit.

The circuit is R_inf in series with (R1 || CPE1) and a Warburg CPE2.  Under the
GL approximation each CPE branch becomes a discrete-time transfer function

    b_i z^T / (z^(T+1) - sum_{j=0}^{T} a_{i,j} z^(T-j))

and the full model is ``d + branch_1 + branch_2``.  Putting it over the common
denominator gives a monic rational function of degree 2T+2 whose coefficient
vectors are what the identifiability analysis consumes.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

from mpmath import mp, mpf

from .errors import DomainError, ParameterError
from .numerics import DEFAULT_CONTEXT, PrecisionContext, RealPoly, poly_mul, to_mpf

__all__ = [
    "ModelParams",
    "GLSeries",
    "MonicTF",
    "IdentCoeffs",
    "MIN_HORIZON",
    "gl_binomial_series",
    "gl_series_from_heads",
    "build_gl_series",
    "expand_monic_tf",
    "head_coeffs",
    "model_tf",
    "fit_sampling_period",
    "example_params",
]

# 15 denominator coefficients below g_{2T+1} must exist for verification
MIN_HORIZON = 7

_REAL_FIELDS = ("r_inf", "r1", "c1", "alpha1", "c2", "alpha2", "ts")


@dataclass(frozen=True)
class ModelParams:
    """Circuit parameters plus the sampling period ``ts`` and horizon ``horizon_T``.

    Real fields are stored as ``mpf``; floats are converted through their
    decimal repr.
    """

    r_inf: mpf
    r1: mpf
    c1: mpf
    alpha1: mpf
    c2: mpf
    alpha2: mpf
    ts: mpf
    horizon_T: int = 100

    def __post_init__(self):
        for name in _REAL_FIELDS:
            object.__setattr__(self, name, _as_real(getattr(self, name), name))
        for name in ("alpha1", "alpha2"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ParameterError(f"{name} must lie in the open interval (0, 1), got {v}")
        for name in ("r_inf", "r1", "c1", "c2", "ts"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")
        T = self.horizon_T
        if isinstance(T, bool) or int(T) != T:
            raise ParameterError(f"horizon_T must be an integer, got {T!r}")
        object.__setattr__(self, "horizon_T", int(T))
        if self.horizon_T < MIN_HORIZON:
            raise ParameterError(f"horizon_T must be >= {MIN_HORIZON}, got {T}")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def replace(self, **changes) -> "ModelParams":
        d = self.as_dict()
        d.update(changes)
        return ModelParams(**d)


def _as_real(x, name):
    try:
        # 100 digits is ample for user input; the model functions re-round
        with mp.workdps(max(mp.dps, 100)):
            return to_mpf(x)
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"{name}: cannot interpret {x!r} as a real number") from exc


@dataclass(frozen=True)
class GLSeries:
    """GL coefficients of both branches; ``a1[j]`` is a_{1,j} for j = 0..T."""

    d: mpf
    b: tuple
    a1: tuple
    a2: tuple

    @property
    def T(self) -> int:
        return len(self.a1) - 1


@dataclass(frozen=True)
class MonicTF:
    """Numerator ``f`` (length 2T+3) and denominator ``g`` (length 2T+2), ascending.

    The denominator's leading coefficient, z^(2T+2), is an implicit 1.
    """

    f: tuple
    g: tuple

    def __post_init__(self):
        if len(self.f) != len(self.g) + 1 or len(self.g) % 2:
            raise DomainError(
                f"inconsistent coefficient lengths: len(f)={len(self.f)}, len(g)={len(self.g)}"
            )

    @property
    def T(self) -> int:
        return (len(self.g) - 2) // 2

    def denominator(self, context: PrecisionContext = DEFAULT_CONTEXT) -> RealPoly:
        return RealPoly(list(self.g) + [1], context)

    def numerator(self, context: PrecisionContext = DEFAULT_CONTEXT) -> RealPoly:
        return RealPoly(self.f, context)


@dataclass(frozen=True)
class IdentCoeffs:
    """Highest-index coefficients.

    ``f_heads[k]`` is f_{2T+1-k} and ``g_heads[k]`` is g_{2T+1-k} for k = 0..3;
    ``g_extra`` holds g_{2T-3}, g_{2T-4} for reporting only.
    """

    d: mpf
    f_heads: tuple
    g_heads: tuple
    g_extra: tuple = ()

    def __post_init__(self):
        values = (self.d, *self.f_heads, *self.g_heads)
        if len(self.f_heads) != 4 or len(self.g_heads) != 4:
            raise DomainError("need exactly four f and four g head coefficients")
        if not all(mp.isfinite(v) for v in values):
            raise DomainError("head coefficients must be finite")

    def delta_f(self, k: int) -> mpf:
        """f_{2T+1-k} - d g_{2T+1-k}: the part of the numerator owed to the CPE branches."""
        return self.f_heads[k] - self.d * self.g_heads[k]


def gl_binomial_series(alpha, T: int, context: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """GL tail a_1..a_T for exponent ``alpha`` (a_0 is model-specific, not included).

    a_1 = alpha(1 - alpha)/2, then a_{j+1} = -(alpha - j - 1)/(j + 2) * a_j.
    All entries are positive for 0 < alpha < 1.
    """
    with context.workdps():
        alpha = to_mpf(alpha)
        if not 0 < alpha < 1:
            raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
        if T < 1:
            raise DomainError("T must be at least 1")
        out = [alpha * (1 - alpha) / 2]
        for j in range(1, T):
            out.append(-(alpha - j - 1) / (j + 2) * out[-1])
        return out


def gl_series_from_heads(d, b1, b2, a10, alpha1, alpha2, T: int,
                         context: PrecisionContext = DEFAULT_CONTEXT) -> GLSeries:
    """Assemble a GLSeries from already-known heads and exponents."""
    with context.workdps():
        a1 = [to_mpf(a10)] + gl_binomial_series(alpha1, T, context)
        a2 = [to_mpf(alpha2)] + gl_binomial_series(alpha2, T, context)
        return GLSeries(d=to_mpf(d), b=(to_mpf(b1), to_mpf(b2)), a1=tuple(a1), a2=tuple(a2))


def build_gl_series(params: ModelParams, context: PrecisionContext = DEFAULT_CONTEXT) -> GLSeries:
    with context.workdps():
        p = params
        g1 = p.ts ** p.alpha1 / p.c1
        g2 = p.ts ** p.alpha2 / p.c2
        a10 = p.alpha1 - p.ts ** p.alpha1 / (p.r1 * p.c1)
        return gl_series_from_heads(p.r_inf, g1, g2, a10, p.alpha1, p.alpha2,
                                    p.horizon_T, context)


def _branch_denominator(a, context) -> RealPoly:
    # z^(T+1) - sum_j a_j z^(T-j), ascending
    T = len(a) - 1
    with context.workdps():
        coeffs = [-a[T - k] for k in range(T + 1)] + [mpf(1)]
    return RealPoly(coeffs, context)


def expand_monic_tf(series: GLSeries, context: PrecisionContext = DEFAULT_CONTEXT) -> MonicTF:
    T = series.T
    den1 = _branch_denominator(series.a1, context)
    den2 = _branch_denominator(series.a2, context)
    den = poly_mul(den1, den2)
    shift = RealPoly([0] * T + [1], context)
    b1, b2 = series.b
    num = den * series.d + poly_mul(shift, den2) * b1 + poly_mul(shift, den1) * b2

    with context.workdps():
        g = list(den.coeffs[: 2 * T + 2])
        g += [mpf(0)] * (2 * T + 2 - len(g))
        f = list(num.coeffs) + [mpf(0)] * (2 * T + 3 - len(num.coeffs))
    return MonicTF(f=tuple(f), g=tuple(g))


def head_coeffs(tf: MonicTF) -> IdentCoeffs:
    T = tf.T
    if T < MIN_HORIZON:
        raise DomainError(f"need T >= {MIN_HORIZON} for the head-coefficient analysis, got T={T}")
    top = 2 * T + 1
    return IdentCoeffs(
        d=tf.f[top + 1],
        f_heads=tuple(tf.f[top - k] for k in range(4)),
        g_heads=tuple(tf.g[top - k] for k in range(4)),
        g_extra=(tf.g[top - 4], tf.g[top - 5]),
    )


def model_tf(params: ModelParams, context: PrecisionContext = DEFAULT_CONTEXT) -> MonicTF:
    """Shorthand for ``expand_monic_tf(build_gl_series(params))``."""
    return expand_monic_tf(build_gl_series(params, context), context)


def fit_sampling_period(g_top, alpha1, alpha2, r1, c1,
                        context: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Sampling period that makes g_{2T+1} equal ``g_top`` for the given circuit.

    Inverts g_{2T+1} = -(alpha1 - ts**alpha1 / (r1 c1) + alpha2).
    """
    with context.workdps():
        g_top, alpha1, alpha2, r1, c1 = map(to_mpf, (g_top, alpha1, alpha2, r1, c1))
        gain = r1 * c1 * (alpha1 + alpha2 + g_top)
        if not gain > 0:
            raise DomainError("no positive sampling period reproduces this g_{2T+1}")
        return gain ** (1 / alpha1)


def example_params(horizon_T: int = 100, ts="5e-4",
                         context: PrecisionContext = DEFAULT_CONTEXT) -> ModelParams:
    """The battery cell used throughout the docs and tests.

    alpha1=0.8, alpha2=0.5, R_inf=0.01, R1=0.2, C1=3, C2=400, sampled every
    0.5 ms.  Pass ``ts=None`` to reconstruct the period instead from the
    four-digit g_{2T+1} = -1.2962 with :func:`fit_sampling_period`, which
    gives 4.98e-4 s.
    """
    if ts is None:
        ts = fit_sampling_period("-1.2962", "0.8", "0.5", "0.2", "3", context)
    return ModelParams(r_inf="0.01", r1="0.2", c1="3", alpha1="0.8", c2="400",
                       alpha2="0.5", ts=ts, horizon_T=horizon_T)
