"""Coefficient-mapping identifiability test for the two-CPE GL model.

Only the highest-index transfer-function coefficients are used.  Matching
them against the parameter map leaves two unknowns, the exponents, and two
equations that are affine in alpha1 once alpha2 is fixed:

    alpha1 = K1(alpha2) / K2(alpha2)      (from f_{2T-1}, degrees 4/3)
    alpha1 = K3(alpha2) / K4(alpha2)      (from f_{2T-2}, degrees 5/4)

Cross-multiplying gives an octic in alpha2.  Each real root in (0, 1) is a
candidate; it is kept only if the branch gains come out positive and the model
rebuilt from the candidate reproduces the original denominator.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional

import mpmath
from mpmath import mp, mpf

from .errors import DegenerateStructureError, ParameterError
from .gl_model import (
    IdentCoeffs,
    ModelParams,
    MonicTF,
    expand_monic_tf,
    gl_series_from_heads,
    head_coeffs,
)
from .numerics import (
    DEFAULT_CONTEXT,
    PrecisionContext,
    RealPoly,
    classify_real_roots,
    find_roots,
    to_mpf,
)

__all__ = [
    "Status",
    "Verdict",
    "AlphaPolys",
    "CandidateSolution",
    "IdentifiabilityReport",
    "LegacyResiduals",
    "AnalysisConfig",
    "Recovery",
    "MATCH_F3",
    "MATCH_F4",
    "build_alpha_polys",
    "alpha1_as_rational",
    "build_octic",
    "octic_from_heads",
    "exclusion_interval",
    "filter_candidates",
    "recover_alpha1",
    "recover_parameters",
    "verify_candidate",
    "decide_verdict",
    "analyze",
    "legacy_residuals",
]

MATCH_F3 = "f_2T-1"
MATCH_F4 = "f_2T-2"


class Status(str, enum.Enum):
    PENDING = "Pending"
    REJECTED_COMPLEX = "RejectedComplex"
    REJECTED_RANGE = "RejectedRange"
    REJECTED_INTERVAL = "RejectedInterval"
    REJECTED_DEGENERATE = "RejectedDegenerate"
    REJECTED_NEGATIVE_GAIN = "RejectedNegativeGain"
    REJECTED_VERIFICATION = "RejectedVerification"
    ACCEPTED = "Accepted"


class Verdict(str, enum.Enum):
    GLOBALLY_IDENTIFIABLE = "GloballyIdentifiable"
    IDENTIFIABLE = "Identifiable"
    UNIDENTIFIABLE = "Unidentifiable"
    NO_VALID_SOLUTION = "NoValidSolution"


@dataclass(frozen=True)
class AlphaPolys:
    """The A, B, C, D, E terms as polynomials in alpha2.

    C also depends on alpha1: C = C0(alpha2) + c_alpha1 * alpha1.
    """

    A: RealPoly
    B: RealPoly
    C0: RealPoly
    c_alpha1: mpf
    D: RealPoly
    E: RealPoly

    def C(self, alpha1) -> RealPoly:
        return self.C0 + self.c_alpha1 * to_mpf(alpha1)


@dataclass(frozen=True)
class CandidateSolution:
    alpha2: mpf
    status: Status = Status.PENDING
    alpha1: Optional[mpf] = None
    a10: Optional[mpf] = None
    b1: Optional[mpf] = None
    b2: Optional[mpf] = None
    recovered: Optional[ModelParams] = None
    max_norm_error: Optional[mpf] = None
    norm_errors: tuple = ()
    imag: mpf = mpf(0)
    note: str = ""


@dataclass(frozen=True)
class IdentifiabilityReport:
    candidates: tuple
    verdict: Verdict
    n_accepted: int
    octic: Optional[RealPoly]
    exclusion_interval: Optional[tuple]
    heads: Optional[IdentCoeffs] = None
    timings: dict = field(default_factory=dict, compare=False)

    @property
    def accepted(self) -> list:
        return [c for c in self.candidates if c.status is Status.ACCEPTED]

    @property
    def verdict_label(self) -> str:
        if self.verdict is Verdict.IDENTIFIABLE:
            return f"Identifiable({self.n_accepted})"
        return self.verdict.value


@dataclass(frozen=True)
class LegacyResiduals:
    g0: mpf
    g1: mpf
    g2: mpf
    residual1: mpf
    residual2: mpf
    scale1: mpf
    scale2: mpf
    T: int


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs for :func:`analyze`.

    ``im_threshold`` and ``degeneracy_threshold`` default to
    ``10**(-digits/2)``.  ``n_verify`` denominator coefficients starting at
    g_{2T} are compared during verification.
    """

    context: PrecisionContext = DEFAULT_CONTEXT
    verify_tol: mpf = mpf("1e-12")
    im_threshold: Optional[mpf] = None
    degeneracy_threshold: Optional[mpf] = None
    error_floor: mpf = mpf("1e-30")
    n_verify: int = 15

    @property
    def realness(self) -> mpf:
        return self.im_threshold if self.im_threshold is not None else self.context.half_digits_eps

    @property
    def degeneracy(self) -> mpf:
        if self.degeneracy_threshold is not None:
            return self.degeneracy_threshold
        return self.context.half_digits_eps


def build_alpha_polys(h: IdentCoeffs, context: PrecisionContext = DEFAULT_CONTEXT) -> AlphaPolys:
    with context.workdps():
        g1, g2, g3, _ = h.g_heads
        df1, df2 = h.delta_f(0), h.delta_f(1)
        third = mpf(1) / 3
        x = RealPoly([0, 1], context)
        A = -(x * (x + g1) + g2)
        B = g3 + A * (x * (2 * third) + (g1 + 2 * third))
        C0 = x * (5 * third) + g1
        D = (x + g1) * df1 - df2
        E = x * 2 + g1
        return AlphaPolys(A=A, B=B, C0=C0, c_alpha1=third, D=D, E=E)


def alpha1_as_rational(h: IdentCoeffs, polys: AlphaPolys, which: str,
                       context: PrecisionContext = DEFAULT_CONTEXT):
    """Solve one of the two matching equations for alpha1 as ``num / den``.

    Both equations are written as ``alpha1 * den - num = 0``:

    f_{2T-1}:  dF1 B E + dF3 C E + A C D - 2 B D = 0
    f_{2T-2}:  dF1 (alpha1 - 2) B E + (alpha2 - 2) A C D
           - (alpha1 + alpha2 - 4) B D - 3 dF4 C E = 0

    where dFk = f_{2T+2-k} - d g_{2T+2-k} and C = C0 + alpha1/3.
    """
    A, B, C0, D, E = polys.A, polys.B, polys.C0, polys.D, polys.E
    with context.workdps():
        k = polys.c_alpha1
        df1, df3, df4 = h.delta_f(0), h.delta_f(2), h.delta_f(3)
        x = RealPoly([0, 1], context)
        BE, BD, AD = B * E, B * D, A * D
        if which == MATCH_F3:
            den = E * (df3 * k) + AD * k
            num = -(BE * df1 + C0 * E * df3 + AD * C0 - BD * 2)
        elif which == MATCH_F4:
            den = BE * df1 + (x - 2) * AD * k - BD - E * (3 * df4 * k)
            num = -(BE * (-2 * df1) + (x - 2) * AD * C0 - (x - 4) * BD - C0 * E * (3 * df4))
        else:
            raise ValueError(f"unknown equation {which!r}")
    if den.is_zero():
        raise DegenerateStructureError(f"{which}: alpha1 drops out of the equation")
    return num, den


def build_octic(m3, m4) -> RealPoly:
    """Monic ``K1 K4 - K3 K2`` where m3 = (K1, K2) and m4 = (K3, K4)."""
    k1, k2 = m3
    k3, k4 = m4
    octic = k1 * k4 - k3 * k2
    if octic.is_zero():
        raise DegenerateStructureError("the alpha2 polynomial vanishes identically")
    return octic.monic()


def octic_from_heads(h: IdentCoeffs, context: PrecisionContext = DEFAULT_CONTEXT) -> RealPoly:
    polys = build_alpha_polys(h, context)
    return build_octic(alpha1_as_rational(h, polys, MATCH_F3, context),
                       alpha1_as_rational(h, polys, MATCH_F4, context))


def exclusion_interval(h: IdentCoeffs, context: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """alpha2 range on which one of the branch gains b1, b2 is non-positive."""
    with context.workdps():
        df1 = h.delta_f(0)
        if df1 == 0:
            raise DegenerateStructureError("f_{2T+1} - d g_{2T+1} = b1 + b2 is zero")
        ratio = h.delta_f(1) / df1
        lo, hi = ratio - h.g_heads[0], -ratio
        return (lo, hi) if lo <= hi else (hi, lo)


def filter_candidates(alpha2s, interval, alpha1s=None) -> list:
    """Range and gain-sign screening of real roots.

    Exponents must lie in the open interval (0, 1); alpha2 must not lie in
    the closed exclusion ``interval``.  ``alpha1s``, when given, is checked
    for range alongside its alpha2.
    """
    lo, hi = interval
    out = []
    for k, a2 in enumerate(alpha2s):
        a1 = None if alpha1s is None else alpha1s[k]
        if not 0 < a2 < 1 or (a1 is not None and not 0 < a1 < 1):
            status = Status.REJECTED_RANGE
        elif lo <= a2 <= hi:
            status = Status.REJECTED_INTERVAL
        else:
            status = Status.PENDING
        out.append(CandidateSolution(alpha2=a2, alpha1=a1, status=status))
    return out


def recover_alpha1(alpha2, m3, threshold=None, context: PrecisionContext = DEFAULT_CONTEXT):
    num, den = m3
    if threshold is None:
        threshold = context.half_digits_eps
    with context.workdps():
        d = den(alpha2)
        if abs(d) < threshold:
            raise DegenerateStructureError(f"alpha1 denominator vanishes at alpha2={alpha2}")
        return num(alpha2) / d


class Recovery(NamedTuple):
    a10: mpf
    b1: mpf
    b2: mpf
    params: Optional[ModelParams]
    status: Status


def recover_parameters(alpha1, alpha2, h: IdentCoeffs, ts=None, T: int = 100,
                       threshold=None, context: PrecisionContext = DEFAULT_CONTEXT) -> Recovery:
    """Branch heads and circuit values for one exponent pair.

    ``params`` is None when ``ts`` is not known or the pair is rejected.
    """
    if threshold is None:
        threshold = context.half_digits_eps
    with context.workdps():
        alpha1, alpha2 = to_mpf(alpha1), to_mpf(alpha2)
        g_top = h.g_heads[0]
        df1 = h.delta_f(0)
        e = g_top + 2 * alpha2
        if abs(e) < threshold:
            raise DegenerateStructureError(f"E(alpha2) vanishes at alpha2={alpha2}")
        a10 = -(g_top + alpha2)
        b1 = (df1 * (g_top + alpha2) - h.delta_f(1)) / e
        b2 = df1 - b1
        rc_gain = alpha1 - a10  # ts**alpha1 / (R1 C1)
        if b1 <= 0 or b2 <= 0 or rc_gain <= 0:
            return Recovery(a10, b1, b2, None, Status.REJECTED_NEGATIVE_GAIN)
        params = None
        if ts is not None:
            ts = to_mpf(ts)
            try:
                params = ModelParams(
                    r_inf=h.d, r1=b1 / rc_gain, c1=ts ** alpha1 / b1, alpha1=alpha1,
                    c2=ts ** alpha2 / b2, alpha2=alpha2, ts=ts, horizon_T=T,
                )
            except ParameterError:
                # e.g. R_inf <= 0 from a foreign coefficient set; verification decides
                params = None
        return Recovery(a10, b1, b2, params, Status.PENDING)


def verify_candidate(candidate: CandidateSolution, tf: MonicTF, tol=mpf("1e-12"),
                     n_coeffs: int = 15, floor=mpf("1e-30"),
                     context: PrecisionContext = DEFAULT_CONTEXT):
    """Rebuild the model from a candidate and compare denominators.

    Returns ``(max_error, accepted, errors)`` where ``errors[k]`` is the
    normalised error |g_hat - g| / max(|g|, floor) of g_{2T-k}.
    """
    T = tf.T
    c = candidate
    series = gl_series_from_heads(tf.f[-1], c.b1, c.b2, c.a10, c.alpha1, c.alpha2, T, context)
    rebuilt = expand_monic_tf(series, context)
    with context.workdps():
        top = 2 * T
        n = min(n_coeffs, top + 1)
        errors = []
        for k in range(n):
            g, g_hat = tf.g[top - k], rebuilt.g[top - k]
            errors.append(abs(g_hat - g) / max(abs(g), floor))
        worst = max(errors)
        return worst, bool(worst < tol), tuple(errors)


def _same_solution(p: CandidateSolution, q: CandidateSolution, rel) -> bool:
    def close(x, y):
        return abs(x - y) <= rel * max(abs(x), abs(y), 1)

    return all(close(getattr(p, f), getattr(q, f)) for f in ("alpha1", "alpha2", "b1", "b2"))


def decide_verdict(candidates, dedupe_rel=mpf("1e-20")):
    """Verdict and number of distinct accepted parameter sets.

    Accepted candidates agreeing to ``dedupe_rel`` (e.g. the two copies of a
    double root) count once.
    """
    distinct = []
    for c in candidates:
        if c.status is not Status.ACCEPTED:
            continue
        if not any(_same_solution(c, d, dedupe_rel) for d in distinct):
            distinct.append(c)
    n = len(distinct)
    if n == 0:
        return Verdict.NO_VALID_SOLUTION, 0
    if n == 1:
        return Verdict.GLOBALLY_IDENTIFIABLE, 1
    return Verdict.IDENTIFIABLE, n


def analyze(tf: MonicTF, ts=None, config: AnalysisConfig = AnalysisConfig()) -> IdentifiabilityReport:
    """Run the full head-coefficient analysis on a monic transfer function.

    ``ts`` is only needed to turn branch gains back into R1, C1, C2.
    """
    ctx = config.context
    timings = {}
    t0 = time.perf_counter()
    h = head_coeffs(tf)
    polys = build_alpha_polys(h, ctx)
    try:
        m3 = alpha1_as_rational(h, polys, MATCH_F3, ctx)
        m4 = alpha1_as_rational(h, polys, MATCH_F4, ctx)
        octic = build_octic(m3, m4)
        interval = exclusion_interval(h, ctx)
    except DegenerateStructureError as exc:
        # every alpha2 satisfies the reduced equations: infinitely many-to-one
        timings["total"] = time.perf_counter() - t0
        cand = CandidateSolution(alpha2=mpf("nan"), status=Status.REJECTED_DEGENERATE, note=str(exc))
        return IdentifiabilityReport((cand,), Verdict.UNIDENTIFIABLE, 0, None, None, h, timings)
    timings["octic"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    roots = find_roots(octic)
    timings["roots"] = time.perf_counter() - t1

    t2 = time.perf_counter()
    candidates = []
    with ctx.workdps():
        thr = config.realness
        for r in roots:
            if abs(r.imag) >= thr:
                candidates.append(CandidateSolution(alpha2=r.real, imag=r.imag,
                                                    status=Status.REJECTED_COMPLEX))
        reals = classify_real_roots(roots, thr)

    alpha1s, degenerate = [], {}
    for k, a2 in enumerate(reals):
        try:
            alpha1s.append(recover_alpha1(a2, m3, config.degeneracy, ctx))
        except DegenerateStructureError as exc:
            alpha1s.append(None)
            degenerate[k] = str(exc)

    screened = []
    for k, a2 in enumerate(reals):
        if k in degenerate:
            screened.append(CandidateSolution(alpha2=a2, status=Status.REJECTED_DEGENERATE,
                                              note=degenerate[k]))
        else:
            screened.extend(filter_candidates([a2], interval, [alpha1s[k]]))

    for cand in screened:
        if cand.status is not Status.PENDING:
            candidates.append(cand)
            continue
        try:
            rec = recover_parameters(cand.alpha1, cand.alpha2, h, ts, tf.T, config.degeneracy, ctx)
        except DegenerateStructureError as exc:
            candidates.append(replace(cand, status=Status.REJECTED_DEGENERATE, note=str(exc)))
            continue
        cand = replace(cand, a10=rec.a10, b1=rec.b1, b2=rec.b2, recovered=rec.params)
        if rec.status is not Status.PENDING:
            candidates.append(replace(cand, status=rec.status))
            continue
        worst, ok, errors = verify_candidate(cand, tf, config.verify_tol, config.n_verify,
                                             config.error_floor, ctx)
        status = Status.ACCEPTED if ok else Status.REJECTED_VERIFICATION
        candidates.append(replace(cand, max_norm_error=worst, norm_errors=errors, status=status))
    timings["candidates"] = time.perf_counter() - t2
    timings["total"] = time.perf_counter() - t0

    candidates.sort(key=lambda c: (c.status is Status.REJECTED_COMPLEX, c.alpha2))
    verdict, n = decide_verdict(candidates)
    return IdentifiabilityReport(tuple(candidates), verdict, n, octic, interval, h, timings)


def legacy_residuals(tf: MonicTF, alpha1, alpha2,
                     context: PrecisionContext = DEFAULT_CONTEXT) -> LegacyResiduals:
    """Evaluate the older lowest-coefficient equations at (alpha1, alpha2).

    residual1 = g1 + g0 (T+1) (1/(alpha1-T) + 1/(alpha2-T))
    residual2 = g2 - g0 (T+1) (a_hat + b_hat + c_hat)

    ``scale1``/``scale2`` are the largest term magnitudes in each equation so
    that residuals can be judged relatively; they shrink with T as g0, g1, g2 do.
    """
    T = tf.T
    with context.workdps():
        a1, a2 = to_mpf(alpha1), to_mpf(alpha2)
        g0, g1, g2 = tf.g[0], tf.g[1], tf.g[2]
        term1 = g0 * (T + 1) * (1 / (a1 - T) + 1 / (a2 - T))
        a_hat = T / ((a2 - T) * (a2 - T + 1))
        b_hat = (T + 1) / ((a1 - T) * (a2 - T))
        c_hat = T / ((a1 - T) * (a1 - T + 1))
        term2 = g0 * (T + 1) * (a_hat + b_hat + c_hat)
        return LegacyResiduals(
            g0=g0, g1=g1, g2=g2,
            residual1=g1 + term1, residual2=g2 - term2,
            scale1=max(abs(g1), abs(term1)), scale2=max(abs(g2), abs(term2)),
            T=T,
        )
