"""Uniqueness calculus for two-state spin systems on regular trees.

For parameters (beta, gamma, mu) and degree d, the tree recursion

    f(x) = mu * ((beta*x + 1) / (x + gamma))**d

has a unique positive fixed point x_hat whenever beta*gamma < 1 (f is then
strictly decreasing).  The system is in the uniqueness phase on d-regular
trees iff

    |f'(x_hat)| = d * (1 - beta*gamma) * x_hat / ((beta*x_hat + 1) * (x_hat + gamma)) < 1.

This module computes fixed points (bisection only: unconditional convergence,
no derivative pathologies near beta = 0), the derivative criterion, threshold
degrees, the closed-form criticality roots and field windows, the degree plan
for the regime 0 < beta < 1 < gamma, the three-way case split used by the
gadget reduction, and a phase classifier for parameter grids.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .errors import RegimeError, UsageError
from .spins import SpinParams, remove_field

BISECT_ITERATIONS = 200
DEFAULT_CASE_SCALE = 12 * 10**8  # the published L; K = 4L
HARD_DEGREE_RATIO = 8000         # delta_star >= ratio * delta_prime
DEFAULT_REGION_CONSTANT = 1000.0  # configurable h in d >= h/(1 - beta*gamma)


def recursion_value(p: SpinParams, d: int, x: float) -> float:
    """f(x) = mu * ((beta*x + 1)/(x + gamma))**d, evaluated in log space.

    The ratio is fed through log1p as 1 + ((beta-1)x + (1-gamma))/(x+gamma),
    which keeps the rounding error of the d-fold exponent proportional to
    log(f/mu) instead of d itself.
    """
    if x < 0:
        raise UsageError("x must be nonnegative")
    log_ratio = math.log1p(((p.beta - 1.0) * x + (1.0 - p.gamma)) / (x + p.gamma))
    return math.exp(math.log(p.mu) + d * log_ratio)


def _fixed_point_array(beta, gamma, mu, d) -> np.ndarray:
    """Vectorized bisection for the fixed point; requires gamma > 0 elementwise.

    Bracket is [0, f(0)] with f(0) = mu/gamma**d (f is decreasing, so the
    fixed point lies below f(0)).  Sane brackets bisect linearly, with an
    exact hit g(mid) = 0 collapsing the bracket so knife-edge parameters
    return the fixed point exactly; brackets spanning many orders of
    magnitude bisect in log space instead, where 200 halvings always reach
    full double precision.
    """
    beta, gamma, mu, d = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (beta, gamma, mu, d)))
    if np.any(beta * gamma >= 1):
        raise RegimeError("fixed-point bisection requires beta*gamma < 1")
    if np.any(gamma <= 0):
        raise RegimeError("vectorized path requires gamma > 0")
    logmu = np.log(mu)

    def glog(x):
        with np.errstate(divide="ignore"):
            ratio = np.log1p(((beta - 1.0) * x + (1.0 - gamma)) / (x + gamma))
            return logmu + d * ratio - np.log(x)

    # f(0) = mu / gamma**d in plain arithmetic where it is finite (so that
    # clean brackets like [0, 16] bisect onto exact fixed points), falling
    # back to the log form when the power over/underflows
    with np.errstate(over="ignore", divide="ignore"):
        hi = mu / np.power(gamma, np.asarray(d, dtype=float))
    log_hi = logmu - d * np.log(gamma)
    hi = np.where(np.isfinite(hi), hi, np.exp(np.minimum(log_hi, 700.0)))
    hi = np.maximum(hi, 1e-300)
    # the cap only matters if the fixed point itself overflows a double;
    # allow float noise when the bracket top essentially equals the fixed
    # point (gamma > 1 with f(0) tiny), where glog(hi) can be +O(d*eps)
    if np.any(glog(hi) > 1e-6):
        raise RegimeError("fixed point overflows double precision")

    out = np.empty(hi.shape, dtype=float)
    wide = hi > 1e15
    if np.any(~wide):
        sel = ~wide
        lo_s = np.zeros(np.count_nonzero(sel))
        hi_s = hi[sel]
        bs, gs, ds = beta[sel], gamma[sel], d[sel]
        lm = np.log(mu[sel])
        for _ in range(BISECT_ITERATIONS):
            mid = 0.5 * (lo_s + hi_s)
            ratio = np.log1p(((bs - 1.0) * mid + (1.0 - gs)) / (mid + gs))
            g = lm + ds * ratio - np.log(mid)
            lo_s = np.where(g >= 0, mid, lo_s)
            hi_s = np.where(g <= 0, mid, hi_s)
        out[sel] = 0.5 * (lo_s + hi_s)
    if np.any(wide):
        sel = wide
        ylo = np.full(np.count_nonzero(sel), -737.0)  # below any normal double
        yhi = np.log(hi[sel])
        bs, gs, ds = beta[sel], gamma[sel], d[sel]
        lm = np.log(mu[sel])
        for _ in range(BISECT_ITERATIONS):
            ymid = 0.5 * (ylo + yhi)
            x = np.exp(ymid)
            ratio = np.log1p(((bs - 1.0) * x + (1.0 - gs)) / (x + gs))
            g = lm + ds * ratio - ymid
            ylo = np.where(g >= 0, ymid, ylo)
            yhi = np.where(g <= 0, ymid, yhi)
        out[sel] = np.exp(0.5 * (ylo + yhi))
    return out


def _magnitude_from_x(beta, gamma, d, x):
    """|f'| at the fixed point via the closed form, overflow-safe."""
    with np.errstate(divide="ignore"):
        logmag = (np.log(d) + np.log1p(-(np.asarray(beta, dtype=float) * gamma))
                  + np.log(x) - np.log1p(beta * x) - np.log(x + gamma))
    return np.exp(logmag)


def fixed_point(p: SpinParams, d: int) -> float:
    """The positive fixed point of the tree recursion (beta*gamma < 1 only)."""
    if d < 1:
        raise UsageError("degree must be >= 1")
    if p.beta * p.gamma >= 1:
        raise RegimeError(
            "fixed-point solver requires beta*gamma < 1 (f strictly decreasing)")
    if p.gamma > 0:
        return float(_fixed_point_array(p.beta, p.gamma, p.mu, d))
    # gamma == 0: f(0) is infinite, bracket by doubling instead
    logmu = math.log(p.mu)

    def glog(x):
        return logmu + d * math.log1p(((p.beta - 1.0) * x + 1.0) / x) - math.log(x)

    hi = 1.0
    while glog(hi) > 0:
        hi *= 2.0
        if hi > 1e300:
            raise RegimeError("fixed point overflows double precision")
    lo = hi / 2.0 if hi > 1.0 else 0.0
    for _ in range(BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        g = glog(mid)
        if g >= 0:
            lo = mid
        if g <= 0:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class UniquenessReport:
    x_hat: float
    derivative_magnitude: float
    unique: bool


def uniqueness_check(p: SpinParams, d: int) -> UniquenessReport:
    """Fixed point plus the derivative criterion |f'(x_hat)| < 1."""
    x = fixed_point(p, d)
    mag = float(_magnitude_from_x(p.beta, p.gamma, d, x))
    return UniquenessReport(x_hat=x, derivative_magnitude=mag, unique=mag < 1.0)


def magnitude_grid(beta, gamma, mu, d) -> Tuple[np.ndarray, np.ndarray]:
    """(x_hat, |f'|) over broadcast arrays of parameters; beta*gamma < 1 only."""
    beta, gamma, mu, d = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (beta, gamma, mu, d)))
    x = _fixed_point_array(beta, gamma, mu, d)
    return x, _magnitude_from_x(beta, gamma, d, x)


@dataclass(frozen=True)
class DegreeScan:
    """First non-uniqueness degree, or none with the cap-exhausted flag set."""

    degree: Optional[int]
    exhausted: bool


def first_nonunique_degree(p: SpinParams, d_max: int) -> DegreeScan:
    """Smallest d <= d_max failing the uniqueness criterion.

    Inside the unit square non-uniqueness is monotone in d, and a found
    threshold is spot-checked at d + 1.
    """
    if d_max < 1:
        raise UsageError("d_max must be >= 1")
    ds = np.arange(1, d_max + 1, dtype=float)
    if p.gamma > 0:
        _, mags = magnitude_grid(p.beta, p.gamma, p.mu, ds)
        mags = np.atleast_1d(mags)
    else:
        mags = np.array([uniqueness_check(p, d).derivative_magnitude
                         for d in range(1, d_max + 1)])
    hits = np.nonzero(mags >= 1.0)[0]
    if hits.size == 0:
        return DegreeScan(degree=None, exhausted=True)
    d = int(hits[0]) + 1
    if 0 < p.beta <= 1 and 0 < p.gamma <= 1:
        nxt = uniqueness_check(p, d + 1)
        if nxt.unique:
            raise RuntimeError(
                f"monotonicity spot check failed: non-unique at d={d} "
                f"but unique at d={d + 1}")
    return DegreeScan(degree=d, exhausted=False)


def always_unique_bound(beta: float, gamma: float) -> float:
    """Degree bound below which uniqueness holds for every external field.

    Returns (1 + sqrt(beta*gamma)) / (1 - sqrt(beta*gamma)); any integer
    degree strictly below it satisfies the uniqueness criterion for all mu.
    """
    if beta < 0 or gamma < 0:
        raise UsageError("need beta, gamma >= 0")
    if beta * gamma >= 1:
        raise UsageError("bound defined for beta*gamma < 1 only")
    r = math.sqrt(beta * gamma)
    return (1 + r) / (1 - r)


def criticality_roots(beta: float, gamma: float, d: int) -> Tuple[float, float]:
    """The two positive x with d*(1-beta*gamma)*x = (beta*x+1)*(x+gamma).

    These are the points where |f'| equals 1; they exist once d reaches the
    always-unique bound.  Computed in the cancellation-free form and
    re-verified against the defining equation to 1e-10 relative.
    """
    if beta <= 0:
        raise RegimeError("closed-form roots need beta > 0 (formula divides by beta)")
    if beta * gamma >= 1:
        raise RegimeError("closed-form roots need beta*gamma < 1")
    bg = beta * gamma
    b_coef = -1.0 - bg + d * (1.0 - bg)
    disc = b_coef * b_coef - 4.0 * bg
    if disc < 0:
        if disc > -1e-9 * max(1.0, b_coef * b_coef):
            disc = 0.0
        else:
            raise RegimeError(
                f"degree {d} is below the always-unique bound "
                f"{always_unique_bound(beta, gamma):.6g}: no real roots")
    if b_coef <= 0:
        raise RegimeError(f"degree {d} is below the always-unique bound: no positive roots")
    s = math.sqrt(disc)
    x2 = (b_coef + s) / (2.0 * beta)
    x1 = 2.0 * gamma / (b_coef + s)
    for x in (x1, x2):
        resid = abs(d * (1.0 - bg) * x / ((beta * x + 1.0) * (x + gamma)) - 1.0)
        if resid > 1e-10:
            raise RuntimeError(f"root {x} fails the defining equation, residual {resid}")
    return x1, x2


def field_window(beta: float, gamma: float, d: int) -> Tuple[float, float]:
    """Field interval (mu1, mu2) of non-uniqueness at degree d.

    Valid for gamma > beta > 0 with beta*gamma < 1 and
    sqrt(beta*gamma) <= (d-1)/(d+1): the system is unique iff mu < mu1 or
    mu > mu2, with mu_i = x_i * ((x_i + gamma)/(beta*x_i + 1))**d at the
    criticality roots x_i.
    """
    if not (gamma > beta > 0):
        raise RegimeError("field window needs gamma > beta > 0")
    if beta * gamma >= 1:
        raise RegimeError("field window needs beta*gamma < 1")
    if math.sqrt(beta * gamma) > (d - 1) / (d + 1):
        raise RegimeError(
            f"degree {d} is below the always-unique bound: window is empty")
    x1, x2 = criticality_roots(beta, gamma, d)
    mus = []
    for x in (x1, x2):
        log_mu = math.log(x) + d * (math.log(x + gamma) - math.log1p(beta * x))
        mus.append(math.exp(log_mu))
    mu1, mu2 = mus
    if mu1 > mu2:
        raise RuntimeError(f"window ends out of order: {mu1} > {mu2}")
    return mu1, mu2


# ---------------------------------------------------------------------------
# Degree plans and case split for the gadget reduction


@dataclass(frozen=True)
class OutsideSquareDegrees:
    """Degree plan for 0 < beta < 1 < gamma with beta*gamma < 1.

    delta_prime = ceil(-1/log(beta*gamma)) makes (beta*gamma)**delta_prime <= 1/e;
    delta_star = ceil(1/log(gamma)) makes gamma**delta_star >= e > gamma**(delta_star-1).
    in_hard_region marks delta_star >= 8000 * delta_prime.
    """

    delta_prime: int
    delta_star: int
    in_hard_region: bool


def outside_square_degrees(beta: float, gamma: float) -> OutsideSquareDegrees:
    if not (0 < beta < 1 < gamma):
        raise UsageError("need 0 < beta < 1 < gamma")
    if beta * gamma >= 1:
        raise UsageError("need beta*gamma < 1")
    log_bg = math.log(beta) + math.log(gamma)
    delta_prime = math.ceil(-1.0 / log_bg)
    delta_star = math.ceil(1.0 / math.log(gamma))
    if not (gamma ** delta_star >= math.e > gamma ** (delta_star - 1)):
        raise RuntimeError("degree plan violates gamma**delta_star >= e > gamma**(delta_star-1)")
    if not (beta * gamma) ** delta_prime <= 1.0 / math.e:
        raise RuntimeError("degree plan violates (beta*gamma)**delta_prime <= 1/e")
    return OutsideSquareDegrees(
        delta_prime=delta_prime,
        delta_star=delta_star,
        in_hard_region=delta_star >= HARD_DEGREE_RATIO * delta_prime,
    )


class SplitCase(str, Enum):
    BETA_BELOW_HALF = "beta-below-half"
    BETA_ABOVE_HALF = "beta-above-half"
    BETA_ABOVE_GAMMA_POWER = "beta-above-gamma-power"


@dataclass(frozen=True)
class CaseParams:
    """Degree split (delta, delta_prime) and constants for one parameter case.

    toy_mode flags a scale constant L below the published 12e8: the split is
    still exact, but no hardness guarantee is implied at toy scale.
    """

    case: SplitCase
    delta: int
    delta_prime: int
    scale: int        # L
    expander_floor: int  # K = 4L, the degree needed by the expansion property
    toy_mode: bool


def case_split(beta: float, gamma: float, delta_star: int,
               L: Optional[int] = None) -> CaseParams:
    """Three-way parameter split with the matching (delta, delta_prime) plan.

    Cases (for 0 < beta <= gamma <= 1, (beta, gamma) != (1, 1)):
      beta < 1/2 and beta <= gamma**L   -> floor/ceil split over L+1
      beta >= 1/2 and beta <= gamma**L  -> same split
      beta > gamma**L                   -> split over L*(L+1)+1
    Always delta + delta_prime = delta_star.
    """
    if not (0 < beta <= gamma <= 1):
        raise UsageError("case split needs 0 < beta <= gamma <= 1")
    if beta == 1 and gamma == 1:
        raise UsageError("(beta, gamma) = (1, 1) is excluded")
    if delta_star < 1:
        raise UsageError("delta_star must be >= 1")
    if L is None:
        scale = DEFAULT_CASE_SCALE
        toy = False
    else:
        if L < 1:
            raise UsageError("L must be >= 1")
        scale = int(L)
        toy = scale != DEFAULT_CASE_SCALE
    # beta <= gamma**L, in logs (gamma**L underflows for any gamma < 1)
    below_power = math.log(beta) <= scale * math.log(gamma)
    if below_power:
        case = SplitCase.BETA_BELOW_HALF if beta < 0.5 else SplitCase.BETA_ABOVE_HALF
        delta_prime = -((-delta_star) // (scale + 1))   # ceil
        delta = (scale * delta_star) // (scale + 1)     # floor
    else:
        case = SplitCase.BETA_ABOVE_GAMMA_POWER
        den = scale * (scale + 1) + 1
        delta_prime = delta_star // den                 # floor
        delta = delta_star - delta_prime                # = ceil(L(L+1) delta_star / den)
    if delta + delta_prime != delta_star:
        raise RuntimeError("split does not sum to delta_star")
    return CaseParams(case=case, delta=delta, delta_prime=delta_prime,
                      scale=scale, expander_floor=4 * scale, toy_mode=toy)


# ---------------------------------------------------------------------------
# Phase classification


class PhaseRegion(str, Enum):
    FERROMAGNETIC = "ferromagnetic"
    UNIQUENESS = "uniqueness"
    NONUNIQUE_UNIT_SQUARE = "non-uniqueness+unit-square-region"
    NONUNIQUE_OUTSIDE_SQUARE = "non-uniqueness+outside-square-region"
    NONUNIQUE_UNCLASSIFIED = "non-uniqueness-unclassified"


@dataclass(frozen=True)
class PhaseReport:
    region: PhaseRegion
    x_hat: Optional[float]
    derivative_magnitude: Optional[float]
    region_constant: float  # the h used for the unit-square region test


def classify_phase_detail(p: SpinParams, d: int,
                          h: float = DEFAULT_REGION_CONSTANT) -> PhaseReport:
    """Classify (beta, gamma, mu, d) into a phase/hardness region.

    Non-uniqueness labels are consistent with uniqueness_check.  Region tags
    are decided on the field-free translated parameters (beta*mu**(1/d),
    gamma*mu**(-1/d)); their product beta*gamma is translation-invariant.
    The constant h is configuration, not derivation: every report echoes it.
    """
    bg = p.beta * p.gamma
    if bg > 1:
        return PhaseReport(PhaseRegion.FERROMAGNETIC, None, None, h)
    if bg == 1:
        # constant recursion: trivially unique, outside the solver's regime
        return PhaseReport(PhaseRegion.UNIQUENESS, None, 0.0, h)
    rep = uniqueness_check(p, d)
    if rep.unique:
        return PhaseReport(PhaseRegion.UNIQUENESS, rep.x_hat,
                           rep.derivative_magnitude, h)
    eff, _ = remove_field(p, d)
    region = PhaseRegion.NONUNIQUE_UNCLASSIFIED
    if (0 <= eff.beta <= 1 and 0 <= eff.gamma <= 1
            and (eff.beta, eff.gamma) not in ((0.0, 0.0), (1.0, 1.0))
            and d >= h / (1.0 - bg)):
        region = PhaseRegion.NONUNIQUE_UNIT_SQUARE
    else:
        for lo, hi in ((eff.beta, eff.gamma), (eff.gamma, eff.beta)):
            if 0 < lo < 1 < hi:
                plan = outside_square_degrees(lo, hi)
                if plan.in_hard_region and d == plan.delta_star:
                    region = PhaseRegion.NONUNIQUE_OUTSIDE_SQUARE
                break
    return PhaseReport(region, rep.x_hat, rep.derivative_magnitude, h)


def classify_phase(p: SpinParams, d: int,
                   h: float = DEFAULT_REGION_CONSTANT) -> PhaseRegion:
    return classify_phase_detail(p, d, h).region


def phase_grid(betas, gammas, mu: float, d: int,
               h: float = DEFAULT_REGION_CONSTANT):
    """Classified rows over a (beta, gamma) grid, suitable for CSV dumps.

    Yields dicts with keys beta, gamma, mu, d, region, x_hat, deriv_mag
    (the last two are None in regions where the solver does not apply).
    """
    for beta in betas:
        for gamma in gammas:
            rep = classify_phase_detail(SpinParams(beta, gamma, mu), d, h)
            yield {
                "beta": beta, "gamma": gamma, "mu": mu, "d": d,
                "region": rep.region.value,
                "x_hat": rep.x_hat,
                "deriv_mag": rep.derivative_magnitude,
            }
