"""Numerical verification layer: rate bounds, gadget expectations, audits.

Contents:
  * the binary entropy function and the growth-rate machinery for profile
    sums over random matching gadgets (an exact asymptotic rate, plus a
    c-parameterized upper bound whose grid maximum stays below 1.21),
  * the exact expectation of profile sums over the matching-union gadget
    distribution, with a Monte Carlo cross-check,
  * an edge-expansion audit of sampled gadgets,
  * a stochastic-domination coupling simulation for the matching indicator
    process (independent lower bounds X, coupled without-replacement Z),
  * small closed-form evaluations used by reports.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import chi2 as chi2_dist

from .errors import ResourceLimitError, UsageError
from .graphs import BipartiteGadget, MultiGraph
from .logspace import LOG_ZERO, log_binomial, log_sum_exp, scaled_log
from .reduction import sample_gadget
from .spins import SpinParams, log_profile_sum
from .uniqueness import HARD_DEGREE_RATIO

DEFAULT_RATE_C = 8000.0
DEFAULT_BIGNESS = 1e-4            # "big subset" threshold as a side fraction
DEFAULT_MINORITY = 9e-5           # smallest profile fraction in the rate scan
DEFAULT_EXPANSION_FACTOR = 0.25   # required fraction of the expected crossing count
RATE_BOUND_CEILING = 1.21         # verified grid maximum of the rate bound


def entropy(x: float) -> float:
    """Binary entropy -x ln x - (1-x) ln(1-x), with H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise UsageError(f"entropy argument must lie in [0, 1], got {x}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log(x) - (1.0 - x) * math.log1p(-x)


def _w_entropy(w, num):
    """w * H(num / w) elementwise, with the 0 * H(0/0) = 0 convention.

    Ratios are clipped into [0, 1]; callers guarantee they only stray by
    floating-point noise.
    """
    w, num = np.broadcast_arrays(np.asarray(w, float), np.asarray(num, float))
    out = np.zeros(w.shape, dtype=float)
    pos = w > 0
    x = np.zeros_like(out)
    np.divide(num, w, out=x, where=pos)
    x = np.clip(x, 0.0, 1.0)
    inner = pos & (x > 0) & (x < 1)
    xi = x[inner]
    out[inner] = w[inner] * (-xi * np.log(xi) - (1 - xi) * np.log1p(-xi))
    return out


def _concave_max(fn, lo: float, hi: float, coarse: int = 1024,
                 tol: float = 1e-10) -> float:
    """Maximum of a concave fn over [lo, hi]: coarse grid + golden section."""
    if hi < lo:
        raise UsageError(f"empty maximization range [{lo}, {hi}]")
    if hi == lo:
        return float(fn(np.array([lo]))[0])
    ks = np.linspace(lo, hi, coarse)
    vals = fn(ks)
    i = int(np.argmax(vals))
    a, b = float(ks[max(0, i - 1)]), float(ks[min(coarse - 1, i + 1)])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = float(fn(np.array([c]))[0])
    fd = float(fn(np.array([d]))[0])
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = float(fn(np.array([c]))[0])
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = float(fn(np.array([d]))[0])
    return max(fc, fd, float(vals[i]))


def _check_fraction(x: float, name: str):
    if not 0.0 <= x <= 1.0:
        raise UsageError(f"{name} must lie in [0, 1], got {x}")


def rate_bound(a: float, b: float, c: float = DEFAULT_RATE_C) -> float:
    """Degree-free upper bound on the exponential rate of expected profile sums.

    max over k in [max(0, a+b-1), min(a, b)] of

        1/(c-1) + (1-a-b) c/(c-1) + H(a) + H(b)
        + (c-1) (-k + b H(k/b) + (1-b) H((a-k)/(1-b)) - H(a)).

    The inner maximization uses a 1024-point grid plus golden-section
    refinement to 1e-10 (the bracket function is concave in k).
    """
    _check_fraction(a, "a")
    _check_fraction(b, "b")
    if c <= 1:
        raise UsageError("c must exceed 1")
    klo = max(0.0, a + b - 1.0)
    khi = min(a, b)
    ha = entropy(a)
    outer = 1.0 / (c - 1.0) + (1.0 - a - b) * c / (c - 1.0) + ha + entropy(b)

    def bracket(ks):
        return -ks + _w_entropy(b, ks) + _w_entropy(1.0 - b, a - ks) - ha

    return outer + (c - 1.0) * _concave_max(bracket, klo, khi)


def exact_rate(a: float, b: float, delta: int, delta_prime: int,
               beta: float, gamma: float) -> float:
    """Exact exponential rate of the expected profile sum, per side vertex.

    max over k of

        delta_prime ln(gamma) + (1-a-b)(delta+delta_prime) ln(gamma)
        + H(a) + H(b)
        + delta (k ln(beta gamma) + b H(k/b) + (1-b) H((a-k)/(1-b)) - H(a)).
    """
    _check_fraction(a, "a")
    _check_fraction(b, "b")
    if beta <= 0 or gamma <= 0:
        raise UsageError("exact rate needs beta, gamma > 0")
    if delta < 0 or delta_prime < 0:
        raise UsageError("degrees must be nonnegative")
    klo = max(0.0, a + b - 1.0)
    khi = min(a, b)
    lg = math.log(gamma)
    lbg = math.log(beta) + lg
    ha = entropy(a)
    outer = (delta_prime * lg + (1.0 - a - b) * (delta + delta_prime) * lg
             + ha + entropy(b))

    def bracket(ks):
        return ks * lbg + _w_entropy(b, ks) + _w_entropy(1.0 - b, a - ks) - ha

    return outer + delta * _concave_max(bracket, klo, khi)


@dataclass(frozen=True)
class RateBoundScan:
    """Grid maximum of rate_bound over min(a, b) >= min_fraction."""

    max_value: float
    arg_a: float
    arg_b: float
    coarse_max: float
    grid_step: float
    min_fraction: float
    c: float
    refined: bool


def _fraction_grid(min_fraction: float, step: float) -> np.ndarray:
    grid = np.arange(min_fraction, 1.0 + 0.5 * step, step)
    grid = np.clip(grid, min_fraction, 1.0)
    if grid[-1] != 1.0:
        grid = np.append(grid, 1.0)
    return grid


def _coarse_rate_row(a: float, grid: np.ndarray, c: float, s: np.ndarray,
                     hb: np.ndarray, ha: float) -> np.ndarray:
    """Vectorized coarse rate_bound values for one a over all grid b."""
    cm1 = c - 1.0
    klo = np.maximum(0.0, a + grid - 1.0)
    khi = np.minimum(a, grid)
    k = klo[:, None] + (khi - klo)[:, None] * s[None, :]
    bracket = (-k + _w_entropy(grid[:, None], k)
               + _w_entropy(1.0 - grid[:, None], a - k) - ha)
    return (1.0 / cm1 + (1.0 - a - grid) * c / cm1 + ha + hb
            + cm1 * bracket.max(axis=1))


def rate_bound_grid(c: float = DEFAULT_RATE_C,
                    min_fraction: float = DEFAULT_MINORITY,
                    step: float = 1e-3, inner_points: int = 96):
    """Yield (a, b, coarse rate bound) rows over the scan grid, row-major."""
    grid = _fraction_grid(min_fraction, step)
    s = np.linspace(0.0, 1.0, inner_points)
    hb = _w_entropy(1.0, grid)
    for ia, a in enumerate(grid):
        vals = _coarse_rate_row(float(a), grid, c, s, hb, float(hb[ia]))
        for ib, b in enumerate(grid):
            yield float(a), float(b), float(vals[ib])


def rate_bound_scan(c: float = DEFAULT_RATE_C,
                    min_fraction: float = DEFAULT_MINORITY,
                    step: float = 1e-3, refine: bool = True,
                    inner_points: int = 96, top: int = 40) -> RateBoundScan:
    """Maximize rate_bound over the grid a, b in [min_fraction, 1].

    The coarse pass vectorizes the inner k-maximization on a fractional grid;
    the best `top` cells are then re-evaluated with the full solver on a
    local refinement of the (a, b) grid.
    """
    if step <= 0:
        raise UsageError("step must be positive")
    grid = _fraction_grid(min_fraction, step)
    s = np.linspace(0.0, 1.0, inner_points)
    hb = _w_entropy(1.0, grid)  # H on the grid
    best = []
    coarse_best = -np.inf
    coarse_arg = (float(grid[0]), float(grid[0]))
    for ia, a in enumerate(grid):
        vals = _coarse_rate_row(float(a), grid, c, s, hb, float(hb[ia]))
        ib = int(np.argmax(vals))
        vmax = float(vals[ib])
        best.append((vmax, float(a), float(grid[ib])))
        if vmax > coarse_best:
            coarse_best = vmax
            coarse_arg = (float(a), float(grid[ib]))
    if not refine:
        return RateBoundScan(coarse_best, coarse_arg[0], coarse_arg[1],
                             coarse_best, step, min_fraction, c, False)
    best.sort(reverse=True)
    seen = set()
    max_value = coarse_best
    arg = coarse_arg
    for _, a0, b0 in best[:top]:
        for da in np.linspace(-step, step, 11):
            a = min(1.0, max(min_fraction, a0 + float(da)))
            for db in np.linspace(-step, step, 11):
                b = min(1.0, max(min_fraction, b0 + float(db)))
                key = (round(a, 12), round(b, 12))
                if key in seen:
                    continue
                seen.add(key)
                v = rate_bound(a, b, c)
                if v > max_value:
                    max_value = v
                    arg = (a, b)
    return RateBoundScan(max_value, arg[0], arg[1], coarse_best, step,
                         min_fraction, c, True)


# ---------------------------------------------------------------------------
# Expected profile sums over the matching-union gadget distribution


def expected_profile_sum_log(n_side: int, delta: int, delta_prime: int,
                             p: SpinParams, a: float, b: float) -> float:
    """log of the expected profile sum over gadgets from H(N, delta).

    Every (a, b)-assignment has the same expectation by symmetry, so

        E = gamma**(delta_prime (2-a-b) N) * C(N, aN) * C(N, bN)
            * ( sum_k beta**kN gamma**((1-a-b+k)N)
                      C(bN, kN) C((1-b)N, (a-k)N) / C(N, aN) )**delta

    with kN ranging over integers in [max(0, (a+b-1)N), min(a, b) N].
    Binomials go through lgamma, so N may be large.
    """
    if p.mu != 1.0:
        raise UsageError("profile sums are defined for mu == 1")
    if n_side < 1 or delta < 1 or delta_prime < 0:
        raise UsageError("need N >= 1, delta >= 1, delta_prime >= 0")
    an = _integral(a, n_side, "a")
    bn = _integral(b, n_side, "b")
    terms = []
    for kn in range(max(0, an + bn - n_side), min(an, bn) + 1):
        terms.append(scaled_log(p.beta, kn)
                     + scaled_log(p.gamma, n_side - an - bn + kn)
                     + log_binomial(bn, kn)
                     + log_binomial(n_side - bn, an - kn)
                     - log_binomial(n_side, an))
    inner = log_sum_exp(terms)
    if inner == LOG_ZERO:
        return LOG_ZERO
    return (scaled_log(p.gamma, delta_prime * (2 * n_side - an - bn))
            + log_binomial(n_side, an) + log_binomial(n_side, bn)
            + delta * inner)


def _integral(x: float, n: int, name: str) -> int:
    if not 0 <= x <= 1:
        raise UsageError(f"{name} must lie in [0, 1], got {x}")
    count = x * n
    rounded = round(count)
    if abs(count - rounded) > 1e-9:
        raise UsageError(f"{name} * N = {count} is not an integer")
    return int(rounded)


def gadget_from_matchings(n_side: int, perms: Sequence[Sequence[int]]) -> BipartiteGadget:
    """Gadget assembled from explicit matchings (left u -> right perm[u])."""
    edges = []
    for perm in perms:
        if sorted(perm) != list(range(n_side)):
            raise UsageError("each matching must be a permutation of 0..N-1")
        edges.extend((u, n_side + int(perm[u])) for u in range(n_side))
    return BipartiteGadget(MultiGraph.from_edges(2 * n_side, edges),
                           tuple(range(n_side)), tuple(range(n_side, 2 * n_side)))


def enumerate_profile_sum_mean_log(n_side: int, delta: int, delta_prime: int,
                                   p: SpinParams, a: float, b: float, *,
                                   max_tuples: int = 200_000) -> float:
    """log of the exact gadget-average of the profile sum, by enumerating
    all (N!)**delta matching tuples."""
    count = math.factorial(n_side) ** delta
    if count > max_tuples:
        raise ResourceLimitError(f"{count} matching tuples exceed cap {max_tuples}")
    perms = list(itertools.permutations(range(n_side)))
    logs = [
        log_profile_sum(gadget_from_matchings(n_side, combo), p, delta_prime,
                        a, b, force=True)
        for combo in itertools.product(perms, repeat=delta)
    ]
    return log_sum_exp(logs) - math.log(count)


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int

    def within(self, target: float, sigmas: float = 4.0) -> bool:
        return abs(self.mean - target) <= sigmas * max(self.std_error, 0.0)


def expected_profile_sum_mc(n_side: int, delta: int, delta_prime: int,
                            p: SpinParams, a: float, b: float,
                            trials: int, seed: int, *,
                            max_side: int = 8) -> MCEstimate:
    """Monte Carlo mean (linear domain) of the profile sum over H(N, delta).

    Deterministic for a given seed.  When (N!)**delta is small the distinct
    matching tuples are precomputed and sampled by index, which is the same
    distribution at a fraction of the cost.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    if n_side > max_side:
        raise ResourceLimitError(f"side size {n_side} exceeds cap {max_side}")
    rng = np.random.default_rng(seed)
    count = math.factorial(n_side) ** delta
    if count <= 100_000:
        perms = list(itertools.permutations(range(n_side)))
        values = np.array([
            math.exp(log_profile_sum(gadget_from_matchings(n_side, combo), p,
                                     delta_prime, a, b, force=True))
            for combo in itertools.product(perms, repeat=delta)])
        sample = values[rng.integers(count, size=trials)]
    else:
        sample = np.empty(trials)
        for t in range(trials):
            combo = [rng.permutation(n_side) for _ in range(delta)]
            sample[t] = math.exp(log_profile_sum(
                gadget_from_matchings(n_side, combo), p, delta_prime, a, b,
                force=True))
    if np.all(sample == sample[0]):  # degenerate draw: exactly zero variance
        return MCEstimate(mean=float(sample[0]), std_error=0.0, trials=trials,
                          seed=seed)
    mean = float(sample.mean())
    se = float(sample.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MCEstimate(mean=mean, std_error=se, trials=trials, seed=seed)


# ---------------------------------------------------------------------------
# Edge-expansion audit


@dataclass(frozen=True)
class ExpanderAudit:
    """Worst and mean crossing-edge ratio E(A,B) * N / (delta |A| |B|).

    The audit passes when every big pair (side fraction >= eps) retains at
    least `factor` of its expected crossing count delta |A| |B| / N.
    """

    eps: float
    factor: float
    worst_ratio: float
    mean_ratio: float
    pairs_checked: int
    witness_left: Tuple[int, ...]
    witness_right: Tuple[int, ...]
    mode: str

    @property
    def passed(self) -> bool:
        return self.worst_ratio >= self.factor


def expander_audit(h: BipartiteGadget, *, eps: float = DEFAULT_BIGNESS,
                   factor: float = DEFAULT_EXPANSION_FACTOR,
                   mode: str = "exhaustive", trials: int = 2000,
                   seed: int = 0, max_exhaustive_side: int = 14) -> ExpanderAudit:
    """Audit the crossing-edge counts of a regular bipartite gadget.

    Exhaustive mode scans every pair of big subsets (all 2^N per side, sizes
    >= ceil(eps N)); sampled mode draws `trials` uniform big pairs.
    """
    n = h.side_size
    ld, rd = set(h.left_degrees()), set(h.right_degrees())
    if len(ld) != 1 or ld != rd:
        raise UsageError("expansion audit expects a regular bipartite gadget")
    delta = ld.pop()
    if delta == 0:
        raise UsageError("gadget has no edges")
    if not 0 < eps <= 1:
        raise UsageError("eps must lie in (0, 1]")
    s0 = max(1, math.ceil(eps * n - 1e-9))
    left_pos = {v: i for i, v in enumerate(h.left)}
    right_pos = {v: i for i, v in enumerate(h.right)}
    mat = np.zeros((n, n))
    for u, v, m in h.graph.edges:
        if u in left_pos:
            mat[left_pos[u], right_pos[v]] += m
        else:
            mat[left_pos[v], right_pos[u]] += m

    if mode == "exhaustive":
        if n > max_exhaustive_side:
            raise ResourceLimitError(
                f"exhaustive audit capped at side {max_exhaustive_side}, got {n}")
        codes = np.arange(1 << n, dtype=np.uint32)
        bits = ((codes[:, None] >> np.arange(n, dtype=np.uint32)) & 1).astype(float)
        sizes = bits.sum(axis=1)
        big = sizes >= s0
        bits_a = bits[big]
        bits_b = bits_a  # same size threshold on both sides
        sz = sizes[big]
        crossings = bits_a @ mat @ bits_b.T
        ratios = crossings * n / (delta * sz[:, None] * sz[None, :])
        idx = np.unravel_index(int(np.argmin(ratios)), ratios.shape)
        worst = float(ratios[idx])
        mean = float(ratios.mean())
        masks = codes[big]
        wa = int(masks[idx[0]])
        wb = int(masks[idx[1]])
        witness_left = tuple(h.left[i] for i in range(n) if (wa >> i) & 1)
        witness_right = tuple(h.right[i] for i in range(n) if (wb >> i) & 1)
        pairs = ratios.size
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        worst = math.inf
        total = 0.0
        witness_left = witness_right = ()
        for _ in range(trials):
            sa = int(rng.integers(s0, n + 1))
            sb = int(rng.integers(s0, n + 1))
            ia = rng.choice(n, size=sa, replace=False)
            ib = rng.choice(n, size=sb, replace=False)
            e = float(mat[np.ix_(ia, ib)].sum())
            ratio = e * n / (delta * sa * sb)
            total += ratio
            if ratio < worst:
                worst = ratio
                witness_left = tuple(sorted(h.left[i] for i in ia))
                witness_right = tuple(sorted(h.right[i] for i in ib))
        mean = total / trials
        pairs = trials
    else:
        raise UsageError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    return ExpanderAudit(eps=eps, factor=factor, worst_ratio=worst,
                         mean_ratio=mean, pairs_checked=pairs,
                         witness_left=witness_left, witness_right=witness_right,
                         mode=mode)


# ---------------------------------------------------------------------------
# Coupling simulation for the matching indicator process


@dataclass(frozen=True)
class CouplingReport:
    n: int
    b: float
    a: float
    d: int
    trials: int
    seed: int
    sequences: int
    domination_violations: int
    z1_frequency: float
    z1_expected: float
    z1_stderr: float
    chi2_stat: float
    chi2_dof: int
    chi2_pvalue: float
    chi2_alpha: float

    @property
    def z1_within_4_sigma(self) -> bool:
        return abs(self.z1_frequency - self.z1_expected) <= 4.0 * self.z1_stderr

    @property
    def passed(self) -> bool:
        return (self.domination_violations == 0 and self.z1_within_4_sigma
                and self.chi2_pvalue > self.chi2_alpha)


def _sequence_law(n: int, bn: int, length: int) -> np.ndarray:
    """Exact joint law of the first `length` without-replacement indicators.

    Entry `pattern` is the probability that the indicator sequence equals the
    bits of `pattern` (step i in bit i) when bn marked items are hit among n
    sequential draws without replacement.
    """
    probs = np.zeros(1 << length)

    def rec(i, pattern, zsum, prob):
        if i == length:
            probs[pattern] += prob
            return
        t = (bn - zsum) / (n - i)
        if t > 0:
            rec(i + 1, pattern | (1 << i), zsum + 1, prob * t)
        if t < 1:
            rec(i + 1, pattern, zsum, prob * (1 - t))

    rec(0, 0, 0, 1.0)
    return probs


def coupling_sim(n: int, b: float, d: int, seed: int, trials: int,
                 a: float = 1.0, chi2_alpha: float = 1e-3) -> CouplingReport:
    """Simulate the domination coupling behind the crossing-count tail bound.

    Per sequence, X_i are independent with P[X_i = 1] = (bn - i + 1)/n
    (clamped at 0), and Z_i is coupled so that Z_i >= X_i pointwise while
    (Z_1, ..., Z_len) follows the exact without-replacement law of matching
    indicators: P[Z_i = 1 | history] = (bn - sum z)/(n - i + 1).  Each trial
    runs d independent sequences of length a*n.  The report counts
    domination violations (structurally zero), compares the first-step
    frequency against b, and chi-squares the empirical joint law against the
    exact one.
    """
    if n < 1:
        raise UsageError("n must be >= 1")
    if not 0 < b <= 1:
        raise UsageError("b must lie in (0, 1]")
    if d < 1 or trials < 1:
        raise UsageError("d and trials must be >= 1")
    bn = _integral(b, n, "b")
    if bn < 1:
        raise UsageError("b*n must be >= 1")
    length = _integral(a, n, "a")
    if length < 1:
        raise UsageError("a*n must be >= 1")
    if length > 20:
        raise ResourceLimitError("sequence length a*n capped at 20 (pattern table)")
    rng = np.random.default_rng(seed)
    total = trials * d
    zsum = np.zeros(total, dtype=np.int64)
    patterns = np.zeros(total, dtype=np.int64)
    violations = 0
    for i in range(length):
        rho = max(0.0, (bn - i) / n)
        x = rng.random(total) < rho
        target = (bn - zsum) / (n - i)
        if np.any(target < -1e-12) or np.any(target > 1 + 1e-12):
            raise RuntimeError("construction invariant violated: target outside [0, 1]")
        if rho >= 1.0:
            w = np.zeros(total)
        else:
            w = (target - rho) / (1.0 - rho)
        if np.any(w < -1e-12) or np.any(w > 1 + 1e-12):
            raise RuntimeError("construction invariant violated: w outside [0, 1]")
        z = np.where(x, True, rng.random(total) < np.clip(w, 0.0, 1.0))
        violations += int(np.count_nonzero(x & ~z))
        zsum += z
        patterns |= z.astype(np.int64) << i

    z1_freq = float(np.mean(patterns & 1))
    z1_expected = bn / n
    z1_stderr = math.sqrt(z1_expected * (1 - z1_expected) / total)
    law = _sequence_law(n, bn, length)
    observed = np.bincount(patterns, minlength=1 << length).astype(float)
    expected = law * total
    support = expected > 0
    if np.any(observed[~support] > 0):
        raise RuntimeError("observed a pattern the exact law forbids")
    stat = float(np.sum((observed[support] - expected[support]) ** 2
                        / expected[support]))
    dof = int(np.count_nonzero(support)) - 1
    pvalue = float(chi2_dist.sf(stat, dof)) if dof > 0 else 1.0
    return CouplingReport(
        n=n, b=b, a=a, d=d, trials=trials, seed=seed, sequences=total,
        domination_violations=violations, z1_frequency=z1_freq,
        z1_expected=z1_expected, z1_stderr=z1_stderr, chi2_stat=stat,
        chi2_dof=dof, chi2_pvalue=pvalue, chi2_alpha=chi2_alpha)


# ---------------------------------------------------------------------------
# Closed-form report values


def polarized_branch_rate_bound(degree_ratio: int = HARD_DEGREE_RATIO) -> float:
    """Growth-rate floor of the dominant polarized branch of a gadget sum.

    With a fraction e/(1+e) of boundary vertices seeing all-ones partners,
    per-vertex factors of at least 1 + e (occupied) and e**((r-1)/r)
    (remaining) give the floor

        e/(1+e) * ln(1+e) + 1/(1+e) * (r-1)/r       (~ 1.22899 at r = 8000),

    which dominates the 1.22 ceiling of the conditioned tail.  Reported by
    demos; not an acceptance target.
    """
    q = math.e / (1.0 + math.e)
    return q * math.log1p(math.e) + (1.0 - q) * (degree_ratio - 1.0) / degree_ratio


def sampled_gadget_audit(n_side: int, delta: int, seeds: Sequence[int], *,
                         eps: float = DEFAULT_BIGNESS,
                         factor: float = DEFAULT_EXPANSION_FACTOR,
                         mode: str = "exhaustive", trials: int = 2000):
    """Expander audits over freshly sampled gadgets, one per seed."""
    return [
        expander_audit(sample_gadget(n_side, delta, seed), eps=eps,
                       factor=factor, mode=mode, trials=trials, seed=seed)
        for seed in seeds
    ]
