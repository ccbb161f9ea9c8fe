"""Two-state spin systems: interaction weights and exact partition sums.

A system assigns each vertex a state in {0, 1}.  An edge contributes weight
beta when both ends are 0, gamma when both are 1, and 1 when mixed; an
external field mu multiplies the weight once per 0-vertex.  The weight of a
configuration sigma is

    mu**#zeros(sigma) * prod_edges entry(sigma_u, sigma_v)**mult

and the partition function is the sum of these weights over all 2**n
configurations (optionally restricted by side constraints on zero-counts).
Everything is computed in the log domain (see logspace): exponents like
beta**(delta * m**2) make linear floats useless here.

Enumeration order is the ascending integer encoding of the configuration,
with vertex 0 as the least significant bit.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import ResourceLimitError, UsageError
from .graphs import BipartiteGadget, MultiGraph
from .logspace import LOG_ZERO, log_sum_exp, log_sum_exp_pairwise, scaled_log

DEFAULT_MAX_VERTICES = 28
_CHUNK_BITS = 16


@dataclass(frozen=True)
class SpinParams:
    """Interaction weights (beta, gamma) and external field mu on spin 0."""

    beta: float
    gamma: float
    mu: float = 1.0

    def __post_init__(self):
        if not (self.beta >= 0 and math.isfinite(self.beta)):
            raise UsageError(f"beta must be a finite nonnegative real, got {self.beta}")
        if not (self.gamma >= 0 and math.isfinite(self.gamma)):
            raise UsageError(f"gamma must be a finite nonnegative real, got {self.gamma}")
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise UsageError(f"mu must be a finite positive real, got {self.mu}")

    @property
    def is_ferromagnetic(self) -> bool:
        return self.beta * self.gamma > 1

    @property
    def is_antiferromagnetic(self) -> bool:
        return self.beta * self.gamma < 1

    def log_entries(self) -> Tuple[float, float]:
        """(log beta, log gamma), with -inf for zero entries."""
        return scaled_log(self.beta, 1), scaled_log(self.gamma, 1)


# ---------------------------------------------------------------------------
# Side constraints on zero-counts of vertex sets


@dataclass(frozen=True)
class CountRange:
    """lo <= #zeros(vertices) <= hi."""

    vertices: Tuple[int, ...]
    lo: int
    hi: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not (0 <= self.lo <= self.hi <= len(self.vertices)):
            raise UsageError(
                f"CountRange needs 0 <= lo <= hi <= |set|, got lo={self.lo} "
                f"hi={self.hi} |set|={len(self.vertices)}")


@dataclass(frozen=True)
class CountLeq:
    """#zeros(fewer) <= #zeros(more)."""

    fewer: Tuple[int, ...]
    more: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "fewer", tuple(self.fewer))
        object.__setattr__(self, "more", tuple(self.more))


@dataclass(frozen=True)
class MinCountAtMost:
    """min(#zeros(side_a), #zeros(side_b)) <= hi."""

    side_a: Tuple[int, ...]
    side_b: Tuple[int, ...]
    hi: int

    def __post_init__(self):
        object.__setattr__(self, "side_a", tuple(self.side_a))
        object.__setattr__(self, "side_b", tuple(self.side_b))
        if self.hi < 0:
            raise UsageError("MinCountAtMost needs hi >= 0")


SideConstraint = (CountRange, CountLeq, MinCountAtMost)


def _constraint_sets(constraint):
    if isinstance(constraint, CountRange):
        return (constraint.vertices,)
    if isinstance(constraint, CountLeq):
        return (constraint.fewer, constraint.more)
    if isinstance(constraint, MinCountAtMost):
        return (constraint.side_a, constraint.side_b)
    raise UsageError(f"unknown constraint type {type(constraint).__name__}")


def _validate_constraints(constraints, num_vertices):
    for c in constraints:
        for vset in _constraint_sets(c):
            for v in vset:
                if not 0 <= v < num_vertices:
                    raise UsageError(f"constraint references vertex {v} out of range")
            if len(set(vset)) != len(vset):
                raise UsageError("constraint vertex set has duplicates")


# ---------------------------------------------------------------------------
# Configuration weight


def log_config_weight(g: MultiGraph, p: SpinParams, bits: Sequence[int]) -> float:
    """log weight of one configuration; -inf iff some factor is zero."""
    if len(bits) != g.num_vertices:
        raise UsageError(
            f"configuration length {len(bits)} != num_vertices {g.num_vertices}")
    for b in bits:
        if b not in (0, 1):
            raise UsageError(f"configuration entries must be 0 or 1, got {b!r}")
    lb, lg = p.log_entries()
    total = math.log(p.mu) * sum(1 for b in bits if b == 0)
    for u, v, m in g.edges:
        s, t = bits[u], bits[v]
        if s == 0 and t == 0:
            if lb == LOG_ZERO:
                return LOG_ZERO
            total += m * lb
        elif s == 1 and t == 1:
            if lg == LOG_ZERO:
                return LOG_ZERO
            total += m * lg
    return total


# ---------------------------------------------------------------------------
# Exact partition sums (log domain, vectorized enumeration)


class _Problem:
    """Reduced enumeration problem after substituting fixed spins."""

    def __init__(self, g: MultiGraph, p: SpinParams, fixed: Dict[int, int]):
        lb, lg = p.log_entries()
        lmu = math.log(p.mu)
        free = [v for v in range(g.num_vertices) if v not in fixed]
        pos = {v: j for j, v in enumerate(free)}
        self.free = free
        self.nf = len(free)
        # per-free-vertex log factors for spin 0 / spin 1
        w0 = np.full(self.nf, lmu, dtype=float)
        w1 = np.zeros(self.nf, dtype=float)
        const = lmu * sum(1 for v in fixed if fixed[v] == 0)
        ff = []
        for u, v, m in g.edges:
            su, sv = fixed.get(u), fixed.get(v)
            if su is not None and sv is not None:
                if su == 0 and sv == 0:
                    const += m * lb
                elif su == 1 and sv == 1:
                    const += m * lg
            elif su is None and sv is None:
                ff.append((pos[u], pos[v], m * lb, m * lg))
            else:
                w, s = (pos[u], sv) if su is None else (pos[v], su)
                if s == 0:
                    w0[w] += m * lb
                else:
                    w1[w] += m * lg
        self.w0, self.w1, self.const, self.ff = w0, w1, const, ff
        self.pos = pos
        self.fixed = fixed

    def compile_constraints(self, constraints):
        compiled = []
        for c in constraints:
            per_set = []
            for vset in _constraint_sets(c):
                mask = 0
                base = 0
                for v in vset:
                    if v in self.fixed:
                        base += 1 if self.fixed[v] == 0 else 0
                    else:
                        mask |= 1 << self.pos[v]
                        base += 1
                per_set.append((np.uint64(mask), base))
            compiled.append((c, per_set))
        self._compiled = compiled

    def _zero_counts(self, configs, mask_base):
        mask, base = mask_base
        return base - np.bitwise_count(configs & mask).astype(np.int64)

    def chunk_log_weights(self, start: int, count: int) -> np.ndarray:
        configs = np.arange(start, start + count, dtype=np.uint64)
        logw = np.full(count, self.const, dtype=float)
        for j in range(self.nf):
            bit = ((configs >> np.uint64(j)) & np.uint64(1)).astype(bool)
            logw = logw + np.where(bit, self.w1[j], self.w0[j])
        for ju, jv, ml00, ml11 in self.ff:
            bu = ((configs >> np.uint64(ju)) & np.uint64(1)).astype(bool)
            bv = ((configs >> np.uint64(jv)) & np.uint64(1)).astype(bool)
            logw = logw + np.where(~bu & ~bv, ml00, 0.0)
            logw = logw + np.where(bu & bv, ml11, 0.0)
        keep = None
        for c, per_set in self._compiled:
            if isinstance(c, CountRange):
                z = self._zero_counts(configs, per_set[0])
                ok = (z >= c.lo) & (z <= c.hi)
            elif isinstance(c, CountLeq):
                zf = self._zero_counts(configs, per_set[0])
                zm = self._zero_counts(configs, per_set[1])
                ok = zf <= zm
            else:  # MinCountAtMost
                za = self._zero_counts(configs, per_set[0])
                zb = self._zero_counts(configs, per_set[1])
                ok = np.minimum(za, zb) <= c.hi
            keep = ok if keep is None else (keep & ok)
        if keep is not None:
            logw = np.where(keep, logw, LOG_ZERO)
        return logw


def log_partition(g: MultiGraph, p: SpinParams, constraints=(), *,
                  fixed: Optional[Dict[int, int]] = None,
                  max_vertices: int = DEFAULT_MAX_VERTICES,
                  force: bool = False, threads: int = 1) -> float:
    """log of the exact partition sum over all configurations.

    constraints restrict the sum to configurations whose zero-counts satisfy
    every given side constraint; an infeasible set yields -inf (an empty sum),
    not an error.  `fixed` pins chosen vertices to given spins; only the
    remaining vertices are enumerated, and the cap applies to their number.
    With threads > 1 the configuration range is split across workers; partial
    sums are merged by a fixed pairwise tree, so the result does not depend
    on the thread count.
    """
    fixed = dict(fixed or {})
    for v, s in fixed.items():
        if not 0 <= v < g.num_vertices:
            raise UsageError(f"fixed vertex {v} out of range")
        if s not in (0, 1):
            raise UsageError(f"fixed spin must be 0 or 1, got {s!r}")
    constraints = tuple(constraints)
    _validate_constraints(constraints, g.num_vertices)
    prob = _Problem(g, p, fixed)
    if prob.nf > max_vertices and not force:
        raise ResourceLimitError(
            f"{prob.nf} free vertices exceeds cap {max_vertices}; pass force=True")
    prob.compile_constraints(constraints)
    total = 1 << prob.nf
    chunk = 1 << min(prob.nf, _CHUNK_BITS)
    starts = list(range(0, total, chunk))

    def one(start):
        return log_sum_exp(prob.chunk_log_weights(start, min(chunk, total - start)))

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(one, starts))
    else:
        parts = [one(s) for s in starts]
    return log_sum_exp_pairwise(parts)


def partition_fraction(g: MultiGraph, beta, gamma, mu=1, constraints=(), *,
                       fixed: Optional[Dict[int, int]] = None,
                       max_vertices: int = 20, force: bool = False) -> Fraction:
    """Exact rational partition sum (linear domain) for rational parameters.

    Arbitrary-precision oracle for the log-domain path; no tolerances.
    """
    beta, gamma, mu = Fraction(beta), Fraction(gamma), Fraction(mu)
    if beta < 0 or gamma < 0 or mu <= 0:
        raise UsageError("need beta, gamma >= 0 and mu > 0")
    fixed = dict(fixed or {})
    constraints = tuple(constraints)
    _validate_constraints(constraints, g.num_vertices)
    free = [v for v in range(g.num_vertices) if v not in fixed]
    nf = len(free)
    if nf > max_vertices and not force:
        raise ResourceLimitError(f"{nf} free vertices exceeds cap {max_vertices}")
    sets = []
    for c in constraints:
        per_set = []
        for vset in _constraint_sets(c):
            mask = 0
            base = 0
            for v in vset:
                if v in fixed:
                    base += 1 if fixed[v] == 0 else 0
                else:
                    mask |= 1 << free.index(v)
                    base += 1
            per_set.append((mask, base))
        sets.append((c, per_set))
    total = Fraction(0)
    for config in range(1 << nf):
        bits = dict(fixed)
        for j, v in enumerate(free):
            bits[v] = (config >> j) & 1
        ok = True
        for c, per_set in sets:
            zs = [base - (config & mask).bit_count() for mask, base in per_set]
            if isinstance(c, CountRange):
                ok = c.lo <= zs[0] <= c.hi
            elif isinstance(c, CountLeq):
                ok = zs[0] <= zs[1]
            else:
                ok = min(zs) <= c.hi
            if not ok:
                break
        if not ok:
            continue
        w = mu ** sum(1 for v in range(g.num_vertices) if bits[v] == 0)
        for u, v, m in g.edges:
            s, t = bits[u], bits[v]
            if s == 0 and t == 0:
                w *= beta ** m
            elif s == 1 and t == 1:
                w *= gamma ** m
            if w == 0:
                break
        total += w
    return total


# ---------------------------------------------------------------------------
# Profile-restricted sums over bipartite gadgets


def log_profile_sum(h: BipartiteGadget, p: SpinParams, delta_prime: int,
                    a: float, b: float, *, max_side: int = 12,
                    force: bool = False) -> float:
    """log of the gadget sum over assignments with fixed zero fractions.

    Sums the edge weight of every assignment that puts exactly a*N zeros on
    the left side and b*N zeros on the right (enumerating all
    C(N, aN) * C(N, bN) such assignments), times a boundary factor
    gamma**(delta_prime * (2 - a - b) * N) accounting for delta_prime outside
    edges per vertex whose partners are all in state 1.

    The external field plays no role at this level: pass mu == 1 (translate
    a field away first if needed).
    """
    if p.mu != 1.0:
        raise UsageError("profile sums are defined for mu == 1; translate the field first")
    if delta_prime < 0:
        raise UsageError("delta_prime must be nonnegative")
    n_side = h.side_size
    if n_side > max_side and not force:
        raise ResourceLimitError(f"side size {n_side} exceeds cap {max_side}")
    an = _integral_fraction(a, n_side, "a")
    bn = _integral_fraction(b, n_side, "b")
    lb, lg = p.log_entries()
    left_pos = {v: i for i, v in enumerate(h.left)}
    right_pos = {v: i for i, v in enumerate(h.right)}
    records = []
    for u, v, m in h.graph.edges:
        if u in left_pos:
            records.append((left_pos[u], right_pos[v], m))
        else:
            records.append((left_pos[v], right_pos[u], m))
    a_masks = _subset_masks(n_side, an)
    b_masks = _subset_masks(n_side, bn)
    logw = np.zeros((len(a_masks), len(b_masks)), dtype=float)
    for iu, iv, m in records:
        za = ((a_masks >> np.uint64(iu)) & np.uint64(1)).astype(bool)
        zb = ((b_masks >> np.uint64(iv)) & np.uint64(1)).astype(bool)
        logw = logw + np.where(za[:, None] & zb[None, :], m * lb, 0.0)
        logw = logw + np.where(~za[:, None] & ~zb[None, :], m * lg, 0.0)
    boundary = scaled_log(p.gamma, delta_prime * (2 * n_side - an - bn))
    return log_sum_exp(logw.ravel()) + boundary


def _integral_fraction(x: float, n: int, name: str) -> int:
    if not 0 <= x <= 1:
        raise UsageError(f"{name} must lie in [0, 1], got {x}")
    count = x * n
    rounded = round(count)
    if abs(count - rounded) > 1e-9:
        raise UsageError(f"{name} * N = {count} is not an integer")
    return int(rounded)


def _subset_masks(n: int, k: int) -> np.ndarray:
    masks = [sum(1 << i for i in combo)
             for combo in itertools.combinations(range(n), k)]
    return np.array(masks, dtype=np.uint64)


# ---------------------------------------------------------------------------
# External-field translation (regular graphs)


def remove_field(p: SpinParams, d: int) -> Tuple[SpinParams, float]:
    """Fold the field into the interaction weights on d-regular graphs.

    Returns the field-free parameters (beta * mu**(1/d), gamma * mu**(-1/d), 1)
    and the per-edge log prefactor log(mu)/d; the caller multiplies by |E|.
    """
    if d < 1:
        raise UsageError("degree must be >= 1")
    shift = p.mu ** (1.0 / d)
    return SpinParams(p.beta * shift, p.gamma / shift, 1.0), math.log(p.mu) / d


@dataclass(frozen=True)
class FieldIdentityReport:
    log_lhs: float
    log_rhs: float
    gap: float  # |lhs - rhs| / max(1, |lhs|), log domain

    @property
    def passed(self) -> bool:
        return self.gap <= 1e-9


def field_identity_report(g: MultiGraph, p: SpinParams, *,
                          max_vertices: int = DEFAULT_MAX_VERTICES,
                          force: bool = False) -> FieldIdentityReport:
    """Compare the fielded partition sum against its field-free translation.

    On a d-regular graph the two sides agree exactly; the report carries the
    observed log-domain gap.
    """
    d = g.regular_degree()
    if d < 1:
        raise UsageError("field translation needs degree >= 1")
    lhs = log_partition(g, p, max_vertices=max_vertices, force=force)
    p_prime, per_edge = remove_field(p, d)
    rhs = g.num_edges * per_edge + log_partition(
        g, p_prime, max_vertices=max_vertices, force=force)
    gap = abs(lhs - rhs) / max(1.0, abs(lhs))
    return FieldIdentityReport(lhs, rhs, gap)
