"""Command-line surface: one subcommand per library operation.

Reports go to standard output as JSON (sorted keys, so identical runs are
byte-identical); grids go to CSV files.  Every randomized command takes an
explicit --seed and echoes it; there are no environment-variable overrides.

Exit codes: 0 success (and verification passed), 1 verification failure,
2 usage error, 3 resource-cap refusal.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analysis, e2lin2, reduction, uniqueness
from .errors import ResourceLimitError, UsageError
from .graphs import read_graph, write_graph
from .logspace import LOG_ZERO
from .spins import SpinParams, field_identity_report, log_partition, remove_field
from .uniqueness import SplitCase

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _emit(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _num(value, scale):
    return {"value": value, "scale": scale}


def _check(name, passed, lhs, rhs, tolerance):
    return {"name": name, "pass": bool(passed), "lhs": lhs, "rhs": rhs,
            "tolerance": tolerance}


def _report(command, inputs, outputs, checks=()):
    return {"command": command, "inputs": inputs, "outputs": outputs,
            "checks": list(checks)}


def _verify_report(check, params, value, bound, passed, margin, checks=()):
    return {"command": "verify", "check": check, "params": params,
            "value": value, "bound": bound, "pass": bool(passed),
            "margin": margin, "checks": list(checks)}


def _spin_params(args) -> SpinParams:
    return SpinParams(args.beta, args.gamma, getattr(args, "mu", 1.0))


def _default_threads() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Plain subcommands


def _cmd_z(args) -> int:
    g = read_graph(args.graph)
    p = _spin_params(args)
    value = log_partition(g, p, max_vertices=args.max_vertices,
                          force=args.force, threads=args.threads)
    _emit(_report("z",
                  {"graph": args.graph, "beta": args.beta, "gamma": args.gamma,
                   "mu": args.mu, "num_vertices": g.num_vertices,
                   "num_edges": g.num_edges, "threads": args.threads},
                  {"log_z": _num(value, "log")}))
    return EXIT_OK


def _cmd_uniqueness(args) -> int:
    rep = uniqueness.uniqueness_check(_spin_params(args), args.degree)
    _emit(_report("uniqueness",
                  {"beta": args.beta, "gamma": args.gamma, "mu": args.mu,
                   "degree": args.degree},
                  {"x_hat": _num(rep.x_hat, "linear"),
                   "derivative_magnitude": _num(rep.derivative_magnitude, "linear"),
                   "unique": rep.unique}))
    return EXIT_OK


def _cmd_threshold(args) -> int:
    scan = uniqueness.first_nonunique_degree(_spin_params(args), args.max_degree)
    _emit(_report("threshold",
                  {"beta": args.beta, "gamma": args.gamma, "mu": args.mu,
                   "max_degree": args.max_degree},
                  {"degree": _num(scan.degree, "count"),
                   "exhausted": scan.exhausted}))
    return EXIT_OK


def _fmt_csv(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _cmd_phase_map(args) -> int:
    if args.beta_steps < 1 or args.gamma_steps < 1:
        raise UsageError("grid needs at least one step per axis")
    betas = np.linspace(args.beta_min, args.beta_max, args.beta_steps)
    gammas = np.linspace(args.gamma_min, args.gamma_max, args.gamma_steps)
    counts = {}
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write("beta,gamma,mu,d,region,x_hat,deriv_mag\n")
        for row in uniqueness.phase_grid(betas.tolist(), gammas.tolist(),
                                         args.mu, args.degree, args.region_constant):
            counts[row["region"]] = counts.get(row["region"], 0) + 1
            fh.write(",".join(_fmt_csv(row[k]) for k in
                              ("beta", "gamma", "mu", "d", "region",
                               "x_hat", "deriv_mag")) + "\n")
    _emit(_report("phase-map",
                  {"beta_min": args.beta_min, "beta_max": args.beta_max,
                   "beta_steps": args.beta_steps, "gamma_min": args.gamma_min,
                   "gamma_max": args.gamma_max, "gamma_steps": args.gamma_steps,
                   "mu": args.mu, "degree": args.degree,
                   "region_constant": args.region_constant, "out": args.out},
                  {"rows": _num(int(betas.size * gammas.size), "count"),
                   "regions": {k: counts[k] for k in sorted(counts)}}))
    return EXIT_OK


def _cmd_reduce(args) -> int:
    inst = e2lin2.read_instance(args.instance)
    if not inst.is_normalized():
        inst, _ = e2lin2.normalize(inst)
    params = reduction.GadgetParams(args.delta, args.delta_prime,
                                    args.block_size, args.seed)
    rg = reduction.build_reduction_graph(inst, params)
    audit = reduction.audit_reduction_graph(rg)
    graph_path = args.out_prefix + ".graph"
    blocks_path = args.out_prefix + ".blocks"
    write_graph(rg.graph, graph_path)
    reduction.write_blocks(rg, blocks_path)
    _emit(_report("reduce",
                  {"instance": args.instance, "delta": args.delta,
                   "delta_prime": args.delta_prime, "block_size": args.block_size,
                   "seed": args.seed,
                   "block_size_is_num_equations": args.block_size == inst.num_equations},
                  {"graph_file": graph_path, "blocks_file": blocks_path,
                   "num_vertices": _num(rg.graph.num_vertices, "count"),
                   "degree": _num(audit.degree, "count")},
                  [_check("structure-audit", audit.passed,
                          audit.degree, audit.expected_degree, 0)]))
    return EXIT_OK if audit.passed else EXIT_VERIFY_FAILED


def _cmd_gadget(args) -> int:
    h = reduction.sample_gadget(args.side, args.delta, args.seed)
    if args.out:
        write_graph(h.graph, args.out)
    degrees = sorted(set(h.left_degrees()) | set(h.right_degrees()))
    _emit(_report("gadget",
                  {"side": args.side, "delta": args.delta, "seed": args.seed,
                   "out": args.out},
                  {"num_vertices": _num(h.graph.num_vertices, "count"),
                   "distinct_degrees": degrees}))
    return EXIT_OK


def _cmd_theta_star(args) -> int:
    inst = e2lin2.read_instance(args.instance)
    best, witness = e2lin2.best_assignment(inst, max_vars=args.max_vars,
                                           force=args.force)
    _emit(_report("theta-star",
                  {"instance": args.instance, "num_vars": inst.num_vars,
                   "num_equations": inst.num_equations},
                  {"max_satisfied": _num(best, "count"),
                   "witness": list(witness)}))
    return EXIT_OK


def _cmd_decode(args) -> int:
    if args.log_c is not None and args.log_d is not None:
        constants = reduction.BoundsConstants(args.log_c, args.log_d,
                                              SplitCase(args.case))
    elif None not in (args.beta, args.gamma, args.delta, args.delta_prime):
        constants = reduction.bounds_constants(
            SpinParams(args.beta, args.gamma), args.delta, args.delta_prime,
            SplitCase(args.case))
    else:
        raise UsageError("pass --log-c/--log-d, or beta/gamma/delta/delta-prime")
    value = reduction.decode_satisfied_estimate(
        args.log_y, args.n, args.m, constants,
        relative_error=args.eps, slack=args.slack)
    _emit(_report("decode",
                  {"log_y": args.log_y, "n": args.n, "m": args.m,
                   "log_c": constants.log_c, "log_d": constants.log_d,
                   "case": constants.case.value, "eps": args.eps,
                   "slack": args.slack},
                  {"satisfied_estimate": _num(value, "linear")}))
    return EXIT_OK


def _cmd_translate_field(args) -> int:
    p_prime, per_edge = remove_field(_spin_params(args), args.degree)
    _emit(_report("translate-field",
                  {"beta": args.beta, "gamma": args.gamma, "mu": args.mu,
                   "degree": args.degree},
                  {"beta_prime": _num(p_prime.beta, "linear"),
                   "gamma_prime": _num(p_prime.gamma, "linear"),
                   "mu_prime": _num(1.0, "linear"),
                   "per_edge_log_prefactor": _num(per_edge, "log")}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Verification subcommands


def _toy_instances():
    mk = e2lin2.E2Lin2Instance
    return [
        mk(2, ((0, 1, 1),)),
        mk(2, ((0, 1, 0), (0, 1, 1))),
        mk(3, ((0, 1, 1), (1, 2, 0))),
        mk(3, ((0, 1, 1), (1, 2, 1), (2, 0, 1))),
    ]


def _verify_polarized(args) -> int:
    rng = np.random.default_rng(args.seed)
    pairs = [(float(rng.uniform(0.05, 1.0)), float(rng.uniform(0.05, 1.0)))
             for _ in range(args.pairs)]
    worst = 0.0
    cases = 0
    for inst in _toy_instances():
        for t in (1, 2):
            for delta in (1, 2):
                for delta_prime in (1, 2):
                    rg = reduction.build_reduction_graph(
                        inst, reduction.GadgetParams(delta, delta_prime, t,
                                                     args.seed + cases))
                    for beta, gamma in pairs:
                        p = SpinParams(beta, gamma)
                        for enc in range(1 << inst.num_vars):
                            bits = tuple((enc >> i) & 1
                                         for i in range(inst.num_vars))
                            closed = reduction.log_polarized_sum_closed(rg, bits, p)
                            brute = reduction.log_polarized_sum_brute(
                                rg, bits, p, threads=args.threads)
                            gap = abs(closed - brute) / max(1.0, abs(closed))
                            worst = max(worst, gap)
                            cases += 1
    passed = worst <= args.tolerance
    _emit(_verify_report("polarized",
                         {"pairs": args.pairs, "seed": args.seed,
                          "cases": cases, "tolerance": args.tolerance},
                         worst, args.tolerance, passed,
                         args.tolerance - worst))
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _verify_gadget_mean(args) -> int:
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    checks = []
    for n_side, delta in ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2)):
        beta, gamma = float(rng.uniform(0.05, 1.0)), float(rng.uniform(0.05, 1.0))
        p = SpinParams(beta, gamma)
        for an in range(n_side + 1):
            for bn in range(n_side + 1):
                a, b = an / n_side, bn / n_side
                exact = analysis.expected_profile_sum_log(n_side, delta, 1, p, a, b)
                enum = analysis.enumerate_profile_sum_mean_log(
                    n_side, delta, 1, p, a, b)
                if exact == LOG_ZERO and enum == LOG_ZERO:
                    continue
                worst = max(worst, abs(exact - enum) / max(1.0, abs(exact)))
    formula_ok = worst <= args.tolerance
    checks.append(_check("exact-vs-enumeration", formula_ok, worst,
                         args.tolerance, args.tolerance))
    p = SpinParams(0.4, 0.7)
    est = analysis.expected_profile_sum_mc(3, 2, 1, p, 1 / 3, 1 / 3,
                                           trials=args.trials, seed=args.seed)
    target = math.exp(analysis.expected_profile_sum_log(3, 2, 1, p, 1 / 3, 1 / 3))
    mc_ok = est.within(target, 4.0)
    checks.append(_check("monte-carlo-4-sigma", mc_ok, est.mean, target,
                         4.0 * est.std_error))
    passed = formula_ok and mc_ok
    _emit(_verify_report("gadget-mean",
                         {"trials": args.trials, "seed": args.seed,
                          "tolerance": args.tolerance},
                         worst, args.tolerance, passed,
                         args.tolerance - worst, checks))
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _verify_rate_bound(args) -> int:
    scan = analysis.rate_bound_scan(c=args.c, min_fraction=args.min_fraction,
                                    step=args.step)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write("a,b,rate_bound\n")
            for a, b, v in analysis.rate_bound_grid(
                    c=args.c, min_fraction=args.min_fraction, step=args.step):
                fh.write(f"{a!r},{b!r},{v!r}\n")
    passed = scan.max_value < args.bound
    _emit(_verify_report("rate-bound",
                         {"c": args.c, "min_fraction": args.min_fraction,
                          "step": args.step, "out": args.out},
                         scan.max_value, args.bound, passed,
                         args.bound - scan.max_value,
                         [_check("grid-max-below-bound", passed,
                                 scan.max_value, args.bound, 0.0),
                          _check("argmax", True,
                                 scan.arg_a, scan.arg_b, 0.0)]))
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _verify_expander(args) -> int:
    worst = math.inf
    mean_sum = 0.0
    full_ok = True
    for k in range(args.seeds):
        h = reduction.sample_gadget(args.side, args.delta, args.seed + k)
        audit = analysis.expander_audit(h, eps=args.eps, factor=args.factor,
                                        mode="exhaustive")
        worst = min(worst, audit.worst_ratio)
        mean_sum += audit.mean_ratio
        full = analysis.expander_audit(h, eps=1.0, factor=args.factor,
                                       mode="exhaustive")
        full_ok = full_ok and full.worst_ratio == 1.0
    mean = mean_sum / args.seeds
    passed = worst >= args.factor and full_ok
    _emit(_verify_report("expander",
                         {"side": args.side, "delta": args.delta,
                          "seeds": args.seeds, "seed": args.seed,
                          "eps": args.eps, "factor": args.factor},
                         worst, args.factor, passed, worst - args.factor,
                         [_check("worst-ratio-above-factor",
                                 worst >= args.factor, worst, args.factor, 0.0),
                          _check("full-sides-ratio-exactly-one", full_ok,
                                 1.0, 1.0, 0.0),
                          _check("mean-ratio", True, mean, 1.0, 0.05)]))
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _verify_field(args) -> int:
    from .graphs import (complete_bipartite_graph, complete_graph, cycle_graph,
                         hypercube_graph, petersen_graph, prism_graph,
                         scaled_graph, single_edge)
    corpus = [single_edge(), cycle_graph(4), cycle_graph(5), cycle_graph(6),
              complete_graph(4), complete_graph(5), complete_bipartite_graph(3, 3),
              prism_graph(), petersen_graph(), hypercube_graph(3),
              scaled_graph(cycle_graph(4), 2)]
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for g in corpus:
        for _ in range(args.pairs):
            p = SpinParams(float(rng.uniform(0.0, 1.5)),
                           float(rng.uniform(0.05, 1.5)),
                           float(10 ** rng.uniform(-2, 2)))
            rep = field_identity_report(g, p)
            worst = max(worst, rep.gap)
    passed = worst <= args.tolerance
    _emit(_verify_report("field",
                         {"graphs": len(corpus), "pairs": args.pairs,
                          "seed": args.seed, "tolerance": args.tolerance},
                         worst, args.tolerance, passed,
                         args.tolerance - worst))
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _verify_sandwich(args) -> int:
    worst = -math.inf
    audits_ok = True
    runs = 0
    for k in range(args.seeds):
        rng = np.random.default_rng(args.seed + k)
        n = int(rng.integers(2, 4))
        m = int(rng.integers(max(1, n - 1), 4))
        inst = e2lin2.random_instance(n, m, int(rng.integers(1 << 31)))
        params = reduction.GadgetParams(
            int(rng.integers(1, 3)), int(rng.integers(1, 3)), 1,
            int(rng.integers(1 << 31)))
        rg = reduction.build_reduction_graph(inst, params)
        audits_ok = audits_ok and reduction.audit_reduction_graph(rg).passed
        p = SpinParams(float(rng.uniform(0.05, 1.0)), float(rng.uniform(0.05, 1.0)))
        rep = reduction.sandwich_check(rg, p, tolerance=args.tolerance,
                                       threads=args.threads)
        worst = max(worst,
                    rep.log_max_restricted - rep.log_total,
                    rep.log_total - rep.log_sum_restricted)
        runs += 1
    passed = worst <= args.tolerance and audits_ok
    _emit(_verify_report("sandwich",
                         {"seeds": args.seeds, "seed": args.seed,
                          "runs": runs, "tolerance": args.tolerance},
                         worst, args.tolerance, passed,
                         args.tolerance - worst,
                         [_check("structure-audits", audits_ok, runs, runs, 0)]))
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _verify_coupling(args) -> int:
    rep = analysis.coupling_sim(args.n, args.b, args.d, args.seed, args.trials,
                                a=args.a, chi2_alpha=args.alpha)
    checks = [
        _check("zero-domination-violations", rep.domination_violations == 0,
               rep.domination_violations, 0, 0),
        _check("first-step-frequency-4-sigma", rep.z1_within_4_sigma,
               rep.z1_frequency, rep.z1_expected, 4.0 * rep.z1_stderr),
        _check("chi-square-accepts", rep.chi2_pvalue > rep.chi2_alpha,
               rep.chi2_pvalue, rep.chi2_alpha, 0.0),
    ]
    _emit(_verify_report("coupling",
                         {"n": args.n, "b": args.b, "a": args.a, "d": args.d,
                          "trials": args.trials, "seed": args.seed,
                          "alpha": args.alpha},
                         rep.chi2_pvalue, rep.chi2_alpha, rep.passed,
                         rep.chi2_pvalue - rep.chi2_alpha, checks))
    return EXIT_OK if rep.passed else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# Parser


def _add_spin_args(sp, mu_default=1.0):
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--mu", type=float, default=mu_default)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twospin",
        description="Exact partition sums, uniqueness thresholds and gadget "
                    "reductions for two-state spin systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("z", help="exact log partition sum of a graph file")
    sp.add_argument("--graph", required=True)
    _add_spin_args(sp)
    sp.add_argument("--max-vertices", type=int, default=28)
    sp.add_argument("--force", action="store_true")
    sp.add_argument("--threads", type=int, default=_default_threads())
    sp.set_defaults(func=_cmd_z)

    sp = sub.add_parser("uniqueness", help="fixed point and derivative criterion")
    _add_spin_args(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.set_defaults(func=_cmd_uniqueness)

    sp = sub.add_parser("threshold", help="first degree failing uniqueness")
    _add_spin_args(sp)
    sp.add_argument("--max-degree", type=int, default=64)
    sp.set_defaults(func=_cmd_threshold)

    sp = sub.add_parser("phase-map", help="classified (beta, gamma) grid to CSV")
    sp.add_argument("--beta-min", type=float, required=True)
    sp.add_argument("--beta-max", type=float, required=True)
    sp.add_argument("--beta-steps", type=int, required=True)
    sp.add_argument("--gamma-min", type=float, required=True)
    sp.add_argument("--gamma-max", type=float, required=True)
    sp.add_argument("--gamma-steps", type=int, required=True)
    sp.add_argument("--mu", type=float, default=1.0)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--region-constant", type=float,
                    default=uniqueness.DEFAULT_REGION_CONSTANT,
                    help="the h in the unit-square region test d >= h/(1-beta*gamma)")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_phase_map)

    sp = sub.add_parser("reduce", help="build a reduction graph from an instance")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--delta-prime", type=int, required=True)
    sp.add_argument("--block-size", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out-prefix", required=True)
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("gadget", help="sample a random matching-union gadget")
    sp.add_argument("--side", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_gadget)

    sp = sub.add_parser("theta-star", help="exhaustive optimum of an instance")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--max-vars", type=int, default=e2lin2.BEST_ASSIGNMENT_CAP)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=_cmd_theta_star)

    sp = sub.add_parser("decode", help="invert a partition estimate into a count")
    sp.add_argument("--log-y", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--log-c", type=float)
    sp.add_argument("--log-d", type=float)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("--delta", type=int)
    sp.add_argument("--delta-prime", type=int)
    sp.add_argument("--case", default=SplitCase.BETA_BELOW_HALF.value,
                    choices=[c.value for c in SplitCase])
    sp.add_argument("--eps", type=float, default=1e-4)
    sp.add_argument("--slack", type=float, default=0.03)
    sp.set_defaults(func=_cmd_decode)

    sp = sub.add_parser("translate-field", help="fold the field into the weights")
    _add_spin_args(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.set_defaults(func=_cmd_translate_field)

    vp = sub.add_parser("verify", help="numerical verification checks")
    vsub = vp.add_subparsers(dest="check", required=True)

    sp = vsub.add_parser("polarized",
                         help="closed form vs brute force for polarized sums")
    sp.add_argument("--pairs", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=_verify_polarized)

    sp = vsub.add_parser("gadget-mean",
                         help="exact expectation vs enumeration and Monte Carlo")
    sp.add_argument("--trials", type=int, default=20000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp.set_defaults(func=_verify_gadget_mean)

    sp = vsub.add_parser("rate-bound", help="grid maximum of the rate bound")
    sp.add_argument("--c", type=float, default=analysis.DEFAULT_RATE_C)
    sp.add_argument("--lambda", dest="min_fraction", type=float,
                    default=analysis.DEFAULT_MINORITY)
    sp.add_argument("--step", type=float, default=1e-3)
    sp.add_argument("--bound", type=float, default=analysis.RATE_BOUND_CEILING)
    sp.add_argument("--out", help="optional CSV dump of the coarse grid")
    sp.set_defaults(func=_verify_rate_bound)

    sp = vsub.add_parser("expander", help="edge-expansion audit of sampled gadgets")
    sp.add_argument("--side", type=int, default=8)
    sp.add_argument("--delta", type=int, default=48)
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--eps", type=float, default=0.25)
    sp.add_argument("--factor", type=float, default=analysis.DEFAULT_EXPANSION_FACTOR)
    sp.set_defaults(func=_verify_expander)

    sp = vsub.add_parser("field", help="field-translation identity on regular graphs")
    sp.add_argument("--pairs", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=_verify_field)

    sp = vsub.add_parser("sandwich", help="restricted-sum bracketing on toy reductions")
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=_verify_sandwich)

    sp = vsub.add_parser("coupling", help="domination coupling simulation")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--b", type=float, default=0.5)
    sp.add_argument("--a", type=float, default=1.0)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--trials", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--alpha", type=float, default=1e-3)
    sp.set_defaults(func=_verify_coupling)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
