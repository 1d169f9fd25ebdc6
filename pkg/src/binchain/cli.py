"""Command-line interface: validation, classification, simulation,
experiments and oracle comparison with reproducible seeded runs.

Commands: validate, classify, simulate, vonschelling, boundary, oracle,
compare.  A JSON config file supplies the model record and parameters;
flags override config values; the BINCHAIN_SEED environment variable is
the lowest-precedence seed source.  Exit codes: 0 success, 1 failed
comparison check, 2 config/validation error, 3 guard exceeded during
simulation, 4 oracle size limits.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import engine, oracle, stats, walks
from .coefficients import (
    BiasedModel,
    FiniteVector,
    Geometric,
    PowerLaw,
    SignPattern,
    classify,
    validate,
)
from .errors import BinchainError, GuardExceeded, MemoryTooLarge
from .rngstream import replica_rng, replica_seed_words

SEED_ENV_VAR = "BINCHAIN_SEED"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_GUARD = 3
EXIT_ORACLE_LIMIT = 4


class ConfigError(BinchainError):
    pass


def parse_model(record):
    """Build a model from the config schema record."""
    if not isinstance(record, dict) or "type" not in record:
        raise ConfigError("model record must be an object with a 'type' field")
    kind = record["type"]
    signs = None
    if "signs" in record:
        mapping = {"+": 1, "-": -1, "−": -1}
        try:
            signs = SignPattern(tuple(mapping[s] for s in record["signs"]))
        except KeyError as exc:
            raise ConfigError("sign entries must be '+' or '-'") from exc
    if kind == "finite":
        if "coeffs" not in record:
            raise ConfigError("finite model needs 'coeffs'")
        base = FiniteVector(tuple(float(c) for c in record["coeffs"]))
    elif kind == "geometric":
        if "q" not in record:
            raise ConfigError("geometric model needs 'q'")
        base = Geometric(float(record["q"]),
                         signs if signs is not None else SignPattern((1,)))
    elif kind == "powerlaw":
        if "alpha" not in record:
            raise ConfigError("powerlaw model needs 'alpha'")
        base = PowerLaw(float(record["alpha"]),
                        signs if signs is not None else SignPattern((1,)))
    else:
        raise ConfigError("unknown model type %r" % kind)
    validate(base)
    bias = float(record.get("bias", 0.0))
    if bias != 0.0:
        # the bias rescales the lag mass so that r0 + |theta0| = 1
        return BiasedModel(base, theta0=bias, r0=1.0 - abs(bias))
    return base


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc)) from exc


def _resolve(args, config, key, default=None, cast=None):
    """flag > config > default."""
    v = getattr(args, key, None)
    if v is None:
        v = config.get(key, default)
    if v is not None and cast is not None:
        v = cast(v)
    return v


def _resolve_seed(args, config):
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    if "seed" in config:
        return int(config["seed"])
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        return int(env)
    raise ConfigError(
        "no master seed given (flag --seed, config 'seed', or $%s)" % SEED_ENV_VAR
    )


def _resolve_model(args, config):
    if getattr(args, "coeffs", None):
        record = {"type": "finite", "coeffs": args.coeffs}
    elif "model" in config:
        record = config["model"]
    else:
        raise ConfigError("no model given (config 'model' or --coeffs)")
    return parse_model(record)


def _open_output(args):
    if getattr(args, "output", None):
        return open(args.output, "w", encoding="utf-8", newline="")
    return sys.stdout


def _emit_report(args, report):
    out = _open_output(args)
    json.dump(report, out, indent=2, sort_keys=True)
    out.write("\n")
    if out is not sys.stdout:
        out.close()


def _base_of(model):
    return model.base if isinstance(model, BiasedModel) else model


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    config = _load_config(args.config)
    model = _resolve_model(args, config)
    _emit_report(args, {"command": "validate", "ok": True,
                        "model": repr(model)})
    return EXIT_OK


def cmd_classify(args):
    config = _load_config(args.config)
    model = _resolve_model(args, config)
    if isinstance(model, BiasedModel):
        report = {
            "command": "classify",
            "verdict": "unique",
            "description": "Unique (biased kernel: lag mass below 1)",
        }
        _emit_report(args, report)
        return EXIT_OK
    verdict = classify(model)
    report = {
        "command": "classify",
        "verdict": verdict.kind,
        "description": verdict.describe(),
        "gcd": model.support_gcd(),
        "condition_ii": model.condition_ii(),
        "condition_iii": model.condition_iii(),
    }
    if verdict.reduced is not None:
        report["reduced_verdict"] = verdict.reduced.kind
    _emit_report(args, report)
    return EXIT_OK


def _simulate_records(model, L, replicas, seed, guard):
    """Yield one record per replica; deterministic in (seed, index)."""
    for r in range(replicas):
        rng = replica_rng(seed, r)
        if isinstance(model, BiasedModel):
            win = engine.perfect_simulate_biased(model, L, rng, guard)
        else:
            win = engine.perfect_simulate(model, L, rng, guard)
        yield {
            "replica": r,
            "seed": replica_seed_words(seed, r),
            "window": list(win.values),
            "draws": win.draws,
        }


def cmd_simulate(args):
    config = _load_config(args.config)
    model = _resolve_model(args, config)
    seed = _resolve_seed(args, config)
    L = _resolve(args, config, "length", 1, int)
    replicas = _resolve(args, config, "replicas", 1, int)
    guard = _resolve(args, config, "guard", engine.DEFAULT_GUARD, int)
    fmt = _resolve(args, config, "format", "jsonl", str)
    if not isinstance(model, BiasedModel):
        verdict = classify(model)
        if not verdict.is_unique:
            print("warning: verdict is %s; the output law may not be the "
                  "unique compatible law" % verdict.kind, file=sys.stderr)
    out = _open_output(args)
    writer = csv.writer(out) if fmt == "csv" else None
    if writer is not None:
        writer.writerow(["replica"] + ["x%d" % i for i in range(1, L + 1)])
    code = EXIT_OK
    try:
        for rec in _simulate_records(model, L, replicas, seed, guard):
            if writer is not None:
                writer.writerow([rec["replica"]] + rec["window"])
            else:
                out.write(json.dumps(rec, sort_keys=True) + "\n")
    except GuardExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        code = EXIT_GUARD
    if out is not sys.stdout:
        out.close()
    return code


def cmd_vonschelling(args):
    config = _load_config(args.config)
    model = _base_of(_resolve_model(args, config))
    seed = _resolve_seed(args, config)
    n_walks = _resolve(args, config, "walks", 1000, int)
    y0 = _resolve(args, config, "y0", 1, int)
    max_steps = _resolve(args, config, "max_steps", 10 ** 6, int)
    rng = replica_rng(seed, 0)
    hits = walks.hitting_times_batch(model, y0, max_steps, n_walks, rng)
    finished = hits[hits >= 0]
    report = {
        "command": "vonschelling",
        "walks": n_walks,
        "y0": y0,
        "max_steps": max_steps,
        "censored": int((hits < 0).sum()),
        "mean_hitting_time": float(finished.mean()) if finished.size else None,
        "quantiles": {
            q: float(np.quantile(finished, float(q))) if finished.size else None
            for q in ("0.5", "0.9", "0.99")
        },
    }
    _emit_report(args, report)
    return EXIT_OK


def cmd_boundary(args):
    config = _load_config(args.config)
    model = _base_of(_resolve_model(args, config))
    seed = _resolve_seed(args, config)
    replicas = _resolve(args, config, "replicas", 10 ** 4, int)
    n_list = _resolve(args, config, "n_list", [2, 8, 32])
    if isinstance(n_list, str):
        n_list = [int(x) for x in n_list.split(",")]
    results = []
    for idx, n in enumerate(n_list):
        rng = replica_rng(seed, idx)
        plus = 0
        for _ in range(replicas):
            plus += engine.boundary_simulate(model, n, engine.ALL_PLUS, 0, rng) == 1
        p_hat = plus / replicas
        results.append({"n": int(n), "p_plus": p_hat,
                        "d": abs(p_hat - 0.5),
                        "stderr": float(np.sqrt(p_hat * (1 - p_hat) / replicas))})
    _emit_report(args, {"command": "boundary", "replicas": replicas,
                        "estimates": results})
    return EXIT_OK


def cmd_oracle(args):
    config = _load_config(args.config)
    model = _base_of(_resolve_model(args, config))
    w = _resolve(args, config, "window", 2, int)
    try:
        orc = oracle.build_oracle(model)
    except (MemoryTooLarge, TypeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ORACLE_LIMIT
    dists = oracle.stationary_distributions(orc)
    report = {
        "command": "oracle",
        "memory": orc.memory,
        "n_recurrent_classes": len(orc.recurrent_classes),
        "class_periods": list(orc.class_periods),
        "stationary": [[float(p) for p in d] for d in dists],
    }
    if dists:
        law = oracle.exact_window_law(orc, dists[0], w)
        report["window_law"] = {
            "".join("+" if v == 1 else "-" for v in key): float(p)
            for key, p in sorted(law.items())
        }
    _emit_report(args, report)
    return EXIT_OK


def cmd_compare(args):
    config = _load_config(args.config)
    model = _base_of(_resolve_model(args, config))
    seed = _resolve_seed(args, config)
    replicas = _resolve(args, config, "replicas", 10 ** 4, int)
    guard = _resolve(args, config, "guard", engine.DEFAULT_GUARD, int)
    w = _resolve(args, config, "window", 2, int)
    threshold = _resolve(args, config, "threshold", 0.02, float)
    try:
        orc = oracle.build_oracle(model)
    except (MemoryTooLarge, TypeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ORACLE_LIMIT
    dists = oracle.stationary_distributions(orc)
    exact = oracle.exact_window_law(orc, dists[0], w)
    windows = []
    try:
        for r in range(replicas):
            rng = replica_rng(seed, r)
            windows.append(engine.perfect_simulate(model, w, rng, guard))
    except GuardExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_GUARD
    emp = stats.empirical_window_distribution(windows, w)
    tv = stats.tv_distance(stats.complete_distribution(emp, exact), exact)
    passed = tv < threshold
    _emit_report(args, {
        "command": "compare", "replicas": replicas, "window": w,
        "tv_distance": tv, "threshold": threshold,
        "result": "PASS" if passed else "FAIL",
    })
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="binchain",
        description="Perfect sampling toolkit for binary linear-kernel processes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--coeffs", type=float, nargs="+",
                       help="inline finite coefficient vector")
        p.add_argument("--seed", type=int, help="master seed")
        p.add_argument("--output", help="output path (default stdout)")
        return p

    common(sub.add_parser("validate", help="check model invariants"))
    common(sub.add_parser("classify", help="uniqueness classification"))

    p = common(sub.add_parser("simulate", help="perfect simulation replicas"))
    p.add_argument("--length", type=int, help="window length L")
    p.add_argument("--replicas", type=int)
    p.add_argument("--guard", type=int, help="max lag draws per replica")
    p.add_argument("--format", choices=["jsonl", "csv"])

    p = common(sub.add_parser("vonschelling", help="reflected-walk hitting times"))
    p.add_argument("--walks", type=int)
    p.add_argument("--y0", type=int)
    p.add_argument("--max-steps", dest="max_steps", type=int)

    p = common(sub.add_parser("boundary", help="boundary-influence decay"))
    p.add_argument("--replicas", type=int)
    p.add_argument("--n-list", dest="n_list", help="comma-separated depths")

    p = common(sub.add_parser("oracle", help="exact finite-memory analysis"))
    p.add_argument("--window", type=int)

    p = common(sub.add_parser("compare", help="empirical vs exact window law"))
    p.add_argument("--replicas", type=int)
    p.add_argument("--guard", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--threshold", type=float)
    return parser


_COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "simulate": cmd_simulate,
    "vonschelling": cmd_vonschelling,
    "boundary": cmd_boundary,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BinchainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
