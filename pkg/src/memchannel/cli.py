"""Command-line front end: figure data as deterministic CSV.

Exit codes: 0 success, 1 numerical failure (no convergence, degenerate fit,
failed oracle check), 2 configuration error.
"""
from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

import numpy as np

from .capacity import (
    cavity_trajectory,
    forgetfulness_probe,
    memoryless_quantum_capacity,
    private_rate_report,
    rate_point,
)
from .cavity import ChannelParams
from .core import QubitInput
from .errors import DomainError, FitDegenerate, NoConvergence, TruncationOverflow
from .validation import run_oracle_suite

DEFAULT_LOG_POINTS = 25


class ConfigError(Exception):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def parse_grid(text: str, key: str = "grid") -> np.ndarray:
    """Parse ``a:b:step``, ``a:b:log``, ``a:b:logN`` or a comma-separated list."""
    text = str(text).strip()
    try:
        if ":" not in text:
            values = np.array([float(x) for x in text.split(",") if x.strip()])
        else:
            start, stop, spec = text.split(":")
            start, stop = float(start), float(stop)
            if spec.startswith("log"):
                count = int(spec[3:]) if spec[3:] else DEFAULT_LOG_POINTS
                if start <= 0 or stop <= start or count < 2:
                    raise ValueError
                values = np.geomspace(start, stop, count)
            else:
                step = float(spec)
                if step <= 0 or stop < start:
                    raise ValueError
                count = int(round((stop - start) / step)) + 1
                values = np.round(start + step * np.arange(count), 12)
    except ValueError:
        raise ConfigError(key, f"cannot parse grid {text!r}") from None
    if values.size == 0:
        raise ConfigError(key, "grid is empty")
    return values


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def write_table(out, header, rows):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")


# (type, default, help); type "grid" is parsed lazily so config values get the same treatment
CHANNEL = {
    "eta": (float, None, "memoryless retention cos^2(theta); exclusive with --theta"),
    "theta": (float, None, "Rabi angle lambda*tau_p; exclusive with --eta"),
    "lambda_tau_d": (float, 20.0, "cavity decay time lambda*tau_d"),
}
EXPERIMENTS = {
    "memoryless": {
        "eta_grid": ("grid", "0.5:1.0:0.01", "grid of eta values"),
    },
    "steady-state": {
        **CHANNEL,
        "lambda_tau": (float, 2.0, "separation between uses lambda*tau"),
        "p": (float, 0.5, "excited population of the input qubit"),
        "r": (float, 0.0, "real input coherence"),
        "k": (int, 200, "number of channel uses"),
    },
    "sweep-tau": {
        **CHANNEL,
        "tau_grid": ("grid", "0.5:40:log", "ascending grid of lambda*tau"),
        "p_step": (float, 0.01, "coarse grid step of the p optimiser"),
    },
    "sweep-mu": {
        **CHANNEL,
        "mu_grid": ("grid", "0.05:0.95:0.05", "grid of memory parameters in (0, 1)"),
        "p_step": (float, 0.01, "coarse grid step of the p optimiser"),
    },
    "forgetfulness": {
        **CHANNEL,
        "lambda_tau": (float, 2.0, "idle interval lambda*tau"),
        "p": (float, 0.5, "input population driving the stationary cavity state"),
        "l_max": (int, 20, "largest number of idle intervals"),
        "floor": (float, 1e-13, "distance below which the fit is declared degenerate"),
    },
    "validate": {
        "seed": (int, 0, "random seed"),
        "cases": (int, 1000, "randomised cases per check"),
    },
}
NEEDS_CHANNEL = {"steady-state", "sweep-tau", "sweep-mu", "forgetfulness"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="memchannel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name, options in EXPERIMENTS.items():
        sp = sub.add_parser(name)
        sp.add_argument("--config", type=Path, help="file of key = value lines; flags win")
        sp.add_argument("--output", "-o", type=Path, help="CSV path (default stdout)")
        for key, (_, default, text) in options.items():
            flag = "--" + key.replace("_", "-")
            shown = f" (default {default})" if default is not None else ""
            sp.add_argument(flag, dest=key, default=None, help=text + shown)
    return parser


def read_config_file(path: Path) -> dict[str, str]:
    values = {}
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("config", f"line {lineno} is not 'key = value'")
        key, value = (x.strip() for x in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def resolve(args: argparse.Namespace) -> dict:
    """Merge flags, config file and defaults into typed values."""
    options = EXPERIMENTS[args.experiment]
    from_file = read_config_file(args.config) if args.config else {}
    for key in from_file:
        if key not in options and key != "output":
            raise ConfigError(key, f"unknown key for experiment {args.experiment!r}")
    cfg = {}
    for key, (kind, default, _) in options.items():
        raw = getattr(args, key)
        if raw is None:
            raw = from_file.get(key, default)
        if raw is None:
            cfg[key] = None
        elif kind == "grid":
            cfg[key] = parse_grid(raw, key)
        else:
            try:
                cfg[key] = kind(raw)
            except ValueError:
                raise ConfigError(key, f"expected {kind.__name__}, got {raw!r}") from None
    output = args.output or from_file.get("output")
    cfg["output"] = Path(output) if output else None
    if args.experiment in NEEDS_CHANNEL:
        if (cfg["eta"] is None) == (cfg["theta"] is None):
            raise ConfigError("eta/theta", "give exactly one of eta or theta")
        if cfg["eta"] is not None and not 0.0 <= cfg["eta"] <= 1.0:
            raise ConfigError("eta", "must lie in [0, 1]")
        if cfg["theta"] is not None and cfg["theta"] < 0.0:
            raise ConfigError("theta", "must be >= 0")
        if cfg["lambda_tau_d"] <= 0.0:
            raise ConfigError("lambda_tau_d", "must be > 0")
    for key in ("tau_grid", "eta_grid"):
        if key in cfg and np.any(cfg[key] <= 0.0 if key == "tau_grid" else (cfg[key] < 0) | (cfg[key] > 1)):
            raise ConfigError(key, "values out of range")
    if "tau_grid" in cfg and np.any(np.diff(cfg["tau_grid"]) <= 0):
        raise ConfigError("tau_grid", "must be strictly ascending")
    if "mu_grid" in cfg and np.any((cfg["mu_grid"] <= 0) | (cfg["mu_grid"] >= 1)):
        raise ConfigError("mu_grid", "values must lie in (0, 1)")
    for key in ("lambda_tau", "k", "l_max", "p_step", "cases"):
        if key in cfg and not cfg[key] > 0:
            raise ConfigError(key, "must be positive")
    if "p" in cfg and not 0.0 <= cfg["p"] <= 1.0:
        raise ConfigError("p", "must lie in [0, 1]")
    if "r" in cfg and abs(cfg["r"]) > np.sqrt(cfg["p"] * (1.0 - cfg["p"])) + 1e-12:
        raise ConfigError("r", "exceeds sqrt(p(1-p))")
    if "l_max" in cfg and cfg["l_max"] < 3:
        raise ConfigError("l_max", "must be >= 3")
    return cfg


def config_comment(experiment: str, cfg: dict) -> str:
    parts = [f"experiment={experiment}"]
    for key in sorted(cfg):
        value = cfg[key]
        if key == "output":
            continue
        if isinstance(value, np.ndarray):
            value = ";".join(fmt(v) for v in value)
        elif value is not None:
            value = fmt(value)
        parts.append(f"{key}={value}")
    return "# " + " ".join(parts) + "\n"


def channel_params(cfg: dict, lambda_tau: float) -> ChannelParams:
    if cfg["eta"] is not None:
        return ChannelParams.from_eta(cfg["eta"], lambda_tau, cfg["lambda_tau_d"])
    return ChannelParams(cfg["theta"], lambda_tau, cfg["lambda_tau_d"])


RATE_HEADER = ["lambda_tau", "mu", "p_opt", "i_c_opt", "rate", "private_rate"]


def rate_rows(points, key_first_mu=False):
    for pt in map(private_rate_report, points):
        row = [pt.lambda_tau, pt.mu, pt.p_opt, pt.i_c_opt, pt.rate, pt.private_rate]
        if key_first_mu:
            row[0], row[1] = row[1], row[0]
        yield row


def run_experiment(experiment: str, cfg: dict) -> tuple[dict[str, str], int]:
    """Compute one experiment; returns ``({suffix: csv_text}, exit_code)``."""
    head = config_comment(experiment, cfg)
    main = io.StringIO()
    main.write(head)
    extra = {}
    code = 0
    if experiment == "memoryless":
        rows = []
        for eta in cfg["eta_grid"]:
            q, p_opt = memoryless_quantum_capacity(float(eta))
            rows.append([eta, q, p_opt])
        write_table(main, ["eta", "Q", "p_opt"], rows)
    elif experiment == "steady-state":
        params = channel_params(cfg, cfg["lambda_tau"])
        mean, ic, w = cavity_trajectory(QubitInput(cfg["p"], cfg["r"]), params, cfg["k"])
        write_table(main, ["k", "mean_photon", "i_c_k"], zip(range(1, cfg["k"] + 1), mean, ic))
        pops = io.StringIO()
        pops.write(head)
        top = int(np.flatnonzero(w)[-1]) + 1
        write_table(pops, ["n", "w_n"], zip(range(top), w[:top]))
        extra["_populations"] = pops.getvalue()
    elif experiment == "sweep-tau":
        points = [rate_point(channel_params(cfg, float(t)), cfg["p_step"]) for t in cfg["tau_grid"]]
        write_table(main, RATE_HEADER, rate_rows(points))
    elif experiment == "sweep-mu":
        lt_d = cfg["lambda_tau_d"]
        points = [rate_point(channel_params(cfg, lt_d * (1.0 - m) / m), cfg["p_step"]) for m in cfg["mu_grid"]]
        header = ["mu", "lambda_tau"] + RATE_HEADER[2:]
        write_table(main, header, rate_rows(points, key_first_mu=True))
    elif experiment == "forgetfulness":
        params = channel_params(cfg, cfg["lambda_tau"])
        fit = forgetfulness_probe(params, cfg["l_max"], p=cfg["p"], floor=cfg["floor"])
        write_table(main, ["L", "distance"], fit.distances)
        main.write(f"# fit c={fmt(fit.c)} h={fmt(fit.h)} r_squared={fmt(fit.r_squared)}\n")
    elif experiment == "validate":
        results = run_oracle_suite(cfg["seed"], cfg["cases"])
        main.write("check,worst,tolerance,cases,status\n")
        for res in results:
            status = "PASS" if res.passed else "FAIL"
            main.write(f"{res.name},{fmt(res.worst)},{fmt(res.tolerance)},{res.cases},{status}\n")
        code = 0 if all(r.passed for r in results) else 1
    return {"": main.getvalue(), **extra}, code


def emit(tables: dict[str, str], output: Path | None, stdout) -> None:
    if output is None:
        stdout.write("\n".join(tables[k] for k in sorted(tables)))
        return
    for suffix, text in tables.items():
        path = output.with_name(output.stem + suffix + output.suffix) if suffix else output
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        tables, code = run_experiment(args.experiment, cfg)
        emit(tables, cfg["output"], stdout)
    except ConfigError as exc:
        stderr.write(f"memchannel: config error: {exc}\n")
        return 2
    except DomainError as exc:
        stderr.write(f"memchannel: config error: {exc}\n")
        return 2
    except (NoConvergence, FitDegenerate, TruncationOverflow) as exc:
        stderr.write(f"memchannel: {type(exc).__name__}: {exc}\n")
        return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
