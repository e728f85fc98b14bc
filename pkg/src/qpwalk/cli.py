"""Command-line experiments with reproducible, machine-readable output.

Subcommands: evolve, revival-scan, trace-check, cf, noise-series, gauge-check,
appendix-table, bloch-trace. Every run emits one record, as CSV (``# key=value``
metadata comments, then a header row) or as a single JSON document. Output is
byte-reproducible for a fixed config and seed: records carry no timestamps and
all randomness is seeded.

Field strings give phi as a fraction of a full turn: ``n/m`` (exact integers),
``golden`` for (sqrt(5)-1)/2, or a float literal. Coins are ``hadamard``,
``identity``, ``i-sigma-y``, or an ``a,b`` pair of complex literals.

Config files hold ``key=value`` lines (``#`` comments allowed) using the long
option names with underscores; explicit flags override file values.

Exit codes: 0 success, 2 configuration error, 3 failed *-check experiment.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from math import gcd

import numpy as np

from . import __version__, _kernels
from .cfrac import approximation_check, cf_expand, classify_field, golden_ratio_fraction
from .gauge import verify_gauge_equivalence
from .momentum import alpha_tilde_sup, trace_formula
from .noise import NoiseConfig, return_series
from .revivals import (appendix_table, detect_sign, irrational_revival_bound,
                       revival_deviation, revival_report, revival_time)
from .spinops import rotation_x
from .walk import (Field, TimeRule, WalkParams, WalkState, bloch_vector, evolve,
                   evolve_tracking_origin, position_distribution)

TRACE_CHECK_TOL = 1e-9
GAUGE_CHECK_TOL = 1e-10

NAMED_COINS = {
    "hadamard": (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)),
    "identity": (1.0 + 0.0j, 0.0j),
    "i-sigma-y": (0.0j, 1.0 + 0.0j),
}

KNOWN_CONFIG_KEYS = {
    "field", "coin", "tmax", "epsilon", "seed", "ensemble", "out", "format",
    "m_list", "depth", "trials", "noise_support", "spinor", "x0", "stride",
}


class ConfigError(Exception):
    pass


def parse_field(text: str) -> Field:
    text = text.strip()
    if text == "golden":
        return Field.golden()
    if "/" in text:
        parts = text.split("/")
        if len(parts) != 2:
            raise ConfigError(f"bad rational field {text!r}; expected n/m")
        try:
            n, m = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ConfigError(f"bad rational field {text!r}: {exc}") from exc
        if m <= 0:
            raise ConfigError("field denominator must be positive")
        return Field.rational(n, m)
    try:
        return Field.from_turns(float(text))
    except ValueError as exc:
        raise ConfigError(f"bad field {text!r}: {exc}") from exc


def parse_coin(text: str) -> tuple[complex, complex, str]:
    text = text.strip()
    if text in NAMED_COINS:
        a, b = NAMED_COINS[text]
        return complex(a), complex(b), text
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"bad coin {text!r}; expected a named coin or 'a,b'")
    try:
        a, b = complex(parts[0]), complex(parts[1])
    except ValueError as exc:
        raise ConfigError(f"bad coin {text!r}: {exc}") from exc
    return a, b, text


def parse_spinor(text: str) -> tuple[complex, complex]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"bad spinor {text!r}; expected 'up,down'")
    try:
        u, d = complex(parts[0]), complex(parts[1])
    except ValueError as exc:
        raise ConfigError(f"bad spinor {text!r}: {exc}") from exc
    norm = math.sqrt(abs(u) ** 2 + abs(d) ** 2)
    if norm == 0:
        raise ConfigError("spinor must be nonzero")
    return u / norm, d / norm


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad integer list {text!r}: {exc}") from exc


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad float list {text!r}: {exc}") from exc


def load_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{line_no}: expected key=value")
                key, value = line.split("=", 1)
                key = key.strip().replace("-", "_")
                if key not in KNOWN_CONFIG_KEYS:
                    raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
                out[key] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return out


class Options:
    """Flag values with config-file fallback and hard defaults."""

    def __init__(self, args: argparse.Namespace, cfg: dict[str, str]):
        self.args = args
        self.cfg = cfg

    def get(self, name: str, default, cast):
        value = getattr(self.args, name, None)
        if value is not None:
            return cast(value) if isinstance(value, str) else value
        if name in self.cfg:
            return cast(self.cfg[name])
        return default


def record_rows(experiment: str, metadata: dict, columns: list[str], rows: list):
    meta = {"experiment": experiment, "version": __version__,
            "backend": _kernels.backend_name()}
    meta.update(metadata)
    return {"experiment": experiment, "metadata": meta,
            "columns": columns, "rows": rows}


def _format_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_record(record: dict, out_path: str, fmt: str) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("# qpwalk-csv v1\n")
        for key in sorted(record["metadata"]):
            buf.write(f"# {key}={record['metadata'][key]}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record["columns"])
        for row in record["rows"]:
            writer.writerow([_format_cell(cell) for cell in row])
        payload = buf.getvalue()
    elif fmt == "json":
        doc = {"schema": "qpwalk-json/1",
               "experiment": record["experiment"],
               "metadata": record["metadata"],
               "columns": record["columns"],
               "rows": [list(row) for row in record["rows"]]}
        payload = json.dumps(doc, sort_keys=True, default=_json_default) + "\n"
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    if out_path == "-":
        sys.stdout.write(payload)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)


def _json_default(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    raise TypeError(f"not JSON serializable: {type(value)!r}")


def _common_meta(opts, field: Field | None, coin_label: str | None) -> dict:
    meta = {}
    if field is not None:
        meta["field"] = field.label
    if coin_label is not None:
        meta["coin"] = coin_label
    return meta


# ---------------------------------------------------------------------------
# experiment handlers
# ---------------------------------------------------------------------------

def run_evolve(opts: Options) -> int:
    field = parse_field(opts.get("field", "1/155", str))
    a, b, coin_label = parse_coin(opts.get("coin", "hadamard", str))
    t_max = opts.get("tmax", 310, int)
    stride = opts.get("stride", 1, int)
    x0 = opts.get("x0", 0, int)
    spinor = parse_spinor(opts.get("spinor", "1,0", str))
    if t_max < 0 or stride < 1:
        raise ConfigError("tmax must be >= 0 and stride >= 1")
    params = WalkParams(field=field, coin_a=a, coin_b=b)
    state = WalkState.single_site(x=x0, spinor=spinor)
    rows = []
    for x, p in sorted(position_distribution(state).items()):
        rows.append((0, x, p))
    for t in range(1, t_max + 1):
        state = evolve(state, t, t, params)
        if t % stride == 0 or t == t_max:
            for x, p in sorted(position_distribution(state).items()):
                rows.append((t, x, p))
    meta = _common_meta(opts, field, coin_label)
    meta.update({"tmax": t_max, "stride": stride, "x0": x0,
                 "spinor": opts.get("spinor", "1,0", str)})
    record = record_rows("evolve", meta, ["t", "x", "probability"], rows)
    write_record(record, opts.get("out", "-", str), opts.get("format", "csv", str))
    return 0


def run_revival_scan(opts: Options) -> int:
    field_spec = opts.get("field", "", str)
    a, b, coin_label = parse_coin(opts.get("coin", "hadamard", str))
    t_max = opts.get("tmax", 400, int)
    out_path = opts.get("out", "-", str)
    fmt = opts.get("format", "csv", str)

    if field_spec == "golden":
        depth = opts.get("depth", 12, int)
        x = golden_ratio_fraction(max(60, 3 * depth))
        cf = cf_expand(x, depth)
        field = Field.golden()
        params = WalkParams(field=field, coin_a=a, coin_b=b)
        rows = []
        for k_index in range(1, cf.depth()):
            time, bound = irrational_revival_bound(cf, k_index)
            if time > t_max:
                break
            sign = detect_sign(params, time)
            dev = revival_deviation(params, time, sign)
            d_k = cf.convergents[k_index - 1].denominator
            rows.append((k_index, d_k, time, sign, dev, bound))
        meta = _common_meta(opts, field, coin_label)
        meta.update({"tmax": t_max, "depth": depth})
        record = record_rows(
            "revival-scan", meta,
            ["k_index", "d_k", "revival_time", "sign", "measured_deviation",
             "bound_leading"], rows)
        write_record(record, out_path, fmt)
        return 0

    m_list = parse_int_list(opts.get("m_list", "3,4,5,6,7,8,9,10,11,12", str))
    if any(m < 1 for m in m_list):
        raise ConfigError("m values must be positive")
    rows = []
    for m in m_list:
        params = WalkParams(field=Field.rational(1, m), coin_a=a, coin_b=b)
        report = revival_report(params, m)
        rows.append((report.m, report.parity, report.revival_time, report.sign,
                     report.measured_deviation, report.predicted_scale))
    meta = _common_meta(opts, None, coin_label)
    meta.update({"m_list": ",".join(str(m) for m in m_list)})
    record = record_rows(
        "revival-scan", meta,
        ["m", "parity", "revival_time", "sign", "measured_deviation",
         "predicted_scale"], rows)
    write_record(record, out_path, fmt)
    return 0


def run_trace_check(opts: Options) -> int:
    trials = opts.get("trials", 200, int)
    seed = opts.get("seed", 0, int)
    if trials < 1:
        raise ConfigError("trials must be positive")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    rows = []
    worst = 0.0
    for trial in range(trials):
        m = int(rng.integers(1, 13))
        coprime = [n for n in range(1, m + 1) if gcd(n, m) == 1]
        n = int(coprime[rng.integers(0, len(coprime))])
        mat = (rng.uniform(-1.0, 1.0, (2, 2))
               + 1j * rng.uniform(-1.0, 1.0, (2, 2))) / math.sqrt(2.0)
        rot = rotation_x(2.0 * math.pi * n / m)
        closed = trace_formula(mat, rot, m)
        direct = _direct_cyclic_trace(mat, rot, m)
        residual = abs(closed - direct)
        worst = max(worst, residual)
        rows.append((trial, m, n, residual, residual <= TRACE_CHECK_TOL))
    meta = {"trials": trials, "seed": seed, "tolerance": TRACE_CHECK_TOL,
            "worst_residual": worst}
    record = record_rows("trace-check", meta,
                         ["trial", "m", "n", "residual", "pass"], rows)
    write_record(record, opts.get("out", "-", str), opts.get("format", "csv", str))
    return 0 if worst <= TRACE_CHECK_TOL else 3


def _direct_cyclic_trace(mat: np.ndarray, rot: np.ndarray, m: int) -> complex:
    prod = np.eye(2, dtype=complex)
    rot_power = np.eye(2, dtype=complex)
    for _ in range(m):
        prod = prod @ (mat @ rot_power)
        rot_power = rot_power @ rot
    return complex(np.trace(prod))


def run_cf(opts: Options) -> int:
    field_spec = opts.get("field", "golden", str)
    depth = opts.get("depth", 40, int)
    if depth < 1:
        raise ConfigError("depth must be positive")
    if field_spec == "golden":
        x = golden_ratio_fraction(max(60, 3 * depth))
        label = "golden"
    else:
        field = parse_field(field_spec)
        frac = field.turns_fraction
        if frac is not None:
            x = frac % 1
        else:
            x = float(field.value / (2.0 * math.pi)) % 1.0
        label = field.label
        if x == 0:
            raise ConfigError("field reduces to a whole number of turns; nothing to expand")
    cf = cf_expand(x, depth)
    checks = approximation_check(cf)
    classification = classify_field(cf)
    rows = []
    for i, (c, conv) in enumerate(zip(cf.coefficients, cf.convergents), start=1):
        err = abs(Fraction(cf.x) - conv.value)
        bound = (Fraction(1, cf.coefficients[i] * conv.denominator ** 2)
                 if i < cf.depth() else None)
        rows.append((i, c, conv.numerator, conv.denominator, float(err),
                     float(bound) if bound is not None else float("nan"),
                     checks[i - 1] if i - 1 < len(checks) else True))
    meta = {"field": label, "depth": depth, "finite": cf.finite,
            "truncated": cf.truncated, "classification": classification.kind}
    record = record_rows("cf", meta,
                         ["k", "c_k", "n_k", "d_k", "abs_error", "bound",
                          "within_bound"], rows)
    write_record(record, opts.get("out", "-", str), opts.get("format", "csv", str))
    return 0


def run_noise_series(opts: Options) -> int:
    field = parse_field(opts.get("field", "1/100", str))
    a, b, coin_label = parse_coin(opts.get("coin", "hadamard", str))
    t_max = opts.get("tmax", 1000, int)
    epsilons = parse_float_list(opts.get("epsilon", "0.0001,0.0005,0.001", str))
    seed = opts.get("seed", 0, int)
    ensemble = opts.get("ensemble", 100, int)
    support = opts.get("noise_support", "pm1", str)
    if t_max < 1:
        raise ConfigError("tmax must be positive")
    params = WalkParams(field=field, coin_a=a, coin_b=b)
    rows = []
    for eps in epsilons:
        try:
            noise = NoiseConfig(epsilon=eps, seed=seed, ensemble_size=ensemble,
                                support=support)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        series = return_series(params, noise, t_max)
        for t, mean, mini, maxi in series:
            rows.append((eps, int(t), mean, mini, maxi))
    meta = _common_meta(opts, field, coin_label)
    meta.update({"tmax": t_max, "seed": seed, "ensemble": ensemble,
                 "noise_support": support,
                 "epsilon": ",".join(repr(e) for e in epsilons)})
    record = record_rows("noise-series", meta,
                         ["epsilon", "t", "p_mean", "p_min", "p_max"], rows)
    write_record(record, opts.get("out", "-", str), opts.get("format", "csv", str))
    return 0


def run_gauge_check(opts: Options) -> int:
    field_spec = opts.get("field", "", str)
    a, b, coin_label = parse_coin(opts.get("coin", "hadamard", str))
    t_steps = opts.get("tmax", 50, int)
    trials = opts.get("trials", 20, int)
    seed = opts.get("seed", 0, int)
    if t_steps < 1 or trials < 1:
        raise ConfigError("tmax and trials must be positive")
    if field_spec:
        fields = [parse_field(field_spec)]
    else:
        fields = [Field.rational(1, 10), Field.golden()]
    coin = WalkParams(field=fields[0], coin_a=a, coin_b=b).coin
    rows = []
    worst = 0.0
    for field in fields:
        dev = verify_gauge_equivalence(field.value, coin, t_steps,
                                       trials=trials, seed=seed)
        worst = max(worst, dev)
        rows.append((field.label, t_steps, trials, dev, dev <= GAUGE_CHECK_TOL))
    meta = _common_meta(opts, None, coin_label)
    meta.update({"tmax": t_steps, "trials": trials, "seed": seed,
                 "tolerance": GAUGE_CHECK_TOL, "worst_deviation": worst})
    record = record_rows("gauge-check", meta,
                         ["field", "t", "trials", "max_deviation", "pass"], rows)
    write_record(record, opts.get("out", "-", str), opts.get("format", "csv", str))
    return 0 if worst <= GAUGE_CHECK_TOL else 3


def run_appendix_table(opts: Options) -> int:
    m_list = parse_int_list(opts.get("m_list", "2,3,4,5,6,7,8,9,10,11,12", str))
    if any(m < 1 for m in m_list):
        raise ConfigError("m values must be positive")
    rows = []
    for coin_name, report, expected in appendix_table(m_list):
        rows.append((coin_name, report.m, report.parity, report.revival_time,
                     report.sign, report.measured_deviation, expected,
                     abs(report.measured_deviation - expected) <= 1e-9))
    meta = {"m_list": ",".join(str(m) for m in m_list)}
    record = record_rows("appendix-table", meta,
                         ["coin", "m", "parity", "revival_time", "sign",
                          "measured_deviation", "expected_deviation", "match"],
                         rows)
    write_record(record, opts.get("out", "-", str), opts.get("format", "csv", str))
    return 0


def run_bloch_trace(opts: Options) -> int:
    field = parse_field(opts.get("field", "golden", str))
    a, b, coin_label = parse_coin(opts.get("coin", "hadamard", str))
    t_max = opts.get("tmax", 1000, int)
    x0 = opts.get("x0", 0, int)
    spinor = parse_spinor(opts.get("spinor", "1,0", str))
    if t_max < 1:
        raise ConfigError("tmax must be positive")
    params = WalkParams(field=field, coin_a=a, coin_b=b)
    state = WalkState.single_site(x=x0, spinor=spinor)
    rows = []
    sx0, sy0, sz0 = bloch_vector(state, 0)
    rows.append((0, sx0, sy0, sz0,
                 math.sqrt(sx0 ** 2 + sy0 ** 2 + sz0 ** 2)))
    nearest_t = None
    nearest_dist = math.inf
    for t in range(1, t_max + 1):
        state = evolve(state, t, t, params)
        sx, sy, sz = bloch_vector(state, 0)
        r = math.sqrt(sx ** 2 + sy ** 2 + sz ** 2)
        rows.append((t, sx, sy, sz, r))
        dist = math.sqrt((sx - sx0) ** 2 + (sy - sy0) ** 2 + (sz - sz0) ** 2)
        if dist < nearest_dist:
            nearest_dist = dist
            nearest_t = t
    meta = _common_meta(opts, field, coin_label)
    meta.update({"tmax": t_max, "x0": x0,
                 "spinor": opts.get("spinor", "1,0", str),
                 "nearest_return_t": nearest_t,
                 "nearest_return_dist": nearest_dist})
    record = record_rows("bloch-trace", meta, ["t", "sx", "sy", "sz", "r"], rows)
    write_record(record, opts.get("out", "-", str), opts.get("format", "csv", str))
    return 0


HANDLERS = {
    "evolve": run_evolve,
    "revival-scan": run_revival_scan,
    "trace-check": run_trace_check,
    "cf": run_cf,
    "noise-series": run_noise_series,
    "gauge-check": run_gauge_check,
    "appendix-table": run_appendix_table,
    "bloch-trace": run_bloch_trace,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpwalk",
        description="Quantum-walk experiments with a quasi-periodically "
                    "time-dependent coin.")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in HANDLERS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", help="key=value config file; flags override")
        p.add_argument("--field", help="phi/(2*pi): n/m, a float, or 'golden'")
        p.add_argument("--coin", help="hadamard | identity | i-sigma-y | a,b")
        p.add_argument("--tmax", help="number of steps (or horizon)")
        p.add_argument("--epsilon", help="noise amplitude(s), comma separated")
        p.add_argument("--seed", help="master RNG seed")
        p.add_argument("--ensemble", help="ensemble size for noise runs")
        p.add_argument("--out", help="output path, '-' for stdout (default)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--m-list", dest="m_list", help="comma-separated m values")
        p.add_argument("--depth", help="continued-fraction depth")
        p.add_argument("--trials", help="number of random trials")
        p.add_argument("--noise-support", dest="noise_support",
                       choices=("pm1", "01"), help="x_t support: [-1,1] or [0,1]")
        p.add_argument("--spinor", help="initial spinor 'up,down' (normalized)")
        p.add_argument("--x0", help="initial site")
        p.add_argument("--stride", help="emit every stride-th step (evolve)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config_file(args.config) if args.config else {}
        handler = HANDLERS[args.experiment]
        return handler(Options(args, cfg))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
