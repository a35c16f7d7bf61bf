"""Command-line front end: presets, parameter sweeps, and oracle checks.

Examples
--------
Reproduce a built-in figure data set::

    zenobath --preset fig3d --output fig3d.csv

Custom sweep with two measurement schedules::

    zenobath --n 4 --coupling-ratio 0.1 --detuning-over-kappa 2 \\
             --tau-max 50 --tau-step 0.01 \\
             --measure-interval 0.5 --measure-interval 5

Every parameter may also come from a config file of ``key = value``
lines (``--config run.cfg``); explicit flags override the file.  Exit
codes: 0 success, 1 usage error, 2 oracle-check failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core_model import SystemParams
from .sweep import (
    OUTPUT_KINDS,
    Scenario,
    get_preset,
    list_presets,
    run_oracle_check,
    run_scenario,
)

__all__ = ["build_parser", "main"]

_CONFIG_KEYS = {
    "preset",
    "n",
    "coupling_ratio",
    "detuning_over_kappa",
    "tau_max",
    "tau_step",
    "measure_interval",
    "series",
    "output",
    "format",
    "oracle_check",
}
_LIST_KEYS = {"measure_interval", "series"}


class _ArgumentParser(argparse.ArgumentParser):
    """argparse's parser, with usage problems mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="zenobath",
        description=(
            "Entanglement dynamics of qubits sharing a Lorentzian bath: "
            "survival, pairwise concurrence, and repeated-measurement "
            "(Zeno / anti-Zeno) series as CSV or JSON."),
        epilog="Dimensionless inputs: R = g/kappa, delta/kappa, tau = kappa t.")
    parser.add_argument("--preset", metavar="NAME",
                        help="start from a built-in figure-data preset "
                             "(see --list-presets); other flags override it")
    parser.add_argument("--list-presets", action="store_true",
                        help="print the preset table and exit")
    parser.add_argument("--n", type=int, help="number of qubits (n >= 2 for concurrence)")
    parser.add_argument("--coupling-ratio", type=float, metavar="R",
                        help="coupling ratio R = g/kappa")
    parser.add_argument("--detuning-over-kappa", type=float, metavar="D",
                        help="detuning delta/kappa (default 0)")
    parser.add_argument("--tau-max", type=float, help="end of the tau grid (default 10)")
    parser.add_argument("--tau-step", type=float, help="tau grid spacing (default 0.01)")
    parser.add_argument("--measure-interval", type=float, action="append",
                        metavar="T", help="measurement interval kappa T; repeatable")
    parser.add_argument("--series", action="append", choices=OUTPUT_KINDS,
                        metavar="KIND",
                        help=f"requested series (repeatable); one of {', '.join(OUTPUT_KINDS)}")
    parser.add_argument("--output", metavar="PATH",
                        help="write to PATH instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), dest="format",
                        help="output format (default csv)")
    parser.add_argument("--config", metavar="PATH",
                        help="key = value file supplying any of the above; flags win")
    parser.add_argument("--oracle-check", choices=("fast", "full"),
                        help="cross-validate the solvers on this scenario "
                             "before emitting data (report on stderr)")
    return parser


def _read_config(path: str) -> dict[str, object]:
    """Parse a `key = value` config file into raw string values."""
    out: dict[str, object] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if not sep or not key or not value:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _LIST_KEYS:
            items = [v.strip() for v in value.split(",") if v.strip()]
            out.setdefault(key, []).extend(items)  # type: ignore[union-attr]
        else:
            out[key] = value
    return out


def _coerce(parser: argparse.ArgumentParser, key: str, value):
    """Convert a raw config string to the matching flag's type."""
    try:
        if key == "n":
            return int(value)
        if key in ("coupling_ratio", "detuning_over_kappa", "tau_max", "tau_step"):
            return float(value)
        if key == "measure_interval":
            return [float(v) for v in value]
        if key == "series":
            bad = [v for v in value if v not in OUTPUT_KINDS]
            if bad:
                raise ValueError(f"unknown series {bad}")
            return list(value)
        if key == "format" and value not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {value!r}")
        if key == "oracle_check" and value not in ("fast", "full"):
            raise ValueError(f"oracle_check must be fast or full, got {value!r}")
    except (TypeError, ValueError) as exc:
        parser.error(f"config value for {key}: {exc}")
    return value


def _build_scenario(parser: argparse.ArgumentParser, pick) -> Scenario:
    preset_name = pick("preset")
    base: Scenario | None = None
    if preset_name:
        try:
            base = get_preset(preset_name)
        except ValueError as exc:
            parser.error(str(exc))

    n = pick("n")
    ratio = pick("coupling_ratio")
    delta = pick("detuning_over_kappa")
    tau_max = pick("tau_max")
    tau_step = pick("tau_step")
    intervals = pick("measure_interval")
    series = pick("series")
    if series:
        series = list(dict.fromkeys(series))  # dedupe, keep order

    if base is not None:
        params = SystemParams.from_ratio(
            n if n is not None else base.params.n,
            ratio if ratio is not None else base.params.coupling_ratio,
            delta if delta is not None else base.params.delta)
        outputs = tuple(series) if series else base.outputs
        detunings = base.detunings
        if delta is not None and "delta_concurrence" in outputs:
            detunings = (float(delta),)
        scenario_kwargs = dict(
            params=params,
            tau_max=tau_max if tau_max is not None else base.tau_max,
            tau_step=tau_step if tau_step is not None else base.tau_step,
            schedules=tuple(intervals) if intervals is not None else base.schedules,
            outputs=outputs,
            detunings=detunings,
            name=base.name)
    else:
        if n is None or ratio is None:
            parser.error("--n and --coupling-ratio are required without --preset")
        delta = 0.0 if delta is None else float(delta)
        intervals = tuple(intervals) if intervals else ()
        if series:
            outputs = tuple(series)
        elif intervals:
            outputs = ("survival", "concurrence", "measured_concurrence")
        else:
            outputs = ("survival", "concurrence")
        detunings = (delta,) if "delta_concurrence" in outputs else ()
        scenario_kwargs = dict(
            params=SystemParams.from_ratio(n, ratio, delta),
            tau_max=tau_max if tau_max is not None else 10.0,
            tau_step=tau_step if tau_step is not None else 0.01,
            schedules=intervals,
            outputs=outputs,
            detunings=detunings,
            name=None)

    try:
        return Scenario(**scenario_kwargs)
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")  # parser.error always exits


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.list_presets:
        print(list_presets())
        return 0

    config: dict[str, object] = {}
    if args.config:
        try:
            config = _read_config(args.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))

    def pick(key: str):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        if key in config:
            return _coerce(parser, key, config[key])
        return None

    try:
        scenario = _build_scenario(parser, pick)
    except ValueError as exc:
        parser.error(str(exc))

    oracle_level = pick("oracle_check")
    oracle_status = "not run"
    oracle_failed = False
    if oracle_level:
        report = run_oracle_check(scenario, oracle_level)
        print(report.summary(), file=sys.stderr)
        oracle_status = f"{'pass' if report.passed else 'fail'} ({oracle_level})"
        oracle_failed = not report.passed

    result = run_scenario(scenario, oracle_status=oracle_status)
    text = result.to_json_text() if pick("format") == "json" else result.to_csv_text()

    output = pick("output")
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return 2 if oracle_failed else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
