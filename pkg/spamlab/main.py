#!/usr/bin/env python3
"""
spamlab - Command-line front end
Runs purification closed forms, verification, network applications and the
oracle cross-check, and writes the results as CSV or JSON
"""

import argparse
import json
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from config.settings import load_config_file, settings
from .commands import CommandResult
from .commands import distill, fixed_point, oracle_check, purify, swap, tables, verify
from .emit import emit
from .errors import InvalidInputError, SpamLabError
from .models import OutcomeDistribution, RunConfig
from .utils import TimingContext, parse_range

logger = logging.getLogger(__name__)

Handler = Callable[[RunConfig], CommandResult]

# Register commands
HANDLERS: Dict[str, Handler] = {
    "purify-prep": purify.run_prep,
    "purify-meas": purify.run_meas,
    "fixed-point": fixed_point.run_fixed_point,
    "condition": fixed_point.run_condition,
    "verify": verify.run_verify,
    "distill": distill.run_distill,
    "swap": swap.run_swap,
    "tables": tables.run_tables,
    "oracle-check": oracle_check.run_oracle_check,
}

SWEEP_KEYS = ("f", "q", "eps", "F0")
PROB_KEYS = ("p00", "p01", "p10", "p11")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spamlab", description="SPAM purification toolkit")
    parser.add_argument("command", choices=sorted(HANDLERS), help="Command to run")
    parser.add_argument("--f", help="Preparation fidelity: value or a..b:step")
    parser.add_argument("--q", help="Measurement noise fraction: value or a..b:step")
    parser.add_argument("--eps", help="CNOT noise fraction: value or a..b:step")
    parser.add_argument("--n", "--m", dest="depth", help="Ancilla count: value or a..b")
    parser.add_argument("--F0", help="Initial Werner fidelity: value or a..b:step")
    parser.add_argument("--target", help="Target fidelity for distillation and verification reports")
    parser.add_argument("--probs", help='Outcome frequencies or shot counts, e.g. \'{"p00":666,"p01":154,"p10":90,"p11":90}\'')
    parser.add_argument("--output", help="Output file (directory for tables); stdout when omitted")
    parser.add_argument("--format", choices=["csv", "json"], help="Output format")
    parser.add_argument("--seed", help="Seed for the verification multi-start")
    parser.add_argument("--config", help="key=value run configuration file")
    parser.add_argument("--log-level", dest="log_level", help="Logging level")
    return parser


def _parse_probs(text: str) -> OutcomeDistribution:
    """Outcome frequencies or raw counts; counts are normalized to a distribution"""
    try:
        values = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"--probs is not valid JSON: {e}") from e
    if not isinstance(values, dict) or set(values) != set(PROB_KEYS):
        raise InvalidInputError("--probs must be a JSON object with keys p00, p01, p10, p11")
    counts = [values[key] for key in PROB_KEYS]
    if any(isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c) for c in counts):
        raise InvalidInputError("--probs values must be finite numbers")
    total = sum(counts)
    if total <= 0:
        raise InvalidInputError(f"--probs histogram has total weight {total!r}")
    if abs(total - 1.0) > settings.PROBABILITY_SUM_TOL:
        logger.info(f"📊 Normalized histogram of {total:g} shots")
    return OutcomeDistribution.from_counts(*counts)


def _validation_message(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in e['loc']) or 'value'}: {e['msg']}" for e in error.errors()
    )


def merge_sources(command: str, flags: Dict[str, Optional[str]], file_values: Dict[str, str]) -> Dict[str, Any]:
    """Flags override the config file, which overrides defaults"""
    raw: Dict[str, str] = {}
    for key, value in file_values.items():
        key = {"n": "depth", "m": "depth"}.get(key, key)
        raw[key] = value
    for key, value in flags.items():
        if value is not None:
            raw[key] = value

    fields: Dict[str, Any] = {"command": command}
    try:
        for key in SWEEP_KEYS:
            if key in raw:
                fields[key] = parse_range(raw[key])
        if "depth" in raw:
            fields["depth"] = [int(v) for v in parse_range(raw["depth"], integer=True)]
    except ValueError as e:
        raise InvalidInputError(f"bad range: {e}") from e
    if "probs" in raw:
        fields["probs"] = _parse_probs(raw["probs"])
    for key in ("target", "output", "format", "seed"):
        if key in raw:
            fields[key] = raw[key]
    return fields


def build_config(args: argparse.Namespace) -> RunConfig:
    file_values = load_config_file(args.config) if args.config else {}
    flags = {key: getattr(args, key) for key in ("f", "q", "eps", "depth", "F0", "target", "probs", "output", "format", "seed")}
    try:
        return RunConfig(**merge_sources(args.command, flags, file_values))
    except ValidationError as e:
        raise InvalidInputError(_validation_message(e)) from e


def run(config: RunConfig) -> int:
    """Execute one command and emit its records; returns the process exit code"""
    logger.info(f"🚀 spamlab {config.command}")
    try:
        with TimingContext() as timer:
            result = HANDLERS[config.command](config)
            if not result.written:
                emit(result.rows, config.format, config.output, schema=result.schema)
    except ValidationError as e:
        error = InvalidInputError(_validation_message(e))
        logger.error(f"❌ {error}")
        return error.exit_code
    except SpamLabError as e:
        logger.error(f"❌ {e}")
        return e.exit_code
    logger.info(f"✅ {config.command} finished in {timer.elapsed_ms} ms")
    if result.flagged:
        logger.warning(f"⚠️ {result.flagged}")
        return 2
    return 0


def _log_level(args: argparse.Namespace) -> str:
    if args.log_level:
        return args.log_level.upper()
    if args.config:
        try:
            return load_config_file(args.config).get("log_level", settings.LOG_LEVEL).upper()
        except (OSError, UnicodeDecodeError):
            pass
    return settings.LOG_LEVEL


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1

    logging.basicConfig(
        level=getattr(logging, _log_level(args), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = build_config(args)
    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"❌ cannot read config file: {e}")
        return 1
    except SpamLabError as e:
        logger.error(f"❌ {e}")
        return e.exit_code
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
