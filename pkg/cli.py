"""
LatticeIQ command line.

    python cli.py verify scenarios/fixtures/fig4-g2-row-g.toml --out outputs/g2
    python cli.py run-all --fixtures scenarios/fixtures --format records
    python cli.py expand scenarios/fixtures/fig6a-hex.toml

Exit codes: 0 ok, 2 config error, 3 verification failure, 4 infeasible.
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from config import EXIT_CONFIG_ERROR, EXIT_OK
from errors import LatticeIQError
from runtime.dispatcher import execute_task, list_registered_tasks
from runtime.reports import REPORT_FORMATS, write_outputs
from scenarios import dump_scenario, expand_scenario, load_scenario

logger = logging.getLogger("cli")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Run-level seed (overrides the scenario)")
    common.add_argument("--tolerance", type=float, default=None, help="Verification tolerance override")
    common.add_argument("--out", default=None, help="Output directory for reports and artifacts")
    common.add_argument("--format", choices=REPORT_FORMATS, default="text", help="Report format")
    common.add_argument("--max-qubits", type=int, default=None, help="Statevector cap override (<= 24)")
    common.add_argument("--svg", action="store_true", help="Also write an SVG interaction graph (render)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="latticeiq", description="Logical-qubit compiler and verifier.")
    sub = parser.add_subparsers(dest="command", required=True)
    for key in list_registered_tasks():
        cmd = sub.add_parser(key, parents=[common], help=f"Run the {key} task on one scenario")
        cmd.add_argument("scenario", help="Scenario TOML file")

    run_all = sub.add_parser("run-all", parents=[common], help="Run every fixture of a library")
    run_all.add_argument("--fixtures", default=None, help="Fixture directory (defaults to the bundled library)")

    expand = sub.add_parser("expand", parents=[common], help="Print a scenario with its presets expanded")
    expand.add_argument("scenario", help="Scenario TOML file")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides = {
        "seed": args.seed,
        "tolerance": args.tolerance,
        "max_qubits": args.max_qubits,
        "svg": args.svg,
    }
    return {k: v for k, v in overrides.items() if v is not None}


def _configure_logging(level: Optional[str]) -> None:
    from settings import settings

    logging.basicConfig(
        level=getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stdout)],
    )


def _run_one(args: argparse.Namespace) -> int:
    from settings import settings

    scenario = load_scenario(args.scenario)
    response = asyncio.run(execute_task(args.command, scenario, _overrides(args)))
    out_dir = Path(args.out) if args.out else settings.output_path / scenario.name
    written = asyncio.run(write_outputs(response, out_dir, args.format))
    status = "ok" if response.get("success") else "FAILED"
    logger.info(f"{args.command} | {scenario.name} | {status} | exit={response['exit_code']} | {out_dir}")
    if response.get("error"):
        print(f"{scenario.name}: {response['error']}", file=sys.stderr)
    print(f"{scenario.name}: {status} ({len(written)} file(s) in {out_dir})")
    return int(response["exit_code"])


def _run_all(args: argparse.Namespace) -> int:
    from batch_runtime import run_all

    outcome = asyncio.run(run_all(args.fixtures, args.out, _overrides(args), args.format))
    if outcome["summary"]:
        print(outcome["summary"], end="")
    return int(outcome["exit_code"])


def _expand(args: argparse.Namespace) -> int:
    resolved = expand_scenario(load_scenario(args.scenario))
    text = dump_scenario(resolved.scenario)
    if args.out:
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        (target / f"{resolved.name}.toml").write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.log_level)

    try:
        if args.command == "run-all":
            return _run_all(args)
        if args.command == "expand":
            return _expand(args)
        return _run_one(args)
    except LatticeIQError as exc:
        logger.error(f"{args.command} | {type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        logger.error(f"{args.command} | {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
