"""
lpp 命令行：每个实验族一个子命令，外加 report

退出码：0 成功，1 验证未通过，2 参数或配置错误，3 运行期错误。
结果写到 --out 或标准输出；进度与日志只写标准错误。
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from config import Config
from core.estimators import ReplicatePool
from core.exceptions import VALIDATION_ERROR_CODES, LPPError
from core.experiments import report, run_experiment, write_rows
from core.experiments.output import infer_format
from core.log import setup_logging
from data_models import EXPERIMENTS, ExperimentSpec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

# 命令行参数名 -> ExperimentSpec 字段名
FLAG_FIELDS = {
    "dist": "distribution",
    "t": "t",
    "t_list": "t_list",
    "r": "r",
    "r_list": "r_list",
    "eps": "eps",
    "n": "n",
    "n_list": "n_list",
    "k": "k",
    "samples": "n_samples",
    "budget": "budget",
    "method": "method",
    "tilt": "tilt",
    "halfwidth": "halfwidth",
    "spacing": "spacing",
    "offset": "offset",
    "mu0": "mu0",
    "max_n": "max_n",
    "fields": "fields",
    "seed": "seed",
    "workers": "workers",
    "out": "output",
    "format": "format",
}


def experiment_arguments() -> argparse.ArgumentParser:
    """所有实验子命令共用的参数；未给出的参数不覆盖配置文件"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("-c", "--config", type=str, default=None, help="Flat YAML experiment file; flags override it")
    parser.add_argument("--dist", type=str, default=None, help="Weight law, e.g. exp:1 or gamma:2,1")
    parser.add_argument("--t", type=float, default=None, help="Direction t")
    parser.add_argument("--t-list", type=str, default=None, help="Comma separated directions")
    parser.add_argument("--r", type=float, default=None, help="Level r")
    parser.add_argument("--r-list", type=str, default=None, help="Comma separated levels for convexity")
    parser.add_argument("--eps", type=float, default=None, help="Left-tail deficit epsilon")
    parser.add_argument("--n", type=int, default=None, help="Scale n")
    parser.add_argument("--n-list", type=str, default=None, help="Scales as a..b:step or comma separated")
    parser.add_argument("--k", type=int, default=None, help="Midpoint offset for uniform-walk")
    parser.add_argument("--samples", type=str, default=None, help="Replicates per n (accepts 1e6)")
    parser.add_argument("--budget", type=str, default=None, help="Tilted replicates per side for identity")
    parser.add_argument("--method", choices=["direct", "tilted"], default=None, help="Sampling method")
    parser.add_argument("--tilt", type=float, default=None, help="Tilt lambda (default: Cramer-optimal)")
    parser.add_argument("--halfwidth", type=int, default=None, help="Corridor halfwidth (default ceil(n^(2/3)))")
    parser.add_argument("--spacing", type=int, default=None, help="Corridor waypoint spacing")
    parser.add_argument("--offset", type=float, default=None, help="Corridor direction offset")
    parser.add_argument("--mu0", type=float, default=None, help="Diagonal shape value for non-exponential laws")
    parser.add_argument("--max-n", type=int, default=None, help="Largest n for verify")
    parser.add_argument("--fields", type=int, default=None, help="Random fields per n for verify")
    parser.add_argument("--seed", type=int, default=None, help=f"Seed (default {Config.DEFAULT_SEED})")
    parser.add_argument("--workers", type=int, default=None, help=f"Worker threads (default {Config.WORKERS})")
    parser.add_argument("-o", "--out", type=str, default=None, help="Output path (default stdout)")
    parser.add_argument("--format", choices=["csv", "jsonl"], default=None, help="Output format")
    parser.add_argument("--timing", action="store_true", default=None, help="Fill wall_time_s")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpp", description="Last-passage percolation simulation lab")
    parser.add_argument("--log-level", type=str, default=None, help=f"Log level (default {Config.LOG_LEVEL})")
    parser.add_argument("--log-file", type=str, default=None, help="Also log to a rotating file")
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = experiment_arguments()
    for name in EXPERIMENTS:
        subparsers.add_parser(name, parents=[common], help=f"Run the {name} experiment")

    report_parser = subparsers.add_parser("report", help="Summarize a result file")
    report_parser.add_argument("path", type=str, help="CSV or JSONL result file")
    return parser


def spec_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides = {"experiment": args.command}
    for flag, field_name in FLAG_FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field_name] = value
    if args.timing:
        overrides["timing"] = True
    if "format" not in overrides and args.out:
        overrides["format"] = infer_format(args.out)
    return overrides


def load_spec(args: argparse.Namespace) -> ExperimentSpec:
    overrides = spec_overrides(args)
    if args.config:
        return ExperimentSpec.from_file(args.config, overrides)
    return ExperimentSpec.build(overrides)


def exit_code_for(error_code: Optional[str]) -> int:
    return EXIT_VALIDATION if error_code in VALIDATION_ERROR_CODES else EXIT_RUNTIME


def run_report(path: str) -> int:
    try:
        summary = report(path)
    except LPPError as e:
        logger.error(e.message)
        return exit_code_for(e.error_code)
    except OSError as e:
        logger.error(f"Cannot read {path}: {e}")
        return EXIT_RUNTIME
    print(summary.render())
    return EXIT_OK


def run_command(args: argparse.Namespace) -> int:
    try:
        spec = load_spec(args)
    except LPPError as e:
        logger.error(e.message)
        return EXIT_VALIDATION
    except OSError as e:
        logger.error(f"Cannot read config file {args.config}: {e}")
        return EXIT_VALIDATION

    pool = ReplicatePool(workers=spec.workers)
    result = run_experiment(spec, pool)
    if not result:
        logger.error(f"{result.experiment_name} failed [{result.error_code}]: {result.error}")
        return exit_code_for(result.error_code)

    try:
        write_rows(result.rows, spec.output, spec.format)
    except OSError as e:
        logger.error(f"Cannot write results to {spec.output}: {e}")
        return EXIT_RUNTIME

    if not result.passed:
        logger.error(f"{spec.experiment}: verification failed")
        return EXIT_FAILED_CHECK
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, args.log_file)
    try:
        if args.command == "report":
            return run_report(args.path)
        return run_command(args)
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
