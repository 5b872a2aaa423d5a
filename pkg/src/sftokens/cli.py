"""Command-line surface: plan, sweep, arrange, check.

Exit codes are a stable contract: 0 success, 1 usage or config error,
2 context overflow (plan), 3 self-check failure. Output is deterministic
for a given config and seed; ``SFT_NO_COLOR=1`` disables ANSI styling.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import budget, config as cfgmod, selfcheck
from .errors import ConfigError, DegenerateResize, InvalidOutputShape, NonDivisibleStride, PartitionViolation
from .geometry import PatchGrid, Resolution
from .kernels import synth_features
from .projector import project_video

_GREEN = "\033[32m"
_RED = "\033[31m"
_RESET = "\033[0m"


def _color_enabled() -> bool:
    if os.environ.get("SFT_NO_COLOR") == "1":
        return False
    return sys.stdout.isatty()


def _style(text: str, code: str) -> str:
    if _color_enabled():
        return f"{code}{text}{_RESET}"
    return text


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems map to exit code 1, not argparse's 2
        raise ConfigError(message)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="config file (path or bundled name)")
    parser.add_argument(
        "--set",
        metavar="KEY=VALUE",
        action="append",
        dest="overrides",
        default=[],
        help="override a config key (repeatable)",
    )
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default=None, help="output format"
    )
    parser.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")
    parser.add_argument("--seed", type=int, default=42, help="seed for seeded commands")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sft", description="Video token budget planning and self-checks.")
    sub = parser.add_subparsers(dest="command")
    for name, handler, doc in (
        ("plan", _cmd_plan, "compute one token budget and report context fit"),
        ("sweep", _cmd_sweep, "compute budgets for every config row"),
        ("arrange", _cmd_arrange, "emit the token layout for one config"),
        ("check", _cmd_check, "run kernel oracles and golden sweep checks"),
    ):
        p = sub.add_parser(name, help=doc)
        _add_common(p)
        p.set_defaults(handler=handler)
    return parser


def _emit(text: str, out_path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _text_allowance(doc: dict) -> int:
    value = doc.get("text_allowance", budget.DEFAULT_TEXT_ALLOWANCE)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(f"text_allowance must be a non-negative integer, got {value!r}")
    return value


def _fit_word(report: budget.BudgetReport) -> str:
    if report.fits_context:
        return _style("fits", _GREEN)
    return _style("overflow", _RED)


def _plan_text(report: budget.BudgetReport, context_length: int) -> str:
    lines = [
        f"slow tokens       {report.slow_tokens}",
        f"fast tokens       {report.fast_tokens}",
        f"separators        {report.separator_tokens}",
        f"content tokens    {report.content_tokens} ({report.rounded_label})",
        f"total tokens      {report.total_tokens}",
        f"text allowance    {report.text_allowance}",
        f"context {context_length}:  {_fit_word(report)}",
    ]
    return "\n".join(lines)


def _cmd_plan(args) -> int:
    doc = cfgmod.load_config(args.config, args.overrides)
    stage = cfgmod.stage_from_config(doc)
    allowance = _text_allowance(doc)
    fmt = args.format or "json"

    if stage.has_video:
        pathway = cfgmod.pathway_from_config(doc)
        grid = budget.stage_video_grid(stage)
        report = budget.video_budget(pathway, grid, stage, allowance)
        if fmt == "csv":
            text = budget.sweep_csv([pathway], [report])
        elif fmt == "json":
            text = json.dumps(report.to_json_dict(), indent=2)
        else:
            text = _plan_text(report, stage.context_length)
    else:
        # Image-only stage: budget the worst case, a max-area patch-aligned square.
        side = math.isqrt(stage.max_image_area) // stage.patch * stage.patch
        if side < stage.patch:
            raise ConfigError("max_image_area too small for one patch")
        report = budget.image_budget(Resolution(side, side), stage, allowance)
        if fmt == "csv":
            raise ConfigError("csv format applies to video plans only")
        if fmt == "json":
            text = json.dumps(report.to_json_dict(), indent=2)
        else:
            text = _plan_text(report, stage.context_length)

    _emit(text, args.out)
    return 0 if report.fits_context else 2


def _cmd_sweep(args) -> int:
    doc = cfgmod.load_config(args.config, args.overrides)
    stage = cfgmod.stage_from_config(doc)
    if not stage.has_video:
        raise ConfigError("sweep needs a video-capable stage config")
    allowance = _text_allowance(doc)
    configs, labels = cfgmod.sweep_configs(doc)
    grid = budget.stage_video_grid(stage)
    reports = budget.sweep(configs, grid, stage, allowance)
    fmt = args.format or "csv"

    if fmt == "csv":
        text = budget.sweep_csv(configs, reports)
    elif fmt == "json":
        rows = []
        for label, cfg, rep in zip(labels, configs, reports):
            row = {
                "label": label,
                "n_slow": cfg.n_slow,
                "n_fast": cfg.n_fast,
                "n_total": cfg.n_total,
                "arrangement": cfg.arrangement.value,
            }
            row.update(rep.to_json_dict())
            rows.append(row)
        text = json.dumps(rows, indent=2)
    else:
        width = max(len(label) for label in labels)
        lines = []
        for label, cfg, rep in zip(labels, configs, reports):
            lines.append(
                f"{label:<{width}}  slow={cfg.n_slow:<3} fast={cfg.n_fast:<3} "
                f"total={cfg.n_total:<3} {cfg.arrangement.value}  "
                f"content={rep.content_tokens:<6} ({rep.rounded_label:>3})  {_fit_word(rep)}"
            )
        text = "\n".join(lines)

    _emit(text, args.out)
    return 0


def _cmd_arrange(args) -> int:
    doc = cfgmod.load_config(args.config, args.overrides)
    pathway = cfgmod.pathway_from_config(doc)
    if "grid_rows" in doc or "grid_cols" in doc:
        if not ("grid_rows" in doc and "grid_cols" in doc):
            raise ConfigError("grid_rows and grid_cols must be set together")
        for key in ("grid_rows", "grid_cols"):
            if isinstance(doc[key], bool) or not isinstance(doc[key], int):
                raise ConfigError(f"{key} must be an integer, got {doc[key]!r}")
        grid = PatchGrid(doc["grid_rows"], doc["grid_cols"])
    else:
        stage = cfgmod.stage_from_config(doc)
        if not stage.has_video:
            raise ConfigError("arrange needs grid_rows/grid_cols or a video-capable stage")
        grid = budget.stage_video_grid(stage)
    channels = doc.get("channels", 1)
    if isinstance(channels, bool) or not isinstance(channels, int) or channels < 1:
        raise ConfigError(f"channels must be a positive integer, got {channels!r}")

    frames = [synth_features(i, grid, channels) for i in range(pathway.n_total)]
    sequence = project_video(frames, pathway)
    _emit("\n".join(sequence.layout_lines()), args.out)
    return 0


def _cmd_check(args) -> int:
    results = selfcheck.run_checks(seed=args.seed)
    lines = []
    for res in results:
        verdict = _style("ok", _GREEN) if res.passed else _style("FAIL", _RED)
        lines.append(f"{verdict:<4} {res.name}: {res.detail}")
    _emit("\n".join(lines), args.out)
    return 0 if all(res.passed for res in results) else 3


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "handler"):
            parser.print_help(sys.stderr)
            return 1
        return args.handler(args)
    except (
        ConfigError,
        DegenerateResize,
        NonDivisibleStride,
        InvalidOutputShape,
        PartitionViolation,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
