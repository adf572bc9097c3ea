import argparse
import json
import re
import sys
from pathlib import Path
from typing import Callable, Optional

from . import api
from .config import RunConfig, load_config, merge_cli_overrides
from .errors import NuSubdivError, SizeGuardError
from .export import (
    dual_graph_to_dot,
    dumps,
    graph_to_dot,
    graph_to_json,
    graph_to_text,
    hasse_to_dot,
    indexed_path_to_json,
    indexed_path_to_text,
    poly_to_json,
    report_to_json,
    report_to_text,
    routes_to_json,
    routes_to_text,
    steps_to_jsonl,
    triangulation_from_json,
    triangulation_to_json,
    triangulation_to_text,
    trees_to_json,
    trees_to_text,
)
from .orders import LENGTH_VARIANTS, list_orders

_CONTROL_CHAR_RE = re.compile(r"[\x00-\x1f\x7f]")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2
EXIT_GUARD = 3


class _UnsupportedFormat(ValueError):
    pass


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-c", "--config", type=Path, default=None, help="Path to config.yaml (optional)"
    )
    common.add_argument(
        "--format",
        choices=("json", "dot", "text"),
        default=None,
        help="Output format (default: text, or output.format from the config)",
    )
    common.add_argument(
        "-o", "--out", type=Path, default=None, help="Write the output to this file"
    )
    common.add_argument(
        "--order", choices=list_orders(), default=None, help="Reduction order (default: rho-len)"
    )
    common.add_argument(
        "--length-variant",
        choices=LENGTH_VARIANTS,
        default=None,
        help="Cyclic edge length used by rho-len (default: span)",
    )
    common.add_argument(
        "--beta",
        choices=("full", "0"),
        default=None,
        help="'0' reduces P(β=0); 'full' keeps the β-graded faces (default: 0)",
    )
    common.add_argument("--seed", type=int, default=None, help="Seed for the random order")
    common.add_argument(
        "--trials", type=int, default=None, help="Random probes per cover check (default: 1000)"
    )
    common.add_argument(
        "--force",
        action="store_true",
        default=None,
        help="Run even when the path exceeds a size guard",
    )
    return common


def _build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="nu-subdiv",
        description="Lattice-path flow graphs, subdivision-algebra reductions and "
        "certified triangulations of products of simplices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", parents=[common], help="Show ν̄ = EνN with canonical indices")
    p_index.add_argument("path", help="Lattice path over E and N (may be empty)")

    p_graph = sub.add_parser("graph", parents=[common], help="Build a ν-graph")
    p_graph.add_argument("path")
    p_graph.add_argument(
        "--graph",
        dest="kind",
        choices=api.GRAPH_KINDS,
        default="nu",
        help="Which graph to build (default: nu)",
    )
    p_graph.add_argument("--cell", type=int, default=None, help="Cell index for --graph cell")
    p_graph.add_argument(
        "--cells", type=_cell_list, default=None, help="Comma-separated cells, e.g. 1,2"
    )
    p_graph.add_argument(
        "--augment", choices=api.AUGMENTATIONS, default="none", help="Terminal edges (default: none)"
    )

    p_routes = sub.add_parser("routes", parents=[common], help="Routes of the augmented G_B(ν)")
    p_routes.add_argument("path")
    p_routes.add_argument(
        "--cells", type=_cell_list, default=None, help="Keep routes lying in these cells"
    )

    p_reduce = sub.add_parser("reduce", parents=[common], help="Reduce P_ν")
    p_reduce.add_argument("path")
    p_reduce.add_argument(
        "--steps", type=Path, default=None, help="Also write the step log as JSON lines"
    )

    p_tri = sub.add_parser("triangulate", parents=[common], help="Triangulate Δ_a×Δ_b from ν")
    p_tri.add_argument("path")

    p_tamari = sub.add_parser("tamari", parents=[common], help="(I,J)-trees and their flips")
    p_tamari.add_argument("path")
    p_tamari.add_argument(
        "--mode", choices=api.TAMARI_MODES, default="cyclic", help="Tree family (default: cyclic)"
    )

    p_verify = sub.add_parser("verify", parents=[common], help="Certify the triangulation of ν")
    p_verify.add_argument("path", nargs="?", default=None)
    p_verify.add_argument(
        "--triangulation",
        type=Path,
        default=None,
        help="Certify a saved triangulation JSON instead of building one",
    )

    p_sweep = sub.add_parser("sweep", parents=[common], help="Verify every ν up to a size")
    p_sweep.add_argument("--max-size", type=int, required=True, help="Largest a + b to check")
    return parser


def _cell_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid cell list '{text}'") from exc


def _render(fmt: str, **renderers: Callable[[], str]) -> str:
    if fmt not in renderers:
        raise _UnsupportedFormat(
            f"format '{fmt}' is not available here (choose from {', '.join(renderers)})"
        )
    return renderers[fmt]()


def _cmd_index(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    p = api.index(run.path)
    text = _render(
        run.config.output.format,
        text=lambda: indexed_path_to_text(p),
        json=lambda: dumps(indexed_path_to_json(p)),
    )
    return text, EXIT_OK


def _cmd_graph(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    cells = list(args.cells or [])
    if args.cell is not None:
        cells.append(args.cell)
    g = api.graph(run.path, kind=args.kind, cells=cells, augment=args.augment, config=run.config)
    text = _render(
        run.config.output.format,
        text=lambda: graph_to_text(g),
        json=lambda: dumps(graph_to_json(g)),
        dot=lambda: graph_to_dot(g),
    )
    return text, EXIT_OK


def _cmd_routes(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    g, found = api.routes(run.path, cells=args.cells, config=run.config)
    text = _render(
        run.config.output.format,
        text=lambda: routes_to_text(found, g),
        json=lambda: dumps(routes_to_json(found, g)),
    )
    return text, EXIT_OK


def _cmd_reduce(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    reduction = api.reduce(run.path, config=run.config)
    if args.steps is not None:
        steps_path = _sanitize_cli_path(args.steps, arg_name="steps path")
        steps_path.write_text(steps_to_jsonl(reduction.steps), encoding="utf-8")
        print(f"Written → {steps_path}")
    poly = reduction.normal_form
    text = _render(
        run.config.output.format,
        text=lambda: f"{poly}\n{len(poly)} terms after {len(reduction.steps)} steps",
        json=lambda: dumps(
            {
                "order": run.config.reduction.order,
                "beta": run.config.reduction.beta,
                "normal_form": poly_to_json(poly),
                "steps": [list(t) for t in reduction.triples],
            }
        ),
    )
    return text, EXIT_OK


def _cmd_triangulate(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    t = api.triangulate(run.path, config=run.config)
    text = _render(
        run.config.output.format,
        text=lambda: triangulation_to_text(t),
        json=lambda: dumps(triangulation_to_json(t)),
        dot=lambda: dual_graph_to_dot(t),
    )
    return text, EXIT_OK


def _cmd_tamari(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    result = api.tamari(run.path, mode=args.mode, config=run.config)
    text = _render(
        run.config.output.format,
        text=lambda: trees_to_text(result.trees),
        json=lambda: dumps(
            {
                "mode": result.mode,
                "trees": trees_to_json(result.trees),
                "covers": [list(edge) for edge in sorted(result.hasse.edges())],
            }
        ),
        dot=lambda: hasse_to_dot(result.hasse),
    )
    return text, EXIT_OK


def _cmd_verify(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    if args.triangulation is not None:
        source = _sanitize_cli_path(args.triangulation, arg_name="triangulation path", must_exist=True)
        try:
            data = json.loads(source.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{source}: invalid JSON ({exc.msg})") from exc
        report = api.verify(triangulation=triangulation_from_json(data), config=run.config)
    elif args.path is None:
        raise ValueError("verify needs a path or --triangulation FILE")
    else:
        report = api.verify(run.path, config=run.config)
    text = _render(
        run.config.output.format,
        text=lambda: report_to_text(report),
        json=lambda: dumps(report_to_json(report)),
    )
    return text, EXIT_OK if report.passed else EXIT_FAILED


def _cmd_sweep(args: argparse.Namespace, run: RunConfig) -> tuple[str, int]:
    reports = api.sweep(args.max_size, config=run.config)
    failed = [r for r in reports if not r.passed]
    text = _render(
        run.config.output.format,
        text=lambda: "\n".join(
            [report_to_text(r) for r in failed]
            + [f"{len(reports) - len(failed)}/{len(reports)} paths passed"]
        ),
        json=lambda: dumps(
            {
                "max_size": args.max_size,
                "passed": not failed,
                "reports": [report_to_json(r) for r in reports],
            }
        ),
    )
    return text, EXIT_OK if not failed else EXIT_FAILED


_COMMANDS = {
    "index": _cmd_index,
    "graph": _cmd_graph,
    "routes": _cmd_routes,
    "reduce": _cmd_reduce,
    "triangulate": _cmd_triangulate,
    "tamari": _cmd_tamari,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv: Optional[list[str]] = None) -> None:
    """CLI entry point: parse arguments, run one command, print or write its output."""
    args = _build_parser().parse_args(argv)

    try:
        config_path = _sanitize_cli_path(args.config, arg_name="config path", must_exist=True)
        run = RunConfig(
            command=args.command,
            path=getattr(args, "path", None) or "",
            config=merge_cli_overrides(
                load_config(config_path),
                order=args.order,
                length_variant=args.length_variant,
                beta=args.beta,
                seed=args.seed,
                trials=args.trials,
                force=args.force,
                format=args.format,
            ),
            out=_sanitize_cli_path(args.out, arg_name="output path"),
        )
        text, status = _COMMANDS[run.command](args, run)
    except SizeGuardError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(EXIT_GUARD)
    except (NuSubdivError, ValueError, TypeError, FileNotFoundError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(EXIT_ERROR)

    if run.out is not None:
        run.out.write_text(text + "\n", encoding="utf-8")
        print(f"Written → {run.out}")
    else:
        print(text)
    if status != EXIT_OK:
        sys.exit(status)


def _sanitize_cli_path(
    path: Optional[Path],
    *,
    arg_name: str,
    must_exist: bool = False,
) -> Optional[Path]:
    """Validate a user-provided filesystem path."""
    if path is None:
        return None

    raw = str(path)
    if _CONTROL_CHAR_RE.search(raw):
        raise ValueError(f"{arg_name} contains invalid control characters")

    if must_exist and not path.exists():
        raise FileNotFoundError(f"'{path}' not found.")

    return path


if __name__ == "__main__":
    main()
