"""Programmatic API: one function per CLI command, returning library objects."""
from __future__ import annotations

import warnings
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Optional

import networkx as nx

from .algebra import Reduction
from .config import Config, load_config, load_config_from_dict
from .errors import GraphError
from .flow import Route, ambient_cell_routes, ambient_graph, enumerate_routes
from .graph import (
    MixedGraph,
    bidirectional_nu_graph,
    cell_graph,
    full_augment,
    intersect_cell_graphs,
    nu_graph,
    partial_augment,
)
from .orders import ReductionOrder, get_order
from .path import IndexedPath, LatticePath, index_path
from .tamari import (
    IJForest,
    enumerate_cyclic_ij_trees,
    enumerate_increasing_ij_trees,
    hasse_graph,
    increasing_flip_covers,
)
from .triangulate import (
    Triangulation,
    VerificationReport,
    check_size,
    reduce_p_nu,
    triangulation_from_reduced,
    verify_all,
    verify_triangulation,
)
from .triangulate import sweep as _sweep

GRAPH_KINDS = ("nu", "bidirectional", "cell", "intersection")
AUGMENTATIONS = ("none", "partial", "full")
TAMARI_MODES = ("cyclic", "increasing")


@dataclass(frozen=True)
class TamariResult:
    trees: list[IJForest]
    hasse: nx.DiGraph
    mode: str


def index(path: str | LatticePath) -> IndexedPath:
    """ν̄ = EνN with canonical indices."""
    return index_path(path)


def graph(
    path: str | LatticePath,
    *,
    kind: str = "nu",
    cells: Optional[Iterable[int]] = None,
    augment: str = "none",
    config: Config | Mapping[str, Any] | str | Path | None = None,
) -> MixedGraph:
    """Build one of the ν-graphs.

    Args:
        path: Lattice path ν over ``E`` and ``N``.
        kind: ``nu`` for G(ν), ``bidirectional`` for G_B(ν), ``cell`` for
            G(ν, i) (needs exactly one cell) or ``intersection`` for the
            edge-wise intersection over *cells*.
        cells: Cell indices in ``1..w``.
        augment: ``none``, ``partial`` (labeled E/N terminal edges) or
            ``full`` (terminal edges at every vertex).
        config: Anything :func:`_resolve_config` accepts.
    """
    resolved = _resolve_config(config)
    p = _indexed(path, resolved)
    chosen = sorted(set(cells or ()))
    if kind == "nu":
        g = nu_graph(p)
    elif kind == "bidirectional":
        g = bidirectional_nu_graph(p)
    elif kind == "cell":
        if len(chosen) != 1:
            raise GraphError("the cell graph needs exactly one cell index")
        g = cell_graph(p, chosen[0])
    elif kind == "intersection":
        g = intersect_cell_graphs(p, chosen or range(1, p.w + 1))
    else:
        raise ValueError(f"Unknown graph kind: {kind}. Supported: {list(GRAPH_KINDS)}")

    if augment == "partial":
        return partial_augment(g, p)
    if augment == "full":
        return full_augment(g)
    if augment != "none":
        raise ValueError(f"Unknown augmentation: {augment}. Supported: {list(AUGMENTATIONS)}")
    return g


def routes(
    path: str | LatticePath,
    *,
    cells: Optional[Iterable[int]] = None,
    config: Config | Mapping[str, Any] | str | Path | None = None,
) -> tuple[MixedGraph, list[Route]]:
    """Routes of G̃_B(ν), optionally restricted to the cells Q_i, i in *cells*."""
    resolved = _resolve_config(config)
    p = _indexed(path, resolved)
    g = ambient_graph(p)
    if cells:
        return g, ambient_cell_routes(p, cells)
    return g, enumerate_routes(g)


def reduce(
    path: str | LatticePath,
    *,
    config: Config | Mapping[str, Any] | str | Path | None = None,
) -> Reduction:
    """Reduce P_ν under the configured order; ``beta: "0"`` reduces P_ν(β=0)."""
    resolved = _resolve_config(config)
    p = _indexed(path, resolved)
    return reduce_p_nu(
        p,
        _order(p, resolved),
        simple=resolved.reduction.beta == "0",
        max_steps=resolved.reduction.max_steps,
    )


def triangulate(
    path: str | LatticePath,
    *,
    config: Config | Mapping[str, Any] | str | Path | None = None,
) -> Triangulation:
    """Triangulation of Δ_a × Δ_b read from the reduced form of P_ν."""
    resolved = _resolve_config(config)
    p = _indexed(path, resolved)
    reduction = reduce_p_nu(
        p,
        _order(p, resolved),
        simple=resolved.reduction.beta == "0",
        max_steps=resolved.reduction.max_steps,
    )
    return triangulation_from_reduced(reduction.normal_form, p)


def tamari(
    path: str | LatticePath,
    *,
    mode: str = "cyclic",
    config: Config | Mapping[str, Any] | str | Path | None = None,
) -> TamariResult:
    """(I, J)-trees and the Hasse diagram of their increasing flips."""
    if mode not in TAMARI_MODES:
        raise ValueError(f"Unknown tamari mode: {mode}. Supported: {list(TAMARI_MODES)}")
    resolved = _resolve_config(config)
    p = _indexed(path, resolved)
    limit = _tree_limit(p, resolved)
    if mode == "cyclic":
        trees = enumerate_cyclic_ij_trees(p, max_size=limit)
    else:
        trees = enumerate_increasing_ij_trees(p, max_size=limit)
    return TamariResult(trees, hasse_graph(trees, increasing_flip_covers(trees)), mode)


def verify(
    path: str | LatticePath | None = None,
    *,
    triangulation: Optional[Triangulation] = None,
    config: Config | Mapping[str, Any] | str | Path | None = None,
) -> VerificationReport:
    """Run every certification on ν, or certify a stand-alone *triangulation*."""
    resolved = _resolve_config(config)
    _warn_length_variant(resolved)
    if triangulation is not None:
        check_size(
            triangulation.path,
            resolved.guards.max_verify_size,
            resolved.guards.force,
            "verification",
        )
        return verify_triangulation(triangulation, resolved.verify.trials, resolved.verify.seed)
    if path is None:
        raise ValueError("verify needs a path or a triangulation")
    return verify_all(index_path(path), resolved)


def sweep(
    max_size: int,
    *,
    config: Config | Mapping[str, Any] | str | Path | None = None,
) -> list[VerificationReport]:
    """:func:`verify` on every ν with ``a + b <= max_size``."""
    if max_size < 0:
        raise ValueError("max_size must be nonnegative")
    resolved = _resolve_config(config)
    _warn_length_variant(resolved)
    if max_size > resolved.guards.max_verify_size and resolved.guards.force:
        warnings.warn(
            f"sweep size {max_size} exceeds the verification guard "
            f"({resolved.guards.max_verify_size}); continuing because of force",
            RuntimeWarning,
            stacklevel=2,
        )
    return _sweep(max_size, resolved)


def _resolve_config(
    config: Config | Mapping[str, Any] | str | Path | None,
) -> Config:
    if config is None:
        return Config()
    if isinstance(config, Config):
        return config
    if isinstance(config, Mapping):
        return load_config_from_dict(config)
    if isinstance(config, (str, Path)):
        return load_config(Path(config))
    raise TypeError(
        "config must be None, Config, dict-like mapping, or a config file path."
    )


def _indexed(path: str | LatticePath, config: Config) -> IndexedPath:
    p = index_path(path)
    check_size(p, config.guards.max_construct_size, config.guards.force, "construction")
    return p


def _order(p: IndexedPath, config: Config) -> ReductionOrder:
    _warn_length_variant(config)
    reduction = config.reduction
    return get_order(
        reduction.order,
        n=p.n,
        length_variant=reduction.length_variant,
        seed=reduction.seed,
    )


def _tree_limit(p: IndexedPath, config: Config) -> int:
    # force lifts the enumeration guard as well
    if config.guards.force:
        return max(config.guards.max_construct_size, p.a + p.b)
    return config.guards.max_construct_size


def _warn_length_variant(config: Config) -> None:
    if config.reduction.order == "rho-len" and config.reduction.length_variant == "complement":
        warnings.warn(
            "the complement length variant does not reproduce the worked NEENE reduction; "
            "facet sets may differ from the span variant",
            RuntimeWarning,
            stacklevel=3,
        )
