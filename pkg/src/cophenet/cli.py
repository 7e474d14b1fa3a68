"""Command-line front end.

Subcommands: ``build``, ``persist``, ``forest``, ``distmat`` and ``check``.
Data goes to stdout or ``-o``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import datasets
from .distance import MERGE_RULES, distance_matrix, ultrametric_violation
from .field import Field, parse_field
from .filtration import (FilteredComplex, FiltrationError, build_cech, build_vietoris_rips, clique_complex,
                         dumps_filtration, load_filtration, load_points, nerve)
from .forest import build_forest, auto_seed, export_dot, export_newick, export_svg
from .homology import HomologyError, compute_persistence
from .matroid import MatroidError, check_submodular, cophenetic_matroid

INPUT_KINDS = ("points", "filtration", "graph", "cover")
COMPLEX_KINDS = ("rips", "cech", "clique", "nerve")
DEMOS = ("triangle", "s-epsilon")


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    input: str | None = None
    input_kind: str | None = None
    complex_kind: str | None = None
    max_dim: int = 2
    max_scale: float = math.inf
    field: Field = dc_field(default_factory=lambda: parse_field("rational"))
    degree: int = 1
    format: str | None = None
    output: str | None = None
    demo: str | None = None
    seeds: list[list[str]] = dc_field(default_factory=list)
    at: float | None = None
    merge: str = "projective"

    def validate(self):
        if self.demo:
            return self
        if not self.input:
            raise ConfigError("an input file is required (or use --demo)")
        kind = self.input_kind
        if kind is None:
            if self.complex_kind in ("rips", "cech"):
                kind = "points"
            elif self.complex_kind == "clique":
                kind = "graph"
            elif self.complex_kind == "nerve":
                kind = "cover"
            else:
                kind = "points" if self.input.lower().endswith(".csv") else "filtration"
            self.input_kind = kind
        need = {"rips": "points", "cech": "points", "clique": "graph", "nerve": "cover"}
        if self.complex_kind and need[self.complex_kind] != kind:
            raise ConfigError(f"--{self.complex_kind} needs {need[self.complex_kind]} input, got {kind}")
        if kind == "points" and self.complex_kind is None:
            raise ConfigError("point-cloud input needs a complex kind: --rips or --cech")
        if kind in ("graph", "cover") and self.complex_kind is None:
            self.complex_kind = "clique" if kind == "graph" else "nerve"
        if self.max_dim < 0:
            raise ConfigError("--max-dim must be >= 0")
        if not self.max_scale > 0:
            raise ConfigError("--max-scale must be > 0")
        return self


def read_config_file(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip().strip('"')
    return out


def _read_lines(path):
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def load_complex(cfg: PipelineConfig) -> FilteredComplex:
    kind, path = cfg.input_kind, cfg.input
    if kind == "filtration":
        return load_filtration(path)
    if kind == "points":
        P = load_points(path)
        build = build_vietoris_rips if cfg.complex_kind == "rips" else build_cech
        return build(P, cfg.max_dim, cfg.max_scale)
    if kind == "graph":
        edges = [tuple(int(t) for t in line.replace(",", " ").split()) for line in _read_lines(path)]
        verts = {e[0] for e in edges if len(e) == 1}
        return clique_complex([e for e in edges if len(e) == 2], verts, cfg.max_dim)
    if kind == "cover":
        cover = [[int(t) for t in line.replace(",", " ").split()] for line in _read_lines(path)]
        return nerve(cover, cfg.max_dim)
    raise ConfigError(f"unknown input kind {kind!r}")


def _emit(text: str, cfg: PipelineConfig):
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _note(msg: str):
    print(msg, file=sys.stderr)


def _complex_for(cfg):
    if cfg.demo == "triangle":
        return datasets.triangle_complex()
    if cfg.demo == "s-epsilon":
        raise ConfigError("the s-epsilon demo is a matroid, not a complex; use it with 'forest' or 'check'")
    return load_complex(cfg)


def _matroid_for(cfg):
    """Filtered matroid, default seeds and a default scale for distances."""
    if cfg.demo == "s-epsilon":
        fm = datasets.s_epsilon_matroid(cfg.field)
        return fm, [(datasets.S_EPSILON_SETS["A"], 0.0)]
    if cfg.demo == "triangle":
        fm = datasets.triangle_matroid(cfg.field)
    else:
        K = load_complex(cfg)
        fm = cophenetic_matroid(K, cfg.degree, compute_persistence(K, cfg.degree, cfg.field), cfg.field)
    return fm, None


def _explicit_seeds(fm, cfg):
    seeds = []
    for ids in cfg.seeds:
        birth = next((c for c in fm.critical_values
                      if set(ids) <= set(fm.ground(c)) and _irreducible(fm, c, ids)), None)
        if birth is None:
            raise ConfigError(f"seed {','.join(ids)} is never irreducible")
        seeds.append((tuple(ids), birth))
    return seeds


def _irreducible(fm, c, ids):
    from .matroid import is_irreducible
    return is_irreducible(ids, fm.oracle(c))


def cmd_build(cfg: PipelineConfig) -> int:
    K = _complex_for(cfg)
    _emit(dumps_filtration(K), cfg)
    counts = ", ".join(f"dim {d}: {n}" for d, n in K.counts().items()) or "no simplices"
    _note(f"{counts}; {len(K.critical_values)} critical values")
    return 0


def cmd_persist(cfg: PipelineConfig) -> int:
    K = _complex_for(cfg)
    bc = compute_persistence(K, min(cfg.max_dim, max(K.dimension, 0)), cfg.field)
    fmt = cfg.format or "csv"
    if fmt == "csv":
        _emit(bc.to_csv(), cfg)
    elif fmt == "json":
        _emit(bc.to_json(K) + "\n", cfg)
    elif fmt == "svg":
        _emit(bc.to_svg(), cfg)
    else:
        raise ConfigError(f"persist formats are csv, json, svg; got {fmt!r}")
    return 0


def cmd_forest(cfg: PipelineConfig) -> int:
    fm, seeds = _matroid_for(cfg)
    if cfg.seeds:
        seeds = _explicit_seeds(fm, cfg)
    elif seeds is None:
        seeds = auto_seed(fm)
    forest = build_forest(fm, seeds)
    if not forest.roots:
        _note("forest is empty")
    fmt = cfg.format or "newick"
    writers = {"newick": export_newick, "dot": export_dot, "svg": export_svg,
               "json": lambda f: f.to_json() + "\n"}
    if fmt not in writers:
        raise ConfigError(f"forest formats are {', '.join(writers)}; got {fmt!r}")
    _emit(writers[fmt](forest), cfg)
    return 0


def _default_scale(fm):
    births = [min((c for c in fm.critical_values if g in fm.ground(c))) for g in fm.ground(math.inf)]
    return max(births, default=fm.critical_values[0] if fm.critical_values else 0.0)


def cmd_distmat(cfg: PipelineConfig) -> int:
    if cfg.demo == "s-epsilon":
        raise ConfigError("distances are defined for homology classes; use --demo triangle or an input")
    fm, _ = _matroid_for(cfg)
    eps = cfg.at if cfg.at is not None else _default_scale(fm)
    gens = [g for ids in cfg.seeds for g in ids] or None
    D = distance_matrix(fm, eps, gens, merge=cfg.merge, validate=cfg.merge == "projective")
    _note(f"{len(D.ids)} generators at eps={eps:g}, merge rule {cfg.merge}")
    _emit(D.to_csv(), cfg)
    return 0


def cmd_check(cfg: PipelineConfig) -> int:
    fm, _ = _matroid_for(cfg)
    failures = 0
    lines = []
    for c in fm.critical_values:
        rep = check_submodular(fm.oracle(c))
        failures += not rep.ok
        lines.append(f"submodular eps={c:g} |E|={len(fm.ground(c))}: {'PASS' if rep else 'FAIL ' + str(rep)}")
    if cfg.demo != "s-epsilon":
        for c in fm.critical_values:
            gens = [g for g in fm.ground(c) if fm.rank(c, [g]) > 0]
            D = distance_matrix(fm, c, gens, merge=cfg.merge, validate=False)
            bad = ultrametric_violation(D)
            failures += bad is not None
            lines.append(f"ultrametric eps={c:g} n={len(gens)} ({cfg.merge}): "
                         + ("PASS" if bad is None else f"FAIL triple {bad[0]}"))
    _emit("\n".join(lines) + "\n", cfg)
    return 1 if failures else 0


COMMANDS = {"build": cmd_build, "persist": cmd_persist, "forest": cmd_forest,
            "distmat": cmd_distmat, "check": cmd_check}


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("input", nargs="?", help="points CSV, filtration file, graph edge list or cover file")
    p.add_argument("--config", help="key=value file with option defaults; flags win")
    p.add_argument("--input-kind", choices=INPUT_KINDS)
    g = p.add_mutually_exclusive_group()
    for kind in COMPLEX_KINDS:
        g.add_argument(f"--{kind}", dest="complex_kind", action="store_const", const=kind)
    p.add_argument("--max-dim", type=int)
    p.add_argument("--max-scale", type=float)
    p.add_argument("--field", help="rational (default) or gf(p)")
    p.add_argument("-k", "--degree", type=int, help="homology degree (default 1)")
    p.add_argument("--format")
    p.add_argument("-o", "--output")
    p.add_argument("--demo", choices=DEMOS)
    p.add_argument("--seed", action="append", dest="seeds",
                   help="comma-separated generator ids; repeatable")
    p.add_argument("--at", type=float, help="scale for distances (distmat)")
    p.add_argument("--merge", choices=MERGE_RULES)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cophenet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        _add_common(sub.add_parser(name, help=fn.__name__.replace("cmd_", "")))
    return parser


def config_from_args(ns: argparse.Namespace) -> PipelineConfig:
    file_opts = read_config_file(ns.config) if ns.config else {}

    def pick(name, conv=str, default=None):
        v = getattr(ns, name, None)
        if v is not None:
            return v
        if name in file_opts:
            return conv(file_opts[name])
        return default

    seeds = pick("seeds", lambda s: [s], [])
    return PipelineConfig(
        input=pick("input"),
        input_kind=pick("input_kind"),
        complex_kind=pick("complex_kind"),
        max_dim=pick("max_dim", int, 2),
        max_scale=pick("max_scale", float, math.inf),
        field=parse_field(pick("field", str, "rational")),
        degree=pick("degree", int, 1),
        format=pick("format"),
        output=pick("output"),
        demo=pick("demo"),
        seeds=[[t.strip() for t in s.split(",") if t.strip()] for s in seeds],
        at=pick("at", float),
        merge=pick("merge", str, "projective"),
    ).validate()


def main(argv=None) -> int:
    parser = make_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[ns.command](cfg)
    except (FiltrationError, HomologyError, MatroidError, ConfigError, ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
