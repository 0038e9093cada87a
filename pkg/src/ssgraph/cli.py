"""Command-line front end for the two neighborhood engines.

Subcommands:

* ``neighborhood``  -- kernel-polynomial engine at a special vertex
* ``predict``       -- quaternion ideal-class engine (abstract labels)
* ``verify``        -- sweep (p, ell, vertex), cross-check engines and the
                       closed-form loop/stable-pattern rules
* ``deviations``    -- largest prime where the neighborhood still deviates
                       from the stable pattern, per degree and vertex
* ``oracle-check``  -- compare the geometric engine against classical
                       modular-polynomial root multisets
* ``graph``         -- breadth-first component export (DOT / JSON)
* ``bench``         -- time the compute lanes on one neighborhood

Exit codes: 0 success, 1 verification mismatch, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import backends
from .arith import is_prime, legendre
from .ff import make_quadratic_context, parse_element, serialize_element
from .isogeny import bfs_graph, neighborhood, supersingular_count
from .modpoly import PACKAGED_LEVELS, ModularPolynomial
from .quat import KIND_E0, KIND_E1728, predicted_neighborhood
from .report import NeighborhoodReport, csv_rows, text_block

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2

VERTEX_CHOICES = ("0", "1728", "both")


class ConfigError(Exception):
    """Invalid run configuration (maps to exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by every subcommand."""

    command: str
    p: Tuple[int, ...] = ()
    p_min: Optional[int] = None
    p_max: Optional[int] = None
    ells: Tuple[int, ...] = ()
    vertex: Optional[str] = None
    seed: int = 0
    fmt: str = "text"
    modpoly_file: Optional[str] = None
    jobs: int = 1
    max_vertices: Optional[int] = None
    repeat: int = 3

    def vertices_for(self, p: int) -> Tuple[str, ...]:
        """The requested special vertices that exist in characteristic p."""
        want = self.vertex or "both"
        out = []
        if want in ("1728", "both") and p % 4 == 3:
            out.append("1728")
        if want in ("0", "both") and p % 3 == 2:
            out.append("0")
        return tuple(out)


def vertex_congruence_error(vertex: str, p: int) -> str:
    if vertex == "1728":
        return (f"vertex 1728 needs p = 3 mod 4 so that y^2 = x^3 + x is "
                f"supersingular; got p = {p} = {p % 4} mod 4")
    return (f"vertex 0 needs p = 2 mod 3 so that y^2 = x^3 + 1 is "
            f"supersingular; got p = {p} = {p % 3} mod 3")


def _require_vertices(cfg: RunConfig, p: int) -> Tuple[str, ...]:
    chosen = cfg.vertices_for(p)
    if chosen:
        return chosen
    want = cfg.vertex or "both"
    if want == "both":
        raise ConfigError(
            f"neither special vertex is supersingular for p = {p}: "
            f"p = {p % 4} mod 4 and p = {p % 3} mod 3")
    raise ConfigError(vertex_congruence_error(want, p))


def _check_prime_pair(p: int, ell: int) -> None:
    if not is_prime(p) or p <= 3:
        raise ConfigError(f"p must be a prime > 3, got {p}")
    if not is_prime(ell):
        raise ConfigError(f"ell must be prime, got {ell}")
    if ell == p:
        raise ConfigError(f"ell = p = {p} is not an isogeny degree here")


def primes_between(lo: int, hi: int) -> List[int]:
    return [p for p in range(max(lo, 5), hi + 1) if is_prime(p)]


# -- closed-form expectations --------------------------------------------------


def loop_rule(vertex: str, ell: int) -> Tuple[int, int]:
    """(bound multiplier's floor 4*ell or 3*ell, expected loops above it)."""
    if vertex == "1728":
        return 4 * ell, 2 if ell % 4 == 1 else 0
    return 3 * ell, 2 if ell % 3 == 1 else 0


def stable_pattern(vertex: str, ell: int, p: int) -> Dict[str, int]:
    """Expected stable neighborhood data for p above the quadratic bound."""
    if vertex == "1728":
        sign = 1 if (ell - 1) // 2 % 2 == 0 else -1
        return {
            "bound": 4 * ell * ell,
            "distinct": (ell - sign) // 2,
            "multiplicity": 2,
            "fp": 1 + legendre(ell, p),
        }
    return {
        "bound": 3 * ell * ell,
        "distinct": (ell - legendre(ell, 3)) // 3,
        "multiplicity": 3,
        "fp": 1 + legendre(-p, ell),
    }


# -- report computation (worker-safe, top level for pickling) ------------------


def geometric_report(p: int, vertex: str, ell: int,
                     seed: int = 0) -> NeighborhoodReport:
    ctx = make_quadratic_context(p)
    return neighborhood(ctx.el(int(vertex)), ell, seed=seed)


def quaternion_report(p: int, vertex: str, ell: int) -> NeighborhoodReport:
    kind = KIND_E1728 if vertex == "1728" else KIND_E0
    return predicted_neighborhood(kind, p, ell)


def _verify_case(task: Tuple[int, int, str, int]) -> Dict:
    p, ell, vertex, seed = task
    geo = geometric_report(p, vertex, ell, seed=seed)
    row: Dict = {
        "p": p,
        "ell": ell,
        "vertex": vertex,
        "loops": geo.loops,
        "distinct": geo.distinct_count,
        "profile": list(geo.multiplicity_profile()),
        "fp": geo.fp_count,
    }
    if ell > 3:
        quat = quaternion_report(p, vertex, ell)
        agree = {
            "loops": quat.loops == geo.loops,
            "distinct": quat.distinct_count == geo.distinct_count,
            "profile": quat.multiplicity_profile() == geo.multiplicity_profile(),
            "fp": quat.fp_count == geo.fp_count,
        }
        agree["all"] = all(agree.values())
        row["agree"] = agree
    else:
        row["agree"] = None

    lin_bound, want_loops = loop_rule(vertex, ell)
    row["loop_formula"] = {
        "bound_met": p > lin_bound,
        "expected": want_loops,
        "matches": geo.loops == want_loops,
    }
    pat = stable_pattern(vertex, ell, p)
    row["stable_formula"] = {
        "bound_met": p > pat["bound"],
        "expected_distinct": pat["distinct"],
        "expected_multiplicity": pat["multiplicity"],
        "expected_fp": pat["fp"],
        "matches": (
            geo.distinct_count == pat["distinct"]
            and all(m == pat["multiplicity"]
                    for m in geo.multiplicity_profile())
            and geo.fp_count == pat["fp"]
        ),
    }
    return row


def _deviation_case(task: Tuple[int, int, str, int]) -> Tuple[int, bool]:
    p, ell, vertex, seed = task
    geo = geometric_report(p, vertex, ell, seed=seed)
    pat = stable_pattern(vertex, ell, p)
    return p, geo.distinct_count < pat["distinct"]


def _map_jobs(fn, tasks: Sequence, jobs: int) -> List:
    """Apply fn over tasks, optionally in a share-nothing process pool.

    Results come back in task order, so output is deterministic no matter
    how workers are scheduled.
    """
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


# -- output helpers -------------------------------------------------------------


def _emit_reports(reports: List[NeighborhoodReport], fmt: str) -> str:
    if fmt == "json":
        payload = [r.to_dict() for r in reports]
        return json.dumps(payload[0] if len(payload) == 1 else payload,
                          indent=2)
    if fmt == "csv":
        return "\n".join(csv_rows(reports))
    if fmt == "text":
        return "\n\n".join(text_block(r) for r in reports)
    raise ConfigError(f"format {fmt!r} not supported for reports "
                      "(use json, csv, or text)")


def _flag(x) -> str:
    if x is None:
        return "n/a"
    return "yes" if x else "no"


def _emit_table(rows: List[Dict], columns: List[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    flat = [[_cell(r.get(c)) for c in columns] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(columns)
        writer.writerows(flat)
        return buf.getvalue().rstrip("\n")
    if fmt == "text":
        widths = [max(len(c), *(len(row[i]) for row in flat)) if flat
                  else len(c) for i, c in enumerate(columns)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
        for row in flat:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
        return "\n".join(lines)
    raise ConfigError(f"format {fmt!r} not supported here "
                      "(use json, csv, or text)")


def _cell(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "+".join(str(t) for t in v)
    return str(v)


# -- subcommands ----------------------------------------------------------------


def cmd_neighborhood(cfg: RunConfig) -> int:
    reports = []
    for p in cfg.p:
        for vertex in _require_vertices(cfg, p):
            _check_prime_pair(p, cfg.ells[0])
            reports.append(geometric_report(p, vertex, cfg.ells[0],
                                            seed=cfg.seed))
    print(_emit_reports(reports, cfg.fmt))
    return EXIT_OK


def cmd_predict(cfg: RunConfig) -> int:
    reports = []
    for p in cfg.p:
        for vertex in _require_vertices(cfg, p):
            _check_prime_pair(p, cfg.ells[0])
            reports.append(quaternion_report(p, vertex, cfg.ells[0]))
    print(_emit_reports(reports, cfg.fmt))
    return EXIT_OK


VERIFY_COLUMNS = [
    "p", "ell", "vertex", "loops", "distinct", "profile", "fp",
    "engines_agree", "loop_bound_met", "loop_formula_ok",
    "stable_bound_met", "stable_formula_ok",
]


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.p:
        primes = sorted(cfg.p)
    else:
        primes = primes_between(cfg.p_min or 5, cfg.p_max or 0)
    tasks = []
    for ell in cfg.ells:
        for p in primes:
            if p == ell:
                continue
            for vertex in cfg.vertices_for(p):
                tasks.append((p, ell, vertex, cfg.seed))
    if not tasks:
        raise ConfigError("verify selected no (p, ell, vertex) cases; "
                          "check --p/--p-min/--p-max and --vertex")
    rows = _map_jobs(_verify_case, tasks, cfg.jobs)

    flat = []
    mismatch = False
    for row in rows:
        agree = row["agree"]
        if agree is not None and not agree["all"]:
            mismatch = True
        flat.append({
            "p": row["p"], "ell": row["ell"], "vertex": row["vertex"],
            "loops": row["loops"], "distinct": row["distinct"],
            "profile": row["profile"], "fp": row["fp"],
            "engines_agree": None if agree is None else agree["all"],
            "loop_bound_met": row["loop_formula"]["bound_met"],
            "loop_formula_ok": row["loop_formula"]["matches"],
            "stable_bound_met": row["stable_formula"]["bound_met"],
            "stable_formula_ok": row["stable_formula"]["matches"],
        })
    if cfg.fmt == "json":
        print(json.dumps(rows, indent=2))
    else:
        print(_emit_table(flat, VERIFY_COLUMNS, cfg.fmt))
    return EXIT_MISMATCH if mismatch else EXIT_OK


def deviation_scan(ell: int, vertex: str, seed: int = 0,
                   jobs: int = 1) -> Dict:
    """Largest prime whose distinct-neighbor count undershoots the pattern.

    Scans the admissible primes below the quadratic bound in descending
    order and stops at the first undershoot; also reports whether that
    prime is the very first one scanned (the ``bound_met`` flag).
    """
    pat = stable_pattern(vertex, ell, 5)  # fp field unused here
    residue_ok = ((lambda p: p % 4 == 3) if vertex == "1728"
                  else (lambda p: p % 3 == 2))
    candidates = [p for p in range(pat["bound"] - 1, 4, -1)
                  if p != ell and residue_ok(p) and is_prime(p)]
    found: Optional[int] = None
    batch = max(1, jobs)
    for start in range(0, len(candidates), batch):
        chunk = candidates[start:start + batch]
        results = _map_jobs(_deviation_case,
                            [(p, ell, vertex, seed) for p in chunk], jobs)
        hits = [p for p, deviates in results if deviates]
        if hits:
            found = max(hits)
            break
    return {
        "ell": ell,
        "vertex": vertex,
        "bound": pat["bound"],
        "stable_distinct": pat["distinct"],
        "value": found,
        "bound_met": found is not None and found == candidates[0],
    }


DEVIATION_COLUMNS = ["ell", "vertex", "bound", "stable_distinct",
                     "value", "bound_met"]


def cmd_deviations(cfg: RunConfig) -> int:
    vertices = (("1728", "0") if cfg.vertex in (None, "both")
                else (cfg.vertex,))
    rows = []
    for ell in cfg.ells:
        if ell <= 3:
            raise ConfigError("deviations needs ell > 3 (the stable "
                              "pattern is stated for larger degrees)")
        for vertex in vertices:
            rows.append(deviation_scan(ell, vertex, seed=cfg.seed,
                                       jobs=cfg.jobs))
    print(_emit_table(rows, DEVIATION_COLUMNS, cfg.fmt))
    return EXIT_OK


ORACLE_COLUMNS = ["p", "ell", "j", "loops", "neighbors", "match"]


def cmd_oracle_check(cfg: RunConfig) -> int:
    if cfg.modpoly_file:
        tables = [ModularPolynomial.load_file(cfg.modpoly_file)]
        if cfg.ells and tuple(t.ell for t in tables) != cfg.ells:
            raise ConfigError(
                f"--modpoly-file has level {tables[0].ell}, "
                f"but --ell asked for {cfg.ells}")
    else:
        ells = cfg.ells or PACKAGED_LEVELS
        missing = [e for e in ells if e not in PACKAGED_LEVELS]
        if missing:
            raise ConfigError(
                f"no packaged modular polynomial for {missing}; "
                "supply --modpoly-file")
        tables = [ModularPolynomial.packaged(e) for e in ells]

    rows: List[Dict] = []
    failed = False
    for p in cfg.p:
        for table in tables:
            ell = table.ell
            if p == ell:
                continue
            ctx = make_quadratic_context(p)
            if p % 4 == 3:
                start = ctx.el(1728)
            elif p % 3 == 2:
                start = ctx.el(0)
            else:
                raise ConfigError(
                    f"p = {p} admits neither special vertex as a start")
            graph = bfs_graph(start, ell, seed=cfg.seed)
            sample = graph.vertices[:20]
            for name in sample:
                j = parse_element(ctx, name)
                rep = graph.reports.get(name) or neighborhood(
                    j, ell, seed=cfg.seed)
                want_loops = rep.loops
                want = {nb.j: nb.multiplicity for nb in rep.neighbors}
                got_loops = 0
                got: Dict[str, int] = {}
                for root, mult in table.root_multiset(j):
                    if root == j:
                        got_loops = mult
                    else:
                        got[serialize_element(root)] = mult
                ok = got_loops == want_loops and got == want
                failed = failed or not ok
                rows.append({
                    "p": p, "ell": ell, "j": name,
                    "loops": want_loops,
                    "neighbors": sorted(want.values()),
                    "match": ok,
                })
    print(_emit_table(rows, ORACLE_COLUMNS, cfg.fmt))
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_graph(cfg: RunConfig) -> int:
    p = cfg.p[0]
    if cfg.vertex in (None, "both"):
        vertices = _require_vertices(
            RunConfig(command="graph", vertex="both"), p)
        vertex = vertices[0]
    else:
        vertex = cfg.vertex
        if not RunConfig(command="graph", vertex=vertex).vertices_for(p):
            raise ConfigError(vertex_congruence_error(vertex, p))
    ell = cfg.ells[0]
    _check_prime_pair(p, ell)
    ctx = make_quadratic_context(p)
    graph = bfs_graph(ctx.el(int(vertex)), ell,
                      max_vertices=cfg.max_vertices, seed=cfg.seed)
    bound = supersingular_count(p)
    if len(graph.vertices) > bound:
        raise RuntimeError(
            f"graph found {len(graph.vertices)} vertices, above the "
            f"supersingular count {bound}")
    if cfg.fmt == "dot":
        print(graph.to_dot())
    elif cfg.fmt == "json":
        print(json.dumps(graph.to_json_dict(), indent=2))
    else:
        raise ConfigError("graph supports --format dot or json")
    return EXIT_OK


BENCH_COLUMNS = ["lane", "p", "ell", "vertex", "repeats", "best_seconds"]


def cmd_bench(cfg: RunConfig) -> int:
    p = cfg.p[0] if cfg.p else 311
    ell = cfg.ells[0] if cfg.ells else 5
    _check_prime_pair(p, ell)
    vertex = _require_vertices(cfg, p)[0]
    before = backends.backend_name()
    rows = []
    try:
        for lane in backends.available_lanes():
            backends.set_backend(lane)
            geometric_report(p, vertex, ell, seed=cfg.seed)  # warm-up
            best = min(
                _timed(lambda: geometric_report(p, vertex, ell,
                                                seed=cfg.seed))
                for _ in range(max(1, cfg.repeat))
            )
            rows.append({"lane": lane, "p": p, "ell": ell,
                         "vertex": vertex, "repeats": cfg.repeat,
                         "best_seconds": round(best, 6)})
    finally:
        backends.set_backend(before)
    print(_emit_table(rows, BENCH_COLUMNS, cfg.fmt))
    return EXIT_OK


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


# -- argument parsing ------------------------------------------------------------


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssgraph",
        description=("Neighborhoods of the special vertices in "
                     "supersingular isogeny graphs, computed two ways."),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, *, p=False, p_range=False, ell=False, vertex=False,
                   fmt=("text", "json", "csv"), modpoly=False, jobs=False,
                   max_vertices=False, repeat=False):
        if p:
            sp.add_argument("--p", type=_int_list, default=(),
                            help="prime characteristic (comma list allowed)")
        if p_range:
            sp.add_argument("--p-min", type=int, default=None)
            sp.add_argument("--p-max", type=int, default=None)
        if ell:
            sp.add_argument("--ell", type=_int_list, default=(),
                            help="isogeny degree (comma list allowed)")
        if vertex:
            sp.add_argument("--vertex", choices=VERTEX_CHOICES, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", dest="fmt", choices=fmt, default=fmt[0])
        if modpoly:
            sp.add_argument("--modpoly-file", default=None)
        if jobs:
            sp.add_argument("--jobs", type=int, default=1)
        if max_vertices:
            sp.add_argument("--max-vertices", type=int, default=None)
        if repeat:
            sp.add_argument("--repeat", type=int, default=3)

    add_common(sub.add_parser(
        "neighborhood", help="kernel-polynomial engine at a special vertex"),
        p=True, ell=True, vertex=True)
    add_common(sub.add_parser(
        "predict", help="quaternion ideal-class engine (abstract labels)"),
        p=True, ell=True, vertex=True)
    add_common(sub.add_parser(
        "verify", help="cross-engine and closed-form sweep"),
        p=True, p_range=True, ell=True, vertex=True, jobs=True)
    add_common(sub.add_parser(
        "deviations", help="largest deviating prime per degree"),
        ell=True, vertex=True, jobs=True)
    add_common(sub.add_parser(
        "oracle-check", help="modular-polynomial root-multiset comparison"),
        p=True, ell=True, modpoly=True)
    add_common(sub.add_parser(
        "graph", help="breadth-first component export"),
        p=True, ell=True, vertex=True, fmt=("dot", "json"),
        max_vertices=True)
    add_common(sub.add_parser(
        "bench", help="time the compute lanes"),
        p=True, ell=True, vertex=True, repeat=True)
    return parser


def _config_from(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=ns.command,
        p=tuple(getattr(ns, "p", ()) or ()),
        p_min=getattr(ns, "p_min", None),
        p_max=getattr(ns, "p_max", None),
        ells=tuple(getattr(ns, "ell", ()) or ()),
        vertex=getattr(ns, "vertex", None),
        seed=ns.seed,
        fmt=ns.fmt,
        modpoly_file=getattr(ns, "modpoly_file", None),
        jobs=getattr(ns, "jobs", 1),
        max_vertices=getattr(ns, "max_vertices", None),
        repeat=getattr(ns, "repeat", 3),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.command in ("neighborhood", "predict", "graph"):
        if len(cfg.p) != 1 and cfg.command == "graph":
            raise ConfigError("graph needs exactly one --p")
        if not cfg.p:
            raise ConfigError(f"{cfg.command} needs --p")
        if len(cfg.ells) != 1:
            raise ConfigError(f"{cfg.command} needs exactly one --ell")
    if cfg.command == "verify":
        if not cfg.ells:
            raise ConfigError("verify needs --ell")
        if not cfg.p and cfg.p_max is None:
            raise ConfigError("verify needs --p or --p-min/--p-max")
    if cfg.command == "deviations" and not cfg.ells:
        raise ConfigError("deviations needs --ell")
    if cfg.command == "oracle-check" and not cfg.p:
        raise ConfigError("oracle-check needs --p")
    for p in cfg.p:
        if not is_prime(p) or p <= 3:
            raise ConfigError(f"p must be a prime > 3, got {p}")
    for ell in cfg.ells:
        if not is_prime(ell):
            raise ConfigError(f"ell must be prime, got {ell}")
    if cfg.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    if cfg.seed < 0:
        raise ConfigError("--seed must be >= 0")
    if cfg.max_vertices is not None and cfg.max_vertices < 1:
        raise ConfigError("--max-vertices must be >= 1")


_DISPATCH = {
    "neighborhood": cmd_neighborhood,
    "predict": cmd_predict,
    "verify": cmd_verify,
    "deviations": cmd_deviations,
    "oracle-check": cmd_oracle_check,
    "graph": cmd_graph,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config_from(ns)
        return _DISPATCH[cfg.command](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
