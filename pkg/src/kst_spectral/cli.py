"""Command-line interface: ``kst <command> ...``.

Inputs are graph6 lines (optionally with a ``>>graph6<<`` header) or
family lines ``F s t n``, read from files or stdin; blank lines and lines
starting with ``#`` are skipped. Exit codes: 0 success, 1 verification
failure, 2 usage or parse error, 3 capacity or timeout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from .closed_form import lemma23_bounds, q_F_closed
from .errors import CapacityError, Graph6Error, KstError, MinorTimeout, ParameterError
from .graph import Graph, build_extremal_F, parse_graph6, write_graph6
from .minor import MinorPattern, find_minor, is_edge_maximal, verify_witness
from .spectral import (
    DEFAULT_TOL,
    certify_upper_bound,
    lemma42_vector,
    lemma43_vector,
    merris_bound,
    perron_certificate,
    q_radius,
)
from .verify.canon import canonical_form
from .verify.enumeration import augment, enumerate_minor_free
from .verify.lemmas import LEMMA_IDS, DegreeHypothesis, check_degree_lemma, sample_degree_profile
from .verify.pool import parallel_map
from .verify.report import reports_to_csv
from .verify.search import conjecture_evidence, extremal_search, local_search_extremal
from .verify.theorems import THEOREM_IDS, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
DEFAULT_SEED = 20240101


class InputError(KstError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class CommandConfig:
    command: str
    fmt: str = "json"
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    workers: int = 1
    out: str | None = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ParameterError("tolerance must be positive")
        if self.workers < 1:
            raise ParameterError("worker count must be at least 1")


# input handling

_FAMILY = re.compile(r"^F\s+(\d+)\s+(\d+)\s+(\d+)$")


def parse_input_line(text: str, lineno: int = 1) -> Graph | None:
    """A graph from one input line, or None for blank and comment lines."""
    line = text.strip()
    if not line or line.startswith("#"):
        return None
    m = _FAMILY.match(line)
    if m:
        s, t, n = map(int, m.groups())
        try:
            return build_extremal_F(s, t, n)[0]
        except ParameterError as e:
            raise InputError(lineno, str(e)) from None
    if line.startswith("F"):
        raise InputError(lineno, f"family lines look like 'F s t n', got {line!r}")
    try:
        return parse_graph6(line)
    except Graph6Error as e:
        raise InputError(lineno, str(e)) from None


def read_graphs(lines: Iterable[str]) -> list[tuple[int, Graph]]:
    out = []
    for i, text in enumerate(lines, start=1):
        g = parse_input_line(text, i)
        if g is not None:
            out.append((i, g))
    return out


def _load(args) -> list[tuple[int, Graph]]:
    lines: list[str] = []
    for e in getattr(args, "expr", None) or []:
        lines.append(e)
    paths = getattr(args, "input", None) or []
    if not paths and not lines:
        paths = ["-"]
    for p in paths:
        if p == "-":
            lines.extend(sys.stdin.read().splitlines())
        else:
            with open(p, encoding="ascii", errors="replace") as fh:
                lines.extend(fh.read().splitlines())
    return read_graphs(lines)


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive), ``"a"`` or ``"a,b,c"``."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if a > b:
            raise ParameterError(f"empty range {text!r}")
        return list(range(a, b + 1))
    if re.fullmatch(r"\d+(,\d+)*", text):
        return [int(x) for x in text.split(",")]
    raise ParameterError(f"bad range {text!r}; use a..b, a or a,b,c")


# output


def _rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0])
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def _rows_to_plain(rows: list[dict]) -> str:
    return "".join(" ".join(f"{k}={v}" for k, v in r.items()) + "\n" for r in rows)


def emit_table(cfg: CommandConfig, rows: list[dict], extra: dict | None = None) -> None:
    if cfg.fmt == "json":
        doc = {"kind": "table", "command": cfg.command, "rows": rows}
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _rows_to_csv(rows)
    else:
        text = _rows_to_plain(rows)
    _write(cfg, text)


def _write(cfg: CommandConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


# commands


def _radius_row(item: tuple[int, Graph, float]) -> dict:
    line, g, tol = item
    res = q_radius(g, tol)
    return {
        "line": line,
        "order": g.order,
        "size": g.size,
        "q": res.q,
        "merris": merris_bound(g) if g.order else 0.0,
        "degrees": list(g.degrees),
        "method": res.method,
    }


def cmd_radius(args, cfg: CommandConfig) -> int:
    graphs = _load(args)
    rows = parallel_map(_radius_row, [(ln, g, cfg.tol) for ln, g in graphs], cfg.workers)
    emit_table(cfg, rows)
    return EXIT_OK


def cmd_verify(args, cfg: CommandConfig) -> int:
    if (args.theorem is None) == (args.theorem_flag is None):
        raise ParameterError("give exactly one theorem id, positionally or with --theorem")
    args.theorem = args.theorem or args.theorem_flag
    params = {"n": parse_range(args.n), "workers": cfg.workers, "timeout": args.timeout}
    if args.s is not None:
        params["s"] = args.s
    if args.t is not None:
        params["t"] = args.t
    rep = verify_theorem(args.theorem, params)
    if rep.mode == "sub-threshold":
        _warn(f"{args.theorem}: every order is below the hypothesis floor; checks are informational")
    if cfg.fmt == "json":
        _write(cfg, json.dumps({"kind": "verification", **rep.to_dict()}, indent=2) + "\n")
    elif cfg.fmt == "csv":
        _write(cfg, reports_to_csv([rep]))
    else:
        lines = [rep.summary()]
        lines += [f"  {'ok  ' if c.passed else 'FAIL'} {c.name}: {c.lhs} {c.relation} {c.rhs}" for c in rep.checks]
        lines += [f"  note: {n}" for n in rep.notes]
        _write(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _minor_row(item) -> dict:
    line, g, pat, timeout, maximal = item
    res = find_minor(g, pat, timeout)
    row = {"line": line, "order": g.order, "verdict": res.verdict, "witness": None, "witness_valid": None}
    if res.witness is not None:
        row["witness"] = res.witness.to_json()
        row["witness_valid"] = verify_witness(g, pat, res.witness)
    if maximal and res.verdict == "absent":
        try:
            row["edge_maximal"] = is_edge_maximal(g, pat, timeout)
        except MinorTimeout:
            row["edge_maximal"] = None
    return row


def cmd_minor(args, cfg: CommandConfig) -> int:
    pat = MinorPattern.parse(args.pattern)
    graphs = _load(args)
    items = [(ln, g, pat, args.timeout, args.maximal) for ln, g in graphs]
    rows = parallel_map(_minor_row, items, cfg.workers)
    emit_table(cfg, rows, {"pattern": pat.name})
    if any(r["witness_valid"] is False for r in rows):
        return EXIT_FAIL
    if any(r["verdict"] == "timeout" for r in rows):
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_build(args, cfg: CommandConfig) -> int:
    g, fp = build_extremal_F(args.s, args.t, args.n)
    if cfg.fmt == "plain":
        _write(cfg, write_graph6(g) + "\n")
        return EXIT_OK
    row = {**asdict(fp), "edges": g.size, "graph6": write_graph6(g), "q_closed": q_F_closed(args.s, args.t, args.n)}
    emit_table(cfg, [row])
    return EXIT_OK


def cmd_sweep(args, cfg: CommandConfig) -> int:
    rows = []
    worst = 0.0
    for n in parse_range(args.n):
        g, _ = build_extremal_F(args.s, args.t, n)
        q = q_radius(g, cfg.tol).q
        qc = q_F_closed(args.s, args.t, n)
        lo, hi, eq = lemma23_bounds(args.s, args.t, n)
        worst = max(worst, abs(q - qc))
        rows.append({"n": n, "q_eigen": q, "q_closed": qc, "diff": abs(q - qc), "lower": lo.value,
                     "upper": hi.value, "equality_expected": eq, "hypothesis_met": lo.hypothesis_met})
    emit_table(cfg, rows)
    return EXIT_OK if worst <= args.match_tol else EXIT_FAIL


def cmd_search(args, cfg: CommandConfig) -> int:
    pat = MinorPattern.parse(args.pattern)
    rows = []
    for n in parse_range(args.n):
        res = extremal_search(n, pat, args.timeout)
        rows.append({"n": n, "max_q": res.max_q, "argmax": res.argmax, "matches_family": res.matches_family,
                     "scanned": res.scanned})
    emit_table(cfg, rows, {"pattern": pat.name})
    return EXIT_OK


def cmd_local_search(args, cfg: CommandConfig) -> int:
    pat = MinorPattern.parse(args.pattern)
    moves = ("rewire", "add", "swap") if args.swaps else ("rewire", "add")
    rows = []
    for ln, g in _load(args):
        res = local_search_extremal(g, pat, args.budget, moves=moves, timeout=args.timeout)
        rows.append({"line": ln, "q": res.q, "moves": len(res.steps), "steps": res.steps, "complete": res.complete,
                     "timeouts": len(res.timeouts), "graph6": write_graph6(res.graph)})
    emit_table(cfg, rows, {"pattern": pat.name})
    return EXIT_OK


def cmd_lemma(args, cfg: CommandConfig) -> int:
    hyp = DegreeHypothesis(args.lemma, args.k)
    if args.input or args.expr:
        graphs = [g for _, g in _load(args)]
    else:
        n = args.n_single if args.n_single is not None else hyp.floor
        graphs = [sample_degree_profile(args.lemma, n, cfg.seed + i, args.k) for i in range(args.samples)]
    rows = []
    for g in graphs:
        r = check_degree_lemma(g, hyp)
        rows.append({"n": r.n, "k": r.k, "floor_met": r.floor_met, "profile_met": r.profile_met,
                     "hypothesis_met": r.hypothesis_met, "q": r.q, "bound_holds": r.bound_holds})
    emit_table(cfg, rows, {"lemma": args.lemma})
    return EXIT_FAIL if any(r["bound_holds"] is False for r in rows) else EXIT_OK


def cmd_certify(args, cfg: CommandConfig) -> int:
    rows = []
    for ln, g in _load(args):
        if args.vector == "perron":
            cert = perron_certificate(g, args.shift, cfg.tol)
        elif args.vector == "lemma42":
            cert = lemma42_vector(g, args.v1, args.v2)
        else:
            cert = lemma43_vector(g, args.v1, args.v2)
        v = certify_upper_bound(g, cert, cfg.tol)
        rows.append({"line": ln, "r": float(cert.r), "verdict": "ACCEPT" if v.accepted else "REJECT",
                     "exact": v.exact, "worst_vertex": v.worst_vertex, "worst_slack": v.worst_slack, "sound": v.sound})
    emit_table(cfg, rows)
    return EXIT_OK


def cmd_conjecture(args, cfg: CommandConfig) -> int:
    rows = [asdict(r) for r in conjecture_evidence(args.s, args.t, parse_range(args.n), args.timeout)]
    emit_table(cfg, rows)
    return EXIT_OK


def cmd_enumerate(args, cfg: CommandConfig) -> int:
    if args.pattern:
        items = enumerate_minor_free(args.n_single, MinorPattern.parse(args.pattern), args.timeout)
    else:
        items = augment(args.n_single)
    rows = []
    for it in items:
        if args.connected and not it.graph.is_connected():
            continue
        if args.maximal and not it.edge_maximal:
            continue
        rows.append({"graph6": write_graph6(it.graph), "edges": it.graph.size, "edge_maximal": it.edge_maximal})
    if cfg.fmt == "plain":
        _write(cfg, "".join(r["graph6"] + "\n" for r in rows))
    else:
        emit_table(cfg, rows)
    return EXIT_OK


def cmd_canon(args, cfg: CommandConfig) -> int:
    rows = [{"line": ln, "canonical": canonical_form(g)} for ln, g in _load(args)]
    if cfg.fmt == "plain":
        _write(cfg, "".join(r["canonical"] + "\n" for r in rows))
    else:
        emit_table(cfg, rows)
    return EXIT_OK


# parser


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="eigen-residual tolerance")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--timeout", type=_positive_float, default=10.0, help="seconds per minor query")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("input", nargs="*", help="graph6 / 'F s t n' files; '-' or nothing reads stdin")
    inputs.add_argument("-e", "--expr", action="append", help="inline input line, e.g. 'F 2 3 7'")

    p = argparse.ArgumentParser(prog="kst", description="Signless Laplacian radii, minors and extremal checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str, *parents) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common, *parents])
        sp.set_defaults(func=fn)
        return sp

    add("radius", cmd_radius, "q, Merris bound and degrees per graph", inputs)

    sp = add("verify", cmd_verify, "theorem-level verification report")
    sp.add_argument("theorem", nargs="?", choices=THEOREM_IDS)
    sp.add_argument("--theorem", dest="theorem_flag", choices=THEOREM_IDS, help="same as the positional id")
    sp.add_argument("--n", required=True, help="orders: a..b, a or a,b,c")
    sp.add_argument("--s", type=int)
    sp.add_argument("--t", type=int)

    sp = add("minor", cmd_minor, "minor verdict and witness per graph", inputs)
    sp.add_argument("--pattern", required=True, help="Ks,t, K1,t or Kk")
    sp.add_argument("--maximal", action="store_true", help="also test edge-maximality of minor-free inputs")

    sp = add("build", cmd_build, "construct F_{s,t}(n)")
    for k in ("--s", "--t", "--n"):
        sp.add_argument(k, type=int, required=True)

    sp = add("sweep", cmd_sweep, "closed form against eigensolve over a range")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--match-tol", type=_positive_float, default=1e-8)

    sp = add("search", cmd_search, "exhaustive extremal search over minor-free graphs")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", required=True)

    sp = add("local-search", cmd_local_search, "hill climb with rewires and edge additions", inputs)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--budget", type=int, default=1000)
    sp.add_argument("--swaps", action="store_true", help="include single-edge swaps")

    sp = add("lemma", cmd_lemma, "degree-lemma predicate on inputs or on seeded samples", inputs)
    sp.add_argument("lemma", choices=LEMMA_IDS)
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", dest="n_single", type=int, help="order of sampled graphs (default: lemma floor)")
    sp.add_argument("--samples", type=int, default=20)

    sp = add("certify", cmd_certify, "check a sub-invariance certificate", inputs)
    sp.add_argument("--vector", choices=("perron", "lemma42", "lemma43"), default="perron")
    sp.add_argument("--shift", type=float, default=0.0, help="perron: claimed bound is q + shift")
    sp.add_argument("--v1", type=int, default=0)
    sp.add_argument("--v2", type=int, default=1)

    sp = add("conjecture", cmd_conjecture, "exhaustive evidence table for general s, t")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n", required=True)

    sp = add("enumerate", cmd_enumerate, "isomorphism classes of a small order")
    sp.add_argument("--n", dest="n_single", type=int, required=True)
    sp.add_argument("--pattern", help="restrict to graphs free of this minor")
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--maximal", action="store_true", help="only edge-maximal classes")

    add("canon", cmd_canon, "canonical graph6 form per graph", inputs)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CommandConfig(args.command, args.fmt, args.tol, args.seed, args.workers, args.out)
        return args.func(args, cfg)
    except (CapacityError, MinorTimeout) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, ParameterError, KstError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
