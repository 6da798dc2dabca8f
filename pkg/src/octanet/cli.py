"""Config-driven command line front end.

Subcommands: solve, oracle, decompose, mutate, verify.  Every option can also
come from a JSON config file (--config, "schema": 1); explicit command-line
flags win over config values.  Output goes to stdout, diagnostics to stderr.
Identical (config, seed) pairs produce byte-identical output.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
config error, 3 resource-cap abort.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import (
    LaurentError,
    LaurentPoly,
    VarTable,
    lp_canonical_text,
    lp_eval_rational,
    lp_parse_canonical,
    lp_subst_zero,
)
from .network import NetworkError, TooLarge, uv_decompose
from .surface import (
    InitialData,
    SteppedSurface,
    SurfaceError,
    Window,
    build_regularized_data,
    flat_surface,
    generic_data,
    mutate,
    validate,
)
from .tsystem import (
    METHODS,
    CornerMismatchWarning,
    LaurentViolation,
    TSystemError,
    applicable_methods,
    solve,
)
from .verify import SUITES, run_suite

SCHEMA_VERSION = 1
DEFAULT_MAX_WINDOW = 64
DEFAULT_MAX_TERMS = 10 ** 6
KINDS = ("Ainf", "Ar", "RightHalf", "LeftHalf", "Restricted")
DATA_MODES = ("symbolic", "plus", "minus", "restricted", "rational", "explicit")
SUITE_ORDER = ("identities", "periodicity", "positivity", "equivalence", "boundary-emergence")


class UsageError(Exception):
    pass


def _parse_pair(text) -> Tuple[int, int]:
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return int(text[0]), int(text[1])
    parts = str(text).split(",")
    if len(parts) != 2:
        raise UsageError("expected i,j but got %r" % (text,))
    return int(parts[0]), int(parts[1])


def _parse_query(text) -> Tuple[int, int, int]:
    if isinstance(text, (list, tuple)) and len(text) == 3:
        return int(text[0]), int(text[1]), int(text[2])
    parts = str(text).split(",")
    if len(parts) != 3:
        raise UsageError("expected i,j,k but got %r" % (text,))
    return int(parts[0]), int(parts[1]), int(parts[2])


class RunConfig:
    """Resolved run description: argv flags merged over the config file."""

    def __init__(self, args: argparse.Namespace):
        cfg: Dict[str, object] = {}
        if getattr(args, "config", None):
            try:
                with open(args.config) as fh:
                    cfg = json.load(fh)
            except (OSError, json.JSONDecodeError) as e:
                raise UsageError("cannot read config: %s" % e)
            if cfg.get("schema") != SCHEMA_VERSION:
                raise UsageError("config schema must be %d" % SCHEMA_VERSION)

        def pick(name, default=None):
            flag = getattr(args, name, None)
            # empty repeat/positional lists mean "not given on the command line"
            if flag is not None and flag != []:
                return flag
            return cfg.get(name, default)

        self.command = args.command
        if "command" in cfg and cfg["command"] != args.command:
            raise UsageError(
                "config names command %r but %r was invoked" % (cfg["command"], args.command)
            )
        self.kind = pick("kind", "Ar" if args.command == "decompose" else "Ainf")
        if self.kind not in KINDS:
            raise UsageError("kind must be one of %s" % (KINDS,))
        self.r = pick("r")
        self.ell = pick("ell")
        if self.r is not None:
            self.r = int(self.r)
        if self.ell is not None:
            self.ell = int(self.ell)
        if self.kind != "Ainf" and self.r is None:
            raise UsageError("kind %s needs --r" % self.kind)
        if self.kind in ("LeftHalf", "Restricted") and self.ell is None:
            raise UsageError("kind %s needs --l" % self.kind)
        self.offset = int(pick("offset", 0))
        self.heights = cfg.get("heights")
        self.mutations = [_parse_pair(p) for p in pick("mutations", []) or []]
        self.data_mode = pick("data", "symbolic")
        if self.data_mode not in DATA_MODES:
            raise UsageError("data mode must be one of %s" % (DATA_MODES,))
        self.values = cfg.get("values") or {}
        self.queries = [_parse_query(q) for q in pick("queries", []) or []]
        self.method = pick("method", "all")
        if self.method != "all" and self.method not in METHODS:
            raise UsageError("method must be 'all' or one of %s" % (METHODS,))
        self.fmt = pick("format", "text")
        if self.fmt not in ("text", "structured"):
            raise UsageError("format must be text or structured")
        self.seed = int(pick("seed", 0))
        self.max_window = int(pick("max_window", DEFAULT_MAX_WINDOW))
        self.max_terms = int(pick("max_terms", DEFAULT_MAX_TERMS))
        if self.max_window <= 0 or self.max_terms <= 0:
            raise UsageError("caps must be positive")
        self.suites = pick("suites", [])
        self.k_span = pick("k_span")
        self.k_max = int(pick("k_max", 6))
        self.r_max = int(pick("r_max", 5))
        self.j0 = pick("j0")
        self.j1 = pick("j1")
        self.at = [_parse_pair(p) for p in pick("at", []) or []]


# -- surface/data construction ------------------------------------------------------


def _flat_height(rc: RunConfig, i: int, j: int) -> int:
    return (i + j) % 2 + rc.offset


def _window_for(rc: RunConfig, sites: List[Tuple[int, int]], depth: int) -> Window:
    pad = depth + 2
    imin = min(i for (i, _) in sites) - pad
    imax = max(i for (i, _) in sites) + pad
    if rc.kind != "Ainf":
        imin, imax = 1, rc.r
    jmin = min(j for (_, j) in sites) - pad
    jmax = max(j for (_, j) in sites) + pad
    if imax - imin + 1 > rc.max_window or jmax - jmin + 1 > rc.max_window:
        raise TooLarge(
            "needed window %dx%d exceeds the %d cap"
            % (imax - imin + 1, jmax - jmin + 1, rc.max_window)
        )
    return Window(imin, imax, jmin, jmax)


def _build_system(rc: RunConfig):
    """Surface, data, regularization vids, and the variable table for a run."""
    table = VarTable()
    sites = [(i, j) for (i, j, _) in rc.queries]
    sites += rc.mutations + rc.at
    if not sites:
        sites = [(1, 0), (1, 1)]
    depth = 2
    for (i, j, k) in rc.queries:
        depth = max(depth, k - _flat_height(rc, i, j))

    if rc.heights:
        heights = {_parse_pair(p): int(k) for p, k in rc.heights.items()}
        imin = min(i for (i, _) in heights)
        imax = max(i for (i, _) in heights)
        jmin = min(j for (_, j) in heights)
        jmax = max(j for (_, j) in heights)
        surf = SteppedSurface(rc.kind, Window(imin, imax, jmin, jmax), heights, rc.r, rc.ell)
        findings = validate(surf)
        if findings:
            raise UsageError("bad explicit heights: " + "; ".join(findings))
    elif rc.data_mode in ("plus", "minus", "restricted"):
        if rc.kind != "Ar":
            raise UsageError("family data runs on the row-walled system (kind Ar)")
        if rc.data_mode in ("minus", "restricted") and rc.ell is None:
            raise UsageError("data mode %r needs --l" % rc.data_mode)
        win = _window_for(rc, sites, depth)
        surf, data, vids = build_regularized_data(rc.r, rc.ell, rc.data_mode, win, table)
        for (mi, mj) in rc.mutations:
            surf, data = mutate(surf, data, mi, mj)
        return surf, data, vids, table
    else:
        surf = flat_surface(rc.kind, _window_for(rc, sites, depth), r=rc.r, ell=rc.ell, offset=rc.offset)

    if rc.data_mode == "explicit":
        if not rc.values:
            raise UsageError("data mode 'explicit' needs config values")
        values = {}
        for p, txt in rc.values.items():
            if isinstance(txt, int) or str(txt).lstrip("-").isdigit():
                values[_parse_pair(p)] = LaurentPoly.const(int(txt))
            else:
                values[_parse_pair(p)] = lp_parse_canonical(str(txt), table)
        missing = [p for p in surf.real_points() if p not in values]
        if missing:
            raise UsageError(
                "explicit data misses %d surface points (first: %s)" % (len(missing), missing[0])
            )
        data = InitialData(table, values)
    else:
        data = generic_data(surf, table)

    for (mi, mj) in rc.mutations:
        surf, data = mutate(surf, data, mi, mj)
    return surf, data, [], table


def _rational_images(data: InitialData, seed: int) -> Dict[int, Fraction]:
    rng = random.Random(seed)
    vids = sorted(set().union(*(v.variables() for v in data.values.values())) or set())
    return {vid: Fraction(rng.randint(1, 9)) for vid in vids}


# -- subcommands --------------------------------------------------------------------------


def _emit_value(rc, table, images, query, method, value, stats, out):
    if value.num_terms() > rc.max_terms:
        raise TooLarge("result has %d terms, cap is %d" % (value.num_terms(), rc.max_terms))
    if images is not None:
        text = str(lp_eval_rational(value, images))
    else:
        text = lp_canonical_text(value, table)
    if rc.fmt == "structured":
        out.write(
            json.dumps(
                {"query": list(query), "method": method, "polynomial": text, "stats": stats},
                sort_keys=True,
            )
            + "\n"
        )
    else:
        out.write("query (%d,%d,%d) method %s: %s\n" % (query + (method, text)))


def _cmd_solve(rc: RunConfig, out, err, force_oracle=False) -> int:
    if not rc.queries:
        raise UsageError("no queries given (--query i,j,k)")
    surf, data, vids, table = _build_system(rc)
    images = _rational_images(data, rc.seed) if rc.data_mode == "rational" else None
    for query in rc.queries:
        (i, j, k) = query
        if force_oracle:
            methods = ["oracle"]
        elif rc.method == "all":
            methods = applicable_methods(surf, i, j, k)
        else:
            methods = [rc.method]
        for m in methods:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always", CornerMismatchWarning)
                res = solve(surf, data, i, j, k, method=m, reg_vids=vids)
            for w in caught:
                err.write("warning: %s\n" % w.message)
            value = lp_subst_zero(res.value, vids) if vids else res.value
            stats = dict(res.stats)
            stats["window"] = list(stats["window"])
            _emit_value(rc, table, images, query, m, value, stats, out)
    return 0


def _cmd_decompose(rc: RunConfig, out, err) -> int:
    if rc.kind != "Ar":
        raise UsageError("decompose slices the row-walled system (kind Ar)")
    if rc.j0 is None or rc.j1 is None:
        raise UsageError("decompose needs --j0 and --j1")
    j0, j1 = int(rc.j0), int(rc.j1)
    if j1 <= j0:
        raise UsageError("need j0 < j1")
    if j1 - j0 > rc.max_window:
        raise TooLarge("slice width %d exceeds the cap" % (j1 - j0))
    table = VarTable()
    win = Window(1, rc.r, j0 - 2, j1 + 2)
    surf = flat_surface("Ar", win, r=rc.r, offset=rc.offset)
    data = generic_data(surf, table)
    for (mi, mj) in rc.mutations:
        surf, data = mutate(surf, data, mi, mj)
    seq = uv_decompose(surf, data, j0, j1)
    mat, den = seq.cleared()
    word = seq.word_text(table)
    dtxt = lp_canonical_text(den, table)
    rows = [[lp_canonical_text(x, table) for x in row] for row in mat]
    if rc.fmt == "structured":
        out.write(
            json.dumps(
                {
                    "slice": [j0, j1],
                    "wires": [seq.min_wire, seq.max_wire],
                    "word": word,
                    "denominator": dtxt,
                    "matrix": rows,
                },
                sort_keys=True,
            )
            + "\n"
        )
    else:
        out.write("slice (%d,%d] wires %d..%d\n" % (j0, j1, seq.min_wire, seq.max_wire))
        out.write("word: %s\n" % word)
        out.write("denominator: %s\n" % dtxt)
        for ri, row in enumerate(rows):
            out.write("row %d: %s\n" % (ri + 1, " | ".join(row)))
    return 0


def _cmd_mutate(rc: RunConfig, out, err) -> int:
    table = VarTable()
    lo_i = min([i for (i, _) in rc.at] + [-1])
    hi_i = max([i for (i, _) in rc.at] + [2])
    lo_j = min([j for (_, j) in rc.at] + [-2])
    hi_j = max([j for (_, j) in rc.at] + [2])
    if rc.kind == "Ainf":
        win = Window(lo_i - 2, hi_i + 2, lo_j - 2, hi_j + 2)
    else:
        win = Window(1, rc.r, lo_j - 2, hi_j + 2)
    surf = flat_surface(rc.kind, win, r=rc.r, ell=rc.ell, offset=rc.offset)
    data = generic_data(surf, table)
    for (mi, mj) in rc.at:
        surf, data = mutate(surf, data, mi, mj)
    points = sorted(surf.heights)
    if rc.fmt == "structured":
        rec = {
            "heights": {"%d,%d" % p: surf.heights[p] for p in points},
            "values": {"%d,%d" % p: lp_canonical_text(data.value(*p), table) for p in points},
        }
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        for p in points:
            out.write(
                "site (%d,%d): height %d, value %s\n"
                % (p[0], p[1], surf.heights[p], lp_canonical_text(data.value(*p), table))
            )
    return 0


def _cmd_verify(rc: RunConfig, out, err) -> int:
    names = list(rc.suites or [])
    if not names:
        raise UsageError("verify needs suite names (or 'all')")
    if names == ["all"]:
        names = list(SUITE_ORDER)
    for name in names:
        if name not in SUITES:
            raise UsageError("unknown suite %r (have: %s)" % (name, ", ".join(SUITE_ORDER)))
    r = rc.r if rc.r is not None else 1
    ell = rc.ell if rc.ell is not None else 2
    all_ok = True
    for name in names:
        if name == "identities":
            rep = run_suite(name, r_max=rc.r_max)
        elif name == "periodicity":
            kw = {"seed": rc.seed}
            if rc.k_span is not None:
                kw["k_span"] = int(rc.k_span)
            rep = run_suite(name, r=r, ell=ell, **kw)
        elif name == "positivity":
            rep = run_suite(name, seed=rc.seed)
        elif name == "equivalence":
            rep = run_suite(name, seed=rc.seed)
        else:
            rep = run_suite(name, r=r, ell=ell, k_max=rc.k_max)
        all_ok = all_ok and rep.ok
        if rc.fmt == "structured":
            out.write(json.dumps(rep.record(), sort_keys=True) + "\n")
        else:
            out.write(rep.text() + "\n")
    return 0 if all_ok else 1


# -- driver -------------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--config", help="JSON config file (schema 1); flags win")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--r", type=int, dest="r")
    p.add_argument("--l", type=int, dest="ell")
    p.add_argument("--offset", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", dest="format", choices=("text", "structured"))
    p.add_argument("--max-window", type=int, dest="max_window")
    p.add_argument("--max-terms", type=int, dest="max_terms")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="octanet",
        description="Exact solver and verifier for the octahedron recurrence on stepped surfaces.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="evaluate queries by one or all methods")
    _add_common(ps)
    ps.add_argument("--query", action="append", dest="queries", metavar="I,J,K")
    ps.add_argument("--method", choices=("all",) + METHODS)
    ps.add_argument("--data", choices=DATA_MODES)
    ps.add_argument("--mutations", action="append", metavar="I,J")

    po = sub.add_parser("oracle", help="evaluate queries by the recursion only")
    _add_common(po)
    po.add_argument("--query", action="append", dest="queries", metavar="I,J,K")
    po.add_argument("--data", choices=DATA_MODES)
    po.add_argument("--mutations", action="append", metavar="I,J")

    pd = sub.add_parser("decompose", help="chip word and network matrix of a column slice")
    _add_common(pd)
    pd.add_argument("--j0", type=int)
    pd.add_argument("--j1", type=int)
    pd.add_argument("--mutations", action="append", metavar="I,J")

    pm = sub.add_parser("mutate", help="apply mutations and emit the surface and data")
    _add_common(pm)
    pm.add_argument("--at", action="append", metavar="I,J")

    pv = sub.add_parser("verify", help="run verification suites")
    _add_common(pv)
    pv.add_argument("suites", nargs="*", metavar="SUITE")
    pv.add_argument("--k-span", type=int, dest="k_span")
    pv.add_argument("--k-max", type=int, dest="k_max")
    pv.add_argument("--r-max", type=int, dest="r_max")
    return ap


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return 0 if not e.code else 2
    try:
        rc = RunConfig(args)
        if rc.command == "solve":
            return _cmd_solve(rc, out, err)
        if rc.command == "oracle":
            return _cmd_solve(rc, out, err, force_oracle=True)
        if rc.command == "decompose":
            return _cmd_decompose(rc, out, err)
        if rc.command == "mutate":
            return _cmd_mutate(rc, out, err)
        return _cmd_verify(rc, out, err)
    except UsageError as e:
        err.write("error: %s\n" % e)
        return 2
    except TooLarge as e:
        err.write("resource cap: %s\n" % e)
        return 3
    except LaurentViolation as e:
        err.write("laurent violation: %s\n" % e)
        return 1
    except (SurfaceError, NetworkError, LaurentError, TSystemError, ValueError) as e:
        err.write("error: %s\n" % e)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
