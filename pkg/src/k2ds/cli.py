"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a case the theorems do not cover.
Errors are printed as a JSON object {"error": ...}.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys

from . import cyclotomic, invariants, maximal_order, presentation
from .lattice import LatticeError
from .presentation import Unsupported
from .ring import FAMILIES, FAMILY_ALIASES, RingError, RingSpec
from .symbols import SymbolError, basis_symbol, parse_symbol, reduce

COMMANDS = ("rank", "basis", "reduce", "verify-relations", "order-info", "sk1",
            "bounds", "k2c", "cyclotomic-check", "table")
TABLE_FIELDS = ("quantity", "p", "n", "k", "value", "citation")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="k2ds", description="Explicit K2 and SK1 computations "
                     "for quotients of Z[G], G elementary abelian.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--p", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--ring", choices=sorted(FAMILY_ALIASES))
    parser.add_argument("--symbol")
    parser.add_argument("--format", choices=("json", "csv", "text"))
    parser.add_argument("--grid", help='parameter grid, e.g. "p=2,3;n=1..3;k=1..4"')
    parser.add_argument("--plot", help="table: also write a rank figure to this file")
    return parser


# -- helpers -----------------------------------------------------------------------------


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _spec(args):
    _need(args, "ring", "p", "n")
    fam = FAMILY_ALIASES[args.ring]
    k = args.k
    if k is None:
        k = 1 if fam in ("fpg", "fpg-gtilde") else max(2, args.n) if fam == "zg-pkgamma" else 2
    return RingSpec(fam, args.p, args.n, k)


def _check_pn(args):
    _need(args, "p", "n")
    RingSpec("fpg", args.p, args.n)


_RANGE_RE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def parse_grid(text):
    """Parse "p=2,3;n=1..3;k=1..4" into {'p': [2, 3], 'n': [1, 2, 3], 'k': [1, ..., 4]}."""
    out = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"bad grid component {part!r}")
        key, vals = (s.strip() for s in part.split("=", 1))
        if key not in ("p", "n", "k"):
            raise UsageError(f"unknown grid key {key!r}")
        values = []
        for item in vals.split(","):
            m = _RANGE_RE.match(item)
            try:
                if m:
                    lo, hi = int(m.group(1)), int(m.group(2))
                    if hi < lo:
                        raise UsageError(f"empty range {item!r}")
                    values.extend(range(lo, hi + 1))
                else:
                    values.append(int(item))
            except ValueError:
                raise UsageError(f"bad grid value {item!r}") from None
        out[key] = sorted(set(values))
    for key in ("p", "n"):
        if key not in out:
            raise UsageError(f"grid needs {key}")
    out.setdefault("k", [1])
    return out


# -- commands ----------------------------------------------------------------------------


def cmd_rank(args):
    rep = invariants.k2_rank(_spec(args))
    return {"rank": rep.value, "citation": rep.citation}


def cmd_basis(args):
    spec = _spec(args)
    _, _, citation = presentation.basis_rule(spec)
    ids = [str(g) for g in presentation.basis(spec)]
    return {"ring": spec.family, "p": spec.p, "n": spec.n, "k": spec.k,
            "rank": len(ids), "basis": ids, "citation": citation}


def cmd_reduce(args):
    _need(args, "symbol")
    spec = _spec(args)
    presentation.basis_rule(spec)  # raise Unsupported before parsing
    vec = reduce(parse_symbol(args.symbol, spec))
    return {"coords": vec.as_dict()}


def cmd_verify_relations(args):
    _check_pn(args)
    out = presentation.verify_rank(args.p, args.n)
    out["citation"] = "Lemma generators"
    return out


def cmd_order_info(args):
    _check_pn(args)
    out = maximal_order.order_info(args.p, args.n)
    if args.k is not None:
        q = maximal_order.quotient_mod_pk_gamma(args.p, args.n, args.k)
        out["k"] = args.k
        out["quotient_order"] = q.order
        out["quotient_group_shape"] = q.group_shape()
    return out


def cmd_sk1(args):
    _need(args, "p", "n")
    k = 1 if args.k is None else args.k
    RingSpec("fpg", args.p, args.n)
    rep = invariants.sk1_rank(args.p, args.n, k)
    return {"p": args.p, "n": args.n, "k": k, "sk1_rank": rep.value, "citation": rep.citation,
            "inverse_limit": invariants.sk1_inverse_limit(args.p, args.n),
            "inverse_limit_citation": "Proposition sk1-inverses"}


def cmd_bounds(args):
    _check_pn(args)
    b = invariants.lower_bounds(args.p, args.n)
    s = invariants.sk1_zg_rank(args.p, args.n)
    return {"p": args.p, "n": args.n,
            "k2_zg": b["k2_zg"].value, "wh2": b["wh2"].value,
            "clamped": b["k2_zg"].extra["clamped"] or b["wh2"].extra["clamped"],
            "citation": b["k2_zg"].citation,
            "sk1_zg_rank": s.value, "sk1_zg_citation": s.citation}


def cmd_k2c(args):
    _check_pn(args)
    return invariants.k2c_exponent(args.p, args.n)


def cmd_cyclotomic_check(args):
    _need(args, "p")
    if args.p == 2:
        raise Unsupported("unsupported: uniformizer check requires odd p")
    out = cyclotomic.verify_uniformizer(args.p)
    k = 2 if args.k is None else args.k
    spec = RingSpec("zpk", args.p, 1, k) if k >= 2 else RingSpec("fpg", args.p, 1)
    gid = presentation.GeneratorId.symbol(1, (args.p - 1,))
    image = cyclotomic.chi_push(basis_symbol(gid, spec))
    out["k"] = k
    out["chi_pushes_T2_to_pi_pair"] = image == cyclotomic.pi_pair(args.p, spec.modulus)
    out["citation"] = "Lemma C_p fir"
    return out


def table_rows(grid):
    rows = []
    for p in grid["p"]:
        for n in grid["n"]:
            try:
                RingSpec("fpg", p, n)
            except RingError as exc:
                raise UsageError(str(exc)) from None
            for k in grid["k"]:
                for fam in FAMILIES:
                    try:
                        rep = invariants.k2_rank(RingSpec(fam, p, n, k))
                    except (RingError, Unsupported):
                        continue
                    rows.append({"quantity": f"k2_rank:{fam}", "p": p, "n": n, "k": k,
                                 "value": rep.value, "citation": rep.citation})
                if p != 2 and k >= 1:
                    rep = invariants.sk1_rank(p, n, k)
                    rows.append({"quantity": "sk1_rank", "p": p, "n": n, "k": k,
                                 "value": rep.value, "citation": rep.citation})
            k2c = invariants.k2c_exponent(p, n)
            rows.append({"quantity": "k2c_exponent", "p": p, "n": n, "k": "",
                         "value": k2c["closed_form"], "citation": k2c["citation"]})
            if p != 2:
                b = invariants.lower_bounds(p, n)
                for key in ("k2_zg", "wh2"):
                    rows.append({"quantity": f"lower_bound:{key}", "p": p, "n": n, "k": "",
                                 "value": b[key].value, "citation": b[key].citation})
                s = invariants.sk1_zg_rank(p, n)
                rows.append({"quantity": "sk1_zg_rank", "p": p, "n": n, "k": "",
                             "value": s.value, "citation": s.citation})
    return rows


def cmd_table(args):
    _need(args, "grid")
    rows = table_rows(parse_grid(args.grid))
    if args.plot:
        from .plots import rank_figure
        rank_figure(rows, args.plot)
    return rows


HANDLERS = {
    "rank": cmd_rank,
    "basis": cmd_basis,
    "reduce": cmd_reduce,
    "verify-relations": cmd_verify_relations,
    "order-info": cmd_order_info,
    "sk1": cmd_sk1,
    "bounds": cmd_bounds,
    "k2c": cmd_k2c,
    "cyclotomic-check": cmd_cyclotomic_check,
    "table": cmd_table,
}


# -- output ------------------------------------------------------------------------------


def _flatten(d, prefix=""):
    out = {}
    for key, val in d.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict) and val and all(not isinstance(v, (dict, list)) for v in val.values()) \
                and name != "coords":
            out.update(_flatten(val, name + "."))
        elif isinstance(val, (dict, list)):
            out[name] = json.dumps(val, separators=(",", ":"))
        else:
            out[name] = val
    return out


def render(result, fmt):
    if fmt == "json":
        return json.dumps(result) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if isinstance(result, list):
            fields = list(TABLE_FIELDS)
            rows = result
        else:
            rows = [_flatten(result)]
            fields = list(rows[0])
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    # text
    if isinstance(result, list):
        return "".join(" ".join(f"{k}={r[k]}" for k in TABLE_FIELDS) + "\n" for r in result)
    return "".join(f"{k}: {v}\n" for k, v in _flatten(result).items())


def run(argv=None, out=None):
    """Run the CLI; returns the exit code."""
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format or ("csv" if args.command == "table" else "json")
        result = HANDLERS[args.command](args)
    except Unsupported as exc:
        msg = str(exc)
        if not msg.startswith("unsupported"):
            msg = f"unsupported: {msg}"
        out.write(json.dumps({"error": msg}) + "\n")
        return 3
    except (UsageError, RingError, SymbolError, LatticeError, cyclotomic.CyclotomicError) as exc:
        out.write(json.dumps({"error": str(exc)}) + "\n")
        return 2
    out.write(render(result, fmt))
    return 0


def main():  # pragma: no cover - console entry point
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
