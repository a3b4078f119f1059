"""Command-line front end.

    simplicial-codes field   --poly "x^3+x+1"
    simplicial-codes lfsr    --poly "x^3+x+1" --init 100 --len 7
    simplicial-codes theory  --poly "x^3+x+1" --m 4 --L "1,2;2,3;3,4"
    simplicial-codes code build    --n 3 --m 4 --L "1,2;2,3;3,4" --variant dstar --out report.json
    simplicial-codes code subfield --n 2 --m 3 --L "1,2;2,3" --variant dc
    simplicial-codes verify  --n 2,3 --m-max 4 --out ledger.csv

Exit status: 0 ok, 2 usage error, 3 enumeration budget exceeded,
4 hypothesis violation (or failed claim) under --strict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import lfsr as lf
from .codes import (
    BUDGET_ENV,
    DC,
    DSTAR,
    VARIANTS,
    BudgetExceeded,
    CodeError,
    build_defining_set,
    code_report,
    load_bounds,
    message_weights,
    subfield_expand,
    subfield_report,
)
from .gf2n import FieldError, default_modulus, irreducible_polys, make_ctx, parse_poly
from .simplicial import ComplexError, parse_L_list, submasks, support_mask
from .verify import predictions, verify_theorems
from .weight_theory import (
    all_messages,
    build_eta_system,
    build_wspace,
    mat_to_lists,
    theta,
    weight_cD_star_formula,
    weight_cDc_formula,
)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_HYPOTHESIS = 0, 2, 3, 4


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    modulus: str | None = None
    m: int | None = None
    L_list: list = field(default_factory=list)
    variant: str = DSTAR
    subfield: bool = False
    n_list: list = field(default_factory=list)
    m_max: int = 0
    limit: int | None = None
    dedup: bool = True
    out: str | None = None
    bounds: str | None = None
    as_json: bool = False
    strict: bool = False
    budget: int | None = None
    workers: int = 1
    minimality: bool = True
    extra: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# argument parsing


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from None


def _field_args(p: argparse.ArgumentParser, need_n=False):
    p.add_argument("--n", type=int, help="extension degree; the default modulus is used if --poly is absent")
    p.add_argument("--poly", help='modulus f, e.g. "x^3+x+1" or 0xB')


def _code_args(p: argparse.ArgumentParser):
    _field_args(p)
    p.add_argument("--m", type=int, required=True, help="message length m")
    p.add_argument("--L", required=True, help='one index set per layer, e.g. "1,2;2,3;3,4"')
    p.add_argument("--variant", choices=VARIANTS, default=DSTAR, help="defining set D* or D^c (default dstar)")
    p.add_argument("--bounds", help="CSV table q,length,k,best_d for distance optimality")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    p.add_argument("--strict", action="store_true", help="exit 4 when no parameter theorem applies")
    p.add_argument("--budget", type=int, help=f"message budget (default from ${BUDGET_ENV} or 2^20)")
    p.add_argument("--workers", type=int, default=1, help="threads for the brute-force enumeration")
    p.add_argument("--no-minimality", action="store_true", help="skip the exhaustive minimality check")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="simplicial-codes", description="Codes from simplicial complexes over F_{2^n}.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="power table of F_2[x]/(f)")
    _field_args(p)
    p.add_argument("--K", type=int, help="last power listed (default 2n-2)")
    p.add_argument("--list-irreducible", type=int, metavar="N", help="list irreducible polynomials of degree N")

    p = sub.add_parser("lfsr", help="terms, states and minimal polynomial of an LFSR sequence")
    p.add_argument("--poly", required=True, help="characteristic polynomial")
    p.add_argument("--init", required=True, help="initial state bits, e.g. 100")
    p.add_argument("--len", type=int, default=16, help="number of terms to print")
    p.add_argument("--g", action="append", default=[], help="test membership of the sequence in G(g); repeatable")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("theory", help="CSV dump of A_k, M_i, W and per-message weights")
    _field_args(p)
    p.add_argument("--m", type=int, help="message length (enables per-message rows)")
    p.add_argument("--L", help="index sets of the Delta_L layers")
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("code", help="build a code and report its parameters")
    csub = p.add_subparsers(dest="code_command", required=True)
    b = csub.add_parser("build", help="C_D over F_{2^n}")
    _code_args(b)
    b.add_argument("--subfield", action="store_true", help="report the binary subfield code instead")
    s = csub.add_parser("subfield", help="binary subfield code C^(2)_D")
    _code_args(s)

    p = sub.add_parser("verify", help="check the parameter theorems over a sweep of instances")
    p.add_argument("--n", type=_int_list, required=True, help="comma list of extension degrees")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--limit", type=int, help="stop after this many instances")
    p.add_argument("--no-dedup", action="store_true", help="keep coordinate-permuted duplicates")
    p.add_argument("--no-minimality", action="store_true", help="skip exhaustive minimality checks")
    p.add_argument("--out", help="ledger CSV path")
    p.add_argument("--strict", action="store_true", help="exit 4 if any claim fails")
    p.add_argument("--budget", type=int)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cmd = ns.command if ns.command != "code" else f"code {ns.code_command}"
    cfg = RunConfig(subcommand=cmd)
    cfg.as_json = getattr(ns, "json", False)
    cfg.out = getattr(ns, "out", None)
    cfg.budget = getattr(ns, "budget", None)
    if cmd in ("field", "theory") or cmd.startswith("code"):
        if ns.n is None and ns.poly is None and not getattr(ns, "list_irreducible", None):
            raise UsageError("give --n or --poly")
        cfg.n, cfg.modulus = ns.n, ns.poly
    if cmd == "field":
        cfg.extra = {"K": ns.K, "list_irreducible": ns.list_irreducible}
    elif cmd == "lfsr":
        cfg.modulus = ns.poly
        cfg.extra = {"init": ns.init, "len": ns.len, "g": ns.g}
    elif cmd == "theory":
        if (ns.m is None) != (ns.L is None):
            raise UsageError("--m and --L go together")
        cfg.m = ns.m
        cfg.L_list = parse_L_list(ns.L) if ns.L else []
    elif cmd.startswith("code"):
        cfg.m = ns.m
        cfg.L_list = parse_L_list(ns.L)
        cfg.variant = ns.variant
        cfg.subfield = cmd == "code subfield" or ns.subfield
        cfg.bounds = ns.bounds
        cfg.strict = ns.strict
        cfg.workers = ns.workers
        cfg.minimality = not ns.no_minimality
    elif cmd == "verify":
        cfg.n_list = ns.n
        cfg.m_max = ns.m_max
        cfg.limit = ns.limit
        cfg.dedup = not ns.no_dedup
        cfg.strict = ns.strict
        cfg.minimality = not ns.no_minimality
    return cfg


def _ctx(cfg: RunConfig, K=None):
    poly = parse_poly(cfg.modulus) if cfg.modulus is not None else default_modulus(cfg.n)
    ctx = make_ctx(poly, K)
    if cfg.n is not None and ctx.n != cfg.n:
        raise UsageError(f"--n {cfg.n} disagrees with the degree {ctx.n} of --poly")
    return ctx


def _check_layers(cfg: RunConfig, n: int):
    if len(cfg.L_list) != n:
        raise UsageError(f"--L gives {len(cfg.L_list)} index sets, expected n = {n}")
    for L in cfg.L_list:
        support_mask(L, cfg.m)


def _emit(text: str, out: str | None, stdout):
    if out:
        Path(out).write_text(text)
    else:
        stdout.write(text)


# --------------------------------------------------------------------------
# subcommands


def _run_field(cfg: RunConfig, stdout):
    deg = cfg.extra["list_irreducible"]
    if deg:
        for p in irreducible_polys(deg):
            stdout.write(f"{p}\t{p.coeffs:#x}\n")
        return EXIT_OK
    ctx = _ctx(cfg, cfg.extra["K"])
    stdout.write(f"# F_{ctx.q} = F_2[x]/({ctx.modulus})\n")
    stdout.write(ctx.power_table_csv())
    return EXIT_OK


def _run_lfsr(cfg: RunConfig, stdout):
    seq = lf.LfsrSeq.from_string(cfg.modulus, cfg.extra["init"])
    length = cfg.extra["len"]
    mat = lf.states_matrix(seq)
    data = {
        "charpoly": str(seq.charpoly),
        "init": "".join(map(str, seq.init_state)),
        "prefix": seq.prefix_str(length),
        "states": ["".join(map(str, r)) for r in mat],
        "state_rank": lf.matrix_rank(mat),
        "minimal_polynomial": str(lf.minimal_polynomial(seq)),
        "membership": {str(lf._as_poly(g)): lf.in_Gf(seq, g) for g in cfg.extra["g"]},
    }
    if cfg.as_json:
        stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    stdout.write(data["prefix"] + "\n")
    stdout.write("states:\n")
    for r in data["states"]:
        stdout.write("  " + " ".join(r) + "\n")
    stdout.write(f"minimal polynomial: {data['minimal_polynomial']}\n")
    for g, ok in data["membership"].items():
        stdout.write(f"in G({g}): {ok}\n")
    return EXIT_OK


def theory_csv(cfg: RunConfig) -> str:
    """Long-format CSV: table,key,field,value."""
    ctx = _ctx(cfg)
    n = ctx.n
    es = build_eta_system(ctx)
    ws = build_wspace(es)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "key", "field", "value"])
    for k, A in enumerate(es.A):
        for r, row in enumerate(mat_to_lists(A, n)):
            w.writerow(["A", k, f"row{r}", "".join(map(str, row))])
    for i, M in enumerate(es.M):
        for r, row in enumerate(mat_to_lists(M, n)):
            w.writerow(["M", i, f"row{r}", "".join(map(str, row))])
    for s, wt in enumerate(ws):
        for j, comp in enumerate(wt):
            w.writerow(["W", s, f"w{j}", "+".join(f"a{k}" for k in range(n) if (comp >> k) & 1) or "0"])
    if cfg.m is not None:
        _check_layers(cfg, n)
        m = cfg.m
        layers = [submasks(support_mask(L, m)) for L in cfg.L_list]
        ds_star = build_defining_set(ctx, m, cfg.L_list, DSTAR)
        ds_c = build_defining_set(ctx, m, cfg.L_list, DC)
        oracle_star = message_weights(ds_star, budget=cfg.budget)
        oracle_c = message_weights(ds_c, budget=cfg.budget) if ds_c.length else None
        for z, alphas in enumerate(all_messages(n, m)):
            w.writerow(["message", z, "theta", theta(ws, alphas, cfg.L_list)])
            w.writerow(["message", z, "formula_dstar", weight_cD_star_formula(es, ws, alphas, layers)])
            w.writerow(["message", z, "oracle_dstar", int(oracle_star[z])])
            w.writerow(["message", z, "formula_dc", weight_cDc_formula(es, ws, alphas, layers)])
            w.writerow(["message", z, "oracle_dc", int(oracle_c[z]) if oracle_c is not None else 0])
    return buf.getvalue()


def _run_theory(cfg: RunConfig, stdout):
    _emit(theory_csv(cfg), cfg.out, stdout)
    return EXIT_OK


def _run_code(cfg: RunConfig, stdout, stderr):
    ctx = _ctx(cfg)
    _check_layers(cfg, ctx.n)
    bounds = load_bounds(cfg.bounds) if cfg.bounds else None
    ds = build_defining_set(ctx, cfg.m, cfg.L_list, cfg.variant)
    kw = dict(budget=cfg.budget, bounds=bounds, minimality=cfg.minimality, workers=cfg.workers)
    if cfg.subfield:
        rep = subfield_report(subfield_expand(ds), **kw)
    else:
        rep = code_report(ds, **kw)
    text = rep.to_json() + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    stdout.write(text if cfg.as_json else rep.summary() + "\n")
    if cfg.strict:
        fams = {"dstar": ("cdstar_params", "cdstar_equal_L"), "dc": ("cdc_params", "cdc_equal_L")}[cfg.variant]
        if cfg.subfield:
            fams = ("subfield_dstar",) if cfg.variant == DSTAR else ("subfield_dc",)
        applicable = set(predictions(ctx.n, cfg.m, cfg.L_list)) & set(fams)
        if not applicable:
            stderr.write("strict: no parameter theorem's hypotheses hold for this instance\n")
            return EXIT_HYPOTHESIS
    return EXIT_OK


def _run_verify(cfg: RunConfig, stdout, stderr):
    if any(n < 1 for n in cfg.n_list) or cfg.m_max < 0:
        raise UsageError("--n entries must be positive and --m-max nonnegative")
    ledger = verify_theorems(
        cfg.n_list, cfg.m_max, dedup=cfg.dedup, limit=cfg.limit, budget=cfg.budget, minimality=cfg.minimality
    )
    text = ledger.to_csv()
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stdout.write(text)
    stderr.write(ledger.summary() + f" in {ledger.seconds:.1f} s\n")
    if cfg.strict and ledger.failures():
        return EXIT_HYPOTHESIS
    return EXIT_OK


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if cfg.subcommand == "field":
            return _run_field(cfg, stdout)
        if cfg.subcommand == "lfsr":
            return _run_lfsr(cfg, stdout)
        if cfg.subcommand == "theory":
            return _run_theory(cfg, stdout)
        if cfg.subcommand.startswith("code"):
            return _run_code(cfg, stdout, stderr)
        if cfg.subcommand == "verify":
            return _run_verify(cfg, stdout, stderr)
        raise UsageError(f"unknown subcommand {cfg.subcommand!r}")
    except BudgetExceeded as e:
        stderr.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except (UsageError, FieldError, ComplexError, CodeError, lf.SequenceError, OSError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (UsageError, ComplexError) as e:
        parser.error(str(e))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
