"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 golden-matrix mismatch, 4 oracle size cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import asymptotics, corrw, decoherence, export, spectra, verify
from . import pathspace as ps
from .errors import DecoError, NTooLarge

EXIT_VERIFY, EXIT_INPUT, EXIT_GOLDEN, EXIT_ORACLE = 1, 2, 3, 4
ORACLE_MAX_N = 10

_S = 1 / math.sqrt(2)
DEFAULT_INIT = ps.InitialState(_S, 1j * _S)


class CliError(Exception):
    def __init__(self, msg: str, code: int = EXIT_INPUT):
        super().__init__(msg)
        self.code = code


def _complex(token: str) -> complex:
    re, im = token.split(",")
    return complex(float(re), float(im))


def parse_coin(tokens: list[str]) -> ps.QuantumCoin:
    if len(tokens) == 1:
        name = tokens[0].lower()
        if name == "hadamard":
            return ps.QuantumCoin.hadamard()
        if name in ("gudder-sorkin", "gs"):
            return ps.QuantumCoin.gudder_sorkin()
        raise CliError(f"unknown coin {tokens[0]!r}")
    if len(tokens) != 4:
        raise CliError("--coin takes a name or four re,im pairs (a b c d)")
    return ps.validate_coin(ps.QuantumCoin(*(_complex(t) for t in tokens)))


def parse_init(tokens: list[str] | None) -> ps.InitialState:
    if not tokens:
        return DEFAULT_INIT
    if len(tokens) == 1:
        name = tokens[0].lower()
        if name in ("e-1", "left"):
            return ps.InitialState.left()
        if name in ("e1", "e+1", "right"):
            return ps.InitialState.right()
        raise CliError(f"unknown initial state {tokens[0]!r}")
    if len(tokens) != 2:
        raise CliError("--init takes e-1, e+1 or two re,im pairs (alpha beta)")
    return ps.validate_state(ps.InitialState(_complex(tokens[0]), _complex(tokens[1])))


def parse_n_range(text: str) -> list[int]:
    """``10,100,1000`` or inclusive ``start:stop[:step]``."""
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(start, stop + 1, step))
    return [int(x) for x in text.split(",") if x]


@dataclass
class RunConfig:
    coin: ps.QuantumCoin | None
    init: ps.InitialState | None
    params: corrw.CorrelatedRWParams
    kind: ps.Restriction
    ordering: ps.PathOrdering
    fmt: str | None
    out: str
    tol: float


def build_config(args) -> RunConfig:
    direct = args.p is not None or args.p0 is not None
    if direct:
        if args.p is None or args.p0 is None:
            raise CliError("--p and --p0 must be given together")
        coin = init = None
        params = corrw.CorrelatedRWParams(args.p0, args.p)
    else:
        coin = parse_coin(args.coin)
        init = parse_init(args.init)
        params = corrw.from_coin(coin, init)
    kind = ps.Restriction.parse(args.kind)
    return RunConfig(coin, init, params, kind, ps.PathOrdering(args.ordering), args.format, args.out, args.tol)


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", newline="\n") as f:
            f.write(text)


def _need_coin(cfg: RunConfig, what: str) -> None:
    if cfg.coin is None:
        raise CliError(f"{what} needs a coin and initial state, not --p/--p0")


def cmd_matrix(args) -> int:
    cfg = build_config(args)
    if args.two_site:
        d = decoherence.two_site_matrix(args.n, cfg.ordering)
    else:
        _need_coin(cfg, "matrix")
        d = decoherence.build_matrix(cfg.coin, cfg.init, args.n, cfg.kind, cfg.ordering)
    _write(cfg, export.matrix_to_csv(d) if cfg.fmt == "csv" else export.matrix_to_json(d))
    if args.golden:
        try:
            _, gold = export.golden_matrix(str(cfg.kind), args.n)
        except FileNotFoundError:
            raise CliError(f"no golden matrix for kind={cfg.kind} n={args.n}") from None
        if cfg.ordering is not ps.PathOrdering.PAPER:
            raise CliError("golden matrices are stored in the default ordering")
        dev = float(np.max(np.abs(d.entries - gold)))
        if dev > 1e-12:
            print(f"golden mismatch: max deviation {dev:.3g}", file=sys.stderr)
            return EXIT_GOLDEN
        print(f"golden match: max deviation {dev:.3g}", file=sys.stderr)
    return 0


def _spectrum(cfg: RunConfig, n: int, oracle: bool) -> spectra.Spectrum:
    if oracle:
        _need_coin(cfg, "--oracle")
        if n > ORACLE_MAX_N:
            raise CliError(f"--oracle is limited to n <= {ORACLE_MAX_N}", EXIT_ORACLE)
        return spectra.hermitian_eigenvalues(decoherence.build_matrix(cfg.coin, cfg.init, n, cfg.kind))
    return spectra.closed_form_spectrum(cfg.params, n, cfg.kind)


def cmd_spectrum(args) -> int:
    cfg = build_config(args)
    s = _spectrum(cfg, args.n, args.oracle)
    _write(cfg, export.spectrum_to_csv(s) if cfg.fmt == "csv" else export.spectrum_to_json(s, cfg.kind, args.n))
    return 0


def cmd_entropy(args) -> int:
    cfg = build_config(args)
    if args.oracle:
        report = spectra.von_neumann_entropy(_spectrum(cfg, args.n, True), args.n, cfg.kind, cfg.params)
    else:
        report = spectra.exact_entropy(cfg.params, args.n, cfg.kind)
    if cfg.fmt == "csv":
        text = f"kind,n,method,entropy_bits\n{cfg.kind},{args.n},{report.method},{export.fmt(report.value)}\n"
    else:
        text = json.dumps({"kind": str(cfg.kind), "n": args.n, "method": report.method, "entropy_bits": report.value}) + "\n"
    _write(cfg, text)
    return 0


SCAN_COLUMNS = [
    "n", "S_A0", "S_AP", "S_A1", "S_B", "H_rw", "H_qw",
    "A0_deficit_over_bias2", "S_AP_over_log2sqrtn", "S_AP_minus_log2sqrtn",
    "S_A1_over_cn", "S_A1_minus_cn_over_c", "H_rw_minus_log2sqrtn",
]


def scan_rows(cfg: RunConfig, ns: list[int]) -> list[dict]:
    """One row per n; scaled columns are ``None`` where the scaling is undefined."""
    p = cfg.params
    c = spectra.binary_entropy(p.p)
    rows = []
    for n in ns:
        row = {
            "n": n,
            "S_A0": spectra.exact_entropy_A0(p, n).value,
            "S_AP": spectra.exact_entropy_AP(p, n).value,
            "S_A1": spectra.exact_entropy_A1(p, n).value,
            "S_B": spectra.exact_entropy_B(p, n).value,
            "H_rw": corrw.shannon_entropy_rw(p, n),
            "H_qw": corrw.shannon_entropy_qw(cfg.coin, cfg.init, n) if cfg.coin is not None else None,
        }
        if abs(p.p - p.q) > 1e-9:
            bias = (p.p - p.q) ** (2 * (n - 1))
            if bias > 0:
                row["A0_deficit_over_bias2"] = spectra.entropy_deficit_A0(p, n) / bias
        lead = 0.5 * math.log2(n)
        if n > 1:
            row["S_AP_over_log2sqrtn"] = row["S_AP"] / lead
        row["S_AP_minus_log2sqrtn"] = row["S_AP"] - lead
        row["S_A1_over_cn"] = row["S_A1"] / (c * n)
        row["S_A1_minus_cn_over_c"] = (row["S_A1"] - c * n) / c
        row["H_rw_minus_log2sqrtn"] = row["H_rw"] - lead
        rows.append(row)
    return rows


def _csv(columns: list[str], rows: list[dict]) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, (int, np.integer)) or isinstance(v, str):
            return str(v)
        return export.fmt(v)

    lines = [",".join(columns)]
    lines += [",".join(cell(r.get(k)) for k in columns) for r in rows]
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> int:
    cfg = build_config(args)
    ns = parse_n_range(args.n_range) if args.n_range else [args.n]
    if not ns or min(ns) < 1 or max(ns) > 20_000:
        raise CliError("scan needs 1 <= n <= 20000")
    if args.table:
        if len(ns) < 3 or min(ns) < 2:
            raise CliError("--table needs at least three n values >= 2")
        table = asymptotics.table1_summary(cfg.params, cfg.coin, cfg.init, ns)
        cols = ["n", "H_rw", "H_qw", "S_A1", "S_AP"]
        fit_rows = [
            {"quantity": f.quantity, "leading": f.leading, "claimed_slope": f.claimed_slope,
             "fitted_slope": f.fitted_slope, "ratio_at_max": f.ratio_at_max, "matches": str(f.matches).lower()}
            for f in table.fits
        ]
        text = _csv(cols, table.rows) + "\n" + _csv(list(fit_rows[0]), fit_rows)
    else:
        text = _csv(SCAN_COLUMNS, scan_rows(cfg, ns))
    _write(cfg, text)
    return 0


def cmd_qw(args) -> int:
    cfg = build_config(args)
    if args.rw or cfg.coin is None:
        _write(cfg, export.distribution_to_csv(corrw.evolve(cfg.params, args.n)))
    else:
        _write(cfg, export.position_distribution_to_csv(args.n, corrw.qw_distribution(cfg.coin, cfg.init, args.n)))
    return 0


def cmd_verify(args) -> int:
    vcfg = verify.VerifyConfig(
        seed=args.seed,
        random_coins=args.random_coins,
        oracle_max_n=args.oracle_max_n,
        large_n=args.large_n,
        tol=args.tol,
    )
    sections = verify.run(vcfg)
    lines = []
    for s in sections:
        lines.append(f"[{s.status.upper()}] {s.name}")
        lines.extend(f"    {d}" for d in s.details)
    failed = [s for s in sections if s.status == verify.FAIL]
    warned = [s for s in sections if s.status == verify.WARN]
    lines.append(f"{len(sections)} sections: {len(sections) - len(failed) - len(warned)} pass, "
                 f"{len(warned)} warn, {len(failed)} fail")
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as f:
            f.write(text)
    return EXIT_VERIFY if failed else 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coin", nargs="+", default=["hadamard"], help="hadamard | gudder-sorkin | a b c d as re,im")
    common.add_argument("--init", nargs="+", help="e-1 | e+1 | alpha beta as re,im (default [1, i]/sqrt(2))")
    common.add_argument("--p", type=float, help="persistence probability (direct walk mode)")
    common.add_argument("--p0", type=float, help="first-step-right probability (direct walk mode)")
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--n-range", help="comma list or start:stop[:step]")
    common.add_argument("--kind", default="a0", help="full | a0 | ap | apx:<x> | a1 | b")
    common.add_argument("--ordering", choices=["paper", "binary"], default="paper")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--out", default="-")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--oracle", action="store_true", help="use the dense Jacobi route")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--golden", action="store_true", help="compare with the shipped n=3 matrices")

    parser = argparse.ArgumentParser(prog="deco", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    m = sub.add_parser("matrix", parents=[common], help="write a decoherence matrix")
    m.add_argument("--two-site", action="store_true")
    m.set_defaults(func=cmd_matrix)
    sub.add_parser("spectrum", parents=[common], help="eigenvalues of D_A").set_defaults(func=cmd_spectrum)
    sub.add_parser("entropy", parents=[common], help="von Neumann entropy of D_A").set_defaults(func=cmd_entropy)
    sc = sub.add_parser("scan", parents=[common], help="entropy columns over an n range")
    sc.add_argument("--table", action="store_true", help="walk entropy table with leading-order slope fits")
    sc.set_defaults(func=cmd_scan)
    q = sub.add_parser("qw", parents=[common], help="position distribution dump")
    q.add_argument("--rw", action="store_true", help="dump the correlated walk's directional distribution")
    q.set_defaults(func=cmd_qw)
    v = sub.add_parser("verify", parents=[common], help="run the verification suite")
    v.add_argument("--random-coins", type=int, default=10)
    v.add_argument("--oracle-max-n", type=int, default=7)
    v.add_argument("--large-n", type=int, default=10_000)
    v.set_defaults(func=cmd_verify)
    return parser


_PAIR = re.compile(r"^-[0-9.]+(e[-+]?[0-9]+)?,[-+]?[0-9.]+(e[-+]?[0-9]+)?$", re.IGNORECASE)


def _shield_negative_pairs(argv: list[str]) -> list[str]:
    """Prefix a space to ``-re,im`` tokens so argparse does not read them as flags."""
    return [" " + a if _PAIR.match(a) else a for a in argv]


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = make_parser().parse_args(_shield_negative_pairs(argv))
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DecoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
