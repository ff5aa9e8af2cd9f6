"""Command-line front end.

Subcommands: check, certify, profile, identities, corpus, demo-hilbert.
Exit codes follow a pipeline-friendly contract: 0 the property holds,
1 it fails, 2 the evidence was inconclusive, and 10 or above for usage
or runtime errors.  Reports embed every threshold they were produced
with and are byte-stable for a fixed configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import analysis as ana
from . import corpus as co
from . import intertwine as itw
from . import sections as sec
from . import symbols as sy
from .characterize import CheckConfig, dispatch
from .sections import FoguelCase, parse_case
from .symbols import FourierSymbol, QuotientConfig, SymbolError

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 10
EXIT_RUNTIME = 11


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    """CLI-level configuration; thresholds echo into every report."""

    trunc: tuple[int, ...] = (16, 32, 64, 128, 256, 512)
    nmax: int = 128
    depth: int = 12
    tol: float = ana.STABILIZATION_TOL
    seed: int = 7
    out: str | None = None
    fmt: str = "json"

    def check_config(self) -> CheckConfig:
        return CheckConfig(
            quotient=QuotientConfig(depth=self.depth, tol=0.05),
            stabilization_tol=self.tol,
        )

    def to_json(self) -> dict:
        return {
            "trunc": list(self.trunc),
            "nmax": self.nmax,
            "depth": self.depth,
            "tol": self.tol,
            "seed": self.seed,
            "format": self.fmt,
        }


# ---------------------------------------------------------------------
# symbol and case sources
# ---------------------------------------------------------------------

def _parse_coeff_list(text: str) -> dict[int, complex]:
    out: dict[int, complex] = {}
    for item in text.split(","):
        if not item:
            continue
        parts = item.split(":")
        if len(parts) == 2:
            n, re = parts
            out[int(n)] = complex(float(re), 0.0)
        elif len(parts) == 3:
            n, re, im = parts
            out[int(n)] = complex(float(re), float(im))
        else:
            raise UsageError(f"bad coefficient item {item!r}; use n:re or n:re:im")
    return out


def load_symbol_source(token: str) -> FourierSymbol:
    """builtin:NAME?k=v&... or file:PATH in the symbol-file format."""
    if token.startswith("file:"):
        path = token[len("file:"):]
        try:
            return sy.load_symbol(path)
        except FileNotFoundError as exc:
            raise UsageError(f"unreadable symbol file {path!r}") from exc
    if token.startswith("builtin:"):
        rest = token[len("builtin:"):]
        name, _, query = rest.partition("?")
        params: dict = {}
        if query:
            for kv in query.split("&"):
                key, _, value = kv.partition("=")
                if key == "alpha":
                    params["alpha"] = complex(value)
                elif key in ("coeffs", "theta"):
                    parsed = _parse_coeff_list(value)
                    params[key] = parsed
                else:
                    raise UsageError(f"unknown builtin parameter {key!r}")
        try:
            return sy.builtin_catalog(name, **params)
        except (SymbolError, KeyError) as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"bad symbol source {token!r}; use builtin:NAME or file:PATH")


def _parse_case(token: str) -> FoguelCase:
    try:
        return parse_case(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(doc, cfg: RunConfig, text: str | None = None) -> None:
    payload = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(payload if text is None else text)
    else:
        sys.stdout.write(payload if text is None else text)


# ---------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------

def cmd_check(case_token: str, symbol_token: str, cfg: RunConfig) -> int:
    case = _parse_case(case_token)
    symbol = load_symbol_source(symbol_token)
    report = dispatch(case, symbol, cfg.check_config())
    doc = report.to_json()
    doc["config"] = cfg.to_json()
    _emit(doc, cfg)
    if report.verdict.holds:
        return EXIT_HOLDS
    if report.verdict.fails:
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE


_CERT_BUILDERS = {
    "t:s,s*": itw.build_A_toeplitz_S_Sstar,
    "h:s,s*": itw.build_A_hankel_S_Sstar,
    "h:s,s": itw.build_A_hankel_S_S,
    "t:s*,s": itw.build_A_toeplitz_Sstar_S,
}


def cmd_certify(case_token: str, symbol_token: str, cfg: RunConfig) -> int:
    case = _parse_case(case_token)
    symbol = load_symbol_source(symbol_token)
    check_cfg = cfg.check_config()
    report = dispatch(case, symbol, check_cfg)
    if not report.verdict.holds:
        _emit({"case": case.token(), "status": report.status,
               "certificate": None, "config": cfg.to_json()}, cfg)
        return EXIT_FAILS
    n = max(cfg.trunc)
    token = case.token()
    if token in _CERT_BUILDERS:
        cert = _CERT_BUILDERS[token](symbol, n, check_cfg, report)
    elif token == "t:s,s":
        zero = sy.FourierSymbol.from_coeffs({})
        cert = itw.IntertwinerCertificate(
            case=case, recipe="zero", parts={"theta": zero}, psi=None,
            residuals={"commutator": 0.0}, margins={"commutator": 1}, size=n)
    elif case.diag_pair == (sec.BACKSHIFT, sec.BACKSHIFT):
        cert = itw.build_A_star_star(symbol, case.kind, n, check_cfg)
    else:
        raise RuntimeError(
            "no constructive certificate for h:s*,s; the similarity criterion "
            "for that case is imported, not constructive")
    doc = cert.to_json()
    doc["config"] = cfg.to_json()
    _emit(doc, cfg)
    return EXIT_HOLDS


def cmd_profile(case_token: str, symbol_token: str, cfg: RunConfig) -> int:
    case = _parse_case(case_token)
    if case.diag_pair not in ((sec.SHIFT, sec.BACKSHIFT), (sec.SHIFT, sec.SHIFT)):
        raise UsageError("profile supports the (s,s*) and (s,s) diagonal pairs only")
    symbol = load_symbol_source(symbol_token)
    size = max(cfg.trunc)
    points = []
    for n in range(1, cfg.nmax + 1):
        xn = sec.xn_section(case, symbol, n, size)
        points.append((n, ana.op_norm(xn)))
    profile = ana.growth_profile(points, tol_rel=cfg.tol)
    csv = profile.to_csv().replace("k,value", "n,norm", 1)
    _emit(None, cfg, text=csv)
    return EXIT_HOLDS if profile.bounded else EXIT_FAILS


def cmd_identities(cfg: RunConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    n = 64
    worst = {"th_id_1": 0.0, "th_id_2": 0.0,
             "tph_toeplitz_defect": 0.0, "tph_hankel_defect": 0.0,
             "tph_four_term": 0.0}
    for _ in range(100):
        phi = sy.random_laurent_symbol(rng, 8)
        psi = sy.random_laurent_symbol(rng, 8)
        worst["th_id_1"] = max(worst["th_id_1"], itw.verify_th_id(1, phi, psi, n))
        worst["th_id_2"] = max(worst["th_id_2"], itw.verify_th_id(2, phi, psi, n))
        crit = itw.verify_tph_criteria(phi, psi, n)
        worst["tph_toeplitz_defect"] = max(worst["tph_toeplitz_defect"],
                                           crit["toeplitz_defect"])
        worst["tph_hankel_defect"] = max(worst["tph_hankel_defect"],
                                         crit["hankel_defect"])
        worst["tph_four_term"] = max(worst["tph_four_term"], crit["four_term"])
    doc = {"suite": "toeplitz_hankel_identities", "size": n, "pairs": 100,
           "seed": cfg.seed, "max_residuals": worst,
           "max_residual": max(worst.values()), "config": cfg.to_json()}
    _emit(doc, cfg)
    return EXIT_HOLDS if doc["max_residual"] <= 1e-10 else EXIT_FAILS


def cmd_corpus(cfg: RunConfig, path: str | None = None) -> int:
    entries = co.load_corpus(path) if path else None
    result = co.corpus_run(cfg.check_config(), entries)
    doc = result.to_json()
    doc["config"] = cfg.to_json()
    _emit(doc, cfg)
    for row in result.rows:
        mark = "ok " if row.match else "MISMATCH"
        sys.stderr.write(f"{mark} {row.entry.name:16s} {row.entry.case.token():8s} "
                         f"expected={row.entry.expected} got={row.got}\n")
    return min(len(result.mismatches), 9)


def cmd_demo_hilbert(cfg: RunConfig) -> int:
    """Reproduce the Hilbert-Hankel story as one report.

    Section norms of the classical matrix [1/(i+j+1)] increase but stay
    below pi; the derivative of its analytic symbol part escapes H^2 and
    BMOA; and the power blocks X_n of the associated (s,s*) operator
    grow, certifying that no similarity to a contraction exists.
    """
    psi = sy.builtin_catalog("hilbert")
    check_cfg = cfg.check_config()

    sizes = (2, 8, 32, 128, 512)
    norms = [(n, ana.op_norm(sec.hankel_section(psi, n))) for n in sizes]
    below_pi = all(v < np.pi for _, v in norms)
    increasing = all(norms[i][1] < norms[i + 1][1] for i in range(len(norms) - 1))

    f = sy.riesz_project(psi, "plus")
    fprime = sy.analytic_derivative(f, "f_prime")
    h2 = [(n, ana.h2_partial_norm(fprime, n)) for n in (10, 100, 1000)]
    bmoa = ana.bmoa_section_test(fprime, check_cfg.bmoa_sizes)

    case = parse_case("h:s,s*")
    size = max(cfg.trunc)
    ns = [n for n in (1, 2, 4, 8, 16, 32, 48, 64, 96, 128) if n <= cfg.nmax]
    growth = ana.growth_profile(
        [(n, ana.op_norm(sec.xn_section(case, psi, n, size))) for n in ns],
        tol_rel=cfg.tol)

    doc = {
        "hilbert_section_norms": [[n, v] for n, v in norms],
        "section_norms_below_pi": below_pi,
        "section_norms_increasing": increasing,
        "h2_partial_norms_of_derivative": [[n, v] for n, v in h2],
        "bmoa_test_of_derivative": bmoa.to_json(),
        "power_block_growth": {"points": [[k, v] for k, v in growth.points],
                               "class": growth.kind,
                               "alpha": growth.alpha, "r2": growth.r2},
        "similar_to_contraction": False,
        "config": cfg.to_json(),
    }
    _emit(doc, cfg)
    ok = (below_pi and increasing and bmoa.fails and not growth.bounded)
    sys.stderr.write(f"section norms < pi: {'true' if below_pi else 'false'}\n")
    sys.stderr.write(f"power block growth class: {growth.kind}\n")
    return EXIT_HOLDS if ok else EXIT_FAILS


# ---------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="foguel-lab",
        description="Similarity-to-contraction laboratory for Foguel-type "
                    "block operators with Toeplitz/Hankel entries.",
        epilog="exit codes: 0 holds, 1 fails, 2 inconclusive, >=10 usage or "
               "runtime errors; corpus exits with its mismatch count. "
               f"Set {co.THREADS_ENV} to cap corpus parallelism.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--trunc", default="16,32,64,128,256,512",
                        help="comma-separated section sizes (default %(default)s)")
        sp.add_argument("--nmax", type=int, default=128,
                        help="largest power index for profiles (default %(default)s)")
        sp.add_argument("--depth", type=int, default=12,
                        help="dyadic refinement depth (default %(default)s)")
        sp.add_argument("--tol", type=float, default=ana.STABILIZATION_TOL,
                        help="stabilization tolerance (default %(default)s)")
        sp.add_argument("--seed", type=int, default=7,
                        help="seed for randomized suites (default %(default)s)")
        sp.add_argument("--out", default=None, help="write the report to this path")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default="json", help="report format where applicable")

    sp = sub.add_parser("check", help="decide similarity to a contraction")
    sp.add_argument("--case", required=True,
                    help="t:s,s* | t:s,s | t:s*,s | t:s*,s* | h:... (t=Toeplitz, h=Hankel)")
    sp.add_argument("--symbol", required=True, help="builtin:NAME?k=v or file:PATH")
    common(sp)

    sp = sub.add_parser("certify", help="build an intertwiner certificate")
    sp.add_argument("--case", required=True)
    sp.add_argument("--symbol", required=True)
    common(sp)

    sp = sub.add_parser("profile", help="power-block norm profile (n, |X_n|) as CSV")
    sp.add_argument("--case", required=True)
    sp.add_argument("--symbol", required=True)
    common(sp)

    sp = sub.add_parser("identities", help="randomized Toeplitz/Hankel identity suites")
    common(sp)

    sp = sub.add_parser("corpus", help="run the regression corpus")
    sp.add_argument("--corpus-file", default=None,
                    help="path to a user corpus (default: shipped table)")
    common(sp)

    sp = sub.add_parser("demo-hilbert", help="the Hilbert-Hankel narrative")
    common(sp)

    return p


def _run_config(args: argparse.Namespace) -> RunConfig:
    try:
        trunc = tuple(int(tok) for tok in args.trunc.split(",") if tok)
    except ValueError as exc:
        raise UsageError(f"bad --trunc value {args.trunc!r}") from exc
    if not trunc or min(trunc) < 2:
        raise UsageError("--trunc needs sizes >= 2")
    return RunConfig(trunc=trunc, nmax=args.nmax, depth=args.depth,
                     tol=args.tol, seed=args.seed, out=args.out, fmt=args.fmt)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help; map its usage failures above 10
        return 0 if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = _run_config(args)
        if args.command == "check":
            return cmd_check(args.case, args.symbol, cfg)
        if args.command == "certify":
            return cmd_certify(args.case, args.symbol, cfg)
        if args.command == "profile":
            return cmd_profile(args.case, args.symbol, cfg)
        if args.command == "identities":
            return cmd_identities(cfg)
        if args.command == "corpus":
            return cmd_corpus(cfg, args.corpus_file)
        if args.command == "demo-hilbert":
            return cmd_demo_hilbert(cfg)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (SymbolError, itw.CertificateError, RuntimeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    raise SystemExit(main())
