from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from alpha_synthesis.models import KernelOperator, PlaneGrid
from alpha_synthesis.services.action_service import act_direct, act_spectral
from alpha_synthesis.services.builtin_service import BuiltinNotFoundError, BuiltinService
from alpha_synthesis.services.grid_service import make_line_grid
from alpha_synthesis.services.storage_service import (
    read_ncfk,
    write_csv,
    write_decay_table,
    write_json,
    write_ncfk,
    write_report,
)
from alpha_synthesis.services.synthesis_service import (
    decay_ladder,
    decay_report,
    find_rho,
    make_mollifier,
    verify_pointwise_bound,
)
from alpha_synthesis.services.verification_service import SUITES, gaussian_weight, run_suite
from alpha_synthesis.utils.config import DIRECT_ACTION_CAP, LOG_FILE, configure_logging
from alpha_synthesis.utils.validators import (
    AlphaSynthesisError,
    BudgetExceededError,
    NCFKFormatError,
    NonZeroTraceError,
    ResolutionExceededError,
)

# Codes de sortie
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NONZERO_TRACE = 4
EXIT_RESOLUTION = 5

logger = logging.getLogger("alpha_synthesis")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alpha-synthesis",
        description="Transformée alpha, action de module et synthèse spectrale sur grille",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="exécute une suite de vérification")
    verify.add_argument("suite", help="nom de la suite : " + ", ".join(SUITES))
    verify.add_argument("--n", type=int, default=256)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--out", type=Path, default=None)

    decay = sub.add_parser("synthesis-decay", help="échelle de décroissance en delta")
    decay.add_argument("--x", required=True, help="fichier NCFK ou opérateur prédéfini")
    decay.add_argument("--p", type=float, default=1.5)
    decay.add_argument("--levels", type=int, default=6)
    decay.add_argument("--n", type=int, default=256)
    decay.add_argument("--seed", type=int, default=0)
    decay.add_argument("--csv", type=Path, required=True)
    decay.add_argument("--out", type=Path, default=None, help="rapport JSON (défaut : à côté du CSV)")

    rho = sub.add_parser("find-rho", help="construit rho avec ||rho·X||_S1 < eps")
    rho.add_argument("--x", required=True, help="fichier NCFK ou opérateur prédéfini")
    rho.add_argument("--eps", type=float, required=True)
    rho.add_argument("--n", type=int, default=256)
    rho.add_argument("--seed", type=int, default=0)
    rho.add_argument("--out", type=Path, required=True, help="fichier NCFK de rho")

    bench = sub.add_parser("bench", help="compare act_direct et act_spectral")
    bench.add_argument("--n", type=int, nargs="+", default=[16, 32, 64])
    bench.add_argument("--csv", type=Path, required=True)
    return parser


def load_operator(source: str, n: int, seed: int) -> KernelOperator:
    """Lit un fichier NCFK de noyau, sinon construit l'opérateur prédéfini."""
    path = Path(source)
    if path.exists():
        obj = read_ncfk(path)
        if not isinstance(obj, KernelOperator):
            raise NCFKFormatError(f"{path} ne contient pas un noyau d'opérateur")
        return obj
    service = BuiltinService()
    try:
        return service.construire(source, make_line_grid(n), seed)
    except BuiltinNotFoundError:
        raise FileNotFoundError(
            f"{source} : ni fichier, ni opérateur prédéfini ({', '.join(service.lister_builtins())})"
        ) from None


def sidecar(path: Path, suffix: str = ".json") -> Path:
    return path.with_name(path.name + suffix)


def cmd_verify(args, parser: argparse.ArgumentParser) -> int:
    if args.suite not in SUITES:
        print(f"Suite inconnue : {args.suite}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    report = run_suite(args.suite, args.n, args.seed)
    out = args.out or Path(f"report-{args.suite}.json")
    write_report(out, report)
    for check in report.failures():
        print(f"ÉCHEC {check.name} : {check.lhs:.6e} vs {check.rhs:.6e} (tol {check.tolerance:.1e})")
    print(f"{report.suite} : {len(report.checks)} contrôles, {'succès' if report.passed else 'échec'} -> {out}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_synthesis_decay(args) -> int:
    x = load_operator(args.x, args.n, args.seed)
    fam = make_mollifier(PlaneGrid(x.grid))
    table, ledger = decay_ladder(x, fam, args.p, args.levels)
    report = decay_report(table, ledger, x)
    report.inputs.update({"x": args.x, "seed": args.seed})
    for row in table:
        report.merge(verify_pointwise_bound(x, fam, row.delta), f"pointwise_delta_{row.delta:g}_")
    write_decay_table(args.csv, table)
    write_report(args.out or sidecar(args.csv), report)
    if table.truncated:
        print(f"Échelle tronquée : {len(table)} niveaux résolus sur {table.requested}")
    print(f"{len(table)} niveaux écrits dans {args.csv}, {'succès' if report.passed else 'échec'}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_find_rho(args) -> int:
    x = load_operator(args.x, args.n, args.seed)
    fam = make_mollifier(PlaneGrid(x.grid))
    try:
        rho, delta0, report = find_rho(x, args.eps, fam)
    except ResolutionExceededError as exc:
        if exc.report is not None:
            write_report(sidecar(args.out, ".report.json"), exc.report)
        if exc.best_norm is None:
            print(f"Résolution insuffisante : {exc}", file=sys.stderr)
        else:
            print(f"Résolution insuffisante : meilleure norme {exc.best_norm:.6e}", file=sys.stderr)
        return EXIT_RESOLUTION
    report.inputs.update({"x": args.x, "seed": args.seed})
    write_ncfk(args.out, rho)
    metadata = {
        "delta0": delta0,
        "V": fam.versal_constant,
        "final_norm": report.quantity("final_norm"),
        "eps": args.eps,
        "tau_hash": fam.tau_hash,
        "report": report.to_dict(),
    }
    write_json(sidecar(args.out), metadata)
    print(f"rho écrit dans {args.out} (delta0 = {delta0:g}, ||rho·X||_S1 = {metadata['final_norm']:.6e})")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_bench(args) -> int:
    rows = []
    for n in args.n:
        grid = make_line_grid(n)
        x = BuiltinService().construire("gauss-proj", grid)
        q = gaussian_weight(PlaneGrid(grid))
        start = time.perf_counter()
        spectral = act_spectral(q, x)
        spectral_ms = (time.perf_counter() - start) * 1e3
        try:
            start = time.perf_counter()
            direct = act_direct(q, x, cap=DIRECT_ACTION_CAP)
            direct_ms = (time.perf_counter() - start) * 1e3
            disagreement = (direct - spectral).norm(1.0)
        except BudgetExceededError:
            direct_ms, disagreement = "skipped", "skipped"
        rows.append((n, direct_ms, spectral_ms, disagreement))
        print(f"n = {n} : direct {direct_ms}, spectral {spectral_ms:.3f} ms")
    write_csv(args.csv, ("n", "direct_ms", "spectral_ms", "s1_disagreement"), rows)
    measured = [row[3] for row in rows if row[3] != "skipped"]
    decreasing = all(b < a for a, b in zip(measured, measured[1:]))
    trend = "décroissant" if decreasing else "non décroissant, au niveau de l'arrondi"
    worst = max(measured, default=0.0)
    print(f"Désaccord S1 {trend} sur {len(measured)} grilles (max {worst:.3e})")
    logger.info("bench : désaccord S1 %s, max %.3e", trend, worst)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging(Path(os.environ.get("ALPHA_SYNTHESIS_LOG", LOG_FILE)))

    try:
        if args.command == "verify":
            return cmd_verify(args, parser)
        if args.command == "synthesis-decay":
            return cmd_synthesis_decay(args)
        if args.command == "find-rho":
            return cmd_find_rho(args)
        return cmd_bench(args)
    except NonZeroTraceError as exc:
        print(f"Trace non nulle : tr(X) = {exc.trace:.6e}", file=sys.stderr)
        return EXIT_NONZERO_TRACE
    except ResolutionExceededError as exc:
        print(f"Résolution insuffisante : {exc}", file=sys.stderr)
        return EXIT_RESOLUTION
    except (OSError, NCFKFormatError) as exc:
        print(f"Erreur d'entrée/sortie : {exc}", file=sys.stderr)
        return EXIT_IO
    except AlphaSynthesisError as exc:
        print(f"Erreur : {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
