"""Command-line interface.

Problem files are line oriented::

    dim 2
    char 3              # optional; coefficients then live in GF(3)
    ideal e=1/2
    1 0
    0 3

    ideal e=1
    2 1

A generator line is ``N`` exponents (a monomial) or a sum of terms
``c*u_1 ... u_N`` joined by ``+``, for example ``2*1 0 + 0 2``.  Factors
end at a blank line or at the next ``ideal`` line.  ``#`` starts a comment.

Exit codes: 0 success, 1 parse or usage error, 2 inconclusive result,
3 suite failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .core import GF, QQ, ZZ, MultiIdeal, SparsePolynomial, as_rational, format_rational, is_prime, minimalize
from .harness import SUITES, run_suite
from .invariants import lct_via_jets, md_lct_toric, mld_toric, s_m, scan_md_bound, z_m
from .jets import export_cas, jet_system, reduce_jet_system_mod_p
from .lifting import LiftingError, lift_ideal_valuation_preserving
from .polyhedra import lct_computing_normals, lct_howald

EXIT_OK, EXIT_PARSE, EXIT_INCONCLUSIVE, EXIT_SUITE = 0, 1, 2, 3


class ProblemError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str = "<input>"):
        self.line = line
        self.path = path
        where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class ProblemFile:
    dim: int
    characteristic: int
    factors: tuple[tuple[Fraction, tuple[SparsePolynomial, ...]], ...]

    @property
    def ring(self):
        return GF(self.characteristic) if self.characteristic else self.factors[0][1][0].ring

    def is_monomial(self) -> bool:
        return all(len(g) == 1 for _, gens in self.factors for g in gens)

    def multiideal(self) -> MultiIdeal:
        if not self.is_monomial():
            raise ProblemError("this command needs monomial generators")
        return MultiIdeal(
            tuple((minimalize(g.support()[0] for g in gens), e) for e, gens in self.factors)
        )

    def generators(self) -> list[list[SparsePolynomial]]:
        return [list(gens) for _, gens in self.factors]

    def serialize(self) -> str:
        lines = [f"dim {self.dim}"]
        if self.characteristic:
            lines.append(f"char {self.characteristic}")
        for k, (e, gens) in enumerate(self.factors):
            if k:
                lines.append("")
            lines.append(f"ideal e={format_rational(e)}")
            for g in gens:
                lines.append(_format_generator(g))
        return "\n".join(lines) + "\n"


def _format_generator(g: SparsePolynomial) -> str:
    parts = []
    for u, c in g.items():
        exps = " ".join(map(str, u))
        parts.append(exps if c == 1 else f"{format_rational(c)}*{exps}")
    return " + ".join(parts)


def parse_problem(text: str, path: str = "<input>") -> ProblemFile:
    dim = None
    char = 0
    factors: list[tuple[Fraction, list[tuple[int, list]]]] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            current = None
            continue
        head = line.split()
        if head[0] == "dim":
            if dim is not None:
                raise ProblemError("duplicate dim line", lineno, path)
            if len(head) != 2 or not head[1].isdigit() or int(head[1]) < 1:
                raise ProblemError(f"expected 'dim N' with N >= 1, got {line!r}", lineno, path)
            dim = int(head[1])
            continue
        if dim is None:
            raise ProblemError("the first statement must be 'dim N'", lineno, path)
        if head[0] == "char":
            if len(head) != 2 or not head[1].isdigit() or not is_prime(int(head[1])):
                raise ProblemError(f"expected 'char p' with p prime, got {line!r}", lineno, path)
            char = int(head[1])
            continue
        if head[0] == "ideal":
            if len(head) != 2 or not head[1].startswith("e="):
                raise ProblemError(f"expected 'ideal e=a/b', got {line!r}", lineno, path)
            try:
                e = as_rational(head[1][2:])
            except (ValueError, TypeError) as exc:
                raise ProblemError(str(exc), lineno, path) from None
            if e <= 0:
                raise ProblemError(f"exponent {e} must be positive", lineno, path)
            current = []
            factors.append((e, current))
            continue
        if current is None:
            raise ProblemError("generator outside an 'ideal' block", lineno, path)
        terms = []
        for tok in line.split("+"):
            coef_s, star, exps_s = tok.strip().rpartition("*")
            try:
                coef = as_rational(coef_s) if star else Fraction(1)
                u = [int(x) for x in exps_s.split()]
            except (ValueError, TypeError):
                raise ProblemError(f"cannot parse term {tok.strip()!r}", lineno, path) from None
            if len(u) != dim:
                raise ProblemError(f"term {tok.strip()!r} has {len(u)} exponents, expected {dim}", lineno, path)
            if any(x < 0 for x in u):
                raise ProblemError("negative exponent", lineno, path)
            terms.append((tuple(u), coef))
        current.append((lineno, terms))
    if dim is None:
        raise ProblemError("empty problem file", None, path)
    if not factors:
        raise ProblemError("no 'ideal' blocks", None, path)
    all_coefs = [c for _, gens in factors for _, terms in gens for _, c in terms]
    if char:
        ring = GF(char)
    elif all(c.denominator == 1 for c in all_coefs):
        ring = ZZ
    else:
        ring = QQ
    out = []
    for e, gens in factors:
        if not gens:
            raise ProblemError(f"ideal with exponent {format_rational(e)} has no generators", None, path)
        polys = []
        for lineno, terms in gens:
            g = SparsePolynomial(ring, dim, terms)
            if g.is_zero():
                raise ProblemError("generator is zero" + (f" in characteristic {char}" if char else ""), lineno, path)
            if len(g) == 1 and not any(g.support()[0]):
                raise ProblemError("a constant generator makes the ideal the unit ideal", lineno, path)
            polys.append(g)
        out.append((e, tuple(polys)))
    problem = ProblemFile(dim, char, tuple(out))
    if problem.is_monomial():
        try:
            problem.multiideal()
        except ValueError as exc:
            raise ProblemError(str(exc), None, path) from None
    return problem


def load_problem(path: str) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemError(str(exc), None, path) from None
    return parse_problem(text, path)


def _vector(s: str) -> tuple[int, ...]:
    try:
        v = tuple(int(x) for x in s.replace("(", "").replace(")", "").split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None
    if not v:
        raise argparse.ArgumentTypeError("empty vector")
    return v


def _wstr(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _single_ideal(problem: ProblemFile):
    A = problem.multiideal()
    if len(A) != 1:
        raise ProblemError(f"this command needs exactly one ideal block, found {len(A)}")
    return A.ideals[0]


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_lct(args, out) -> int:
    a = _single_ideal(load_problem(args.file))
    value = lct_howald(a)
    w = lct_computing_normals(a)[0]
    out.write(f"{format_rational(value)}, witness w={_wstr(w)}, certified\n")
    if args.bound:
        J = lct_via_jets(a, args.bound)
        out.write(f"jets: {format_rational(J.value)} at m={J.witness[0]}, {J.certificate}\n")
        if not J.certified:
            return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_mld(args, out) -> int:
    A = load_problem(args.file).multiideal()
    R = mld_toric(A, box=args.bound)
    if R.is_minus_infinity:
        out.write(f"-inf, witness w={_wstr(R.witness)}\n")
        return EXIT_OK
    if R.certified:
        out.write(f"{format_rational(R.value)}, witness w={_wstr(R.witness)}, certified\n")
        return EXIT_OK
    out.write(
        f"{format_rational(R.value)}, witness w={_wstr(R.witness)}, box-bounded B={R.box}, "
        f"lower bound {format_rational(R.lower_bound)}\n"
    )
    return EXIT_INCONCLUSIVE


def cmd_sm(args, out) -> int:
    A = load_problem(args.file).multiideal()
    out.write(format_rational(s_m(A, args.m)) + "\n")
    return EXIT_OK


def cmd_zm(args, out) -> int:
    a = _single_ideal(load_problem(args.file))
    if len(args.m) != 1:
        raise ProblemError("z_m takes a single jet order")
    out.write(format_rational(z_m(a, args.m[0])) + "\n")
    return EXIT_OK


def cmd_md(args, out) -> int:
    a = _single_ideal(load_problem(args.file))
    R = md_lct_toric(a, args.cap)
    if not R.found:
        out.write(f"not found within cap {args.cap} (lct {format_rational(R.lct)})\n")
        return EXIT_INCONCLUSIVE
    ws = " ".join(_wstr(w) for w in R.witnesses)
    out.write(f"{R.k_min}, lct {format_rational(R.lct)}, witnesses {ws}\n")
    return EXIT_OK


def cmd_jets(args, out) -> int:
    problem = load_problem(args.file)
    system = jet_system(problem.generators(), args.m)
    if args.p is not None:
        if problem.characteristic:
            raise ProblemError("--p given but the file already fixes a characteristic")
        if system.ring != ZZ:
            raise ProblemError("reduction mod p needs integer coefficients")
        system = reduce_jet_system_mod_p(system, args.p)
    if system.warning:
        print(f"warning: {system.warning}", file=sys.stderr)
    out.write(export_cas(system))
    return EXIT_OK


def cmd_lift(args, out) -> int:
    problem = load_problem(args.file)
    p = args.p
    if problem.characteristic and problem.characteristic != p:
        raise ProblemError(f"file is in characteristic {problem.characteristic}, --p is {p}")
    gens = [g.change_ring(GF(p)) if g.ring != GF(p) else g for gs in problem.generators() for g in gs]
    if any(g.is_zero() for g in gens):
        raise ProblemError(f"a generator vanishes mod {p}")
    for rec in lift_ideal_valuation_preserving(gens, args.w):
        out.write(f"{rec.original} -> {rec.lifted}, val_w={rec.truncation_degree}\n")
    return EXIT_OK


def cmd_suite(args, out) -> int:
    names = list(SUITES) if args.name == "all" else [args.name]
    ok = True
    for name in names:
        report = run_suite(name, seed=args.seed, threads=args.threads)
        out.write(report.to_tsv() if args.format == "tsv" else report.to_text())
        ok &= report.passed
    return EXIT_OK if ok else EXIT_SUITE


def cmd_scan(args, out) -> int:
    R = scan_md_bound(args.N, args.mu, args.cap, samples=args.samples, seed=args.seed, threads=args.threads)
    if args.format == "tsv":
        for a, k in R.records:
            out.write(f"scan\t{a}\t{'unresolved' if k is None else k}\n")
    else:
        out.write(f"scan N={R.N} mu={R.mu} cap={R.cap} mode={R.mode}"
                  + (f" seed={R.seed}" if R.seed is not None else "") + "\n")
        for a, k in R.records:
            out.write(f"  {a}: {'unresolved' if k is None else k}\n")
        out.write(f"ideals {len(R.records)}, unresolved {len(R.unresolved)}, max md {R.max_md}, argmax {R.argmax}\n")
    return EXIT_INCONCLUSIVE if R.unresolved else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "tsv"), default="text")
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(prog="jetmld", description="Exact singularity invariants of monomial multiideals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lct", parents=[common], help="log canonical threshold of a monomial ideal")
    p.add_argument("file")
    p.add_argument("--bound", type=int, help="also run the jet route up to this order")
    p.set_defaults(func=cmd_lct)

    p = sub.add_parser("mld", parents=[common], help="minimal log discrepancy at the origin")
    p.add_argument("file")
    p.add_argument("--bound", type=int, help="search box size (default N*(1+ceil(sum e_i deg a_i)))")
    p.set_defaults(func=cmd_mld)

    p = sub.add_parser("sm", parents=[common], help="s_m for a jet order vector")
    p.add_argument("file")
    p.add_argument("--m", type=_vector, required=True)
    p.set_defaults(func=cmd_sm)

    p = sub.add_parser("zm", parents=[common], help="z_m for a jet order")
    p.add_argument("file")
    p.add_argument("--m", type=_vector, required=True)
    p.set_defaults(func=cmd_zm)

    p = sub.add_parser("md", parents=[common], help="minimal discrepancy among toric divisors computing the lct")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=20)
    p.set_defaults(func=cmd_md)

    p = sub.add_parser("jets", parents=[common], help="jet equations of the contact locus, CAS text")
    p.add_argument("file")
    p.add_argument("--m", type=_vector, required=True)
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_jets)

    p = sub.add_parser("lift", parents=[common], help="valuation-preserving lift from GF(p) to ZZ")
    p.add_argument("file")
    p.add_argument("--w", type=_vector, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("suite", parents=[common], help="run a cross-check suite")
    p.add_argument("name", choices=list(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("scan", parents=[common], help="empirical md(lct) scan between m^mu and m")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    for name in ("p",):
        v = getattr(args, name, None)
        if v is not None and not is_prime(v):
            print(f"error: {v} is not prime", file=sys.stderr)
            return EXIT_PARSE
    try:
        return args.func(args, out)
    except (ProblemError, LiftingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
