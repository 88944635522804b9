"""Command-line interface and deterministic reports.

    ainfty <command> <document> [--length N] [--max-r N] [--max-rs N]
                                [--module NAME] [--degrees A..B]
                                [--csv PATH] [--seed N]
    ainfty emit <fixture>

Commands: validate, hh, cohomology, cup, spectral, verify, emit. Exit codes:
0 all verdicts pass, 1 some verdict failed, 2 input error. Reports are
byte-identical across runs for fixed inputs and flags; timing goes to stderr.
AINFTY_THREADS caps worker parallelism for the verify suite (the compute
modules are pure, so this never changes results).
"""

from __future__ import annotations

import argparse
import csv as _csv
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import spectral
from .algebra import validate as validate_algebra
from .bimodules import (
    diagonal_bimodule,
    dual_bimodule,
    tensor_square_bimodule,
    validate_bimodule,
    validate_morphism,
)
from .chains import HochschildComplex, InducedChainMap
from .cochains import (
    beta_matrix,
    cochain_basis,
    codifferential,
    duality_iso,
    b_star,
    DualChainElement,
    elementary_cochain,
)
from .cup import cup, cup_degree
from .documents import StructureDocument, parse, serialize
from .errors import AinftyError, DocumentError, UnknownFixture, UnknownName
from .fixtures import fixture_document
from .homology import ExactMatrix, determinant, homology_at, invariant_factors, smith_normal_form
from .spectral import comparison_check, page1


class Report:
    def __init__(self):
        self.lines: list[str] = []
        self.rows: list[tuple] = []
        self.failures: list[str] = []

    def line(self, text: str):
        self.lines.append(text)

    def check(self, label: str, ok: bool, detail: str = ""):
        if ok:
            self.line(f"ok   {label}")
        else:
            self.line(f"FAIL {label}" + (f": {detail}" if detail else ""))
            self.failures.append(label)
        self.rows.append((label, "", "", "", "ok" if ok else "fail"))

    def homology_row(self, obj: str, degree: int, summary):
        torsion = ";".join(str(d) for d in summary.torsion)
        self.line(f"{obj}  degree {degree}: {summary}")
        self.rows.append((obj, degree, summary.free_rank, torsion, "ok"))

    @property
    def ok(self) -> bool:
        return not self.failures

    def finish(self) -> int:
        if self.ok:
            self.line("RESULT: PASS")
            return 0
        self.line(f"RESULT: FAIL (first failing identity: {self.failures[0]})")
        return 1


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("AINFTY_THREADS", "1")))
    except ValueError:
        return 1


def run_checks(checks, report: Report):
    """Run (label, thunk) pairs, optionally on a bounded thread pool."""
    workers = _thread_count()
    if workers == 1:
        results = [(label, thunk()) for label, thunk in checks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [(label, pool.submit(thunk)) for label, thunk in checks]
            results = [(label, fut.result()) for label, fut in futures]
    for label, outcome in results:
        ok, detail = outcome if isinstance(outcome, tuple) else (outcome, "")
        report.check(label, bool(ok), detail)


def resolve_bimodule(doc: StructureDocument, name: str):
    if name == "diagonal":
        return diagonal_bimodule(doc.algebra, doc.options.max_rs)
    if name == "tensor_square":
        return tensor_square_bimodule(doc.algebra, doc.options.max_rs)
    if name == "dual":
        return dual_bimodule(diagonal_bimodule(doc.algebra, doc.options.max_rs))
    if name in doc.bimodules:
        return doc.bimodules[name]
    raise UnknownName(
        f"unknown module {name!r} (try diagonal, tensor_square, dual or a document bimodule)"
    )


def _parse_degrees(spec: str | None):
    if not spec:
        return None
    text = spec.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    j = int(text)
    return range(j, j + 1)


def cmd_validate(doc: StructureDocument, args, report: Report):
    for r, verdict in validate_algebra(doc.algebra, args.max_r).items():
        report.check(f"algebra equation r={r}", verdict.holds, verdict.describe())
    for name in sorted(doc.bimodules):
        for (r, s), verdict in validate_bimodule(
            doc.bimodules[name], args.max_rs
        ).items():
            report.check(
                f"bimodule {name} equation ({r},{s})", verdict.holds, verdict.describe()
            )
    for name in sorted(doc.morphisms):
        for (r, s), verdict in validate_morphism(
            doc.morphisms[name], args.max_rs
        ).items():
            report.check(
                f"morphism {name} equation ({r},{s})", verdict.holds, verdict.describe()
            )


def _truncated_homology(doc: StructureDocument, module_name: str, length: int):
    M = resolve_bimodule(doc, module_name)
    cx = HochschildComplex(M, length)
    return cx, spectral.homology_of_truncation(cx, length)


def cmd_hh(doc: StructureDocument, args, report: Report):
    module_name = args.module or "diagonal"
    cx, table = _truncated_homology(doc, module_name, args.length)
    degrees = _parse_degrees(args.degrees)
    report.line(f"Hochschild homology of F_{args.length}, coefficients {module_name}")
    for j in sorted(table) if degrees is None else degrees:
        summary = table.get(j)
        if summary is None:
            d_empty = ExactMatrix(0, 0)
            summary = homology_at(d_empty, d_empty, cx.ring, degree=j)
        report.homology_row(f"HH({module_name})", j, summary)


def cmd_cohomology(doc: StructureDocument, args, report: Report):
    module_name = args.module or "diagonal"
    M = resolve_bimodule(doc, module_name)
    cutoff = args.length
    basis = cochain_basis(M, cutoff)
    degrees = _parse_degrees(args.degrees)
    js = sorted(basis) if degrees is None else list(degrees)
    report.line(
        f"Hochschild cohomology, arity cutoff {cutoff}, coefficients {module_name}"
    )
    if module_name == "diagonal":
        report.line("note: CH^*(A) degree = reported degree + 1")
    for j in js:
        d_out = beta_matrix(M, cutoff, j, basis)
        d_in = beta_matrix(M, cutoff, j - 1, basis)
        summary = homology_at(d_out, d_in, M.ring, degree=j)
        report.homology_row(f"HH^*({module_name})", j, summary)


def cmd_cup(doc: StructureDocument, args, report: Report):
    diagonal = diagonal_bimodule(doc.algebra, doc.options.max_rs)
    named = doc.cochains(diagonal)
    if not named:
        raise DocumentError("document defines no cochains; nothing to cup")
    for fname in sorted(named):
        for gname in sorted(named):
            f, g = named[fname], named[gname]
            fg = cup(f, g)
            label = f"cup({fname},{gname})"
            report.line(
                f"{label}: degree {cup_degree(fg)} "
                f"({'truncated' if fg.truncated else 'exact'})"
            )
            lhs = codifferential(fg)
            rhs = cup(codifferential(f), g).add(
                cup(f, codifferential(g)).scale(1 if cup_degree(f) % 2 == 0 else -1)
            )
            if lhs.truncated or rhs.truncated:
                report.line(f"{label}: Leibniz outside the exact regime, skipped")
                continue
            report.check(f"{label} Leibniz", lhs == rhs)


def cmd_spectral(doc: StructureDocument, args, report: Report):
    module_name = args.module or "diagonal"
    M = resolve_bimodule(doc, module_name)
    cx = HochschildComplex(M, args.length)
    for p in range(args.length + 1):
        for q in spectral.column_weights(cx, p):
            direct = page1(cx, p, q, route="direct")
            quotient = page1(cx, p, q, route="quotient")
            agree = direct.invariants() == quotient.invariants()
            report.homology_row(f"E1[p={p}]", q, direct)
            report.check(f"E1 two-path agreement p={p} q={q}", agree)
    for name in sorted(doc.morphisms):
        verdict = comparison_check(doc.morphisms[name], args.length)
        for detail in verdict.details:
            report.line(f"{name}: {detail}")
        report.check(f"comparison hypothesis [{name}]", verdict.hypothesis_holds)
        report.check(f"comparison conclusion [{name}]", verdict.conclusion_holds)
        report.check(f"comparison witnessed [{name}]", verdict.witnessed)


def _snf_audit(seed: int, count: int = 50, size: int = 8) -> tuple[bool, str]:
    rng = random.Random(seed)
    for trial in range(count):
        rows = rng.randint(1, size)
        cols = rng.randint(1, size)
        entries = {}
        for i in range(rows):
            for j in range(cols):
                if rng.random() < 0.4:
                    entries[(i, j)] = rng.randint(-9, 9)
        mat = ExactMatrix(rows, cols, entries)
        D, U, V = smith_normal_form(mat)
        if U @ mat @ V != D:
            return False, f"trial {trial}: D != U*M*V"
        if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
            return False, f"trial {trial}: transform not unimodular"
        factors = invariant_factors(mat)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                return False, f"trial {trial}: divisibility chain broken"
    return True, ""


def cmd_verify(doc: StructureDocument, args, report: Report):
    algebra = doc.algebra
    length = args.length
    checks = []

    for r in range(1, args.max_r + 1):
        checks.append(
            (
                f"algebra equation r={r}",
                lambda r=r: (lambda v: (v.holds, v.describe()))(
                    validate_algebra(algebra, r)[r]
                ),
            )
        )

    modules = {
        "diagonal": diagonal_bimodule(algebra, args.max_rs),
        "tensor_square": tensor_square_bimodule(algebra, args.max_rs),
    }
    modules["dual"] = dual_bimodule(modules["diagonal"])
    bounds = {"diagonal": args.max_rs, "tensor_square": 3, "dual": 3}
    for name, M in sorted(doc.bimodules.items()):
        modules[name] = M
        bounds[name] = args.max_rs

    def bimodule_ok(M, bound):
        for (r, s), verdict in validate_bimodule(M, bound).items():
            if not verdict.holds:
                return False, verdict.describe()
        return True, ""

    for name in sorted(modules):
        checks.append(
            (
                f"bimodule equations [{name}]",
                lambda M=modules[name], b=bounds[name]: bimodule_ok(M, min(b, args.max_rs)),
            )
        )

    def b_squared_ok(M):
        cx = HochschildComplex(M, length)
        for w in cx.all_words():
            if cx.differential(cx.differential_word(w)):
                return False, f"b(b({w})) != 0"
        return True, ""

    for name in sorted(modules):
        checks.append((f"b.b = 0 [{name}]", lambda M=modules[name]: b_squared_ok(M)))

    def morphism_ok(f):
        for (r, s), verdict in validate_morphism(f, args.max_rs).items():
            if not verdict.holds:
                return False, verdict.describe()
        return True, ""

    def chain_map_ok(f):
        fstar = InducedChainMap(f, length)
        src = HochschildComplex(f.source, length)
        tgt = fstar.target
        for w in src.all_words():
            image = fstar.on_word(w)
            if not spectral.in_filtration(image, len(w) - 1):
                return False, f"f_*({w}) grows the filtration"
            lhs = tgt.differential(image)
            rhs = fstar(src.differential_word(w))
            if lhs != rhs:
                return False, f"b(f_*({w})) != f_*(b({w}))"
        return True, ""

    for name in sorted(doc.morphisms):
        checks.append(
            (f"morphism equations [{name}]", lambda f=doc.morphisms[name]: morphism_ok(f))
        )
        checks.append(
            (f"induced chain map [{name}]", lambda f=doc.morphisms[name]: chain_map_ok(f))
        )

    def beta_squared_ok(M, max_arity=2):
        # the codifferential never lowers arity, so every retained component
        # of beta(beta(f)) is computed exactly and must vanish
        for n in range(max_arity + 1):
            for word, out_name in _elementary_keys(M, n):
                f = elementary_cochain(M, word, out_name, cutoff=length + 1)
                if codifferential(codifferential(f)).components:
                    return False, f"beta(beta(E[{word}->{out_name}])) != 0"
        return True, ""

    def _elementary_keys(M, n):
        import itertools as _it

        for word in _it.product(M.algebra.module.names, repeat=n):
            for out_name in M.module.names:
                yield word, out_name

    checks.append(
        ("beta.beta = 0 [diagonal]", lambda: beta_squared_ok(modules["diagonal"]))
    )

    def phi_square_ok(M):
        cx = HochschildComplex(M, length)
        dual = dual_bimodule(M)
        for n in range(min(2, length) + 1):
            for w in cx.words(n):
                psi = DualChainElement(cx, {w: 1})
                lhs = duality_iso(b_star(psi), dual=dual, cutoff=length)
                rhs = codifferential(duality_iso(psi, dual=dual, cutoff=length))
                if lhs != rhs:
                    return False, f"phi(b*={w}) != beta(phi({w}))"
        return True, ""

    checks.append(("phi duality square [diagonal]", lambda: phi_square_ok(modules["diagonal"])))

    def e1_ok(M):
        cx = HochschildComplex(M, length)
        for p in range(length + 1):
            for q in spectral.column_weights(cx, p):
                direct = page1(cx, p, q, route="direct")
                quotient = page1(cx, p, q, route="quotient")
                if direct.invariants() != quotient.invariants():
                    return False, f"E1 mismatch at p={p}, q={q}"
        return True, ""

    for name in sorted(modules):
        checks.append((f"E1 two-path agreement [{name}]", lambda M=modules[name]: e1_ok(M)))

    diagonal = modules["diagonal"]
    named = doc.cochains(diagonal)
    if named:

        def leibniz_ok():
            for fname in sorted(named):
                for gname in sorted(named):
                    f, g = named[fname], named[gname]
                    lhs = codifferential(cup(f, g))
                    rhs = cup(codifferential(f), g).add(
                        cup(f, codifferential(g)).scale(
                            1 if cup_degree(f) % 2 == 0 else -1
                        )
                    )
                    if lhs.truncated or rhs.truncated:
                        continue
                    if lhs != rhs:
                        return False, f"Leibniz fails for ({fname},{gname})"
            return True, ""

        checks.append(("cup Leibniz [document cochains]", leibniz_ok))

    checks.append(("SNF self-verification", lambda: _snf_audit(args.seed)))

    run_checks(checks, report)


def _write_csv(path: str, rows):
    with open(path, "w", newline="") as fh:
        writer = _csv.writer(fh)
        writer.writerow(["object", "degree", "free_rank", "torsion", "verdict"])
        writer.writerows(rows)


COMMANDS = {
    "validate": cmd_validate,
    "hh": cmd_hh,
    "cohomology": cmd_cohomology,
    "cup": cmd_cup,
    "spectral": cmd_spectral,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ainfty", description="Exact A-infinity Hochschild toolkit"
    )
    parser.add_argument("command", choices=sorted(COMMANDS) + ["emit"])
    parser.add_argument("document", help="path to a structure document, or a fixture name for emit")
    parser.add_argument("--length", type=int, default=None, help="length cutoff L")
    parser.add_argument("--max-r", dest="max_r", type=int, default=None)
    parser.add_argument("--max-rs", dest="max_rs", type=int, default=None)
    parser.add_argument("--module", default=None, help="coefficient bimodule")
    parser.add_argument("--degrees", default=None, help="degree range A..B")
    parser.add_argument("--csv", default=None, help="write a CSV report")
    parser.add_argument("--seed", type=int, default=0)
    return parser


def _glue_degree_ranges(argv: list[str]) -> list[str]:
    # argparse mistakes "-2..4" for an option; fold it into --degrees=-2..4
    out = []
    skip = False
    for i, arg in enumerate(argv):
        if skip:
            skip = False
            continue
        if arg == "--degrees" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--degrees={argv[i + 1]}")
            skip = True
        else:
            out.append(arg)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _glue_degree_ranges(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        if args.command == "emit":
            sys.stdout.write(serialize(fixture_document(args.document)))
            return 0
        try:
            with open(args.document, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {args.document}: {exc}") from None
        doc = parse(text)
        args.length = args.length if args.length is not None else doc.options.length
        args.max_r = args.max_r if args.max_r is not None else doc.options.max_r
        args.max_rs = args.max_rs if args.max_rs is not None else doc.options.max_rs
        report = Report()
        report.line(f"command: {args.command}")
        report.line(f"ring: {doc.ring}")
        COMMANDS[args.command](doc, args, report)
        code = report.finish()
        sys.stdout.write("\n".join(report.lines) + "\n")
        if args.csv:
            _write_csv(args.csv, report.rows)
        return code
    except (DocumentError, UnknownFixture, UnknownName) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except AinftyError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    finally:
        sys.stderr.write(f"elapsed: {time.monotonic() - started:.3f}s\n")


if __name__ == "__main__":
    raise SystemExit(main())
