"""Command-line front end: compute, tabulate, and verify.

Every verb validates its arguments fully before any computation
starts, emits machine-readable JSON (or CSV) on stdout, and keeps
progress chatter on stderr.  Reruns with identical flags produce
byte-identical output: orderings are fixed by the canonical partition
order, and sampled verification uses a fixed seed.

Exit codes: 0 success, 1 verification or computation failure
(reported as a JSON error object), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass

from . import __version__
from ._backend import backend_name, resolve_jobs
from .errors import HeckeError, InsufficientDegree, UsageError, ValidationFailure
from .partitions import as_partition, enumerate_by_weight, weight
from .permutations import (
    Permutation,
    cayley_degree,
    identity,
    parse_permutation,
)
from .cosets import (
    coset_type,
    double_coset_size,
    enumerate_double_coset,
    gamma_graph,
    hyperoctahedral_elements,
    hyperoctahedral_order,
    is_hyperoctahedral,
    modified_support,
    phi,
    stable_coset_type,
    twisted_degree,
)
from .group_algebra import (
    elementary,
    eval_symmetric,
    jucys_murphy,
    multiply,
    zi_generator,
)
from .hecke import (
    HeckeElement,
    generation_certificate,
    generator_H,
    hecke_product,
    hecke_structure_constant,
    matsumoto_image,
    single_cycle_expansion,
    trichotomy_report,
)
from .universal import fit_report, fit_triple, graded_iso_check

SUITES = (
    "matsumoto",
    "jm-center",
    "trichotomy",
    "single-cycle",
    "graded-iso",
    "generators",
    "coset-invariants",
)

MAX_CLI_LEVEL = 5
SAMPLE_SEED = 987654321


@dataclass(frozen=True)
class Command:
    verb: str
    args: dict
    output_format: str
    jobs: int


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 2 comes from main, not here
        raise UsageError(message)


def _partition_flag(text: str, flag: str):
    try:
        value = json.loads(text)
        if not isinstance(value, list):
            raise ValueError("expected a JSON list")
        return as_partition(value)
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise UsageError(f"{flag}: not a partition: {text!r} ({exc})")


def _perm_flag(text: str, flag: str) -> Permutation:
    try:
        return parse_permutation(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: not a permutation: {text!r} ({exc})")


def _level_flag(value: int, flag: str, low: int = 1) -> int:
    if not low <= value <= MAX_CLI_LEVEL:
        raise UsageError(
            f"{flag}: level must be in [{low}, {MAX_CLI_LEVEL}], got {value}"
        )
    return value


def build_parser() -> _Parser:
    parser = _Parser(
        prog="bnhecke",
        description="Exact computations in the Hecke ring of (S_2n, B_n).",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="data stream format (default json)",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="worker count for counting passes (HECKE_JOBS overrides)",
    )
    sub = parser.add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)

    p = sub.add_parser("coset-type", help="coset type of a permutation of even degree")
    p.add_argument("--perm", required=True, help="one-line JSON array or cycle notation")

    p = sub.add_parser("phi", help="the twist t w^-1 t w")
    p.add_argument("--perm", required=True)

    p = sub.add_parser("coset-size", help="size of the double coset of stable type mu")
    p.add_argument("--mu", required=True, help="partition as a JSON list")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("product", help="K_lhs * K_rhs in the K basis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lhs", required=True, help="partition as a JSON list")
    p.add_argument("--rhs", required=True, help="partition as a JSON list")

    p = sub.add_parser("structure-constant", help="b_{lam mu}^{nu}(n)")
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("expand-single-cycle", help="closed-form top part of K_lam * K_(r)")
    p.add_argument("--lam", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("matsumoto", help="image of a symmetric expression in odd Jucys-Murphy elements")
    p.add_argument("--expr", required=True, help="e.g. 'e2' or 'p1*e1 - 2*e2'")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("generators", help="certify that H_1..H_n generate, via integer HNF")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None, help="monomial degree bound (default n-1)")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--n", type=int, default=None, help="run at exactly this level")
    p.add_argument("--max-n", type=int, default=4, help="run levels up to this (default 4; 5 is opt-in)")
    p.add_argument("--samples", type=int, default=1000, help="random samples per level for sampled suites")

    p = sub.add_parser("fit", help="fit structure constants as integer-valued polynomials in n")
    p.add_argument("--lam")
    p.add_argument("--mu")
    p.add_argument("--nu")
    p.add_argument("--max-weight", type=int, default=None, help="fit all triples up to this weight instead")
    p.add_argument("--basis", choices=("K", "C"), default="K")

    p = sub.add_parser("table", help="all structure constants at one level")
    p.add_argument("--n", type=int, required=True)

    return parser


def parse(argv) -> Command:
    """Validate argv into a Command; raises UsageError, never exits."""
    ns = build_parser().parse_args(argv)
    if ns.verb is None:
        raise UsageError("a verb is required (see --help)")
    if ns.jobs is not None and ns.jobs < 1:
        raise UsageError(f"--jobs: must be positive, got {ns.jobs}")
    args: dict = {}
    if ns.verb in ("coset-type", "phi"):
        args["perm"] = _perm_flag(ns.perm, "--perm")
    elif ns.verb == "coset-size":
        args["mu"] = _partition_flag(ns.mu, "--mu")
        if ns.n < 1:
            raise UsageError(f"--n: must be positive, got {ns.n}")
        args["n"] = ns.n
        if weight(args["mu"]) > ns.n:
            raise UsageError(
                f"--mu: weight {weight(args['mu'])} exceeds level {ns.n}"
            )
    elif ns.verb == "product":
        args["n"] = _level_flag(ns.n, "--n")
        args["lhs"] = _partition_flag(ns.lhs, "--lhs")
        args["rhs"] = _partition_flag(ns.rhs, "--rhs")
        for flag, mu in (("--lhs", args["lhs"]), ("--rhs", args["rhs"])):
            if weight(mu) > ns.n:
                raise UsageError(
                    f"{flag}: weight {weight(mu)} exceeds level {ns.n}"
                )
    elif ns.verb == "structure-constant":
        args["n"] = _level_flag(ns.n, "--n")
        for flag in ("lam", "mu", "nu"):
            args[flag] = _partition_flag(getattr(ns, flag), f"--{flag}")
            if weight(args[flag]) > ns.n:
                raise UsageError(
                    f"--{flag}: weight {weight(args[flag])} exceeds level {ns.n}"
                )
    elif ns.verb == "expand-single-cycle":
        args["n"] = _level_flag(ns.n, "--n")
        args["lam"] = _partition_flag(ns.lam, "--lam")
        if ns.r < 0:
            raise UsageError(f"--r: must be non-negative, got {ns.r}")
        args["r"] = ns.r
        if weight(args["lam"]) > ns.n:
            raise UsageError(
                f"--lam: weight {weight(args['lam'])} exceeds level {ns.n}"
            )
        if ns.r and ns.r + 1 > ns.n:
            raise UsageError(
                f"--r: K_({ns.r}) has weight {ns.r + 1}, above level {ns.n}"
            )
    elif ns.verb == "matsumoto":
        args["n"] = _level_flag(ns.n, "--n", low=2)
        args["expr"] = ns.expr
    elif ns.verb == "generators":
        args["n"] = _level_flag(ns.n, "--n", low=2)
        degree = ns.max_degree if ns.max_degree is not None else ns.n - 1
        if degree < 1:
            raise UsageError(f"--max-degree: must be positive, got {degree}")
        args["max_degree"] = degree
    elif ns.verb == "verify":
        args["suite"] = ns.suite
        if ns.n is not None:
            levels = [_level_flag(ns.n, "--n", low=2)]
        else:
            levels = list(range(2, _level_flag(ns.max_n, "--max-n", low=2) + 1))
        args["levels"] = levels
        if ns.samples < 1:
            raise UsageError(f"--samples: must be positive, got {ns.samples}")
        args["samples"] = ns.samples
    elif ns.verb == "fit":
        triple_flags = (ns.lam, ns.mu, ns.nu)
        if ns.max_weight is not None:
            if any(f is not None for f in triple_flags):
                raise UsageError("--max-weight excludes --lam/--mu/--nu")
            if not 0 <= ns.max_weight <= 4:
                raise UsageError(
                    f"--max-weight: must be in [0, 4], got {ns.max_weight}"
                )
            args["max_weight"] = ns.max_weight
        else:
            if any(f is None for f in triple_flags):
                raise UsageError("fit needs --lam, --mu and --nu (or --max-weight)")
            args["lam"] = _partition_flag(ns.lam, "--lam")
            args["mu"] = _partition_flag(ns.mu, "--mu")
            args["nu"] = _partition_flag(ns.nu, "--nu")
        args["basis"] = ns.basis
    elif ns.verb == "table":
        args["n"] = _level_flag(ns.n, "--n")
    return Command(
        verb=ns.verb,
        args=args,
        output_format=ns.format,
        jobs=resolve_jobs(ns.jobs),
    )


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def _warn_heavy(levels) -> None:
    if MAX_CLI_LEVEL in levels:
        _progress(
            f"warning: level {MAX_CLI_LEVEL} sweeps S_{2 * MAX_CLI_LEVEL} "
            f"(3628800 permutations); this can take a while"
        )


def _embedding_level(w: Permutation) -> int:
    m = w.degree
    return (m + 1) // 2


# ---------------------------------------------------------------- verbs


def _run_coset_type(args, jobs):
    w = args["perm"]
    n = _embedding_level(w)
    return {
        "perm": list(w.one_line(2 * n)),
        "n": n,
        "coset_type": list(coset_type(w, n)),
        "stable_coset_type": list(stable_coset_type(w)),
    }, 0


def _run_phi(args, jobs):
    w = args["perm"]
    n = _embedding_level(w)
    image = phi(w, n)
    return {
        "perm": list(w.one_line(2 * n)),
        "n": n,
        "phi": list(image.one_line(2 * n)),
        "cycles": image.cycle_string(),
    }, 0


def _run_coset_size(args, jobs):
    mu, n = args["mu"], args["n"]
    return {"mu": list(mu), "n": n, "size": double_coset_size(mu, n)}, 0


def _run_product(args, jobs):
    n = args["n"]
    u = HeckeElement.basis(args["lhs"], n)
    v = HeckeElement.basis(args["rhs"], n)
    if n == MAX_CLI_LEVEL:
        _warn_heavy([n])
    return hecke_product(u, v, jobs).to_json(), 0


def _run_structure_constant(args, jobs):
    b = hecke_structure_constant(
        args["lam"], args["mu"], args["nu"], args["n"], jobs
    )
    return {
        "lam": list(args["lam"]),
        "mu": list(args["mu"]),
        "nu": list(args["nu"]),
        "n": args["n"],
        "b": b,
    }, 0


def _run_expand_single_cycle(args, jobs):
    expansion = single_cycle_expansion(args["lam"], args["r"], args["n"])
    body = expansion.to_json()
    body.update({"lam": list(args["lam"]), "r": args["r"]})
    return body, 0


def _run_matsumoto(args, jobs):
    _warn_heavy([args["n"]])
    return matsumoto_image(args["expr"], args["n"]).to_json(), 0


def _run_generators(args, jobs):
    cert = generation_certificate(args["n"], args["max_degree"])
    return cert.to_json(), 0


def _run_fit(args, jobs):
    if "max_weight" in args:
        results = fit_report(args["max_weight"], args["basis"])
        return [r.to_json() for r in results], 0
    result = fit_triple(args["lam"], args["mu"], args["nu"], args["basis"])
    return result.to_json(), 0


def _run_table(args, jobs):
    n = args["n"]
    _warn_heavy([n])
    shapes = enumerate_by_weight(n)
    rows = []
    for lam in shapes:
        _progress(f"table: counting against K_{lam}({n})")
        for mu in shapes:
            for nu in shapes:
                rows.append(
                    {
                        "lam": list(lam),
                        "mu": list(mu),
                        "nu": list(nu),
                        "b": hecke_structure_constant(lam, mu, nu, n, jobs),
                    }
                )
    return rows, 0


# ---------------------------------------------------------------- suites


def _check(checks, name, ok, detail=None):
    entry = {"name": name, "ok": bool(ok)}
    if detail is not None and not ok:
        entry["detail"] = str(detail)
    checks.append(entry)
    _progress(f"  {'ok' if ok else 'FAIL'}  {name}")


def _suite_matsumoto(levels, samples, jobs, checks):
    for n in levels:
        if n > 4:
            _progress(f"matsumoto at n={n}: group algebra of S_{2 * n}, be patient")
        for i in range(1, n + 1):
            got = matsumoto_image(elementary(n - i), n)
            want = generator_H(i, n)
            _check(
                checks,
                f"e_{n - i}(J_odd) -> H_{i} at n={n}",
                got == want,
                f"{got} != {want}",
            )


def _suite_jm_center(levels, samples, jobs, checks):
    for n in levels:
        js = [jucys_murphy(k, n) for k in range(1, n + 1)]
        commuting = all(
            multiply(js[a], js[b]) == multiply(js[b], js[a])
            for a in range(n)
            for b in range(a + 1, n)
        )
        _check(checks, f"J_1..J_{n} pairwise commute in Z[S_{n}]", commuting)
        for i in range(1, n + 1):
            got = eval_symmetric(elementary(n - i), js)
            want = zi_generator(i, n)
            _check(
                checks,
                f"Z_{i} = e_{n - i}(J_1..J_{n}) at n={n}",
                got == want,
            )


def _suite_trichotomy(levels, samples, jobs, checks):
    max_weight = min(4, min(levels))
    usable = [n for n in levels if n >= max_weight]
    try:
        report = trichotomy_report(max_weight, usable, jobs)
        _check(
            checks,
            f"trichotomy wt<={max_weight} over n={usable}: "
            f"{len(report.zero)} zero, {len(report.top)} top, "
            f"{len(report.subtop)} sub-top",
            True,
        )
    except ValidationFailure as exc:
        _check(checks, f"trichotomy wt<={max_weight} over n={usable}", False, exc)
        return
    for lam, mu, nu, values in report.subtop:
        result = fit_triple(lam, mu, nu)
        label = f"sub-top fit {lam} {mu} -> {nu}"
        if result.classification == "UNFITTED":
            _check(checks, f"{label}: UNFITTED (insufficient levels, not guessed)", True)
        else:
            agree = all(
                result.polynomial(n) == b for n, b in zip(usable, values)
            )
            _check(checks, f"{label}: {result.classification}", agree)


def _suite_single_cycle(levels, samples, jobs, checks):
    for n in levels:
        for lam in enumerate_by_weight(min(4, n)):
            for r in range(1, 4):
                if r + 1 > n:
                    continue
                expansion = single_cycle_expansion(lam, r, n)
                product = hecke_product(
                    HeckeElement.basis(lam, n), HeckeElement.basis((r,), n), jobs
                )
                top = HeckeElement(
                    n,
                    {
                        nu: c
                        for nu, c in product.coeffs.items()
                        if sum(nu) == sum(lam) + r
                    },
                )
                _check(
                    checks,
                    f"top part of K_{lam} K_({r}) at n={n} matches closed form",
                    expansion == top,
                    f"{expansion} != {top}",
                )


def _suite_graded_iso(levels, samples, jobs, checks):
    for n in levels:
        report = graded_iso_check(min(4, n), n)
        _check(
            checks,
            f"graded top coefficients agree (wt<={min(4, n)}, n={n}, "
            f"{len(report.entries)} triples)",
            report.ok,
            "; ".join(str(e.to_json()) for e in report.mismatches),
        )


def _suite_generators(levels, samples, jobs, checks):
    for n in levels:
        degree, cert = n - 1, None
        while cert is None and degree <= n + 1:
            try:
                cert = generation_certificate(n, degree)
            except InsufficientDegree:
                degree += 1
        _check(
            checks,
            f"H_1..H_{n} generate at level {n} "
            f"(HNF certificate, degree <= {degree})",
            cert is not None,
            f"no certificate up to degree {n + 1}",
        )


def _suite_coset_invariants(levels, samples, jobs, checks):
    for n in (2, 3):
        census: dict = {}
        from .permutations import symmetric_group

        for w in symmetric_group(2 * n):
            census[stable_coset_type(w)] = census.get(stable_coset_type(w), 0) + 1
        sizes_ok = census == {
            mu: double_coset_size(mu, n) for mu in enumerate_by_weight(n)
        }
        _check(
            checks,
            f"double cosets partition S_{2 * n} with closed-form sizes",
            sizes_ok,
            census,
        )
        fixed = {w for w in symmetric_group(2 * n) if phi(w, n) == identity()}
        b_group = set(hyperoctahedral_elements(n))
        _check(checks, f"fixed locus of the twist is B_{n} at n={n}", fixed == b_group)
        for mu in enumerate_by_weight(n):
            coset = enumerate_double_coset(mu, n)
            _check(
                checks,
                f"orbit closure of type {mu} at n={n} has the closed-form size",
                len(coset) == double_coset_size(mu, n),
            )
    rng = random.Random(SAMPLE_SEED)
    for n in levels:
        if n < 4:
            continue
        good = 0
        for _ in range(samples):
            images = list(range(1, 2 * n + 1))
            rng.shuffle(images)
            w = Permutation(tuple(images))
            mu = stable_coset_type(w)
            full = coset_type(w, n)
            ok = (
                sum(full) == n
                and stable_coset_type(w.inverse()) == mu
                and len(modified_support(w)) == weight(mu)
                and twisted_degree(w, n) == 2 * sum(mu)
                and cayley_degree(phi(w, n)) == 2 * sum(mu)
                and is_hyperoctahedral(w, n) == (mu == ())
                and gamma_graph(w, n).half_lengths() == full
            )
            good += ok
        _check(
            checks,
            f"pair-graph invariants on {samples} samples in S_{2 * n}",
            good == samples,
            f"{samples - good} violations",
        )


_SUITE_RUNNERS = {
    "matsumoto": _suite_matsumoto,
    "jm-center": _suite_jm_center,
    "trichotomy": _suite_trichotomy,
    "single-cycle": _suite_single_cycle,
    "graded-iso": _suite_graded_iso,
    "generators": _suite_generators,
    "coset-invariants": _suite_coset_invariants,
}


def _run_verify(args, jobs):
    suite, levels = args["suite"], args["levels"]
    _warn_heavy(levels)
    _progress(f"verify {suite}: levels {levels}, backend {backend_name()}")
    checks: list[dict] = []
    _SUITE_RUNNERS[suite](levels, args["samples"], jobs, checks)
    ok = all(c["ok"] for c in checks)
    payload = {
        "suite": suite,
        "levels": levels,
        "backend": backend_name(),
        "ok": ok,
        "checks": checks,
    }
    return payload, 0 if ok else 1


_RUNNERS = {
    "coset-type": _run_coset_type,
    "phi": _run_phi,
    "coset-size": _run_coset_size,
    "product": _run_product,
    "structure-constant": _run_structure_constant,
    "expand-single-cycle": _run_expand_single_cycle,
    "matsumoto": _run_matsumoto,
    "generators": _run_generators,
    "verify": _run_verify,
    "fit": _run_fit,
    "table": _run_table,
}


def _emit(payload, output_format: str, stream) -> None:
    if output_format == "json":
        stream.write(json.dumps(payload, indent=2))
        stream.write("\n")
        return
    buffer = io.StringIO()
    if isinstance(payload, list):
        rows = payload or [{}]
        fields: list[str] = []
        for row in rows:
            for key in row:
                if key not in fields:
                    fields.append(key)
        writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in fields})
    else:
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in payload.items():
            writer.writerow([key, _csv_cell(value)])
    stream.write(buffer.getvalue())


def _csv_cell(value):
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"))
    return value


def execute(command: Command, stream=None) -> int:
    """Run a validated Command; returns the exit status."""
    stream = stream if stream is not None else sys.stdout
    try:
        payload, status = _RUNNERS[command.verb](command.args, command.jobs)
    except UsageError:
        raise
    except HeckeError as exc:
        _emit(
            {"error": type(exc).__name__, "message": str(exc)},
            command.output_format,
            stream,
        )
        return 1
    _emit(payload, command.output_format, stream)
    return status


def main(argv=None) -> int:
    try:
        command = parse(sys.argv[1:] if argv is None else argv)
        return execute(command)
    except UsageError as exc:
        print(
            json.dumps({"error": "UsageError", "message": str(exc)}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
