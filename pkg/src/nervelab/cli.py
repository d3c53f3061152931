"""``nervelab`` command line.

Every subcommand prints a short summary on stdout and, with ``--output``,
writes a canonical JSON report.  Inputs are JSON files or built-in examples
(``--example``).  Exit status: 0 on success, 1 when a replayed claim fails,
2 on invalid arguments or input.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Callable

from . import cases, io, models, nerves, qf
from .cat import (
    FiniteFunctor,
    contractible_groupoid,
    cyclic_group,
    group_as_category,
    identity_functor,
    ordinal,
    symmetric_group,
)
from .scat import discrete_scat, group_nerve_scat
from .sset import (
    boundary_subcomplex,
    horn,
    identity_map,
    is_kan,
    pi0,
    standard_simplex,
)


class UsageError(Exception):
    """Bad input; reported with exit status 2."""


def default_cap() -> int:
    raw = os.environ.get("NERVELAB_CAP", "2")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"NERVELAB_CAP: not an integer: {raw!r}") from None
    if cap < 0:
        raise UsageError("NERVELAB_CAP: must be non-negative")
    return cap


# --------------------------------------------------------------------------
# built-in inputs


def _scat_examples() -> dict[str, Callable]:
    def counter(part):
        return lambda: cases.hc_counterexample_data(1)[part]

    return {
        "hc-counterexample-C": counter("C"),
        "hc-counterexample-D": counter("D"),
        "BZ2": lambda: discrete_scat(group_as_category(cyclic_group(2)), cap=3),
        "BZ3": lambda: discrete_scat(group_as_category(cyclic_group(3)), cap=3),
        "BS3": lambda: discrete_scat(group_as_category(symmetric_group(3)), cap=3),
        "E2": lambda: discrete_scat(contractible_groupoid([0, 1]), cap=3),
        "nerve-Z2": lambda: group_nerve_scat(cyclic_group(2), cap=3),
    }


def _sset_examples() -> dict[str, Callable]:
    return {
        "delta2": lambda: standard_simplex(2),
        "delta3": lambda: standard_simplex(3),
        "boundary2": lambda: boundary_subcomplex(2),
        "horn2-0": lambda: horn(2, 0),
        "horn3-1": lambda: horn(3, 1),
    }


def _fibered_examples() -> dict[str, Callable]:
    def groth():
        B = ordinal(1)
        Z4, Z2 = group_as_category(cyclic_group(4)), group_as_category(cyclic_group(2))
        quot = FiniteFunctor(Z4, Z2, {"*": "*"}, {g: g % 2 for g in Z4.arrows})
        acts = {(0, 0): identity_functor(Z2), (1, 1): identity_functor(Z4), (0, 1): quot}
        return qf.grothendieck(B, {0: Z2, 1: Z4}, acts, name="Groth(Z4->Z2)")

    return {
        "product-Z2": lambda: qf.product_projection(ordinal(1), group_as_category(cyclic_group(2))),
        "groth-Z4-Z2": groth,
    }


def _sdiagram_examples() -> dict[str, Callable]:
    from .cat import classical_nerve

    def const(B, X):
        return qf.SDiagram(B, {b: X for b in B.objects}, {a: identity_map(X) for a in B.arrows})

    def nz2():
        return classical_nerve(group_as_category(cyclic_group(2)), 4)

    return {
        "terminal-BZ2": lambda: const(ordinal(0), nz2()),
        "constant-point": lambda: const(ordinal(1), standard_simplex(0)),
        "interval-BZ2": lambda: const(ordinal(1), nz2()),
    }


def _load(args, kind: str, examples: dict[str, Callable], parse: Callable):
    if args.example:
        if args.example not in examples:
            raise UsageError(f"--example: unknown {kind} example {args.example!r}; "
                             f"choose from {', '.join(sorted(examples))}")
        return examples[args.example]()
    if not args.input:
        raise UsageError(f"input: give a {kind} JSON file or --example")
    return parse(io.load(args.input))


def _emit(args, doc: dict, summary: list[str]) -> None:
    for line in summary:
        print(line)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(doc))


def _counts(X) -> str:
    return " ".join(str(c) for c in X.counts())


# --------------------------------------------------------------------------
# commands


def cmd_nerve(args) -> int:
    C = _load(args, "scat/v1", _scat_examples(), io.scat_from_json)
    dim = args.dim if args.dim is not None else default_cap()
    N = nerves.nerve(C, dim, args.flavor)
    _emit(args, io.nerve_to_json(N), [f"{args.flavor} nerve up to {dim}: nondegenerate counts {_counts(N.value)}"])
    return 0


def cmd_kan_check(args) -> int:
    X = _load(args, "sset/v1", _sset_examples(), io.sset_from_json)
    dim = args.dim if args.dim is not None else min(default_cap(), X.cap)
    r = is_kan(X, dim, inner_only=args.inner)
    doc = {"schema": "kan-report/v1", "ok": r.ok, "checked": [list(p) for p in r.checked],
           "failures": [list(p) for p in r.failures],
           "witness": None if r.witness is None else {
               "n": r.witness["n"], "i": r.witness["i"],
               "horn": {str(j): io.simplex_ref(s, with_dim=True) for j, s in sorted(r.witness["horn"].items())}}}
    kind = "inner Kan" if args.inner else "Kan"
    verdict = "yes" if r.ok else f"no, first failure at {r.first_failure()}"
    _emit(args, doc, [f"{kind} up to {dim}: {verdict}"])
    return 0


def cmd_horn_image(args) -> int:
    try:
        h = models.horn_image(args.n, args.i, args.a, args.b)
    except ValueError as exc:
        raise UsageError(f"--n/--i/--a/--b: {exc}") from None
    doc = {"schema": "horn-image/v1", "n": h.n, "i": h.i, "a": h.a, "b": h.b, "kind": h.kind,
           "coordinate": h.coordinate, "eps": h.eps, "faces": h.faces,
           "cells": sorted(io.encode_id(c) for c in h.cells)}
    _emit(args, doc, [h.label()])
    return 0


def cmd_ind(args) -> int:
    if args.n < 0:
        raise UsageError("--n: must be non-negative")
    gens = models.ind_generators(args.n)
    doc = {"schema": "ind/v1", "n": args.n, "count": len(gens),
           "generators": [[a, b, d, io.encode_id(cell)] for a, b, d, cell in gens.generators]}
    _emit(args, doc, [f"Ind generators of the cube category {args.n}: {len(gens)}"])
    return 0


def _run_scenarios(args, scenarios) -> int:
    results = [s.run() for s in scenarios]
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
        lines.extend(f"  FAIL {c.name}: expected {c.expected!r}, got {c.actual!r}" for c in r.claims if not c.passed)
    ok = all(r.passed for r in results)
    _emit(args, {"schema": "scenarios/v1", "passed": ok, "scenarios": [r.as_json() for r in results]}, lines)
    return 0 if ok else 1


def cmd_replay(args) -> int:
    if args.name not in cases.SCENARIOS:
        raise UsageError(f"name: unknown scenario {args.name!r}; choose from {', '.join(sorted(cases.SCENARIOS))}")
    return _run_scenarios(args, [cases.SCENARIOS[args.name]()])


def cmd_battery(args) -> int:
    dim = args.dim if args.dim is not None else 3
    return _run_scenarios(args, cases.scenario_fibrant_groupoid_battery(dim))


def cmd_qf_check(args) -> int:
    p = _load(args, "fibered/v1", _fibered_examples(), io.fibered_from_json)
    rep = qf.is_fibered(p)
    doc = {"schema": "qf-report/v1", "fibered": rep.ok,
           "f1_failures": [[io.encode_id(y), io.encode_id(phi)] for y, phi in rep.f1_failures],
           "f2_failures": [[io.encode_id(g), io.encode_id(f)] for g, f in rep.f2_failures]}
    lines = [f"fibered: {'yes' if rep.ok else 'no'}"]
    if rep.ok:
        Q = qf.qf_from_fibered(p, args.ncap)
        failures = Q.qf_failures()
        func = Q.functoriality_failures()
        forget = Q.forgetful_failures()
        doc.update({"ncap": args.ncap, "qf_failures": len(failures), "functoriality_failures": len(func),
                    "forgetful_failures": len(forget)})
        lines.append(f"(QF) up to {args.ncap}: {'holds' if not failures else f'{len(failures)} failures'}")
        if args.ncap >= 2:
            cmp = qf.compare_lim(p, args.ncap)
            doc.update({"lim_iso": cmp.ok, "lim_objects": cmp.objects, "lim_arrows": cmp.arrows})
            lines.append(f"LIM(p) -> lim E: {'isomorphism' if cmp.ok else 'not an isomorphism'} "
                         f"({cmp.objects} objects, {cmp.arrows} arrows)")
    _emit(args, doc, lines)
    return 0


def cmd_holim(args) -> int:
    F = _load(args, "sdiagram/v1", _sdiagram_examples(), io.sdiagram_from_json)
    try:
        H = qf.holim_sset(F, args.ncap, args.dimcap)
    except MemoryError as exc:
        raise UsageError(f"--ncap/--dimcap: {exc}") from None
    comps = len(pi0(H.value))
    doc = io.sset_to_json(H.value)
    doc["label"] = H.label
    doc["pi0"] = comps
    _emit(args, doc, [f"holim ({H.label}, n_cap={args.ncap}): counts {_counts(H.value)}, pi0 {comps}"])
    return 0


def cmd_adjunction(args) -> int:
    C = _load(args, "scat/v1", _scat_examples(), io.scat_from_json)
    n = args.n
    if args.sub == "simplex":
        S = standard_simplex(n)
    elif args.sub == "boundary":
        S = boundary_subcomplex(n)
    else:
        if args.i is None or not 0 <= args.i <= n:
            raise UsageError("--i: horn index in 0..n required")
        S = horn(n, args.i)
    r = nerves.adjunction_check(S, n, C)
    doc = {"schema": "adjunction-report/v1", "ok": r.ok, "maps": r.maps, "functors": r.functors,
           "failures": [str(f[0]) for f in r.failures]}
    _emit(args, doc, [f"Hom(S, hc C) = {r.maps}, Hom(cube category of S, C) = {r.functors}: "
                      f"{'bijection' if r.ok else 'mismatch'}"])
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nervelab", description="Nerves of simplicial categories on finite data.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str, source: bool = False):
        p = sub.add_parser(name, help=help_)
        if source:
            p.add_argument("input", nargs="?", help="JSON input file")
            p.add_argument("--example", help="use a built-in input instead of a file")
        p.add_argument("--output", "-o", help="write the JSON report here")
        p.set_defaults(func=func)
        return p

    p = add("nerve", cmd_nerve, "nerve of a simplicial category (scat/v1)", source=True)
    p.add_argument("--flavor", choices=["standard", "hc", "wbar"], default="hc")
    p.add_argument("--dim", type=_nonneg, default=None)

    p = add("kan-check", cmd_kan_check, "horn filling for a simplicial set (sset/v1)", source=True)
    p.add_argument("--dim", type=_nonneg, default=None)
    p.add_argument("--inner", action="store_true", help="inner horns only")

    p = add("horn-image", cmd_horn_image, "image of a horn in a hom cube")
    for flag in ("--n", "--i", "--a", "--b"):
        p.add_argument(flag, type=_nonneg, required=True)

    p = add("ind", cmd_ind, "free generators of the cube category")
    p.add_argument("--n", type=_nonneg, required=True)

    p = add("replay-counterexample", cmd_replay, "run a named scenario")
    p.add_argument("name")

    p = add("battery", cmd_battery, "positive fibration battery")
    p.add_argument("--dim", type=_nonneg, default=None)

    p = add("qf-check", cmd_qf_check, "fibered category checks (fibered/v1)", source=True)
    p.add_argument("--ncap", type=_nonneg, default=2)

    p = add("holim", cmd_holim, "truncated homotopy limit (sdiagram/v1)", source=True)
    p.add_argument("--ncap", type=_nonneg, default=2)
    p.add_argument("--dimcap", type=_nonneg, default=2)

    p = add("adjunction-check", cmd_adjunction, "maps into the nerve versus functors", source=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--sub", choices=["simplex", "boundary", "horn"], default="simplex")
    p.add_argument("--i", type=_nonneg, default=None)
    return ap


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.SchemaError) as exc:
        print(f"nervelab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"nervelab: error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
