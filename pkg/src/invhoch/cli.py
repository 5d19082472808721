"""Command line interface: ``invhoch {validate, hh, compare-braun, fixtures}``.

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 invalid input,
3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .algebra_core import (
    InvolutiveAlgebra,
    InvolutiveBimodule,
    regular_bimodule,
    validate_algebra,
    validate_bimodule,
)
from .coderivation import compare_with_cochain
from .fixtures import fixture, fixtures, skipped_fixtures
from .hochschild import VARIANTS, SizeCapError, hochschild
from .io import FormatError, dump, load, load_algebra, load_bimodule
from .exact_linalg import Field, GF, QQ
from .resolution_oracle import ResolutionCapError

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_field(s: str) -> Field:
    t = s.strip().lower()
    if t in ("rational", "q", "qq"):
        return QQ
    t = t.removeprefix("prime:").removeprefix("gf(").removesuffix(")")
    try:
        return GF(int(t))
    except ValueError as e:
        raise InputError(f"bad field {s!r}: {e}") from None


def _load_algebra(spec: str, field: str | None) -> InvolutiveAlgebra:
    if spec.startswith("fixture:"):
        F = parse_field(field or "rational")
        try:
            return fixture(spec.split(":", 1)[1], F).algebra
        except (KeyError, ValueError) as e:
            raise InputError(str(e).strip('"')) from None
    if field is not None:
        raise InputError("--field only applies to fixture:NAME algebras")
    try:
        A = load_algebra(spec)
    except (OSError, FormatError, ValueError) as e:
        raise InputError(f"{spec}: {e}") from None
    rep = validate_algebra(A)
    if not rep.ok:
        raise InputError(rep.summary())
    return A


def _load_module(spec: str | None, A: InvolutiveAlgebra) -> InvolutiveBimodule | None:
    if spec is None:
        return None
    try:
        M = load_bimodule(spec)
    except (OSError, FormatError, ValueError) as e:
        raise InputError(f"{spec}: {e}") from None
    if M.algebra.field != A.field or M.algebra.mul != A.mul or M.algebra.star.tolist() != A.star.tolist():
        raise InputError("module is over a different algebra than --algebra")
    M = InvolutiveBimodule(A, M.left, M.right, M.star, M.name)
    rep = validate_bimodule(M)
    if not rep.ok:
        raise InputError(rep.summary())
    return M


def _emit(report: dict, text: list[str], as_json: bool):
    if as_json:
        print(json.dumps(report, indent=1, sort_keys=True, default=str))
    else:
        print("\n".join(text))


def cmd_validate(args) -> int:
    results, text, code = [], [], EXIT_OK
    for path in args.paths:
        try:
            obj = load(path)
        except (OSError, FormatError, ValueError) as e:
            results.append({"path": path, "parsed": False, "error": str(e)})
            text.append(f"{path}: PARSE ERROR {e}")
            code = max(code, EXIT_INPUT)
            continue
        rep = validate_algebra(obj) if isinstance(obj, InvolutiveAlgebra) else validate_bimodule(obj)
        if isinstance(obj, InvolutiveBimodule) and rep.ok:
            arep = validate_algebra(obj.algebra)
            rep.checks.extend(arep.checks)
        results.append({
            "path": path,
            "parsed": True,
            "valid": rep.ok,
            "failures": [{"check": c.name, "witness": list(c.witness)} for c in rep.failures()],
        })
        text.append(f"{path}: {rep.summary()}")
        if not rep.ok and code == EXIT_OK:
            code = EXIT_MISMATCH
    _emit({"command": "validate", "results": results, "exit_code": code}, text, args.json)
    return code


def cmd_hh(args) -> int:
    A = _load_algebra(args.algebra, args.field)
    M = _load_module(args.module, A)
    involutive = args.variant in ("ihh", "icohh")
    oracle = args.oracle
    if oracle is None:
        oracle = "check" if involutive and A.field.characteristic() == 2 else "off"
    t0 = time.perf_counter()
    report = {
        "command": "hh",
        "algebra": A.name,
        "field": str(A.field),
        "module": M.name if M is not None else "regular",
        "variant": args.variant,
        "max_degree": args.max_degree,
        "oracle_mode": oracle,
    }
    text = [f"{args.variant} of {A.name} over {A.field}, degrees 0..{args.max_degree - 1}"]
    code = EXIT_OK
    if oracle == "only":
        from .resolution_oracle import oracle_dims

        dims = oracle_dims(A, M, args.max_degree, args.variant)
        report.update(dims=dims, oracle_dims=dims, source="oracle")
        text.append(f"  oracle dims: {dims}")
    else:
        res = hochschild(A, M, args.max_degree, args.variant, oracle=(oracle == "check"), cap=args.max_entries)
        report.update(complex_dims=res.dims, oracle_dims=res.oracle_dims)
        if involutive:
            report["certificate"] = [
                {"degree": n, "projective": c.projective, "reason": c.reason} for n, c in enumerate(res.certificate)
            ]
            report["certified"] = res.certified
            status = "certified" if res.certified else f"uncertified (first failing degree {res.first_uncertified_degree})"
            text.append(f"  projectivity certificate: {status}")
        text.append(f"  complex dims: {res.dims}")
        if res.oracle_dims is not None:
            agree = res.oracle_agrees
            report["oracle_agrees"] = agree
            text.append(f"  oracle dims:  {res.oracle_dims}  ({'agrees' if agree else 'differs'})")
            # without a certificate the complex is not claimed to compute the derived functor
            if res.certified and not agree:
                code = EXIT_MISMATCH
        if res.certified:
            report["dims"], report["source"] = res.dims, "complex"
        elif res.oracle_dims is not None:
            report["dims"], report["source"] = res.oracle_dims, "oracle"
            text.append(f"  reported value (oracle): {res.oracle_dims}")
        else:
            report["dims"], report["source"] = res.dims, "complex (uncertified)"
            text.append("  value above is uncertified; rerun with --oracle check")
    report["seconds"] = round(time.perf_counter() - t0, 4)
    report["exit_code"] = code
    _emit(report, text, args.json)
    return code


def cmd_compare_braun(args) -> int:
    A = _load_algebra(args.algebra, args.field)
    t0 = time.perf_counter()
    rep = compare_with_cochain(A, args.weight, cap=args.max_entries)
    d = rep.as_dict()
    d.update(command="compare-braun", seconds=round(time.perf_counter() - t0, 4))
    code = EXIT_OK if rep.ok else EXIT_MISMATCH
    d["exit_code"] = code
    text = [
        f"coderivation complex vs cochain complex for {A.name} over {A.field}, weight cap {args.weight}",
        f"  reliable degrees: {rep.reliable_degrees}",
        f"  dims (coder / cochain): {rep.coder_dims} / {rep.cochain_dims}",
        f"  per-degree signs: {rep.signs}",
        f"  involutions match: {rep.involutions_match}",
        f"  cohomology: {rep.coder_cohomology}; invariant part: {rep.coder_invariant_cohomology}",
        f"  {'PASS' if rep.ok else f'FAIL at degree {rep.first_failure}'}",
    ]
    _emit(d, text, args.json)
    return code


def cmd_fixtures(args) -> int:
    F = parse_field(args.field)
    out = Path(args.emit)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    tag = "Q" if F.p == 0 else f"F{F.p}"
    for name, fx in fixtures(F).items():
        path = out / f"{name}_{tag}.json"
        dump(fx.algebra, path)
        bpath = out / f"{name}_{tag}.regular.json"
        dump(regular_bimodule(fx.algebra), bpath, algebra_ref=path.name)
        written += [str(path), str(bpath)]
    skipped = skipped_fixtures(F)
    text = [f"wrote {len(written) // 2} fixtures (algebra and regular bimodule) over {F} to {out}"]
    text += [f"  skipped {k}: {v}" for k, v in skipped.items()]
    _emit({"command": "fixtures", "written": written, "skipped": skipped, "exit_code": 0}, text, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invhoch", description="Exact (involutive) Hochschild (co)homology.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse and check algebra/bimodule files")
    v.add_argument("paths", nargs="+")
    v.set_defaults(func=cmd_validate)

    def algebra_args(q):
        q.add_argument("--algebra", required=True, help="JSON file or fixture:NAME")
        q.add_argument("--field", default=None, help="field for fixture:NAME (rational or a prime)")
        q.add_argument("--max-entries", type=int, default=None, help="size cap (default INVHOCH_MAX_ENTRIES or 200000)")

    h = sub.add_parser("hh", help="Hochschild dimensions")
    algebra_args(h)
    h.add_argument("--module", default=None, help="bimodule JSON file (default: regular)")
    h.add_argument("--max-degree", type=int, default=4)
    h.add_argument("--variant", choices=VARIANTS, default="hh")
    h.add_argument("--oracle", choices=("off", "check", "only"), default=None,
                   help="default: check for involutive variants in characteristic 2, else off")
    h.set_defaults(func=cmd_hh)

    c = sub.add_parser("compare-braun", help="coderivation complex vs cochain complex")
    algebra_args(c)
    c.add_argument("--weight", type=int, default=4)
    c.set_defaults(func=cmd_compare_braun)

    f = sub.add_parser("fixtures", help="write the fixture corpus")
    f.add_argument("--emit", required=True, help="output directory")
    f.add_argument("--field", default="rational")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_degree", 1) < 1 or getattr(args, "weight", 1) < 1:
        print("error: degree and weight bounds must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (SizeCapError, ResolutionCapError) as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
