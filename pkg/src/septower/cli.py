"""``septower``: run one JSON job and print a JSON report.

Exit codes: 0 success, 2 mathematical rejection, 3 bad input, 4 internal
failure.  Every failure prints ``{"error": {"kind": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from functools import lru_cache
from importlib import resources

import jsonschema

from .algebra import (
    Algebra,
    make_algebra,
    matrix_algebra,
    product_algebra,
    split_algebra,
    tensor_algebra,
    unit_algebra,
    zero_algebra,
)
from .checks import run_checks
from .constructors import GroupSpec, coset_algebra, cyclic_algebra
from .errors import InputError, SeptowerError
from .fields import FieldSpec, field_from_json
from .separability import separability_idempotent
from .tower import is_degree_one, splitting_tower

EXIT_OK, EXIT_MATH, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3, 4
_EXIT_BY_CATEGORY = {"math": EXIT_MATH, "input": EXIT_INPUT, "internal": EXIT_INTERNAL}
MAX_NESTING = 4


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    """``"job"`` or ``"report"``."""
    text = resources.files("septower").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def threads_cap() -> int | None:
    """Validated ``SEPTOWER_THREADS``.  The engine is single-threaded, so it is only checked."""
    raw = os.environ.get("SEPTOWER_THREADS")
    if raw is None or raw == "":
        return None
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"SEPTOWER_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"SEPTOWER_THREADS must be a positive integer, got {raw!r}")
    return n


class _Built:
    __slots__ = ("algebra", "index")

    def __init__(self, algebra: Algebra, index: int | None = None):
        self.algebra = algebra
        self.index = index


def build_algebra(F: FieldSpec, src, depth: int = 0) -> _Built:
    """Turn the ``algebra`` member of a job into an :class:`Algebra`."""
    if depth > MAX_NESTING:
        raise InputError(f"product/tensor nesting deeper than {MAX_NESTING}")
    if src == "unit":
        return _Built(unit_algebra(F))
    if src == "zero":
        return _Built(zero_algebra(F))
    if not isinstance(src, dict) or len(src) != 1:
        raise InputError("algebra must name exactly one source")
    (kind, body), = src.items()
    if kind == "structure_constants":
        n = body["dim"]
        flat = body["mult"]
        if len(flat) != n * n * n:
            raise InputError(f"mult must have dim^3 = {n ** 3} entries, got {len(flat)}")
        rows = [flat[i * n * n:(i + 1) * n * n] for i in range(n)]
        if len(body["unit"]) != n:
            raise InputError(f"unit must have {n} entries")
        return _Built(make_algebra(F, n, rows, body["unit"]))
    if kind == "cyclic":
        poly = body["poly"] if isinstance(body, dict) else body
        return _Built(cyclic_algebra(F, poly))
    if kind == "coset":
        g = GroupSpec.from_cycles(body["degree"], body["generators"], body["subgroup"])
        A, index = coset_algebra(F, g)
        return _Built(A, index)
    if kind == "split":
        return _Built(split_algebra(F, body))
    if kind == "matrix":
        return _Built(matrix_algebra(F, body))
    if kind in ("product", "tensor"):
        parts = [build_algebra(F, s, depth + 1).algebra for s in body]
        acc = parts[0]
        for part in parts[1:]:
            acc = product_algebra(acc, part)[0] if kind == "product" else tensor_algebra(acc, part)
        return _Built(acc)
    raise InputError(f"unknown algebra source {kind!r}")


def execute(job: dict, seed: int = 0, max_dim: int = 8) -> dict:
    """Validate ``job`` against the schema and run it; raises :class:`SeptowerError`."""
    try:
        jsonschema.validate(job, load_schema("job"))
    except jsonschema.ValidationError as exc:
        raise InputError(f"job does not match the schema: {exc.message}") from None
    F = field_from_json(job["field"])
    built = build_algebra(F, job["algebra"])
    A = built.algebra
    if A.dim > max_dim:
        raise InputError(f"algebra has dimension {A.dim} > --max-dim {max_dim}")
    command = job["command"]
    method = job.get("method", "components")
    if command == "validate":
        return {"valid": True, "dim": A.dim, "commutative": A.commutative}
    if command == "separable":
        data = separability_idempotent(A)
        sigma = None if data is None else [F.to_json(c) for c in data.sigma]
        return {"separable": data is not None, "sigma": sigma}
    if command == "tower":
        return splitting_tower(A, method).to_json()
    if command == "degree":
        out = {"degree": splitting_tower(A, method).degree}
        if built.index is not None:
            out["index"] = built.index
        return out
    if command == "degree-one":
        res = is_degree_one(A)
        out = res.to_json()
        out["tower_degree"] = splitting_tower(A, method).degree
        return out
    if command == "check":
        results = run_checks(A, seed)
        return {
            "checks": [r.to_json() for r in results],
            "passed": all(r.status != "fail" for r in results),
        }
    raise InputError(f"unknown command {command!r}")


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _read_job(path: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="septower", description="Splitting towers of separable algebras.")
    p.add_argument("--input", default="-", metavar="FILE", help="job file, '-' for stdin (default)")
    p.add_argument("--output", default="-", metavar="FILE", help="report file, '-' for stdout (default)")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized check suites")
    p.add_argument("--max-dim", type=int, default=8, help="refuse algebras of larger dimension (default 8)")
    p.add_argument("--quiet", action="store_true", help="no diagnostics on stderr")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        threads_cap()
        report = execute(_read_job(args.input), seed=args.seed, max_dim=args.max_dim)
        if report.get("passed") is False:
            code = EXIT_INTERNAL
    except SeptowerError as exc:
        report = {"error": {"kind": exc.kind, "message": str(exc)}}
        code = _EXIT_BY_CATEGORY.get(exc.category, EXIT_INTERNAL)
    except Exception as exc:  # noqa: BLE001 - any other failure is a bug
        report = {"error": {"kind": "InternalError", "message": f"{type(exc).__name__}: {exc}"}}
        code = EXIT_INTERNAL
    if code and not args.quiet:
        err = report.get("error")
        msg = f"{err['kind']}: {err['message']}" if err else "one or more checks failed"
        print(f"septower: {msg}", file=sys.stderr)
    try:
        _write(args.output, render(report))
    except OSError as exc:
        if not args.quiet:
            print(f"septower: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
