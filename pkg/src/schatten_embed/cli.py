"""Command-line interface with JSON documents in and out.

Every subcommand reads one JSON document (``--input PATH`` or standard
input) and writes one JSON document (``--output PATH`` or standard output).

Exit codes: 0 success, 2 usage or parse error, 3 numerical failure,
4 precondition violation.
"""

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import divdiff, embed, moi, obstruct
from .errors import NumericalError, PreconditionError
from .matcore import singular_values
from .schatten import format_exponent, parse_exponent, schatten_norm

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_PRECONDITION = 4


class SchemaError(Exception):
    """Input document does not match the expected schema."""


# ---------------------------------------------------------------- documents


def _finite_array(values, what, ndim):
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{what}: expected numbers") from None
    if arr.ndim != ndim:
        raise SchemaError(f"{what}: expected a {ndim}-D array")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{what}: non-finite value")
    return arr


def _require(doc, key, what="document"):
    if not isinstance(doc, dict):
        raise SchemaError(f"{what}: expected an object")
    if key not in doc:
        raise SchemaError(f"{what}: missing key {key!r}")
    return doc[key]


def matrix_from_doc(doc, what="matrix"):
    """Parse a MatrixDocument ``{rows, cols, re, im?}`` into a complex array."""
    rows = _require(doc, "rows", what)
    cols = _require(doc, "cols", what)
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise SchemaError(f"{what}: rows and cols must be positive integers")
    re = _finite_array(_require(doc, "re", what), f"{what}.re", 2)
    im = _finite_array(doc.get("im", np.zeros((rows, cols)).tolist()), f"{what}.im", 2)
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise SchemaError(f"{what}: arrays do not match {rows}x{cols}")
    out = np.empty((rows, cols), dtype=complex)
    out.real = re
    out.imag = im
    return out


def matrix_to_doc(M):
    M = np.asarray(M, dtype=complex)
    return {
        "rows": M.shape[0],
        "cols": M.shape[1],
        "re": M.real.tolist(),
        "im": M.imag.tolist(),
    }


def vector_from_doc(doc, what="vector"):
    """A vector is ``{re, im?}`` or a bare list of reals."""
    if isinstance(doc, list):
        return _finite_array(doc, what, 1).astype(complex)
    re = _finite_array(_require(doc, "re", what), f"{what}.re", 1)
    im = _finite_array(doc.get("im", [0.0] * len(re)), f"{what}.im", 1)
    if im.shape != re.shape:
        raise SchemaError(f"{what}: re and im lengths differ")
    out = np.empty(re.shape, dtype=complex)
    out.real = re
    out.imag = im
    return out


def vector_to_doc(v):
    v = np.asarray(v, dtype=complex)
    return {"re": v.real.tolist(), "im": v.imag.tolist()}


def element_from_doc(space, doc, what="element"):
    if space.kind is embed.Kind.MATRIX:
        x = matrix_from_doc(doc, what)
    else:
        x = vector_from_doc(doc, what)
    if x.shape != space.shape:
        raise SchemaError(f"{what}: shape {x.shape} does not match space {space.shape}")
    if space.field is embed.Field.REAL:
        if np.any(x.imag != 0):
            raise SchemaError(f"{what}: complex entries in a real space")
        x = x.real
    return x


def element_to_doc(space, x):
    if space.kind is embed.Kind.MATRIX:
        return matrix_to_doc(x)
    return vector_to_doc(x)


def exponent_from_doc(token, what="p"):
    if isinstance(token, bool) or not isinstance(token, (int, float, str)):
        raise SchemaError(f"{what}: expected a positive number or \"inf\"")
    try:
        return parse_exponent(token)
    except PreconditionError as exc:
        raise SchemaError(f"{what}: {exc}") from None


def space_to_doc(space):
    return {
        "kind": space.kind.value,
        "dim": space.dim,
        "exponent": format_exponent(space.exponent),
        "field": space.field.value,
    }


def space_from_doc(doc, what="space"):
    try:
        return embed.SpaceSpec(
            kind=embed.Kind(_require(doc, "kind", what)),
            dim=_require(doc, "dim", what),
            exponent=exponent_from_doc(_require(doc, "exponent", what), f"{what}.exponent"),
            field=doc.get("field", "COMPLEX"),
        )
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"{what}: {exc}") from None


def map_to_doc(emb):
    return {
        "name": emb.name,
        "domain": space_to_doc(emb.domain),
        "codomain": space_to_doc(emb.codomain),
        "basis_images": [element_to_doc(emb.codomain, img) for img in emb.basis_images],
    }


def map_from_doc(doc, what="map"):
    """Either a full map document or a named constructor ``{"kind": ..., params}``."""
    if isinstance(doc, dict) and "basis_images" in doc:
        domain = space_from_doc(_require(doc, "domain", what), f"{what}.domain")
        codomain = space_from_doc(_require(doc, "codomain", what), f"{what}.codomain")
        images = doc["basis_images"]
        if not isinstance(images, list):
            raise SchemaError(f"{what}.basis_images: expected a list")
        arr = [element_from_doc(codomain, img, f"{what}.basis_images[{k}]") for k, img in enumerate(images)]
        try:
            return embed.EmbeddingMap(domain, codomain, np.array(arr), name=doc.get("name", ""))
        except PreconditionError as exc:
            raise SchemaError(f"{what}: {exc}") from None
    return build_named_map(doc, what)


def _int_param(doc, key, what):
    value = _require(doc, key, what)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what}.{key}: expected an integer")
    return value


def build_named_map(doc, what="map"):
    kind = _require(doc, "kind", what)
    if kind == "diag":
        q = doc.get("q")
        return embed.diag_embedding(
            _int_param(doc, "m", what),
            exponent_from_doc(_require(doc, "p", what)),
            domain_exponent=None if q is None else exponent_from_doc(q, "q"),
        )
    if kind == "corner":
        return embed.corner_embedding(
            _int_param(doc, "m", what), _int_param(doc, "n", what),
            exponent_from_doc(_require(doc, "p", what)),
        )
    if kind == "sumdiff":
        return embed.sum_diff_embedding(_int_param(doc, "n", what))
    if kind == "firstrow":
        return embed.first_row_embedding(
            _int_param(doc, "m", what), exponent_from_doc(_require(doc, "p", what))
        )
    if kind == "vec":
        return embed.vec_embedding(_int_param(doc, "m", what))
    if kind == "s2sp":
        return embed.s2_to_sp_embedding(
            _int_param(doc, "m", what), exponent_from_doc(_require(doc, "p", what))
        )
    if kind == "cubature243":
        return embed.cubature_embedding_2_4_3()
    raise SchemaError(f"{what}: unknown embedding kind {kind!r}")


def symbol_from_doc(doc, what="symbol"):
    kind = _require(doc, "kind", what)
    if kind == "abs_pow":
        p = exponent_from_doc(_require(doc, "p", what), f"{what}.p")
        return divdiff.abs_pow_symbol(p)
    if kind == "poly":
        coeffs = _finite_array(_require(doc, "coeffs", what), f"{what}.coeffs", 1)
        return divdiff.polynomial_symbol(coeffs.tolist())
    raise SchemaError(f"{what}: unknown symbol kind {kind!r}")


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


# ---------------------------------------------------------------- commands


def cmd_norm(doc, args):
    T = matrix_from_doc(_require(doc, "matrix"))
    p = exponent_from_doc(_require(doc, "p"))
    return {
        "norm": schatten_norm(T, p),
        "p": format_exponent(p),
        "singular_values": singular_values(T).tolist(),
    }


def cmd_svals(doc, args):
    T = matrix_from_doc(_require(doc, "matrix"))
    return {"singular_values": singular_values(T).tolist()}


def cmd_divdiff(doc, args):
    f = symbol_from_doc(_require(doc, "symbol"))
    nodes = _finite_array(_require(doc, "nodes"), "nodes", 1).tolist()
    return {"value": divdiff.divided_difference(f, nodes), "order": len(nodes) - 1}


def cmd_moi(doc, args):
    anchors = [matrix_from_doc(d, f"anchors[{k}]") for k, d in enumerate(_require(doc, "anchors"))]
    perts = [
        matrix_from_doc(d, f"perturbations[{k}]")
        for k, d in enumerate(_require(doc, "perturbations"))
    ]
    problem = moi.MoiProblem(tuple(anchors), tuple(perts), symbol_from_doc(_require(doc, "symbol")))
    group_tol = float(doc.get("group_tol", moi.DEFAULT_GROUP_TOL))
    return {"order": problem.order, "result": matrix_to_doc(moi.moi_apply(problem, group_tol))}


def cmd_d2(doc, args):
    A = matrix_from_doc(_require(doc, "A"), "A")
    B = matrix_from_doc(_require(doc, "B"), "B")
    p = exponent_from_doc(_require(doc, "p"))
    out = {"d2": moi.second_derivative_schatten(A, B, p), "p": format_exponent(p)}
    if "fd_h" in doc:
        h = float(doc["fd_h"])
        out["fd"] = {"h": h, "value": moi.fd_second_derivative(A, B, p, h)}
    return out


def cmd_embed(doc, args):
    emb = build_named_map(doc)
    out = {"map": map_to_doc(emb)}
    if "x" in doc:
        x = element_from_doc(emb.domain, doc["x"], "x")
        y = embed.apply(emb, x)
        out["image"] = element_to_doc(emb.codomain, y)
        out["domain_norm"] = embed.element_norm(emb.domain, x)
        out["codomain_norm"] = embed.element_norm(emb.codomain, y)
    return out


def cmd_verify(doc, args):
    emb = map_from_doc(_require(doc, "map"))
    samples = doc.get("samples", 200)
    if isinstance(samples, bool) or not isinstance(samples, int):
        raise SchemaError("samples: expected an integer")
    tol = 1e-9 if args.tol is None else args.tol
    verdict = embed.verify_isometry(emb, samples, args.seed, tol)
    return {
        "map": emb.name,
        "max_relative_residual": verdict.max_relative_residual,
        "pass": verdict.passed,
        "samples": samples,
        "tol": tol,
    }


def cmd_lambda(doc, args):
    m = _require(doc, "m")
    p = _require(doc, "p")
    field = _require(doc, "field")
    return {"lambda": embed.lambda_bound(m, p, field), "m": m, "p": p, "field": embed.Field.parse(field).value}


def report_to_doc(report):
    return {
        "q": format_exponent(report.q),
        "p": format_exponent(report.p),
        "verdict": report.verdict.value,
        "tol": report.tol,
        "max_residual": report.max_residual,
        "d2_actual": "NOT_APPLICABLE" if report.d2_actual is None else report.d2_actual,
        "d2_target": (
            "NOT_APPLICABLE" if report.d2_target is None
            else "DIVERGES" if math.isinf(report.d2_target)
            else report.d2_target
        ),
        "residual_columns": ["t", "target", "actual", "residual"],
        "residual_profile": [[r.t, r.target, r.actual, r.residual] for r in report.residual_profile],
        "notes": list(report.notes),
    }


def cmd_obstruct(doc, args):
    emb = map_from_doc(_require(doc, "map"))
    grid = doc.get("t_grid")
    grid = obstruct.DEFAULT_T_GRID if grid is None else _finite_array(grid, "t_grid", 1).tolist()
    tol = obstruct.DEFAULT_TOL if args.tol is None else args.tol
    return report_to_doc(obstruct.check_candidate(emb, grid, tol))


COMMANDS = {
    "norm": (cmd_norm, 'Schatten norm: {"matrix": M, "p": number|"inf"}'),
    "svals": (cmd_svals, 'singular values: {"matrix": M}'),
    "divdiff": (cmd_divdiff, 'divided difference: {"symbol": S, "nodes": [x0, ...]}'),
    "moi": (cmd_moi, 'operator integral: {"anchors": [M...], "perturbations": [M...], "symbol": S, "group_tol"?}'),
    "d2": (cmd_d2, 'second derivative of ||A+tB||_p^p: {"A": M, "B": M, "p": number, "fd_h"?}'),
    "embed": (cmd_embed, 'build an embedding: {"kind": name, params..., "x"?: element}'),
    "verify": (cmd_verify, 'isometry check: {"map": map-or-named-spec, "samples"?: int}'),
    "lambda": (cmd_lambda, 'cubature bound: {"m": int, "p": even int, "field": "R"|"C"|"H"}'),
    "obstruct": (cmd_obstruct, 'obstruction pipeline: {"map": map-or-named-spec, "t_grid"?: [t...]}'),
}

SCHEMA_EPILOG = """\
documents:
  M (matrix)   {"rows": r, "cols": c, "re": [[...]], "im": [[...]]}  (im optional)
  S (symbol)   {"kind": "abs_pow", "p": x} | {"kind": "poly", "coeffs": [c0, c1, ...]}
  named maps   diag{m,p,q?} corner{m,n,p} sumdiff{n} firstrow{m,p} vec{m} s2sp{m,p} cubature243{}
"""


def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--input", default="-", help="input JSON path, '-' for stdin")
    shared.add_argument("--output", default="-", help="output JSON path, '-' for stdout")
    shared.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    shared.add_argument("--tol", type=float, default=None, help="tolerance (command default)")

    parser = argparse.ArgumentParser(
        prog="schatten-embed",
        description="Schatten norms, operator integrals, embeddings and obstruction checks.",
        epilog=SCHEMA_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(
            name, parents=[shared], help=help_text, description=help_text,
            epilog=SCHEMA_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter,
        )
    return parser


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_output(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        raw = _read_input(args.input)
        doc = json.loads(raw)
        result = handler(doc, args)
    except (OSError, json.JSONDecodeError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    result["seed"] = args.seed
    result = {k: _jsonable(v) for k, v in result.items()}
    _write_output(args.output, json.dumps(result, indent=2, allow_nan=False) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
