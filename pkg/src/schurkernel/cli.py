"""Command line front end: JSON in, JSON report out.

Exit codes: 0 success, 2 invalid input, 3 numeric verdict failure
(data not from a Schur function, law leaves the disk), 4 tolerance breach
(kernel could not be isolated).
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
import time
from dataclasses import is_dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .classify import classify, smallest_singular_profile
from .colligation import build_model, ggt_isometry
from .config import Config, load_config
from .core import DomainError, NotSchurError, SchurSequence, tail_products
from .kernel import KernelError, build_bundle, l_table, q_values
from .recurrence import LawError, RecurrenceLaw, extend, extract_law, verify_law
from .transform import caratheodory_coefficients, schur_to_taylor, taylor_to_moments, taylor_to_schur

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_TOLERANCE = 4


class InputError(Exception):
    """Malformed input document."""


def parse_complex(item, where: str) -> complex:
    if isinstance(item, bool):
        raise InputError(f"{where}: expected [re, im], got {item!r}")
    if isinstance(item, (int, float)):
        return complex(item)
    if isinstance(item, list) and len(item) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in item
    ):
        return complex(item[0], item[1])
    raise InputError(f"{where}: expected [re, im], got {item!r}")


def parse_complex_list(items, field: str) -> np.ndarray:
    if not isinstance(items, list):
        raise InputError(f"{field}: expected a list")
    if not items:
        raise InputError(f"{field}: list is empty")
    return np.array([parse_complex(x, f"{field}[{i}]") for i, x in enumerate(items)], dtype=complex)


def encode(value):
    """Convert results to plain JSON types; complex numbers become [re, im]."""
    if isinstance(value, enum.Enum):
        return value.value
    if is_dataclass(value) and not isinstance(value, type):
        return {k: encode(getattr(value, k)) for k in value.__dataclass_fields__}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, np.ndarray):
        return encode(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [encode(float(value.real)), encode(float(value.imag))]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if np.isfinite(value) else None
    return value


def load_document(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError("top level must be a JSON object")
    payloads = [k for k in ("schur_parameters", "taylor_coefficients") if k in doc]
    if len(payloads) != 1:
        raise InputError("exactly one of schur_parameters / taylor_coefficients is required")
    status = doc.get("status")
    if status not in (None, "open", "terminated"):
        raise InputError(f"status: expected 'open' or 'terminated', got {status!r}")
    return doc


def resolve_config(doc: dict, args) -> Config:
    try:
        config = load_config()
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"config file: {exc}") from exc
    options = doc.get("options", {}) or {}
    if not isinstance(options, dict):
        raise InputError("options: expected an object")
    try:
        config = config.with_overrides(options.get("tolerances"), options.get("depths"))
        flags_tol = {"tol_sigma": args.tol_sigma} if args.tol_sigma is not None else {}
        flags_dep = {"n_max": args.n_max} if args.n_max is not None else {}
        return config.with_overrides(flags_tol, flags_dep)
    except (TypeError, ValueError) as exc:
        raise InputError(f"options: {exc}") from exc


def sequence_from(doc: dict, config: Config) -> tuple[SchurSequence, np.ndarray | None]:
    """Schur sequence of the document, plus the Taylor coefficients when those were given."""
    tol_unit = config.tolerances.tol_unit
    if "schur_parameters" in doc:
        values = parse_complex_list(doc["schur_parameters"], "schur_parameters")
        status = doc.get("status")
        terminated = None if status is None else status == "terminated"
        try:
            return SchurSequence.from_values(values, terminated=terminated, tol_unit=tol_unit), None
        except DomainError as exc:
            raise InputError(f"schur_parameters: {exc}") from exc
    coeffs = parse_complex_list(doc["taylor_coefficients"], "taylor_coefficients")
    return taylor_to_schur(coeffs, tol_unit=tol_unit), coeffs


def cmd_convert(doc, seq, coeffs, config, args) -> dict:
    if coeffs is None:
        n_terms = seq.N + 1
        coeffs = schur_to_taylor(seq, n_terms)
    moments = taylor_to_moments(coeffs)
    return {
        "schur_parameters": seq.params,
        "status": seq.status,
        "taylor_coefficients": coeffs,
        "moments": moments,
        "caratheodory_coefficients": caratheodory_coefficients(moments),
    }


def cmd_classify(doc, seq, coeffs, config, args) -> dict:
    report = classify(seq, config)
    return {"classification": report, "status": seq.status}


def cmd_extend(doc, seq, coeffs, config, args) -> dict:
    tol = config.tolerances
    count = args.count if args.count is not None else config.depths.extend_count
    if args.lambda_file:
        try:
            raw = json.loads(Path(args.lambda_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"--lambda: {exc}") from exc
        raw = raw.get("coefficients", raw) if isinstance(raw, dict) else raw
        law = RecurrenceLaw.from_coefficients(parse_complex_list(raw, "lambda"), seq)
        source = "explicit"
    else:
        if args.order is None:
            raise InputError("--order is required unless --lambda is given")
        law = extract_law(seq, args.order, tol)
        source = "extracted"
    if args.order is not None and args.order != law.order:
        raise InputError(f"--order {args.order} does not match lambda of length {law.order}")
    if seq.N < law.order:
        raise InputError(f"prefix needs at least {law.order + 1} parameters")
    extended = extend(seq, law, count, tol)
    check = verify_law(extended, law)
    return {
        "law": {"order": law.order, "source": source, "kernel_vector": law.kernel_vector, "coefficients": law.coefficients},
        "extended": extended.params,
        "appended": extended.params[seq.N + 1 :],
        "residuals": check,
    }


def cmd_model(doc, seq, coeffs, config, args) -> dict:
    size = args.size if args.size is not None else config.depths.model_size
    model = build_model(seq, None if not seq.is_open else size)
    out = {
        "regime": model.regime,
        "T": model.T,
        "F": model.F,
        "G": model.G,
        "S": model.S,
        "Y": model.assembled(),
        "dims": {"model": model.size, "main": model.main_size, "shift": model.shift_size},
    }
    if seq.is_open:
        out["U22"] = ggt_isometry(seq, size)
    return out


def cmd_kernel_profile(doc, seq, coeffs, config, args) -> dict:
    seq.require_open("kernel-profile")
    n = config.depths.n_max
    table = l_table(seq, max(n, 1))
    bundle = build_bundle(seq, n, table)
    return {
        "depth": n,
        "tail_products": tail_products(seq).pi,
        "l1": table.values[0, 1] if table.n_max >= 1 else 0j,
        "q_values": q_values(seq)[: n + 1],
        "gram_determinants": bundle.gram_dets,
        "gram_eigenvalues": np.linalg.eigvalsh(bundle.gram),
        "sigma_min_profile": smallest_singular_profile(bundle.lower),
        "lower_matrix": bundle.lower,
    }


COMMANDS = {
    "convert": cmd_convert,
    "classify": cmd_classify,
    "extend": cmd_extend,
    "model": cmd_model,
    "kernel-profile": cmd_kernel_profile,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schurkernel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("input", help="input JSON document")
    parser.add_argument("-o", "--output", help="write the report here instead of stdout")
    parser.add_argument("--n-max", type=int, dest="n_max")
    parser.add_argument("--tol-sigma", type=float, dest="tol_sigma")
    parser.add_argument("--seed-free", action="store_true", help="accepted for scripting; no command uses randomness")
    parser.add_argument("--timing", action="store_true", help="add wall-clock timing (makes output non-reproducible)")
    parser.add_argument("--order", type=int, help="extend: recurrence order")
    parser.add_argument("--count", type=int, help="extend: number of parameters to append")
    parser.add_argument("--lambda", dest="lambda_file", help="extend: JSON file with the coefficient vector")
    parser.add_argument("--size", type=int, help="model: truncation size")
    return parser


def _error(kind: str, message: str, code: int, index=None) -> int:
    payload = {"error": {"kind": kind, "message": message}}
    if index is not None:
        payload["error"]["index"] = index
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        doc = load_document(args.input)
        config = resolve_config(doc, args)
        seq, coeffs = sequence_from(doc, config)
        body = COMMANDS[args.command](doc, seq, coeffs, config, args)
    except InputError as exc:
        return _error("input", str(exc), EXIT_INPUT)
    except NotSchurError as exc:
        return _error("not_schur", str(exc), EXIT_NUMERIC, exc.index)
    except LawError as exc:
        return _error("law", str(exc), EXIT_NUMERIC, exc.step)
    except KernelError as exc:
        return _error("tolerance", str(exc), EXIT_TOLERANCE)
    except DomainError as exc:
        return _error("domain", str(exc), EXIT_INPUT)
    report = {
        "tool": "schurkernel",
        "version": __version__,
        "command": args.command,
        "input": {k: v for k, v in doc.items()},
        "config": config.to_dict(),
        "seed_free": bool(args.seed_free),
        "result": body,
    }
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - started}
    text = json.dumps(encode(report), sort_keys=True, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
