"""Command-line interface.

Subcommands: validate (code checks), plan (measurement configurations),
characterize (full pipeline with reconstruction report). Exit codes:
0 success, 1 domain or validation failure, 2 input or parse failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import jsonio
from .channels import (
    builtin_channel,
    channel_from_json,
    chi_from_kraus,
    extend_channel,
    validity_report,
)
from .codes import (
    builtin_code,
    code_from_json,
    hamming_bound,
    kl_scan,
    syndrome_of,
)
from .estimation import SamplingPolicy, compare, sample_record
from .protocol import (
    plan_configurations,
    plan_to_json,
    reconstruct,
    xi_predicted,
    xi_simulated,
)

_BUILTIN_CODES = ("code3", "code5")


class _InputError(Exception):
    pass


class _DomainError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise _InputError("cannot parse %s: %s" % (path, exc))


def _resolve_code(spec: str):
    if spec.strip().lower() in _BUILTIN_CODES:
        try:
            return builtin_code(spec)
        except ValueError as exc:
            raise _DomainError(str(exc))
    if not os.path.exists(spec):
        raise _InputError("code %r is neither a builtin name (%s) nor a file"
                          % (spec, ", ".join(_BUILTIN_CODES)))
    doc = _load_json(spec)
    try:
        return code_from_json(doc)
    except (KeyError, TypeError) as exc:
        raise _InputError("bad code schema in %s: %s" % (spec, exc))
    except ValueError as exc:
        raise _DomainError(str(exc))


def _resolve_channel(spec: str, params):
    if os.path.exists(spec):
        doc = _load_json(spec)
        try:
            return channel_from_json(doc), False
        except (KeyError, TypeError, ValueError) as exc:
            raise _InputError("bad channel schema in %s: %s" % (spec, exc))
    try:
        return builtin_channel(spec, params), True
    except (ValueError, IndexError) as exc:
        raise _InputError(str(exc))


def _parse_beta(text: str) -> np.ndarray:
    try:
        return np.array([complex(tok.strip()) for tok in text.split(",")])
    except ValueError:
        raise _InputError("cannot parse logical amplitudes %r" % text)


def _emit(report: dict, text_lines, args) -> None:
    if args.format == "json":
        payload = jsonio.dumps(report)
    else:
        payload = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _cmd_validate(args) -> int:
    code = _resolve_code(args.code)
    c, residual = kl_scan(code)
    identity_gap = float(np.abs(c - np.eye(code.d2)).max())
    bound = hamming_bound(code.n, code.k, len(code.noisy_coords))
    syndromes = {code.error_basis.label(i):
                 "".join(str(b) for b in syndrome_of(code, i))
                 for i in range(code.d2)}
    report = {
        "code": args.code,
        "n": code.n,
        "k": code.k,
        "noisy_coords": list(code.noisy_coords),
        "generators_commute": True,
        "kl_residual": residual,
        "kl_identity_gap": identity_gap,
        "syndrome_count": code.d2,
        "syndromes": syndromes,
        "hamming": bound,
        "pass": True,
    }
    lines = [
        "code: %s  [[%d,%d]] with %d noisy coordinate(s)"
        % (args.code, code.n, code.k, len(code.noisy_coords)),
        "generators commute: yes",
        "error-correcting condition residual: %.3g" % residual,
        "syndrome table: %d distinct syndromes" % code.d2,
    ]
    for label, bits in syndromes.items():
        lines.append("  %-4s -> %s" % (label, bits))
    lines.append("hamming bound: %s%s"
                 % ("satisfied" if bound["satisfied"] else "violated",
                    ", perfect" if bound["perfect"] else ""))
    _emit(report, lines, args)
    return 0


def _cmd_plan(args) -> int:
    code = _resolve_code(args.code)
    configs, _ = plan_configurations(code)
    doc = plan_to_json(code, configs)
    lines = ["%d configurations" % len(configs)]
    for cfg in configs:
        if cfg.kind == "bare":
            lines.append("  bare")
        else:
            lines.append("  %s (a=%s, b=%s)"
                         % (cfg.kind, code.error_basis.label(cfg.a),
                            code.error_basis.label(cfg.b)))
    _emit(doc, lines, args)
    return 0


def _cmd_characterize(args) -> int:
    code = _resolve_code(args.code)
    try:
        params = [float(tok) for tok in args.params.split(",")] if args.params else []
    except ValueError:
        raise _InputError("cannot parse channel parameters %r" % args.params)
    channel, have_oracle = _resolve_channel(args.channel, params)
    if args.beta:
        beta = _parse_beta(args.beta)
    else:
        dim = 1 << code.k
        beta = np.full(dim, 1.0 / np.sqrt(dim), dtype=complex)

    try:
        if channel.p < len(code.noisy_coords):
            channel = extend_channel(channel, len(code.noisy_coords))
        configs, readouts = plan_configurations(code)
        records = [xi_simulated(code, beta, channel, cfg) for cfg in configs]
        if args.mode == "sampled":
            policy = SamplingPolicy(shots_per_configuration=args.shots,
                                    seed=args.seed)
            records = [sample_record(rec, policy) for rec in records]
        chi_est = reconstruct(records, readouts, code.error_basis)
        residuals = []
        for cfg, rec in zip(configs, records):
            worst = max(abs(rec.value(code.syndrome_table[x])
                            - xi_predicted(chi_est, cfg, x))
                        for x in range(code.d2))
            residuals.append({"configuration": cfg.index, "kind": cfg.kind,
                              "max_residual": worst})
    except ValueError as exc:
        raise _DomainError(str(exc))

    labels = [code.error_basis.label(i) for i in range(code.d2)]
    chi_json = [[[float(v.real), float(v.imag)] for v in row]
                for row in chi_est.entries]
    report = {
        "code": args.code,
        "channel": channel.label,
        "mode": args.mode,
        "shots": args.shots if args.mode == "sampled" else None,
        "seed": args.seed if args.mode == "sampled" else None,
        "basis": labels,
        "chi": chi_json,
        "validity": validity_report(chi_est),
        "residuals": residuals,
    }
    lines = [
        "channel: %s on %s (%s mode)" % (channel.label, args.code, args.mode),
        "chi diagonal: " + ", ".join(
            "%s=%.6g" % (lab, chi_est.entries[i, i].real)
            for i, lab in enumerate(labels)),
        "validity: trace %.6g, min eigenvalue %.3g, hermiticity defect %.3g"
        % (report["validity"]["trace"], report["validity"]["min_eigenvalue"],
           report["validity"]["hermiticity_defect"]),
    ]
    if have_oracle:
        oracle = chi_from_kraus(channel, code.error_basis)
        err = compare(chi_est, oracle)
        report["error_report"] = {
            "frobenius_error": err.frobenius_error,
            "max_entry_error": err.max_entry_error,
            "trace_defect": err.trace_defect,
            "min_eigenvalue": err.min_eigenvalue,
        }
        lines.append("error vs oracle: frobenius %.3g, max entry %.3g"
                     % (err.frobenius_error, err.max_entry_error))
    _emit(report, lines, args)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syntomo",
        description="Characterize quantum channels from stabilizer-code "
                    "syndrome statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--code", required=True,
                       help="builtin name (code3, code5) or code JSON file")
        p.add_argument("--out", help="write the report to this file")
        p.add_argument("--format", choices=("json", "text"), default="text")

    p_validate = sub.add_parser("validate", help="check a code definition")
    common(p_validate)
    p_validate.set_defaults(func=_cmd_validate)

    p_plan = sub.add_parser("plan", help="emit the measurement plan")
    common(p_plan)
    p_plan.set_defaults(func=_cmd_plan)

    p_char = sub.add_parser("characterize", help="reconstruct the process matrix")
    common(p_char)
    p_char.add_argument("--channel", required=True,
                        help="builtin channel name or channel JSON file")
    p_char.add_argument("--params", default="",
                        help="comma-separated builtin-channel parameters")
    p_char.add_argument("--beta", default="",
                        help="comma-separated logical amplitudes "
                             "(default: uniform superposition)")
    p_char.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p_char.add_argument("--shots", type=int, default=100000,
                        help="shots per configuration in sampled mode")
    p_char.add_argument("--seed", type=int, default=0,
                        help="sampling seed in sampled mode")
    p_char.set_defaults(func=_cmd_characterize)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except _DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
