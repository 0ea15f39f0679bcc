"""Command-line front end.

Every command reads one JSON file and prints a JSON report.  Exit status is
0 on success, 1 when the input is well formed but fails validation or a cap,
and 2 when the input cannot be parsed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from . import degen, moduli, reps
from .abgroup import GroupError
from .admissible import (AdmissibleError, check_admissible, check_marking, check_wcomplex,
                         is_multiplicity_free, orbit_complex, orbit_count)
from .degen import DegenerationError, close_marks
from .io import (InputError, dumps, parse_complex, parse_heights, parse_point, parse_points,
                 parse_polytope, parse_rational, parse_root_system, require)
from .polytope import PolytopeError
from .rootsys import DEFAULT_WEYL_CAP, RootSystemError

COMMANDS = ("check", "aut", "pair-groups", "cohomology", "degenerate", "coherent",
            "fiber-polytope", "strata", "hilbert", "rep")
REP_ACTIONS = ("dim", "char", "tensor", "lemma")
DEFAULT_CAPS = {"weyl": DEFAULT_WEYL_CAP, "strata": moduli.DEFAULT_STRATA_CAP,
                "hilbert": reps.DEFAULT_HILBERT_CAP}
VALIDATION_ERRORS = (AdmissibleError, DegenerationError, moduli.ModuliError, reps.RepError,
                     RootSystemError, PolytopeError, GroupError)


@dataclass
class JobSpec:
    command: str
    input_path: str
    options: dict = field(default_factory=dict)


class ValidationFailure(Exception):
    def __init__(self, report: dict):
        super().__init__("validation failed")
        self.report = report


def caps_from_env(env: str | None) -> dict:
    """Parse REDVAR_CAPS, e.g. "weyl=2000,strata=500"."""
    caps = dict(DEFAULT_CAPS)
    if not env:
        return caps
    for item in env.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in caps or not value.strip().isdigit():
            raise InputError(f"bad REDVAR_CAPS entry {item!r}")
        caps[key] = int(value)
    return caps


def _marks(doc: dict, rs) -> frozenset:
    return close_marks(rs, parse_points(require(doc, "marks")))


def _single(doc: dict):
    return parse_polytope(doc["polytope"]) if "polytope" in doc and "cells" not in doc else None


# -- command handlers --------------------------------------------------------

def cmd_check(doc, rs, opts):
    delta = _single(doc)
    if delta is not None:
        report = check_admissible(rs, delta).to_json()
        if report["ok"] and "marks" in doc:
            check_marking(orbit_complex(rs, [delta]), _marks(doc, rs))
    else:
        cx = parse_complex(doc, rs, closure=False)
        rep = check_wcomplex(cx)
        report = rep.to_json()
        if rep.ok:
            report["multiplicity_free"] = is_multiplicity_free(cx)
            report["orbit_count"] = orbit_count(cx)
            if "marks" in doc:
                check_marking(cx, _marks(doc, rs))
    if not report["ok"]:
        raise ValidationFailure(report)
    return report


def _require_valid(cx):
    rep = check_wcomplex(cx)
    if not rep.ok:
        raise ValidationFailure(rep.to_json())


def cmd_aut(doc, rs, opts):
    delta = _single(doc)
    if delta is not None:
        return {"K_delta": moduli.k_delta(rs, delta),
                "aut_characters": moduli.aut_character_group(rs, delta)}
    cx = parse_complex(doc, rs)
    _require_valid(cx)
    h0, h1 = moduli.aut_complex_cohomology(cx)
    return {"H0": h0, "H1": h1}


def cmd_pair_groups(doc, rs, opts):
    delta = _single(doc)
    if delta is not None:
        seq = moduli.pair_sequence(rs, delta, _marks(doc, rs))
        bad = seq.audit()
        if bad:
            raise ValidationFailure({"ok": False, "failures": [{"code": "audit", "detail": b} for b in bad]})
        return seq
    cx = parse_complex(doc, rs)
    _require_valid(cx)
    T = check_marking(cx, _marks(doc, rs))
    aut, iso = moduli.pair_moduli_cohomology(T)
    return {"aut_chars": aut, "iso_chars": iso}


def cmd_cohomology(doc, rs, opts):
    cx = parse_complex(doc, rs)
    _require_valid(cx)
    h0, h1 = moduli.aut_complex_cohomology(cx)
    out = {"H0": h0, "H1": h1}
    if "marks" in doc:
        aut, iso = moduli.pair_moduli_cohomology(check_marking(cx, _marks(doc, rs)))
        out.update(aut_chars=aut, iso_chars=iso)
    return out


def cmd_degenerate(doc, rs, opts):
    delta = _single(doc)
    if delta is not None:
        return degen.degenerate(rs, delta, _marks(doc, rs), parse_heights(require(doc, "heights")))
    cx = parse_complex(doc, rs)
    _require_valid(cx)
    T = check_marking(cx, _marks(doc, rs))
    raw = require(doc, "cell_heights")
    if not isinstance(raw, dict):
        raise InputError("cell_heights must map cell ids to height lists")
    heights = {cid: parse_heights(v) for cid, v in raw.items()}
    return degen.degenerate_complex(T, heights, _gamma(doc.get("gamma") or {}, cx))


def _gamma(raw, cx) -> dict:
    """gamma keyed by face id, or a list of {"face": vertices, "gamma": values}."""
    if isinstance(raw, dict):
        return {fid: [parse_rational(x) for x in v] for fid, v in raw.items()}
    if not isinstance(raw, list):
        raise InputError("gamma must be an object or a list")
    by_key = {cx.cells[c].key: c for c in cx.ids}
    out = {}
    for entry in raw:
        key = parse_polytope({"vertices": require(entry, "face")}).key
        if key not in by_key:
            raise InputError(f"gamma face {entry['face']} is not a cell")
        out[by_key[key]] = [parse_rational(x) for x in require(entry, "gamma")]
    return out


def cmd_coherent(doc, rs, opts):
    delta = parse_polytope(require(doc, "polytope"))
    cand = require(doc, "candidate")
    cells = [parse_points(require(c, "vertices")) if isinstance(c, dict) else parse_points(c)
             for c in require(cand, "cells")]
    marks = close_marks(rs, parse_points(require(cand, "marks")))
    full = parse_points(doc["marks"]) if "marks" in doc else None
    res = degen.is_coherent(rs, delta, (cells, marks), full)
    if not res.coherent:
        raise ValidationFailure({"ok": False, **res.to_json()})
    return res


def cmd_fiber_polytope(doc, rs, opts):
    delta = _single(doc)
    if delta is not None:
        return moduli.fiber_polytope(rs, delta, _marks(doc, rs))
    cx = parse_complex(doc, rs)
    _require_valid(cx)
    return moduli.global_fiber_polytope(check_marking(cx, _marks(doc, rs)))


def cmd_strata(doc, rs, opts):
    cx = parse_complex(doc, rs)
    _require_valid(cx)
    return moduli.enumerate_strata(rs, cx, parse_points(require(doc, "marks")), opts["caps"]["strata"])


def cmd_hilbert(doc, rs, opts):
    n = opts.get("n")
    if n is None:
        n = doc.get("n", 2)
    cx = parse_complex(doc, rs)
    cells = [cx.cells[c] for c in cx.maximal_cells()]
    cap = opts["caps"]["hilbert"]
    return {"H": [reps.hilbert_function(rs, cells, k, cap) for k in range(n + 1)]}


def cmd_rep(doc, rs, opts):
    action = opts.get("action")
    lam = parse_point(require(doc, "lambda"))
    if action == "dim":
        return {"dim": reps.weyl_dim(rs, lam)}
    if action == "char":
        return reps.character(rs, lam)
    if action == "tensor":
        mu = parse_point(require(doc, "mu"))
        return {"decomposition": [{"weight": list(nu), "multiplicity": m}
                                  for nu, m in reps.tensor_decompose(rs, lam, mu)]}
    if action == "lemma":
        face = parse_points(require(doc, "face"))
        return reps.verify_tensor_power_lemma(rs, lam, face, int(doc.get("n_max", 9)))
    raise InputError(f"unknown rep action {action!r}")


HANDLERS: dict[str, Callable] = {
    "check": cmd_check, "aut": cmd_aut, "pair-groups": cmd_pair_groups,
    "cohomology": cmd_cohomology, "degenerate": cmd_degenerate, "coherent": cmd_coherent,
    "fiber-polytope": cmd_fiber_polytope, "strata": cmd_strata, "hilbert": cmd_hilbert,
    "rep": cmd_rep,
}


# -- driver ------------------------------------------------------------------

def _error(code: str, message: str) -> dict:
    return {"ok": False, "errors": [{"code": code, "message": message}]}


def run(spec: JobSpec) -> tuple[int, Any]:
    """Execute a job and return (exit code, report)."""
    if spec.command not in HANDLERS:
        return 2, _error("unknown_command", spec.command)
    try:
        caps = caps_from_env(os.environ.get("REDVAR_CAPS"))
        caps.update({k: v for k, v in spec.options.get("caps", {}).items() if v is not None})
        opts = dict(spec.options, caps=caps)
        with open(spec.input_path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise InputError("top-level JSON value must be an object")
        rs = parse_root_system(doc, caps["weyl"])
        result = HANDLERS[spec.command](doc, rs, opts)
    except (OSError, json.JSONDecodeError, InputError) as exc:
        return 2, _error("malformed_input", str(exc))
    except ValidationFailure as exc:
        return 1, exc.report
    except VALIDATION_ERRORS as exc:
        return 1, _error(type(exc).__name__, str(exc))
    svg_path = spec.options.get("svg")
    if svg_path:
        from .svg import render
        with open(svg_path, "w", encoding="utf-8") as fh:
            fh.write(render(result))
    return 0, result


def _table(report: Any) -> str:
    data = json.loads(dumps(report))
    if not isinstance(data, dict):
        return json.dumps(data)
    width = max((len(k) for k in data), default=0)
    return "\n".join(f"{k:<{width}}  {json.dumps(v, sort_keys=True)}" for k, v in sorted(data.items()))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="redvar", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "rep":
            p.add_argument("action", choices=REP_ACTIONS)
        p.add_argument("input", help="JSON input file")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--seed", type=int, default=None, help="accepted for harness use; unused")
        p.add_argument("--svg", default=None, help="write a picture of a 1-D or 2-D result")
        p.add_argument("--weyl-cap", type=int, default=None)
        p.add_argument("--cap", type=int, default=None, help="strata enumeration cap")
        p.add_argument("--hilbert-cap", type=int, default=None)
        if name == "hilbert":
            p.add_argument("--n", type=int, default=None, help="largest degree")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    options = {"caps": {"weyl": args.weyl_cap, "strata": args.cap, "hilbert": args.hilbert_cap},
               "svg": args.svg, "seed": args.seed, "n": getattr(args, "n", None),
               "action": getattr(args, "action", None)}
    code, report = run(JobSpec(args.command, args.input, options))
    text = _table(report) if args.format == "table" else dumps(report)
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
