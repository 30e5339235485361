"""JSON config schema, scenario (de)serialization and report encoding.

Rationals always travel as ``"num/den"`` strings so that exact results survive
a round trip; elements use the text encodings of their semigroup.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Any

import jsonschema

from .bounds import BoundParams, EvaluationReport, PriorBoundReport
from .distributions import FiniteDistribution, Scenario, make_distribution
from .errors import ConfigError
from .montecarlo import ArcStep, GaussianStep, Interval, McReport
from .proof import Check, DecompositionReport
from .semigroup import AxiomReport, make_semigroup

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"},
    ]
}
_REAL = {"anyOf": [{"type": "number"}, _RATIONAL]}

_LAW = {
    "oneOf": [
        {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": [{"type": ["string", "integer", "number"]}, _RATIONAL],
            },
        },
        {
            "type": "object",
            "required": ["gaussian"],
            "additionalProperties": False,
            "properties": {
                "gaussian": {
                    "type": "object",
                    "required": ["mean", "scale"],
                    "additionalProperties": False,
                    "properties": {"mean": {"type": "array", "items": {"type": "number"}}, "scale": {"type": "number"}},
                }
            },
        },
        {
            "type": "object",
            "required": ["arc"],
            "additionalProperties": False,
            "properties": {
                "arc": {
                    "type": "object",
                    "required": ["half_width"],
                    "additionalProperties": False,
                    "properties": {"half_width": {"type": "number"}, "center": {"type": "number"}},
                }
            },
        },
    ]
}

CONFIG_SCHEMA: dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "mode": {"enum": ["axioms", "evaluate", "proof-check", "mc", "fuzz", "sweep"]},
        "semigroup": {"type": "string"},
        "laws": {"type": "array", "minItems": 1, "items": _LAW},
        "n": {"type": "integer", "minimum": 1},
        "z0": {"type": ["string", "integer", "number"]},
        "z1": {"type": ["string", "integer", "number"]},
        "params": {
            "type": "object",
            "required": ["n_vec", "t_vec", "s"],
            "additionalProperties": False,
            "properties": {
                "n_vec": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
                "t_vec": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"oneOf": [_REAL, {"type": "array", "minItems": 1, "items": _REAL}]},
                },
                "s": {"oneOf": [_REAL, {"type": "array", "minItems": 1, "items": _REAL}]},
            },
        },
        "variant": {"enum": ["max", "order", "both", "max-increment", "order-statistic"]},
        "budget": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "samples": {"type": "integer", "minimum": 100},
        "level": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "trials": {"type": "integer", "minimum": 1},
        "fuzz": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "count": {"type": "integer"},
                "max_n": {"type": "integer", "minimum": 1},
                "max_support": {"type": "integer", "minimum": 1},
                "max_k": {"type": "integer", "minimum": 1},
            },
        },
        "out": {"type": "string"},
        "format": {"enum": ["json", "csv"]},
    },
}


def validate_config(cfg: dict) -> None:
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise ConfigError(f"config invalid at {path}: {exc.message}") from exc


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(re.sub(r"\s+", "", x))
    return Fraction(x)


def _parse_law(sg, raw):
    if isinstance(raw, dict) and "gaussian" in raw:
        g = raw["gaussian"]
        return GaussianStep(tuple(g["mean"]), float(g["scale"]))
    if isinstance(raw, dict) and "arc" in raw:
        a = raw["arc"]
        return ArcStep(float(a["half_width"]), float(a.get("center", 0.0)))
    return make_distribution([(sg.parse(el), parse_rational(p)) for el, p in raw])


def scenario_from_config(cfg: dict) -> Scenario:
    for key in ("semigroup", "laws", "z0"):
        if key not in cfg:
            raise ConfigError(f"config needs '{key}'")
    try:
        sg = make_semigroup(cfg["semigroup"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    laws = [_parse_law(sg, raw) for raw in cfg["laws"]]
    if "n" in cfg:
        if len(laws) == 1:
            laws = laws * cfg["n"]
        elif len(laws) != cfg["n"]:
            raise ConfigError(f"n={cfg['n']} but {len(laws)} laws given")
    z0 = sg.parse(cfg["z0"])
    z1 = sg.parse(cfg.get("z1", cfg["z0"]))
    return Scenario(sg, tuple(laws), z0, z1)


def law_to_config(sg, law) -> Any:
    if isinstance(law, FiniteDistribution):
        return [[sg.format(e), frac_str(p)] for e, p in law.support]
    if isinstance(law, GaussianStep):
        return {"gaussian": {"mean": list(law.mean), "scale": law.scale}}
    if isinstance(law, ArcStep):
        return {"arc": {"half_width": law.half_width, "center": law.center}}
    raise TypeError(type(law).__name__)


def scenario_to_config(sc: Scenario) -> dict:
    return {
        "semigroup": sc.sg.key,
        "laws": [law_to_config(sc.sg, law) for law in sc.laws],
        "z0": sc.sg.format(sc.z0),
        "z1": sc.sg.format(sc.z1),
    }


def params_to_config(p: BoundParams) -> dict:
    return {"n_vec": list(p.n_vec), "t_vec": [frac_str(t) for t in p.t_vec], "s": frac_str(p.s)}


def params_from_config(raw: dict) -> BoundParams:
    try:
        return BoundParams(tuple(raw["n_vec"]), tuple(parse_rational(t) for t in raw["t_vec"]), parse_rational(raw["s"]))
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad params: {exc}") from exc


# ---------------------------------------------------------------------------
# reports


def check_to_dict(c: Check) -> dict:
    out = {"name": c.name, "passed": c.passed, "detail": c.detail}
    if c.witness is not None:
        out["witness"] = c.witness
    return out


def evaluation_to_dict(r: EvaluationReport) -> dict:
    return {
        "params": params_to_config(r.params),
        "variant": r.tail_variant.value,
        "zeta": frac_str(r.zeta),
        "lhs": frac_str(r.lhs),
        "I0": sorted(r.I0),
        "main_term": frac_str(r.main_term),
        "factors": [
            {
                "index": f.index,
                "n_i": f.n_i,
                "t_i": frac_str(f.t_i),
                "tail": frac_str(f.tail),
                "cdf": frac_str(f.cdf),
                "branch": "in-I0" if f.in_I0 else "out-of-I0",
                "factor": frac_str(f.factor),
            }
            for f in r.factors
        ],
        "tail_term": frac_str(r.tail_term),
        "rhs": frac_str(r.rhs),
        "holds": r.holds,
        "slack": frac_str(r.slack),
        "anchor_gap": frac_str(r.anchor_gap),
        "notes": list(r.notes),
    }


def prior_to_dict(r: PriorBoundReport) -> dict:
    return {
        "which": r.which,
        "lhs": frac_str(r.lhs),
        "rhs": "inf" if r.rhs is None else frac_str(r.rhs),
        "holds": r.holds,
        "degenerate": r.degenerate,
        "zero_parameter": r.zero_parameter,
        "checks": dict(r.checks),
    }


def decomposition_to_dict(r: DecompositionReport) -> dict:
    return {
        "params": params_to_config(r.params),
        "lhs": frac_str(r.lhs),
        "order_tail": frac_str(r.order_tail),
        "p_omega1": frac_str(r.p_omega1),
        "blocks": {",".join(map(str, m)): frac_str(v) for m, v in sorted(r.blocks.items())},
        "product_bounds": {
            ",".join(map(str, m)): frac_str(v) for m, v in sorted(r.product_bounds.items()) if v
        },
        "S_tilde": frac_str(r.S_tilde),
        "rhs_main": frac_str(r.rhs_main),
        "anchor_gap_exceeds_t1": r.anchor_gap_exceeds_t1,
        "checks": [check_to_dict(c) for c in r.checks],
    }


def axioms_to_dict(r: AxiomReport) -> dict:
    return {
        "instance": r.instance,
        "trial_count": r.trial_count,
        "seed": r.seed,
        "passed": r.passed,
        "axioms": {
            name: {"passed": a.passed, "checked": a.checked, "witness": list(a.witness) if a.witness else None, "detail": a.detail}
            for name, a in r.results.items()
        },
    }


class F17(float):
    """Float tagged for 17-significant-digit output by :func:`dumps`."""


def _iv(iv: Interval) -> list:
    return [F17(iv.lo), F17(iv.hi)]


def mc_to_dict(r: McReport) -> dict:
    return {
        "generator": r.generator,
        "keying": r.keying,
        "seed": r.seed,
        "n_samples": r.n_samples,
        "level": F17(r.level),
        "variant": r.variant.value,
        "params": params_to_config(r.params),
        "zeta": F17(r.zeta),
        "estimates": {
            k: {"count": e.count, "p_hat": F17(e.p_hat), "ci": _iv(e.ci)} for k, e in r.estimates.items()
        },
        "main_term": {"point": F17(r.main_point), "ci": _iv(r.main_ci)},
        "branches": [{k: (F17(v) if isinstance(v, float) else v) for k, v in b.items()} for b in r.branches],
        "rhs": {k: _iv(v) for k, v in r.rhs.items()},
        "verdicts": dict(r.verdicts),
        "verdict": r.verdict,
    }


_MARK = "\x00F17:"


def _tag_floats(obj):
    if isinstance(obj, F17):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return _MARK + format(x, ".17g")
    if isinstance(obj, dict):
        return {k: _tag_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_tag_floats(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Deterministic JSON; :class:`F17` floats are written with 17 significant digits."""
    text = json.dumps(_tag_floats(obj), indent=2, ensure_ascii=False)
    return re.sub(r'"\\u0000F17:([^"]*)"', r"\1", text) + "\n"
