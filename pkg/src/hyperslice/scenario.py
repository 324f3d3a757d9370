"""Scenario documents: the (X, phi) pair plus declared invariants,
serialized as one self-contained JSON text file.

Schema (all polynomial entries are expression strings in the polyexpr
grammar, with integer coefficients reduced mod p at instantiation):

    {
      "name": str,
      "field": {"p": int, "e": int},          # optional default field
      "ambient": {"kind": "affine"|"projective", "dim": int,
                  "variables": [str, ...]},
      "equations": [str, ...],
      "inequations": [str, ...],
      "morphism": {"target_dim": int, "components": [str, ...]},
      "r": int,                                # declared dim X
      "codim": int,                            # declared codim phi(X)
      "options": {"mode": "threshold"|"estimator", "M": int,
                  "budget": int|null, "char_blacklist": [int, ...]}
    }

A census re-instantiates the scenario over GF(q) for each requested q;
fields whose characteristic is blacklisted are rejected (scenarios whose
meaning changes with the characteristic declare the blacklist).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .errors import HypersliceError, ScenarioError
from .fields import Field, field_of_order
from .polyexpr import parse_poly
from .variety import Ambient, ConstructibleSet, MorphismToPn

BUNDLED = (
    "quadric-y2x1",
    "blowup-chart",
    "quadric-surface-p3",
    "conic-p2",
    "line-pairs",
)


@dataclass(frozen=True)
class Scenario:
    name: str
    ambient_kind: str
    ambient_dim: int
    variables: Tuple[str, ...]
    equations: Tuple[str, ...]
    inequations: Tuple[str, ...]
    target_dim: int
    components: Tuple[str, ...]
    r: int
    codim: int
    default_field: Optional[Tuple[int, int]] = None
    mode: str = "threshold"
    M: int = 2
    budget: Optional[int] = None
    char_blacklist: Tuple[int, ...] = ()

    # -- (de)serialization ------------------------------------------------

    @classmethod
    def from_dict(cls, doc: Dict) -> "Scenario":
        try:
            ambient = doc["ambient"]
            morphism = doc["morphism"]
            options = doc.get("options", {})
            fld = doc.get("field")
            return cls(
                name=doc["name"],
                ambient_kind=ambient["kind"],
                ambient_dim=int(ambient["dim"]),
                variables=tuple(ambient["variables"]),
                equations=tuple(doc.get("equations", [])),
                inequations=tuple(doc.get("inequations", [])),
                target_dim=int(morphism["target_dim"]),
                components=tuple(morphism["components"]),
                r=int(doc["r"]),
                codim=int(doc["codim"]),
                default_field=(int(fld["p"]), int(fld["e"])) if fld else None,
                mode=options.get("mode", "threshold"),
                M=int(options.get("M", 2)),
                budget=options.get("budget"),
                char_blacklist=tuple(options.get("char_blacklist", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"malformed scenario document: {exc}")

    def to_dict(self) -> Dict:
        doc = {
            "name": self.name,
            "ambient": {
                "kind": self.ambient_kind,
                "dim": self.ambient_dim,
                "variables": list(self.variables),
            },
            "equations": list(self.equations),
            "inequations": list(self.inequations),
            "morphism": {
                "target_dim": self.target_dim,
                "components": list(self.components),
            },
            "r": self.r,
            "codim": self.codim,
            "options": {
                "mode": self.mode,
                "M": self.M,
                "budget": self.budget,
                "char_blacklist": list(self.char_blacklist),
            },
        }
        if self.default_field is not None:
            doc["field"] = {"p": self.default_field[0],
                            "e": self.default_field[1]}
        return doc

    @classmethod
    def load(cls, path: str) -> "Scenario":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path: str):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    # -- instantiation ----------------------------------------------------

    def field_for(self, q: Optional[int], seed: int = 0) -> Field:
        if q is None:
            if self.default_field is None:
                raise ScenarioError(
                    f"scenario {self.name!r} has no default field; pass q")
            p, e = self.default_field
            q = p ** e
        try:
            F = field_of_order(q, seed)
        except HypersliceError as exc:
            raise ScenarioError(f"invalid field order {q}: {exc}")
        if F.char in self.char_blacklist:
            raise ScenarioError(
                f"scenario {self.name!r} excludes characteristic {F.char}")
        return F

    def instantiate(self, q: Optional[int] = None, seed: int = 0,
                    ) -> Tuple[ConstructibleSet, MorphismToPn]:
        """Reduce the integer-coefficient source over GF(q)."""
        F = self.field_for(q, seed)
        ambient = Ambient(self.ambient_kind, self.ambient_dim,
                          self.variables)
        try:
            eqs = tuple(parse_poly(s, self.variables, F)
                        for s in self.equations)
            ineqs = tuple(parse_poly(s, self.variables, F)
                          for s in self.inequations)
            comps = tuple(parse_poly(s, self.variables, F)
                          for s in self.components)
        except HypersliceError as exc:
            raise ScenarioError(
                f"scenario {self.name!r} failed to parse: {exc}")
        X = ConstructibleSet(ambient, eqs, ineqs)
        phi = MorphismToPn(self.target_dim, comps)
        return X, phi


def load_bundled(name: str) -> Scenario:
    """Load one of the scenarios shipped with the package."""
    if name not in BUNDLED:
        raise ScenarioError(
            f"unknown bundled scenario {name!r}; have {', '.join(BUNDLED)}")
    ref = resources.files("hyperslice.scenarios").joinpath(f"{name}.json")
    return Scenario.from_dict(json.loads(ref.read_text(encoding="utf-8")))


def load_scenario(spec: str) -> Scenario:
    """Load a scenario from a file path or a bundled name."""
    if spec in BUNDLED:
        return load_bundled(spec)
    return Scenario.load(spec)
