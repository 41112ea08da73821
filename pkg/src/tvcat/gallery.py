"""The bundled example suite: named (quantale, monad) worlds with sample
structures and committed expected verdicts.

Verdicts live in data/gallery.json, not in code; the runner recomputes every
check deterministically and compares.  A mismatch between computed and
committed verdicts is a regression and fails the run.
"""

from __future__ import annotations

import json
import os

from .categories import (TVStructure, check_category, discrete,
                         find_representation, from_order, separated,
                         structure_from_dict, v_hom_xi)
from .exponential import check_exponentiability
from .limits import GuardError
from .monads import check_monad_laws, monad_by_name
from .quantale import check_condition_inj, check_quantale, quantale_by_name
from .theory import LaxExtension, check_assumptions_bundle
from .presheaf import (NotSeparated, build_presheaf_category, certify_injective,
                       check_yoneda, find_sup)

DATA_PATH = os.path.join(os.path.dirname(__file__), "data", "gallery.json")


def load_gallery(path: str | None = None) -> list:
    with open(path or DATA_PATH, "r", encoding="utf-8") as fh:
        return json.load(fh)["entries"]


def _build_structure(ext: LaxExtension, spec: dict) -> TVStructure:
    kind = spec.get("kind", "explicit")
    if kind == "v_hom_xi":
        return v_hom_xi(ext)
    if kind == "discrete":
        return discrete(ext, tuple(spec["carrier"]))
    if kind == "order":
        return from_order(ext, tuple(spec["carrier"]),
                          {tuple(p) for p in spec.get("pairs", [])})
    return structure_from_dict({
        "quantale": ext.quantale.to_dict(),
        "monad": ext.monad.describe(),
        "carrier": spec["carrier"],
        "structure": spec.get("structure", {}),
    })


def run_entry(entry: dict, seed: int = 0) -> dict:
    q = quantale_by_name(entry["quantale"])
    monad = monad_by_name(entry["monad"])
    ext = LaxExtension(monad, q)
    out: dict = {"name": entry["name"]}
    out["quantale"] = check_quantale(q).status
    out["condition_inj"] = check_condition_inj(q).status
    out["monad_laws"] = check_monad_laws(monad, ("x0", "x1"), q).status
    if entry.get("assumptions", True):
        bundle = check_assumptions_bundle(
            ext, seed=seed, exhaustive=entry.get("exhaustive"))
        out["assumptions"] = bundle.details.get("verdicts")
    structures = {}
    for sp in entry.get("structures", []):
        s = _build_structure(ext, sp)
        verdict: dict = {}
        verdict["category"] = check_category(s).status
        verdict["separated"] = separated(s)
        verdict["exponentiability"] = check_exponentiability(s).status
        if sp.get("presheaf", True):
            try:
                px = build_presheaf_category(s)
                verdict["presheaf_size"] = len(px.structure.carrier)
                verdict["yoneda"] = check_yoneda(s, px).status
                verdict["px_separated"] = separated(px.structure)
                if verdict["separated"]:
                    verdict["injective"] = certify_injective(s, px).status
                    if verdict["injective"] == "pass":
                        rep = find_representation(s)
                        verdict["representable"] = rep is not None
                try:
                    verdict["px_injective"] = certify_injective(
                        px.structure).status
                except GuardError:
                    verdict["px_injective"] = "skipped-guard"
            except (GuardError, NotSeparated) as exc:
                verdict["presheaf_skipped"] = type(exc).__name__
        structures[sp["name"]] = verdict
    if structures:
        out["structures"] = structures
    return out


def run_gallery(path: str | None = None, seed: int = 0):
    """Run every entry; returns (all_match, results) where each result also
    records the diff against the committed verdicts."""
    entries = load_gallery(path)
    results = []
    all_match = True
    for entry in entries:
        got = run_entry(entry, seed=seed)
        expected = entry.get("expected", {})
        diff = _diff(expected, got)
        record = {"computed": got, "matches": not diff}
        if diff:
            record["diff"] = diff
            all_match = False
        results.append(record)
    return all_match, results


def _diff(expected, got, prefix=""):
    """Flat list of paths where committed and computed verdicts disagree;
    only keys present in the committed side are compared."""
    out = []
    if isinstance(expected, dict):
        for key, val in expected.items():
            where = "%s.%s" % (prefix, key) if prefix else str(key)
            if not isinstance(got, dict) or key not in got:
                out.append({"path": where, "expected": val, "computed": None})
            else:
                out.extend(_diff(val, got[key], where))
        return out
    if expected != got:
        out.append({"path": prefix, "expected": expected, "computed": got})
    return out
