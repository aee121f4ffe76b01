"""Instance sweeps and the nonzero-coefficient search over tree choices."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import __version__
from .auxgraph import build_aux, enumerate_spanning_tree_choices, expected_total_degree
from .coefficients import (
    coefficient_by_orientations,
    completions,
    enumerate_vc_monomials,
    exponent_to_json,
)
from .families import default_field, poly_kind
from .hypergraph import LinearHypergraph, generate, tri3
from .orientation import complete_orientation, orient_G1, orient_G2_pathlike

# largest n each coefficient engine is allowed to run at
ENGINE_MAX_N = {"expand": 3, "formula": 3, "orient": 4}


class EngineInfeasible(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    family: str
    params: dict
    H: LinearHypergraph

    def descriptor(self) -> dict:
        return {"family": self.family, **self.params}


def n3_representatives() -> list[Instance]:
    """One standard-form instance per intersection pattern at n = 3."""
    patterns = {
        "disjoint": "a b c\nd e f\ng h i\n",
        "one_pair": "a b c\na d e\nf g h\n",
        "path": "a b c\na d e\nb f g\n",
        "triangle": "a b c\na d e\nb d f\n",
        "pencil": "p a b\np c d\np e f\n",
    }
    from .hypergraph import parse_hypergraph

    return [Instance("pattern", {"name": k, "n": 3}, parse_hypergraph(t)) for k, t in patterns.items()]


def random_instances(n: int, samples: int, seed: int = 0) -> list[Instance]:
    return [
        Instance("random", {"n": n, "seed": s}, generate("random", seed=s, n=n))
        for s in range(seed, seed + samples)
    ]


def structured_instances(ns=(3, 4, 5, 6), fano: bool = True) -> list[Instance]:
    out = [Instance("near_pencil", {"n": n}, generate("near_pencil", n=n)) for n in ns]
    if fano:
        out.append(Instance("truncated_projective_plane", {"q": 2, "n": 7}, generate("truncated_projective_plane", q=2)))
    return out


def auto_target(H: LinearHypergraph, kind: str):
    """The full in-degree vector of the constructive orientation, completed by tournaments.

    Returns ``(aux, target)``; G1 uses path-like trees like G2 so both
    kinds share the tree choice.
    """
    if poly_kind(kind) == "P1":
        aux = build_aux(H, kind="G1")
        o = orient_G1(aux)
    else:
        aux, o = orient_G2_pathlike(H)
    full = complete_orientation(aux, o)
    return aux, tuple(x for row in full.in_degrees() for x in row)


def first_nonzero(aux, kind: str, max_targets: int | None = None):
    """First (target, coefficient) with a nonzero coefficient among VC completions.

    Returns ``(target, value, checked, n_vc)``; target is None when none is found.
    """
    field = default_field(kind, aux.n)
    vcs = enumerate_vc_monomials(aux)
    checked = 0
    seen = set()
    for beta in vcs:
        for t in completions(beta, aux.n):
            if t in seen:
                continue
            seen.add(t)
            checked += 1
            value = coefficient_by_orientations(aux, t, field)
            if value != 0:
                return t, value, checked, len(vcs)
            if max_targets is not None and checked >= max_targets:
                return None, None, checked, len(vcs)
    return None, None, checked, len(vcs)


def analyse_instance(inst: Instance, kind: str, tree_limit: int | None = None) -> dict:
    """Search every tree choice (up to ``tree_limit``) for a nonzero bounded maximal coefficient."""
    H = inst.H
    n = H.n
    aux_kind = "G1" if poly_kind(kind) == "P1" else "G2"
    field = default_field(kind, n)
    t0 = time.perf_counter()
    choices = []
    witness = None
    # the constructive orientation is tried first
    try:
        aux, tgt = auto_target(H, kind)
        value = coefficient_by_orientations(aux, tgt, field)
        auto = {"target": exponent_to_json(n, tgt), "coefficient": field.format(value), "nonzero": value != 0}
    except Exception as exc:  # pragma: no cover - recorded, not raised
        auto = {"error": str(exc)}
    for idx, trees in enumerate(enumerate_spanning_tree_choices(H, tree_limit)):
        aux = build_aux(H, trees, aux_kind)
        target, value, checked, n_vc = first_nonzero(aux, kind)
        rec = {"tree_choice": idx, "vc_monomials": n_vc, "checked_targets": checked, "nonzero": target is not None}
        if target is not None:
            rec["witness"] = {"target": exponent_to_json(n, target), "coefficient": field.format(value), "engine": "orient"}
            if witness is None:
                witness = (idx, target, value)
        choices.append(rec)
        if target is not None:
            break
    return {
        "instance": inst.descriptor(),
        "kind": aux_kind.lower(),
        "field": field.tag,
        "total_degree": expected_total_degree(H),
        "auto_target": auto,
        "choices": choices,
        "nonzero_exists": witness is not None,
        "refutation_candidate": witness is None,
        "seconds": round(time.perf_counter() - t0, 4),
        "version": __version__,
    }


def search_nonzero_coefficients(n: int, samples: int, seed: int, kind: str, tree_limit: int | None = None, skip: int = 0, instances=None):
    """Yield one report per sampled instance; flags instances with no nonzero coefficient."""
    if n > ENGINE_MAX_N["orient"]:
        raise EngineInfeasible(f"orientation engine is limited to n <= {ENGINE_MAX_N['orient']}")
    default_field(kind, n)
    if instances is None:
        instances = random_instances(n, samples, seed)
    for inst in instances[skip:]:
        yield analyse_instance(inst, kind, tree_limit)


__all__ = [
    "ENGINE_MAX_N",
    "EngineInfeasible",
    "Instance",
    "n3_representatives",
    "random_instances",
    "structured_instances",
    "auto_target",
    "first_nonzero",
    "analyse_instance",
    "search_nonzero_coefficients",
    "tri3",
]
