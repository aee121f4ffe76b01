import json

import pytest

from efl.auxgraph import build_aux
from efl.coloring import (
    ColoringRejected,
    brute_force_coloring,
    coloring_from_json,
    coloring_from_point,
    coloring_to_json,
    extend_coloring,
    nonvanishing_search,
    verify_coloring,
)
from efl.experiments import first_nonzero, n3_representatives
from efl.families import eval_P
from efl.hypergraph import HypergraphError, generate, parse_hypergraph, strip_degree_one


def test_verify_coloring(H3):
    good = {"a": 0, "b": 1, "c": 2, "d": 2, "e": 1, "f": 0}
    assert verify_coloring(H3, good)
    assert not verify_coloring(H3, dict(good, d=0))
    with pytest.raises(ValueError):
        verify_coloring(H3, {"a": 0})


def test_brute_force_first_coloring(H3):
    assert brute_force_coloring(H3, 3) == {"a": 0, "b": 1, "c": 2, "d": 2, "e": 1, "f": 0}
    assert brute_force_coloring(H3, 2) is None
    assert brute_force_coloring(parse_hypergraph("a"), 1) == {"a": 0}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_brute_force_colors_standard_instances(n):
    for seed in range(10):
        H = generate("random", n=n, seed=seed)
        c = brute_force_coloring(H, n)
        assert c is not None and verify_coloring(H, c)
    H = generate("near_pencil", n=n)
    assert verify_coloring(H, brute_force_coloring(H, n))


def test_fano_needs_more_than_three_colors():
    # the seven lines of the Fano plane, unpadded
    fano = parse_hypergraph("0 1 3\n1 2 4\n2 3 5\n3 4 6\n4 5 0\n5 6 1\n6 0 2")
    assert brute_force_coloring(fano, 3) is None
    assert brute_force_coloring(fano, 7) is not None


def test_decode_good_point(H3):
    aux = build_aux(H3, kind="G2")
    pt = [[0, 1, 2], [0, 2, 1], [1, 2, 0]]
    c = coloring_from_point(aux, pt, "P2", H3)
    assert c == {"a": 0, "b": 1, "c": 2, "d": 2, "e": 1, "f": 0}
    assert coloring_from_point(aux, pt, "P2")["0"] == 0


def test_decode_rejections_name_the_property(H3):
    aux = build_aux(H3, kind="G1")
    with pytest.raises(ColoringRejected) as exc:
        coloring_from_point(aux, [[0, 0, 1], [0, 2, 1], [1, 2, 0]], "P1")
    assert exc.value.prop == "P1"
    with pytest.raises(ColoringRejected) as exc:
        coloring_from_point(aux, [[0, 1, 2], [1, 2, 0], [1, 2, 0]], "P1")
    assert exc.value.prop == "P2"
    assert "(P2)" in str(exc.value)


def test_nonvanishing_search_tri3(H3):
    for kind in ("G1", "G2"):
        aux = build_aux(H3, kind=kind)
        pt = nonvanishing_search(aux, kind)
        assert pt is not None
        assert eval_P(kind, aux, pt) != 0
        assert verify_coloring(H3, coloring_from_point(aux, pt, kind, H3))
    aux = build_aux(H3, kind="G2")
    assert coloring_from_point(aux, nonvanishing_search(aux, "G2"), "G2", H3) == {
        "a": 0, "b": 1, "c": 2, "d": 2, "e": 1, "f": 0,
    }


def test_nonzero_coefficient_implies_decodable_point():
    for inst in n3_representatives():
        for kind in ("G1", "G2"):
            aux = build_aux(inst.H, kind=kind)
            target, value, _, _ = first_nonzero(aux, kind)
            if target is None:
                continue
            assert value != 0
            pt = nonvanishing_search(aux, kind, target)
            assert verify_coloring(inst.H, coloring_from_point(aux, pt, kind, inst.H))


def test_extend_coloring(H3):
    derived, removed = strip_degree_one(H3)
    assert removed == ["c", "e", "f"]
    c = extend_coloring(H3, derived, {"a": 0, "b": 1, "d": 2}, 3)
    assert c == {"a": 0, "b": 1, "c": 2, "d": 2, "e": 1, "f": 0}
    assert verify_coloring(H3, c)
    with pytest.raises(ValueError):
        extend_coloring(H3, derived, {"a": 0, "b": 0, "d": 2}, 3)
    with pytest.raises(ValueError):
        extend_coloring(H3, derived, {"a": 0, "b": 1, "d": 5}, 3)
    with pytest.raises(HypergraphError):
        extend_coloring(H3, derived, {"a": 0, "b": 1, "d": 2}, 2)


def test_coloring_json_round_trip():
    c = {"a": 0, "b": 2}
    data = coloring_to_json(c, True)
    assert data == {"coloring": {"a": "0", "b": "2"}, "verified": True}
    assert coloring_from_json(json.dumps(data)) == c
