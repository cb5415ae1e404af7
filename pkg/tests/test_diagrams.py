import pytest

from cptgroups.diagrams import (
    Arrow,
    Diagram,
    Malformed,
    builtin_diagrams,
    check,
    diagram13,
    diagram26,
    diagram29,
    evaluate_path,
    to_dot,
)
from cptgroups.groups import GroupMap, compose, identity_map


def test_builtin_diagrams_pass(atlas):
    for d in builtin_diagrams(atlas):
        rep = check(d)
        assert rep.passed, [o for o in rep.failures()]


def test_diagram_sizes(atlas):
    d13 = diagram13(atlas)
    assert len(d13.nodes) == 10
    assert len(d13.degrees) == 5 and all(k == 2 for _, k in d13.degrees)
    assert len(d13.cells) == 4
    for d in (diagram26(atlas), diagram29(atlas)):
        assert (len(d.nodes), len(d.arrows), len(d.cells)) == (4, 4, 1)


def test_single_node_identity_diagram(atlas):
    q = atlas.groups["Q"]
    d = Diagram("loop", (("Q", q),), (Arrow("id", identity_map(q), "Q", "Q"),), cells=((("id",), ("id",)),))
    assert check(d).passed


def test_failing_cell_reports_first_witness(atlas):
    q = atlas.groups["Q"]
    inv = GroupMap("inv", q, q, q.inverses)  # not a homomorphism, fine for a raw cell
    d = Diagram(
        "bad", (("Q", q),),
        (Arrow("id", identity_map(q), "Q", "Q"), Arrow("inv", inv, "Q", "Q")),
        cells=((("id",), ("inv",)),),
    )
    rep = check(d)
    assert not rep.passed
    assert rep.outcomes[0].witness.startswith("at i:")


def test_wrong_degree_annotation(atlas):
    d = diagram26(atlas)
    bad = Diagram(d.name, d.nodes, d.arrows, d.cells, degrees=(("nu", 4),))
    rep = check(bad)
    assert [o.subject for o in rep.failures()] == ["nu"]


def test_malformed_arrow_placement(atlas):
    d = diagram26(atlas)
    a = d.arrow("nu")
    arrows = (Arrow("nu", a.map, "G_A", "H"),) + d.arrows[1:]
    with pytest.raises(Malformed):
        check(Diagram(d.name, d.nodes, arrows, d.cells))


def test_malformed_cell_endpoints(atlas):
    d = diagram26(atlas)
    with pytest.raises(Malformed):
        check(Diagram(d.name, d.nodes, d.arrows, cells=((("nu",), ("psi",)),)))
    with pytest.raises(Malformed):
        check(Diagram(d.name, d.nodes, d.arrows, cells=((("nu", "psi"), ("psi", "nu_bar")),)))


def test_composition_grouping_is_irrelevant(atlas):
    m = atlas.maps
    f, g, h = m["gamma_map"], m["beta"], m["nu"]
    left = compose(compose(f, g), h)
    right = compose(f, compose(g, h))
    assert left.images == right.images == m["varphi"].images
    d = diagram29(atlas)
    for x in range(atlas.groups["G_psi"].order):
        assert evaluate_path(d, ("varphi", "Phi_double"), x) == evaluate_path(d, ("psi", "varphi_bar"), x)


def test_dot_export_is_stable(atlas):
    text = to_dot(diagram26(atlas))
    assert text == to_dot(diagram26(atlas))
    assert text.count(" -> ") == 4
    assert text.count("[label=") == 8
    assert to_dot(diagram13(atlas)).count("(order ") == 10
