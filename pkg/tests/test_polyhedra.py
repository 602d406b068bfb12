from fractions import Fraction as Q

from padictrop.polyhedra import Polyhedron, analyze, fm_feasible


def test_fm_feasible_basic():
    # 0 <= z <= 1
    assert fm_feasible([((1,), 0, False), ((-1,), -1, False)])
    # 0 < z < 0
    assert not fm_feasible([((1,), 0, True), ((-1,), 0, True)])
    # 0 <= z <= 0 is a point
    assert fm_feasible([((1,), 0, False), ((-1,), 0, False)])
    assert fm_feasible([])


def test_fm_two_dimensions():
    # x + y >= 3, x <= 1, y <= 1
    rows = [((1, 1), 3, False), ((-1, 0), -1, False), ((0, -1), -1, False)]
    assert not fm_feasible(rows)
    rows[0] = ((1, 1), 2, False)
    assert fm_feasible(rows)
    rows[0] = ((1, 1), 2, True)
    assert not fm_feasible(rows)


def test_analyze_dimensions():
    P = Polyhedron(2)
    assert analyze(P).dim == 2
    line = P.meet(equalities=[((1, -1), 0)])
    assert analyze(line).dim == 1
    pt = line.meet(equalities=[((1, 1), 4)])
    an = analyze(pt)
    assert an.dim == 0 and an.point == (2, 2)
    assert analyze(pt.meet(inequalities=[((1, 0), 3)])).dim == -1
    inconsistent = P.meet(equalities=[((1, 0), 0), ((2, 0), 1)])
    assert analyze(inconsistent).dim == -1


def test_implicit_equalities_detected():
    # x >= 1/2 and x <= 1/2 inside the plane: a vertical line
    P = Polyhedron(2, (), (((1, 0), Q(1, 2)), ((-1, 0), Q(-1, 2))))
    an = analyze(P)
    assert an.dim == 1 and len(an.polyhedron.equalities) == 1
    # add y >= 0, y <= 0: a point
    an = analyze(P.meet(inequalities=[((0, 1), 0), ((0, -1), 0)]))
    assert an.dim == 0 and an.point == (Q(1, 2), 0)


def test_three_dimensional_cone():
    P = Polyhedron(3, (), (((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((-1, -1, -1), -1)))
    assert analyze(P).dim == 3
    assert analyze(P.meet(inequalities=[((-1, -1, -1), 0)])).point == (0, 0, 0)


def test_to_json():
    P = Polyhedron(2, (((1, 0), Q(1, 2)),), ())
    assert P.to_json() == {"n": 2, "equalities": [{"normal": ["1", "0"], "rhs": "1/2"}], "inequalities": []}
