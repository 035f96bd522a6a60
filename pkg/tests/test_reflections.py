"""Root systems, affine reflections, folding, and group enumeration."""

from fractions import Fraction as F

import pytest

from waveletsets.geometry import AffineIsometry, Mat, Vec
from waveletsets.reflections import (
    RootSystem,
    affine_reflect,
    affine_reflection,
    box_figure,
    centered_square_figure,
    coroot,
    enumerate_group,
    fold,
    klein_four_root_system,
    reflect_root,
    right_triangle_figure,
    subdivide,
    unit_square_figure,
)


def test_klein_four_group_order():
    w = klein_four_root_system().weyl_group()
    assert len(w) == 4
    rho1 = Mat([[-1, 0], [0, 1]])
    rho2 = Mat([[1, 0], [0, -1]])
    assert rho1.matmul(rho2).matmul(rho1.matmul(rho2)) == Mat.identity(2)


def test_invalid_root_systems_rejected():
    with pytest.raises(ValueError):
        RootSystem([(1, 0), (-1, 0)])  # does not span
    with pytest.raises(ValueError):
        RootSystem([(1, 0), (0, 1)])  # not symmetric
    with pytest.raises(ValueError):
        RootSystem([(1, 0), (-1, 0), (2, 0), (-2, 0), (0, 1), (0, -1)])  # non-reduced


def test_parallel_affine_reflections_compose_to_lattice_translation():
    # two reflections in parallel mirrors <x, r> = k and <x, r> = l translate
    # by (k - l) times twice the coroot, symbolically over the rationals
    r = (1, 0)
    for k, l in [(0, 1), (2, -3), (5, 5)]:
        comp = affine_reflection(r, k).compose(affine_reflection(r, l))
        assert comp.linear == Mat.identity(2)
        assert comp.shift == Vec(coroot(r)).scale(k - l)


def test_perpendicular_affine_reflections_compose_to_point_reflection():
    comp = affine_reflection((1, 0), 2).compose(affine_reflection((0, 1), 3))
    assert comp.linear == Mat([[-1, 0], [0, -1]])
    assert comp.shift == Vec(coroot((1, 0))).scale(2) + Vec(coroot((0, 1))).scale(3)


def test_affine_reflect_fixes_its_mirror():
    assert affine_reflect((1, 1), F(1, 2), (F(1, 4), F(1, 4))) == (F(1, 4), F(1, 4))
    assert reflect_root((0, 1), (3, 5)) == (3, -5)


def test_fold_lands_inside_and_isometry_inverts():
    fig = centered_square_figure()
    x = Vec((F(17, 5), F(-23, 7)))
    res = fold(fig, x)
    assert fig.contains(res.point)
    assert res.isometry.apply(res.point) == x


def test_fold_fixes_interior_points():
    fig = unit_square_figure()
    res = fold(fig, (F(1, 3), F(2, 5)))
    assert res.point == (F(1, 3), F(2, 5)) and res.word == []


def test_enumerate_group_counts():
    fig = unit_square_figure()
    only_cell = enumerate_group(fig, [(0, 1), (0, 1)])
    assert len(only_cell) == 1 and only_cell[0].isometry.is_identity()
    block = enumerate_group(fig, [(-1, 2), (-1, 2)])
    assert len(block) == 9
    keys = {c.isometry.key() for c in block}
    assert len(keys) == 9


def test_subdivision_tiles_the_figure():
    fig = unit_square_figure()
    maps = subdivide(fig, 2)
    assert len(maps) == 4
    corners = [Vec((F(a), F(b))) for a in (0, 1) for b in (0, 1)]
    cells = [frozenset(u.apply(v) for v in corners) for u in maps]
    assert len(set(cells)) == 4
    # the first map is the pure scaling
    assert maps[0].apply((1, 1)) == (F(1, 2), F(1, 2))
    # every half-integer grid vertex of the figure is hit
    hit = {p for c in cells for p in c}
    assert Vec((F(1, 2), F(1, 2))) in hit and Vec((F(1), F(1))) in hit


def test_triangle_figure_folds_its_mirror_image():
    fig = right_triangle_figure()
    res = fold(fig, (F(3, 4), F(3, 4)))  # across the hypotenuse
    assert fig.contains(res.point)
    assert res.isometry.apply(res.point) == (F(3, 4), F(3, 4))


def test_box_figure_cut_spacing_generators():
    fig = box_figure("strip", [(0, 2)], cut_spacings=[1])
    assert len(fig.hyperplanes) == 3
