from fractions import Fraction as F

import pytest

from waveletsets.reflections import centered_square_figure
from waveletsets.tiles import (
    CongruenceCertificate,
    ConstructionError,
    DyadicBoxSet,
    GroupSpec,
    PieceMap,
    base_cube,
    build_w1,
    build_w2,
    construct_wavelet_set,
    dilation_congruent,
    intersection_group,
    is_fundamental_domain,
    is_wavelet_set_1d,
    shannon_set,
    spectral_defect,
    square_annulus,
    three_way_check,
    translation_congruent,
    weyl_congruent,
)


# -- set algebra ------------------------------------------------------------


def test_union_idempotent():
    e = shannon_set()
    assert e.union(e).measure == e.measure
    assert e.union(e).equals_ae(e)


def test_lshape_subtract():
    big = DyadicBoxSet.from_box((0, 1), (0, 1))
    small = DyadicBoxSet.from_box((0, F(1, 2)), (0, F(1, 2)))
    l_shape = big.subtract(small)
    assert l_shape.measure == F(3, 4)
    assert l_shape.intersect(small).is_empty
    assert l_shape.union(small).equals_ae(big)


def test_scale_box():
    box = DyadicBoxSet.from_box((1, 2))
    assert box.scale(2).boxes == (((F(2), F(4)),),)
    assert box.scale(2).measure == 2 * box.measure


def test_transform_requires_monomial():
    box = DyadicBoxSet.from_box((0, 1), (0, 1))
    swapped = box.transform([[0, 1], [1, 0]])
    assert swapped.equals_ae(box)
    with pytest.raises(ValueError):
        box.transform([[1, 1], [0, 1]])


def test_json_round_trip():
    e = build_w1(2).wavelet_set
    again = DyadicBoxSet.from_json(e.to_json())
    assert again.equals_ae(e)
    assert again.measure == e.measure


def test_normalization_resolves_overlap():
    overlapping = DyadicBoxSet(1, (((F(0), F(2)),), ((F(1), F(3)),)))
    assert overlapping.measure == 3


# -- congruence checkers ---------------------------------------------------


def test_shannon_translation_pieces():
    cert = translation_congruent(shannon_set(),
                                 DyadicBoxSet.from_box((0, 2)), [2])
    assert cert.residual_measure == 0
    moves = sorted(tuple(g.translation) for _, g in cert.pieces)
    assert moves == [(F(0),), (F(2),)]
    assert cert.verify().ok


def test_identity_translation_certificate():
    c = DyadicBoxSet.from_box((0, 2))
    cert = translation_congruent(c, c, [2])
    assert cert.residual_measure == 0
    assert len(cert.pieces) == 1
    assert cert.pieces[0][1].is_translation()


def test_translation_residual_pi():
    cert = translation_congruent(DyadicBoxSet.from_box((0, 3)),
                                 DyadicBoxSet.from_box((0, 2)), [2])
    assert cert.residual_measure == 1


def test_shannon_dilation_identity():
    cert = dilation_congruent(shannon_set(), shannon_set(), kappa=2)
    assert cert.residual_measure == 0
    assert len(cert.pieces) == 1


def test_dilation_positive_half_pieces():
    source = DyadicBoxSet(1, (((F(1, 2), F(1)),), ((F(2), F(4)),)), normalized=True)
    target = DyadicBoxSet(1, (((F(1), F(2)),), ((F(2), F(4)),)), normalized=True)
    cert = dilation_congruent(source, target, kappa=2)
    assert cert.residual_measure == 0
    assert cert.verify().ok


def test_dilation_rejects_center_in_source():
    with pytest.raises(ValueError):
        dilation_congruent(base_cube(1), shannon_set(), kappa=2)


def test_weyl_identity_and_single_reflection():
    fig = centered_square_figure()
    c = base_cube(2)
    assert weyl_congruent(c, fig).residual_measure == 0
    reflected = c.translate((2, 0))  # the mirror image of C about x = pi
    cert = weyl_congruent(reflected, fig)
    assert cert.residual_measure == 0
    assert len(cert.pieces) == 1


def test_weyl_double_cover_detected():
    doubled = DyadicBoxSet.from_box((-1, 3), (-1, 1))
    cert = weyl_congruent(doubled, centered_square_figure())
    # the folded copies coincide, so half the source cannot be placed
    assert cert.source_residual.measure == 4
    assert cert.target_residual.measure == 0


def test_certificate_verify_detects_tampering():
    cert = translation_congruent(shannon_set(), DyadicBoxSet.from_box((0, 2)), [2])
    bad = CongruenceCertificate(
        source=cert.source,
        target=cert.target,
        pieces=[(p, PieceMap.translate([g.translation[0] + 2])) for p, g in cert.pieces],
        source_residual=cert.source_residual,
        target_residual=cert.target_residual,
    )
    assert not bad.verify().ok


def test_certificate_composition():
    e0 = shannon_set()
    cube = DyadicBoxSet.from_box((0, 2))
    shifted = cube.translate((4,))
    first = translation_congruent(e0, cube, [2])
    second = translation_congruent(cube, shifted, [2])
    composed = first.compose(second)
    assert composed.source.equals_ae(e0)
    assert composed.target.equals_ae(shifted)
    assert composed.residual_measure == 0
    assert composed.verify().ok


# -- fundamental domains -----------------------------------------------------


def test_cube_is_translation_fundamental_domain():
    region = DyadicBoxSet.from_box((-3, 3), (-3, 3))
    rep = is_fundamental_domain(base_cube(2), GroupSpec("translation", spacings=(2, 2)), region)
    assert rep.ok


def test_quarter_cube_defect():
    region = DyadicBoxSet.from_box((-3, 3), (-3, 3))
    rep = is_fundamental_domain(DyadicBoxSet.from_box((0, 1), (0, 1)),
                                GroupSpec("translation", spacings=(2, 2)), region)
    assert not rep.ok
    assert rep.uncovered_measure == F(3, 4) * region.measure


def test_shannon_is_dilation_fundamental_domain():
    region = DyadicBoxSet(1, (((F(-4), F(-1, 4)),), ((F(1, 4), F(4)),)), normalized=True)
    rep = is_fundamental_domain(shannon_set(), GroupSpec("dilation", kappa=F(2)), region)
    assert rep.ok


def test_wavelet_set_criterion():
    report = is_wavelet_set_1d(shannon_set())
    assert report["is_wavelet_set"]
    assert report["translation_residual"] == 0
    assert report["dilation_residual"] == 0
    skew = is_wavelet_set_1d(DyadicBoxSet.from_box((0, 2)))
    assert not skew["is_wavelet_set"]


# -- planar fixtures ----------------------------------------------------------


@pytest.fixture(scope="module")
def w1():
    return build_w1(8)


@pytest.fixture(scope="module")
def w2():
    return build_w2(8)


def test_w1_exact_measure_identity(w1):
    assert w1.tail == F(1, 60) * F(1, 16) ** 8
    assert w1.wavelet_set.measure + 4 * w1.tail == 4
    assert w1.measure_identity_holds


def test_w1_three_way(w1):
    rep = three_way_check(w1.wavelet_set, centered_square_figure(), (2, 2))
    assert rep.within(8 * w1.tail)


def test_w1_quadrant_symmetry(w1):
    a1 = w1.components["A1"]
    assert w1.components["A2"].equals_ae(a1.reflect_axis(0))
    assert w1.components["A4"].equals_ae(a1.reflect_axis(1))
    assert w1.components["A3"].equals_ae(a1.reflect_axis(0).reflect_axis(1))


def test_w1_folded_pieces_cover_doubled_square(w1):
    # the third-quadrant translate piece folds back (reflections about
    # x = -pi and y = -pi) onto the gap left in the doubled core square
    b1 = w1.components["B1"]
    c3 = w1.components["C1"].reflect_axis(0).reflect_axis(1)
    folded = c3.reflect_axis(0, level=F(-1)).reflect_axis(1, level=F(-1))
    two_g0 = w1.components["G0"].scale(2)
    covered = folded.union(b1)
    defect = covered.symmetric_difference_measure(
        two_g0.subtract(w1.components["tail_standin"]))
    assert defect == 0


def test_w2_exact_measure_identity(w2):
    assert w2.tail == F(1, 30) * F(1, 16) ** 8
    assert w2.wavelet_set.measure + 2 * w2.tail == 4


def test_w2_three_way(w2):
    rep = three_way_check(w2.wavelet_set, centered_square_figure(), (2, 2))
    assert rep.within(8 * w2.tail)


def test_w2_reflection_cover(w2):
    # the two mirrored far pieces reflect back into the figure and, together
    # with the two core leftovers, cover the full square up to the tail
    d = w2.components["D"]
    b = w2.components["B"]
    d_minus = d.reflect_axis(0)
    rho2_d = d.reflect_axis(0, level=F(1))
    rho1_dm = d_minus.reflect_axis(0, level=F(-1))
    cover = rho2_d.union(rho1_dm).union(b).union(b.reflect_axis(0))
    defect = base_cube(2).subtract(cover).measure
    assert defect == 2 * w2.tail


def test_c_itself_fails_dilation():
    rep = three_way_check(base_cube(2), centered_square_figure(), (2, 2))
    assert rep.translation_residual == 0
    assert rep.weyl_residual == 0
    assert rep.dilation_error is not None


# -- intersection group --------------------------------------------------------


def test_intersection_group_generators():
    ig = intersection_group(centered_square_figure(), (2, 2))
    assert ig.generators == (4, 4)
    assert ig.contains((4, 4))
    assert ig.contains((-8, 4))
    assert not ig.contains((2, 0))


# -- spectral check -----------------------------------------------------------


def test_spectral_orthogonality_shannon():
    assert spectral_defect(shannon_set(), 5) < 1e-6


def test_spectral_defect_positive_for_bad_set():
    assert spectral_defect(DyadicBoxSet.from_box((0, 1)), 2) > 0.1


# -- constructor ---------------------------------------------------------------


def test_construct_1d():
    e = DyadicBoxSet.from_box((-1, 1))
    res = construct_wavelet_set(e, shannon_set(), [2], kappa=2,
                                epsilon=F(1, 10 ** 6))
    assert res.residual_history[-1] <= F(1, 10 ** 6)
    assert res.translation_certificate.residual_measure == 0
    assert res.translation_certificate.verify().ok
    assert res.dilation_certificate.verify().ok


def test_construct_degenerate_epsilon_returns_start():
    e = DyadicBoxSet.from_box((-1, 1))
    res = construct_wavelet_set(e, shannon_set(), [2], kappa=2,
                                epsilon=e.measure)
    assert res.iterations == 0
    assert res.wavelet_set.equals_ae(e)


def test_construct_2d_weyl_pair():
    e = DyadicBoxSet.from_box((-1, 1), (-1, 1))
    res = construct_wavelet_set(e, square_annulus(), [2, 2], kappa=2,
                                epsilon=F(1, 1000), relocation_step=[4, 4],
                                max_iterations=60)
    assert res.dilation_certificate.residual_measure <= F(1, 1000)
    assert res.translation_certificate.residual_measure == 0
    # 4pi-lattice relocations also preserve fold congruence exactly
    w = weyl_congruent(res.wavelet_set, centered_square_figure())
    assert w.residual_measure == 0


def test_construct_reports_best_residual_on_failure():
    e = DyadicBoxSet.from_box((-1, 1))
    with pytest.raises(ConstructionError) as err:
        construct_wavelet_set(e, shannon_set(), [2], kappa=2,
                              epsilon=F(1, 10 ** 12), max_iterations=3)
    assert err.value.best_residual > 0
