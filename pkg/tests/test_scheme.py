import itertools

import pytest

from agqss.core.errors import NotInjectiveError, NotSurjectiveError, SchemeParamsError
from agqss.models.fqmat import as_ints, projected_dim, rank
from agqss.models.funcfield import INFINITY, CurveModel, Place, affine_places
from agqss.models.gf import FieldSpec
from agqss.models.scheme import SchemeParams, build, extended_pair, thresholds


def test_rs_code_pair(instance_rs):
    assert instance_rs.functions.tolist() == [[1, 0], [2, 1]]
    assert instance_rs.G1.tolist() == [[1, 1, 1], [2, 3, 4]]
    assert instance_rs.G2.tolist() == [[2, 3, 4]]
    assert instance_rs.secret_rows.tolist() == [[1, 1, 1]]
    assert (instance_rs.dim_c1, instance_rs.dim_c2) == (2, 1)


def test_secret_eval_is_unit_block(instance_a):
    assert instance_a.secret_eval.tolist() == [[1, 0], [0, 1], [0, 0], [0, 0]]


def test_instance_a_dimensions(instance_a):
    assert instance_a.G1.shape == (4, 6)
    assert (instance_a.dim_c1, instance_a.dim_c2) == (4, 2)
    assert rank(instance_a.G1) == 4
    assert rank(instance_a.G2) == 2


def test_instance_a_places(instance_a, hermitian2):
    places = affine_places(hermitian2)
    assert instance_a.params.share_places == tuple(places[:6])
    assert instance_a.params.secret_places == tuple(places[6:8])


def test_toy_repetition(toy):
    assert toy.G1.tolist() == [[1, 1]]
    assert toy.G2.rows == 0
    assert toy.dim_c2 == 0


def test_secret_coset(instance_a):
    coset = instance_a.secret_coset([2, 3])
    assert coset.dim == instance_a.dim_c2
    # adapted basis: the secret is the leading coefficients
    assert as_ints(coset.offset)[:2].tolist() == [2, 3]


def test_extended_pair(instance_a):
    ext = extended_pair(instance_a, [0])
    assert ext.I == (0,)
    assert ext.I_bar == (1,)
    assert ext.appended == (6,)
    assert ext.G1ext.shape == (4, 7)
    assert ext.G2ext.shape == (3, 7)
    assert ext.G1ext.columns([6]).tolist() == [[0], [1], [0], [0]]


def test_extended_pair_full_secret(instance_a):
    ext = extended_pair(instance_a, [1, 0])
    assert ext.I == (0, 1)
    assert ext.appended == ()
    assert ext.G1ext == instance_a.G1
    assert ext.G2ext == instance_a.G2


def test_extended_pair_empty_secret(instance_a):
    ext = extended_pair(instance_a, [])
    assert ext.appended == (6, 7)
    assert ext.G2ext.rows == instance_a.dim_c1


def test_extended_pair_bad_index(instance_a):
    with pytest.raises(SchemeParamsError):
        extended_pair(instance_a, [2])


@pytest.mark.parametrize(
    "name,expected",
    [
        ("instance_a", (1, 5)),
        ("instance_b", (2, 5)),
        ("instance_rs", (1, 2)),
        ("toy", (0, 2)),
    ],
)
def test_thresholds(request, name, expected):
    cp = request.getfixturevalue(name)
    th = thresholds(cp.params)
    assert (th.t_forbidden, th.t_qualified) == expected
    assert not th.forbidden_vacuous
    assert not th.qualified_vacuous


def test_vacuous_thresholds(f5):
    params = SchemeParams.with_default_places(CurveModel.rational(f5), 1, 1, 1)
    th = thresholds(params)
    assert th.t_forbidden == -1
    assert th.t_qualified == 2
    assert th.forbidden_vacuous
    assert th.qualified_vacuous


def test_strong_bound(instance_a):
    th = thresholds(instance_a.params)
    assert [th.strong_bound(k) for k in range(3)] == [1, 2, 3]
    assert th.strong_bound_satisfied(1, 2)
    assert not th.strong_bound_satisfied(0, 2)


@pytest.mark.parametrize("name", ["instance_a", "instance_b", "instance_rs"])
def test_strong_bound_matches_component_bounds(request, name):
    # the bound is the conjunction of u <= |J-bar| + |I-bar| - 1
    # and |J| <= u - |I| - 2g + 1
    cp = request.getfixturevalue(name)
    th = thresholds(cp.params)
    u, n, L, g = th.u, th.n, th.secret_length, th.genus
    for i_size, j_size in itertools.product(range(L + 1), range(n + 1)):
        i_bar = L - i_size
        expected = u <= (n - j_size) + i_bar - 1 and j_size <= u - i_size - 2 * g + 1
        assert th.strong_bound_satisfied(i_bar, j_size) == expected


def test_projection_dims_bounded(instance_a):
    for J in itertools.combinations(range(6), 3):
        d1, d2 = projected_dim(instance_a.G1, J), projected_dim(instance_a.G2, J)
        assert 0 <= d1 - d2 <= instance_a.secret_length


def test_not_injective(f5):
    params = SchemeParams.with_default_places(CurveModel.rational(f5), 3, 3, 1)
    with pytest.raises(NotInjectiveError):
        build(params)


def test_not_surjective(f5):
    params = SchemeParams.with_default_places(CurveModel.rational(f5), 0, 1, 2)
    with pytest.raises(NotSurjectiveError):
        build(params)


def test_too_many_places(hermitian2):
    with pytest.raises(SchemeParamsError, match="exceeds"):
        SchemeParams.with_default_places(hermitian2, 4, 8, 1)


def test_duplicate_places(f5):
    curve = CurveModel.rational(f5)
    with pytest.raises(SchemeParamsError, match="distinct"):
        SchemeParams(curve, 1, 2, 1, (Place.affine(0), Place.affine(1)), (Place.affine(1),))


def test_infinity_rejected(f5):
    curve = CurveModel.rational(f5)
    with pytest.raises(SchemeParamsError, match="Q_inf"):
        SchemeParams(curve, 1, 2, 1, (Place.affine(0), INFINITY), (Place.affine(1),))


def test_place_not_on_curve(hermitian2):
    shares = tuple(affine_places(hermitian2)[:2]) + (Place.affine(1, 1),)
    with pytest.raises(SchemeParamsError, match="not rational places"):
        SchemeParams(hermitian2, 4, 3, 1, shares, (affine_places(hermitian2)[5],))


@pytest.mark.parametrize("u,n,L", [(-1, 2, 1), (1, 0, 1), (1, 2, 0)])
def test_bad_sizes(u, n, L):
    curve = CurveModel.rational(FieldSpec.default(5))
    with pytest.raises(SchemeParamsError):
        SchemeParams.with_default_places(curve, u, n, L)
