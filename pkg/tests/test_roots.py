import itertools

import pytest

from bruhat_satake import roots, weyl
from bruhat_satake.roots import (
    all_roots,
    cell_dim_by_roots,
    negative_roots,
    parabolic_data,
    positive_roots,
    weyl_action,
)

KINDS = [weyl.type_a(1), weyl.type_a(2), weyl.type_a(3), weyl.type_c(1), weyl.type_c(2), weyl.type_c(3)]


@pytest.mark.parametrize("kind", KINDS)
def test_root_counts(kind):
    n = kind.n
    expected = 2 * n * (2 * n - 1) if kind.family is weyl.Family.TYPE_A else 2 * n * n
    assert len(all_roots(kind)) == expected
    assert len(positive_roots(kind)) == expected // 2
    assert positive_roots(kind) | negative_roots(kind) == all_roots(kind)
    assert not positive_roots(kind) & negative_roots(kind)


@pytest.mark.parametrize("kind", KINDS)
def test_negation_is_an_involution_swapping_signs(kind):
    for r in all_roots(kind):
        assert -(-r) == r
        assert r.is_positive != (-r).is_positive


@pytest.mark.parametrize("kind", KINDS[:4])
def test_weyl_action_is_a_root_permutation(kind):
    for w in weyl.all_elements(kind):
        image = {weyl_action(w, r) for r in all_roots(kind)}
        assert image == all_roots(kind)


@pytest.mark.parametrize("kind", KINDS[:4])
def test_weyl_action_is_compatible_with_products(kind):
    elements = weyl.all_elements(kind)[:12]
    sample = sorted(all_roots(kind))[::3]
    for u, v in itertools.product(elements[:6], elements[6:12] or elements):
        for r in sample:
            assert weyl_action(u * v, r) == weyl_action(u, weyl_action(v, r))


@pytest.mark.parametrize("kind", KINDS)
def test_length_equals_inversion_count(kind):
    # geometric length: roots made negative; independent of the Cayley BFS
    pos = positive_roots(kind)
    for w in weyl.all_elements(kind)[:120]:
        inversions = sum(1 for r in pos if not weyl_action(w, r).is_positive)
        assert weyl.length(w) == inversions


@pytest.mark.parametrize("kind", KINDS)
def test_parabolic_split(kind):
    data = parabolic_data(kind)
    assert data.phi_i | data.n_i | data.nbar_i == all_roots(kind)
    assert len(data.n_i) == len(data.nbar_i) == roots.place_dimension(kind)
    assert {-r for r in data.n_i} == data.nbar_i
    assert {-r for r in data.phi_i} == data.phi_i


@pytest.mark.parametrize("kind", KINDS)
def test_place_dimension(kind):
    n = kind.n
    expected = n * n if kind.family is weyl.Family.TYPE_A else n * (n + 1) // 2
    assert roots.place_dimension(kind) == expected


@pytest.mark.parametrize("kind", KINDS[:4])
def test_dim_functions_match_setwise_definitions(kind):
    # oracle: direct Root-set arithmetic, no pair-code tables
    data = parabolic_data(kind)
    upper = positive_roots(kind) | data.phi_i
    lower = negative_roots(kind) | data.phi_i
    for w in weyl.all_elements(kind):
        img_lo = frozenset(weyl_action(w, r) for r in lower)
        img_up = frozenset(weyl_action(w, r) for r in upper)
        assert cell_dim_by_roots(w) == len(upper - img_lo)
        assert roots.unipotent_intersection_dim(w) == len(img_lo & data.nbar_i)
        assert roots.standard_unipotent_intersection_dim(w) == len(img_up & data.n_i)


@pytest.mark.parametrize("kind", KINDS)
def test_unipotent_dim_equals_cell_dim_everywhere(kind):
    w0 = weyl.longest_element(kind)
    for w in weyl.all_elements(kind):
        d = cell_dim_by_roots(w)
        assert roots.unipotent_intersection_dim(w) == d
        assert roots.standard_unipotent_intersection_dim(w) == d
        assert roots.schubert_cell_dim(w) == cell_dim_by_roots(w * w0)


@pytest.mark.parametrize("kind", KINDS)
def test_canonical_rep_cell_dims_closed_form(kind):
    n = kind.n
    for k, rep in enumerate(weyl.double_cosets(kind)):
        want = k * (2 * n - k) if kind.family is weyl.Family.TYPE_A else k * (2 * n - k + 1) // 2
        assert roots.cell_dim_formula(kind, k) == want
        assert roots.schubert_cell_dim(rep) == want
    # the open cell has the full place dimension
    assert roots.cell_dim_formula(kind, n) == roots.place_dimension(kind)


@pytest.mark.parametrize("kind", KINDS)
def test_cell_dim_constant_on_double_cosets(kind):
    for block in weyl.double_coset_partition(kind):
        dims = {roots.schubert_cell_dim(weyl.WeylElement(kind, perm)) for perm in block}
        assert len(dims) == 1


@pytest.mark.parametrize("kind", KINDS)
def test_n0j_rank_identity(kind):
    w0 = weyl.longest_element(kind)
    full = roots.place_dimension(kind)
    for J in weyl.all_subsets_j(kind):
        r = roots.n0j_rank(J)
        assert r == roots.schubert_cell_dim(weyl.w_j(J) * w0)
        assert roots.n0j_corank(J) == full - r
    # J = {1..n} gives w_J = identity and full rank
    base = weyl.subset_j(kind, frozenset(range(1, kind.n + 1)))
    assert roots.n0j_rank(base) == full
