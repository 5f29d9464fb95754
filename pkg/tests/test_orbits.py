import itertools
import json

import pytest

from dimeq.errors import DomainError
from dimeq.groups import Modifier, gl, parse_group, so, sp
from dimeq.orbits import (
    exponent_multiset,
    filtration_gk,
    filtration_profile,
    fourier_jacobi_dim,
    gk_dimension,
    minimal_orbit_gk,
    minimal_symplectic_partition,
    orbit,
    orbit_dimension,
    regular_partition,
    root_weights,
    weight_vector,
)
from dimeq.partitions import Partition, dominance_leq, enumerate_partitions


def test_sp4_orbits():
    assert orbit_dimension(sp(4), Partition.of(2, 2)) == 6
    assert gk_dimension(sp(4), Partition.of(2, 2)) == 3
    assert gk_dimension(sp(4), Partition.of(4)) == 4
    o = orbit(sp(4), Partition.of(2, 1, 1))
    assert (o.dim, o.gk, o.odd_part_count) == (4, 2, 2)


@pytest.mark.parametrize("n", range(2, 13))
def test_gl_minimal_orbit(n):
    p = Partition.of(2, *([1] * (n - 2)))
    assert gk_dimension(gl(n), p) == n - 1


def test_gl3_mirabolic_orbit():
    assert gk_dimension(gl(3), Partition.of(2, 1)) == 2


@pytest.mark.parametrize("n, k", list(itertools.product(range(1, 5), repeat=2)))
def test_theta_orbit_gk(n, k):
    size = 4 * n * k
    assert gk_dimension(sp(size), minimal_symplectic_partition(size)) == 2 * n * k


@pytest.mark.parametrize("size", range(2, 65, 2))
def test_minimal_orbit_gk_matches_closed_form(size):
    assert minimal_orbit_gk(size) == gk_dimension(sp(size), minimal_symplectic_partition(size))


def test_minimal_orbit_gk_domain():
    with pytest.raises(DomainError):
        minimal_orbit_gk(3)


def test_sp16_shift_orbits(sp16, sp16_gk56):
    assert orbit_dimension(sp16, Partition.of(5, 5, 3, 3)) == 106
    assert gk_dimension(sp16, Partition.of(16)) == 64
    for p in sp16_gk56:
        assert gk_dimension(sp16, p) == 56


def test_generic_orbits():
    assert regular_partition(so(8)).parts == (7, 1)
    assert regular_partition(so(2)).parts == (1, 1)
    assert regular_partition(so(7)).parts == (7,)
    assert gk_dimension(so(8), regular_partition(so(8))) == 12
    assert gk_dimension(sp(6), regular_partition(sp(6))) == 9
    assert gk_dimension(gl(4), regular_partition(gl(4))) == 6


def test_restriction_of_scalars_doubles():
    g = parse_group("Res2:GL(3)")
    assert orbit_dimension(g, Partition.of(3)) == 2 * orbit_dimension(gl(3), Partition.of(3))
    assert filtration_profile(g, Partition.of(3)).dim_n2 == 2 * filtration_profile(gl(3), Partition.of(3)).dim_n2


def test_similitude_does_not_change_orbits():
    gsp4 = sp(4, Modifier.SIMILITUDE)
    assert gk_dimension(gsp4, Partition.of(4)) == gk_dimension(sp(4), Partition.of(4))


@pytest.mark.parametrize(
    "group, text",
    [(sp(4), "3 1"), (sp(4), "2 1"), (so(5), "4 1"), (so(6), "2 1^4"), (gl(3), "2 2")],
)
def test_invalid_orbits(group, text):
    from dimeq.partitions import parse_partition

    with pytest.raises(DomainError):
        orbit_dimension(group, parse_partition(text))


def test_exponents_and_weights():
    assert exponent_multiset(Partition.of(3, 1)) == [2, 0, 0, -2]
    assert weight_vector(sp(4), Partition.of(2, 2)) == [1, 1]
    assert weight_vector(gl(3), Partition.of(2, 1)) == [1, 0, -1]
    assert weight_vector(so(5), Partition.of(3, 1, 1)) == [2, 0]


def test_filtration_of_siegel_orbit():
    profile = filtration_profile(sp(4), Partition.of(2, 2))
    assert profile.weight_histogram == {0: 1, 2: 3}
    assert (profile.dim_n1, profile.dim_n2, profile.weight_one_count) == (3, 3, 0)
    assert json.loads(profile.to_json()) == {"weights": [1, 1], "dim_n1": 3, "dim_n2": 3, "histogram": {"0": 1, "2": 3}}
    assert profile.to_json() == '{"weights":[1,1],"dim_n1":3,"dim_n2":3,"histogram":{"0":1,"2":3}}'


def test_fourier_jacobi_dimension():
    p = Partition.of(2, 1, 1)
    profile = filtration_profile(sp(4), p)
    assert profile.weight_histogram == {0: 1, 1: 2, 2: 1}
    assert fourier_jacobi_dim(sp(4), p) == 3
    assert filtration_gk(sp(4), p) == 2 == gk_dimension(sp(4), p)


def test_dim_n_levels():
    profile = filtration_profile(sp(8), Partition.of(4, 4))
    assert profile.dim_n(1) == profile.dim_n1
    assert profile.dim_n(2) == profile.dim_n2
    assert profile.dim_n(100) == 0
    assert [profile.dim_n(i) for i in range(1, 8)] == sorted((profile.dim_n(i) for i in range(1, 8)), reverse=True)
    with pytest.raises(DomainError):
        profile.dim_n(0)


@pytest.mark.sweep
def test_closed_form_matches_filtration_oracle(all_groups):
    checked = 0
    for group in all_groups(24):
        for p in enumerate_partitions(group.size, group.family):
            assert orbit_dimension(group, p) == 2 * filtration_gk(group, p), (str(group), p.to_text())
            checked += 1
    assert checked > 5000


def test_grouped_histogram_matches_per_root_evaluation(all_groups):
    for group in all_groups(12):
        for p in enumerate_partitions(group.size, group.family):
            assert root_weights(group, p) == filtration_profile(group, p).weight_histogram, (str(group), p.to_text())


@pytest.mark.sweep
@pytest.mark.parametrize("size", range(1, 17))
def test_orbit_dimension_is_dominance_monotone(size, all_groups):
    for group in (g for g in all_groups(size) if g.size == size):
        parts = enumerate_partitions(size, group.family)
        dims = {p: orbit_dimension(group, p) for p in parts}
        for p, q in itertools.product(parts, repeat=2):
            if dominance_leq(p, q):
                assert dims[p] <= dims[q]
