from fractions import Fraction

import pytest

from hyperlat.core.exceptions import ValidationError
from hyperlat.services.hyperbolic import (
    LeechModel,
    LorentzLattice,
    finite_volume,
    height,
    is_root,
    norm0_classify,
    pairing_partner,
    reduce_to_domain,
    reflect,
    vinberg,
)
from hyperlat.services.lattice import even_unimodular_lorentzian, odd_lorentzian

I21_ROOTS = [(-1, 1, 0), (0, -1, 0), (1, 1, 1)]


def e10_gram():
    edges = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)]
    gram = [[2 if i == j else 0 for j in range(10)] for i in range(10)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -1
    return gram


def test_reflection_swaps_isotropic_basis(plane):
    assert reflect(plane, (1, 0), (1, -1)) == (0, 1)
    with pytest.raises(ValidationError):
        reflect(plane, (1, 0), (1, 0))


def test_is_root():
    lattice = odd_lorentzian(2)
    assert is_root(lattice, (1, 1, 1))
    assert is_root(lattice, (1, 1, 0))
    assert not is_root(lattice, (1, 1, 0), norms=(1,))
    assert not is_root(lattice, (2, 1, 1))


def test_lorentz_lattice_cone():
    lorentz = LorentzLattice(odd_lorentzian(2))
    assert lorentz.cone == (0, 0, 1)
    assert lorentz.in_cone((0, 0, 1))
    assert lorentz.in_cone((1, 0, 1))
    assert not lorentz.in_cone((0, 0, -1))
    assert height(lorentz, (1, 0, 2), lorentz.cone) == 2


def test_lorentz_lattice_rejects_definite_lattice(e8):
    with pytest.raises(ValidationError):
        LorentzLattice(e8)


def test_norm0_classify_ii91():
    quotient = norm0_classify(even_unimodular_lorentzian(9), (0,) * 8 + (1, 0))
    assert quotient.rank == 8
    assert quotient.label == "e8"
    assert quotient.is_unimodular


def test_pairing_partner():
    lattice = even_unimodular_lorentzian(9)
    w = (0,) * 8 + (0, 1)
    assert lattice.inner(w, pairing_partner(lattice, w)) == -1


def test_finite_volume_of_e10_simplex():
    assert finite_volume(e10_gram(), 9) is True


def test_finite_volume_undecided_for_norm_one_roots():
    assert finite_volume([[1, 0], [0, 2]], 2) is None


def test_vinberg_i21():
    run = vinberg(odd_lorentzian(2), (0, 0, 1), root_norms=(1, 2), max_distance=2)
    assert run.step0 == 2
    assert sorted(run.roots) == sorted(I21_ROOTS)
    assert run.distances[-1] == 1
    assert run.termination == "distance budget"
    assert run.to_dot().startswith("graph vinberg {")


@pytest.mark.parametrize("kwargs", [{"root_norms": (3,)}, {"root_norms": ()}])
def test_vinberg_rejects_root_norms(kwargs):
    with pytest.raises(ValidationError):
        vinberg(odd_lorentzian(2), (0, 0, 1), **kwargs)


def test_vinberg_rejects_spacelike_controlling_vector():
    with pytest.raises(ValidationError):
        vinberg(odd_lorentzian(2), (1, 0, 0))


@pytest.mark.slow
def test_vinberg_ii91_has_ten_roots():
    run = vinberg(even_unimodular_lorentzian(9), (0,) * 8 + (0, 1))
    assert len(run.roots) == 10
    assert run.finite_volume is not False


@pytest.mark.slow
def test_vinberg_ii171_has_nineteen_roots():
    run = vinberg(even_unimodular_lorentzian(17), (0,) * 16 + (0, 1))
    assert run.step0 == 18
    assert len(run.roots) == 19
    assert run.finite_volume is True
    assert run.termination == "finite-volume"


def test_reduce_to_domain():
    lattice = odd_lorentzian(2)
    assert reduce_to_domain(lattice, (0, 2, 3), (0, 0, 1), I21_ROOTS) == ((2, 0, 3), 1)
    assert reduce_to_domain(lattice, (2, 0, 3), (0, 0, 1), I21_ROOTS) == ((2, 0, 3), 0)
    with pytest.raises(ValidationError):
        reduce_to_domain(lattice, (2, 0, 1), (0, 0, 1), I21_ROOTS)


@pytest.fixture
def model(e8):
    return LeechModel(e8)


def test_model_simple_roots_have_norm_2(model):
    lam = (1, 0, 0, 0, 0, 0, 0, 0)
    r = model.simple_root(lam)
    assert model.norm(r) == 2
    assert model.height(r) == 1
    assert model.height(model.w) == 0


def test_model_z_space(model):
    lam = (1, 0, 0, 0, 0, 0, 0, 0)
    z1 = model.vector((0,) * 8, 1, 0)
    z2 = model.vector(lam, 1, 1)
    assert model.norm(z2) == 0
    assert model.z_map(z2) == tuple(Fraction(x) for x in lam)
    assert model.z_map(model.w) is None
    assert model.zspace_distance(z1, z2) == 2
    assert model.zspace_distance(model.w, z2) is None
    assert model.zspace_distance(model.w, model.w) == 0


def test_model_reduce_to_domain(model):
    v = model.vector((1, 0, 0, 0, 0, 0, 0, 0), 1, 1)
    assert not model.in_domain(v)
    reduced, steps = model.reduce_to_domain(v)
    assert reduced == model.w
    assert steps == 1
    assert model.in_domain(model.w)


def test_model_ri_points(model):
    u = model.w_prime
    assert len(model.ri_points(u, 0)) == 240
    assert len(model.ri_points(u, 1)) == 2160
    sets = model.ri_sets(u, 0)
    assert all(model.inner(r, u) == 0 for r in sets[0])


def test_model_norm0_vectors_and_type(model):
    u = model.vector((0,) * 8, 1, 1)
    assert model.norm(u) == -2
    found = model.norm0_at(u, 1)
    assert found == [model.w, model.w_prime]
    assert all(model.inner(z, u) == -1 for z in found)
    assert model.vector_type(u) == 1
    assert model.vector_type(model.w_prime) == 0


def test_model_rejects_vectors_outside_the_cone(model):
    with pytest.raises(ValidationError):
        model.ri_sphere(model.vector((0,) * 8, -1, 0), 0)
