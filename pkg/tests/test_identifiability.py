import numpy as np
import pytest

from errors import DegreeCapError, ValidationError
from identifiability import (
    COMPLEX_HERMITIAN,
    REAL_SYMMETRIC,
    generative_experiment,
    lattice_insensitivity_check,
    orbit_collisions,
    random_hermitian,
    random_subgroup_chain,
)
from perm_group import (
    Ambiguous,
    Identifiable,
    closure,
    cyclic_group,
    dihedral_group,
    orbit_pairs,
    symmetric_group,
    trivial_group,
)


def test_random_hermitian_ensembles(rng):
    w = random_hermitian(5, rng)
    assert np.array_equal(w, w.T)
    z = random_hermitian(5, rng, COMPLEX_HERMITIAN)
    assert np.iscomplexobj(z)
    assert np.allclose(z, z.conj().T)


def test_random_hermitian_unknown_ensemble(rng):
    with pytest.raises(ValidationError):
        random_hermitian(3, rng, "gaussian")


def test_lattice_insensitivity_on_random_chains():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        g1, g2 = random_subgroup_chain(6, rng)
        assert g1.issubgroup(g2)
        report = lattice_insensitivity_check(g1, g2, seed=seed)
        assert report.residual_g1 <= 1e-12
        assert report.residual_g2 <= 1e-12
        assert report.passed()


def test_lattice_cyclic_subgroup_of_index_three():
    tau = cyclic_group(6).generators[0]
    report = lattice_insensitivity_check(closure(6, [tau ** 3]), cyclic_group(6))
    assert report.order_g1 == 2
    assert report.passed()


def test_lattice_rotation_inside_dihedral():
    report = lattice_insensitivity_check(cyclic_group(6), dihedral_group(6), ensemble=COMPLEX_HERMITIAN)
    assert report.order_g2 == 12
    assert report.passed()


def test_lattice_rejects_non_subgroup():
    with pytest.raises(ValidationError):
        lattice_insensitivity_check(dihedral_group(6), cyclic_group(6))


def test_lattice_degree_cap():
    with pytest.raises(DegreeCapError):
        lattice_insensitivity_check(trivial_group(9), cyclic_group(9))


@pytest.mark.parametrize("m, hmax_order", [(4, 8), (5, 10), (6, 12)])
def test_real_cyclic_is_ambiguous_with_dihedral_hull(m, hmax_order):
    report = generative_experiment(cyclic_group(m), trials=20, seed=m)
    assert isinstance(report.classification, Ambiguous)
    assert report.classification.hmax.order == hmax_order
    assert report.containment_count == 20


@pytest.mark.parametrize("group", [dihedral_group(4), dihedral_group(5), symmetric_group(4), trivial_group(5)])
def test_identifiable_groups_are_recovered(group):
    report = generative_experiment(group, trials=20, seed=7)
    assert isinstance(report.classification, Identifiable)
    assert report.equal_count >= 19


def test_complex_ensemble_identifies_cyclic_group():
    report = generative_experiment(cyclic_group(4), trials=20, seed=1, ensemble=COMPLEX_HERMITIAN)
    assert isinstance(report.classification, Identifiable)
    assert report.equal_count >= 19


def test_generative_summary_lines():
    report = generative_experiment(cyclic_group(4), trials=3, ensemble=REAL_SYMMETRIC)
    text = "\n".join(report.summary_lines())
    assert "classification\tAmbiguous" in text
    assert "hmax_order\t8" in text
    assert list(report.trials.columns) == ["trial", "aut_order", "equals_gstar", "contains_hmax", "collisions"]


def test_generative_validation():
    with pytest.raises(DegreeCapError):
        generative_experiment(cyclic_group(7))
    with pytest.raises(ValidationError):
        generative_experiment(cyclic_group(4), trials=0)
    with pytest.raises(ValidationError):
        generative_experiment(cyclic_group(4), ensemble="wishart")


def test_orbit_collisions_detects_equal_blocks():
    partition = orbit_pairs(trivial_group(3))
    r = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 5.0], [3.0, 5.0, 6.0]])
    collisions = orbit_collisions(r, partition)
    assert (partition.block_of(0, 1), partition.block_of(1, 0)) in collisions


def test_orbit_collisions_empty_for_generic_values(rng):
    partition = orbit_pairs(trivial_group(3))
    assert orbit_collisions(rng.standard_normal((3, 3)), partition) == []
