import math

import networkx as nx
import numpy as np
import pytest

from basis_catalog import c6_example_basis, perm_diff_basis, standard_catalog
from errors import BasisExhaustedError, ValidationError
from experiments import diffusion_covariance, make_graph, resolvent_covariance
from perm_group import (
    Permutation,
    aut_bruteforce,
    closure,
    cyclic_group,
    dihedral_group,
    reynolds_project,
    trivial_group,
)
from seq_gevp import (
    TerminationCause,
    deflate_basis,
    group_span_basis,
    orthogonality_residual,
    round_to_permutation,
    sequential_select,
)


@pytest.fixture
def c6_resolvent():
    return resolvent_covariance(make_graph("C6"))


def test_c6_partial_recovery(c6_resolvent):
    trace = sequential_select(c6_resolvent, c6_example_basis(), tau=0.0)
    first = trace.records[0]
    assert first.accepted
    assert first.group_order_after == 6
    assert cyclic_group(6).elements == closure(6, [first.rounded]).elements
    assert trace.final_group.issubgroup(aut_bruteforce(c6_resolvent))
    assert trace.final_group.order in (6, 12)
    assert trace.final_group.issubgroup(dihedral_group(6))


def test_c6_trace_frame(c6_resolvent):
    trace = sequential_select(c6_resolvent, c6_example_basis())
    frame = trace.to_frame()
    assert list(frame["k"]) == list(range(1, len(trace.records) + 1))
    assert frame["accepted"].sum() == trace.accepted_count
    assert trace.termination in (TerminationCause.REJECTED, TerminationCause.BASIS_EXHAUSTED)


def test_deflation_removes_identity_component():
    basis = c6_example_basis()
    out = deflate_basis(basis, trivial_group(6))
    for e in out.elements:
        assert abs(np.trace(e)) <= 1e-12


def test_deflation_keeps_fixed_point_free_permutations_untouched():
    basis = standard_catalog(6)
    out = deflate_basis(basis, trivial_group(6))
    k = out.labels.index("shift")
    assert out.hints[k] == "permutation"
    assert out.perms[k] == basis.perms[0]


def test_deflation_against_full_group_exhausts():
    g = cyclic_group(6)
    basis = perm_diff_basis([g.generators[0], g.generators[0] ** 2])
    with pytest.raises(BasisExhaustedError):
        deflate_basis(basis, g)


def test_deflated_elements_orthogonal_to_group():
    g = cyclic_group(6)
    out = deflate_basis(c6_example_basis(), g)
    q = group_span_basis(g)
    for e in out.elements:
        assert np.max(np.abs(q.T @ np.ravel(e))) <= 1e-12 * np.linalg.norm(e)


def test_group_span_basis_is_orthonormal():
    q = group_span_basis(dihedral_group(5))
    assert np.allclose(q.T @ q, np.eye(q.shape[1]))


def test_orthogonality_residual_of_identity_against_trivial():
    assert orthogonality_residual(np.eye(4), trivial_group(4)) == pytest.approx(2.0)


def test_round_to_permutation_recovers_scaled_permutation():
    sigma = Permutation((2, 0, 1, 3))
    a = 0.3 * sigma.matrix() + 0.01
    rounded, overlap = round_to_permutation(a)
    assert rounded == sigma
    assert overlap == pytest.approx(4 * 0.31)


def test_invalid_parameters(c6_resolvent):
    with pytest.raises(ValidationError):
        sequential_select(c6_resolvent, c6_example_basis(), tau=-1.0)
    with pytest.raises(ValidationError):
        sequential_select(c6_resolvent, c6_example_basis(), k_max=0)
    with pytest.raises(ValidationError):
        sequential_select(np.eye(5), c6_example_basis())


def test_iteration_cap(c6_resolvent):
    trace = sequential_select(c6_resolvent, c6_example_basis(), k_max=1)
    assert trace.termination == TerminationCause.ITERATION_CAP
    assert trace.accepted_count == 1


def _random_instance(rng, k):
    m = int(rng.integers(4, 8))
    if k % 2 == 0:
        g = nx.gnp_random_graph(m, 0.5, seed=int(rng.integers(1 << 30)))
        r = diffusion_covariance(g, 1.0)
    else:
        gens = [Permutation(tuple(int(i) for i in rng.permutation(m))) for _ in range(int(rng.integers(1, 3)))]
        w = rng.standard_normal((m, m))
        r = reynolds_project(closure(m, gens), (w + w.T) / 2)
    catalog = standard_catalog(m)
    basis = catalog if k % 4 < 2 else perm_diff_basis(catalog.perms)
    return r, basis


def test_soundness_and_growth_on_random_instances():
    rng = np.random.default_rng(2024)
    for k in range(100):
        r, basis = _random_instance(rng, k)
        trace = sequential_select(r, basis, tau=0.0)
        aut = aut_bruteforce(r)

        for sigma in trace.accepted_permutations():
            assert sigma in aut
        assert trace.final_group.issubgroup(aut)

        accepted = trace.accepted_count
        if accepted:
            assert accepted <= math.ceil(math.log2(trace.final_group.order))

        previous = 1
        for rec in trace.records:
            if rec.accepted:
                assert rec.group_order_after >= 2 * previous
                previous = rec.group_order_after
            assert rec.orthogonality_residual <= 1e-10


def test_identity_covariance_never_fails_commutation_test():
    trace = sequential_select(np.eye(6), c6_example_basis(), tau=0.0, k_max=50)
    assert trace.termination == TerminationCause.BASIS_EXHAUSTED
    assert trace.records
    assert all(rec.accepted for rec in trace.records)
    assert all(rec.rounded_residual == 0.0 for rec in trace.records)


def test_identity_covariance_with_standard_catalog_accepts_only_commuting():
    trace = sequential_select(np.eye(6), standard_catalog(6), tau=0.0)
    assert trace.final_group.order >= 2
    assert all(rec.rounded_residual == 0.0 for rec in trace.records)
    assert all(rec.note != "test komutacji niespełniony" for rec in trace.records)
