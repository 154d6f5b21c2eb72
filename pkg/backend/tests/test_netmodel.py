import numpy as np
import pytest

from app.services.common import DistinguishedPair, HOIKind, SpecValidationError, Topology
from app.services.dynamics import IntegratorConfig, SystemState, simulate
from app.services.netmodel import (
    HOISpec,
    SystemSpec,
    build_canonical,
    cyclic_relabel,
    distinguished_alphas,
    relabel_vector,
    validate,
)
from app.services.netmodel.builders import A, B, C


def test_intransitive_signs():
    spec = build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0)
    alpha = spec.alpha
    # A > B, B > C, C > A
    assert alpha[A, B] == 2.0 and alpha[B, A] == -2.0
    assert alpha[B, C] == 2.0 and alpha[C, B] == -2.0
    assert alpha[C, A] == 2.0 and alpha[A, C] == -2.0
    assert np.all(np.diag(alpha) == 0.0)


def test_transitive_signs():
    spec = build_canonical(Topology.TRANSITIVE_A, HOIKind.SYMMETRIC, 1.0)
    assert spec.alpha[A, B] == 1.0
    assert spec.alpha[A, C] == 1.0
    assert spec.alpha[B, C] == 1.0
    assert spec.alpha[C, A] == -1.0


@pytest.mark.parametrize(
    "topology, pair, modifier",
    [
        (Topology.TRANSITIVE_A, (B, C), A),
        (Topology.TRANSITIVE_B, (A, C), B),
        (Topology.TRANSITIVE_C, (A, B), C),
        (Topology.INTRANSITIVE, (A, B), C),
    ],
)
def test_hoi_layout(topology, pair, modifier):
    hoi = build_canonical(topology, HOIKind.SYMMETRIC, 1.0).hois[0]
    assert hoi.modifier_species == modifier
    assert set(hoi.targets()) == {pair, pair[::-1]}


def test_asymmetric_targets():
    ab = build_canonical(Topology.INTRANSITIVE, HOIKind.ASYM_AFFECTED_FIRST, 1.0).hois[0]
    ba = build_canonical(Topology.INTRANSITIVE, HOIKind.ASYM_AFFECTED_SECOND, 1.0).hois[0]
    assert ab.targets() == ((A, B),)
    assert ba.targets() == ((B, A),)
    assert ab.label == "m_AB"
    assert ba.label == "m_BA"


@pytest.mark.parametrize("topology", list(Topology))
@pytest.mark.parametrize("kind", list(HOIKind))
def test_canonical_specs_are_valid(topology, kind):
    assert validate(build_canonical(topology, kind, 1.5, -3.0)) == []


def test_nonzero_diagonal_reported():
    alpha = build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0).alpha.copy()
    alpha[A, A] = 0.5
    spec = SystemSpec(3, alpha, (HOISpec(A, B, C, symmetric=True),))
    violations = validate(spec)
    assert len(violations) == 1
    assert "nonzero diagonal" in violations[0]


def test_duplicate_target_reported():
    alpha = build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0).alpha
    spec = SystemSpec(3, alpha, (HOISpec(A, B, C), HOISpec(A, B, C, beta=1.0)))
    violations = validate(spec)
    assert violations == ["duplicate modifier target (A,B)"]


def test_modifier_must_differ_from_pair():
    alpha = build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0).alpha
    spec = SystemSpec(3, alpha, (HOISpec(A, B, A),))
    assert any("pairwise distinct" in v for v in validate(spec))


def test_non_finite_magnitude_rejected():
    with pytest.raises(SpecValidationError):
        build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, float("nan"))
    with pytest.raises(SpecValidationError):
        build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0, float("inf"))


def test_wrong_alpha_shape_rejected():
    with pytest.raises(SpecValidationError):
        SystemSpec(3, np.zeros((2, 2)))


def test_distinguished_alphas():
    assert distinguished_alphas(DistinguishedPair.AB, 3.0, 1.0) == (3.0, 1.0, 1.0)
    assert distinguished_alphas(DistinguishedPair.AC, 3.0, 1.0) == (1.0, 3.0, 1.0)
    assert distinguished_alphas(DistinguishedPair.BC, 3.0, 1.0) == (1.0, 1.0, 3.0)


def test_with_beta_copies():
    spec = build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0)
    changed = spec.with_beta(-3.0)
    assert spec.hois[0].beta == 0.0
    assert changed.hois[0].beta == -3.0
    assert spec.fingerprint() != changed.fingerprint()
    assert spec.fingerprint() == build_canonical(Topology.INTRANSITIVE, HOIKind.SYMMETRIC, 2.0).fingerprint()


class TestCyclicRelabel:
    def test_full_cycle_is_identity(self, intransitive_sym):
        spec = intransitive_sym.with_beta(-3.0)
        assert cyclic_relabel(spec, 0) == spec
        assert cyclic_relabel(spec, 3) == spec
        once = cyclic_relabel(spec, 1)
        assert cyclic_relabel(cyclic_relabel(once, 1), 1) == spec

    def test_intransitive_network_is_cycle_invariant(self, intransitive_sym):
        relabeled = cyclic_relabel(intransitive_sym, 1)
        assert np.array_equal(relabeled.alpha, intransitive_sym.alpha)
        # 변경자는 C -> A
        assert relabeled.hois[0].modifier_species == A
        assert validate(relabeled) == []

    def test_relabel_vector(self):
        assert relabel_vector([1.0, 2.0, 3.0], 1).tolist() == [3.0, 1.0, 2.0]

    def test_trajectories_are_equivariant(self, intransitive_sym):
        spec = intransitive_sym.with_beta(-3.0)
        config = IntegratorConfig(omega=1.0, horizon=2000, horizon_unit="steps", sample_stride=10)
        n0 = [1.0, 0.5, 2.0]

        original = simulate(spec, config, SystemState.of(n0, 0.5))
        relabeled = simulate(cyclic_relabel(spec, 1), config, SystemState.of(relabel_vector(n0, 1), 0.5))

        assert original.steps == relabeled.steps
        expected = np.array([relabel_vector(row, 1) for row in original.n])
        np.testing.assert_allclose(relabeled.n, expected, rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(relabeled.m, original.m, rtol=1e-9, atol=1e-12)
