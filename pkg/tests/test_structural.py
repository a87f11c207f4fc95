"""Existence (some weights) and universality (all weights) decisions, the
exact sign-witness machinery, and weight synthesis.

Frozen oracles: the braced chain's witness algebra is worked by hand --
A = G_r^T G_r is the tridiagonal (2,-1) matrix, the damper row is
C = (1, 1, -1), x = (2,-1,1) gives A x = (5,-5,3) and C x = 0, and the
lexicographically first feasible sign pattern is (+,-,-) with canonical
representative (1,-3,-2).
"""

from fractions import Fraction

import numpy as np
import pytest

from oscsync import exactlin, fixtures, graphs, structural
from oscsync.graphs import Interconnection, incidence
from oscsync.laplacians import tau_eig
from oscsync.spectral import spectrum
from oscsync.structural import (
    BudgetExceededError,
    SignWitness,
    construct_synchronizing_weights,
    falsify_by_sampling,
    is_ss,
    is_sss,
    verify_witness,
    witness_to_laplacians,
)

F = Fraction


class TestIsSS:
    def test_braced_chain_is_ss(self):
        verdict = is_ss(fixtures.braced_chain())
        assert verdict.is_ss and verdict.reason == "ok"

    def test_no_dampers_fails(self):
        ic = Interconnection(4, (), ((1, 2), (2, 3), (3, 4)))
        verdict = is_ss(ic)
        assert not verdict.is_ss and verdict.reason == "empty-dissipative"

    def test_disconnected_union_fails(self):
        verdict = is_ss(fixtures.by_name("split-pair").ic)
        assert not verdict.is_ss and verdict.reason == "disconnected-union"

    def test_priority_of_reasons(self):
        # Disconnected AND damper-free: connectivity is reported first.
        ic = Interconnection(4, (), ((1, 2),))
        assert is_ss(ic).reason == "disconnected-union"


class TestSignWitness:
    def test_canonical_form_enforced(self):
        w = SignWitness((2, -1, 1))
        assert w.sign_pattern == (1, -1, 1)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError, match="nonzero"):
            SignWitness((0, 0))

    def test_common_factor_rejected(self):
        with pytest.raises(ValueError, match="gcd"):
            SignWitness((4, -2, 2))

    def test_leading_sign_enforced(self):
        with pytest.raises(ValueError, match="positive"):
            SignWitness((-2, 1, 1))

    def test_non_integers_rejected(self):
        with pytest.raises(TypeError, match="from_rationals"):
            SignWitness((F(1, 2), F(1)))

    def test_from_rationals_normalizes(self):
        w = SignWitness.from_rationals([F(2, 3), F(-1, 3), F(1, 3)])
        assert w.x == (2, -1, 1)
        flipped = SignWitness.from_rationals([F(-2, 3), F(1, 3), F(-1, 3)])
        assert flipped.x == (2, -1, 1)

    def test_from_rationals_leading_zeros(self):
        assert SignWitness.from_rationals([0, F(-5, 2), 5]).x == (0, 1, -2)


class TestVerifyWitness:
    def test_worked_witness_accepted(self):
        ic = fixtures.braced_chain()
        assert verify_witness(ic, (2, -1, 1))
        # intermediates, exactly
        gr = incidence(ic.q, ic.restorative_edges).tolist()
        x = [F(2), F(-1), F(1)]
        potentials = exactlin.matvec(gr, x)
        assert potentials == [F(2), F(-3), F(2), F(-1)]
        grt = [[F(v) for v in row] for row in np.array(gr).T.tolist()]
        image = exactlin.matvec(grt, potentials)
        assert image == [F(5), F(-5), F(3)]

    def test_sign_mismatch_rejected(self):
        assert not verify_witness(fixtures.braced_chain(), (1, 1, 1))

    def test_zero_vector_rejected(self):
        assert not verify_witness(fixtures.braced_chain(), (0, 0, 0))

    def test_damper_orthogonality_required(self):
        # x = (1, 0, 0) has C x = 1 != 0.
        assert not verify_witness(fixtures.braced_chain(), (1, 0, 0))

    def test_length_mismatch_raises(self):
        with pytest.raises(ValueError, match="3 restorative edges"):
            verify_witness(fixtures.braced_chain(), (1, -1))

    def test_accepts_witness_object_and_rationals(self):
        ic = fixtures.braced_chain()
        assert verify_witness(ic, SignWitness((2, -1, 1)))
        assert verify_witness(ic, (F(2, 7), F(-1, 7), F(1, 7)))

    def test_checked_on_reduced_interconnection(self):
        # A doubled edge disappears after reduction; lengths follow suit.
        ic = Interconnection(3, ((1, 2), (2, 3)), ((1, 2),))
        with pytest.raises(ValueError, match="0 restorative edges"):
            verify_witness(ic, (1,))


class TestIsSSS:
    def test_braced_chain_not_universal(self):
        verdict = is_sss(fixtures.braced_chain())
        assert not verdict.is_sss
        assert verdict.reason == "witness-found"
        assert verdict.witness is not None
        assert verify_witness(fixtures.braced_chain(), verdict.witness)

    def test_braced_chain_lexicographic_witness(self):
        # Patterns are scanned with -1 < 0 < +1 and first nonzero +1; the
        # four admissible patterns before (+,-,-) are all infeasible.
        verdict = is_sss(fixtures.braced_chain())
        assert verdict.witness.sign_pattern == (1, -1, -1)
        assert verdict.witness.x == (1, -3, -2)
        assert verdict.refuted_patterns == 4

    def test_twin_triangles_universal(self):
        verdict = is_sss(fixtures.twin_triangles())
        assert verdict.is_sss
        assert verdict.witness is None
        assert verdict.reason == "patterns-exhausted"
        # 13 admissible patterns over 3 edges, all refuted.
        assert verdict.refuted_patterns == 13

    def test_alternating_cycles_parity(self):
        assert not is_sss(fixtures.alternating_cycle(4)).is_sss
        assert is_sss(fixtures.alternating_cycle(6)).is_sss
        assert not is_sss(fixtures.alternating_cycle(8)).is_sss

    def test_non_ss_reported_not_ss(self):
        verdict = is_sss(fixtures.by_name("spring-chain").ic)
        assert not verdict.is_sss and verdict.reason == "not-ss"
        assert verdict.witness is None

    def test_no_restorative_edges_universal(self):
        verdict = is_sss(fixtures.by_name("damper-chain").ic)
        assert verdict.is_sss and verdict.reason == "no-restorative-edges"

    def test_doubled_edges_reduce_first(self):
        ic = Interconnection(3, ((1, 2), (2, 3)), ((1, 2), (2, 3)))
        verdict = is_sss(ic)
        assert verdict.is_sss and verdict.reason == "no-restorative-edges"

    def test_budget_guard(self):
        q = 17
        d_edges = ((1, 2),)
        r_edges = tuple((k, k + 1) for k in range(1, q))
        ic = Interconnection(q, d_edges, r_edges)
        with pytest.raises(BudgetExceededError, match="undecided-budget: 15"):
            is_sss(ic, budget=14)
        exc = None
        try:
            is_sss(ic, budget=14)
        except BudgetExceededError as caught:
            exc = caught
        assert exc.p_r == 15 and exc.budget == 14

    def test_budget_is_configurable(self):
        verdict = is_sss(fixtures.braced_chain(), budget=3)
        assert not verdict.is_sss
        with pytest.raises(BudgetExceededError):
            is_sss(fixtures.braced_chain(), budget=2)

    def test_parallel_scan_matches_serial(self):
        for ic in (fixtures.braced_chain(), fixtures.twin_triangles()):
            serial = is_sss(ic, jobs=1)
            parallel = is_sss(ic, jobs=3)
            assert serial.is_sss == parallel.is_sss
            if serial.witness is None:
                assert parallel.witness is None
            else:
                assert parallel.witness.x == serial.witness.x
            assert parallel.refuted_patterns == serial.refuted_patterns

    def test_implies_ss(self):
        for fixture in fixtures.gallery():
            verdict = is_sss(fixture.ic)
            if verdict.is_sss:
                assert is_ss(fixture.ic).is_ss, fixture.name


class TestWitnessToLaplacians:
    def test_worked_weights(self):
        d, r = witness_to_laplacians(fixtures.braced_chain(), (2, -1, 1))
        assert r.weights == (F(2, 5), F(1, 5), F(1, 3))
        assert d.weights == (F(1),)
        # v = potentials of the witness is a fixed vector of R, exactly.
        v = [F(2), F(-3), F(2), F(-1)]
        rm = r.exact_matrix()
        image = [sum((rm[i][j] * v[j] for j in range(4)), F(0)) for i in range(4)]
        assert image == v

    def test_margin_pinned_with_unit_dampers(self):
        d, r = witness_to_laplacians(fixtures.braced_chain(), (2, -1, 1))
        report = spectrum(d, r)
        assert abs(report.margin) <= 10 * tau_eig(report.scale)

    def test_margin_pinned_for_every_damper_choice(self):
        ic = fixtures.braced_chain()
        rng = np.random.default_rng(37)
        for _ in range(100):
            weights = [float(w) for w in np.exp(rng.uniform(-2.3, 2.3, size=1))]
            d, r = witness_to_laplacians(ic, (2, -1, 1), d_weights=weights)
            report = spectrum(d, r)
            assert abs(report.margin) <= 10 * tau_eig(report.scale)

    def test_off_support_edges_get_unit_weight(self):
        ic = Interconnection(4, ((1, 2), (1, 3)), ((1, 4), (2, 3), (2, 4), (3, 4)))
        verdict = is_sss(ic)
        witness = verdict.witness
        assert witness is not None and witness.x == (1, 0, 1, 1)
        d, r = witness_to_laplacians(ic, witness)
        assert r.weights[1] == F(1)
        report = spectrum(d, r)
        assert abs(report.margin) <= 10 * tau_eig(report.scale)

    def test_invalid_witness_rejected(self):
        with pytest.raises(ValueError, match="not a valid sign witness"):
            witness_to_laplacians(fixtures.braced_chain(), (1, 1, 1))


class TestFalsifyBySampling:
    def test_universal_shape_yields_nothing(self):
        found = falsify_by_sampling(fixtures.twin_triangles(), trials=500, seed=4)
        assert found is None

    def test_witness_candidates_checked_first(self):
        ic = fixtures.braced_chain()
        pair = witness_to_laplacians(ic, (2, -1, 1))
        found = falsify_by_sampling(ic, trials=0, seed=0, candidates=[pair])
        assert found is not None
        d, r = found
        assert spectrum(d, r).classification() != "positive"

    def test_deterministic_per_seed(self):
        ic = fixtures.twin_triangles()
        assert falsify_by_sampling(ic, trials=50, seed=11) is None
        assert falsify_by_sampling(ic, trials=50, seed=11) is None

    def test_non_ss_rejected(self):
        with pytest.raises(ValueError, match="empty-dissipative"):
            falsify_by_sampling(fixtures.by_name("spring-chain").ic, trials=1, seed=0)


class TestConstructSynchronizingWeights:
    def test_braced_chain_positive_margin(self):
        d, r = construct_synchronizing_weights(fixtures.braced_chain())
        report = spectrum(d, r)
        assert report.classification() == "positive"
        assert all(w > 0 for w in d.weights)
        assert all(w > 0 for w in r.weights)

    def test_twin_triangles_positive_margin(self):
        d, r = construct_synchronizing_weights(fixtures.twin_triangles())
        assert spectrum(d, r).classification() == "positive"

    def test_all_ss_fixtures(self):
        for fixture in fixtures.gallery():
            if not is_ss(fixture.ic).is_ss:
                continue
            d, r = construct_synchronizing_weights(fixture.ic)
            report = spectrum(d, r)
            assert report.classification() == "positive", fixture.name
            assert d.edges == fixture.ic.dissipative_edges
            assert r.edges == fixture.ic.restorative_edges

    def test_damper_only_input(self):
        d, r = construct_synchronizing_weights(fixtures.by_name("damper-chain").ic)
        assert r.edges == () and spectrum(d, r).classification() == "positive"

    def test_two_node(self):
        d, r = construct_synchronizing_weights(fixtures.by_name("two-node").ic)
        assert spectrum(d, r).classification() == "positive"

    def test_non_ss_rejected(self):
        with pytest.raises(ValueError, match="disconnected-union"):
            construct_synchronizing_weights(fixtures.by_name("split-pair").ic)

    def test_deterministic(self):
        ic = fixtures.by_name("gapped-cycle-5").ic
        a = construct_synchronizing_weights(ic)
        b = construct_synchronizing_weights(ic)
        assert a[0].weights == b[0].weights
        assert a[1].weights == b[1].weights
