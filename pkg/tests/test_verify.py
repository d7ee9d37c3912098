import pytest

from revlab.fixtures import karl_fixture
from revlab.operators import RevisionOperator, UpdatePolicy, all_policies
from revlab.orders import RankedOrder
from revlab.prop import Signature, parse_models
from revlab.states import EpistemicState, enumerate_states
from revlab.verify import (
    CONDITION_IDS,
    POSTULATE_IDS,
    THEOREM_IDS,
    check_condition,
    check_postulate,
    mutation_detection,
    representation_roundtrip,
    verify_equivalence,
)

AB = Signature.of("a b")
DL_OP = RevisionOperator("dl", UpdatePolicy("keep", "keep"))


def mask(*worlds):
    m = 0
    for w in worlds:
        m |= 1 << w
    return m


@pytest.fixture(scope="module")
def faithful():
    return enumerate_states(AB, "faithful")


@pytest.fixture(scope="module")
def faithful_gc():
    return enumerate_states(AB, "faithful", global_consistency=True)


class TestCheckPostulate:
    def test_dl_suite_passes(self, faithful):
        for pid in [f"DL{i}" for i in range(1, 8)]:
            assert check_postulate(DL_OP, faithful, pid).holds

    def test_dl_operators_satisfy_cl5(self, faithful):
        # success closed under weakening follows from the full DL list
        assert check_postulate(DL_OP, faithful, "CL5").holds

    def test_dl_operator_fails_vacuity_outside_scope(self, faithful):
        # a state whose beliefs are partly outside its scope breaks CL2
        v = check_postulate(DL_OP, faithful, "CL2")
        assert not v.holds
        ce = v.counterexamples[0]
        assert ce.state.bel & ~ce.state.scope

    def test_il_operator_fails_cl2_with_full_belief_witness(self):
        scope = mask(1, 2)
        uni = enumerate_states(AB, "il", global_consistency=True, il_scope=scope)
        op = RevisionOperator("il", il_scope=scope)
        v = check_postulate(op, uni, "CL2", max_counterexamples=10_000)
        assert not v.holds
        assert any(ce.state.bel == AB.all_worlds for ce in v.counterexamples)

    def test_unknown_id_lists_valid_ones(self, faithful):
        with pytest.raises(ValueError, match="DL1"):
            check_postulate(DL_OP, faithful, "DL9")

    def test_keep_policy_satisfies_dldp(self, faithful_gc):
        # the order-preserving policy keeps revision by scoped inputs stable
        for pid in ("DLDP1", "DLDP2"):
            assert check_postulate(DL_OP, faithful_gc, pid).holds

    def test_keep_policy_fails_cldp(self, faithful_gc):
        # scoped two-step stability fails once believed inputs outside the
        # scope come into play
        v = check_postulate(DL_OP, faithful_gc, "CLDP1")
        assert not v.holds and v.counterexamples

    def test_doc_policy_satisfies_doc(self, faithful_gc):
        op = RevisionOperator("dl", UpdatePolicy("keep", "doc"))
        assert check_postulate(op, faithful_gc, "DOC").holds

    def test_keep_policy_fails_doc(self, faithful_gc):
        v = check_postulate(DL_OP, faithful_gc, "DOC")
        assert not v.holds


class TestCheckCondition:
    def test_identity_transition_satisfies_cr(self):
        _, st, _ = karl_fixture()
        sig = Signature.of("z o t")
        for cid in ("CR8", "CR9", "CR10", "CR11"):
            assert check_condition(st, st, parse_models("t", sig), cid, sig)

    def test_karl_transition_p9ii_otherwise_branch(self):
        # one scope world satisfies the input, so the fallback branch of the
        # scope-preservation condition applies and holds
        sig, st, op = karl_fixture()
        alpha = parse_models("t", sig)
        post = op.apply(st, alpha)
        assert check_condition(st, post, alpha, "P9.ii", sig)

    def test_dropping_scope_world_fails_p9ii(self):
        st = EpistemicState(mask(0, 1), mask(0, 1), RankedOrder((mask(0, 1),)))
        alpha = mask(0, 1)
        post = EpistemicState(mask(0), mask(0), RankedOrder((mask(0),)))
        assert not check_condition(st, post, alpha, "P9.ii", AB)

    def test_assignment_conditions(self):
        _, karl, _ = karl_fixture()
        assert check_condition(karl, karl, 0, "LIM-FAITHFUL", Signature.of("z o t"))
        assert not check_condition(karl, karl, 0, "CLF", Signature.of("z o t"))
        fa = EpistemicState(mask(1), mask(0, 1, 2, 3), RankedOrder((mask(1), mask(0, 2, 3))))
        assert check_condition(fa, fa, 0, "FA1", AB)
        assert check_condition(fa, fa, 0, "FA2", AB)

    def test_unknown_condition(self):
        _, st, _ = karl_fixture()
        with pytest.raises(ValueError, match="SI1"):
            check_condition(st, st, 0, "NOPE", AB)

    def test_every_listed_condition_evaluates(self):
        sig, st, op = karl_fixture()
        alpha = parse_models("t", sig)
        post = op.apply(st, alpha)
        for cid in CONDITION_IDS:
            assert check_condition(st, post, alpha, cid, sig, op) in (True, False)


class TestEquivalences:
    def test_p15a_zero_mismatches_every_policy(self, faithful_gc):
        for policy in all_policies():
            op = RevisionOperator("dl", policy)
            assert verify_equivalence(op, faithful_gc, "P15a").holds

    def test_p13a_scope_monotony_characterised(self, faithful_gc):
        op = RevisionOperator("dl", UpdatePolicy("keep", "keep"))
        assert verify_equivalence(op, faithful_gc, "P13a").holds

    def test_doc_characterisation(self, faithful_gc):
        for policy in (UpdatePolicy("keep", "doc"), UpdatePolicy("lex", "keep")):
            op = RevisionOperator("dl", policy)
            assert verify_equivalence(op, faithful_gc, "P-DOC").holds

    def test_dp1_characterisation_is_one_sided(self, faithful_gc):
        # the condition side is necessary but not sufficient: every
        # mismatch has the conditions true and the postulate false
        v = verify_equivalence(DL_OP, faithful_gc, "P9", max_counterexamples=50)
        assert not v.holds
        assert all(ce.observed is False for ce in v.counterexamples)

    def test_unknown_theorem(self, faithful_gc):
        with pytest.raises(ValueError, match="P13a"):
            verify_equivalence(DL_OP, faithful_gc, "nope")


class TestRoundtrips:
    def test_dl_roundtrip(self, faithful):
        assert representation_roundtrip(DL_OP, faithful, "DL").holds

    def test_cl_roundtrip(self):
        uni = enumerate_states(AB, "clf", global_consistency=True)
        assert representation_roundtrip(RevisionOperator("cl"), uni, "CL").holds

    def test_il_roundtrip_and_constant_scope(self):
        scope = mask(1, 2)
        uni = enumerate_states(AB, "il", global_consistency=True, il_scope=scope)
        op = RevisionOperator("il", il_scope=scope)
        assert representation_roundtrip(op, uni, "IL").holds

    def test_agm_and_dp_roundtrips(self):
        uni = enumerate_states(AB, "fa")
        for family in ("AGM", "DP"):
            assert representation_roundtrip(RevisionOperator("agm"), uni, family).holds

    def test_unknown_family(self, faithful):
        with pytest.raises(ValueError):
            representation_roundtrip(DL_OP, faithful, "XX")


class TestMutation:
    def test_detection_rate(self, faithful_gc):
        v = mutation_detection(DL_OP, faithful_gc, trials=60, seed=1)
        assert v.holds
        assert v.seed == 1


def test_id_registries_are_disjoint_and_complete():
    assert len(set(POSTULATE_IDS)) == len(POSTULATE_IDS) == 38
    assert len(set(THEOREM_IDS)) == 18
    assert len(set(CONDITION_IDS)) == len(CONDITION_IDS)
