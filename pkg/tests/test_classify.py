from revlab.classify import (
    check_dc,
    check_ssc,
    classification_report,
    classify_state,
    find_witness_M,
    immanent_classes,
    inherent_classes,
    is_immanent,
    is_inherent,
    is_latent,
    is_reasonable,
    satisfies_S1,
    satisfies_S2,
    semantic_scope,
    syntactic_scope,
)
from revlab.fixtures import fig1_fixture, karl_fixture
from revlab.operators import RevisionOperator, UpdatePolicy
from revlab.orders import RankedOrder
from revlab.prop import Signature
from revlab.states import EpistemicState, StateUniverse, enumerate_states

AB = Signature.of("a b")
DL_OP = RevisionOperator("dl", UpdatePolicy("keep", "keep"))


def mask(*worlds):
    m = 0
    for w in worlds:
        m |= 1 << w
    return m


class TestS1S2:
    def test_believed_scope_world_is_s1(self):
        sig, st, op = karl_fixture()
        assert satisfies_S1(op, st, mask(2), sig)

    def test_believed_world_outside_scope_fails_s1(self):
        sig, st, op = karl_fixture()
        assert not satisfies_S1(op, st, mask(3), sig)

    def test_s1_vacuous_when_inconsistent_with_beliefs(self):
        sig, st, op = karl_fixture()
        assert satisfies_S1(op, st, mask(4), sig)  # beliefs miss world 4

    def test_unbelieved_scope_world_is_s2(self):
        sig, st, op = karl_fixture()
        assert satisfies_S2(op, st, mask(4), sig)

    def test_world_outside_beliefs_and_scope_fails_s2(self):
        sig, st, op = karl_fixture()
        assert not satisfies_S2(op, st, mask(5), sig)

    def test_inconsistent_state_fails_s2_outside_scope(self):
        st = EpistemicState(0, mask(1), RankedOrder((mask(1),)))
        assert not satisfies_S2(DL_OP, st, mask(2), AB)


class TestLatentReasonable:
    def test_karl_scope_minterm_latent(self):
        sig, st, op = karl_fixture()
        assert is_latent(op, st, mask(4), sig)

    def test_karl_nonscope_set_not_latent(self):
        sig, st, op = karl_fixture()
        assert not is_latent(op, st, mask(1, 2, 3) & ~st.scope | mask(3), sig)
        assert not is_latent(op, st, mask(3), sig)

    def test_bottom_never_latent_or_reasonable(self):
        sig, st, op = karl_fixture()
        assert not is_latent(op, st, 0, sig)
        assert not is_reasonable(op, st, 0, sig)

    def test_reasonable_iff_inside_scope_exhaustive(self):
        # the model-set characterisation of reasonable inputs
        for st in enumerate_states(AB, "faithful").states:
            cls = classify_state(DL_OP, st, AB)
            for alpha in range(16):
                want = alpha != 0 and alpha & ~st.scope == 0
                assert bool(cls.reasonable >> alpha & 1) == want

    def test_latency_splits_by_belief_membership_exhaustive(self):
        # world in beliefs: in scope iff its minterm is S1;
        # world outside beliefs: in scope iff its minterm is S2
        for st in enumerate_states(AB, "faithful").states:
            cls = classify_state(DL_OP, st, AB)
            for w in range(4):
                wm = 1 << w
                in_scope = bool(st.scope & wm)
                if st.bel & wm:
                    assert bool(cls.s1 >> wm & 1) == in_scope
                else:
                    assert bool(cls.s2 >> wm & 1) == in_scope


class TestScope:
    def test_agm_scope_is_everything(self):
        op = RevisionOperator("agm")
        for st in enumerate_states(AB, "fa").states[::6]:
            assert syntactic_scope(op, st, AB) == set(range(16))

    def test_karl_scope_shape(self):
        sig, st, op = karl_fixture()
        syn = syntactic_scope(op, st, sig)
        bel_classes = {c for c in range(256) if st.bel & ~c == 0}
        touching = {c for c in range(256) if c & st.scope}
        assert syn == bel_classes | touching
        assert syn == semantic_scope(st, sig)

    def test_posterior_karl_scope(self):
        sig, st, op = karl_fixture()
        post = op.apply(st, 0b10101010 & 0xAA)  # models of t
        syn = syntactic_scope(op, post, sig)
        assert syn == semantic_scope(post, sig)

    def test_scope_equality_exhaustive_n2(self):
        for st in enumerate_states(AB, "faithful").states:
            assert syntactic_scope(DL_OP, st, AB) == semantic_scope(st, AB)

    def test_inconsistent_state_scope_contains_bottom(self):
        st = EpistemicState(0, mask(1), RankedOrder((mask(1),)))
        assert 0 in semantic_scope(st, AB)
        assert 0 in syntactic_scope(DL_OP, st, AB)


class TestInherence:
    def test_agm_inherent_iff_single_model(self):
        uni = enumerate_states(AB, "fa")
        assert uni.is_unbiased()
        op = RevisionOperator("agm")
        inh = inherent_classes(op, uni)
        assert inh == sum(1 << (1 << w) for w in range(4))
        assert all(is_immanent(op, uni, a) for a in range(1, 16))
        assert not is_immanent(op, uni, 0)

    def test_cl_with_credible_set_equal_beliefs_has_none(self):
        states = tuple(
            EpistemicState(b, b, RankedOrder((b,))) for b in range(1, 16)
        )
        uni = StateUniverse(AB, "clf", True, None, states, None)
        op = RevisionOperator("cl")
        assert inherent_classes(op, uni) == 0
        assert immanent_classes(op, uni) == 0

    def test_il_inherent_iff_inside_fixed_scope(self):
        sig, _, _, op = fig1_fixture()
        uni = enumerate_states(sig, "il", global_consistency=True, il_scope=op.il_scope)
        for w in range(4):
            assert is_inherent(op, uni, 1 << w) == bool(op.il_scope >> w & 1)
        imm = immanent_classes(op, uni)
        for alpha in range(16):
            assert bool(imm >> alpha & 1) == (alpha != 0 and alpha & ~op.il_scope == 0)


class TestClosure:
    def test_touching_sets_satisfy_both_and_witness(self):
        classes = {c for c in range(1, 16) if c & mask(1, 2)}
        assert check_ssc(classes, AB)
        assert check_dc(classes, AB)
        assert find_witness_M(classes, AB) == mask(1, 2)

    def test_ssc_failure(self):
        assert not check_ssc({mask(1, 2)}, AB)

    def test_dc_failure_on_upward_closure(self):
        classes = {c for c in range(16) if mask(1, 2) & ~c == 0}
        assert check_ssc(classes, AB)
        assert not check_dc(classes, AB)
        assert find_witness_M(classes, AB) is None

    def test_scope_minus_beliefs_is_witnessed(self):
        # the non-belief part of every scope is exactly the classes meeting
        # the state's scope set, which the witness construction recovers
        for st in enumerate_states(AB, "faithful", global_consistency=True).states[::11]:
            touching = {c for c in range(1, 16) if c & st.scope}
            assert check_ssc(touching, AB) and check_dc(touching, AB)
            assert find_witness_M(touching, AB) == st.scope


class TestReport:
    def test_report_lines(self):
        sig, st, op = karl_fixture()
        lines = classification_report(op, st, None, sig)
        assert len(lines) == 256
        assert lines[0].startswith("class 0: scope=")
        uni = enumerate_states(AB, "fa")
        lines = classification_report(RevisionOperator("agm"), uni.states[0], uni, AB)
        assert "inherent=" in lines[1]
