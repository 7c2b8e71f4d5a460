import pytest

from ctxdl.core import (
    Bottom,
    Closure,
    ConceptAssert,
    ConceptAtom,
    ConceptIntersection,
    ConceptNeg,
    ConceptSub,
    Exists,
    Forall,
    Inverse,
    Ontology,
    Product,
    RoleAssert,
    RoleAtom,
    RoleIntersection,
    RoleNeg,
    Term,
    Top,
    TopCtx,
)
from ctxdl.relativize import (
    AlreadyRelativizedError,
    ContextualTermInSignatureError,
    relativize_concept,
    relativize_ontology,
    relativize_role,
)
from ctxdl.search import check_entailment, find_model
from ctxdl.semantics import Interpretation, NotEntailed, SatisfiableAt, is_model
from ctxdl.verify import curated_entailment_pairs, generate_corpus

from conftest import catom, cassert, nc, ratom

CTX = "CA"
TOP = TopCtx(CTX)


class TestConceptRules:
    def test_negation_gets_guard(self):
        assert relativize_concept(ConceptNeg(catom("C")), CTX) == ConceptIntersection(
            ConceptNeg(catom("C")), TOP
        )

    def test_atoms_unchanged(self):
        assert relativize_concept(catom("C"), CTX) == catom("C")

    def test_plain_top_becomes_context_top(self):
        assert relativize_concept(Exists(ratom("capitalOf"), Top()), CTX) == Exists(
            ratom("capitalOf"), TOP
        )

    def test_value_restriction_gets_guard(self):
        expr = Forall(ratom("R"), catom("C"))
        assert relativize_concept(expr, CTX) == ConceptIntersection(expr, TOP)

    def test_already_relativized_guard(self):
        with pytest.raises(AlreadyRelativizedError):
            relativize_concept(Exists(ratom("R"), TOP), CTX)

    def test_other_contexts_pass_through(self):
        other = TopCtx("other")
        assert relativize_concept(other, CTX) == other


class TestRoleRules:
    def test_negation_gets_square_guard(self):
        assert relativize_role(RoleNeg(ratom("R")), CTX) == RoleIntersection(
            RoleNeg(ratom("R")), Product(TOP, TOP)
        )

    def test_inverse_recurses_without_guard(self):
        assert relativize_role(Inverse(ratom("R")), CTX) == Inverse(ratom("R"))

    def test_closure_gets_square_guard(self):
        assert relativize_role(Closure(ratom("R")), CTX) == RoleIntersection(
            Closure(ratom("R")), Product(TOP, TOP)
        )


class TestRelativizeOntology:
    def test_irreflexivity_axiom(self, irreflexivity_ontology):
        only_tbox = Ontology([irreflexivity_ontology.axioms[0]])
        result = relativize_ontology(only_tbox, CTX)
        expected_axiom = ConceptSub(
            Exists(ratom("capitalOf"), TOP),
            ConceptIntersection(Forall(Inverse(ratom("capitalOf")), Bottom()), TOP),
        )
        assert result.axioms[0] == expected_axiom
        # one signature term, so exactly four membership axioms follow
        assert len(result.axioms) == 5
        term = nc("capitalOf")
        assert set(result.axioms[1:]) == {
            ConceptSub(ConceptAtom(term), TOP),
            ConceptAssert(TOP, term),
            ConceptSub(Exists(RoleAtom(term), Top()), TOP),
            ConceptSub(Top(), Forall(RoleAtom(term), TOP)),
        }

    def test_membership_axioms_keep_plain_top(self):
        result = relativize_ontology(Ontology([cassert("C", "a")]), CTX)
        exists_axioms = [
            ax for ax in result.axioms
            if isinstance(ax, ConceptSub) and isinstance(ax.left, Exists)
        ]
        forall_axioms = [
            ax for ax in result.axioms
            if isinstance(ax, ConceptSub) and isinstance(ax.left, Top)
        ]
        assert all(isinstance(ax.left.concept, Top) for ax in exists_axioms)
        assert all(isinstance(ax.right.concept, TopCtx) for ax in forall_axioms)

    def test_empty_ontology_stays_empty(self):
        assert relativize_ontology(Ontology(), CTX).axioms == ()

    def test_assertion_with_two_terms_gets_eight_extras(self):
        result = relativize_ontology(Ontology([cassert("C", "a")]), CTX)
        assert result.axioms[0] == cassert("C", "a")
        assert len(result.axioms) == 9

    def test_contextual_signature_rejected(self):
        onto = Ontology([RoleAssert(RoleAtom(Term.ctx("R@c1")), nc("a"), nc("b"))])
        with pytest.raises(ContextualTermInSignatureError):
            relativize_ontology(onto, CTX)

    def test_relativizing_twice_raises(self):
        once = relativize_ontology(Ontology([cassert("C", "a")]), CTX)
        with pytest.raises(AlreadyRelativizedError):
            relativize_ontology(once, CTX)


def _has_cardinality(value) -> bool:
    from ctxdl.core import AtLeast, AtMost

    stack = [value]
    while stack:
        v = stack.pop()
        if isinstance(v, (AtMost, AtLeast)):
            return True
        if hasattr(v, "__dataclass_fields__"):
            stack.extend(getattr(v, f) for f in v.__dataclass_fields__)
    return False


def extension_safe_corpus(seed, count):
    """Ontologies from the fragment where relativized models provably survive
    domain extension: everything except cardinality restrictions, which leak
    fresh elements because the rewrite leaves them unguarded (see
    test_cardinality_restrictions_leak_fresh_elements)."""
    out = []
    offset = 0
    while len(out) < count:
        batch = generate_corpus(seed=seed + offset, count=count, max_terms=3, max_axioms=3)
        out.extend(
            onto for onto, _ in batch if not any(_has_cardinality(ax) for ax in onto.axioms)
        )
        offset += 1
    return out[:count]


class TestModelTheory:
    """The structural model constructions behind the relativization claims."""

    def corpus(self, count=25):
        return extension_safe_corpus(77, count)

    def test_models_extend_to_relativization(self):
        # model of O + fresh elements + context top fixed to the old domain
        # must model the relativized ontology
        checked = 0
        for onto in self.corpus():
            verdict = find_model(onto, 3)
            if not isinstance(verdict, SatisfiableAt):
                continue
            checked += 1
            base = verdict.model
            rel = relativize_ontology(onto, CTX)
            extended = Interpretation(
                base.size + 2,
                dict(base.indiv),
                dict(base.conc),
                dict(base.role),
                {CTX: base.domain},
            )
            assert is_model(extended, rel), onto.axioms
        assert checked >= 10

    def test_models_of_relativization_restrict_to_originals(self):
        checked = 0
        for onto in self.corpus():
            if not onto.signature:
                continue
            rel = relativize_ontology(onto, CTX)
            verdict = find_model(rel, 3)
            if not isinstance(verdict, SatisfiableAt):
                continue
            model = verdict.model
            top = model.top_ctx[CTX]
            if not top:
                continue
            checked += 1
            # renumber the context-top elements into a compact domain
            mapping = {e: i for i, e in enumerate(sorted(top))}
            restricted = Interpretation(
                len(top),
                {t: mapping[e] for t, e in model.indiv.items()},
                {t: frozenset(mapping[x] for x in s if x in top) for t, s in model.conc.items()},
                {
                    t: frozenset(
                        (mapping[x], mapping[y]) for x, y in s if x in top and y in top
                    )
                    for t, s in model.role.items()
                },
                {},
            )
            assert is_model(restricted, onto), onto.axioms
        assert checked >= 10

    def test_relativization_preserves_curated_entailments(self):
        for name, o1, o2 in curated_entailment_pairs():
            r1 = relativize_ontology(o1, CTX)
            r2 = relativize_ontology(o2, CTX)
            verdict = check_entailment(r1, r2, 3)
            assert not isinstance(verdict, NotEntailed), name

    def test_relativized_consistent_ontology_stays_consistent(self):
        for onto in self.corpus(15):
            if not isinstance(find_model(onto, 3), SatisfiableAt):
                continue
            rel = relativize_ontology(onto, CTX)
            assert isinstance(find_model(rel, 3), SatisfiableAt), onto.axioms

    def test_cardinality_restrictions_leak_fresh_elements(self):
        # A fresh element has no successors, so it lands inside any
        # atmost-restriction; the rewrite leaves cardinalities unguarded, so
        # the extended interpretation stops being a model. Pinned on purpose:
        # the extension property holds only for the cardinality-free fragment.
        from ctxdl.core import AtMost

        onto = Ontology(
            [
                ConceptSub(AtMost(0, ratom("R"), Top()), catom("C")),
                cassert("C", "a"),
            ]
        )
        verdict = find_model(onto, 2)
        assert isinstance(verdict, SatisfiableAt)
        base = verdict.model
        rel = relativize_ontology(onto, CTX)
        extended = Interpretation(
            base.size + 1, dict(base.indiv), dict(base.conc), dict(base.role), {CTX: base.domain}
        )
        assert not is_model(extended, rel)
