import pytest

from ctxdl.annotation import AnnotatedOntology, validate_annotation
from ctxdl.core import (
    Bottom,
    ConceptSub,
    Nominals,
    Ontology,
    Top,
)
from ctxdl.semantics import (
    NoModelUpTo,
    NotEntailed,
    SatisfiableAt,
    is_model,
)
from ctxdl.strategies import Strategy, contextualize
from ctxdl.verify import (
    Outcome,
    PremiseNotEntailedError,
    ProbeResult,
    Property,
    check_entailment_preservation,
    check_inconsistency_preservation,
    check_soundness,
    curated_entailment_pairs,
    curated_inconsistent_ontologies,
    generate_corpus,
    probe_domain_extensibility,
)

from conftest import cassert, catom, nc, rassert

REIFICATION = (
    Strategy.RDF_REIFICATION,
    Strategy.NARY_TWO_ROLE,
    Strategy.NARY_CONCEPT_ANCHORED,
    Strategy.SINGLETON_PROPERTY,
)


class TestSoundness:
    def test_ndterms_on_running_example(self, babylon_annotation):
        onto = Ontology([rassert("capital", "babylon", "babylonianEmpire")])
        report = check_soundness(Strategy.ND_TERMS, onto, babylon_annotation, 3)
        assert report.outcome is Outcome.HOLDS
        assert report.property is Property.SOUNDNESS
        assert isinstance(report.conclusion_verdict, SatisfiableAt)

    def test_inconsistent_premise_is_vacuous(self, small_annotation):
        onto = Ontology([ConceptSub(catom("C"), Bottom()), cassert("C", "a")])
        for strategy in Strategy:
            report = check_soundness(strategy, onto, small_annotation, 3)
            assert report.outcome is Outcome.INCONCLUSIVE_AT_BOUND
            assert report.conclusion_verdict is None

    def test_rdf_reification_on_disjoint_vocabulary(self, babylon_annotation):
        onto = Ontology([rassert("capital", "babylon", "babylonianEmpire")])
        report = check_soundness(Strategy.RDF_REIFICATION, onto, babylon_annotation, 3)
        assert report.outcome is Outcome.HOLDS

    def test_generated_corpus_never_violated(self):
        corpus = generate_corpus(seed=20250810, count=40, max_terms=4, max_axioms=4)
        for onto, ca in corpus:
            report = check_soundness(Strategy.ND_TERMS, onto, ca, 3)
            assert report.outcome is not Outcome.VIOLATED, onto.axioms


class TestInconsistencyPreservation:
    def test_rdf_loses_irreflexivity_contradiction(self, irreflexivity_ontology, babylon_annotation):
        report = check_inconsistency_preservation(
            Strategy.RDF_REIFICATION, irreflexivity_ontology, babylon_annotation, 3
        )
        assert report.outcome is Outcome.VIOLATED
        witness = report.witness()
        assert witness is not None
        reified = contextualize(
            Strategy.RDF_REIFICATION, AnnotatedOntology(irreflexivity_ontology, babylon_annotation)
        )
        assert is_model(witness, reified)

    def test_ndterms_keeps_irreflexivity_contradiction(self, irreflexivity_ontology, babylon_annotation):
        report = check_inconsistency_preservation(
            Strategy.ND_TERMS, irreflexivity_ontology, babylon_annotation, 3
        )
        assert report.outcome is Outcome.HOLDS
        assert report.conclusion_verdict == NoModelUpTo(3)

    def test_consistent_premise_is_vacuous(self, small_annotation):
        report = check_inconsistency_preservation(
            Strategy.ND_TERMS, Ontology([cassert("C", "a")]), small_annotation, 3
        )
        assert report.outcome is Outcome.INCONCLUSIVE_AT_BOUND

    def test_curated_suite_outcomes(self, small_annotation):
        seeds = dict(curated_inconsistent_ontologies())
        for name, onto in seeds.items():
            report = check_inconsistency_preservation(Strategy.ND_TERMS, onto, small_annotation, 3)
            assert report.outcome is Outcome.HOLDS, name
        for strategy in REIFICATION:
            report = check_inconsistency_preservation(
                strategy, seeds["irreflexivity"], small_annotation, 3
            )
            assert report.outcome is Outcome.VIOLATED, strategy
        # NdFluents keeps role-level contradictions but loses nominal coupling
        report = check_inconsistency_preservation(
            Strategy.ND_FLUENTS, seeds["irreflexivity"], small_annotation, 3
        )
        assert report.outcome is Outcome.HOLDS
        report = check_inconsistency_preservation(
            Strategy.ND_FLUENTS, seeds["nominal-coupling"], small_annotation, 3
        )
        assert report.outcome is Outcome.VIOLATED


class TestEntailmentPreservation:
    def test_rdf_loses_role_assertion_entailment(self, example7_pair, babylon_annotation):
        premise, conclusion = example7_pair
        report = check_entailment_preservation(
            Strategy.RDF_REIFICATION, premise, conclusion, babylon_annotation, 3
        )
        assert report.outcome is Outcome.VIOLATED
        assert isinstance(report.conclusion_verdict, NotEntailed)

    def test_ndterms_preserves_role_assertion_entailment(self, example7_pair, babylon_annotation):
        premise, conclusion = example7_pair
        report = check_entailment_preservation(
            Strategy.ND_TERMS, premise, conclusion, babylon_annotation, 3
        )
        assert report.outcome is Outcome.HOLDS

    def test_identity_always_preserved(self, example7_pair, small_annotation):
        premise, _ = example7_pair
        for strategy in Strategy:
            report = check_entailment_preservation(strategy, premise, premise, small_annotation, 3)
            assert report.outcome is Outcome.HOLDS, strategy

    def test_premise_failure_raises(self, small_annotation):
        o1 = Ontology([cassert("C", "a")])
        o2 = Ontology([cassert("D", "a")])
        with pytest.raises(PremiseNotEntailedError):
            check_entailment_preservation(Strategy.ND_TERMS, o1, o2, small_annotation, 3)

    @pytest.mark.filterwarnings("ignore::ctxdl.strategies.NonAtomicAssertionWarning")
    def test_curated_suite_outcomes(self, small_annotation):
        for name, o1, o2 in curated_entailment_pairs():
            nd = check_entailment_preservation(Strategy.ND_TERMS, o1, o2, small_annotation, 3)
            assert nd.outcome is Outcome.HOLDS, name
        by_name = {name: (o1, o2) for name, o1, o2 in curated_entailment_pairs()}
        for name in ("subsumption-propagation", "role-chain"):
            o1, o2 = by_name[name]
            rdf = check_entailment_preservation(Strategy.RDF_REIFICATION, o1, o2, small_annotation, 3)
            assert rdf.outcome is Outcome.VIOLATED, name
        o1, o2 = by_name["pure-tbox"]
        rdf = check_entailment_preservation(Strategy.RDF_REIFICATION, o1, o2, small_annotation, 3)
        assert rdf.outcome is Outcome.HOLDS


class TestExtensibilityProbe:
    def test_atomic_assertions_are_extensible(self):
        probe = probe_domain_extensibility(Ontology([cassert("C", "a")]), 2)
        assert probe.result is ProbeResult.EXTENSIBLE_OBSERVED

    def test_domain_pinned_by_nominal_is_not(self):
        onto = Ontology([ConceptSub(Top(), Nominals((nc("a"),)))])
        probe = probe_domain_extensibility(onto, 1)
        assert probe.result is ProbeResult.COUNTEREXAMPLE_FOUND
        assert probe.model is not None

    def test_relativized_assertions_are_extensible(self):
        from ctxdl.relativize import relativize_ontology

        rel = relativize_ontology(Ontology([cassert("C", "a")]), "CA")
        probe = probe_domain_extensibility(rel, 2)
        assert probe.result is ProbeResult.EXTENSIBLE_OBSERVED

    def test_inconsistent_base_reported(self):
        onto = Ontology([ConceptSub(catom("C"), Bottom()), cassert("C", "a")])
        probe = probe_domain_extensibility(onto, 2)
        assert probe.result is ProbeResult.NO_MODEL_AT_BASE


class TestGenerateCorpus:
    def test_postconditions(self):
        corpus = generate_corpus(seed=1, count=10, max_terms=4, max_axioms=4)
        assert len(corpus) == 10
        for onto, ca in corpus:
            assert not (set(onto.signature) & ca.signature())
            revalidated = validate_annotation(ca.anchor, ca.abox, ctx_id=ca.ctx_id)
            assert revalidated == ca

    def test_determinism(self):
        first = generate_corpus(seed=1, count=10, max_terms=4, max_axioms=4)
        second = generate_corpus(seed=1, count=10, max_terms=4, max_axioms=4)
        assert first == second
        third = generate_corpus(seed=2, count=10, max_terms=4, max_axioms=4)
        assert first != third

    def test_feasibility_limits(self):
        with pytest.raises(ValueError):
            generate_corpus(seed=1, count=1, max_terms=6, max_axioms=4)
        with pytest.raises(ValueError):
            generate_corpus(seed=1, count=1, max_terms=4, max_axioms=7)
