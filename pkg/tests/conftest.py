import pytest

from ctxdl import (
    ConceptAssert,
    ConceptAtom,
    ConceptSub,
    Exists,
    Forall,
    Inverse,
    Bottom,
    Ontology,
    RoleAssert,
    RoleAtom,
    RoleSub,
    Term,
    Top,
    validate_annotation,
)


def nc(name):
    return Term.nc(name)


def catom(name):
    return ConceptAtom(Term.nc(name))


def ratom(name):
    return RoleAtom(Term.nc(name))


def cassert(concept_name, ind_name):
    return ConceptAssert(catom(concept_name), nc(ind_name))


def rassert(role_name, a, b):
    return RoleAssert(ratom(role_name), nc(a), nc(b))


@pytest.fixture
def babylon_annotation():
    """The validity-interval + provenance annotation used throughout."""
    abox = [
        rassert("validity", "a", "t"),
        cassert("Interval", "t"),
        rassert("from", "t", "609BC"),
        rassert("to", "t", "539BC"),
        rassert("prov", "a", "w"),
        rassert("name", "w", "wikipedia"),
        cassert("Wiki", "w"),
    ]
    return validate_annotation(nc("a"), abox, ctx_id="CA")


@pytest.fixture
def small_annotation():
    """A minimal connected annotation whose vocabulary avoids test ontologies."""
    abox = [
        rassert("source", "anch", "doc"),
        cassert("Document", "doc"),
    ]
    return validate_annotation(nc("anch"), abox, ctx_id="K1")


@pytest.fixture
def irreflexivity_ontology():
    cap = ratom("capitalOf")
    return Ontology(
        [
            ConceptSub(Exists(cap, Top()), Forall(Inverse(cap), Bottom())),
            rassert("capitalOf", "babylon", "babylon"),
        ]
    )


@pytest.fixture
def example7_pair():
    premise = Ontology(
        [
            RoleSub(ratom("capitalOf"), ratom("cityOf")),
            rassert("capitalOf", "babylon", "babylonianEmpire"),
        ]
    )
    conclusion = Ontology([rassert("cityOf", "babylon", "babylonianEmpire")])
    return premise, conclusion
