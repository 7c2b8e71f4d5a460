"""Contextualization strategies: embed an annotated statement or ontology
into one plain ontology that carries both the statement and its context.

All strategies share the same contract: the annotation's assertions are
reproduced with the anchor replaced by a fresh anchor term, and the statement
signature maps injectively into the output. They differ in how much of the
statement is rewritten:

* NdTerms relativizes the statement to a context top, renames every term
  (including the top) into a per-context copy, and links the copies to the
  originals (isContextualPartOf) and to the context anchor (isInContext).
* NdFluents renames only individuals in ABox assertions; no relativization.
* RDF reification replaces an atomic role assertion by subject/predicate/
  object triples hung off a per-statement anchor.
* N-ary relations split an atomic role assertion through a hub individual,
  with derived roles name#1/name#2 (and optionally a derived hub concept).
* The singleton property turns the per-statement anchor itself into a role
  holding exactly between the original arguments.

The reification-style strategies annotate role assertions only; every other
axiom passes through untouched and unannotated.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .annotation import AnnotatedOntology, AnnotatedStatement, ContextualAnnotation
from .core import (
    AtLeast,
    AtMost,
    Axiom,
    Bottom,
    Closure,
    Compose,
    ConceptAssert,
    ConceptAtom,
    ConceptExpr,
    ConceptIntersection,
    ConceptNeg,
    ConceptSub,
    ConceptUnion,
    Exists,
    Forall,
    Inverse,
    Nominals,
    Ontology,
    Product,
    RoleAssert,
    RoleAtom,
    RoleExpr,
    RoleIntersection,
    RoleNeg,
    RoleSub,
    RoleUnion,
    Term,
    TermKind,
    Top,
    TopCtx,
    signature_of,
    stable_hash,
)
from .relativize import ContextualTermInSignatureError, relativize_ontology

# Reserved vocabulary shared by all contexts.
IS_CONTEXTUAL_PART_OF = Term.nc("isContextualPartOf")
IS_IN_CONTEXT = Term.nc("isInContext")
SUBJECT = Term.nc("subject")
PREDICATE = Term.nc("predicate")
OBJECT = Term.nc("object")
SINGLETON_PROPERTY_OF = Term.nc("singletonPropertyOf")


class Strategy(Enum):
    ND_TERMS = "ndterms"
    ND_FLUENTS = "ndfluents"
    RDF_REIFICATION = "rdf"
    NARY_TWO_ROLE = "nary"
    NARY_CONCEPT_ANCHORED = "nary-concept"
    SINGLETON_PROPERTY = "singleton"

    @classmethod
    def from_cli_name(cls, name: str) -> "Strategy":
        for member in cls:
            if member.value == name:
                return member
        raise ValueError(f"unknown strategy {name!r}")


REIFICATION_STRATEGIES = frozenset(
    {Strategy.RDF_REIFICATION, Strategy.NARY_TWO_ROLE, Strategy.NARY_CONCEPT_ANCHORED,
     Strategy.SINGLETON_PROPERTY}
)


class SignatureOverlapWarning(UserWarning):
    def __init__(self, terms: frozenset[Term]):
        names = ", ".join(sorted(t.name for t in terms))
        super().__init__(f"statement and annotation share terms: {names}")
        self.terms = terms


class NonAtomicAssertionWarning(UserWarning):
    def __init__(self, axiom: Axiom):
        super().__init__(f"reification skips non-atomic role assertion: {axiom!r}")
        self.axiom = axiom


class DuplicateContextIdError(ValueError):
    def __init__(self, ctx_id: str):
        super().__init__(f"duplicate context id {ctx_id!r}")
        self.ctx_id = ctx_id


# ---------------------------------------------------------------------------
# Renaming and anchors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RenamingScheme:
    """Per-context injective renaming of non-contextual terms.

    Renamed names carry an "@<ctx>" suffix, so images of distinct contexts
    never collide and the original name stays recoverable by eye.
    """

    ctx_id: str

    def rename(self, t: Term) -> Term:
        return Term(f"{t.name}@{self.ctx_id}", TermKind.CONTEXTUAL)

    def top_term(self) -> Term:
        """The contextual concept standing in for this context's top."""
        return Term(f"top@{self.ctx_id}", TermKind.CONTEXTUAL)


def annotation_anchor(ca: ContextualAnnotation) -> Term:
    """The anchor-kind replacement for the annotation's own anchor."""
    return Term(f"ctx@{ca.ctx_id}", TermKind.ANCHOR)


def statement_anchor(axiom: Axiom, ca: ContextualAnnotation) -> Term:
    """A per-statement anchor; distinct statements get distinct anchors."""
    return Term(f"st@{ca.ctx_id}@{stable_hash(axiom)}", TermKind.ANCHOR)


def _rename_concept(c: ConceptExpr, scheme: RenamingScheme) -> ConceptExpr:
    if isinstance(c, (Top, Bottom)):
        return c
    if isinstance(c, TopCtx):
        return ConceptAtom(Term(f"top@{c.ctx_id}", TermKind.CONTEXTUAL))
    if isinstance(c, ConceptAtom):
        return ConceptAtom(scheme.rename(c.term))
    if isinstance(c, ConceptUnion):
        return ConceptUnion(_rename_concept(c.left, scheme), _rename_concept(c.right, scheme))
    if isinstance(c, ConceptIntersection):
        return ConceptIntersection(_rename_concept(c.left, scheme), _rename_concept(c.right, scheme))
    if isinstance(c, ConceptNeg):
        return ConceptNeg(_rename_concept(c.sub, scheme))
    if isinstance(c, Exists):
        return Exists(_rename_role(c.role, scheme), _rename_concept(c.concept, scheme))
    if isinstance(c, Forall):
        return Forall(_rename_role(c.role, scheme), _rename_concept(c.concept, scheme))
    if isinstance(c, AtMost):
        return AtMost(c.bound, _rename_role(c.role, scheme), _rename_concept(c.concept, scheme))
    if isinstance(c, AtLeast):
        return AtLeast(c.bound, _rename_role(c.role, scheme), _rename_concept(c.concept, scheme))
    if isinstance(c, Nominals):
        return Nominals(tuple(scheme.rename(u) for u in c.members))
    raise TypeError(f"not a concept expression: {c!r}")


def _rename_role(r: RoleExpr, scheme: RenamingScheme) -> RoleExpr:
    if isinstance(r, RoleAtom):
        return RoleAtom(scheme.rename(r.term))
    if isinstance(r, RoleUnion):
        return RoleUnion(_rename_role(r.left, scheme), _rename_role(r.right, scheme))
    if isinstance(r, RoleIntersection):
        return RoleIntersection(_rename_role(r.left, scheme), _rename_role(r.right, scheme))
    if isinstance(r, RoleNeg):
        return RoleNeg(_rename_role(r.sub, scheme))
    if isinstance(r, Inverse):
        return Inverse(_rename_role(r.sub, scheme))
    if isinstance(r, Compose):
        return Compose(_rename_role(r.left, scheme), _rename_role(r.right, scheme))
    if isinstance(r, Closure):
        return Closure(_rename_role(r.sub, scheme))
    if isinstance(r, Product):
        return Product(_rename_concept(r.left, scheme), _rename_concept(r.right, scheme))
    raise TypeError(f"not a role expression: {r!r}")


def rename_axiom(ax: Axiom, scheme: RenamingScheme) -> Axiom:
    """Rename every term of the axiom into the scheme's context."""
    if isinstance(ax, ConceptSub):
        return ConceptSub(_rename_concept(ax.left, scheme), _rename_concept(ax.right, scheme))
    if isinstance(ax, RoleSub):
        return RoleSub(_rename_role(ax.left, scheme), _rename_role(ax.right, scheme))
    if isinstance(ax, ConceptAssert):
        return ConceptAssert(_rename_concept(ax.concept, scheme), scheme.rename(ax.individual))
    if isinstance(ax, RoleAssert):
        return RoleAssert(_rename_role(ax.role, scheme), scheme.rename(ax.subject), scheme.rename(ax.object))
    raise TypeError(f"not an axiom: {ax!r}")


def _rename_nominals_c(c: ConceptExpr, scheme: RenamingScheme) -> ConceptExpr:
    if isinstance(c, Nominals):
        return Nominals(tuple(scheme.rename(u) for u in c.members))
    if isinstance(c, (Top, Bottom, TopCtx, ConceptAtom)):
        return c
    if isinstance(c, ConceptUnion):
        return ConceptUnion(_rename_nominals_c(c.left, scheme), _rename_nominals_c(c.right, scheme))
    if isinstance(c, ConceptIntersection):
        return ConceptIntersection(_rename_nominals_c(c.left, scheme), _rename_nominals_c(c.right, scheme))
    if isinstance(c, ConceptNeg):
        return ConceptNeg(_rename_nominals_c(c.sub, scheme))
    if isinstance(c, Exists):
        return Exists(_rename_nominals_r(c.role, scheme), _rename_nominals_c(c.concept, scheme))
    if isinstance(c, Forall):
        return Forall(_rename_nominals_r(c.role, scheme), _rename_nominals_c(c.concept, scheme))
    if isinstance(c, AtMost):
        return AtMost(c.bound, _rename_nominals_r(c.role, scheme), _rename_nominals_c(c.concept, scheme))
    if isinstance(c, AtLeast):
        return AtLeast(c.bound, _rename_nominals_r(c.role, scheme), _rename_nominals_c(c.concept, scheme))
    raise TypeError(f"not a concept expression: {c!r}")


def _rename_nominals_r(r: RoleExpr, scheme: RenamingScheme) -> RoleExpr:
    if isinstance(r, RoleAtom):
        return r
    if isinstance(r, RoleUnion):
        return RoleUnion(_rename_nominals_r(r.left, scheme), _rename_nominals_r(r.right, scheme))
    if isinstance(r, RoleIntersection):
        return RoleIntersection(_rename_nominals_r(r.left, scheme), _rename_nominals_r(r.right, scheme))
    if isinstance(r, RoleNeg):
        return RoleNeg(_rename_nominals_r(r.sub, scheme))
    if isinstance(r, Inverse):
        return Inverse(_rename_nominals_r(r.sub, scheme))
    if isinstance(r, Compose):
        return Compose(_rename_nominals_r(r.left, scheme), _rename_nominals_r(r.right, scheme))
    if isinstance(r, Closure):
        return Closure(_rename_nominals_r(r.sub, scheme))
    if isinstance(r, Product):
        return Product(_rename_nominals_c(r.left, scheme), _rename_nominals_c(r.right, scheme))
    raise TypeError(f"not a role expression: {r!r}")


# ---------------------------------------------------------------------------
# The shared context part
# ---------------------------------------------------------------------------


def cx_of_annotation(ca: ContextualAnnotation, anchor_replacement: Term) -> list[Axiom]:
    """The annotation's assertions with the anchor swapped for a fresh term
    in argument positions; everything else is copied verbatim."""
    if anchor_replacement in ca.signature():
        raise ValueError(f"replacement {anchor_replacement.name!r} already occurs in the annotation")
    out: list[Axiom] = []
    for ax in ca.abox:
        if isinstance(ax, ConceptAssert):
            ind = anchor_replacement if ax.individual == ca.anchor else ax.individual
            out.append(ConceptAssert(ax.concept, ind))
        elif isinstance(ax, RoleAssert):
            subj = anchor_replacement if ax.subject == ca.anchor else ax.subject
            obj = anchor_replacement if ax.object == ca.anchor else ax.object
            out.append(RoleAssert(ax.role, subj, obj))
        else:
            out.append(ax)
    return out


# ---------------------------------------------------------------------------
# Per-statement transformations
# ---------------------------------------------------------------------------


def _ndterms_statement(axiom: Axiom, ca: ContextualAnnotation) -> list[Axiom]:
    scheme = RenamingScheme(ca.ctx_id)
    ctx_anchor = annotation_anchor(ca)
    relativized = relativize_ontology(Ontology([axiom]), ca.ctx_id)
    out = [rename_axiom(ax, scheme) for ax in relativized.axioms]
    terms = sorted(signature_of(axiom), key=Term.sort_key)
    for t in terms:
        out.append(RoleAssert(RoleAtom(IS_CONTEXTUAL_PART_OF), scheme.rename(t), t))
    for t in terms:
        out.append(RoleAssert(RoleAtom(IS_IN_CONTEXT), scheme.rename(t), ctx_anchor))
    out.extend(cx_of_annotation(ca, ctx_anchor))
    return out


def _ndfluents_statement(axiom: Axiom, ca: ContextualAnnotation) -> list[Axiom]:
    scheme = RenamingScheme(ca.ctx_id)
    ctx_anchor = annotation_anchor(ca)
    renamed: list[Term] = []
    if isinstance(axiom, ConceptAssert):
        nominal_members = [u for u in signature_of(axiom.concept) if _occurs_in_nominal(axiom.concept, u)]
        renamed = sorted(set(nominal_members) | {axiom.individual}, key=Term.sort_key)
        new_axiom: Axiom = ConceptAssert(_rename_nominals_c(axiom.concept, scheme), scheme.rename(axiom.individual))
    elif isinstance(axiom, RoleAssert):
        nominal_members = [u for u in signature_of(axiom.role) if _occurs_in_nominal_role(axiom.role, u)]
        renamed = sorted(set(nominal_members) | {axiom.subject, axiom.object}, key=Term.sort_key)
        new_axiom = RoleAssert(
            _rename_nominals_r(axiom.role, scheme),
            scheme.rename(axiom.subject),
            scheme.rename(axiom.object),
        )
    else:
        new_axiom = axiom
    out: list[Axiom] = [new_axiom]
    for t in renamed:
        out.append(RoleAssert(RoleAtom(IS_CONTEXTUAL_PART_OF), scheme.rename(t), t))
    for t in renamed:
        out.append(RoleAssert(RoleAtom(IS_IN_CONTEXT), scheme.rename(t), ctx_anchor))
    out.extend(cx_of_annotation(ca, ctx_anchor))
    return out


def _occurs_in_nominal(c: ConceptExpr, term: Term) -> bool:
    if isinstance(c, Nominals):
        return term in c.members
    if isinstance(c, (Top, Bottom, TopCtx, ConceptAtom)):
        return False
    if isinstance(c, (ConceptUnion, ConceptIntersection)):
        return _occurs_in_nominal(c.left, term) or _occurs_in_nominal(c.right, term)
    if isinstance(c, ConceptNeg):
        return _occurs_in_nominal(c.sub, term)
    if isinstance(c, (Exists, Forall, AtMost, AtLeast)):
        return _occurs_in_nominal_role(c.role, term) or _occurs_in_nominal(c.concept, term)
    raise TypeError(f"not a concept expression: {c!r}")


def _occurs_in_nominal_role(r: RoleExpr, term: Term) -> bool:
    if isinstance(r, RoleAtom):
        return False
    if isinstance(r, (RoleUnion, RoleIntersection, Compose)):
        return _occurs_in_nominal_role(r.left, term) or _occurs_in_nominal_role(r.right, term)
    if isinstance(r, (RoleNeg, Inverse, Closure)):
        return _occurs_in_nominal_role(r.sub, term)
    if isinstance(r, Product):
        return _occurs_in_nominal(r.left, term) or _occurs_in_nominal(r.right, term)
    raise TypeError(f"not a role expression: {r!r}")


def _atomic_role_assertion(axiom: Axiom) -> bool:
    return isinstance(axiom, RoleAssert) and isinstance(axiom.role, RoleAtom)


def _reified_passthrough(axiom: Axiom) -> list[Axiom]:
    if isinstance(axiom, RoleAssert):
        warnings.warn(NonAtomicAssertionWarning(axiom), stacklevel=4)
    return [axiom]


def _rdf_statement(axiom: Axiom, ca: ContextualAnnotation) -> list[Axiom]:
    if not _atomic_role_assertion(axiom):
        return _reified_passthrough(axiom)
    anchor = statement_anchor(axiom, ca)
    out: list[Axiom] = [
        RoleAssert(RoleAtom(SUBJECT), anchor, axiom.subject),
        RoleAssert(RoleAtom(PREDICATE), anchor, axiom.role.term),
        RoleAssert(RoleAtom(OBJECT), anchor, axiom.object),
    ]
    out.extend(cx_of_annotation(ca, anchor))
    return out


def derived_role(role: Term, position: int) -> Term:
    return Term.nc(f"{role.name}#{position}")


def derived_concept(role: Term) -> Term:
    return Term.nc(f"C#{role.name}")


def _nary_statement(axiom: Axiom, ca: ContextualAnnotation, concept_anchored: bool) -> list[Axiom]:
    if not _atomic_role_assertion(axiom):
        return _reified_passthrough(axiom)
    anchor = statement_anchor(axiom, ca)
    role = axiom.role.term
    if concept_anchored:
        out: list[Axiom] = [
            ConceptAssert(ConceptAtom(derived_concept(role)), anchor),
            RoleAssert(RoleAtom(derived_role(role, 1)), anchor, axiom.subject),
            RoleAssert(RoleAtom(derived_role(role, 2)), anchor, axiom.object),
        ]
    else:
        out = [
            RoleAssert(RoleAtom(derived_role(role, 1)), axiom.subject, anchor),
            RoleAssert(RoleAtom(derived_role(role, 2)), anchor, axiom.object),
        ]
    out.extend(cx_of_annotation(ca, anchor))
    return out


def _singleton_statement(axiom: Axiom, ca: ContextualAnnotation) -> list[Axiom]:
    if not _atomic_role_assertion(axiom):
        return _reified_passthrough(axiom)
    anchor = statement_anchor(axiom, ca)
    subject_nominal = Nominals((axiom.subject,))
    image = Exists(RoleAtom(anchor), Nominals((axiom.object,)))
    out: list[Axiom] = [
        RoleAssert(RoleAtom(anchor), axiom.subject, axiom.object),
        ConceptSub(subject_nominal, image),
        ConceptSub(image, subject_nominal),
        RoleAssert(RoleAtom(SINGLETON_PROPERTY_OF), anchor, axiom.role.term),
    ]
    out.extend(cx_of_annotation(ca, anchor))
    return out


_STATEMENT_TRANSFORMS = {
    Strategy.ND_TERMS: _ndterms_statement,
    Strategy.ND_FLUENTS: _ndfluents_statement,
    Strategy.RDF_REIFICATION: _rdf_statement,
    Strategy.NARY_TWO_ROLE: lambda ax, ca: _nary_statement(ax, ca, concept_anchored=False),
    Strategy.NARY_CONCEPT_ANCHORED: lambda ax, ca: _nary_statement(ax, ca, concept_anchored=True),
    Strategy.SINGLETON_PROPERTY: _singleton_statement,
}


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

AnnotatedInput = Union[AnnotatedStatement, AnnotatedOntology]


def contextualize(strategy: Strategy, annotated: AnnotatedInput) -> Ontology:
    """Apply one strategy to an annotated statement or ontology.

    An annotated ontology is handled statement by statement and the results
    are unioned (duplicates collapse, insertion order is kept).
    """
    if isinstance(annotated, AnnotatedStatement):
        axioms: tuple[Axiom, ...] = (annotated.axiom,)
        base_signature = signature_of(annotated.axiom)
    else:
        axioms = annotated.ontology.axioms
        base_signature = annotated.ontology.signature
    ca = annotated.annotation

    bad = frozenset(
        t for t in (base_signature | ca.signature()) if t.kind is not TermKind.NON_CONTEXTUAL
    )
    if bad:
        raise ContextualTermInSignatureError(bad)
    if strategy is Strategy.ND_TERMS:
        overlap = frozenset(base_signature & ca.signature())
        if overlap:
            warnings.warn(SignatureOverlapWarning(overlap), stacklevel=2)

    transform = _STATEMENT_TRANSFORMS[strategy]
    out: list[Axiom] = []
    for ax in axioms:
        out.extend(transform(ax, ca))
    return Ontology(out, base_signature)


def combine_contexts(inputs: Iterable[AnnotatedOntology], strategy: Strategy) -> Ontology:
    """Union of per-context contextualizations; context ids must be distinct
    so the renaming ranges cannot collide."""
    items = list(inputs)
    seen: set[str] = set()
    for item in items:
        cid = item.annotation.ctx_id
        if cid in seen:
            raise DuplicateContextIdError(cid)
        seen.add(cid)
    result = Ontology()
    for item in items:
        result = result.union(contextualize(strategy, item))
    return result
