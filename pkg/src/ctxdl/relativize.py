"""Relativization: confine an ontology's constraints to a context top.

The rewrite guards exactly the constructs whose meaning can leak outside a
subset of the domain (top, negations, value restrictions, closures) by
intersecting them with the context top, and adds membership axioms forcing
every signature term's denotations inside it. The two domain/range axioms
quantify with the plain top on purpose: they are the global statements that
pin role denotations into the context.
"""

from __future__ import annotations

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
)


class RelativizeError(ValueError):
    pass


class AlreadyRelativizedError(RelativizeError):
    def __init__(self, ctx_id: str):
        super().__init__(f"input already mentions the context top for {ctx_id!r}")
        self.ctx_id = ctx_id


class ContextualTermInSignatureError(RelativizeError):
    def __init__(self, terms: frozenset[Term]):
        names = ", ".join(sorted(t.name for t in terms))
        super().__init__(f"signature must be non-contextual, found: {names}")
        self.terms = terms


def relativize_concept(c: ConceptExpr, ctx_id: str) -> ConceptExpr:
    top = TopCtx(ctx_id)
    if isinstance(c, Top):
        return top
    if isinstance(c, Bottom):
        return c
    if isinstance(c, TopCtx):
        if c.ctx_id == ctx_id:
            raise AlreadyRelativizedError(ctx_id)
        return c
    if isinstance(c, (ConceptAtom, Nominals)):
        return c
    if isinstance(c, ConceptUnion):
        return ConceptUnion(relativize_concept(c.left, ctx_id), relativize_concept(c.right, ctx_id))
    if isinstance(c, ConceptIntersection):
        return ConceptIntersection(
            relativize_concept(c.left, ctx_id), relativize_concept(c.right, ctx_id)
        )
    if isinstance(c, ConceptNeg):
        return ConceptIntersection(ConceptNeg(relativize_concept(c.sub, ctx_id)), top)
    if isinstance(c, Exists):
        return Exists(relativize_role(c.role, ctx_id), relativize_concept(c.concept, ctx_id))
    if isinstance(c, Forall):
        return ConceptIntersection(
            Forall(relativize_role(c.role, ctx_id), relativize_concept(c.concept, ctx_id)), top
        )
    if isinstance(c, AtMost):
        return AtMost(c.bound, relativize_role(c.role, ctx_id), relativize_concept(c.concept, ctx_id))
    if isinstance(c, AtLeast):
        return AtLeast(c.bound, relativize_role(c.role, ctx_id), relativize_concept(c.concept, ctx_id))
    raise TypeError(f"not a concept expression: {c!r}")


def relativize_role(r: RoleExpr, ctx_id: str) -> RoleExpr:
    top_sq = Product(TopCtx(ctx_id), TopCtx(ctx_id))
    if isinstance(r, RoleAtom):
        return r
    if isinstance(r, RoleUnion):
        return RoleUnion(relativize_role(r.left, ctx_id), relativize_role(r.right, ctx_id))
    if isinstance(r, RoleIntersection):
        return RoleIntersection(relativize_role(r.left, ctx_id), relativize_role(r.right, ctx_id))
    if isinstance(r, RoleNeg):
        return RoleIntersection(RoleNeg(relativize_role(r.sub, ctx_id)), top_sq)
    if isinstance(r, Inverse):
        return Inverse(relativize_role(r.sub, ctx_id))
    if isinstance(r, Compose):
        return Compose(relativize_role(r.left, ctx_id), relativize_role(r.right, ctx_id))
    if isinstance(r, Closure):
        return RoleIntersection(Closure(relativize_role(r.sub, ctx_id)), top_sq)
    if isinstance(r, Product):
        return Product(relativize_concept(r.left, ctx_id), relativize_concept(r.right, ctx_id))
    raise TypeError(f"not a role expression: {r!r}")


def relativize_axiom(ax: Axiom, ctx_id: str) -> Axiom:
    if isinstance(ax, ConceptSub):
        return ConceptSub(relativize_concept(ax.left, ctx_id), relativize_concept(ax.right, ctx_id))
    if isinstance(ax, RoleSub):
        return RoleSub(relativize_role(ax.left, ctx_id), relativize_role(ax.right, ctx_id))
    if isinstance(ax, ConceptAssert):
        return ConceptAssert(relativize_concept(ax.concept, ctx_id), ax.individual)
    if isinstance(ax, RoleAssert):
        return RoleAssert(relativize_role(ax.role, ctx_id), ax.subject, ax.object)
    raise TypeError(f"not an axiom: {ax!r}")


def membership_axioms(term: Term, ctx_id: str) -> list[Axiom]:
    """The four per-term axioms confining a term's denotations to the top.

    The third and fourth deliberately use the unrelativized top: they bound
    the role's domain and range over the whole interpretation domain.
    """
    top = TopCtx(ctx_id)
    return [
        ConceptSub(ConceptAtom(term), top),
        ConceptAssert(top, term),
        ConceptSub(Exists(RoleAtom(term), Top()), top),
        ConceptSub(Top(), Forall(RoleAtom(term), top)),
    ]


def relativize_ontology(ontology: Ontology, ctx_id: str) -> Ontology:
    contextual = frozenset(t for t in ontology.signature if t.kind is not TermKind.NON_CONTEXTUAL)
    if contextual:
        raise ContextualTermInSignatureError(contextual)
    axioms = [relativize_axiom(ax, ctx_id) for ax in ontology.axioms]
    for term in ontology.sorted_signature():
        axioms.extend(membership_axioms(term, ctx_id))
    return Ontology(axioms, ontology.signature)
