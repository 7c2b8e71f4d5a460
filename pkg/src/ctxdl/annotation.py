"""Contextual annotations: ABoxes describing a context, tied to an anchor.

An annotation is a set of assertions whose individuals all hang together
with one distinguished individual, the anchor. Connectivity is what makes
the annotation "about" the anchor rather than a loose bag of facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    ABOX_FORMS,
    Axiom,
    ConceptAssert,
    ConceptAtom,
    Ontology,
    RoleAssert,
    RoleAtom,
    Term,
    signature_of,
    stable_hash,
)


class AnnotationError(ValueError):
    pass


class NotAnABoxError(AnnotationError):
    def __init__(self, axiom: Axiom):
        super().__init__(f"not an ABox axiom usable in an annotation: {axiom!r}")
        self.axiom = axiom


class DisconnectedError(AnnotationError):
    def __init__(self, terms: frozenset[Term]):
        names = ", ".join(sorted(t.name for t in terms))
        super().__init__(f"terms not connected to the anchor: {names}")
        self.terms = terms


@dataclass(frozen=True)
class ContextualAnnotation:
    """An ABox plus its anchor; sigma is the rest of the signature.

    `ctx_id` is the stable identifier other components use for renaming and
    for the context top; equal (anchor, abox) inputs derive equal ids unless
    an explicit id is supplied.
    """

    anchor: Term
    abox: tuple[Axiom, ...]
    sigma: frozenset[Term]
    ctx_id: str

    def signature(self) -> frozenset[Term]:
        return self.sigma | {self.anchor}

    def as_ontology(self) -> Ontology:
        return Ontology(self.abox, self.signature())


@dataclass(frozen=True)
class AnnotatedStatement:
    axiom: Axiom
    annotation: ContextualAnnotation


@dataclass(frozen=True)
class AnnotatedOntology:
    ontology: Ontology
    annotation: ContextualAnnotation


def _individuals_of(abox: Sequence[Axiom]) -> set[Term]:
    out: set[Term] = set()
    for ax in abox:
        if isinstance(ax, ConceptAssert):
            out.add(ax.individual)
        elif isinstance(ax, RoleAssert):
            out.add(ax.subject)
            out.add(ax.object)
    return out


def _components(abox: Sequence[Axiom]) -> dict[Term, Term]:
    """Union-find roots for the undirected graph of role-assertion edges."""
    parent: dict[Term, Term] = {t: t for t in _individuals_of(abox)}

    def find(x: Term) -> Term:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ax in abox:
        if isinstance(ax, RoleAssert):
            ra, rb = find(ax.subject), find(ax.object)
            if ra != rb:
                parent[ra] = rb
    return {t: find(t) for t in parent}


def connected_individuals(abox: Sequence[Axiom], a: Term, b: Term) -> bool:
    """True iff `a` and `b` occur as individuals in the ABox and either
    coincide or are linked by a chain of role assertions (in any direction).
    """
    roots = _components(abox)
    if a not in roots or b not in roots:
        return False
    return a == b or roots[a] == roots[b]


def validate_annotation(
    anchor: Term,
    abox: Iterable[Axiom],
    ctx_id: str | None = None,
    extended: bool = False,
) -> ContextualAnnotation:
    """Check the annotation shape and connectivity, then build the value.

    Every individual occurring in the ABox must be connected to the anchor,
    and every concept/role name must appear in some assertion whose
    individual arguments are. Names used purely as concepts or roles cannot
    witness connectivity themselves (they never occur as individuals), which
    is why they are checked through their host assertions.

    With `extended` unset, assertions must use atomic concepts and roles.
    """
    axioms = tuple(abox)
    for ax in axioms:
        if not isinstance(ax, ABOX_FORMS):
            raise NotAnABoxError(ax)
        if not extended:
            if isinstance(ax, ConceptAssert) and not isinstance(ax.concept, ConceptAtom):
                raise NotAnABoxError(ax)
            if isinstance(ax, RoleAssert) and not isinstance(ax.role, RoleAtom):
                raise NotAnABoxError(ax)

    roots = _components(axioms)
    anchor_root = roots.get(anchor)

    def hosts_connected(ax: Axiom) -> bool:
        if isinstance(ax, ConceptAssert):
            args = [ax.individual]
        else:
            args = [ax.subject, ax.object]
        return all(roots.get(t) == anchor_root for t in args)

    disconnected: set[Term] = set()
    if axioms:
        if anchor_root is None:
            # The anchor itself never occurs: everything else is adrift.
            disconnected |= set(signature_of_abox(axioms))
        else:
            for t in roots:
                if roots[t] != anchor_root:
                    disconnected.add(t)
            # Names used only as concepts/roles need one connected host assertion.
            name_ok: dict[Term, bool] = {}
            for ax in axioms:
                ok = hosts_connected(ax)
                for name in signature_of(ax):
                    if name not in roots:
                        name_ok[name] = name_ok.get(name, False) or ok
            disconnected |= {name for name, ok in name_ok.items() if not ok}
    if disconnected:
        raise DisconnectedError(frozenset(disconnected - {anchor}))

    sigma = frozenset(signature_of_abox(axioms)) - {anchor}
    if ctx_id is None:
        ctx_id = stable_hash((anchor, axioms))
    return ContextualAnnotation(anchor=anchor, abox=axioms, sigma=sigma, ctx_id=ctx_id)


def signature_of_abox(abox: Sequence[Axiom]) -> set[Term]:
    out: set[Term] = set()
    for ax in abox:
        out |= signature_of(ax)
    return out
