"""Core data model: terms, concept/role expressions, axioms, ontologies.

Every term can simultaneously denote an individual, a concept, and a role
(punning); the interpretation side carries all three denotations per term.
Expression trees are immutable and compared structurally, with no implicit
normalization.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union


class TermKind(Enum):
    NON_CONTEXTUAL = "nc"
    CONTEXTUAL = "c"
    ANCHOR = "a"


@dataclass(frozen=True)
class Term:
    """An atomic name, partitioned into non-contextual / contextual / anchor."""

    name: str
    kind: TermKind = TermKind.NON_CONTEXTUAL

    def __post_init__(self) -> None:
        if not self.name or any(ch.isspace() for ch in self.name):
            raise ValueError(f"term name must be nonempty without whitespace: {self.name!r}")

    @classmethod
    def nc(cls, name: str) -> "Term":
        return cls(name, TermKind.NON_CONTEXTUAL)

    @classmethod
    def ctx(cls, name: str) -> "Term":
        return cls(name, TermKind.CONTEXTUAL)

    @classmethod
    def anchor(cls, name: str) -> "Term":
        return cls(name, TermKind.ANCHOR)

    def sort_key(self) -> tuple[str, str]:
        return (self.name, self.kind.value)


# ---------------------------------------------------------------------------
# Concept expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class TopCtx:
    """The distinguished relativization concept for one context.

    Not a Term: it contributes nothing to signatures, and two nodes are equal
    iff their context ids are.
    """

    ctx_id: str


@dataclass(frozen=True)
class ConceptAtom:
    term: Term


@dataclass(frozen=True)
class ConceptUnion:
    left: "ConceptExpr"
    right: "ConceptExpr"


@dataclass(frozen=True)
class ConceptIntersection:
    left: "ConceptExpr"
    right: "ConceptExpr"


@dataclass(frozen=True)
class ConceptNeg:
    sub: "ConceptExpr"


@dataclass(frozen=True)
class Exists:
    role: "RoleExpr"
    concept: "ConceptExpr"


@dataclass(frozen=True)
class Forall:
    role: "RoleExpr"
    concept: "ConceptExpr"


@dataclass(frozen=True)
class AtMost:
    bound: int
    role: "RoleExpr"
    concept: "ConceptExpr"

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("cardinality bound must be >= 0")


@dataclass(frozen=True)
class AtLeast:
    bound: int
    role: "RoleExpr"
    concept: "ConceptExpr"

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("cardinality bound must be >= 0")


@dataclass(frozen=True)
class Nominals:
    members: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("nominal set must be nonempty")
        if len(set(self.members)) != len(self.members):
            raise ValueError("nominal members must be duplicate-free")


# ---------------------------------------------------------------------------
# Role expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RoleAtom:
    term: Term


@dataclass(frozen=True)
class RoleUnion:
    left: "RoleExpr"
    right: "RoleExpr"


@dataclass(frozen=True)
class RoleIntersection:
    left: "RoleExpr"
    right: "RoleExpr"


@dataclass(frozen=True)
class RoleNeg:
    sub: "RoleExpr"


@dataclass(frozen=True)
class Inverse:
    sub: "RoleExpr"


@dataclass(frozen=True)
class Compose:
    left: "RoleExpr"
    right: "RoleExpr"


@dataclass(frozen=True)
class Closure:
    """Reflexive-transitive closure by default; see semantics.EvalOptions."""

    sub: "RoleExpr"


@dataclass(frozen=True)
class Product:
    """Concept product: the role relating every member of `left` to every member of `right`."""

    left: "ConceptExpr"
    right: "ConceptExpr"


ConceptExpr = Union[
    Top,
    Bottom,
    TopCtx,
    ConceptAtom,
    ConceptUnion,
    ConceptIntersection,
    ConceptNeg,
    Exists,
    Forall,
    AtMost,
    AtLeast,
    Nominals,
]

RoleExpr = Union[
    RoleAtom,
    RoleUnion,
    RoleIntersection,
    RoleNeg,
    Inverse,
    Compose,
    Closure,
    Product,
]


# ---------------------------------------------------------------------------
# Axioms and ontologies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConceptSub:
    left: ConceptExpr
    right: ConceptExpr


@dataclass(frozen=True)
class RoleSub:
    left: RoleExpr
    right: RoleExpr


@dataclass(frozen=True)
class ConceptAssert:
    concept: ConceptExpr
    individual: Term


@dataclass(frozen=True)
class RoleAssert:
    role: RoleExpr
    subject: Term
    object: Term


Axiom = Union[ConceptSub, RoleSub, ConceptAssert, RoleAssert]

ABOX_FORMS = (ConceptAssert, RoleAssert)


def _walk_terms(x: object) -> Iterator[Term]:
    if isinstance(x, Term):
        yield x
    elif isinstance(x, (ConceptAtom, RoleAtom)):
        yield x.term
    elif isinstance(x, Nominals):
        yield from x.members
    elif isinstance(x, (Top, Bottom, TopCtx)):
        return
    elif isinstance(x, (ConceptUnion, ConceptIntersection, RoleUnion, RoleIntersection, Compose, Product)):
        yield from _walk_terms(x.left)
        yield from _walk_terms(x.right)
    elif isinstance(x, (ConceptNeg, RoleNeg, Inverse, Closure)):
        yield from _walk_terms(x.sub)
    elif isinstance(x, (Exists, Forall, AtMost, AtLeast)):
        yield from _walk_terms(x.role)
        yield from _walk_terms(x.concept)
    elif isinstance(x, ConceptSub):
        yield from _walk_terms(x.left)
        yield from _walk_terms(x.right)
    elif isinstance(x, RoleSub):
        yield from _walk_terms(x.left)
        yield from _walk_terms(x.right)
    elif isinstance(x, ConceptAssert):
        yield from _walk_terms(x.concept)
        yield x.individual
    elif isinstance(x, RoleAssert):
        yield from _walk_terms(x.role)
        yield x.subject
        yield x.object
    else:
        raise TypeError(f"not a core value: {x!r}")


def signature_of(x: Axiom | ConceptExpr | RoleExpr) -> frozenset[Term]:
    """All terms occurring in `x`. A TopCtx node contributes no term."""
    return frozenset(_walk_terms(x))


@dataclass(frozen=True)
class Ontology:
    """A duplicate-free, insertion-ordered axiom list plus a declared signature.

    The stored signature always covers every term occurring in the axioms;
    extra declared terms are allowed.
    """

    axioms: tuple[Axiom, ...] = ()
    signature: frozenset[Term] = frozenset()

    def __init__(self, axioms: Iterable[Axiom] = (), signature: Iterable[Term] = ()) -> None:
        seen: dict[Axiom, None] = {}
        for ax in axioms:
            seen.setdefault(ax)
        deduped = tuple(seen)
        sig = frozenset(signature)
        for ax in deduped:
            sig |= signature_of(ax)
        object.__setattr__(self, "axioms", deduped)
        object.__setattr__(self, "signature", sig)

    def __contains__(self, axiom: Axiom) -> bool:
        return axiom in self.axioms

    def union(self, other: "Ontology") -> "Ontology":
        return Ontology(self.axioms + other.axioms, self.signature | other.signature)

    def sorted_signature(self) -> list[Term]:
        return sorted(self.signature, key=Term.sort_key)


def stable_hash(value: object, digits: int = 8) -> str:
    """Deterministic hex digest of a core value's canonical structure.

    Used to derive context ids and statement anchors, so equal inputs rename
    identically across runs.
    """
    return hashlib.sha256(repr(value).encode("utf-8")).hexdigest()[:digits]
