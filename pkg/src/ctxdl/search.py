"""Bounded model and countermodel search, complete up to a domain-size bound.

The search assigns denotations component by component, where a component is
one aspect of one term: its individual element, its concept subset, its role
relation, or the subset interpreting a context top. Usage analysis keeps the
branching limited to aspects the axioms actually read.

Pruning machinery, in order of impact:

* axiom constraints that pin a component from one side (assertions, atomic
  inclusions, and the domain/range inclusion shapes produced by
  relativization) become lower/upper bounds, so only subsets between the
  bounds are enumerated;
* a component whose every constraint has been consumed as a bound is
  determined: the lower bound itself is the only candidate that needs trying;
* axioms are re-checked as soon as their last component is assigned;
* independent subproblems (connected components of the axiom/term graph) are
  solved separately and merged;
* on failure, conflict-directed backjumping skips re-enumeration of
  components that did not contribute to the conflict.

Verdicts are always relative to the bound; `NoModelUpTo(n)` is a complete
claim for every domain of size <= n over the ontology's signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .core import (
    AtLeast,
    AtMost,
    Axiom,
    Bottom,
    Closure,
    Compose,
    ConceptAssert,
    ConceptAtom,
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
    RoleIntersection,
    RoleNeg,
    RoleSub,
    RoleUnion,
    Term,
    Top,
    TopCtx,
)
from .semantics import (
    DEFAULT_OPTIONS,
    BoundTooLargeError,
    EvalOptions,
    Interpretation,
    NoCounterexampleUpTo,
    NoModelUpTo,
    NotEntailed,
    SatisfiableAt,
    _closure,
    eval_concept,
    eval_role,
    satisfies,
)

DEFAULT_BUDGET = 1_000_000_000

# Component aspects: individual, concept, role, context top.
IND, CONC, ROLE, TOPCTX = "i", "c", "r", "t"

CompKey = tuple[str, object]


def _comp_sort_key(comp: CompKey) -> tuple[str, str]:
    aspect, key = comp
    name = key.name if isinstance(key, Term) else str(key)
    return (aspect, name)


# ---------------------------------------------------------------------------
# Usage analysis
# ---------------------------------------------------------------------------


def _concept_comps(c, acc: set[CompKey]) -> None:
    if isinstance(c, (Top, Bottom)):
        return
    if isinstance(c, TopCtx):
        acc.add((TOPCTX, c.ctx_id))
    elif isinstance(c, ConceptAtom):
        acc.add((CONC, c.term))
    elif isinstance(c, (ConceptUnion, ConceptIntersection)):
        _concept_comps(c.left, acc)
        _concept_comps(c.right, acc)
    elif isinstance(c, ConceptNeg):
        _concept_comps(c.sub, acc)
    elif isinstance(c, (Exists, Forall, AtMost, AtLeast)):
        _role_comps(c.role, acc)
        _concept_comps(c.concept, acc)
    elif isinstance(c, Nominals):
        for u in c.members:
            acc.add((IND, u))
    else:
        raise TypeError(f"not a concept expression: {c!r}")


def _role_comps(r, acc: set[CompKey]) -> None:
    if isinstance(r, RoleAtom):
        acc.add((ROLE, r.term))
    elif isinstance(r, (RoleUnion, RoleIntersection, Compose)):
        _role_comps(r.left, acc)
        _role_comps(r.right, acc)
    elif isinstance(r, (RoleNeg, Inverse, Closure)):
        _role_comps(r.sub, acc)
    elif isinstance(r, Product):
        _concept_comps(r.left, acc)
        _concept_comps(r.right, acc)
    else:
        raise TypeError(f"not a role expression: {r!r}")


def _axiom_comps(ax: Axiom) -> frozenset[CompKey]:
    acc: set[CompKey] = set()
    if isinstance(ax, ConceptSub):
        _concept_comps(ax.left, acc)
        _concept_comps(ax.right, acc)
    elif isinstance(ax, RoleSub):
        _role_comps(ax.left, acc)
        _role_comps(ax.right, acc)
    elif isinstance(ax, ConceptAssert):
        _concept_comps(ax.concept, acc)
        acc.add((IND, ax.individual))
    elif isinstance(ax, RoleAssert):
        _role_comps(ax.role, acc)
        acc.add((IND, ax.subject))
        acc.add((IND, ax.object))
    else:
        raise TypeError(f"not an axiom: {ax!r}")
    return frozenset(acc)


# ---------------------------------------------------------------------------
# Partial interpretations
# ---------------------------------------------------------------------------


class _PartialView:
    """Mutable interpretation view over the components assigned so far.

    Duck-types the Interpretation protocol the evaluator reads.
    """

    __slots__ = ("size", "indiv", "conc", "role", "top_ctx")

    def __init__(self, size: int):
        self.size = size
        self.indiv: dict[Term, int] = {}
        self.conc: dict[Term, frozenset[int]] = {}
        self.role: dict[Term, frozenset[tuple[int, int]]] = {}
        self.top_ctx: dict[str, frozenset[int]] = {}

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(range(self.size))

    def individual(self, t: Term) -> int:
        return self.indiv[t]

    def concept(self, t: Term) -> frozenset[int]:
        return self.conc[t]

    def relation(self, t: Term) -> frozenset[tuple[int, int]]:
        return self.role[t]

    def context_top(self, ctx_id: str) -> frozenset[int]:
        return self.top_ctx[ctx_id]

    def assign(self, comp: CompKey, value) -> None:
        aspect, key = comp
        if aspect == IND:
            self.indiv[key] = value
        elif aspect == CONC:
            self.conc[key] = value
        elif aspect == ROLE:
            self.role[key] = value
        else:
            self.top_ctx[key] = value

    def unassign(self, comp: CompKey) -> None:
        aspect, key = comp
        if aspect == IND:
            self.indiv.pop(key, None)
        elif aspect == CONC:
            self.conc.pop(key, None)
        elif aspect == ROLE:
            self.role.pop(key, None)
        else:
            self.top_ctx.pop(key, None)


# ---------------------------------------------------------------------------
# Interval (three-valued) evaluation under partial assignments
# ---------------------------------------------------------------------------
#
# Each expression gets a lower/upper approximation: lo is contained in the
# value under every completion of the assignment, hi contains it. Unassigned
# atoms contribute (empty, everything). This decides many axioms long before
# all their components are assigned, which is what keeps single wide axioms
# from forcing full enumeration.


def _ival_concept(c, view, n: int, options: EvalOptions) -> tuple[frozenset, frozenset]:
    domain = frozenset(range(n))
    if isinstance(c, Top):
        return domain, domain
    if isinstance(c, Bottom):
        return frozenset(), frozenset()
    if isinstance(c, TopCtx):
        val = view.top_ctx.get(c.ctx_id)
        return (val, val) if val is not None else (frozenset(), domain)
    if isinstance(c, ConceptAtom):
        val = view.conc.get(c.term)
        return (val, val) if val is not None else (frozenset(), domain)
    if isinstance(c, ConceptUnion):
        lo1, hi1 = _ival_concept(c.left, view, n, options)
        lo2, hi2 = _ival_concept(c.right, view, n, options)
        return lo1 | lo2, hi1 | hi2
    if isinstance(c, ConceptIntersection):
        lo1, hi1 = _ival_concept(c.left, view, n, options)
        lo2, hi2 = _ival_concept(c.right, view, n, options)
        return lo1 & lo2, hi1 & hi2
    if isinstance(c, ConceptNeg):
        lo, hi = _ival_concept(c.sub, view, n, options)
        return domain - hi, domain - lo
    if isinstance(c, Exists):
        rlo, rhi = _ival_role(c.role, view, n, options)
        clo, chi = _ival_concept(c.concept, view, n, options)
        return (
            frozenset(x for x, y in rlo if y in clo),
            frozenset(x for x, y in rhi if y in chi),
        )
    if isinstance(c, Forall):
        rlo, rhi = _ival_role(c.role, view, n, options)
        clo, chi = _ival_concept(c.concept, view, n, options)
        lo = frozenset(x for x in domain if all(y in clo for x2, y in rhi if x2 == x))
        hi = frozenset(x for x in domain if all(y in chi for x2, y in rlo if x2 == x))
        return lo, hi
    if isinstance(c, (AtMost, AtLeast)):
        rlo, rhi = _ival_role(c.role, view, n, options)
        clo, chi = _ival_concept(c.concept, view, n, options)
        lo_set, hi_set = set(), set()
        for x in domain:
            min_count = sum(1 for x2, y in rlo if x2 == x and y in clo)
            max_count = sum(1 for x2, y in rhi if x2 == x and y in chi)
            if isinstance(c, AtMost):
                if max_count <= c.bound:
                    lo_set.add(x)
                if min_count <= c.bound:
                    hi_set.add(x)
            else:
                if min_count >= c.bound:
                    lo_set.add(x)
                if max_count >= c.bound:
                    hi_set.add(x)
        return frozenset(lo_set), frozenset(hi_set)
    if isinstance(c, Nominals):
        assigned = [view.indiv[u] for u in c.members if u in view.indiv]
        lo = frozenset(assigned)
        if len(assigned) == len(c.members):
            return lo, lo
        return lo, domain
    raise TypeError(f"not a concept expression: {c!r}")


def _ival_role(r, view, n: int, options: EvalOptions) -> tuple[frozenset, frozenset]:
    if isinstance(r, RoleAtom):
        val = view.role.get(r.term)
        if val is not None:
            return val, val
        full = frozenset((x, y) for x in range(n) for y in range(n))
        return frozenset(), full
    if isinstance(r, RoleUnion):
        lo1, hi1 = _ival_role(r.left, view, n, options)
        lo2, hi2 = _ival_role(r.right, view, n, options)
        return lo1 | lo2, hi1 | hi2
    if isinstance(r, RoleIntersection):
        lo1, hi1 = _ival_role(r.left, view, n, options)
        lo2, hi2 = _ival_role(r.right, view, n, options)
        return lo1 & lo2, hi1 & hi2
    if isinstance(r, RoleNeg):
        lo, hi = _ival_role(r.sub, view, n, options)
        full = frozenset((x, y) for x in range(n) for y in range(n))
        return full - hi, full - lo
    if isinstance(r, Inverse):
        lo, hi = _ival_role(r.sub, view, n, options)
        return frozenset((y, x) for x, y in lo), frozenset((y, x) for x, y in hi)
    if isinstance(r, Compose):
        lo1, hi1 = _ival_role(r.left, view, n, options)
        lo2, hi2 = _ival_role(r.right, view, n, options)
        return _compose(lo1, lo2), _compose(hi1, hi2)
    if isinstance(r, Closure):
        lo, hi = _ival_role(r.sub, view, n, options)
        domain = frozenset(range(n))
        return _closure(lo, domain, options), _closure(hi, domain, options)
    if isinstance(r, Product):
        lo1, hi1 = _ival_concept(r.left, view, n, options)
        lo2, hi2 = _ival_concept(r.right, view, n, options)
        return (
            frozenset((x, y) for x in lo1 for y in lo2),
            frozenset((x, y) for x in hi1 for y in hi2),
        )
    raise TypeError(f"not a role expression: {r!r}")


def _compose(left: frozenset, right: frozenset) -> frozenset:
    by_source: dict[int, set[int]] = {}
    for z, y in right:
        by_source.setdefault(z, set()).add(y)
    return frozenset((x, y) for x, z in left for y in by_source.get(z, ()))


def _decide_axiom(ax: Axiom, view, n: int, options: EvalOptions) -> Optional[bool]:
    """True / False when the axiom is settled under every completion of the
    current partial assignment; None when still open."""
    if isinstance(ax, ConceptSub):
        llo, lhi = _ival_concept(ax.left, view, n, options)
        rlo, rhi = _ival_concept(ax.right, view, n, options)
        if lhi <= rlo:
            return True
        if llo - rhi:
            return False
        return None
    if isinstance(ax, RoleSub):
        llo, lhi = _ival_role(ax.left, view, n, options)
        rlo, rhi = _ival_role(ax.right, view, n, options)
        if lhi <= rlo:
            return True
        if llo - rhi:
            return False
        return None
    if isinstance(ax, ConceptAssert):
        if ax.individual not in view.indiv:
            return None
        e = view.indiv[ax.individual]
        lo, hi = _ival_concept(ax.concept, view, n, options)
        if e in lo:
            return True
        if e not in hi:
            return False
        return None
    if isinstance(ax, RoleAssert):
        if ax.subject not in view.indiv or ax.object not in view.indiv:
            return None
        pair = (view.indiv[ax.subject], view.indiv[ax.object])
        lo, hi = _ival_role(ax.role, view, n, options)
        if pair in lo:
            return True
        if pair not in hi:
            return False
        return None
    raise TypeError(f"not an axiom: {ax!r}")


# ---------------------------------------------------------------------------
# Constraints and bound producers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Constraint:
    axiom: Axiom
    positive: bool
    comps: frozenset[CompKey]

    def holds(self, view, options: EvalOptions) -> bool:
        result = satisfies(view, self.axiom, options)
        return result if self.positive else not result

    def decide(self, view, n: int, options: EvalOptions) -> Optional[bool]:
        decision = _decide_axiom(self.axiom, view, n, options)
        if decision is None:
            return None
        return decision if self.positive else not decision


@dataclass
class _Producer:
    """A constraint consumed as a bound on `target` once its other components
    are assigned. `kind` is "L" (forced members), "U" (allowed members), or
    "X" (excluded members)."""

    constraint: _Constraint
    kind: str
    target: CompKey


def _classify_producer(con: _Constraint, target: CompKey) -> Optional[_Producer]:
    ax = con.axiom
    aspect, key = target
    if con.positive:
        if isinstance(ax, RoleAssert) and aspect == ROLE:
            if isinstance(ax.role, RoleAtom) and ax.role.term == key:
                return _Producer(con, "L", target)
        elif isinstance(ax, ConceptAssert):
            c = ax.concept
            if aspect == CONC and isinstance(c, ConceptAtom) and c.term == key:
                return _Producer(con, "L", target)
            if aspect == TOPCTX and isinstance(c, TopCtx) and c.ctx_id == key:
                return _Producer(con, "L", target)
        elif isinstance(ax, ConceptSub):
            left, right = ax.left, ax.right
            if aspect == CONC or aspect == TOPCTX:
                if _is_set_atom(left, target) and target not in _side_comps(right):
                    return _Producer(con, "U", target)
                if _is_set_atom(right, target) and target not in _side_comps(left):
                    return _Producer(con, "L", target)
            if aspect == ROLE:
                if (
                    isinstance(left, Exists)
                    and isinstance(left.role, RoleAtom)
                    and left.role.term == key
                    and isinstance(left.concept, Top)
                    and target not in _side_comps(right)
                ):
                    return _Producer(con, "U", target)  # domain of role within rhs
                if (
                    isinstance(left, Top)
                    and isinstance(right, Forall)
                    and isinstance(right.role, RoleAtom)
                    and right.role.term == key
                    and target not in _side_comps(right.concept)
                ):
                    return _Producer(con, "U", target)  # range of role within filler
        elif isinstance(ax, RoleSub):
            left, right = ax.left, ax.right
            if aspect == ROLE:
                if isinstance(left, RoleAtom) and left.term == key and target not in _side_comps(right):
                    return _Producer(con, "U", target)
                if isinstance(right, RoleAtom) and right.term == key and target not in _side_comps(left):
                    return _Producer(con, "L", target)
    else:
        if isinstance(ax, RoleAssert) and aspect == ROLE:
            if isinstance(ax.role, RoleAtom) and ax.role.term == key:
                return _Producer(con, "X", target)
        elif isinstance(ax, ConceptAssert):
            c = ax.concept
            if aspect == CONC and isinstance(c, ConceptAtom) and c.term == key:
                return _Producer(con, "X", target)
            if aspect == TOPCTX and isinstance(c, TopCtx) and c.ctx_id == key:
                return _Producer(con, "X", target)
    return None


def _is_set_atom(expr, target: CompKey) -> bool:
    aspect, key = target
    if aspect == CONC:
        return isinstance(expr, ConceptAtom) and expr.term == key
    if aspect == TOPCTX:
        return isinstance(expr, TopCtx) and expr.ctx_id == key
    return False


def _side_comps(expr) -> frozenset[CompKey]:
    acc: set[CompKey] = set()
    if isinstance(expr, (Top, Bottom, TopCtx, ConceptAtom, ConceptUnion, ConceptIntersection,
                         ConceptNeg, Exists, Forall, AtMost, AtLeast, Nominals)):
        _concept_comps(expr, acc)
    else:
        _role_comps(expr, acc)
    return frozenset(acc)


def _producer_bound(prod: _Producer, view, n: int, options: EvalOptions) -> frozenset:
    """The concrete set a producer contributes, under the current assignment."""
    ax = prod.constraint.axiom
    aspect = prod.target[0]
    if isinstance(ax, RoleAssert):
        return frozenset({(view.indiv[ax.subject], view.indiv[ax.object])})
    if isinstance(ax, ConceptAssert):
        return frozenset({view.indiv[ax.individual]})
    if isinstance(ax, ConceptSub):
        left, right = ax.left, ax.right
        if aspect == ROLE:
            if isinstance(left, Exists):
                dom_side = eval_concept(right, view, options)
                universe = range(n)
                return frozenset((x, y) for x in dom_side for y in universe)
            rng_side = eval_concept(right.concept, view, options)
            universe = range(n)
            return frozenset((x, y) for x in universe for y in rng_side)
        side = right if prod.kind == "U" else left
        return eval_concept(side, view, options)
    if isinstance(ax, RoleSub):
        side = ax.right if prod.kind == "U" else ax.left
        return eval_role(side, view, options)
    raise TypeError(f"no bound rule for {ax!r}")


# ---------------------------------------------------------------------------
# Single-group solver with conflict-directed backjumping
# ---------------------------------------------------------------------------


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise BoundTooLargeError(self.used, self.limit)


@dataclass
class _Plan:
    order: list[CompKey]
    position: dict[CompKey, int]
    producers_at: list[list[_Producer]]
    checks_at: list[list[_Constraint]]
    watch_at: list[list[_Constraint]]
    determined: list[bool]
    first_ind: Optional[int]


def _plan_group(comps: Sequence[CompKey], constraints: Sequence[_Constraint]) -> _Plan:
    degree: dict[CompKey, int] = {c: 0 for c in comps}
    for con in constraints:
        for c in con.comps:
            degree[c] += 1

    phase = {IND: 0, TOPCTX: 1, CONC: 1, ROLE: 2}

    def order_key(c: CompKey):
        return (phase[c[0]], -degree[c], _comp_sort_key(c))

    order = sorted(comps, key=order_key)
    position = {c: idx for idx, c in enumerate(order)}

    producers_at: list[list[_Producer]] = [[] for _ in order]
    checks_at: list[list[_Constraint]] = [[] for _ in order]
    watch_at: list[list[_Constraint]] = [[] for _ in order]
    produced_for: dict[CompKey, list[_Constraint]] = {c: [] for c in comps}
    for con in constraints:
        last = max(con.comps, key=lambda c: position[c])
        prod = _classify_producer(con, last)
        if prod is not None:
            producers_at[position[last]].append(prod)
            produced_for[last].append(con)
        else:
            checks_at[position[last]].append(con)
            # Interval-check the axiom at every earlier component; many
            # axioms are settled well before their last component.
            for comp in con.comps:
                if comp != last:
                    watch_at[position[comp]].append(con)

    touching: dict[CompKey, list[_Constraint]] = {c: [] for c in comps}
    for con in constraints:
        for c in con.comps:
            touching[c].append(con)
    determined = [
        all(con in produced_for[comp] for con in touching[comp]) for comp in order
    ]

    first_ind = None
    for idx, comp in enumerate(order):
        if comp[0] == IND:
            first_ind = idx
            break

    return _Plan(order, position, producers_at, checks_at, watch_at, determined, first_ind)


def _subsets_between(lower: frozenset, free: list) -> Iterator[frozenset]:
    for mask in range(1 << len(free)):
        value = set(lower)
        m = mask
        idx = 0
        while m:
            if m & 1:
                value.add(free[idx])
            m >>= 1
            idx += 1
        yield frozenset(value)


def _solve_group(
    comps: Sequence[CompKey],
    constraints: Sequence[_Constraint],
    n: int,
    view: _PartialView,
    budget: _Budget,
    symmetry: bool,
    options,
) -> Optional[frozenset[int]]:
    """Fill `view` with a satisfying assignment for this group, or return the
    conflict set (positions) of an exhausted search. None means success."""
    plan = _plan_group(comps, constraints)
    order = plan.order
    check_positions = {
        id(con): frozenset(plan.position[c] for c in con.comps) for con in constraints
    }
    universes: dict[str, list] = {
        CONC: list(range(n)),
        TOPCTX: list(range(n)),
        ROLE: [(x, y) for x in range(n) for y in range(n)],
    }

    def bt(i: int) -> Optional[frozenset[int]]:
        if i == len(order):
            return None
        comp = order[i]
        aspect = comp[0]
        conflict: set[int] = set()

        producer_positions: set[int] = set()
        if aspect == IND:
            candidates: Iterator = iter(range(n)) if not (symmetry and i == plan.first_ind) else iter((0,))
        else:
            lower: frozenset = frozenset()
            upper = frozenset(universes[aspect])
            for prod in plan.producers_at[i]:
                producer_positions |= check_positions[id(prod.constraint)] - {i}
                bound = _producer_bound(prod, view, n, options)
                if prod.kind == "L":
                    lower |= bound
                elif prod.kind == "U":
                    upper &= bound
                else:
                    upper -= bound
            if not lower <= upper:
                return frozenset(producer_positions)
            if plan.determined[i]:
                candidates = iter((lower,))
            else:
                free = sorted(upper - lower)
                candidates = _subsets_between(lower, free)

        for value in candidates:
            budget.tick()
            view.assign(comp, value)
            failed = False
            for con in plan.checks_at[i]:
                if not con.holds(view, options):
                    conflict |= check_positions[id(con)] - {i}
                    failed = True
                    break
            if not failed:
                for con in plan.watch_at[i]:
                    if con.decide(view, n, options) is False:
                        # Settled negatively by assigned components alone, so
                        # only those can be blamed.
                        conflict |= {p for p in check_positions[id(con)] if p < i}
                        failed = True
                        break
            if failed:
                continue
            sub = bt(i + 1)
            if sub is None:
                return None
            if i not in sub:
                view.unassign(comp)
                return sub
            conflict |= set(sub) - {i}
        view.unassign(comp)
        return frozenset(conflict | producer_positions)

    return bt(0)


# ---------------------------------------------------------------------------
# Top level: decomposition, size iteration, verdict construction
# ---------------------------------------------------------------------------


def _group_constraints(
    constraints: Sequence[_Constraint],
) -> list[tuple[list[CompKey], list[_Constraint]]]:
    parent: dict[CompKey, CompKey] = {}

    def find(x: CompKey) -> CompKey:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: CompKey, b: CompKey) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for con in constraints:
        for c in con.comps:
            parent.setdefault(c, c)
    for con in constraints:
        cs = list(con.comps)
        for other in cs[1:]:
            union(cs[0], other)

    groups: dict[CompKey, tuple[list[CompKey], list[_Constraint]]] = {}
    for c in parent:
        groups.setdefault(find(c), ([], []))[0].append(c)
    for con in constraints:
        if con.comps:
            groups[find(next(iter(con.comps)))][1].append(con)

    def group_key(item: tuple[CompKey, tuple[list, list]]):
        comps, cons = item[1]
        has_negative = any(not con.positive for con in cons)
        return (0 if has_negative else 1, min(_comp_sort_key(c) for c in comps))

    return [grp for _, grp in sorted(groups.items(), key=group_key)]


def _solve_at_size(
    constraints: list[_Constraint], n: int, budget: _Budget, symmetry: bool, options
) -> Optional[_PartialView]:
    view = _PartialView(n)
    for con in constraints:
        if not con.comps and not con.holds(view, options):
            return None
    grouped = _group_constraints([c for c in constraints if c.comps])
    for comps, cons in grouped:
        comps_sorted = sorted(comps, key=_comp_sort_key)
        conflict = _solve_group(comps_sorted, cons, n, view, budget, symmetry, options)
        if conflict is not None:
            return None
    return view


def _collect_ctx_ids(*ontologies: Ontology) -> set[str]:
    ids: set[str] = set()
    for onto in ontologies:
        for ax in onto.axioms:
            for comp in _axiom_comps(ax):
                if comp[0] == TOPCTX:
                    ids.add(comp[1])
    return ids


def _build_interpretation(
    view: _PartialView, n: int, terms: set[Term], ctx_ids: set[str]
) -> Interpretation:
    empty: frozenset[int] = frozenset()
    return Interpretation(
        size=n,
        indiv={t: view.indiv.get(t, 0) for t in terms},
        conc={t: view.conc.get(t, empty) for t in terms},
        role={t: view.role.get(t, empty) for t in terms},
        top_ctx={cid: view.top_ctx.get(cid, empty) for cid in ctx_ids},
    )


def _resolve_budget(budget: Optional[int]) -> int:
    return DEFAULT_BUDGET if budget is None else budget


def find_model(
    ontology: Ontology,
    max_size: int,
    *,
    budget: Optional[int] = None,
    symmetry_breaking: bool = False,
    options: EvalOptions = DEFAULT_OPTIONS,
):
    """Smallest-domain model of the ontology within the bound, if any.

    Complete up to the bound: a NoModelUpTo(n) verdict guarantees that no
    interpretation over the ontology's signature with at most n elements is a
    model. Deterministic: equal inputs yield the identical witness.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    tracker = _Budget(_resolve_budget(budget))
    constraints = [_Constraint(ax, True, _axiom_comps(ax)) for ax in ontology.axioms]
    ctx_ids = _collect_ctx_ids(ontology)
    for n in range(1, max_size + 1):
        view = _solve_at_size(constraints, n, tracker, symmetry_breaking, options)
        if view is not None:
            interp = _build_interpretation(view, n, set(ontology.signature), ctx_ids)
            return SatisfiableAt(interp, n)
    return NoModelUpTo(max_size)


def check_entailment(
    premise: Ontology,
    conclusion: Ontology,
    max_size: int,
    *,
    budget: Optional[int] = None,
    symmetry_breaking: bool = False,
    options: EvalOptions = DEFAULT_OPTIONS,
):
    """Search for a model of `premise` violating some axiom of `conclusion`.

    Interpretations range over the union of both signatures. Complete up to
    the bound and deterministic; axioms of the conclusion that appear
    verbatim in the premise cannot be violated and are skipped.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    tracker = _Budget(_resolve_budget(budget))
    premise_axioms = set(premise.axioms)
    targets = [ax for ax in conclusion.axioms if ax not in premise_axioms]
    if not targets:
        return NoCounterexampleUpTo(max_size)
    base = [_Constraint(ax, True, _axiom_comps(ax)) for ax in premise.axioms]
    all_terms = set(premise.signature) | set(conclusion.signature)
    ctx_ids = _collect_ctx_ids(premise, conclusion)
    for n in range(1, max_size + 1):
        for target in targets:
            constraints = base + [_Constraint(target, False, _axiom_comps(target))]
            view = _solve_at_size(constraints, n, tracker, symmetry_breaking, options)
            if view is not None:
                interp = _build_interpretation(view, n, all_terms, ctx_ids)
                return NotEntailed(interp)
    return NoCounterexampleUpTo(max_size)
