"""Truncated constant-free non-symmetric categorical operads.

An operad here is a finite family of categories P_1..P_N together with
composition functors mu_g indexed by the order-preserving surjections
g: k -> n with k <= N, and a unit object in P_1.  The axioms (elementwise
associativity over composable pairs of surjections, and the two unit
laws) are executable: see :func:`check_associativity` and
:func:`check_unitality`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import trees as T
from .fincat import FinCat, Functor, poset_category, product, terminal_category, \
    validate_category, validate_functor
from .report import CAPPED, DEFAULT_CAP, FAIL, PASS, Budget, Report
from .surjections import Surjection, all_surjections_up_to, bang, block_cut, compose, \
    enumerate_surjections, identity_surjection, induced_map


class TruncationOverflow(ValueError):
    """An arity above the stored bound was requested."""


class ArityMismatch(ValueError):
    """Arguments whose arities do not match the indexing surjection."""


@dataclass
class TruncatedOperad:
    """Categories P_1..P_N with composition functors and a unit object.

    ``mu[g]`` is a functor  P_n x P_{k_1} x ... x P_{k_n}  ->  P_k
    for each surjection g: k -> n with k <= bound, where k_i is the size
    of the fiber g^{-1}(i).  Argument tuples are flat: ``(c, b_1..b_n)``.
    """

    bound: int
    components: dict[int, FinCat]
    unit: object
    mu: dict[Surjection, Functor]
    name: str = "operad"
    _obj_sets: dict = field(default_factory=dict, repr=False)

    def component(self, n: int) -> FinCat:
        if not 1 <= n <= self.bound:
            raise TruncationOverflow("arity %d outside 1..%d" % (n, self.bound))
        return self.components[n]

    def mu_for(self, g: Surjection) -> Functor:
        if g.dom > self.bound:
            raise TruncationOverflow("surjection %s exceeds bound %d" % (g, self.bound))
        if g not in self.mu:
            raise ValueError("no composition functor stored for %s" % g)
        return self.mu[g]

    def is_object(self, n: int, x) -> bool:
        if n not in self._obj_sets:
            self._obj_sets[n] = set(self.component(n).objects)
        return x in self._obj_sets[n]

    def arg_arities(self, g: Surjection) -> tuple[int, ...]:
        return (g.cod,) + g.fiber_sizes()

    def check_args(self, g: Surjection, args):
        arities = self.arg_arities(g)
        if len(args) != len(arities):
            raise ArityMismatch("expected %d arguments for %s, got %d"
                                % (len(arities), g, len(args)))
        return arities

    def apply_obj(self, g: Surjection, args) -> object:
        args = tuple(args)
        arities = self.check_args(g, args)
        for n, a in zip(arities, args):
            if not self.is_object(n, a):
                raise ArityMismatch("%r is not an object of the arity-%d component" % (a, n))
        return self.mu_for(g).obj_map[args]

    def apply_mor(self, g: Surjection, margs) -> object:
        margs = tuple(margs)
        self.check_args(g, margs)
        return self.mu_for(g).mor_map[margs]

    def apply_mixed(self, g: Surjection, args) -> object:
        """Apply mu_g after promoting any object arguments to identities."""
        args = tuple(args)
        arities = self.check_args(g, args)
        promoted = tuple(self.component(n).id_of(a) if self.is_object(n, a) else a
                         for n, a in zip(arities, args))
        return self.apply_mor(g, promoted)

    def unit_morphism(self):
        return self.component(1).id_of(self.unit)

    def hom(self, n: int, a, b):
        return self.component(n).hom(a, b)

    def compose_in(self, n: int, g, f):
        return self.component(n).compose(g, f)


def mu_apply(P: TruncatedOperad, g: Surjection, args):
    """Value of the composition functor mu_g on a tuple (c, b_1..b_n).

    All arguments must be objects, or all morphisms, of the components
    P_n, P_{k_1}, ..., P_{k_n}.
    """
    args = tuple(args)
    arities = P.check_args(g, args)
    if all(P.is_object(n, a) for n, a in zip(arities, args)):
        return P.apply_obj(g, args)
    return P.apply_mor(g, args)


def _unit_tuple(P, n):
    return (P.unit,) * n


def check_unitality(P: TruncatedOperad, name: str = "unitality") -> Report:
    """Both unit laws, on every object and morphism of every component."""
    checked = 0
    for n in range(1, P.bound + 1):
        C = P.component(n)
        idn = identity_surjection(n)
        bn = bang(n)
        e_id = P.unit_morphism()
        for a in C.objects:
            checked += 2
            lhs = P.apply_obj(idn, (a,) + _unit_tuple(P, n))
            if lhs != a:
                return Report(name, FAIL, checked,
                              witness=("identity law on object", n, a, lhs))
            lhs = P.apply_obj(bn, (P.unit, a))
            if lhs != a:
                return Report(name, FAIL, checked,
                              witness=("bang law on object", n, a, lhs))
        for m in C.morphism_ids():
            checked += 2
            lhs = P.apply_mor(idn, (m,) + (e_id,) * n)
            if lhs != m:
                return Report(name, FAIL, checked,
                              witness=("identity law on morphism", n, m, lhs))
            lhs = P.apply_mor(bn, (e_id, m))
            if lhs != m:
                return Report(name, FAIL, checked,
                              witness=("bang law on morphism", n, m, lhs))
    return Report(name, PASS, checked)


def _composable_pairs(bound):
    """All pairs f: m -> k, g: k -> n with m <= bound."""
    for m in range(1, bound + 1):
        for k in range(1, m + 1):
            for f in enumerate_surjections(m, k):
                for n in range(1, k + 1):
                    for g in enumerate_surjections(k, n):
                        yield f, g


def _assoc_instance(P, f, g, c, bs, as_, on_morphisms):
    """Both sides of the elementwise associativity equation."""
    apply = P.apply_mor if on_morphisms else P.apply_obj
    lhs = apply(f, (apply(g, (c,) + bs),) + as_)
    blocks = block_cut(as_, g)
    inner = tuple(apply(induced_map(f, g, i + 1), (bs[i],) + blocks[i])
                  for i in range(g.cod))
    rhs = apply(compose(f, g), (c,) + inner)
    return lhs, rhs


def check_associativity(P: TruncatedOperad, cap: int | None = DEFAULT_CAP,
                        name: str = "associativity", seed: int = 0) -> Report:
    """Elementwise associativity over all composable surjection pairs.

    Object tuples are checked exhaustively; morphism tuples are checked
    exhaustively while the total stays within the cap and on a
    deterministic sample of 10000 tuples per surjection pair otherwise.
    """
    checked = 0
    sampled = False
    for f, g in _composable_pairs(P.bound):
        obj_slots = [P.component(g.cod).objects] + \
            [P.component(s).objects for s in g.fiber_sizes()] + \
            [P.component(s).objects for s in f.fiber_sizes()]
        mor_slots = [P.component(g.cod).morphism_ids()] + \
            [P.component(s).morphism_ids() for s in g.fiber_sizes()] + \
            [P.component(s).morphism_ids() for s in f.fiber_sizes()]
        nb = g.cod
        for tup in itertools.product(*obj_slots):
            checked += 1
            c, bs, as_ = tup[0], tup[1:1 + nb], tup[1 + nb:]
            lhs, rhs = _assoc_instance(P, f, g, c, bs, as_, on_morphisms=False)
            if lhs != rhs:
                return Report(name, FAIL, checked,
                              witness=(str(f), str(g), tup, lhs, rhs))
        total = 1
        for s in mor_slots:
            total *= len(s)
        radix = [len(s) for s in mor_slots]
        if cap is not None and checked + total > cap:
            rng = random.Random(seed)
            sampled = True
            picks = sorted(rng.randrange(total) for _ in range(min(total, 10_000)))
        else:
            picks = range(total)
        for idx in picks:
            checked += 1
            tup = []
            rem = idx
            for r, slot in zip(reversed(radix), reversed(mor_slots)):
                tup.append(slot[rem % r])
                rem //= r
            tup = tuple(reversed(tup))
            c, bs, as_ = tup[0], tup[1:1 + nb], tup[1 + nb:]
            lhs, rhs = _assoc_instance(P, f, g, c, bs, as_, on_morphisms=True)
            if lhs != rhs:
                return Report(name, FAIL, checked,
                              witness=(str(f), str(g), tup, lhs, rhs))
    notes = ["morphism tuples sampled"] if sampled else []
    return Report(name, PASS, checked, notes=notes)


def validate_operad(P: TruncatedOperad, deep: bool = False,
                    cap: int | None = DEFAULT_CAP) -> list[Report]:
    """Structural validation; with ``deep`` also the full axiom checks.

    The light pass checks each component is a category, that every
    required mu functor is present and well typed on objects, the unit
    laws, and object-level associativity.  That keeps construction of
    large integrations cheap while still rejecting malformed input.
    """
    reports = []
    for n in range(1, P.bound + 1):
        reports.append(validate_category(P.component(n), "category P_%d" % n))
    missing = [str(g) for g in all_surjections_up_to(P.bound) if g not in P.mu]
    struct = Report("mu coverage", PASS if not missing else FAIL,
                    checked=len(list(all_surjections_up_to(P.bound))),
                    witness=missing[:5] or None)
    reports.append(struct)
    if not P.is_object(1, P.unit):
        reports.append(Report("unit", FAIL, 1, witness=P.unit))
    typed = Report("mu typing", PASS, 0)
    for g in all_surjections_up_to(P.bound):
        if g not in P.mu:
            continue
        slots = [P.component(a).objects for a in P.arg_arities(g)]
        for tup in itertools.product(*slots):
            typed.checked += 1
            value = P.mu[g].obj_map.get(tup)
            if value is None or not P.is_object(g.dom, value):
                typed.status = FAIL
                typed.witness = (str(g), tup, value)
                break
        if typed.status == FAIL:
            break
    reports.append(typed)
    if all(r.ok for r in reports):
        reports.append(check_unitality(P))
        if deep:
            reports.append(check_associativity(P, cap=cap))
            for g in all_surjections_up_to(P.bound):
                reports.append(validate_functor(P.mu[g], "mu functor %s" % g))
        else:
            obj_only = _object_level_associativity(P)
            reports.append(obj_only)
    return reports


def _object_level_associativity(P) -> Report:
    checked = 0
    for f, g in _composable_pairs(P.bound):
        slots = [P.component(g.cod).objects] + \
            [P.component(s).objects for s in g.fiber_sizes()] + \
            [P.component(s).objects for s in f.fiber_sizes()]
        nb = g.cod
        for tup in itertools.product(*slots):
            checked += 1
            c, bs, as_ = tup[0], tup[1:1 + nb], tup[1 + nb:]
            lhs, rhs = _assoc_instance(P, f, g, c, bs, as_, on_morphisms=False)
            if lhs != rhs:
                return Report("associativity (objects)", FAIL, checked,
                              witness=(str(f), str(g), tup, lhs, rhs))
    return Report("associativity (objects)", PASS, checked)


# ---------------------------------------------------------------------------
# operad morphisms


@dataclass
class OperadMorphism:
    source: TruncatedOperad
    target: TruncatedOperad
    functors: dict[int, Functor]
    name: str = "morphism"

    def on_obj(self, n, a):
        return self.functors[n].obj_map[a]

    def on_mor(self, n, m):
        return self.functors[n].mor_map[m]


def validate_operad_morphism(F: OperadMorphism, cap: int | None = DEFAULT_CAP,
                             name: str | None = None) -> Report:
    """Check functoriality per arity, unit preservation, and both
    compatibility squares with the composition functors."""
    name = name or ("operad morphism %s" % F.name)
    P, Q = F.source, F.target
    if P.bound != Q.bound:
        return Report(name, FAIL, 0, witness="bounds differ")
    checked = 0
    for n in range(1, P.bound + 1):
        sub = validate_functor(F.functors[n], "component %d" % n)
        checked += sub.checked
        if not sub.ok:
            return Report(name, FAIL, checked, witness=sub.witness)
    if F.on_obj(1, P.unit) != Q.unit:
        return Report(name, FAIL, checked, witness=("unit not preserved",
                                                    F.on_obj(1, P.unit)))
    budget = Budget(cap)
    for g in all_surjections_up_to(P.bound):
        arities = P.arg_arities(g)
        obj_slots = [P.component(a).objects for a in arities]
        for tup in itertools.product(*obj_slots):
            checked += 1
            budget.spend()
            lhs = F.on_obj(g.dom, P.apply_obj(g, tup))
            rhs = Q.apply_obj(g, tuple(F.on_obj(n, a) for n, a in zip(arities, tup)))
            if lhs != rhs:
                return Report(name, FAIL, checked, witness=(str(g), tup, lhs, rhs))
        mor_slots = [P.component(a).morphism_ids() for a in arities]
        for tup in itertools.product(*mor_slots):
            checked += 1
            if not budget.spend():
                return Report(name, CAPPED, checked,
                              notes=["cap %r reached" % budget.cap])
            lhs = F.on_mor(g.dom, P.apply_mor(g, tup))
            rhs = Q.apply_mor(g, tuple(F.on_mor(n, m) for n, m in zip(arities, tup)))
            if lhs != rhs:
                return Report(name, FAIL, checked, witness=(str(g), tup, lhs, rhs))
    return Report(name, PASS, checked)


def identity_operad_morphism(P: TruncatedOperad) -> OperadMorphism:
    from .fincat import identity_functor
    return OperadMorphism(P, P, {n: identity_functor(P.component(n))
                                 for n in range(1, P.bound + 1)}, name="identity")


def morphism_to_terminal(P: TruncatedOperad) -> OperadMorphism:
    """The unique morphism into the terminal operad of the same bound."""
    Q = terminal_operad(P.bound)
    functors = {}
    for n in range(1, P.bound + 1):
        C, D = P.component(n), Q.component(n)
        star = D.objects[0]
        functors[n] = Functor(C, D, {x: star for x in C.objects},
                              {m: D.id_of(star) for m in C.morphism_ids()})
    return OperadMorphism(P, Q, functors, name="to terminal")


# ---------------------------------------------------------------------------
# builders


def _mu_functor(P_components, g, obj_rule, mor_rule) -> Functor:
    """Materialize a composition functor from semantic rules."""
    arities = (g.cod,) + g.fiber_sizes()
    cats = [P_components[a] for a in arities]
    source = product(cats)
    target = P_components[g.dom]
    obj_map = {tup: obj_rule(tup) for tup in source.objects}
    mor_map = {mids: mor_rule(mids) for mids in source.morphism_ids()}
    return Functor(source, target, obj_map, mor_map)


def nat_operad(M: int, name: str | None = None) -> TruncatedOperad:
    """Saturating-addition operad on the chain 0..M.

    Concentrated in arity one: the single component is the poset
    {0..M} with arrows a -> b for a >= b, the unit is 0, and the only
    composition functor sends (a, b) to min(a + b, M).  On values whose
    true sum stays within the bound this is plain addition.
    """
    if M < 0:
        raise ValueError("need M >= 0")
    C = poset_category(range(M + 1), lambda a, b: a <= b)
    components = {1: C}

    def add(a, b):
        return min(a + b, M)

    g = identity_surjection(1)
    mu = {g: _mu_functor(components, g,
                         lambda tup: add(*tup),
                         lambda ms: (add(ms[0][0], ms[1][0]), add(ms[0][1], ms[1][1])))}
    return TruncatedOperad(1, components, 0, mu, name=name or ("nat:%d" % M))


def tree_operad(N: int, name: str | None = None) -> TruncatedOperad:
    """The grafting operad of reduced planar rooted trees, up to N leaves.

    Component n is the poset of trees with n leaves ordered by edge
    contraction (an arrow s -> t exists when t is obtained from s by
    contractions); mu_g grafts the argument trees onto the leaves of the
    first one, block by block along g; the unit is the bare leaf.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    components = {}
    for n in range(1, N + 1):
        elems = T.enumerate_trees(n)
        components[n] = poset_category(elems, lambda t, s: T.contracts_to(s, t))
    mu = {}
    for g in all_surjections_up_to(N):
        def obj_rule(tup, g=g):
            return T.graft(tup[0], tup[1:])

        def mor_rule(mids, g=g):
            srcs = tuple(m[0] for m in mids)
            dsts = tuple(m[1] for m in mids)
            return (T.graft(srcs[0], srcs[1:]), T.graft(dsts[0], dsts[1:]))

        mu[g] = _mu_functor(components, g, obj_rule, mor_rule)
    return TruncatedOperad(N, components, T.LEAF, mu, name=name or ("trees:%d" % N))


def terminal_operad(N: int, name: str | None = None) -> TruncatedOperad:
    """One object and one morphism in every arity; everything collapses."""
    if N < 1:
        raise ValueError("need N >= 1")
    components = {n: terminal_category("*") for n in range(1, N + 1)}
    star = "*"
    mu = {}
    for g in all_surjections_up_to(N):
        mu[g] = _mu_functor(components, g,
                            lambda tup: star,
                            lambda ms: ("id", star))
    return TruncatedOperad(N, components, star, mu, name=name or ("terminal:%d" % N))
