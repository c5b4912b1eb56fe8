"""Finite categories presented by explicit tables, and functors between them.

Objects and morphisms are identified by hashable ids; composition is
either a table ``{(g, f): g∘f}`` or a callable computing composites on
demand (products use the callable form, since their tables can be large).
Morphism equality is id equality throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .report import FAIL, PASS, Report
from .surjections import CompositionError


class FinCat:
    def __init__(self, objects, morphisms, identity, compose):
        """A finite category.

        ``morphisms`` is an iterable of ``(id, src, dst)`` triples;
        ``identity`` maps each object to its identity morphism id;
        ``compose`` is a dict keyed by ``(g, f)`` for composable pairs
        (f first), or a callable ``(g, f) -> g∘f``.
        """
        self._objects = tuple(objects)
        self._obj_set = set(self._objects)
        self._mor = {}
        for mid, src, dst in morphisms:
            if mid in self._mor:
                raise ValueError("duplicate morphism id %r" % (mid,))
            self._mor[mid] = (src, dst)
        self._identity = dict(identity)
        self._compose = compose
        self._hom = None

    @property
    def objects(self):
        return self._objects

    def morphism_ids(self):
        return tuple(self._mor)

    def morphisms(self):
        """Triples (id, src, dst) in presentation order."""
        return tuple((m, s, d) for m, (s, d) in self._mor.items())

    def __contains__(self, obj):
        return obj in self._obj_set

    def has_morphism(self, mid):
        return mid in self._mor

    def src(self, mid):
        return self._mor[mid][0]

    def dst(self, mid):
        return self._mor[mid][1]

    def id_of(self, obj):
        return self._identity[obj]

    def is_identity(self, mid) -> bool:
        src, dst = self._mor[mid]
        return src == dst and self._identity.get(src) == mid

    def compose(self, g, f):
        """The composite g∘f (f acts first)."""
        if self.dst(f) != self.src(g):
            raise CompositionError("morphisms %r and %r are not composable" % (f, g))
        if callable(self._compose):
            return self._compose(g, f)
        try:
            return self._compose[(g, f)]
        except KeyError:
            raise ValueError("missing composite for (%r, %r)" % (g, f)) from None

    def hom(self, a, b):
        """Morphism ids a -> b, in presentation order."""
        if self._hom is None:
            index = {}
            for mid, (src, dst) in self._mor.items():
                index.setdefault((src, dst), []).append(mid)
            self._hom = {k: tuple(v) for k, v in index.items()}
        return self._hom.get((a, b), ())

    def composable_pairs(self):
        for g, (gs, _) in self._mor.items():
            for a in self._objects:
                for f in self.hom(a, gs):
                    yield g, f

    def counts(self):
        return len(self._objects), len(self._mor)


def terminal_category(obj="*") -> FinCat:
    mid = ("id", obj)
    return FinCat([obj], [(mid, obj, obj)], {obj: mid}, {(mid, mid): mid})


def poset_category(elements, le) -> FinCat:
    """The category of a finite poset, with arrows running downward.

    ``le(a, b)`` should hold when ``a <= b``; there is then one morphism
    ``b -> a``, whose id is the pair ``(b, a)``.  (This matches the usual
    convention for the naturals ordered by >=: an arrow a -> b exists
    when a >= b.)
    """
    elements = tuple(elements)
    morphisms = []
    for src in elements:
        for dst in elements:
            if le(dst, src):
                morphisms.append(((src, dst), src, dst))
    identity = {x: (x, x) for x in elements}

    def _compose(g, f):
        # pair ids compose by endpoints; the relation is transitive
        return (f[0], g[1])

    return FinCat(elements, morphisms, identity, _compose)


def product(cats) -> FinCat:
    """Product category: tuple objects, tuple morphisms, componentwise composition."""
    cats = list(cats)
    if not cats:
        raise ValueError("product of an empty list of categories")
    objects = list(itertools.product(*[c.objects for c in cats]))
    morphisms = []
    for mids in itertools.product(*[c.morphism_ids() for c in cats]):
        src = tuple(c.src(m) for c, m in zip(cats, mids))
        dst = tuple(c.dst(m) for c, m in zip(cats, mids))
        morphisms.append((tuple(mids), src, dst))
    identity = {obj: tuple(c.id_of(x) for c, x in zip(cats, obj)) for obj in objects}

    def _compose(g, f):
        return tuple(c.compose(gi, fi) for c, gi, fi in zip(cats, g, f))

    return FinCat(objects, morphisms, identity, _compose)


def validate_category(C: FinCat, name: str = "category") -> Report:
    """Check the category axioms, reporting every violated instance."""
    problems = []
    checked = 0
    for x in C.objects:
        checked += 1
        mid = C._identity.get(x)
        if mid is None or not C.has_morphism(mid):
            problems.append("object %r has no identity morphism" % (x,))
        elif C._mor[mid] != (x, x):
            problems.append("identity of %r has endpoints %r" % (x, C._mor[mid]))
    if not callable(C._compose):
        composable = set()
        for g, f in C.composable_pairs():
            composable.add((g, f))
        table = set(C._compose)
        for key in sorted(composable - table, key=repr):
            problems.append("missing composite for pair %r" % (key,))
        for key in sorted(table - composable, key=repr):
            problems.append("composite defined for non-composable pair %r" % (key,))
    for g, f in C.composable_pairs():
        checked += 1
        try:
            gf = C.compose(g, f)
        except (ValueError, KeyError):
            continue  # already reported above for table categories
        if not C.has_morphism(gf):
            problems.append("composite of (%r, %r) is not a morphism: %r" % (g, f, gf))
        elif C._mor[gf] != (C.src(f), C.dst(g)):
            problems.append("composite of (%r, %r) has wrong endpoints" % (g, f))
    for mid, (src, dst) in C._mor.items():
        checked += 1
        try:
            if C.compose(mid, C.id_of(src)) != mid:
                problems.append("right identity law fails at %r" % (mid,))
            if C.compose(C.id_of(dst), mid) != mid:
                problems.append("left identity law fails at %r" % (mid,))
        except (ValueError, KeyError):
            problems.append("identity laws cannot be evaluated at %r" % (mid,))
    for h in C.morphism_ids():
        for g in _into(C, C.src(h)):
            for f in _into(C, C.src(g)):
                checked += 1
                try:
                    if C.compose(C.compose(h, g), f) != C.compose(h, C.compose(g, f)):
                        problems.append("associativity fails on (%r, %r, %r)" % (h, g, f))
                except (ValueError, KeyError):
                    problems.append("associativity cannot be evaluated on (%r, %r, %r)"
                                    % (h, g, f))
    status = PASS if not problems else FAIL
    return Report(name, status, checked, witness=problems[:5] or None,
                  notes=["%d problem(s)" % len(problems)] if problems else [])


def _into(C: FinCat, x):
    for a in C.objects:
        yield from C.hom(a, x)


@dataclass
class Functor:
    """A functor given by explicit object and morphism tables."""

    source: FinCat
    target: FinCat
    obj_map: dict
    mor_map: dict

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, m):
        return self.mor_map[m]


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, {x: x for x in C.objects},
                   {m: m for m in C.morphism_ids()})


def compose_functors(G: Functor, F: Functor) -> Functor:
    if F.target is not G.source and F.target.counts() != G.source.counts():
        raise ValueError("functors are not composable")
    return Functor(F.source, G.target,
                   {x: G.obj_map[y] for x, y in F.obj_map.items()},
                   {m: G.mor_map[n] for m, n in F.mor_map.items()})


def validate_functor(F: Functor, name: str = "functor") -> Report:
    problems = []
    checked = 0
    C, D = F.source, F.target
    for x in C.objects:
        checked += 1
        if x not in F.obj_map:
            problems.append("object %r has no image" % (x,))
        elif F.obj_map[x] not in D:
            problems.append("image of object %r is not in the target" % (x,))
    for m, src, dst in C.morphisms():
        checked += 1
        if m not in F.mor_map:
            problems.append("morphism %r has no image" % (m,))
            continue
        fm = F.mor_map[m]
        if not D.has_morphism(fm):
            problems.append("image of morphism %r is not in the target" % (m,))
            continue
        if (D.src(fm), D.dst(fm)) != (F.obj_map.get(src), F.obj_map.get(dst)):
            problems.append("morphism %r is sent across wrong endpoints" % (m,))
    for x in C.objects:
        checked += 1
        if F.mor_map.get(C.id_of(x)) != D.id_of(F.obj_map.get(x)):
            problems.append("identity of %r is not preserved" % (x,))
    for g, f in C.composable_pairs():
        checked += 1
        lhs = F.mor_map.get(C.compose(g, f))
        try:
            rhs = D.compose(F.mor_map.get(g), F.mor_map.get(f))
        except (ValueError, KeyError, CompositionError):
            rhs = None
        if lhs != rhs or lhs is None:
            problems.append("composition not preserved on (%r, %r)" % (g, f))
    status = PASS if not problems else FAIL
    return Report(name, status, checked, witness=problems[:5] or None)


def terminal_object(C: FinCat):
    """A terminal object with its witness maps, or None.

    Returns ``(t, {x: the unique morphism x -> t})`` when some object
    receives exactly one morphism from every object.
    """
    for t in C.objects:
        witness = {}
        for x in C.objects:
            arrows = C.hom(x, t)
            if len(arrows) != 1:
                witness = None
                break
            witness[x] = arrows[0]
        if witness is not None:
            return t, witness
    return None


@dataclass
class IsoResult:
    status: str  # "found" | "none" | "too-large"
    forward: Functor | None = None
    backward: Functor | None = None

    @property
    def found(self):
        return self.status == "found"


def categories_isomorphic(C: FinCat, D: FinCat, max_objects: int = 64,
                          max_steps: int = 500_000) -> IsoResult:
    """Search for an isomorphism of categories by exhaustive matching.

    Object bijections are pruned by hom-set cardinality signatures; the
    morphism bijection is forced on hom-sets of size one and backtracked
    otherwise.  Searches beyond ``max_objects`` objects or ``max_steps``
    candidate extensions abort with status ``too-large``.
    """
    if C.counts() != D.counts():
        return IsoResult("none")
    n = len(C.objects)
    if n > max_objects:
        return IsoResult("too-large")

    def sig(cat, x):
        profile = sorted((len(cat.hom(x, y)), len(cat.hom(y, x))) for y in cat.objects)
        return tuple(profile), len(cat.hom(x, x))

    c_sigs = {x: sig(C, x) for x in C.objects}
    d_sigs = {y: sig(D, y) for y in D.objects}
    if sorted(c_sigs.values()) != sorted(d_sigs.values()):
        return IsoResult("none")

    steps = [0]

    def assign_objects(i, obj_map, used):
        if steps[0] > max_steps:
            raise _TooLarge
        if i == n:
            yield dict(obj_map)
            return
        x = C.objects[i]
        for y in D.objects:
            if y in used or d_sigs[y] != c_sigs[x]:
                continue
            ok = True
            for x2, y2 in obj_map.items():
                if len(C.hom(x, x2)) != len(D.hom(y, y2)) or \
                   len(C.hom(x2, x)) != len(D.hom(y2, y)):
                    ok = False
                    break
            if not ok:
                continue
            steps[0] += 1
            obj_map[x] = y
            used.add(y)
            yield from assign_objects(i + 1, obj_map, used)
            del obj_map[x]
            used.discard(y)

    def assign_morphisms(obj_map):
        pairs = [(a, b) for a in C.objects for b in C.objects if C.hom(a, b)]
        mor_map = {}
        for x in C.objects:
            mor_map[C.id_of(x)] = D.id_of(obj_map[x])

        def fill(idx):
            if steps[0] > max_steps:
                raise _TooLarge
            if idx == len(pairs):
                F = Functor(C, D, dict(obj_map), dict(mor_map))
                if validate_functor(F).ok:
                    yield F
                return
            a, b = pairs[idx]
            src_hom = [m for m in C.hom(a, b) if m not in mor_map]
            dst_hom = [m for m in D.hom(obj_map[a], obj_map[b])
                       if m not in mor_map.values()]
            if not src_hom:
                yield from fill(idx + 1)
                return
            for perm in itertools.permutations(dst_hom):
                steps[0] += 1
                for m, fm in zip(src_hom, perm):
                    mor_map[m] = fm
                yield from fill(idx + 1)
                for m in src_hom:
                    del mor_map[m]

        yield from fill(0)

    try:
        for obj_map in assign_objects(0, {}, set()):
            for F in assign_morphisms(obj_map):
                inverse = Functor(D, C,
                                  {y: x for x, y in F.obj_map.items()},
                                  {fm: m for m, fm in F.mor_map.items()})
                return IsoResult("found", F, inverse)
    except _TooLarge:
        return IsoResult("too-large")
    return IsoResult("none")


class _TooLarge(Exception):
    pass
