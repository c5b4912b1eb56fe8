"""The integration 2-category of a truncated operad.

0-cells are pairs [m, a] with a an object of P_m; a 1-cell
[f; a_1..a_k; alpha]: [m, a] -> [k, b] carries a surjection f: m -> k,
an object a_i of P_{f^{-1}(i)} for each i, and a morphism
alpha: mu_f(b, a_1..a_k) -> a of P_m.  2-cells exist only between
1-cells with the same surjection and are tuples of component morphisms
delta_i: a'_i -> a''_i subject to  alpha'' o mu_f(1, delta) = alpha'.

Every hom is materialized on demand as a finite category of 1-cells and
2-cells; the projection to the surjection calculus is carried on the
cells themselves (the ``f`` field), never recomputed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .fincat import FinCat, terminal_object
from .operads import OperadMorphism, TruncatedOperad, validate_operad, \
    validate_operad_morphism
from .report import CAPPED, DEFAULT_CAP, FAIL, PASS, Budget, Report
from .surjections import CompositionError, Surjection, block_cut, compose, \
    identity_surjection, induced_map


class InvalidOperad(ValueError):
    """The operad handed to ``integrate`` failed structural validation."""


@dataclass(frozen=True)
class ZeroCell:
    arity: int
    obj: Any

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.arity, self.obj)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "[%d,%s]" % (self.arity, self.obj)


@dataclass(frozen=True)
class OneCell:
    f: Surjection
    args: tuple
    alpha: Any
    src: ZeroCell
    dst: ZeroCell

    def __post_init__(self):
        object.__setattr__(
            self, "_hash",
            hash((self.f, self.args, self.alpha, self.src, self.dst)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "[%s; %s; %s]: %s -> %s" % (
            self.f, ",".join(map(str, self.args)), self.alpha, self.src, self.dst)


@dataclass(frozen=True)
class TwoCell:
    src: OneCell
    dst: OneCell
    deltas: tuple

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.src, self.dst, self.deltas)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "(%s) => (%s) via %s" % (self.src, self.dst, list(self.deltas))


@dataclass(frozen=True)
class LaxTriangle:
    """A triangle d0 o d2 => d1 with the given filler 2-cell.

    ``d2`` is the top map z -> y, ``d0`` the right face y -> x, ``d1``
    the left face z -> x; the filler runs from the composite to d1.
    """

    d2: Any
    d1: Any
    d0: Any
    filler: Any

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((self.d2, self.d1, self.d0, self.filler)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class SliceTwoCell:
    """A 2-cell of the lax slice between two parallel triangles onto d0.

    ``gamma`` is a 2-cell d2(src) => d2(dst) whiskering compatibly with
    the fillers; ``src`` and ``dst`` share both faces d0 and d1.
    """

    d0: Any
    src: LaxTriangle
    dst: LaxTriangle
    gamma: Any

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((self.d0, self.src, self.dst, self.gamma)))

    def __hash__(self):
        return self._hash


class Integration:
    """The 2-category integrating a valid truncated operad."""

    def __init__(self, P: TruncatedOperad, validate: bool = True):
        if validate:
            bad = [r for r in validate_operad(P) if not r.ok]
            if bad:
                raise InvalidOperad("; ".join(r.line() for r in bad))
        self.P = P
        self._homs: dict = {}
        self._hcomp: dict = {}
        self._hcomp2: dict = {}
        self._vcomp: dict = {}
        self._id1: dict = {}
        self._id2: dict = {}
        self._fibtri: dict = {}
        self._zero = tuple(ZeroCell(n, a)
                           for n in range(1, P.bound + 1)
                           for a in P.component(n).objects)

    # -- cells ------------------------------------------------------------

    def zero_cells(self) -> tuple:
        return self._zero

    def one_cell(self, f: Surjection, args, alpha, dst: ZeroCell) -> OneCell:
        """Build a validated 1-cell with target ``dst``."""
        P = self.P
        args = tuple(args)
        if dst.arity != f.cod:
            raise ValueError("target %s does not match %s" % (dst, f))
        sizes = f.fiber_sizes()
        if len(args) != f.cod:
            raise ValueError("expected %d middle objects, got %d" % (f.cod, len(args)))
        source_obj = P.apply_obj(f, (dst.obj,) + args)
        C = P.component(f.dom)
        if not C.has_morphism(alpha):
            raise ValueError("%r is not a morphism of the arity-%d component"
                             % (alpha, f.dom))
        if C.src(alpha) != source_obj:
            raise ValueError("component morphism %r should start at %r"
                             % (alpha, source_obj))
        src = ZeroCell(f.dom, C.dst(alpha))
        cell = OneCell(f, args, alpha, src, dst)
        for i, (size, a) in enumerate(zip(sizes, args), start=1):
            if not P.is_object(size, a):
                raise ValueError("middle object %d of %s has wrong arity" % (i, cell))
        return cell

    def identity_one_cell(self, x: ZeroCell) -> OneCell:
        if x not in self._id1:
            e = self.P.unit
            ident = self.P.component(x.arity).id_of(x.obj)
            self._id1[x] = self.one_cell(identity_surjection(x.arity),
                                         (e,) * x.arity, ident, x)
        return self._id1[x]

    def two_cell(self, src: OneCell, dst: OneCell, deltas) -> TwoCell:
        """Build a validated 2-cell; raises if the compatibility fails."""
        deltas = tuple(deltas)
        if src.f != dst.f or src.src != dst.src or src.dst != dst.dst:
            raise ValueError("no 2-cells between %s and %s" % (src, dst))
        P = self.P
        for size, d, a1, a2 in zip(src.f.fiber_sizes(), deltas, src.args, dst.args):
            C = P.component(size)
            if not C.has_morphism(d) or C.src(d) != a1 or C.dst(d) != a2:
                raise ValueError("component %r does not run %r -> %r" % (d, a1, a2))
        whisker = P.apply_mixed(src.f, (dst.dst.obj,) + deltas)
        if P.compose_in(src.f.dom, dst.alpha, whisker) != src.alpha:
            raise ValueError("2-cell condition fails for %s => %s" % (src, dst))
        return TwoCell(src, dst, deltas)

    def identity_two_cell(self, cell: OneCell) -> TwoCell:
        if cell not in self._id2:
            ids = tuple(self.P.component(s).id_of(a)
                        for s, a in zip(cell.f.fiber_sizes(), cell.args))
            self._id2[cell] = TwoCell(cell, cell, ids)
        return self._id2[cell]

    # -- composition ------------------------------------------------------

    def h_compose(self, second: OneCell, first: OneCell) -> OneCell:
        """Horizontal composite: ``first`` then ``second``."""
        key = (second, first)
        if key in self._hcomp:
            return self._hcomp[key]
        if first.dst != second.src:
            raise CompositionError("cells %s and %s do not meet" % (first, second))
        P = self.P
        f, g = first.f, second.f
        blocks = block_cut(first.args, g)
        new_args = tuple(
            P.apply_obj(induced_map(f, g, i), (second.args[i - 1],) + blocks[i - 1])
            for i in range(1, g.cod + 1))
        whisker = P.apply_mixed(f, (second.alpha,) + first.args)
        alpha = P.compose_in(f.dom, first.alpha, whisker)
        out = self.one_cell(compose(f, g), new_args, alpha, second.dst)
        self._hcomp[key] = out
        return out

    def v_compose(self, second: TwoCell, first: TwoCell) -> TwoCell:
        key = (second, first)
        out = self._vcomp.get(key)
        if out is not None:
            return out
        if first.dst != second.src:
            raise CompositionError("2-cells do not meet")
        P = self.P
        deltas = tuple(P.compose_in(s, d2, d1)
                       for s, d2, d1 in zip(first.src.f.fiber_sizes(),
                                            second.deltas, first.deltas))
        out = TwoCell(first.src, second.dst, deltas)
        self._vcomp[key] = out
        return out

    def h_compose_2cells(self, second: TwoCell, first: TwoCell) -> TwoCell:
        """Horizontal composition of 2-cells, componentwise through mu.

        The component over fiber i of the composite surjection is
        mu_{f^i}(eps_i, block of deltas), f the inner surjection.
        """
        key = (second, first)
        if key in self._hcomp2:
            return self._hcomp2[key]
        P = self.P
        f, g = first.src.f, second.src.f
        blocks = block_cut(first.deltas, g)
        comps = tuple(
            P.apply_mor(induced_map(f, g, i), (second.deltas[i - 1],) + blocks[i - 1])
            for i in range(1, g.cod + 1))
        src = self.h_compose(second.src, first.src)
        dst = self.h_compose(second.dst, first.dst)
        out = self.two_cell(src, dst, comps)
        self._hcomp2[key] = out
        return out

    # protocol aliases used by the operadic layer
    compose1 = h_compose
    identity1 = identity_one_cell
    vcompose2 = v_compose
    hcompose2 = h_compose_2cells
    identity2 = identity_two_cell

    # -- homs ---------------------------------------------------------------

    def one_cells(self, x: ZeroCell, y: ZeroCell):
        """All 1-cells x -> y, in deterministic order."""
        from .surjections import enumerate_surjections
        P = self.P
        out = []
        Cm = P.component(x.arity)
        for f in enumerate_surjections(x.arity, y.arity):
            sizes = f.fiber_sizes()
            for args in itertools.product(*[P.component(s).objects for s in sizes]):
                source_obj = P.apply_obj(f, (y.obj,) + args)
                for alpha in Cm.hom(source_obj, x.obj):
                    out.append(OneCell(f, args, alpha, x, y))
        return out

    def hom(self, x: ZeroCell, y: ZeroCell) -> FinCat:
        """The hom-category x -> y: objects 1-cells, morphisms 2-cells."""
        key = (x, y)
        if key in self._homs:
            return self._homs[key]
        P = self.P
        cells = self.one_cells(x, y)
        twos = []
        by_f: dict = {}
        for c in cells:
            by_f.setdefault(c.f, []).append(c)
        for f, group in by_f.items():
            sizes = f.fiber_sizes()
            for src in group:
                for dst in group:
                    slots = [P.hom(s, a1, a2)
                             for s, a1, a2 in zip(sizes, src.args, dst.args)]
                    for deltas in itertools.product(*slots):
                        whisker = P.apply_mixed(f, (y.obj,) + deltas)
                        if P.compose_in(f.dom, dst.alpha, whisker) == src.alpha:
                            twos.append(TwoCell(src, dst, deltas))
        by_src: dict = {}
        for t in twos:
            by_src.setdefault(t.src, []).append(t)
        comp = {}
        for t1 in twos:
            for t2 in by_src.get(t1.dst, ()):
                comp[(t2, t1)] = self.v_compose(t2, t1)
        identity = {c: self.identity_two_cell(c) for c in cells}
        cat = FinCat(cells, [(t, t.src, t.dst) for t in twos], identity, comp)
        self._homs[key] = cat
        return cat

    def all_one_cells(self):
        for x in self._zero:
            for y in self._zero:
                yield from self.hom(x, y).objects

    def cells_into(self, x: ZeroCell):
        for z in self._zero:
            for cell in self.hom(z, x).objects:
                yield cell

    # -- factorization, fibers, lifts --------------------------------------

    def factorize(self, phi: OneCell) -> tuple[OneCell, OneCell]:
        """Split a 1-cell as a pure component morphism followed by a
        component-free cell: phi = [f; args; 1] o [1; e..e; alpha]."""
        P = self.P
        m = phi.f.dom
        s = P.component(m).src(phi.alpha)
        mid = ZeroCell(m, s)
        e_part = self.one_cell(identity_surjection(m), (P.unit,) * m, phi.alpha, mid)
        m_part = self.one_cell(phi.f, phi.args, P.component(m).id_of(s), phi.dst)
        return e_part, m_part

    def in_e_subcategory(self, cell: OneCell) -> bool:
        return cell.f.is_identity() and all(a == self.P.unit for a in cell.args)

    def in_m_subcategory(self, cell: OneCell) -> bool:
        return self.P.component(cell.f.dom).is_identity(cell.alpha)

    def fibers_of_1cell(self, phi: OneCell) -> tuple[ZeroCell, ...]:
        return tuple(ZeroCell(s, a) for s, a in zip(phi.f.fiber_sizes(), phi.args))

    def cartesian_lift(self, g: Surjection, c_cell: ZeroCell, fiber_cells) -> OneCell:
        """The canonical lift [g; b_1..b_n; 1] with source [k, mu_g(c, b)]."""
        fiber_cells = tuple(fiber_cells)
        if c_cell.arity != g.cod:
            raise ValueError("target %s does not match %s" % (c_cell, g))
        sizes = g.fiber_sizes()
        if tuple(fc.arity for fc in fiber_cells) != sizes:
            raise ValueError("fiber arities %r do not match %s"
                             % ([fc.arity for fc in fiber_cells], g))
        bs = tuple(fc.obj for fc in fiber_cells)
        s = self.P.apply_obj(g, (c_cell.obj,) + bs)
        return self.one_cell(g, bs, self.P.component(g.dom).id_of(s), c_cell)

    def lax_triangle(self, d2: OneCell, d1: OneCell, d0: OneCell,
                     filler: TwoCell) -> LaxTriangle:
        composite = self.h_compose(d0, d2)
        if filler.src != composite or filler.dst != d1:
            raise ValueError("filler does not run from the composite to d1")
        return LaxTriangle(d2, d1, d0, filler)

    def triangles_onto(self, phi: OneCell, d2_pi: Surjection | None = None):
        """All lax triangles with right face ``phi``, optionally with the
        top surjection pinned."""
        y, x = phi.src, phi.dst
        for z in self._zero:
            hom_zy = self.hom(z, y)
            hom_zx = self.hom(z, x)
            for psi in hom_zy.objects:
                if d2_pi is not None and psi.f != d2_pi:
                    continue
                composite = self.h_compose(phi, psi)
                for theta in hom_zx.objects:
                    for filler in hom_zx.hom(composite, theta):
                        yield LaxTriangle(psi, theta, phi, filler)

    def fibers_of_lax_triangle(self, tri: LaxTriangle) -> tuple[OneCell, ...]:
        """The induced 1-cells between the fibers of d1 and d0."""
        cached = self._fibtri.get(tri)
        if cached is not None:
            return cached
        psi, phi, theta = tri.d2, tri.d0, tri.d1
        f, g = psi.f, phi.f
        blocks = block_cut(psi.args, g)
        deltas = tri.filler.deltas
        out = []
        for i in range(1, g.cod + 1):
            target = ZeroCell(g.preimage(i)[0], phi.args[i - 1])
            cell = self.one_cell(induced_map(f, g, i), blocks[i - 1],
                                 deltas[i - 1], target)
            expected_src = ZeroCell(theta.f.preimage(i)[0], theta.args[i - 1])
            if cell.src != expected_src:
                raise ValueError("fiber %d of the triangle is ill-typed" % i)
            out.append(cell)
        out = tuple(out)
        if len(self._fibtri) < 400_000:  # cache bound: triangles can be plentiful
            self._fibtri[tri] = out
        return out

    def slice_two_cell(self, phi: OneCell, src: LaxTriangle, dst: LaxTriangle,
                       gamma: TwoCell) -> SliceTwoCell:
        if src.d0 != phi or dst.d0 != phi or src.d1 != dst.d1:
            raise ValueError("triangles are not parallel over %s" % phi)
        if gamma.src != src.d2 or gamma.dst != dst.d2:
            raise ValueError("gamma does not connect the top maps")
        lhs = self.v_compose(dst.filler,
                             self.h_compose_2cells(self.identity_two_cell(phi), gamma))
        if lhs != src.filler:
            raise ValueError("slice 2-cell condition fails")
        return SliceTwoCell(phi, src, dst, gamma)

    def fibers_of_slice_2cell(self, xi: SliceTwoCell) -> tuple[TwoCell, ...]:
        g = xi.d0.f
        blocks = block_cut(xi.gamma.deltas, g)
        src_fibers = self.fibers_of_lax_triangle(xi.src)
        dst_fibers = self.fibers_of_lax_triangle(xi.dst)
        return tuple(self.two_cell(s, d, b)
                     for s, d, b in zip(src_fibers, dst_fibers, blocks))


def integrate(P: TruncatedOperad, validate: bool = True) -> Integration:
    """Construct the integration 2-category of a structurally valid operad."""
    return Integration(P, validate=validate)


# ---------------------------------------------------------------------------
# generic helpers over 2-category presentations


def two_cat_components(tc) -> list[tuple]:
    """Connected components of the 0-cells, via hom non-emptiness."""
    cells = list(tc.zero_cells())
    parent = {c: c for c in cells}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for x in cells:
        for y in cells:
            if x is not y and tc.hom(x, y).objects:
                parent[find(x)] = find(y)
    groups: dict = {}
    for c in cells:
        groups.setdefault(find(c), []).append(c)
    return [tuple(v) for v in groups.values()]


def lali_terminals(tc) -> dict:
    """Choose, per connected component, an object into which every hom has
    a terminal object (with the terminal of its endo-hom the identity).

    Returns ``{component: (object, {x: terminal 1-cell}) or None}``.
    """
    out = {}
    for comp in two_cat_components(tc):
        choice = None
        for v in comp:
            witnesses = {}
            for x in comp:
                term = terminal_object(tc.hom(x, v))
                if term is None:
                    witnesses = None
                    break
                witnesses[x] = term[0]
            if witnesses is not None and witnesses[v] == tc.identity1(v):
                choice = (v, witnesses)
                break
        out[comp] = choice
    return out


# ---------------------------------------------------------------------------
# law checkers


def check_two_category_laws(I: Integration, cap: int | None = DEFAULT_CAP) -> list[Report]:
    """Horizontal associativity and units, hom-category laws, interchange."""
    from .fincat import validate_category
    reports = []
    budget = Budget(cap)

    r = Report("hom categories", PASS, 0)
    for x in I.zero_cells():
        for y in I.zero_cells():
            sub = validate_category(I.hom(x, y))
            r.checked += sub.checked
            if not sub.ok:
                r.status = FAIL
                r.witness = (str(x), str(y), sub.witness)
                break
        if r.status == FAIL:
            break
    reports.append(r)

    r = Report("horizontal units", PASS, 0)
    for cell in I.all_one_cells():
        r.checked += 1
        if I.h_compose(cell, I.identity_one_cell(cell.src)) != cell or \
           I.h_compose(I.identity_one_cell(cell.dst), cell) != cell:
            r.status = FAIL
            r.witness = str(cell)
            break
    reports.append(r)

    r = Report("horizontal associativity", PASS, 0)
    cells_by_src: dict = {}
    for cell in I.all_one_cells():
        cells_by_src.setdefault(cell.src, []).append(cell)
    done = False
    for f in I.all_one_cells():
        if done:
            break
        for g in cells_by_src.get(f.dst, ()):
            if done:
                break
            gf = I.h_compose(g, f)
            for h in cells_by_src.get(g.dst, ()):
                r.checked += 1
                if not budget.spend():
                    r.status = CAPPED
                    r.notes.append("cap %r reached" % cap)
                    done = True
                    break
                if I.h_compose(h, gf) != I.h_compose(I.h_compose(h, g), f):
                    r.status = FAIL
                    r.witness = (str(f), str(g), str(h))
                    done = True
                    break
    reports.append(r)

    r = Report("interchange", PASS, 0)
    twos_by_hom: dict = {}
    for x in I.zero_cells():
        for y in I.zero_cells():
            H = I.hom(x, y)
            chains = []
            for t1, _, _ in H.morphisms():
                for t2, _, _ in H.morphisms():
                    if t1.dst == t2.src:
                        chains.append((t2, t1))
            twos_by_hom[(x, y)] = chains
    done = False
    for x in I.zero_cells():
        if done:
            break
        for y in I.zero_cells():
            if done:
                break
            inner = twos_by_hom[(x, y)]
            if not inner:
                continue
            for z in I.zero_cells():
                outer = twos_by_hom[(y, z)]
                if not outer:
                    continue
                for e2, e1 in outer:
                    for d2, d1 in inner:
                        r.checked += 1
                        if not budget.spend():
                            r.status = CAPPED
                            r.notes.append("cap %r reached" % cap)
                            done = True
                            break
                        lhs = I.h_compose_2cells(I.v_compose(e2, e1),
                                                 I.v_compose(d2, d1))
                        rhs = I.v_compose(I.h_compose_2cells(e2, d2),
                                          I.h_compose_2cells(e1, d1))
                        if lhs != rhs:
                            r.status = FAIL
                            r.witness = (str(e2), str(e1), str(d2), str(d1))
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
    reports.append(r)
    return reports


def check_projection(I: Integration, cap: int | None = DEFAULT_CAP) -> Report:
    """The projection onto the surjection calculus is a strict 2-functor."""
    budget = Budget(cap)
    r = Report("projection", PASS, 0)
    for x in I.zero_cells():
        r.checked += 1
        if I.identity_one_cell(x).f != identity_surjection(x.arity):
            return Report("projection", FAIL, r.checked, witness=str(x))
    cells_by_src: dict = {}
    for cell in I.all_one_cells():
        cells_by_src.setdefault(cell.src, []).append(cell)
    for f_cell in I.all_one_cells():
        for g_cell in cells_by_src.get(f_cell.dst, ()):
            r.checked += 1
            if not budget.spend():
                r.status = CAPPED
                return r
            if I.h_compose(g_cell, f_cell).f != compose(f_cell.f, g_cell.f):
                return Report("projection", FAIL, r.checked,
                              witness=(str(f_cell), str(g_cell)))
    for x in I.zero_cells():
        for y in I.zero_cells():
            for t, _, _ in I.hom(x, y).morphisms():
                r.checked += 1
                if t.src.f != t.dst.f:
                    return Report("projection", FAIL, r.checked, witness=str(t))
    return r


def check_factorization(I: Integration, cap: int | None = DEFAULT_CAP) -> Report:
    """Every 1-cell factors as component-then-cut, uniquely."""
    budget = Budget(cap)
    r = Report("strict factorization", PASS, 0)
    for phi in list(I.all_one_cells()):
        e_part, m_part = I.factorize(phi)
        r.checked += 1
        if I.h_compose(m_part, e_part) != phi or \
           not I.in_e_subcategory(e_part) or not I.in_m_subcategory(m_part):
            return Report("strict factorization", FAIL, r.checked, witness=str(phi))
        found = 0
        for w in I.zero_cells():
            for e_cand in I.hom(phi.src, w).objects:
                if not I.in_e_subcategory(e_cand):
                    continue
                for m_cand in I.hom(w, phi.dst).objects:
                    r.checked += 1
                    if not budget.spend():
                        r.status = CAPPED
                        r.notes.append("cap %r reached" % cap)
                        return r
                    if I.in_m_subcategory(m_cand) and \
                       I.h_compose(m_cand, e_cand) == phi:
                        found += 1
        if found != 1:
            return Report("strict factorization", FAIL, r.checked,
                          witness=(str(phi), "%d factorizations" % found))
    return r


# ---------------------------------------------------------------------------
# functoriality of the construction


@dataclass
class IntegrationMap:
    """The 2-functor a morphism of operads induces between integrations."""

    F: OperadMorphism
    source: Integration
    target: Integration

    def on0(self, x: ZeroCell) -> ZeroCell:
        return ZeroCell(x.arity, self.F.on_obj(x.arity, x.obj))

    def on1(self, cell: OneCell) -> OneCell:
        sizes = cell.f.fiber_sizes()
        args = tuple(self.F.on_obj(s, a) for s, a in zip(sizes, cell.args))
        alpha = self.F.on_mor(cell.f.dom, cell.alpha)
        return self.target.one_cell(cell.f, args, alpha, self.on0(cell.dst))

    def on2(self, t: TwoCell) -> TwoCell:
        sizes = t.src.f.fiber_sizes()
        deltas = tuple(self.F.on_mor(s, d) for s, d in zip(sizes, t.deltas))
        return self.target.two_cell(self.on1(t.src), self.on1(t.dst), deltas)


def integrate_morphism(F: OperadMorphism, source: Integration | None = None,
                       target: Integration | None = None,
                       cap: int | None = DEFAULT_CAP) -> IntegrationMap:
    report = validate_operad_morphism(F, cap=cap)
    if report.status == FAIL:
        raise ValueError("invalid operad morphism: %s" % report.line())
    source = source or integrate(F.source)
    target = target or integrate(F.target)
    return IntegrationMap(F, source, target)


def check_integration_map(im: IntegrationMap, cap: int | None = DEFAULT_CAP) -> Report:
    """Identity, composition, projection, fiber and lift preservation."""
    budget = Budget(cap)
    I, J = im.source, im.target
    r = Report("integration 2-functor", PASS, 0)
    for x in I.zero_cells():
        r.checked += 1
        if im.on1(I.identity_one_cell(x)) != J.identity_one_cell(im.on0(x)):
            return Report(r.name, FAIL, r.checked, witness=("identity", str(x)))
    cells_by_src: dict = {}
    for cell in I.all_one_cells():
        cells_by_src.setdefault(cell.src, []).append(cell)
    for f_cell in I.all_one_cells():
        r.checked += 1
        if im.on1(f_cell).f != f_cell.f:
            return Report(r.name, FAIL, r.checked, witness=("projection", str(f_cell)))
        if tuple(im.on0(c) for c in I.fibers_of_1cell(f_cell)) != \
           J.fibers_of_1cell(im.on1(f_cell)):
            return Report(r.name, FAIL, r.checked, witness=("fibers", str(f_cell)))
        for g_cell in cells_by_src.get(f_cell.dst, ()):
            r.checked += 1
            if not budget.spend():
                r.status = CAPPED
                return r
            if im.on1(I.h_compose(g_cell, f_cell)) != \
               J.h_compose(im.on1(g_cell), im.on1(f_cell)):
                return Report(r.name, FAIL, r.checked,
                              witness=("composition", str(f_cell), str(g_cell)))
    # chosen lifts
    from .surjections import all_surjections_up_to
    P = I.P
    for g in all_surjections_up_to(P.bound):
        sizes = g.fiber_sizes()
        for c in P.component(g.cod).objects:
            for bs in itertools.product(*[P.component(s).objects for s in sizes]):
                r.checked += 1
                if not budget.spend():
                    r.status = CAPPED
                    return r
                fibers = tuple(ZeroCell(s, b) for s, b in zip(sizes, bs))
                lift = I.cartesian_lift(g, ZeroCell(g.cod, c), fibers)
                expected = J.cartesian_lift(g, im.on0(ZeroCell(g.cod, c)),
                                            tuple(im.on0(fc) for fc in fibers))
                if im.on1(lift) != expected:
                    return Report(r.name, FAIL, r.checked,
                                  witness=("lift", str(g), c, bs))
    return r
