"""JSON forms for categories, operads, cells and certificates.

JSON has no tuples, so nested lists are converted to tuples on load;
objects and morphism ids in files should be strings, numbers or nested
lists thereof.  Posets may be given instead of full category tables and
are converted with arrows running downward (an arrow b -> a for each
listed pair [a, b] with a <= b, matching the naturals under >=).
"""

from __future__ import annotations

import json

from .fincat import FinCat, Functor, poset_category
from .integration import OneCell, TwoCell, ZeroCell
from .operads import TruncatedOperad
from .surjections import Surjection, all_surjections_up_to, parse_surjection


def freeze(data):
    """Recursively turn lists into tuples so values are hashable."""
    if isinstance(data, list):
        return tuple(freeze(v) for v in data)
    return data


def thaw(data):
    """Recursively turn tuples back into lists for JSON emission."""
    if isinstance(data, tuple):
        return [thaw(v) for v in data]
    return data


def surjection_to_json(g: Surjection) -> dict:
    return {"dom": g.dom, "cod": g.cod, "values": list(g.values)}


def surjection_from_json(data) -> Surjection:
    if isinstance(data, str):
        return parse_surjection(data)
    return Surjection(int(data["dom"]), int(data["cod"]),
                      tuple(int(v) for v in data["values"]))


def _key(obj) -> str:
    """A stable string key for a JSON object position."""
    if isinstance(obj, str):
        return obj
    return json.dumps(thaw(obj), sort_keys=True, separators=(",", ":"))


def fincat_to_json(C: FinCat) -> dict:
    comp = []
    for g, f in C.composable_pairs():
        comp.append([thaw(g), thaw(f), thaw(C.compose(g, f))])
    return {
        "objects": [thaw(x) for x in C.objects],
        "morphisms": [{"id": thaw(m), "src": thaw(s), "dst": thaw(d)}
                      for m, s, d in C.morphisms()],
        "identities": {_key(x): thaw(C.id_of(x)) for x in C.objects},
        "comp": comp,
    }


def fincat_from_json(data) -> FinCat:
    if "poset" in data:
        spec = data["poset"]
        elements = [freeze(e) for e in spec["elements"]]
        le_pairs = {(freeze(a), freeze(b)) for a, b in spec["le"]}
        return poset_category(elements, lambda a, b: (a, b) in le_pairs or a == b)
    objects = [freeze(x) for x in data["objects"]]
    morphisms = [(freeze(m["id"]), freeze(m["src"]), freeze(m["dst"]))
                 for m in data["morphisms"]]
    by_key = {_key(x): x for x in objects}
    identity = {by_key[k]: freeze(v) for k, v in data["identities"].items()}
    comp = {(freeze(g), freeze(f)): freeze(gf) for g, f, gf in data["comp"]}
    return FinCat(objects, morphisms, identity, comp)


def operad_to_json(P: TruncatedOperad) -> dict:
    mu = []
    for g in sorted(P.mu, key=lambda s: (s.dom, s.cod, s.values)):
        F = P.mu[g]
        mu.append({
            "g": surjection_to_json(g),
            "graph": [[thaw(k), thaw(v)] for k, v in F.obj_map.items()],
            "mor_graph": [[thaw(k), thaw(v)] for k, v in F.mor_map.items()],
        })
    return {
        "bound": P.bound,
        "components": [fincat_to_json(P.component(n))
                       for n in range(1, P.bound + 1)],
        "unit": thaw(P.unit),
        "mu": mu,
        "name": P.name,
    }


def operad_from_json(data) -> TruncatedOperad:
    bound = int(data["bound"])
    components = {n + 1: fincat_from_json(c)
                  for n, c in enumerate(data["components"])}
    if len(components) != bound:
        raise ValueError("expected %d components, found %d"
                         % (bound, len(components)))
    unit = freeze(data["unit"])
    mu = {}
    from .fincat import product
    for entry in data["mu"]:
        g = surjection_from_json(entry["g"])
        arities = (g.cod,) + g.fiber_sizes()
        cats = [components[a] for a in arities]
        source = product(cats)
        target = components[g.dom]
        obj_map = {freeze(k): freeze(v) for k, v in entry["graph"]}
        if "mor_graph" in entry:
            mor_map = {freeze(k): freeze(v) for k, v in entry["mor_graph"]}
        else:
            mor_map = _derive_mor_map(source, target, obj_map)
        mu[g] = Functor(source, target, obj_map, mor_map)
    missing = [str(g) for g in all_surjections_up_to(bound) if g not in mu]
    if missing:
        raise ValueError("missing composition functors for %s" % ", ".join(missing))
    return TruncatedOperad(bound, components, unit, mu,
                           name=data.get("name", "operad"))


def _derive_mor_map(source, target, obj_map) -> dict:
    """Fill in the morphism graph when every target hom has one element."""
    mor_map = {}
    for mid, src, dst in source.morphisms():
        arrows = target.hom(obj_map[src], obj_map[dst])
        if len(arrows) != 1:
            raise ValueError("cannot derive morphism graph at %r" % (mid,))
        mor_map[mid] = arrows[0]
    return mor_map


def zero_cell_to_json(x: ZeroCell):
    return [x.arity, thaw(x.obj)]


def zero_cell_from_json(data) -> ZeroCell:
    arity, obj = data
    return ZeroCell(int(arity), freeze(obj))


def one_cell_to_json(c: OneCell) -> dict:
    return {
        "f": str(c.f),
        "args": [thaw(a) for a in c.args],
        "alpha": thaw(c.alpha),
        "src": zero_cell_to_json(c.src),
        "dst": zero_cell_to_json(c.dst),
    }


def two_cell_to_json(t: TwoCell) -> dict:
    return {
        "src": one_cell_to_json(t.src),
        "dst": one_cell_to_json(t.dst),
        "deltas": [thaw(d) for d in t.deltas],
    }


def integration_to_json(I) -> dict:
    """The whole 2-category, hom by hom; meant for desk-scale instances."""
    homs = {}
    pi = {}
    for x in I.zero_cells():
        for y in I.zero_cells():
            H = I.hom(x, y)
            if not H.objects:
                continue
            key = "%s|%s" % (_key(zero_cell_to_json(x)), _key(zero_cell_to_json(y)))
            cells = [one_cell_to_json(c) for c in H.objects]
            twos = [two_cell_to_json(t) for t, _, _ in H.morphisms()]
            homs[key] = {"one_cells": cells, "two_cells": twos}
            for c in H.objects:
                pi[_key(one_cell_to_json(c))] = str(c.f)
    return {
        "zero_cells": [zero_cell_to_json(x) for x in I.zero_cells()],
        "homs": homs,
        "pi": pi,
    }


def certificate_to_json(cert) -> dict:
    out = {"name": cert.name, "status": cert.status}
    out.update({k: thaw(v) if isinstance(v, tuple) else v
                for k, v in cert.details.items()})
    if cert.witness is not None:
        out["witness"] = str(cert.witness)
    return out


def reports_to_json(reports) -> list:
    return [{"name": r.name, "status": r.status, "checked": r.checked,
             **({"witness": str(r.witness)} if r.witness is not None else {}),
             **({"notes": r.notes} if r.notes else {})}
            for r in reports]
