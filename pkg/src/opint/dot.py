"""DOT emitters: trees, hom-categories of an integration, factorizations.

Trees render root-at-top with a stub above the root vertex; when a tree
was assembled by grafting, the grafting joints can be drawn dashed,
which is how the cut line of a 1-cell is shown.  Node order is
deterministic, so identical inputs give byte-identical output.
"""

from __future__ import annotations

from . import trees as T
from .integration import Integration, OneCell, ZeroCell


def _quote(s) -> str:
    return '"%s"' % str(s).replace('"', '\\"')


def tree_dot_body(t, prefix: str, lines: list) -> str:
    """Emit one tree; returns the id of its root stub node."""
    root = "%s_root" % prefix
    lines.append('  %s [shape=point, width=0.05];' % root)

    counter = [0]

    def walk(node, parent, dashed):
        name = "%s_n%d" % (prefix, counter[0])
        counter[0] += 1
        if node == T.LEAF:
            lines.append('  %s [shape=none, label="", width=0.1];' % name)
        else:
            lines.append('  %s [shape=point];' % name)
        style = ' [style=dashed]' if dashed else ''
        lines.append('  %s -> %s%s;' % (parent, name, style))
        if node != T.LEAF:
            for child in node:
                walk(child, name, False)

    walk(t, root, False)
    return root


def tree_to_dot(t, name: str = "tree") -> str:
    if not T.is_tree(t):
        raise ValueError("not a tree: %r" % (t,))
    lines = ["digraph %s {" % name, "  rankdir=TB;"]
    tree_dot_body(t, "t0", lines)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cell_label(I: Integration, cell: OneCell) -> str:
    return "[%s; %s; %s]" % (cell.f, ",".join(map(str, cell.args)), cell.alpha)


def _tree_cell_cluster(I: Integration, cell: OneCell, prefix: str, lines: list):
    """A 1-cell of a tree integration as its grafted tree with a dashed cut.

    The total tree is the source object of the cell's component morphism;
    edges entering a grafted part are dashed, showing where the cut runs.
    """
    lines.append("  subgraph cluster_%s {" % prefix)
    lines.append('    label=%s;' % _quote(_cell_label(I, cell)))
    anchor = "%s_root" % prefix

    counter = [0]

    def walk(node, parent, dashed):
        name = "%s_n%d" % (prefix, counter[0])
        counter[0] += 1
        shape = "point" if node != T.LEAF else "none"
        extra = "" if node != T.LEAF else ', label="", width=0.1'
        lines.append('    %s [shape=%s%s];' % (name, shape, extra))
        lines.append('    %s -> %s%s;' % (parent, name,
                                          " [style=dashed]" if dashed else ""))
        if node != T.LEAF:
            for child in node:
                walk(child, name, False)

    lines.append('    %s [shape=point, width=0.05];' % anchor)
    # rebuild the grafted tree, marking the joints where the cut runs
    upper = cell.dst.obj

    def graft_walk(node, parent, subs, dashed):
        name = "%s_n%d" % (prefix, counter[0])
        counter[0] += 1
        if node == T.LEAF:
            sub = next(subs)
            if sub == T.LEAF:
                lines.append('    %s [shape=none, label="", width=0.1];' % name)
                lines.append('    %s -> %s [style=dashed];' % (parent, name))
            else:
                lines.append('    %s [shape=point];' % name)
                lines.append('    %s -> %s [style=dashed];' % (parent, name))
                for child in sub:
                    walk(child, name, False)
        else:
            lines.append('    %s [shape=point];' % name)
            lines.append('    %s -> %s%s;' % (parent, name,
                                              " [style=dashed]" if dashed else ""))
            for child in node:
                graft_walk(child, name, subs, False)

    graft_walk(upper, anchor, iter(cell.args), False)
    lines.append("  }")
    return anchor


def hom_to_dot(I: Integration, src: ZeroCell, dst: ZeroCell,
               name: str = "hom") -> str:
    """One digraph per hom-category: nodes 1-cells, edges 2-cells."""
    H = I.hom(src, dst)
    is_tree_operad = all(T.is_tree(x.obj) for x in I.zero_cells())
    lines = ["digraph %s {" % name, "  rankdir=TB;", "  compound=true;"]
    anchors = {}
    for idx, cell in enumerate(H.objects):
        if is_tree_operad:
            anchors[cell] = _tree_cell_cluster(I, cell, "c%d" % idx, lines)
        else:
            node = "c%d" % idx
            anchors[cell] = node
            lines.append("  %s [shape=box, label=%s];"
                         % (node, _quote(_cell_label(I, cell))))
    for t, s, d in H.morphisms():
        if s == d:
            continue  # identities clutter the picture
        lines.append("  %s -> %s [label=%s];"
                     % (anchors[s], anchors[d],
                        _quote(",".join(map(str, t.deltas)))))
    lines.append("}")
    return "\n".join(lines) + "\n"


def factorization_to_dot(I: Integration, phi: OneCell, name: str = "factorization") -> str:
    """The component-then-cut factorization of one 1-cell."""
    e_part, m_part = I.factorize(phi)
    lines = ["digraph %s {" % name, "  rankdir=LR;"]
    nodes = {
        "src": str(phi.src),
        "mid": str(e_part.dst),
        "dst": str(phi.dst),
    }
    for key, label in nodes.items():
        lines.append("  %s [shape=ellipse, label=%s];" % (key, _quote(label)))
    lines.append("  src -> mid [label=%s];" % _quote(_cell_label(I, e_part)))
    lines.append("  mid -> dst [style=dashed, label=%s];"
                 % _quote(_cell_label(I, m_part)))
    lines.append("  src -> dst [label=%s, color=gray];"
                 % _quote(_cell_label(I, phi)))
    lines.append("}")
    return "\n".join(lines) + "\n"
