"""Render small structures as digraph figures.

Witness models and updated structures are easiest to read as pictures:
universe elements sit on a circle, binary relations draw as arrows, unary
memberships annotate the node labels.  Tracked-but-unconstrained facts
(the dotted edges of a reverse analysis) draw dotted.  Relations of arity
three or more are summarized in a caption line instead of drawn.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle, FancyArrowPatch

NODE_RADIUS = 0.13
EDGE_COLOR = "black"
FREE_COLOR = "dimgray"


def _positions(universe):
    n = len(universe)
    out = {}
    for i, value in enumerate(universe):
        angle = math.pi / 2 - 2 * math.pi * i / n
        out[value] = (math.cos(angle), math.sin(angle)) if n > 1 else (0.0, 0.0)
    return out


def _self_loop(ax, pos, label, style, color):
    x, y = pos
    arrow = FancyArrowPatch(
        (x - 0.07, y + NODE_RADIUS * 0.8),
        (x + 0.07, y + NODE_RADIUS * 0.8),
        connectionstyle="arc3,rad=2.2",
        arrowstyle="-|>",
        mutation_scale=12,
        linestyle=style,
        color=color,
        linewidth=1.4,
    )
    ax.add_patch(arrow)
    if label:
        ax.text(x, y + 3.2 * NODE_RADIUS, label, ha="center", fontsize=9, color=color)


def _edge(ax, src, dst, label, style, color, curved):
    arrow = FancyArrowPatch(
        src,
        dst,
        connectionstyle=f"arc3,rad={0.18 if curved else 0.0}",
        arrowstyle="-|>",
        mutation_scale=14,
        shrinkA=16,
        shrinkB=16,
        linestyle=style,
        color=color,
        linewidth=1.6,
    )
    ax.add_patch(arrow)
    if label:
        mx, my = (src[0] + dst[0]) / 2, (src[1] + dst[1]) / 2
        if curved:
            dx, dy = dst[0] - src[0], dst[1] - src[1]
            norm = math.hypot(dx, dy) or 1.0
            mx += -dy / norm * 0.14
            my += dx / norm * 0.14
        ax.text(mx, my, label, ha="center", va="center", fontsize=9, color=color)


def render_structure(structure, path, title=None, free_facts=()):
    """Write a digraph rendering of the structure to ``path`` (PNG).

    ``free_facts`` are positive facts to draw dotted: present in no
    extension but left open by the analysis that produced the model.
    """
    positions = _positions(structure.universe)
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    ax.set_aspect("equal")
    ax.axis("off")

    binary = [
        name for name, _ in structure.vocabulary.relations
        if structure.vocabulary.arity(name) == 2
    ]
    unary = [
        name for name, _ in structure.vocabulary.relations
        if structure.vocabulary.arity(name) == 1
    ]
    wide = [
        name for name, _ in structure.vocabulary.relations
        if structure.vocabulary.arity(name) > 2
    ]
    label_edges = len(binary) > 1

    drawn = set()
    for name in binary:
        for args in sorted(structure.extensions[name]):
            drawn.add((name, args))
    free = set()
    for literal in free_facts:
        if literal.relation in binary and (literal.relation, literal.args) not in drawn:
            free.add((literal.relation, literal.args))

    everything = sorted(drawn | free)
    endpoints = {(a, b) for _, (a, b) in everything}
    for name, (a, b) in everything:
        style = ":" if (name, (a, b)) in free else "-"
        color = FREE_COLOR if (name, (a, b)) in free else EDGE_COLOR
        label = name if label_edges else None
        if a == b:
            _self_loop(ax, positions[a], label, style, color)
        else:
            _edge(
                ax, positions[a], positions[b], label, style, color,
                curved=(b, a) in endpoints,
            )

    for value, (x, y) in positions.items():
        ax.add_patch(
            Circle((x, y), NODE_RADIUS, facecolor="white", edgecolor="black",
                   linewidth=1.6, zorder=3)
        )
        marks = [name for name in unary if (value,) in structure.extensions[name]]
        text = value if not marks else f"{value}\n{','.join(marks)}"
        ax.text(x, y, text, ha="center", va="center", fontsize=11, zorder=4)

    notes = [
        f"{name}/{structure.vocabulary.arity(name)}: "
        f"{len(structure.extensions[name])} tuples (not drawn)"
        for name in wide
    ]
    if title:
        ax.set_title(title, fontsize=11)
    if notes:
        fig.text(0.02, 0.02, "\n".join(notes), fontsize=8)

    limit = 1.0 + 4.5 * NODE_RADIUS
    ax.set_xlim(-limit, limit)
    ax.set_ylim(-limit, limit)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
