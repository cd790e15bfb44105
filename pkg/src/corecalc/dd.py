"""Double description method for polyhedral cones over the integers.

Given rows ``a_1..a_m`` of a cone ``C = {y : a_k . y <= 0}``, compute a
minimal generating pair (extreme rays, lineality basis) such that
``C = cone(rays) + span(lines)``.

Rays are kept as primitive integer tuples with a bitmask of the processed
rows they are tight on; adjacency uses the combinatorial test, which is
valid because every line stays orthogonal to all processed rows.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence


def _prim(v):
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                return tuple(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a, b):
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def cone_generators(rows: Sequence[Sequence[int]], dim: int):
    """Return ``(rays, lines)`` generating ``{y in Q^dim : row . y <= 0}``.

    Both are lists of primitive integer tuples. ``lines`` is a basis of the
    lineality space; ``rays`` are the extreme rays modulo that space.
    """
    lines = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple[int, ...], int]] = []

    rows = [tuple(a) for a in rows if any(a)]
    for k, a in enumerate(rows):
        bit = 1 << k
        idx = -1
        for i, l in enumerate(lines):
            if _dot(a, l):
                idx = i
                break
        if idx >= 0:
            l0 = lines.pop(idx)
            s = _dot(a, l0)
            if s > 0:
                l0 = tuple(-x for x in l0)
                s = -s
            new_lines = []
            for l in lines:
                t = _dot(a, l)
                if t:
                    l = _prim([s * x - t * y for x, y in zip(l, l0)])
                new_lines.append(l)
            lines = new_lines
            ms = -s
            new_rays = []
            for r, mask in rays:
                t = _dot(a, r)
                if t:
                    r = _prim([ms * x + t * y for x, y in zip(r, l0)])
                new_rays.append((r, mask | bit))
            new_rays.append((l0, bit - 1))
            rays = new_rays
            continue

        pos, zero, negs = [], [], []
        for r, mask in rays:
            t = _dot(a, r)
            if t > 0:
                pos.append((r, mask, t))
            elif t < 0:
                negs.append((r, mask, t))
            else:
                zero.append((r, mask | bit))
        if not pos:
            rays = zero + [(r, m) for r, m, _ in negs]
            continue
        masks = [m for _, m in rays]
        new = zero + [(r, m) for r, m, _ in negs]
        for p, mp, tp in pos:
            for n, mn, tn in negs:
                common = mp & mn
                adjacent = True
                for m in masks:
                    # distinct extreme rays have distinct tight sets
                    if m == mp or m == mn:
                        continue
                    if common & ~m == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r = _prim([tp * x - tn * y for x, y in zip(n, p)])
                new.append((r, common | bit))
        rays = new

    out_rays = sorted({r for r, _ in rays})
    return out_rays, lines
