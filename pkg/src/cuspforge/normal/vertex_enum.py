"""Vertex normal surface enumeration by incremental double description.

Runs over the cone {x >= 0, Mx = 0} with exact integer arithmetic,
processing equations sorted by decreasing sparsity and combining only
combinatorially adjacent ray pairs.  Admissibility pruning (at most one
quad type per tetrahedron) is applied on the fly by default; the test
suite checks the output against a brute-force extreme-ray oracle on every
small census candidate, which exercises exactly this pruning.
"""

from math import gcd

from .matching import matching_equations, is_admissible


def _normalize(vec):
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def _quad_masks(n):
    masks = []
    for t in range(n):
        m = 0
        for q in range(3):
            m |= 1 << (7 * t + 4 + q)
        masks.append(m)
    return masks


def enumerate_vertex_surfaces(tri, admissible_only=True):
    """Admissible extreme rays of the matching cone, as integer tuples."""
    M = matching_equations(tri)
    dim = 7 * tri.n
    M = [row for row in M if any(row)]
    M.sort(key=lambda row: sum(1 for v in row if v))

    quad_masks = _quad_masks(tri.n)
    full_mask = (1 << dim) - 1

    def admissible_mask(nonzero_mask):
        # at most one nonzero quad slot per tetrahedron
        for m in quad_masks:
            bits = nonzero_mask & m
            if bits and (bits & (bits - 1)):
                return False
        return True

    # rays as (vector tuple, zero-coordinate bitmask)
    rays = []
    for i in range(dim):
        vec = tuple(1 if j == i else 0 for j in range(dim))
        rays.append((vec, full_mask ^ (1 << i)))

    for row in M:
        support = [j for j, c in enumerate(row) if c]
        pos, neg, zero = [], [], []
        for vec, zmask in rays:
            s = 0
            for j in support:
                s += row[j] * vec[j]
            if s > 0:
                pos.append((vec, zmask, s))
            elif s < 0:
                neg.append((vec, zmask, s))
            else:
                zero.append((vec, zmask))
        new_rays = list(zero)
        zsets = [zm for _, zm in zero] + [zm for _, zm, _ in pos] + [zm for _, zm, _ in neg]
        for pv, pz, ps in pos:
            for nv, nz, ns in neg:
                common = pz & nz
                # adjacency: no third ray's zero set contains the meet
                adjacent = True
                for zm in zsets:
                    if zm is pz or zm is nz:
                        continue
                    if common & ~zm == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                a, b = ps, -ns
                comb = [a * nv[j] + b * pv[j] for j in range(dim)]
                comb = _normalize(comb)
                zmask = 0
                for j in range(dim):
                    if comb[j] == 0:
                        zmask |= 1 << j
                if admissible_only and not admissible_mask(full_mask ^ zmask):
                    continue
                new_rays.append((comb, zmask))
        # dedupe (duplicates can arise from multiple adjacent pairs)
        seen = {}
        for vec, zm in new_rays:
            seen[vec] = zm
        rays = [(v, z) for v, z in seen.items()]

    out = [vec for vec, _ in rays if any(vec)]
    if admissible_only:
        out = [v for v in out if is_admissible(v)]
    out.sort()
    return out
