"""Relabelling-invariant signatures.

The signature of a triangulation is the lexicographically smallest
serialization of its gluing table over every choice of (root tetrahedron,
root labelling), with subsequent tetrahedra labelled in discovery order and
their vertex labels propagated through the discovering gluing.  Under that
propagation a first-discovery gluing always reads as the identity
permutation, so it is serialized as a single marker; only back references
carry permutation data.

The number of (root, labelling) pairs attaining the minimum equals the
number of combinatorial self-isomorphisms, which the pipeline uses when
selecting representatives.
"""

from math import factorial

from .perm import PERMS, INV, MUL, IDENTITY
from .core import Triangulation, InvalidGluing

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+-"
_ALPHA_INDEX = {c: i for i, c in enumerate(ALPHABET)}

UNGLUED = 0
FRESH = 1
BASE = 2


class MalformedSignature(ValueError):
    pass


def _component_tets(tri):
    comps = []
    seen = set()
    for t0 in range(tri.n):
        if t0 in seen:
            continue
        comp = [t0]
        seen.add(t0)
        stack = [t0]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.glu[4 * t + f]
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    comp.append(g[0])
                    stack.append(g[0])
        comps.append(comp)
    return comps


def _component_code(tri, tets):
    """Minimal code of one connected component, plus automorphism count."""
    glu = tri.glu
    tets_set = set(tets)
    best = None
    best_count = 0
    for root in tets:
        for rp in range(24):
            code = []
            new_index = {root: 0}
            lab = {root: rp}
            order = [root]
            abort = False
            qi = 0
            while qi < len(order) and not abort:
                t = order[qi]
                qi += 1
                pi = lab[t]
                inv_pi = INV[pi]
                for fc in range(4):
                    fo = PERMS[inv_pi][fc]
                    g = glu[4 * t + fo]
                    if g is None:
                        val = UNGLUED
                    else:
                        t2, q = g
                        if t2 not in new_index:
                            new_index[t2] = len(order)
                            lab[t2] = MUL[pi][INV[q]]
                            order.append(t2)
                            val = FRESH
                        else:
                            r = MUL[lab[t2]][MUL[q][inv_pi]]
                            val = BASE + new_index[t2] * 24 + r
                    pos = len(code)
                    if best is not None:
                        bv = best[pos]
                        if val > bv:
                            abort = True
                            break
                        if val < bv:
                            best = None  # strictly better; finish this run fresh
                    code.append(val)
            if abort:
                continue
            if best is None:
                best = code
                best_count = 1
            else:
                best_count += 1
    assert best is not None and len(best) == 4 * len(tets)
    return tuple(best), best_count


def canonical_code(tri):
    """Canonical integer code and self-isomorphism count."""
    comps = _component_tets(tri)
    coded = []
    for comp in comps:
        c, cnt = _component_code(tri, comp)
        coded.append(((len(comp),) + c, cnt))
    coded.sort()
    code = (tri.n,)
    aut = 1
    i = 0
    while i < len(coded):
        j = i
        while j < len(coded) and coded[j][0] == coded[i][0]:
            j += 1
        aut *= factorial(j - i)
        for k in range(i, j):
            aut *= coded[k][1]
        i = j
    for c, _ in coded:
        code = code + c
    return code, aut


def _encode_int(value, width):
    out = []
    for _ in range(width):
        out.append(ALPHABET[value & 63])
        value >>= 6
    if value:
        raise ValueError("value does not fit")
    return "".join(reversed(out))


def _decode_int(s):
    v = 0
    for c in s:
        if c not in _ALPHA_INDEX:
            raise MalformedSignature("bad character %r" % c)
        v = (v << 6) | _ALPHA_INDEX[c]
    return v


def code_to_string(code):
    n = code[0]
    width = 1 if (BASE + 24 * n) < 64 else 2
    out = [_encode_int(n, 1), _encode_int(width, 1)]
    for v in code[1:]:
        out.append(_encode_int(v, width))
    return "".join(out)


def string_to_code(sig):
    if len(sig) < 2:
        raise MalformedSignature("signature too short")
    n = _decode_int(sig[0])
    width = _decode_int(sig[1])
    if n <= 0 or width not in (1, 2):
        raise MalformedSignature("bad header")
    body = sig[2:]
    if len(body) % width:
        raise MalformedSignature("truncated signature")
    vals = tuple(_decode_int(body[i:i + width]) for i in range(0, len(body), width))
    return (n,) + vals


def isosig_encode(tri):
    """Signature string of a triangulation."""
    code, _ = canonical_code(tri)
    return code_to_string(code)


def isosig_encode_with_aut(tri):
    code, aut = canonical_code(tri)
    return code_to_string(code), aut


def isosig_decode(sig):
    """Rebuild a triangulation from its signature string."""
    code = string_to_code(sig)
    n_total = code[0]
    vals = code[1:]
    glu = [None] * (4 * n_total)
    pos = 0
    base_tet = 0
    remaining = n_total
    vi = 0
    while remaining > 0:
        if vi >= len(vals):
            raise MalformedSignature("missing component data")
        nc = vals[vi]
        vi += 1
        if nc <= 0 or nc > remaining:
            raise MalformedSignature("bad component size")
        if len(vals) - vi < 4 * nc:
            raise MalformedSignature("component data truncated")
        used = 1
        for local_t in range(nc):
            t = base_tet + local_t
            for f in range(4):
                val = vals[vi]
                vi += 1
                if val == UNGLUED:
                    if glu[4 * t + f] is not None:
                        raise MalformedSignature("conflicting unglued entry")
                    continue
                if val == FRESH:
                    t2 = base_tet + used
                    used += 1
                    if used > nc:
                        raise MalformedSignature("too many tetrahedra in component")
                    if glu[4 * t + f] is not None or glu[4 * t2 + f] is not None:
                        raise MalformedSignature("conflicting fresh gluing")
                    glu[4 * t + f] = (t2, IDENTITY)
                    glu[4 * t2 + f] = (t, IDENTITY)
                    continue
                v = val - BASE
                t2l, r = divmod(v, 24)
                if t2l >= nc:
                    raise MalformedSignature("gluing target out of range")
                t2 = base_tet + t2l
                f2 = PERMS[r][f]
                ent = (t2, r)
                if glu[4 * t + f] is None:
                    glu[4 * t + f] = ent
                    glu[4 * t2 + f2] = (t, INV[r])
                elif glu[4 * t + f] != ent:
                    raise MalformedSignature("inconsistent back reference")
        if used != nc:
            raise MalformedSignature("component not connected")
        base_tet += nc
        remaining -= nc
    if vi != len(vals):
        raise MalformedSignature("trailing data")
    try:
        return Triangulation(n_total, glu)
    except (InvalidGluing, ValueError) as e:
        raise MalformedSignature(str(e))
