"""Buchberger Groebner engine with full reduction.

Works on the dict representation from :mod:`liaison.rings`.  Pair handling
uses the product (coprimality) criterion and the chain criterion, with a
degree-by-degree (normal strategy) pair queue, so homogeneous inputs are
processed degreewise.
"""

from __future__ import annotations

import heapq

from .rings import (
    AlgebraError,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


def _reduce_dict(f, basis, ring):
    """Full normal form of dict `f` against [(lt, terms)] monic `basis`.

    Deterministic: always reduces the largest reducible monomial, by the
    first listed divisor.  Returns a new dict.
    """
    key = ring.order.key
    p = ring.prime
    work = dict(f)
    # heap of (negated order key, monomial); lazy deletion
    heap = [(_neg_key(key(m)), m) for m in work]
    heapq.heapify(heap)
    out = {}
    lts = [b[0] for b in basis]
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if not c:
            continue
        red = None
        for i, lt in enumerate(lts):
            if mono_divides(lt, m):
                red = i
                break
        if red is None:
            out[m] = c
            del work[m]
            continue
        shift = mono_div(m, lts[red])
        del work[m]
        for mm, cc in basis[red][1].items():
            t = mono_mul(mm, shift)
            s = (work.get(t, 0) - c * cc) % p
            if s:
                if t not in work:
                    heapq.heappush(heap, (_neg_key(key(t)), t))
                work[t] = s
            elif t in work:
                del work[t]
    return out


def _neg_key(k):
    """Negate an order key so the min-heap pops the largest monomial first."""
    return tuple(-x if isinstance(x, int) else tuple(-y for y in x) for x in k)


def _make_basis(polys, ring):
    """[(leading monomial, tail-inclusive monic dict)] for reducers."""
    field = ring.field
    out = []
    for g in polys:
        if not g:
            continue
        lt = max(g, key=ring.order.key)
        inv = field.inv(g[lt])
        monic = {m: (c * inv) % ring.prime for m, c in g.items()}
        tail = {m: c for m, c in monic.items() if m != lt}
        out.append((lt, tail))
    return out


def normal_form(f, reducers):
    """Remainder of `f` on division by the listed polynomials.

    Every monomial of the result is outside the leading-term ideal of the
    reducers; f - result lies in the ideal they generate.
    """
    if not isinstance(f, Polynomial):
        raise AlgebraError("normal_form expects a Polynomial")
    ring = f.ring
    basis = []
    for g in reducers:
        if g.ring != ring:
            raise AlgebraError("reducers must share the ring of f")
        if g:
            basis.append(g)
    if not basis or not f:
        return f
    basis = _make_basis([g.terms for g in basis], ring)
    return Polynomial(ring, _reduce_dict(f.terms, basis, ring))


def _spoly_data(gi, gj, ring):
    """S-polynomial of two monic dicts as a dict."""
    p = ring.prime
    lti = max(gi, key=ring.order.key)
    ltj = max(gj, key=ring.order.key)
    lcm = mono_lcm(lti, ltj)
    si = mono_div(lcm, lti)
    sj = mono_div(lcm, ltj)
    ci = ring.field.inv(gi[lti])
    cj = ring.field.inv(gj[ltj])
    out = {}
    for m, c in gi.items():
        t = mono_mul(m, si)
        out[t] = (out.get(t, 0) + c * ci) % p
    for m, c in gj.items():
        t = mono_mul(m, sj)
        s = (out.get(t, 0) - c * cj) % p
        if s:
            out[t] = s
        elif t in out:
            del out[t]
    return {m: c for m, c in out.items() if c}


def buchberger(generators):
    """The unique reduced Groebner basis of the generated ideal.

    Zero generators are dropped; the empty ideal yields [].  Output
    polynomials are monic, fully auto-reduced, and sorted by increasing
    leading monomial.
    """
    gens = [g for g in generators if g]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise AlgebraError("generators must share one ring")
    key = ring.order.key

    G = []          # list of monic dicts
    lts = []        # leading monomials, parallel to G
    tails = []      # (lt, tail dict) reducers, parallel to G
    pairs = []      # heap of (deg lcm, key(lcm), i, j, lcm)

    def add_poly(d):
        lt = max(d, key=key)
        inv = ring.field.inv(d[lt])
        d = {m: (c * inv) % ring.prime for m, c in d.items()}
        t = len(G)
        # chain criterion: drop old pairs strictly superseded by the newcomer
        keep = []
        for entry in pairs:
            _, _, i, j, lcm = entry
            if (mono_divides(lt, lcm)
                    and mono_lcm(lts[i], lt) != lcm
                    and mono_lcm(lts[j], lt) != lcm):
                continue
            keep.append(entry)
        pairs[:] = keep
        # new pairs, pruned by the product criterion and mutual redundancy
        fresh = {}
        for i in range(t):
            lcm = mono_lcm(lts[i], lt)
            if lcm == mono_mul(lts[i], lt):   # coprime leading terms
                continue
            fresh[i] = lcm
        # among the new pairs keep only those with minimal lcm's
        for i, lcm in list(fresh.items()):
            for i2, lcm2 in fresh.items():
                if i2 != i and lcm2 != lcm and mono_divides(lcm2, lcm):
                    del fresh[i]
                    break
        for i, lcm in fresh.items():
            heapq.heappush(pairs, (sum(lcm), key(lcm), i, t, lcm))
        G.append(d)
        lts.append(lt)
        tails.append((lt, {m: c for m, c in d.items() if m != lt}))

    for g in sorted(gens, key=lambda g: key(g.leading_monomial())):
        add_poly(dict(g.terms))

    while pairs:
        _, _, i, j, lcm = heapq.heappop(pairs)
        # chain criterion at selection time
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if mono_divides(lts[k], lcm):
                if (mono_lcm(lts[i], lts[k]) != lcm
                        and mono_lcm(lts[j], lts[k]) != lcm):
                    skip = True
                    break
        if skip:
            continue
        s = _spoly_data(G[i], G[j], ring)
        if not s:
            continue
        r = _reduce_dict(s, tails, ring)
        if r:
            add_poly(r)

    return _interreduce(G, ring)


def _interreduce(G, ring):
    """Minimalize and tail-reduce a basis of monic dicts; sort ascending."""
    key = ring.order.key
    lts = [max(g, key=key) for g in G]
    keep = []
    for i, lt in enumerate(lts):
        redundant = False
        for j, lt2 in enumerate(lts):
            if i == j:
                continue
            if mono_divides(lt2, lt) and (lt2 != lt or j < i):
                redundant = True
                break
        if redundant:
            continue
        keep.append(i)
    minimal = [(lts[i], G[i]) for i in keep]
    reduced = []
    for idx, (lt, g) in enumerate(minimal):
        others = [(lt2, {m: c for m, c in g2.items() if m != lt2})
                  for k, (lt2, g2) in enumerate(minimal) if k != idx]
        r = _reduce_dict(dict(g), others, ring) if others else dict(g)
        inv = ring.field.inv(r[lt])
        r = {m: (c * inv) % ring.prime for m, c in r.items()}
        reduced.append(Polynomial(ring, r))
    reduced.sort(key=lambda f: key(f.leading_monomial()))
    return reduced
