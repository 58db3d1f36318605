"""Ideal-level algebra: quotients, saturations, Hilbert data, scheme tests.

Ideals are immutable; the reduced Groebner basis and the numeric invariants
derived from it are cached on first use.  All ideals handed to users are
homogeneous; dehomogenized (affine) computations happen internally only.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import modp
from .groebner import buchberger, normal_form
from .rings import AlgebraError, RingMismatchError, DEGREVLEX, MonomialOrder, Polynomial, PolyRing


class GenericityError(AlgebraError):
    """A randomized 'general' choice failed repeatedly."""


@dataclass(frozen=True)
class HVector:
    """h-vector: iterated difference of a Hilbert function, trailing zeros cut.

    clean is False when a negative entry showed up (input not ACM or not
    saturated); the entries are still reported as computed.
    """

    entries: tuple
    clean: bool = True

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def total(self):
        return sum(self.entries)

    def is_symmetric(self):
        return self.entries == tuple(reversed(self.entries))

    def to_json(self):
        return list(self.entries)

    def table(self):
        """Two-row aligned text table: degree row over value row."""
        degs = [str(i) for i in range(len(self.entries))]
        vals = [str(v) for v in self.entries]
        widths = [max(len(a), len(b)) for a, b in zip(degs, vals)]
        row1 = "  ".join(d.rjust(w) for d, w in zip(degs, widths))
        row2 = "  ".join(v.rjust(w) for v, w in zip(vals, widths))
        return "deg       %s\nh-vector  %s" % (row1, row2)

    def __str__(self):
        return "(%s)" % ", ".join(str(v) for v in self.entries)


def binom(n, k):
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Hilbert numerator of a monomial ideal (pivot-variable recursion)

def _minimalize(gens):
    out = []
    for g in sorted(set(gens), key=sum):
        if not any(all(x <= y for x, y in zip(h, g)) for h in out):
            out.append(g)
    return out


def _num_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(n)]


def _num_shift(a, k):
    return [0] * k + list(a)


def _num_mul_one_minus_zd(a, d):
    out = list(a) + [0] * d
    for i, c in enumerate(a):
        out[i + d] -= c
    return out


def monomial_hilbert_numerator(gens, nvars):
    """Numerator N(z) with Series = N(z)/(1-z)^nvars, as an int list."""
    gens = _minimalize(tuple(g) for g in gens)
    memo = {}

    def rec(gs):
        key = frozenset(gs)
        if key in memo:
            return memo[key]
        if not gs:
            res = [1]
        elif any(sum(g) == 0 for g in gs):
            res = [0]
        else:
            coprime = True
            for i in range(len(gs)):
                for j in range(i + 1, len(gs)):
                    if any(min(x, y) for x, y in zip(gs[i], gs[j])):
                        coprime = False
                        break
                if not coprime:
                    break
            if coprime:
                res = [1]
                for g in gs:
                    res = _num_mul_one_minus_zd(res, sum(g))
            else:
                counts = [0] * nvars
                for g in gs:
                    for i, e in enumerate(g):
                        if e:
                            counts[i] += 1
                v = counts.index(max(counts))
                pivot = tuple(1 if i == v else 0 for i in range(nvars))
                plus = _minimalize([g for g in gs if g[v] == 0] + [pivot])
                quot = _minimalize([tuple(e - 1 if i == v and e else e
                                          for i, e in enumerate(g))
                                    for g in gs])
                res = _num_add(rec(tuple(plus)), _num_shift(rec(tuple(quot)), 1))
        memo[key] = res
        return res

    out = rec(tuple(gens))
    while out and out[-1] == 0:
        out.pop()
    return out


def _strip_one_minus_z(num):
    """Factor N = (1-z)^k * M with M(1) != 0; returns (k, M)."""
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return None, []
    k = 0
    while sum(num) == 0:
        # synthetic division by (1 - z): q_i = sum of first i+1 coefficients
        acc = 0
        q = []
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        while num and num[-1] == 0:
            num.pop()
        k += 1
        if not num:
            return None, []
    return k, num


class Ideal:
    """Homogeneous ideal with cached reduced GB and numeric invariants."""

    def __init__(self, ring, generators, _gb=None):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if not g.is_homogeneous():
                raise AlgebraError("ideal generators must be homogeneous: %s" % g)
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = _gb
        self._numerator = None
        self._dim_deg = None

    @classmethod
    def from_strings(cls, ring, texts):
        return cls(ring, [ring.parse(t) for t in texts])

    # -- basics --------------------------------------------------------------

    def groebner_basis(self):
        if self._gb is None:
            self._gb = tuple(buchberger(self.generators))
        return self._gb

    def is_zero(self):
        return not self.groebner_basis()

    def is_unit(self):
        gb = self.groebner_basis()
        return bool(gb) and gb[0].is_constant()

    def contains(self, f):
        if isinstance(f, str):
            f = self.ring.parse(f)
        if f.ring != self.ring:
            raise RingMismatchError("membership test across rings")
        if not f:
            return True
        return normal_form(f, self.groebner_basis()).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash((self.ring, self.groebner_basis()))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:6])
        if len(self.generators) > 6:
            gens += ", ..."
        return "Ideal(%s)" % gens

    def max_gen_degree(self):
        return max((g.degree() for g in self.generators), default=0)

    # -- sums, products ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [other * g for g in self.generators])
        other = self._coerce(other)
        return Ideal(self.ring, [g * h for g in self.generators
                                 for h in other.generators])

    def __rmul__(self, other):
        return self.__mul__(other)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            other = Ideal(self.ring, [other])
        if not isinstance(other, Ideal):
            raise AlgebraError("expected an Ideal or Polynomial")
        if other.ring != self.ring:
            raise RingMismatchError("ideals from different rings")
        return other

    # -- intersection, quotient, saturation, elimination ---------------------

    def intersect(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_unit():
            return self
        if other.is_zero() or self.is_unit():
            return other
        aux = self.ring.fresh_variable("u")
        ring_u = self.ring.with_variables((aux,) + self.ring.variables,
                                          MonomialOrder("elim", 1))
        u = ring_u.variable(aux)
        one = ring_u.one()
        lifted = [u * g.map_to(ring_u) for g in self.generators]
        lifted += [(one - u) * g.map_to(ring_u) for g in other.generators]
        gb = buchberger(lifted)
        kept = [g.map_to(self.ring) for g in gb
                if g.terms and all(m[0] == 0 for m in g.terms)]
        return Ideal(self.ring, kept)

    def quotient(self, by):
        """I : f or I : J."""
        if isinstance(by, str):
            by = self.ring.parse(by)
        if isinstance(by, Polynomial):
            return self._quotient_poly(by)
        by = self._coerce(by)
        if by.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        out = None
        for g in by.generators:
            q = self._quotient_poly(g)
            out = q if out is None else out.intersect(q)
        return self if out is None else out

    def _quotient_poly(self, f):
        if not f:
            raise AlgebraError("quotient by the zero polynomial")
        if f.is_constant():
            return self
        meet = self.intersect(Ideal(self.ring, [f]))
        gens = [_exact_div(g, f) for g in meet.groebner_basis()]
        return Ideal(self.ring, gens)

    def saturate(self, by):
        """Stabilized iterated quotient I : by^infinity."""
        current = self
        while True:
            nxt = current.quotient(by)
            if nxt == current:
                return current
            current = nxt

    def irrelevant_ideal(self):
        return Ideal(self.ring, self.ring.gens())

    def saturate_irrelevant(self):
        return self.saturate(self.irrelevant_ideal())

    def is_saturated(self):
        return self.saturate_irrelevant() == self

    def eliminate(self, names):
        """I intersected with the subring omitting `names`."""
        names = list(names)
        if not names:
            return self
        for v in names:
            if v not in self.ring._index:
                raise AlgebraError("no variable %r" % (v,))
        rest = [v for v in self.ring.variables if v not in names]
        if not rest:
            raise AlgebraError("cannot eliminate every variable")
        ring_e = self.ring.with_variables(tuple(names) + tuple(rest),
                                          MonomialOrder("elim", len(names)))
        gb = buchberger([g.map_to(ring_e) for g in self.generators])
        k = len(names)
        target = self.ring.with_variables(tuple(rest))
        kept = [g.map_to(target) for g in gb
                if all(all(m[i] == 0 for i in range(k)) for m in g.terms)]
        return Ideal(target, kept)

    # -- Hilbert data --------------------------------------------------------

    def hilbert_numerator(self):
        """Coefficients of N(z) with Series(R/I) = N(z)/(1-z)^nvars."""
        if self._numerator is None:
            lts = [g.leading_monomial() for g in self.groebner_basis()]
            self._numerator = tuple(
                monomial_hilbert_numerator(lts, self.ring.nvars))
        return self._numerator

    def hilbert_function(self, d):
        """dim_K (R/I)_d."""
        if d < 0:
            return 0
        n = self.ring.nvars
        num = self.hilbert_numerator()
        return sum(c * binom(d - i + n - 1, n - 1)
                   for i, c in enumerate(num) if i <= d)

    def _dim_degree(self):
        if self._dim_deg is None:
            k, m = _strip_one_minus_z(self.hilbert_numerator())
            if k is None:  # unit ideal
                self._dim_deg = (0, None)
            else:
                self._dim_deg = (self.ring.nvars - k, sum(m))
        return self._dim_deg

    def krull_dim(self):
        """Krull dimension of R/I (the affine cone); 0 for the unit ideal."""
        return self._dim_degree()[0]

    def codim(self):
        return self.ring.nvars - self.krull_dim()

    def degree(self):
        d = self._dim_degree()[1]
        if d is None:
            raise AlgebraError("the unit ideal has no degree")
        return d

    def h_vector(self):
        """dim(R/I)-fold first difference of the Hilbert function."""
        k, m = _strip_one_minus_z(self.hilbert_numerator())
        if k is None:
            raise AlgebraError("the unit ideal has no h-vector")
        entries = tuple(m)
        clean = all(c >= 0 for c in entries)
        return HVector(entries, clean)

    # -- regularity / CM / reducedness ---------------------------------------

    def is_regular_element(self, f):
        if isinstance(f, str):
            f = self.ring.parse(f)
        if not f:
            return False
        return self.quotient(f) == self

    def cm_test(self, seed=0):
        """Randomized Cohen-Macaulay test via a linear system of parameters.

        Returns (verdict, certificate); the certificate records the seed,
        attempts, and the linear forms used.
        """
        d = self.krull_dim()
        cert = {"seed": seed, "dim": d, "attempts": []}
        if self.is_unit():
            return True, cert
        if d == 0:
            return True, cert
        for attempt in range(3):
            rng = random.Random("cm:%d:%d" % (seed, attempt))
            forms = []
            current = self
            ok = True
            for _ in range(d):
                ell = _random_linear_form(self.ring, rng)
                forms.append(str(ell))
                if current.quotient(ell) != current:
                    ok = False
                    break
                current = current + Ideal(self.ring, [ell])
            cert["attempts"].append({"forms": forms, "regular": ok})
            if ok:
                cert["forms"] = forms
                return True, cert
        return False, cert

    # -- zero-dimensional scheme machinery ------------------------------------

    def _affine_algebra(self, seed, max_dim=100000):
        """Dehomogenize by a random hyperplane; return the quotient data.

        Returns (affine ring, GB, standard monomials, coordinate map) where
        the coordinate map sends each original variable to its affine image.
        """
        rng = random.Random("deh:%d" % seed)
        ring = self.ring
        p = ring.prime
        for attempt in range(6):
            coeffs = [rng.randrange(1, p) for _ in ring.variables]
            j = rng.randrange(ring.nvars)
            rest = [v for i, v in enumerate(ring.variables) if i != j]
            aff = ring.with_variables(tuple(rest))
            inv = pow(coeffs[j], p - 2, p)
            # x_j = (1 - sum_{i != j} c_i x_i) / c_j
            acc = aff.constant(1)
            for i, v in enumerate(ring.variables):
                if i != j:
                    acc = acc - coeffs[i] * aff.variable(v)
            repl = inv * acc
            assignment = {ring.variables[j]: repl}
            for v in rest:
                assignment[v] = aff.variable(v)
            gens = [g.substitute(assignment, aff) for g in self.generators]
            gb = buchberger([g for g in gens if g])
            std = _standard_monomials(gb, aff, max_dim)
            if std is not None:
                coords = {}
                for i, v in enumerate(ring.variables):
                    coords[v] = repl if i == j else aff.variable(v)
                return aff, gb, std, coords
        raise GenericityError("could not find a finite dehomogenization")

    def is_reduced_zero_dim(self, seed=0):
        """Radical test for zero-dimensional subschemes of projective space.

        Squarefree characteristic polynomial of a random linear multiplier
        plus an eigenvalue count matching the degree.
        """
        if self.krull_dim() != 1:
            raise AlgebraError("is_reduced_zero_dim needs dim(R/I) = 1")
        deg = self.degree()
        aff, gb, std, _ = self._affine_algebra(seed)
        if len(std) != deg:
            # support at infinity for this hyperplane; try another one
            aff, gb, std, _ = self._affine_algebra(seed + 101)
            if len(std) != deg:
                raise GenericityError("affine algebra dimension mismatch")
        for attempt in range(2):
            rng = random.Random("red:%d:%d" % (seed, attempt))
            lam = _random_linear_form(aff, rng)
            M = _mult_matrix(lam, gb, std, aff)
            chi = modp.charpoly(M, aff.prime)
            if not modp.is_squarefree(chi, aff.prime):
                if attempt == 0:
                    continue
                return False
            return modp.distinct_root_count(chi, aff.prime) == deg
        return False

    def rational_points(self, seed=0):
        """Support points of a reduced zero-dimensional scheme.

        Returns normalized projective coordinate tuples.  Requires all
        points rational over GF(p) and the scheme reduced.
        """
        if self.krull_dim() != 1:
            raise AlgebraError("rational_points needs dim(R/I) = 1")
        deg = self.degree()
        p = self.ring.prime
        aff, gb, std, coords = self._affine_algebra(seed)
        if len(std) != deg:
            raise GenericityError("affine algebra dimension mismatch")
        for attempt in range(4):
            rng = random.Random("pts:%d:%d" % (seed, attempt))
            lam = _random_linear_form(aff, rng)
            M = _mult_matrix(lam, gb, std, aff)
            chi = modp.charpoly(M, p)
            if not modp.is_squarefree(chi, p):
                continue
            eigs = modp.roots(chi, p, rng)
            if len(eigs) != deg:
                raise GenericityError("non-rational or non-reduced support")
            Mt = modp.transpose(M)
            pts = []
            var_nf = {v: normal_form(aff.variable(v), gb) for v in aff.variables}
            std_index = {m: i for i, m in enumerate(std)}
            one_idx = std_index[(0,) * aff.nvars]
            for r in eigs:
                A = [row[:] for row in Mt]
                for i in range(len(A)):
                    A[i][i] = (A[i][i] - r) % p
                ker = modp.nullspace(A, p)
                if len(ker) != 1:
                    break
                w = ker[0]
                if w[one_idx] % p == 0:
                    break
                inv = pow(w[one_idx], p - 2, p)
                w = [(v * inv) % p for v in w]
                # value of each affine variable at the point
                affvals = {}
                ok = True
                for v in aff.variables:
                    nf = var_nf[v]
                    val = 0
                    for m, c in nf.terms.items():
                        if m not in std_index:
                            ok = False
                            break
                        val = (val + c * w[std_index[m]]) % p
                    if not ok:
                        break
                    affvals[v] = val
                if not ok:
                    break
                point = []
                aff_point = [affvals[v] for v in aff.variables]
                for v in self.ring.variables:
                    point.append(coords[v].evaluate(aff_point))
                pts.append(normalize_point(point, p))
            else:
                return sorted(pts)
        raise GenericityError("could not split the support into points")

    def component_at_point(self, point, others, seed=0):
        """Primary piece at `point`, given ALL other support points.

        Saturates by a product of one random linear form through each other
        support point; each form must avoid `point`.
        """
        p = self.ring.prime
        point = normalize_point(point, p)
        others = [normalize_point(q, p) for q in others]
        if point in others:
            raise AlgebraError("point listed among the others")
        if not others:
            return self.saturate_irrelevant()
        for attempt in range(3):
            rng = random.Random("comp:%d:%d" % (seed, attempt))
            h = self.ring.one()
            ok = True
            for q in others:
                form = _random_form_through(self.ring, q, rng)
                if form.evaluate(point) == 0:
                    ok = False
                    break
                h = h * form
            if ok:
                return self.saturate(h)
        raise GenericityError("separating forms kept vanishing at the point")

    # -- ring movement -------------------------------------------------------

    def extend_ring(self, name="t"):
        ring2 = self.ring.extend(name)
        return Ideal(ring2, [g.map_to(ring2) for g in self.generators])

    def contract_set_zero(self, name):
        ring2 = self.ring.drop(name)
        out = []
        for g in self.generators:
            img = g.substitute({name: 0})
            if img:
                out.append(img.map_to(ring2))
        return Ideal(ring2, out)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {
            "ring": {
                "vars": list(self.ring.variables),
                "prime": self.ring.prime,
                "order": self.ring.order.kind,
            },
            "generators": [str(g) for g in self.generators],
        }

    @classmethod
    def from_json(cls, data):
        order = MonomialOrder(data["ring"].get("order", "degrevlex"))
        ring = PolyRing(data["ring"]["vars"], data["ring"].get("prime", 32003),
                        order)
        return cls.from_strings(ring, data["generators"])


# ---------------------------------------------------------------------------
# helpers

def _exact_div(g, f):
    """g / f when f divides g exactly."""
    ring = g.ring
    q = ring.zero()
    rem = g
    flt = f.leading_monomial()
    finv = ring.field.inv(f.leading_coeff())
    from .rings import mono_div, mono_divides
    while rem:
        rlt = rem.leading_monomial()
        if not mono_divides(flt, rlt):
            raise AlgebraError("inexact polynomial division")
        c = (rem.leading_coeff() * finv) % ring.prime
        t = ring.monomial(mono_div(rlt, flt), c)
        q = q + t
        rem = rem - t * f
    return q


def _random_linear_form(ring, rng):
    while True:
        coeffs = [rng.randrange(ring.prime) for _ in ring.variables]
        if any(coeffs):
            return ring.linear_form(coeffs)


def _random_form_through(ring, point, rng):
    """Random linear form vanishing at the projective point."""
    p = ring.prime
    j = next(i for i, c in enumerate(point) if c % p)
    while True:
        coeffs = [rng.randrange(p) for _ in ring.variables]
        s = sum(c * x for i, (c, x) in enumerate(zip(coeffs, point)) if i != j) % p
        coeffs[j] = (-s * pow(point[j], p - 2, p)) % p
        if any(coeffs):
            return ring.linear_form(coeffs)


def normalize_point(point, p):
    """Scale so the first nonzero coordinate is 1."""
    point = [c % p for c in point]
    for c in point:
        if c:
            inv = pow(c, p - 2, p)
            return tuple((v * inv) % p for v in point)
    raise AlgebraError("zero vector is not a projective point")


def _standard_monomials(gb, ring, max_dim):
    """Monomials outside the leading-term ideal; None if infinite/too big."""
    if any(g.is_constant() for g in gb):
        return []
    lts = [g.leading_monomial() for g in gb]
    n = ring.nvars
    from .rings import mono_divides
    start = (0,) * n
    seen = {start}
    queue = [start]
    out = []
    while queue:
        m = queue.pop()
        if any(mono_divides(lt, m) for lt in lts):
            continue
        out.append(m)
        if len(out) > max_dim:
            return None
        for i in range(n):
            m2 = tuple(e + 1 if j == i else e for j, e in enumerate(m))
            if m2 not in seen:
                seen.add(m2)
                queue.append(m2)
    out.sort(key=ring.order.key)
    return out


def _mult_matrix(g, gb, std, ring):
    """Matrix of multiplication by g on the quotient, in the basis std."""
    index = {m: i for i, m in enumerate(std)}
    cols = []
    for m in std:
        prod = g * ring.monomial(m)
        nf = normal_form(prod, list(gb))
        col = [0] * len(std)
        for mm, c in nf.terms.items():
            col[index[mm]] = c
        cols.append(col)
    # cols[j][i] is entry (i, j)
    return [[cols[j][i] for j in range(len(std))] for i in range(len(std))]
