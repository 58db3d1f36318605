"""Exact multivariate polynomial arithmetic over a prime field.

Monomials are plain exponent tuples; polynomials are immutable wrappers
around a dict mapping exponent tuples to nonzero residues mod p.  All
heavier machinery (division, Groebner bases) lives in :mod:`liaison.groebner`
and works on the same dict representation.
"""

from __future__ import annotations

import re

_EXP_LIMIT = 1 << 62  # exponent overflow is an error, not wraparound


class AlgebraError(Exception):
    """Base class for all errors raised by the algebra kernel."""


class RingMismatchError(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Arithmetic in GF(p) on plain int residues in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not is_prime(p):
            raise AlgebraError("field characteristic %r is not prime" % (p,))
        self.p = p

    def normalize(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero in field")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


# ---------------------------------------------------------------------------
# monomials (exponent tuples)

def mono_degree(m):
    return sum(m)


def mono_mul(a, b):
    out = tuple(x + y for x, y in zip(a, b))
    if any(x >= _EXP_LIMIT for x in out):
        raise AlgebraError("monomial exponent overflow")
    return out


def mono_divides(a, b):
    """True if a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


class MonomialOrder:
    """Total multiplicative well-order on exponent tuples.

    kind is "degrevlex", "lex" or "elim"; for "elim", the first `block`
    variables are eliminated (compared first, each block by degrevlex).
    """

    __slots__ = ("kind", "block")

    def __init__(self, kind="degrevlex", block=0):
        if kind not in ("degrevlex", "lex", "elim"):
            raise AlgebraError("unknown monomial order %r" % (kind,))
        if kind == "elim" and block < 1:
            raise AlgebraError("elimination order needs a positive block size")
        self.kind = kind
        self.block = block if kind == "elim" else 0

    def key(self, m):
        """Sort key; larger key = larger monomial."""
        if self.kind == "degrevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        if self.kind == "lex":
            return m
        k = self.block
        head, tail = m[:k], m[k:]
        return (
            sum(head),
            tuple(-e for e in reversed(head)),
            sum(tail),
            tuple(-e for e in reversed(tail)),
        )

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "elim":
            return "MonomialOrder('elim', %d)" % self.block
        return "MonomialOrder(%r)" % self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class PolyRing:
    """Graded polynomial ring descriptor: variables, prime, monomial order."""

    __slots__ = ("variables", "field", "order", "_index", "_hash")

    def __init__(self, variables, prime=32003, order=DEGREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise AlgebraError("ring variables must be distinct")
        if not variables:
            raise AlgebraError("ring needs at least one variable")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", v):
                raise AlgebraError("bad variable name %r" % (v,))
        self.variables = variables
        self.field = PrimeField(prime)
        self.order = order
        self._index = {v: i for i, v in enumerate(variables)}
        self._hash = hash((variables, prime, order))

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def prime(self):
        return self.field.p

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "PolyRing(%s, prime=%d, order=%r)" % (
            ",".join(self.variables), self.prime, self.order)

    # -- element constructors ------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field.normalize(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name):
        i = self._index[name]
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: 1})

    def gens(self):
        return [self.variable(v) for v in self.variables]

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise AlgebraError("bad exponent vector %r" % (exps,))
        c = self.field.normalize(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, {exps: c})

    def linear_form(self, coeffs):
        """sum(coeffs[i] * variables[i])."""
        if len(coeffs) != self.nvars:
            raise AlgebraError("need one coefficient per variable")
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field.normalize(c)
            if c:
                terms[tuple(1 if j == i else 0 for j in range(self.nvars))] = c
        return Polynomial(self, terms)

    def from_dict(self, d):
        """Build a polynomial from {exps: coeff}, normalizing coefficients."""
        terms = {}
        for m, c in d.items():
            c = self.field.normalize(c)
            if c:
                terms[tuple(m)] = c
        return Polynomial(self, terms)

    # -- ring surgery --------------------------------------------------------

    def extend(self, name, order=None):
        """Ring with one appended variable."""
        if name in self._index:
            raise AlgebraError("variable %r already present" % (name,))
        return PolyRing(self.variables + (name,), self.prime,
                        order if order is not None else self.order)

    def drop(self, name):
        """Ring without the named variable."""
        if name not in self._index:
            raise AlgebraError("no variable %r" % (name,))
        rest = tuple(v for v in self.variables if v != name)
        order = self.order if self.order.kind != "elim" else DEGREVLEX
        return PolyRing(rest, self.prime, order)

    def with_order(self, order):
        return PolyRing(self.variables, self.prime, order)

    def with_variables(self, variables, order=None):
        return PolyRing(variables, self.prime,
                        order if order is not None else DEGREVLEX)

    def fresh_variable(self, stem="u"):
        """A variable name not already used in this ring."""
        if stem not in self._index:
            return stem
        i = 0
        while "%s%d" % (stem, i) in self._index:
            i += 1
        return "%s%d" % (stem, i)

    # -- parsing -------------------------------------------------------------

    _TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")

    def parse(self, text):
        """Parse the term-sum text format, e.g. ``3*x0^2*x1 + 31999*x2^3``."""
        pos = 0
        tokens = []
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                raise ParseError("unexpected character %r at position %d"
                                 % (text[pos], pos))
            pos = m.end()
            tokens.append(m)
        terms = {}
        n = self.nvars
        i = 0

        def flush(sign, coeff, exps):
            if coeff is None and not any(exps):
                raise ParseError("empty term in %r" % (text,))
            c = self.field.normalize((coeff if coeff is not None else 1) * sign)
            key = tuple(exps)
            c = self.field.add(terms.get(key, 0), c)
            if c:
                terms[key] = c
            elif key in terms:
                del terms[key]

        while i < len(tokens):
            sign = 1
            while i < len(tokens) and (tokens[i].group(5) or tokens[i].group(6)):
                if tokens[i].group(6):
                    sign = -sign
                i += 1
            if i >= len(tokens):
                raise ParseError("dangling sign in %r" % (text,))
            coeff = None
            exps = [0] * n
            expect_factor = True
            while i < len(tokens):
                tok = tokens[i]
                if tok.group(5) or tok.group(6):
                    break
                if tok.group(4):  # '*'
                    i += 1
                    expect_factor = True
                    continue
                if not expect_factor:
                    raise ParseError("missing '*' near position %d in %r"
                                     % (tok.start(), text))
                if tok.group(1):
                    coeff = (1 if coeff is None else coeff) * int(tok.group(1))
                    i += 1
                elif tok.group(2):
                    name = tok.group(2)
                    if name not in self._index:
                        raise ParseError("unknown variable %r" % (name,))
                    e = 1
                    if i + 1 < len(tokens) and tokens[i + 1].group(3):
                        if i + 2 >= len(tokens) or not tokens[i + 2].group(1):
                            raise ParseError("missing exponent after '^'")
                        e = int(tokens[i + 2].group(1))
                        i += 2
                    exps[self._index[name]] += e
                    i += 1
                else:
                    raise ParseError("unexpected token at position %d in %r"
                                     % (tok.start(), text))
                expect_factor = False
            flush(sign, coeff, exps)
        return Polynomial(self, terms)


class Polynomial:
    """Immutable polynomial: dict of exponent tuple -> nonzero residue."""

    __slots__ = ("ring", "terms", "_lead", "_sorted")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lead = None
        self._sorted = None

    # -- basic queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def sorted_terms(self):
        """Terms as (monomial, coeff), strictly descending in the ring order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = sorted(self.terms.items(),
                                  key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def leading_monomial(self):
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        if self._lead is None:
            self._lead = max(self.terms, key=self.ring.order.key)
        return self._lead

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check(other)
        p = self.ring.prime
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = (out.get(m, 0) + c) % p
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Polynomial(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        p = self.ring.prime
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.constant(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.ring.field.normalize(other)
            if c == 0:
                return self.ring.zero()
            p = self.ring.prime
            return Polynomial(self.ring,
                              {m: (v * c) % p for m, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.ring.prime
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = (out.get(m, 0) + c1 * c2) % p
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if n < 0:
            raise AlgebraError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def monic(self):
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coeff())
        return self * inv

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == self.ring.constant(other).terms
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- substitution / ring movement ----------------------------------------

    def map_to(self, ring):
        """Reinterpret in `ring`, matching variables by name.

        Variables missing from `ring` must not occur in the polynomial.
        """
        src = self.ring.variables
        positions = []
        for i, v in enumerate(src):
            positions.append(ring._index.get(v))
        out = {}
        p = ring.prime
        for m, c in self.terms.items():
            exps = [0] * ring.nvars
            for i, e in enumerate(m):
                if not e:
                    continue
                j = positions[i]
                if j is None:
                    raise AlgebraError(
                        "variable %r not present in target ring" % (src[i],))
                exps[j] = e
            key = tuple(exps)
            s = (out.get(key, 0) + c) % p
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return Polynomial(ring, out)

    def substitute(self, assignment, target_ring=None):
        """Substitute polynomials (or ints) for variables.

        `assignment` maps variable names to elements of `target_ring`
        (defaults to this ring).  Unmentioned variables map to themselves.
        """
        ring = target_ring if target_ring is not None else self.ring
        images = []
        for v in self.ring.variables:
            if v in assignment:
                img = assignment[v]
                if isinstance(img, int):
                    img = ring.constant(img)
                images.append(img)
            else:
                images.append(ring.variable(v))
        # cache powers per variable
        pow_cache = [dict() for _ in images]

        def power(i, e):
            if e == 0:
                return ring.one()
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        total = ring.zero()
        for m, c in self.terms.items():
            term = ring.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def evaluate(self, point):
        """Evaluate at a tuple of field elements; returns an int residue."""
        if len(point) != self.ring.nvars:
            raise AlgebraError("point has wrong length")
        p = self.ring.prime
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = (v * pow(x, e, p)) % p
            total = (total + v) % p
        return total

    # -- output --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(m):
                factors.append(str(c))
            for v, e in zip(self.ring.variables, m):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append("%s^%d" % (v, e))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return "Polynomial(%s)" % str(self)
