"""Exact arithmetic for the coefficient rings used everywhere else.

Everything is built on arbitrary-precision Python ints:

* ``PolyQT``     -- sparse polynomials in Z[q,t]
* ``QTRat``      -- fractions of PolyQT (equality by cross-multiplication)
* ``PolyAlpha``  -- dense polynomials in Z[alpha]
* ``XPoly``      -- sparse polynomials in x_1..x_n with coefficients in any
                    ring that supports +, *, == and an ``is_zero`` test
                    (QTRat or PolyAlpha in practice)

There is deliberately no floating point anywhere in this module.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd


class PolyQT:
    """Sparse polynomial in q and t: a map (deg_q, deg_t) -> int coefficient.

    Zero coefficients are never stored; the zero polynomial has no terms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for key, coef in terms.items():
                if coef:
                    cleaned[key] = coef
        self.terms = cleaned

    @staticmethod
    def zero():
        return PolyQT()

    @staticmethod
    def const(c):
        return PolyQT({(0, 0): c})

    @staticmethod
    def monomial(a, b, c=1):
        return PolyQT({(a, b): c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, PolyQT) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        terms = dict(self.terms)
        for key, coef in other.terms.items():
            new = terms.get(key, 0) + coef
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        out = PolyQT.__new__(PolyQT)
        out.terms = terms
        return out

    def __neg__(self):
        out = PolyQT.__new__(PolyQT)
        out.terms = {key: -coef for key, coef in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return PolyQT()
            out = PolyQT.__new__(PolyQT)
            out.terms = {key: coef * other for key, coef in self.terms.items()}
            return out
        terms = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                new = terms.get(key, 0) + c1 * c2
                if new:
                    terms[key] = new
                else:
                    del terms[key]
        out = PolyQT.__new__(PolyQT)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        result = PolyQT.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def lex_leading(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        key = max(self.terms)
        return key, self.terms[key]

    def shift(self, a, b):
        """Multiply by the monomial q^a t^b."""
        if a == 0 and b == 0:
            return self
        out = PolyQT.__new__(PolyQT)
        out.terms = {(x + a, y + b): c for (x, y), c in self.terms.items()}
        return out

    def integer_content(self):
        g = 0
        for coef in self.terms.values():
            g = gcd(g, coef)
        return g

    def evaluate(self, q0, t0):
        total = Fraction(0)
        for (a, b), coef in self.terms.items():
            total += coef * Fraction(q0) ** a * Fraction(t0) ** b
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b) in sorted(self.terms):
            coef = self.terms[(a, b)]
            mono = "*".join(
                ([] if a == 0 else ["q" if a == 1 else f"q^{a}"])
                + ([] if b == 0 else ["t" if b == 1 else f"t^{b}"])
            )
            if not mono:
                piece = str(abs(coef))
            elif abs(coef) == 1:
                piece = mono
            else:
                piece = f"{abs(coef)}*{mono}"
            bits.append(("- " if coef < 0 else "+ ") + piece)
        head = bits[0]
        head = "-" + head[2:] if head.startswith("- ") else head[2:]
        return " ".join([head] + bits[1:])

    def __repr__(self):
        return f"PolyQT({self})"


POLY_ZERO = PolyQT.zero()
POLY_ONE = PolyQT.const(1)
Q = PolyQT.monomial(1, 0)
T = PolyQT.monomial(0, 1)


@lru_cache(maxsize=None)
def binom_factor(a, b):
    """The factor 1 - q^a t^b.  (a, b) = (0, 0) would be zero, so it errors."""
    if (a, b) == (0, 0):
        raise ValueError("binom_factor(0, 0) is the zero polynomial")
    return PolyQT({(0, 0): 1, (a, b): -1})


def t_bracket(m):
    """[m]_t = 1 + t + ... + t^(m-1)."""
    return PolyQT({(0, i): 1 for i in range(m)})


@lru_cache(maxsize=None)
def t_bracket_factorial(m):
    """[m]_t! with [0]_t! = 1."""
    if m <= 0:
        return POLY_ONE
    return t_bracket_factorial(m - 1) * t_bracket(m)


@lru_cache(maxsize=None)
def t_binomial(n, k):
    """Gaussian binomial [n choose k]_t as an honest polynomial."""
    if k < 0 or k > n:
        return POLY_ZERO
    if k == 0 or k == n:
        return POLY_ONE
    # Pascal recurrence [n,k] = [n-1,k-1] + t^k [n-1,k]
    return t_binomial(n - 1, k - 1) + PolyQT.monomial(0, k) * t_binomial(n - 1, k)


def gaussian_multinomial(m, parts):
    """[m choose m_1,...,m_k]_t as a QTRat whose value is a polynomial."""
    if sum(parts) != m:
        raise ValueError(f"parts {parts} do not sum to {m}")
    result = POLY_ONE
    remaining = m
    for p in parts:
        result = result * t_binomial(remaining, p)
        remaining -= p
    return QTRat(result)


def divide_exact(num, den):
    """Exact division num / den in Z[q, t], or None if it does not divide.

    Works by repeatedly cancelling the lex-leading term; sound because the
    lex order is a monomial order.
    """
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return POLY_ZERO
    (da, db), dc = den.lex_leading()
    quo = {}
    rem = dict(num.terms)
    while rem:
        (na, nb) = max(rem)
        nc = rem[(na, nb)]
        ea, eb = na - da, nb - db
        if ea < 0 or eb < 0 or nc % dc:
            return None
        c = nc // dc
        quo[(ea, eb)] = c
        for (a, b), coef in den.terms.items():
            key = (a + ea, b + eb)
            new = rem.get(key, 0) - c * coef
            if new:
                rem[key] = new
            else:
                rem.pop(key, None)
    return PolyQT(quo)


class QTRat:
    """Fraction num/den over Z[q,t].

    The denominator is normalised to have positive lex-leading coefficient
    and the pair is stripped of common integer and monomial content, but no
    full gcd is taken: equality always goes through cross-multiplication, so
    unreduced representations are harmless.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = PolyQT.const(num)
        if den is None:
            den = POLY_ONE
        elif isinstance(den, int):
            den = PolyQT.const(den)
        if den.is_zero():
            raise ZeroDivisionError("QTRat with zero denominator")
        if num.is_zero():
            self.num = POLY_ZERO
            self.den = POLY_ONE
            return
        if num.terms == den.terms:
            self.num = POLY_ONE
            self.den = POLY_ONE
            return
        g = 0
        sa = sb = None
        for (a, b), c in num.terms.items():
            g = gcd(g, c)
            if sa is None:
                sa, sb = a, b
            else:
                if a < sa:
                    sa = a
                if b < sb:
                    sb = b
        for (a, b), c in den.terms.items():
            g = gcd(g, c)
            if a < sa:
                sa = a
            if b < sb:
                sb = b
        if den.lex_leading()[1] < 0:
            g = -g
        if g != 1 or sa or sb:
            num = PolyQT({(a - sa, b - sb): c // g for (a, b), c in num.terms.items()})
            den = PolyQT({(a - sa, b - sb): c // g for (a, b), c in den.terms.items()})
        self.num = num
        self.den = den

    @staticmethod
    def zero():
        return QTRat(POLY_ZERO)

    @staticmethod
    def one():
        return QTRat(POLY_ONE)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = QTRat(other)
        if not isinstance(other, QTRat):
            return NotImplemented
        if self.den.terms == other.den.terms:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.terms == other.den.terms:
            return QTRat(self.num + other.num, self.den)
        return QTRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return QTRat(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, PolyQT)):
            other = QTRat(other)
        return QTRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, PolyQT)):
            other = QTRat(other)
        if other.num.is_zero():
            raise ZeroDivisionError("QTRat division by zero")
        return QTRat(self.num * other.den, self.den * other.num)

    def reduced(self):
        """Best-effort reduction: cancel the denominator when it divides."""
        quo = divide_exact(self.num, self.den)
        if quo is not None:
            return QTRat(quo)
        return self

    def specialize(self, q0, t0):
        """Exact evaluation at rational (q0, t0); raises on a pole."""
        dv = self.den.evaluate(q0, t0)
        if dv == 0:
            nv = self.num.evaluate(q0, t0)
            if nv == 0:
                cancelled = self.reduced()
                if cancelled.den != self.den:
                    return cancelled.specialize(q0, t0)
            raise ZeroDivisionError(f"pole of {self} at q={q0}, t={t0}")
        return self.num.evaluate(q0, t0) / dv

    def __str__(self):
        if self.den == POLY_ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"QTRat({self})"


RAT_ZERO = QTRat.zero()
RAT_ONE = QTRat.one()


def qt_rational(num_factors=(), den_factors=()):
    """Build a QTRat from iterables of PolyQT factors without reducing."""
    num = POLY_ONE
    for f in num_factors:
        num = num * f
    den = POLY_ONE
    for f in den_factors:
        den = den * f
    return QTRat(num, den)


def qt_specialize(r, q0, t0):
    return r.specialize(q0, t0)


def binomial_factorization(poly):
    """Split a PolyQT into binomial factors: ({(a, b): multiplicity},
    residual PolyQT) with poly = residual * prod (1 - q^a t^b)^mult.

    Greedy trial division by low-degree binomials; display-only helper,
    never used for arithmetic.
    """
    work = poly
    counts = {}
    max_q = max((a for a, _ in poly.terms), default=0)
    max_t = max((b for _, b in poly.terms), default=0)
    candidates = [
        (a, b)
        for a in range(max_q + 1)
        for b in range(max_t + 1)
        if (a, b) != (0, 0)
    ]
    # largest total degree first, else 1-t would be peeled out of 1-t^4
    candidates.sort(key=lambda ab: (ab[0] + ab[1], ab), reverse=True)
    progress = True
    while progress and work != POLY_ONE:
        progress = False
        for a, b in candidates:
            quo = divide_exact(work, binom_factor(a, b))
            if quo is not None:
                counts[(a, b)] = counts.get((a, b), 0) + 1
                work = quo
                progress = True
                break
    return counts, work


def _factors_str(counts, residual):
    bits = []
    if residual != POLY_ONE or not counts:
        bits.append(f"({residual})")
    for (a, b) in sorted(counts):
        base = f"(1-{PolyQT.monomial(a, b)})".replace(" ", "")
        mult = counts[(a, b)]
        bits.append(base if mult == 1 else f"{base}^{mult}")
    return "*".join(bits)


def rational_str(r, factored=True):
    """Deterministic display; with factored=True common binomial factors of
    the numerator and denominator are cancelled and the rest shown as
    products of (1 - q^a t^b)."""
    if not factored or r.den == POLY_ONE:
        return str(r)
    num_f, num_r = binomial_factorization(r.num)
    den_f, den_r = binomial_factorization(r.den)
    for key in sorted(set(num_f) & set(den_f)):
        common = min(num_f[key], den_f[key])
        for d, side in ((num_f, common), (den_f, common)):
            d[key] -= side
            if not d[key]:
                del d[key]
    if not den_r.is_zero() and den_r.lex_leading()[1] < 0:
        num_r = -num_r
        den_r = -den_r
    if num_r == den_r and not num_r.is_zero():
        num_r = den_r = POLY_ONE
    if not den_f and den_r == POLY_ONE:
        return _factors_str(num_f, num_r) if num_f else str(num_r)
    return f"{_factors_str(num_f, num_r)} / {_factors_str(den_f, den_r)}"


class PolyAlpha:
    """Dense polynomial in a single variable alpha over Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @staticmethod
    def const(c):
        return PolyAlpha((c,))

    @staticmethod
    def linear(const, slope):
        """const + slope * alpha."""
        return PolyAlpha((const, slope))

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, PolyAlpha) and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyAlpha(
            tuple(
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            )
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return PolyAlpha(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyAlpha(out)

    __rmul__ = __mul__

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                piece = str(abs(c))
            else:
                var = "a" if i == 1 else f"a^{i}"
                piece = var if abs(c) == 1 else f"{abs(c)}*{var}"
            bits.append(("- " if c < 0 else "+ ") + piece)
        head = bits[0]
        head = "-" + head[2:] if head.startswith("- ") else head[2:]
        return " ".join([head] + bits[1:])

    def __repr__(self):
        return f"PolyAlpha({self})"


class SymmetryError(ValueError):
    """Raised when an XPoly claimed to be symmetric is not."""


class XPoly:
    """Sparse polynomial in x_1..x_n with coefficients in a duck-typed ring.

    Exponent vectors are stored in full (length n_vars); compression to
    exponent multisets only happens in :meth:`to_msym`, where the symmetry
    check doubles as a correctness gate.
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars, terms=None):
        if n_vars < 1:
            raise ValueError("XPoly needs at least one variable")
        self.n_vars = n_vars
        cleaned = {}
        if terms:
            for exps, coef in terms.items():
                if len(exps) != n_vars:
                    raise ValueError(f"exponent vector {exps} has wrong length")
                if not coef.is_zero():
                    cleaned[exps] = coef
        self.terms = cleaned

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, XPoly) or self.n_vars != other.n_vars:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def accumulate(self, exps, coeff):
        """Pure accumulation: a new XPoly with coeff added at the monomial."""
        exps = tuple(exps)
        if len(exps) != self.n_vars:
            raise ValueError(f"exponent vector {exps} has wrong length")
        terms = dict(self.terms)
        accumulate_term(terms, exps, coeff)
        out = XPoly.__new__(XPoly)
        out.n_vars = self.n_vars
        out.terms = terms
        return out

    def __add__(self, other):
        if self.n_vars != other.n_vars:
            raise ValueError("variable count mismatch")
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            accumulate_term(terms, exps, coef)
        out = XPoly.__new__(XPoly)
        out.n_vars = self.n_vars
        out.terms = terms
        return out

    def scale(self, coeff):
        return XPoly(
            self.n_vars, {e: coeff * c for e, c in self.terms.items()}
        )

    def coefficient(self, exps):
        return self.terms.get(tuple(exps))

    def to_msym(self):
        """Expand into monomial symmetric functions: {partition: coefficient}.

        Errors (naming a violating pair of exponent vectors) if the
        polynomial is not symmetric.
        """
        groups = {}
        for exps, coef in self.terms.items():
            mu = tuple(sorted((e for e in exps if e), reverse=True))
            groups.setdefault(mu, []).append((exps, coef))
        out = {}
        for mu, entries in groups.items():
            rep_exps, rep_coef = entries[0]
            expected = n_rearrangements(rep_exps)
            if len(entries) != expected:
                seen = {e for e, _ in entries}
                missing = next(
                    e for e in rearrangements(mu, self.n_vars) if e not in seen
                )
                raise SymmetryError(
                    f"not symmetric: {rep_exps} present but {missing} absent"
                )
            for exps, coef in entries[1:]:
                if not coef == rep_coef:
                    raise SymmetryError(
                        f"not symmetric: coefficient of {rep_exps} differs "
                        f"from coefficient of {exps}"
                    )
            out[mu] = rep_coef
        return out

    def specialize(self, q0, t0):
        """{exponents: Fraction} after evaluating every coefficient."""
        return {e: c.specialize(q0, t0) for e, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            coef = self.terms[exps]
            bits.append(f"({coef})*{mono}" if mono else f"({coef})")
        return " + ".join(bits)


def accumulate_term(terms, exps, coeff):
    """In-place accumulation into a raw {exps: coeff} dict, pruning zeros."""
    old = terms.get(exps)
    new = coeff if old is None else old + coeff
    if new.is_zero():
        terms.pop(exps, None)
    else:
        terms[exps] = new


def rearrangements(mu, n_vars):
    """All distinct length-n_vars exponent vectors whose nonzero sort is mu."""
    if len(mu) > n_vars:
        return
    base = list(mu) + [0] * (n_vars - len(mu))

    def rec(values, prefix):
        if not values:
            yield tuple(prefix)
            return
        seen = set()
        for i, v in enumerate(values):
            if v in seen:
                continue
            seen.add(v)
            yield from rec(values[:i] + values[i + 1 :], prefix + [v])

    yield from rec(base, [])


def n_rearrangements(exps):
    mult = {}
    for e in exps:
        mult[e] = mult.get(e, 0) + 1
    count = factorial(len(exps))
    for m in mult.values():
        count //= factorial(m)
    return count


def msym_to_xpoly(msym, n_vars, ring_one):
    """Expand {partition: coeff} over x_1..x_n.  Partitions longer than
    n_vars contribute nothing."""
    terms = {}
    for mu, coef in msym.items():
        if coef.is_zero():
            continue
        for exps in rearrangements(mu, n_vars):
            terms[exps] = coef
    return XPoly(n_vars, terms)


def random_rationals(count, seed=0):
    """Deterministic non-degenerate rational sample points in (0, 1)."""
    rng = random.Random(seed)
    points = []
    while len(points) < count:
        b = rng.randrange(3, 40)
        a = rng.randrange(1, b)
        r = Fraction(a, b)
        if r not in points:
            points.append(r)
    return points
