"""Exact scalar arithmetic over Q(b).

Coefficients throughout the package are rational functions of a single
formal parameter ``b`` (the coupling of the one-parameter deformation),
stored as a reduced ratio of two integer-coefficient polynomials.  Plain
rationals are the degree-zero case.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd


class PoleError(ArithmeticError):
    """Evaluation of a rational function at a zero of its denominator."""


class CoeffError(ValueError):
    """Malformed input to coefficient arithmetic (e.g. division by zero)."""


# ---------------------------------------------------------------------------
# Dense integer polynomials in b, as tuples of coefficients, low degree first.
# The zero polynomial is the empty tuple; otherwise no trailing zeros.
# ---------------------------------------------------------------------------

IntPoly = tuple


def ptrim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return ptrim(out)


def pneg(a):
    return tuple(-v for v in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] += u * v
    return ptrim(out)


def pdeg(a):
    return len(a) - 1  # -1 for the zero polynomial


def pcontent(a):
    g = 0
    for v in a:
        g = gcd(g, abs(v))
    return g


def pprim(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = pcontent(a)
    if a[-1] < 0:
        g = -g
    return tuple(v // g for v in a)


def pdiv_exact(a, b):
    """Quotient of an exact division; raises if the division leaves a remainder."""
    if not b:
        raise CoeffError("polynomial division by zero")
    if not a:
        return ()
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = [Fraction(v) for v in a]
    lb = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for j, v in enumerate(b):
                rem[k + j] -= c * v
    if any(rem):
        raise CoeffError("inexact polynomial division")
    out = []
    for c in q:
        if c.denominator != 1:
            raise CoeffError("inexact polynomial division")
        out.append(int(c))
    return ptrim(out)


def pgcd(a, b):
    """Primitive gcd with positive leading coefficient, via a primitive PRS."""
    a, b = pprim(a), pprim(b)
    while b:
        # pseudo-remainder of a by b
        q_len = len(a) - len(b) + 1
        if q_len <= 0:
            a, b = b, a
            continue
        lb = b[-1]
        rem = [v * lb ** q_len for v in a]
        for k in range(q_len - 1, -1, -1):
            c, r = divmod(rem[k + len(b) - 1], lb)
            assert r == 0
            if c:
                for j, v in enumerate(b):
                    rem[k + j] -= c * v
        a, b = b, pprim(ptrim(rem))
    return a if a else ()


def peval(a, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def _pstr(a):
    """Render an integer polynomial in b, highest degree first."""
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            v = "b" if k == 1 else f"b^{k}"
            body = v if abs(c) == 1 else f"{abs(c)}*{v}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# Rational functions of b
# ---------------------------------------------------------------------------

class RatFunc:
    """A reduced ratio of integer-coefficient polynomials in b.

    Invariants: numerator and denominator share no polynomial factor and no
    integer content, the denominator has a positive leading coefficient and
    is never zero.  Equality is therefore structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,), _normalized=False):
        if _normalized:
            self.num = num
            self.den = den
            return
        num = ptrim(num)
        den = ptrim(den)
        if not den:
            raise CoeffError("zero denominator")
        if not num:
            self.num, self.den = (), (1,)
            return
        if den != (1,):
            g = pgcd(num, den)
            if g != (1,):
                num = pdiv_exact(num, g)
                den = pdiv_exact(den, g)
        c = gcd(pcontent(num), pcontent(den))
        if den[-1] < 0:
            c = -c
        if c != 1:
            num = tuple(v // c for v in num)
            den = tuple(v // c for v in den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(v: int) -> "RatFunc":
        return RatFunc((v,) if v else (), (1,), _normalized=True)

    @staticmethod
    def from_fraction(q) -> "RatFunc":
        q = Fraction(q)
        if q == 0:
            return RF_ZERO
        return RatFunc((q.numerator,), (q.denominator,), _normalized=True)

    @staticmethod
    def beta() -> "RatFunc":
        return RF_BETA

    @staticmethod
    def coerce(v) -> "RatFunc":
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, int):
            return RatFunc.from_int(v)
        if isinstance(v, Fraction):
            return RatFunc.from_fraction(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to RatFunc")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def as_fraction(self) -> Fraction:
        if len(self.num) > 1 or len(self.den) > 1:
            raise CoeffError(f"not a constant: {self}")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = RatFunc.coerce(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return RatFunc(padd(self.num, other.num), self.den)
        return RatFunc(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) + (-self)

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        if not self.num or not other.num:
            return RF_ZERO
        if self.den == (1,) and other.den == (1,):
            return RatFunc(pmul(self.num, other.num), (1,), _normalized=True)
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise CoeffError("division by the zero rational function")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
        return RatFunc(num, den, _normalized=True)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RF_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    # -- evaluation and limits ----------------------------------------------

    def eval_at(self, x) -> Fraction:
        x = Fraction(x)
        d = peval(self.den, x)
        if d == 0:
            raise PoleError(f"pole of {self} at b={x}")
        return peval(self.num, x) / d

    def limit_beta0(self) -> Fraction:
        return self.eval_at(0)

    def limit_beta_inf(self):
        """Limit as b grows without bound: a Fraction, or None if it diverges."""
        dn, dd = pdeg(self.num), pdeg(self.den)
        if dn < dd:
            return Fraction(0)
        if dn == dd:
            return Fraction(self.num[-1], self.den[-1])
        return None

    def subs(self, other: "RatFunc") -> "RatFunc":
        """Substitute the rational function ``other`` for b."""
        num = _compose(self.num, other)
        den = _compose(self.den, other)
        if den.is_zero():
            raise PoleError("substitution lands on a pole")
        return num / den

    def subs_inverse_beta(self) -> "RatFunc":
        """The rational function f(1/b)."""
        k = max(pdeg(self.num), pdeg(self.den))
        num = tuple(reversed((self.num + (0,) * (k + 1 - len(self.num)))))
        den = tuple(reversed((self.den + (0,) * (k + 1 - len(self.den)))))
        return RatFunc(num, den)

    def is_int_poly_in_inverse_beta(self) -> bool:
        """True when f = sum of integer multiples of nonnegative powers of 1/b."""
        d = self.den
        if any(v != 0 for v in d[:-1]) or d[-1] != 1:
            return False
        return pdeg(self.num) <= pdeg(d)

    # -- rendering ------------------------------------------------------------

    def __str__(self):
        def wrap(p):
            s = _pstr(p)
            nterms = sum(1 for v in p if v)
            return f"({s})" if nterms > 1 else s

        if self.den == (1,):
            return _pstr(self.num)
        return f"{wrap(self.num)}/{wrap(self.den)}"

    def __repr__(self):
        return f"RatFunc({self})"


RF_ZERO = RatFunc((), (1,), _normalized=True)
RF_ONE = RatFunc((1,), (1,), _normalized=True)
RF_BETA = RatFunc((0, 1), (1,), _normalized=True)


def _compose(poly, x: RatFunc) -> RatFunc:
    out = RF_ZERO
    for c in reversed(poly):
        out = out * x + RatFunc.from_int(c)
    return out


def falling_factorial(n: int) -> RatFunc:
    """(b)_n = b(b-1)...(b-n+1); the empty product for n = 0."""
    if n < 0:
        raise CoeffError("falling factorial needs n >= 0")
    out = (1,)
    for k in range(n):
        out = pmul(out, (-k, 1))
    return RatFunc(out, (1,), _normalized=True)


def beta_binomial(n: int) -> RatFunc:
    """binomial(b+n-1, n) = (b+n-1)(b+n-2)...(b) / n!."""
    if n < 0:
        raise CoeffError("binomial needs n >= 0")
    num = (1,)
    fact = 1
    for k in range(n):
        num = pmul(num, (k, 1))
        fact *= k + 1
    return RatFunc(num, (fact,))


def binom_beta_choose(n: int) -> RatFunc:
    """binomial(b, n) = (b)_n / n!."""
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    return falling_factorial(n) / fact


def combinatorial_factor(kind: str, n: int) -> RatFunc:
    """The named coefficient factor: 'falling_factorial' -> (b)_n,
    'beta_binomial' -> binomial(b+n-1, n)."""
    if kind == "falling_factorial":
        return falling_factorial(n)
    if kind == "beta_binomial":
        return beta_binomial(n)
    raise CoeffError(f"unknown combinatorial factor {kind!r}")


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Dispatch-style arithmetic entry point mirroring the CLI contract."""
    a = RatFunc.coerce(a)
    if op == "neg":
        return -a
    b = RatFunc.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise CoeffError("division by the zero rational function")
        return a / b
    raise CoeffError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Parsing of the string format used in JSON files and on the command line:
# integer-coefficient expressions in the single variable b with + - * / ^ ().
# ---------------------------------------------------------------------------

def parse_ratfunc(text: str) -> RatFunc:
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(expected=None):
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise CoeffError(f"bad coefficient string {text!r}")
        pos[0] += 1
        return tok

    def parse_expr():
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        node = parse_term()
        if sign < 0:
            node = -node
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_power()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_power()
            if op == "/" and rhs.is_zero():
                raise CoeffError("division by zero in coefficient string")
            node = node * rhs if op == "*" else node / rhs
        return node

    def parse_power():
        node = parse_atom()
        if peek() == "^":
            take()
            neg = False
            while peek() in ("+", "-"):
                if take() == "-":
                    neg = not neg
            exp_tok = take()
            if not isinstance(exp_tok, int):
                raise CoeffError(f"bad exponent in {text!r}")
            node = node ** (-exp_tok if neg else exp_tok)
        return node

    def parse_atom():
        tok = peek()
        if tok == "(":
            take()
            node = parse_expr()
            take(")")
            return node
        if tok in ("+", "-"):
            take()
            inner = parse_atom()
            return -inner if tok == "-" else inner
        if tok == "b":
            take()
            return RF_BETA
        if isinstance(tok, int):
            take()
            return RatFunc.from_int(tok)
        raise CoeffError(f"bad coefficient string {text!r}")

    node = parse_expr()
    if pos[0] != len(tokens):
        raise CoeffError(f"trailing garbage in coefficient string {text!r}")
    return node


def _tokenize(text: str):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(int(text[i:j]))
            i = j
        elif ch in "+-*/^()b":
            out.append(ch)
            i += 1
        else:
            raise CoeffError(f"unexpected character {ch!r} in coefficient string")
    return out
