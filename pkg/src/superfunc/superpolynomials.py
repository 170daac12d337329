"""Concrete superpolynomials in N commuting and N anticommuting variables.

Terms are stored in normal form: the anticommuting indices of each monomial
are strictly increasing and every reordering sign is absorbed into the
coefficient.  Exponents are signed, so the same type serves the Laurent
computations of the constant-term scalar product.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .coeffs import RF_ONE, RF_ZERO, RatFunc
from .superpartitions import SuperPartition, enumerate_spar


class ShapeError(ValueError):
    """An operation applied to a superpolynomial of unsupported shape."""


def merge_theta_sign(left: tuple, right: tuple):
    """Concatenate two increasing index tuples; None on a collision.

    Returns (merged, sign) with sign the parity of the interleaving.
    """
    if not left:
        return right, 1
    if not right:
        return left, 1
    sign = 1
    for i in left:
        for j in right:
            if i == j:
                return None, 0
            if i > j:
                sign = -sign
    return tuple(sorted(left + right)), sign


def reversal_sign(k: int) -> int:
    """Sign of writing k distinct anticommuting factors back to front."""
    return -1 if (k * (k - 1) // 2) % 2 else 1


class SuperPoly:
    """Sparse superpolynomial with RatFunc coefficients.

    terms maps (theta_indices, exponents) -> coefficient; theta indices are
    0-based and strictly increasing, exponents is a length-N tuple.
    """

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms = {}
        if terms:
            for key, coeff in terms.items():
                c = RatFunc.coerce(coeff)
                if not c.is_zero():
                    self.terms[key] = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(N):
        return SuperPoly(N)

    @staticmethod
    def const(N, value):
        p = SuperPoly(N)
        v = RatFunc.coerce(value)
        if not v.is_zero():
            p.terms[((), (0,) * N)] = v
        return p

    @staticmethod
    def one(N):
        return SuperPoly.const(N, 1)

    @staticmethod
    def x(i, N, power=1):
        """The variable x_i (1-based)."""
        e = [0] * N
        e[i - 1] = power
        return SuperPoly(N, {((), tuple(e)): RF_ONE})

    @staticmethod
    def theta(i, N):
        """The variable theta_i (1-based)."""
        return SuperPoly(N, {((i - 1,), (0,) * N): RF_ONE})

    def copy(self):
        p = SuperPoly(self.N)
        p.terms = dict(self.terms)
        return p

    # -- ring structure ------------------------------------------------------

    def _iadd_term(self, key, coeff):
        cur = self.terms.get(key)
        if cur is None:
            if not coeff.is_zero():
                self.terms[key] = coeff
        else:
            s = cur + coeff
            if s.is_zero():
                del self.terms[key]
            else:
                self.terms[key] = s

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            other = SuperPoly.const(self.N, other)
        if self.N != other.N:
            raise ShapeError("variable counts differ")
        out = self.copy()
        for key, c in other.terms.items():
            out._iadd_term(key, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly(self.N, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, SuperPoly) else SuperPoly.const(self.N, other).__neg__())

    def scale(self, value):
        v = RatFunc.coerce(value)
        if v.is_zero():
            return SuperPoly(self.N)
        return SuperPoly(self.N, {k: c * v for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        if self.N != other.N:
            raise ShapeError("variable counts differ")
        out = SuperPoly(self.N)
        terms = out.terms
        for (th1, e1), c1 in self.terms.items():
            for (th2, e2), c2 in other.terms.items():
                merged, sign = merge_theta_sign(th1, th2)
                if merged is None:
                    continue
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if sign < 0:
                    c = -c
                key = (merged, exps)
                cur = terms.get(key)
                if cur is None:
                    terms[key] = c
                else:
                    s = cur + c
                    if s.is_zero():
                        del terms[key]
                    else:
                        terms[key] = s
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            other = SuperPoly.const(self.N, other)
        return isinstance(other, SuperPoly) and self.N == other.N and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- degree structure ------------------------------------------------------

    def bidegrees(self):
        return {(sum(e), len(th)) for th, e in self.terms}

    def is_homogeneous(self):
        return len(self.bidegrees()) <= 1

    def bidegree(self):
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ShapeError(f"not homogeneous: degrees {sorted(degs)}")
        return next(iter(degs))

    def has_negative_exponents(self):
        return any(v < 0 for _, e in self.terms for v in e)

    def coefficient(self, theta: tuple, exps: tuple) -> RatFunc:
        return self.terms.get((tuple(theta), tuple(exps)), RF_ZERO)

    # -- symmetric-group action ---------------------------------------------------

    def apply_K(self, i, j):
        """Swap x_i and x_j (1-based)."""
        i, j = i - 1, j - 1
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            le = list(e)
            le[i], le[j] = le[j], le[i]
            out._iadd_term((th, tuple(le)), c)
        return out

    def apply_kappa(self, i, j):
        """Swap theta_i and theta_j, renormalizing with the reordering sign."""
        i, j = i - 1, j - 1
        lo, hi = min(i, j), max(i, j)
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            has_lo, has_hi = lo in th, hi in th
            if has_lo == has_hi:
                # both or neither: set unchanged; both present flips the order
                out._iadd_term((th, e), -c if has_lo else c)
            else:
                old, new = (lo, hi) if has_lo else (hi, lo)
                between = sum(1 for t in th if lo < t < hi)
                nth = tuple(sorted([t for t in th if t != old] + [new]))
                out._iadd_term((nth, e), -c if between % 2 else c)
        return out

    def apply_script_K(self, i, j):
        """The diagonal exchange: swap (x_i, theta_i) with (x_j, theta_j)."""
        return self.apply_K(i, j).apply_kappa(i, j)

    def apply_exchange(self, kind, i, j):
        if kind == "K":
            return self.apply_K(i, j)
        if kind == "kappa":
            return self.apply_kappa(i, j)
        if kind == "script_K":
            return self.apply_script_K(i, j)
        raise ShapeError(f"unknown exchange kind {kind!r}")

    def map_variables(self, sigma):
        """Relabel variables by the permutation sigma (0-based image tuple)."""
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            ne = [0] * self.N
            for pos, v in enumerate(e):
                ne[sigma[pos]] = v
            images = [sigma[t] for t in th]
            # parity of the sort that restores increasing order
            sign = 1
            for a in range(len(images)):
                for bi in range(a + 1, len(images)):
                    if images[a] > images[bi]:
                        sign = -sign
            out._iadd_term((tuple(sorted(images)), tuple(ne)), c if sign > 0 else -c)
        return out

    def is_symmetric(self) -> bool:
        return all(self.apply_script_K(i, i + 1) == self for i in range(1, self.N))

    # -- derivatives -----------------------------------------------------------

    def theta_derivative(self, i):
        """Left derivative with respect to theta_i (1-based)."""
        i -= 1
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            if i in th:
                pos = th.index(i)
                nth = th[:pos] + th[pos + 1:]
                out._iadd_term((nth, e), -c if pos % 2 else c)
        return out

    def x_derivative(self, i):
        i -= 1
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out._iadd_term((th, tuple(ne)), c * e[i])
        return out

    def euler(self, i):
        """x_i d/dx_i, exponent-weighting each term."""
        i -= 1
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            if e[i]:
                out._iadd_term((th, e), c * e[i])
        return out

    def mul_x(self, i, power=1):
        i -= 1
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            ne = list(e)
            ne[i] += power
            out.terms[(th, tuple(ne))] = c
        return out

    def mul_theta(self, i):
        """Left multiplication by theta_i."""
        i -= 1
        out = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            if i in th:
                continue
            below = sum(1 for t in th if t < i)
            out._iadd_term((tuple(sorted(th + (i,))), e), -c if below % 2 else c)
        return out

    # -- exact division ------------------------------------------------------------

    def divide_xi_minus_xj(self, i, j):
        """Exact division by (x_i - x_j); raises ShapeError on a remainder."""
        i, j = i - 1, j - 1
        fibers = {}
        for (th, e), c in self.terms.items():
            rest = e[:min(i, j)] + e[min(i, j) + 1:max(i, j)] + e[max(i, j) + 1:]
            fibers.setdefault((th, rest, e[i] + e[j]), {})[e[i]] = c
        out = SuperPoly(self.N)
        lo = min(i, j)
        hi = max(i, j)
        for (th, rest, d), coeffs in fibers.items():
            # f = sum c_k x_i^k x_j^(d-k); quotient q_t x_i^t x_j^(d-1-t)
            q = {}
            carry = RF_ZERO
            for k in range(d, 0, -1):
                carry = coeffs.get(k, RF_ZERO) + carry
                q[k - 1] = carry
            if not (coeffs.get(0, RF_ZERO) + carry).is_zero():
                raise ShapeError("inexact division by (x_i - x_j)")
            for t, c in q.items():
                if c.is_zero():
                    continue
                ne = [0] * self.N
                pos = 0
                for idx in range(self.N):
                    if idx == i or idx == j:
                        continue
                    ne[idx] = rest[pos]
                    pos += 1
                ne[i] += t
                ne[j] += d - 1 - t
                out._iadd_term((th, tuple(ne)), c)
        return out

    # -- Grassmann inversion --------------------------------------------------------

    def invert_even(self):
        """Inverse of a pure Grassmann element with nonzero scalar part."""
        scalar = RF_ZERO
        nil = SuperPoly(self.N)
        for (th, e), c in self.terms.items():
            if any(e):
                raise ShapeError("inverse restricted to x-free Grassmann elements")
            if th:
                nil.terms[(th, e)] = c
            else:
                scalar = c
        if scalar.is_zero():
            raise ShapeError("element has zero scalar part, not invertible")
        inv_a = scalar.inverse()
        out = SuperPoly.const(self.N, inv_a)
        power = SuperPoly.one(self.N)
        ratio = nil.scale(-inv_a)
        for _ in range(self.N):
            power = power * ratio
            if power.is_zero():
                break
            out = out + power.scale(inv_a)
        return out

    # -- Laurent utilities -------------------------------------------------------------

    def bar(self):
        """Invert every x variable (exponent negation); thetas untouched."""
        return SuperPoly(self.N, {(th, tuple(-v for v in e)): c for (th, e), c in self.terms.items()})

    def constant_term(self) -> RatFunc:
        """Coefficient of the exponent-free monomial; input must be theta-free."""
        for (th, _e), _c in self.terms.items():
            if th:
                raise ShapeError("constant term requires a theta-free input")
        return self.terms.get(((), (0,) * self.N), RF_ZERO)

    def theta_components(self):
        """Split into {theta set: x-only SuperPoly}."""
        comps = {}
        for (th, e), c in self.terms.items():
            comps.setdefault(th, SuperPoly(self.N)).terms[((), e)] = c
        return comps

    # -- embeddings ------------------------------------------------------------------

    def embed(self, new_N, x_offset=0):
        """View inside a larger algebra, shifting both variable blocks."""
        out = SuperPoly(new_N)
        for (th, e), c in self.terms.items():
            ne = [0] * new_N
            for pos, v in enumerate(e):
                ne[pos + x_offset] = v
            nth = tuple(t + x_offset for t in th)
            out.terms[(nth, tuple(ne))] = c
        return out

    # -- rendering ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (th, e), c in sorted(self.terms.items()):
            factors = [f"t{t + 1}" for t in th]
            factors += [f"x{i + 1}" + (f"^{v}" if v != 1 else "") for i, v in enumerate(e) if v]
            body = "*".join(factors) if factors else "1"
            bits.append(f"({c})*{body}")
        return " + ".join(bits)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Supermonomials
# ---------------------------------------------------------------------------

def _distinct_arrangements(values, slots):
    """Distinct placements of the multiset ``values`` (padded with zeros) on slots."""
    values = list(values) + [0] * (len(slots) - len(values))

    def rec(vals, slots_left):
        if not slots_left:
            yield {}
            return
        used = set()
        for idx, v in enumerate(vals):
            if v in used:
                continue
            used.add(v)
            rest = vals[:idx] + vals[idx + 1:]
            for tail in rec(rest, slots_left[1:]):
                tail[slots_left[0]] = v
                yield tail

    yield from rec(values, list(slots))


def realize_monomial(lam: SuperPartition, N: int) -> SuperPoly:
    """The supermonomial m_lam in N variables."""
    if lam.length > N:
        raise ShapeError(f"{lam} needs at least {lam.length} variables, got {N}")
    m = lam.m
    out = SuperPoly(N)
    positions = range(N)
    for ferm_pos in itertools.permutations(positions, m):
        sign = 1
        for a in range(m):
            for b in range(a + 1, m):
                if ferm_pos[a] > ferm_pos[b]:
                    sign = -sign
        free = [p for p in positions if p not in ferm_pos]
        for placement in _distinct_arrangements(list(lam.s), free):
            e = [0] * N
            for idx, p in enumerate(ferm_pos):
                e[p] = lam.a[idx]
            for p, v in placement.items():
                e[p] = v
            key = (tuple(sorted(ferm_pos)), tuple(e))
            out._iadd_term(key, RatFunc.from_int(sign))
    return out


def monomial_key(lam: SuperPartition, N: int):
    """The canonical normal-form term of m_lam: leading thetas, sorted exponents."""
    e = list(lam.a) + list(lam.s) + [0] * (N - lam.length)
    return (tuple(range(lam.m)), tuple(e))


def extract_m_expansion(f: SuperPoly, n: int, m: int, check=False):
    """Coefficients of the supermonomial expansion of a symmetric f of bidegree (n|m)."""
    coeffs = {}
    for lam in enumerate_spar(n, m, max_length=f.N):
        c = f.coefficient(*monomial_key(lam, f.N))
        if not c.is_zero():
            coeffs[lam] = c
    if check:
        recon = SuperPoly(f.N)
        for lam, c in coeffs.items():
            recon = recon + realize_monomial(lam, f.N).scale(c)
        if recon != f:
            raise ShapeError("not a symmetric superpolynomial of the stated bidegree")
    return coeffs


def symmetrize(f: SuperPoly) -> SuperPoly:
    """Average of f over the diagonal symmetric-group action."""
    out = SuperPoly(f.N)
    count = 0
    for sigma in itertools.permutations(range(f.N)):
        out = out + f.map_variables(sigma)
        count += 1
    return out.scale(Fraction(1, count))
