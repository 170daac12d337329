"""The five multiplicative/monomial bases and their transition matrices.

The power sums are the internal canonical basis: they are free generators,
independent of the number of variables, and the scalar products are diagonal
on them.  The supermonomials are the presentation basis.  Conversions route
through the power-sum to monomial matrix, which is computed by repeated
one-row monomial products and cross-checked elsewhere against brute-force
realization in n+m variables.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .coeffs import RF_ONE, RF_ZERO, RatFunc, beta_binomial, parse_ratfunc
from .superpartitions import (EMPTY, SuperPartition, enumerate_spar)


class BasisError(ValueError):
    pass


FAMILIES = ("e", "et", "h", "ht", "p", "pt", "g", "gt")
BASES = ("m", "e", "h", "p", "g", "J")


def _normalize_family(name: str) -> str:
    name = name.replace("~", "t").replace("̃", "t")
    if name not in FAMILIES:
        raise BasisError(f"unknown family {name!r}")
    return name


# ---------------------------------------------------------------------------
# Basis expansions
# ---------------------------------------------------------------------------

class BasisExpansion:
    """A finite linear combination of basis elements at one bidegree."""

    __slots__ = ("basis", "n", "m", "coeffs")

    def __init__(self, basis, n, m, coeffs=None):
        self.basis = basis
        self.n = n
        self.m = m
        self.coeffs = {}
        if coeffs:
            for lam, c in coeffs.items():
                c = RatFunc.coerce(c)
                if not c.is_zero():
                    if (lam.n, lam.m) != (n, m):
                        raise BasisError(f"{lam} is not of bidegree ({n}|{m})")
                    self.coeffs[lam] = c

    @staticmethod
    def unit(basis, lam, coeff=1):
        return BasisExpansion(basis, lam.n, lam.m, {lam: coeff})

    def bidegree(self):
        return (self.n, self.m)

    def items_canonical(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())

    def __add__(self, other):
        if self.basis != other.basis:
            raise BasisError("cannot add expansions over different bases")
        # the zero expansion is bidegree-agnostic
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        if (self.n, self.m) != (other.n, other.m):
            raise BasisError("cannot add expansions with different bidegrees")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            s = out.get(lam, RF_ZERO) + c
            if s.is_zero():
                out.pop(lam, None)
            else:
                out[lam] = s
        res = BasisExpansion(self.basis, self.n, self.m)
        res.coeffs = out
        return res

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, v):
        v = RatFunc.coerce(v)
        res = BasisExpansion(self.basis, self.n, self.m)
        if not v.is_zero():
            res.coeffs = {lam: c * v for lam, c in self.coeffs.items()}
        return res

    def map_coeffs(self, f):
        res = BasisExpansion(self.basis, self.n, self.m)
        for lam, c in self.coeffs.items():
            nc = f(c)
            nc = RatFunc.coerce(nc)
            if not nc.is_zero():
                res.coeffs[lam] = nc
        return res

    def subs_beta(self, value: Fraction):
        return self.map_coeffs(lambda c: RatFunc.from_fraction(c.eval_at(value)))

    def subs_inverse_beta(self):
        return self.map_coeffs(lambda c: c.subs_inverse_beta())

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BasisExpansion) or self.basis != other.basis:
            return NotImplemented if not isinstance(other, BasisExpansion) else False
        if not self.coeffs and not other.coeffs:
            return True
        return (self.n, self.m) == (other.n, other.m) and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{self.basis}[{lam}]" for lam, c in self.items_canonical())

    __repr__ = __str__

    # JSON wire format: {"basis": "m", "n": 4, "m": 1, "terms": [{"sp": ..., "coeff": ...}]}

    def to_json_obj(self):
        return {
            "basis": self.basis,
            "n": self.n,
            "m": self.m,
            "terms": [{"sp": str(lam), "coeff": str(c)} for lam, c in self.items_canonical()],
        }

    @staticmethod
    def from_json_obj(obj) -> "BasisExpansion":
        coeffs = {SuperPartition.parse(t["sp"]): parse_ratfunc(t["coeff"]) for t in obj["terms"]}
        return BasisExpansion(obj["basis"], obj["n"], obj["m"], coeffs)


# ---------------------------------------------------------------------------
# Free multiplication in the power-sum basis
# ---------------------------------------------------------------------------

def _merge_ferm_desc(a: tuple, b: tuple):
    """Merge two strictly decreasing tuples; None on collision; interleaving sign."""
    if set(a) & set(b):
        return None, 0
    inv = sum(1 for ai in a for bj in b if ai < bj)
    return tuple(sorted(a + b, reverse=True)), (-1 if inv % 2 else 1)


def p_index_product(lam: SuperPartition, om: SuperPartition):
    merged, sign = _merge_ferm_desc(lam.a, om.a)
    if merged is None:
        return None, 0
    sym = tuple(sorted(lam.s + om.s, reverse=True))
    return SuperPartition(merged, sym), sign


def p_product(f: BasisExpansion, g: BasisExpansion) -> BasisExpansion:
    if f.basis != "p" or g.basis != "p":
        raise BasisError("p_product needs power-sum expansions")
    out = BasisExpansion("p", f.n + g.n, f.m + g.m)
    for lam, c1 in f.coeffs.items():
        for om, c2 in g.coeffs.items():
            idx, sign = p_index_product(lam, om)
            if idx is None:
                continue
            c = c1 * c2
            if sign < 0:
                c = -c
            cur = out.coeffs.get(idx)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.coeffs.pop(idx, None)
            else:
                out.coeffs[idx] = s
    return out


@lru_cache(maxsize=None)
def one_part_p(family: str, r: int) -> BasisExpansion:
    """The power-sum expansion of one generator of a multiplicative family."""
    family = _normalize_family(family)
    if family == "p":
        if r < 1:
            raise BasisError("the bosonic power sum of degree 0 is zero by convention")
        return BasisExpansion.unit("p", SuperPartition((), (r,)))
    if family == "pt":
        return BasisExpansion.unit("p", SuperPartition((r,), ()))
    ferm = family.endswith("t")
    kind = family[0]
    out = BasisExpansion("p", r, 1 if ferm else 0)
    for lam in enumerate_spar(r, 1 if ferm else 0):
        inv_z = RatFunc((1,), (lam.z_int(),)) if kind in ("e", "h") else lam.z_beta().inverse()
        if kind == "e":
            inv_z = inv_z * lam.omega_sign()
        out.coeffs[lam] = inv_z
    return out


def multiplicative_p_expansion(family: str, lam: SuperPartition) -> BasisExpansion:
    """Left-to-right product of one-part generators indexed by lam, in p."""
    family = _normalize_family(family)
    if family.endswith("t"):
        raise BasisError("multiplicative indices use the plain family name")
    out = BasisExpansion("p", 0, 0, {EMPTY: RF_ONE})
    for r in lam.a:
        out = p_product(out, one_part_p(family + "t", r))
    for r in lam.s:
        out = p_product(out, one_part_p(family, r))
    return out


# ---------------------------------------------------------------------------
# Monomial products via weighted fillings
# ---------------------------------------------------------------------------

def mono_product(lamA: SuperPartition, lamB: SuperPartition) -> dict:
    """Coefficients of m_lamA * m_lamB on the supermonomial basis.

    Enumerates the distinct superimpositions of the two diagrams onto a
    common canonical shape; each carries the sign of the permutation that
    restores the circle labels to left-then-right reading order.
    """
    mA, mB = lamA.m, lamB.m
    F = mA + mB
    L = F + len(lamA.s) + len(lamB.s)
    out = {}

    def bos_choices(counter):
        yield 0, None
        for v in list(counter):
            yield v, v

    def rec(k, availA, availB, bosA, bosB, gamma, word):
        if k == L:
            if bosA or bosB:
                return
            sign = 1
            ranks = [i if side == 0 else mA + i for side, i in word]
            for x in range(len(ranks)):
                for y in range(x + 1, len(ranks)):
                    if ranks[x] > ranks[y]:
                        sign = -sign
            gam = SuperPartition(gamma[:F], tuple(v for v in gamma[F:] if v))
            out[gam] = out.get(gam, 0) + sign
            if out[gam] == 0:
                del out[gam]
            return
        if k < F:
            prev = gamma[k - 1] if k else None
            # fermion from A, boson (or nothing) from B
            for ia, va in enumerate(lamA.a):
                if not availA[ia]:
                    continue
                for vb, usedb in bos_choices(bosB):
                    tot = va + vb
                    if prev is not None and tot >= prev:
                        continue
                    availA[ia] = False
                    if usedb is not None:
                        bosB[usedb] -= 1
                        if not bosB[usedb]:
                            del bosB[usedb]
                    rec(k + 1, availA, availB, bosA, bosB, gamma + (tot,), word + ((0, ia),))
                    availA[ia] = True
                    if usedb is not None:
                        bosB[usedb] = bosB.get(usedb, 0) + 1
            # fermion from B, boson (or nothing) from A
            for ib, vb in enumerate(lamB.a):
                if not availB[ib]:
                    continue
                for va, useda in bos_choices(bosA):
                    tot = va + vb
                    if prev is not None and tot >= prev:
                        continue
                    availB[ib] = False
                    if useda is not None:
                        bosA[useda] -= 1
                        if not bosA[useda]:
                            del bosA[useda]
                    rec(k + 1, availA, availB, bosA, bosB, gamma + (tot,), word + ((1, ib),))
                    availB[ib] = True
                    if useda is not None:
                        bosA[useda] = bosA.get(useda, 0) + 1
            return
        # bosonic block
        prev = gamma[k - 1] if k > F else None
        remaining = L - k
        need = sum(v * c for v, c in bosA.items()) + sum(v * c for v, c in bosB.items())
        cap = prev if prev is not None else need
        if need > cap * remaining:
            return
        for va, useda in bos_choices(bosA):
            if useda is not None:
                bosA[useda] -= 1
                if not bosA[useda]:
                    del bosA[useda]
            for vb, usedb in bos_choices(bosB):
                tot = va + vb
                if prev is None or tot <= prev:
                    if usedb is not None:
                        bosB[usedb] -= 1
                        if not bosB[usedb]:
                            del bosB[usedb]
                    rec(k + 1, availA, availB, bosA, bosB, gamma + (tot,), word)
                    if usedb is not None:
                        bosB[usedb] = bosB.get(usedb, 0) + 1
            if useda is not None:
                bosA[useda] = bosA.get(useda, 0) + 1

    bosA = {}
    for v in lamA.s:
        bosA[v] = bosA.get(v, 0) + 1
    bosB = {}
    for v in lamB.s:
        bosB[v] = bosB.get(v, 0) + 1
    rec(0, [True] * mA, [True] * mB, bosA, bosB, (), ())
    return out


def m_expansion_product(f: BasisExpansion, g: BasisExpansion) -> BasisExpansion:
    """Product of two supermonomial expansions, via weighted fillings."""
    out = BasisExpansion("m", f.n + g.n, f.m + g.m)
    for lam, c1 in f.coeffs.items():
        for om, c2 in g.coeffs.items():
            c = c1 * c2
            for gam, mult in mono_product(lam, om).items():
                cur = out.coeffs.get(gam, RF_ZERO) + c * mult
                if cur.is_zero():
                    out.coeffs.pop(gam, None)
                else:
                    out.coeffs[gam] = cur
    return out


# ---------------------------------------------------------------------------
# Family generators expanded over supermonomials (closed formulas)
# ---------------------------------------------------------------------------

def gen_family(family: str, n: int) -> BasisExpansion:
    family = _normalize_family(family)
    if family == "e":
        lam = SuperPartition((), (1,) * n)
        return BasisExpansion.unit("m", lam)
    if family == "et":
        return BasisExpansion.unit("m", SuperPartition((0,), (1,) * n))
    if family == "p":
        if n < 1:
            raise BasisError("the bosonic power sum of degree 0 is zero by convention")
        return BasisExpansion.unit("m", SuperPartition((), (n,)))
    if family == "pt":
        return BasisExpansion.unit("m", SuperPartition((n,), ()))
    if family == "h":
        out = BasisExpansion("m", n, 0)
        for lam in enumerate_spar(n, 0):
            out.coeffs[lam] = RF_ONE
        return out
    if family == "ht":
        out = BasisExpansion("m", n, 1)
        for lam in enumerate_spar(n, 1):
            out.coeffs[lam] = RatFunc.from_int(lam.a[0] + 1)
        return out
    if family == "g":
        out = BasisExpansion("m", n, 0)
        for lam in enumerate_spar(n, 0):
            c = RF_ONE
            for part in lam.s:
                c = c * beta_binomial(part)
            out.coeffs[lam] = c
        return out
    if family == "gt":
        out = BasisExpansion("m", n, 1)
        for lam in enumerate_spar(n, 1):
            c = RatFunc((lam.a[0], 1))  # beta + leading fermionic part
            for part in (lam.a[0],) + lam.s:
                c = c * beta_binomial(part)
            out.coeffs[lam] = c
        return out
    raise BasisError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Transition matrices
# ---------------------------------------------------------------------------

class TransitionMatrix:
    """Square change-of-basis matrix at a fixed bidegree.

    entries[i][j] is the coefficient of target element i in source element j,
    rows and columns both following the canonical enumeration.
    """

    __slots__ = ("from_basis", "to_basis", "n", "m", "index", "entries")

    def __init__(self, from_basis, to_basis, n, m, index, entries):
        self.from_basis = from_basis
        self.to_basis = to_basis
        self.n = n
        self.m = m
        self.index = list(index)
        self.entries = entries

    def apply(self, f: BasisExpansion) -> BasisExpansion:
        if f.basis != self.from_basis or (f.n, f.m) != (self.n, self.m):
            raise BasisError("expansion does not match the matrix domain")
        pos = {lam: j for j, lam in enumerate(self.index)}
        out = BasisExpansion(self.to_basis, self.n, self.m)
        for lam, c in f.coeffs.items():
            j = pos[lam]
            for i, row_lam in enumerate(self.index):
                e = self.entries[i][j]
                if e.is_zero():
                    continue
                cur = out.coeffs.get(row_lam, RF_ZERO) + e * c
                if cur.is_zero():
                    out.coeffs.pop(row_lam, None)
                else:
                    out.coeffs[row_lam] = cur
        return out

    def compose(self, inner: "TransitionMatrix") -> "TransitionMatrix":
        """self o inner, where inner converts into self's source basis."""
        k = len(self.index)
        entries = [[RF_ZERO] * k for _ in range(k)]
        for i in range(k):
            row = self.entries[i]
            for t in range(k):
                if row[t].is_zero():
                    continue
                inner_row = inner.entries[t]
                for j in range(k):
                    if not inner_row[j].is_zero():
                        entries[i][j] = entries[i][j] + row[t] * inner_row[j]
        return TransitionMatrix(inner.from_basis, self.to_basis, self.n, self.m,
                                self.index, entries)

    def inverse(self) -> "TransitionMatrix":
        k = len(self.index)
        a = [[self.entries[i][j] for j in range(k)] + [RF_ONE if i == j else RF_ZERO for j in range(k)]
             for i in range(k)]
        for col in range(k):
            piv = next((r for r in range(col, k) if not a[r][col].is_zero()), None)
            if piv is None:
                raise BasisError("transition matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [v * inv for v in a[col]]
            for r in range(k):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [vr - f * vc for vr, vc in zip(a[r], a[col])]
        entries = [row[k:] for row in a]
        return TransitionMatrix(self.to_basis, self.from_basis, self.n, self.m,
                                self.index, entries)

    def to_json_obj(self):
        return {
            "from": self.from_basis, "to": self.to_basis, "n": self.n, "m": self.m,
            "index": [str(lam) for lam in self.index],
            "entries": [[str(e) for e in row] for row in self.entries],
        }

    @staticmethod
    def from_json_obj(obj):
        return TransitionMatrix(
            obj["from"], obj["to"], obj["n"], obj["m"],
            [SuperPartition.parse(s) for s in obj["index"]],
            [[parse_ratfunc(s) for s in row] for row in obj["entries"]],
        )


_matrix_cache = {}


def _cache_dir():
    return os.environ.get("SUPERFUNC_CACHE_DIR")


def _cache_load(key):
    d = _cache_dir()
    if not d:
        return None
    path = os.path.join(d, "transition_%s_to_%s_%d_%d.json" % key)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        return TransitionMatrix.from_json_obj(json.load(fh))


def _cache_store(key, mat):
    d = _cache_dir()
    if not d:
        return
    os.makedirs(d, exist_ok=True)
    path = os.path.join(d, "transition_%s_to_%s_%d_%d.json" % key)
    with open(path, "w") as fh:
        json.dump(mat.to_json_obj(), fh)


def _expansion_columns_to_matrix(frm, to, n, m, index, columns):
    k = len(index)
    pos = {lam: i for i, lam in enumerate(index)}
    entries = [[RF_ZERO] * k for _ in range(k)]
    for j, col in enumerate(columns):
        for lam, c in col.coeffs.items():
            entries[pos[lam]][j] = c
    return TransitionMatrix(frm, to, n, m, index, entries)


def p_to_m_expansion(lam: SuperPartition) -> BasisExpansion:
    """The supermonomial expansion of one power-sum product."""
    out = BasisExpansion("m", 0, 0, {EMPTY: RF_ONE})
    for r in lam.a:
        out = m_expansion_product(out, BasisExpansion.unit("m", SuperPartition((r,), ())))
    for r in lam.s:
        out = m_expansion_product(out, BasisExpansion.unit("m", SuperPartition((), (r,))))
    return out


def transition(frm: str, to: str, n: int, m: int) -> TransitionMatrix:
    """Exact change-of-basis matrix between two bases at bidegree (n|m)."""
    for name in (frm, to):
        if name not in ("m", "e", "h", "p", "g"):
            raise BasisError(f"no transition matrix for basis {name!r}")
    key = (frm, to, n, m)
    if key in _matrix_cache:
        return _matrix_cache[key]
    mat = _cache_load(key)
    if mat is None:
        mat = _compute_transition(frm, to, n, m)
        _cache_store(key, mat)
    _matrix_cache[key] = mat
    return mat


def _compute_transition(frm, to, n, m):
    index = enumerate_spar(n, m)
    if frm == to:
        k = len(index)
        entries = [[RF_ONE if i == j else RF_ZERO for j in range(k)] for i in range(k)]
        return TransitionMatrix(frm, to, n, m, index, entries)
    if frm == "p" and to == "m":
        cols = [p_to_m_expansion(lam) for lam in index]
        return _expansion_columns_to_matrix("p", "m", n, m, index, cols)
    if frm in ("e", "h", "g") and to == "m":
        p2m = transition("p", "m", n, m)
        cols = [p2m.apply(multiplicative_p_expansion(frm, lam)) for lam in index]
        return _expansion_columns_to_matrix(frm, "m", n, m, index, cols)
    if to == "m":
        raise BasisError(f"no transition matrix for basis {frm!r}")
    if frm == "m":
        return transition(to, "m", n, m).inverse()
    return transition("m", to, n, m).compose(transition(frm, "m", n, m))


def convert(f: BasisExpansion, to: str) -> BasisExpansion:
    if f.basis == to:
        return f
    return transition(f.basis, to, f.n, f.m).apply(f)


def multiplicative_to_m(family: str, lam: SuperPartition) -> BasisExpansion:
    """The supermonomial expansion of e/h/p/g indexed by a superpartition."""
    family = _normalize_family(family)
    exp_p = multiplicative_p_expansion(family, lam)
    return transition("p", "m", lam.n, lam.m).apply(exp_p)


# ---------------------------------------------------------------------------
# Determinantal and recursion identities
# ---------------------------------------------------------------------------

def _p_unit():
    return BasisExpansion("p", 0, 0, {EMPTY: RF_ONE})


def _gen_p(family, r):
    """One-part generator in p, with h_0 = e_0 = 1, p_0 = 0, and 0 below degree 0."""
    family = _normalize_family(family)
    if r < 0 or (family == "p" and r == 0):
        return BasisExpansion("p", 0, 0)
    if r == 0 and family in ("e", "h", "g"):
        return _p_unit()
    return one_part_p(family, r)


def _det_fermionic_first_row(mat):
    """Determinant of a square matrix of p-expansions whose first row is the
    only fermionic one, by cofactor expansion along that row."""
    size = len(mat)

    from functools import lru_cache as _lru

    @_lru(maxsize=None)
    def bos_minor(rows: tuple, cols: tuple):
        if not rows:
            return _p_unit()
        r = rows[0]
        acc = None
        for idx, c in enumerate(cols):
            entry = mat[r][c]
            if entry.is_zero():
                continue
            sub = bos_minor(rows[1:], cols[:idx] + cols[idx + 1:])
            term = p_product(entry, sub)
            if idx % 2:
                term = term.scale(-1)
            acc = term if acc is None else acc + term
        if acc is None:
            return BasisExpansion("p", 0, 0)
        return acc

    total = None
    cols = tuple(range(size))
    for j in range(size):
        entry = mat[0][j]
        if entry.is_zero():
            continue
        sub = bos_minor(tuple(range(1, size)), cols[:j] + cols[j + 1:])
        term = p_product(entry, sub)
        if j % 2:
            term = term.scale(-1)
        total = term if total is None else total + term
    return total if total is not None else BasisExpansion("p", 0, 1)


def det_identities_check(n_max: int) -> list:
    """Check the classical recursions and determinantal identities symbolically.

    Returns a list of failure descriptions; an empty list means all hold.
    """
    failures = []

    def h(r):
        return _gen_p("h", r)

    def e(r):
        return _gen_p("e", r)

    def p(r):
        return _gen_p("p", r)

    def ht(r):
        return _gen_p("ht", r)

    def et(r):
        return _gen_p("et", r)

    def pt(r):
        return _gen_p("pt", r)

    def check(name, lhs, rhs):
        if lhs is None and rhs is None:
            return
        if (lhs is None) != (rhs is None) or lhs != rhs:
            failures.append(name)

    def ssum(terms):
        acc = None
        for t in terms:
            acc = t if acc is None else acc + t
        return acc

    for n in range(1, n_max + 1):
        # alternating convolution of elementary and complete functions
        check(f"sum (-1)^r e_r h_(n-r) = 0 (n={n})",
              ssum(p_product(e(r), h(n - r)).scale((-1) ** r) for r in range(n + 1)),
              BasisExpansion("p", n, 0))
        # Newton recursions
        check(f"n h_n = sum p_r h_(n-r) (n={n})",
              h(n).scale(n),
              ssum(p_product(p(r), h(n - r)) for r in range(1, n + 1)))
        check(f"n e_n = sum (-1)^(r+1) p_r e_(n-r) (n={n})",
              e(n).scale(n),
              ssum(p_product(p(r), e(n - r)).scale((-1) ** (r + 1)) for r in range(1, n + 1)))

    for n in range(0, n_max + 1):
        check(f"fermionic e-h convolution (n={n})",
              ssum((p_product(e(r), ht(n - r)) - p_product(et(r), h(n - r))).scale((-1) ** r)
                   for r in range(n + 1)),
              BasisExpansion("p", n, 1))
        check(f"(n+1) ht_n fermionic Newton (n={n})",
              ht(n).scale(n + 1),
              ssum(p_product(p(r), ht(n - r)) + p_product(pt(r), h(n - r)).scale(r + 1)
                   for r in range(n + 1)))
        check(f"(n+1) et_n fermionic Newton (n={n})",
              et(n).scale(n + 1),
              ssum((p_product(p(r), et(n - r)) - p_product(pt(r), e(n - r)).scale(r + 1))
                   .scale((-1) ** (r + 1)) for r in range(n + 1)))

    # determinants: e_n from h, p_n from e, n! e_n from p
    for n in range(1, n_max + 1):
        mat = [[h(j - i + 1) for j in range(n)] for i in range(n)]
        for i in range(1, n):
            mat[i][i - 1] = _p_unit()
            for j in range(i - 1):
                mat[i][j] = BasisExpansion("p", 0, 0)
        check(f"e_{n} as h determinant", e(n), _det_fermionic_first_row(mat))

        mat = [[e(j - i + 1).scale(j + 1 if i == 0 else 1) for j in range(n)] for i in range(n)]
        for i in range(1, n):
            mat[i][i - 1] = _p_unit()
            for j in range(i - 1):
                mat[i][j] = BasisExpansion("p", 0, 0)
        check(f"p_{n} as e determinant", p(n), _det_fermionic_first_row(mat))

        mat = [[p(j - i + 1) for j in range(n)] for i in range(n)]
        for i in range(1, n):
            mat[i][i - 1] = BasisExpansion("p", 0, 0, {EMPTY: RatFunc.from_int(i)})
            for j in range(i - 1):
                mat[i][j] = BasisExpansion("p", 0, 0)
        check(f"n! e_{n} as p determinant", e(n).scale(factorial(n)),
              _det_fermionic_first_row(mat))

    # fermionic determinants
    for n in range(0, n_max + 1):
        size = n + 1
        mat = [[ht(j) for j in range(size)]]
        for i in range(1, size):
            row = []
            for j in range(size):
                if j < i - 1:
                    row.append(BasisExpansion("p", 0, 0))
                else:
                    row.append(h(j - i + 1).scale(n + j - 2 * i + 2))
            mat.append(row)
        check(f"n! et_{n} as ht/h determinant", et(n).scale(factorial(n)),
              _det_fermionic_first_row(mat))

        mat = [[et(j) for j in range(size)]]
        for i in range(1, size):
            row = []
            for j in range(size):
                if j < i - 1:
                    row.append(BasisExpansion("p", 0, 0))
                else:
                    row.append(e(j - i + 1))
            mat.append(row)
        check(f"pt_{n} as et/e determinant", pt(n), _det_fermionic_first_row(mat))

        mat = [[pt(j) for j in range(size)]]
        for i in range(1, size):
            row = []
            for j in range(size):
                if j < i - 1:
                    row.append(BasisExpansion("p", 0, 0))
                elif j == i - 1:
                    row.append(BasisExpansion("p", 0, 0, {EMPTY: RatFunc.from_int(n - i + 1)}))
                else:
                    row.append(p(j - i + 1))
            mat.append(row)
        check(f"n! et_{n} as pt/p determinant", et(n).scale(factorial(n)),
              _det_fermionic_first_row(mat))

    return failures
