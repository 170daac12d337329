"""Superpartitions: the index combinatorics.

A superpartition is a pair (antisym; sym): a strictly decreasing sequence of
nonnegative integers (which may end in 0) followed by an ordinary partition
with positive parts.  The antisymmetric side carries the fermionic content;
its entries are drawn with circles in the diagram.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .coeffs import RF_ONE, RatFunc


class SectorError(ValueError):
    """A request for a superpartition outside its admissible sector."""


class SuperPartition:
    """Immutable superpartition (antisym; sym)."""

    __slots__ = ("a", "s", "_hash")

    def __init__(self, antisym=(), sym=()):
        a = tuple(int(v) for v in antisym)
        s = tuple(int(v) for v in sym)
        if any(v < 0 for v in a) or any(a[i] <= a[i + 1] for i in range(len(a) - 1)):
            raise ValueError(f"antisymmetric side must be strictly decreasing and nonnegative: {a}")
        while s and s[-1] == 0:
            s = s[:-1]
        if any(v <= 0 for v in s) or any(s[i] < s[i + 1] for i in range(len(s) - 1)):
            raise ValueError(f"symmetric side must be weakly decreasing and positive: {s}")
        self.a = a
        self.s = s
        self._hash = hash((a, s))

    # -- basic structure ----------------------------------------------------

    @property
    def m(self) -> int:
        """Fermionic degree: the number of antisymmetric parts."""
        return len(self.a)

    @property
    def n(self) -> int:
        """Bosonic degree: the sum of all parts."""
        return sum(self.a) + sum(self.s)

    @property
    def length(self) -> int:
        """Number of parts, counting a zero antisymmetric entry."""
        return len(self.a) + len(self.s)

    def star(self) -> tuple:
        """All parts merged in weakly decreasing order, zeros stripped."""
        merged = sorted(self.a + self.s, reverse=True)
        while merged and merged[-1] == 0:
            merged.pop()
        return tuple(merged)

    def c_entries(self) -> tuple:
        """Rows of the circled diagram as (value, circled) pairs.

        Equal values place the circled one first, realizing the leftmost rule.
        """
        rows = [(v, True) for v in self.a] + [(v, False) for v in self.s]
        rows.sort(key=lambda t: (-t[0], 0 if t[1] else 1))
        return tuple(rows)

    def sort_key(self):
        """Canonical order key: descending lexicographic on the circled diagram."""
        return tuple((-v, 0 if c else 1) for v, c in self.c_entries())

    def composition(self, width=None) -> tuple:
        """The underlying composition: drop the semicolon, optionally zero-pad."""
        comp = self.a + self.s
        if width is not None:
            comp = comp + (0,) * (width - len(comp))
        return comp

    # -- conjugation ----------------------------------------------------------

    def conjugate(self) -> "SuperPartition":
        """Transpose the circled diagram."""
        rows = self.c_entries()
        maxlen = rows[0][0] if rows else 0
        circle_rows = {v + 1 for v, circ in rows if circ}
        new_a, new_s = [], []
        for j in range(1, maxlen + 2):
            ln = sum(1 for v, _ in rows if v >= j)
            if j in circle_rows:
                new_a.append(ln)
            elif ln > 0:
                new_s.append(ln)
        return SuperPartition(sorted(new_a, reverse=True), new_s)

    # -- scalar statistics ------------------------------------------------------

    def z_int(self) -> int:
        """The classical z statistic of the symmetric side."""
        out = 1
        for k in set(self.s):
            nk = self.s.count(k)
            out *= k ** nk * factorial(nk)
        return out

    def z_beta(self) -> RatFunc:
        """b^(-length) times z; the diagonal Gram entry of the power-sum basis."""
        return RatFunc((self.z_int(),), (0,) * self.length + (1,))

    def n_factorial(self) -> int:
        """Product of factorials of part multiplicities of the symmetric side."""
        out = 1
        for k in set(self.s):
            out *= factorial(self.s.count(k))
        return out

    def omega_sign(self) -> int:
        return -1 if (self.n + self.m - self.length) % 2 else 1

    def omega_alpha(self, alpha: RatFunc) -> RatFunc:
        """alpha^length * (-1)^(n - m + length); the diagonal eigenvalue of the
        alpha-deformed homomorphism on the power-sum basis."""
        sign = -1 if (self.n - self.m + self.length) % 2 else 1
        return RatFunc.coerce(alpha) ** self.length * sign

    def sharp(self) -> int:
        """Number of pairs (i, j) with i antisymmetric, j symmetric, part_i < part_j."""
        return sum(1 for ai in self.a for sj in self.s if ai < sj)

    # -- diagram cell statistics --------------------------------------------------

    def cells(self):
        """Box coordinates (row, col), 1-based, of the diagram (circles excluded)."""
        out = []
        for i, (v, _) in enumerate(self.c_entries(), start=1):
            out.extend((i, j) for j in range(1, v + 1))
        return out

    def arm(self, cell) -> int:
        """Cells to the right in the row, counting a terminal circle."""
        i, j = cell
        v, circ = self.c_entries()[i - 1]
        return (v - j) + (1 if circ else 0)

    def leg(self, cell) -> int:
        """Cells below in the column, not counting a terminal circle."""
        i, j = cell
        rows = self.c_entries()
        return sum(1 for k in range(i, len(rows)) if rows[k][0] >= j)

    def circle_free_cells(self):
        """Cells lying outside the intersection of a circled row and circled column."""
        rows = self.c_entries()
        circ_rows = {i for i, (v, c) in enumerate(rows, start=1) if c}
        circ_cols = {v + 1 for v, c in rows if c}
        return [(i, j) for (i, j) in self.cells() if not (i in circ_rows and j in circ_cols)]

    # -- text format ----------------------------------------------------------

    def __str__(self):
        return ",".join(map(str, self.a)) + ";" + ",".join(map(str, self.s))

    __repr__ = __str__

    @staticmethod
    def parse(text: str) -> "SuperPartition":
        if ";" not in text:
            raise ValueError(f"superpartition string needs a semicolon: {text!r}")
        left, right = text.split(";", 1)
        a = tuple(int(v) for v in left.split(",") if v.strip() != "")
        s = tuple(int(v) for v in right.split(",") if v.strip() != "")
        return SuperPartition(a, s)

    def __eq__(self, other):
        return isinstance(other, SuperPartition) and self.a == other.a and self.s == other.s

    def __hash__(self):
        return self._hash


EMPTY = SuperPartition()


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _partitions(n, max_part=None, max_len=None):
    """Weakly decreasing positive tuples summing to n."""
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in _partitions(n - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def _strict_partitions(n, m, max_first):
    """Strictly decreasing m-tuples of nonnegative integers summing to n."""
    if m == 0:
        if n == 0:
            yield ()
        return
    # smallest possible remainder for the last m-1 entries is (m-1)(m-2)/2
    lo = (m - 1) * (m - 2) // 2
    for first in range(min(n - lo, max_first), m - 2, -1):
        for rest in _strict_partitions(n - first, m - 1, first - 1):
            yield (first,) + rest


def enumerate_spar(n: int, m: int, max_length=None) -> list:
    """All superpartitions of (n|m), in canonical (descending diagram) order."""
    if n < 0 or m < 0 or n < m * (m - 1) // 2:
        return []
    out = []
    smax = None if max_length is None else max_length - m
    if smax is not None and smax < 0:
        return []
    for k in range(m * (m - 1) // 2, n + 1):
        for a in _strict_partitions(k, m, k):
            for s in _partitions(n - k, None, smax):
                out.append(SuperPartition(a, s))
    out.sort(key=SuperPartition.sort_key)
    return out


def lambda_min(n: int, m: int) -> SuperPartition:
    """The Bruhat-minimal superpartition of (n|m): the staircase plus a column of 1s."""
    delta = tuple(range(m - 1, -1, -1))
    rest = n - m * (m - 1) // 2
    if rest < 0:
        raise SectorError(f"sector ({n}|{m}) is empty")
    return SuperPartition(delta, (1,) * rest)


# ---------------------------------------------------------------------------
# Order relations
# ---------------------------------------------------------------------------

def _dominance_leq(mu: tuple, la: tuple) -> bool:
    """Dominance order on partitions of equal weight."""
    if sum(mu) != sum(la):
        return False
    pm = pl = 0
    for k in range(max(len(mu), len(la))):
        pm += mu[k] if k < len(mu) else 0
        pl += la[k] if k < len(la) else 0
        if pm > pl:
            return False
    return True


@lru_cache(maxsize=None)
def _t_lower_set(lam: SuperPartition) -> frozenset:
    """Everything reachable from lam by moving circles to strictly smaller values."""
    seen = {lam}
    frontier = [lam]
    while frontier:
        cur = frontier.pop()
        s_vals = sorted(set(cur.s), reverse=True)
        for ai in cur.a:
            targets = [b for b in s_vals if b < ai] + ([0] if ai > 0 else [])
            for b in targets:
                if b in cur.a:
                    continue
                new_a = sorted((set(cur.a) - {ai}) | {b}, reverse=True)
                new_s = list(cur.s)
                if b > 0:
                    new_s.remove(b)
                new_s.append(ai)
                nxt = SuperPartition(new_a, sorted(new_s, reverse=True))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return frozenset(seen)


def order_leq(kind: str, omega: SuperPartition, lam: SuperPartition) -> bool:
    """Is omega <= lam in the chosen order?  False across different sectors."""
    if (omega.n, omega.m) != (lam.n, lam.m):
        return False
    if kind == "dominance_star":
        return _dominance_leq(omega.star(), lam.star())
    if kind == "s_order":
        return omega == lam or (omega.star() != lam.star()
                                and _dominance_leq(omega.star(), lam.star()))
    if kind == "t_order":
        return omega.star() == lam.star() and omega in _t_lower_set(lam)
    if kind == "bruhat":
        if omega == lam:
            return True
        if omega.star() == lam.star():
            return omega in _t_lower_set(lam)
        return _dominance_leq(omega.star(), lam.star())
    if kind == "dominance_super":
        if omega == lam:
            return True
        if omega.star() != lam.star():
            return _dominance_leq(omega.star(), lam.star())
        width = max(omega.length, lam.length)
        po = pl = 0
        for x, y in zip(omega.composition(width), lam.composition(width)):
            po += x
            pl += y
            if po > pl:
                return False
        return True
    raise ValueError(f"unknown order kind {kind!r}")


def bruhat_leq(omega, lam):
    return order_leq("bruhat", omega, lam)


def bruhat_lower_set(lam: SuperPartition) -> list:
    """All omega <= lam in Bruhat order, in canonical order."""
    return [om for om in enumerate_spar(lam.n, lam.m) if bruhat_leq(om, lam)]


def linear_extension(spars, reverse=False) -> list:
    """A total order compatible with Bruhat: ascending by default."""
    remaining = list(spars)
    out = []
    while remaining:
        for i, cand in enumerate(remaining):
            if not any(o is not cand and bruhat_leq(o, cand) for o in remaining):
                out.append(remaining.pop(i))
                break
        else:  # pragma: no cover - Bruhat order is antisymmetric
            raise RuntimeError("cycle in order relation")
    return out if not reverse else list(reversed(out))


# ---------------------------------------------------------------------------
# Aggregate statistics record
# ---------------------------------------------------------------------------

@dataclass
class SuperPartitionStats:
    length: int
    z: int
    z_beta: RatFunc
    n_fact: int
    omega: int
    star: tuple
    circled: tuple

    def omega_alpha(self, alpha):
        return self._sp.omega_alpha(alpha)


def stats(lam: SuperPartition) -> SuperPartitionStats:
    rec = SuperPartitionStats(
        length=lam.length,
        z=lam.z_int(),
        z_beta=lam.z_beta(),
        n_fact=lam.n_factorial(),
        omega=lam.omega_sign(),
        star=lam.star(),
        circled=lam.c_entries(),
    )
    rec._sp = lam
    return rec


# ---------------------------------------------------------------------------
# The conjectured minimal-coefficient product
# ---------------------------------------------------------------------------

def cmin_conjecture_value(lam: SuperPartition) -> RatFunc:
    """1 / prod over eligible cells of (arm/b + leg + 1)."""
    out = RF_ONE
    for cell in lam.circle_free_cells():
        a = lam.arm(cell)
        l = lam.leg(cell)
        out = out * RatFunc((0, 1), (a, l + 1))  # b / (a + (l+1) b)
    return out


# ---------------------------------------------------------------------------
# Generating-series count check
# ---------------------------------------------------------------------------

def count_series_check(max_n: int, max_m: int, n_cap: int) -> bool:
    """Compare enumeration counts with the q-series coefficients.

    The number of superpartitions of (n|m) with at most m+p parts is the
    coefficient of z^m y^p q^n in prod(1+z q^k, k>=0) / prod(1-y q^k, k>=0);
    the k=0 factor of the denominator accumulates counts over the length bound.
    """
    # coeff[(m, p, n)] built by multiplying truncated factors
    series = {(0, 0, 0): 1}
    for k in range(0, max_n + 1):  # (1 + z q^k), one fermionic part of size k
        new = dict(series)
        for (m, p, n), c in series.items():
            if m + 1 <= max_m and n + k <= max_n:
                key = (m + 1, p, n + k)
                new[key] = new.get(key, 0) + c
        series = new
    for k in range(0, max_n + 1):  # 1/(1 - y q^k) truncated
        new = {}
        for (m, p, n), c in series.items():
            j = 0
            while n + j * k <= max_n and p + j <= n_cap:
                key = (m, p + j, n + j * k)
                new[key] = new.get(key, 0) + c
                j += 1
        series = new
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            spars = enumerate_spar(n, m)
            for p in range(0, n_cap - m + 1):
                want = sum(1 for sp in spars if sp.length <= m + p)
                got = series.get((m, p, n), 0)
                if want != got:
                    return False
    return True
