"""Scalar products and Cauchy kernels.

The deformed combinatorial product is diagonal on power sums with diagonal
entry z_lam(b) = b^(-length) z_lam; products here are stored in standard
left-to-right order, so identities stated with reversed fermionic factors
pick up an explicit (-1)^(m(m-1)/2) when tested.  The physical product is a
constant-term pairing over Laurent polynomials, defined for positive
integer b.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coeffs import RF_ONE, RF_ZERO, RatFunc, beta_binomial, binom_beta_choose
from .superpartitions import SuperPartition, enumerate_spar
from .superpolynomials import SuperPoly, ShapeError, realize_monomial, reversal_sign
from .bases import BasisExpansion, BasisError, convert, transition


class InnerError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Combinatorial scalar product
# ---------------------------------------------------------------------------

def form_beta(f: BasisExpansion, g: BasisExpansion, beta=None) -> RatFunc:
    """Deformed combinatorial product of two power-sum expansions.

    beta=None keeps the parameter symbolic; a Fraction or int substitutes it;
    beta=1 is the undeformed combinatorial product.
    """
    if f.basis != "p" or g.basis != "p":
        raise InnerError("form_beta expects power-sum expansions")
    if (f.n, f.m) != (g.n, g.m) and f.coeffs and g.coeffs:
        raise InnerError(f"bidegree mismatch: ({f.n}|{f.m}) vs ({g.n}|{g.m})")
    total = RF_ZERO
    for lam, c1 in f.coeffs.items():
        c2 = g.coeffs.get(lam)
        if c2 is None:
            continue
        total = total + c1 * c2 * lam.z_beta()
    if beta is not None:
        return RatFunc.from_fraction(total.eval_at(Fraction(beta)))
    return total


def form_beta_m(f: BasisExpansion, g: BasisExpansion, beta=None) -> RatFunc:
    """Convenience wrapper converting monomial-side expansions to power sums."""
    return form_beta(convert(f, "p"), convert(g, "p"), beta)


def omega_alpha(f: BasisExpansion, alpha) -> BasisExpansion:
    """The diagonal homomorphism on power sums with eigenvalue
    alpha^length (-1)^(n - m + length)."""
    alpha = RatFunc.coerce(alpha)
    if alpha.is_zero():
        raise InnerError("alpha must be nonzero")
    if f.basis != "p":
        raise InnerError("omega_alpha expects a power-sum expansion")
    out = BasisExpansion("p", f.n, f.m)
    for lam, c in f.coeffs.items():
        out.coeffs[lam] = c * lam.omega_alpha(alpha)
    return out


def omega_involution(f: BasisExpansion) -> BasisExpansion:
    return omega_alpha(f, 1)


# ---------------------------------------------------------------------------
# Cauchy kernels
# ---------------------------------------------------------------------------

class KernelExpansion:
    """A truncated two-variable-set kernel.

    Every monomial of the kernel has equal x and y degrees and equal numbers
    of thetas and phis; terms are kept when that common bosonic degree is at
    most max_deg and the fermionic one at most max_ferm.  The concrete() view
    lives in 2N bosonic variables (x then y) and 2N fermionic ones (theta
    then phi).  The power-sum presentation also records its diagonal
    coefficients, keyed by superpartition.
    """

    def __init__(self, mode, N, max_deg, max_ferm, poly: SuperPoly, p_terms=None):
        self.mode = mode
        self.N = N
        self.max_deg = max_deg
        self.max_ferm = max_ferm
        self.poly = poly
        self.p_terms = p_terms

    def concrete(self) -> SuperPoly:
        return self.poly


def _truncate_bi(poly: SuperPoly, N, max_deg, max_ferm) -> SuperPoly:
    out = SuperPoly(poly.N)
    for (th, e), c in poly.terms.items():
        if sum(e[:N]) <= max_deg and sum(1 for t in th if t < N) <= max_ferm:
            out.terms[(th, e)] = c
    return out


def kernel_expand(mode: str, N: int, max_deg: int, max_ferm: int, inverse=False) -> KernelExpansion:
    """Truncated Cauchy kernel in one of three presentations.

    mode 'p_tensor_p' sums z_lam(b)^{-1} times reversed-order power sums,
    'm_tensor_g' pairs supermonomials with their duals, and 'direct' expands
    the product over variable pairs with the deformed binomial series.  With
    inverse=True the direct mode expands the reciprocal kernel instead (the
    omega-twisted sum in the p presentation).
    """
    if max_deg < 0 or max_ferm < 0:
        raise InnerError("bounds must be nonnegative")
    if mode == "direct":
        if N > 4 or max_deg > 5:
            raise InnerError("direct kernel expansion capped at N <= 4, max_deg <= 5")
        return KernelExpansion(mode, N, max_deg, max_ferm,
                               _kernel_direct(N, max_deg, max_ferm, inverse))
    if mode == "p_tensor_p":
        poly, p_terms = _kernel_pp(N, max_deg, max_ferm, inverse)
        return KernelExpansion(mode, N, max_deg, max_ferm, poly, p_terms)
    if mode == "m_tensor_g":
        if inverse:
            raise InnerError("the reciprocal kernel has no monomial-dual presentation here")
        return KernelExpansion(mode, N, max_deg, max_ferm,
                               _kernel_mg(N, max_deg, max_ferm))
    raise InnerError(f"unknown kernel mode {mode!r}")


def _realize_expansion(exp: BasisExpansion, N: int) -> SuperPoly:
    out = SuperPoly(N)
    for lam, c in exp.coeffs.items():
        if lam.length <= N:
            out = out + realize_monomial(lam, N).scale(c)
    return out


def realize_power_product(lam: SuperPartition, N: int) -> SuperPoly:
    """The concrete power-sum product indexed by lam, fermionic factors first."""
    out = SuperPoly.one(N)
    for r in lam.a:
        pt = SuperPoly(N)
        for i in range(N):
            e = [0] * N
            e[i] = r
            pt.terms[((i,), tuple(e))] = RF_ONE
        out = out * pt
    for r in lam.s:
        pb = SuperPoly(N)
        for i in range(N):
            e = [0] * N
            e[i] = r
            pb.terms[((), tuple(e))] = RF_ONE
        out = out * pb
    return out


def _embed_y(poly: SuperPoly, N: int) -> SuperPoly:
    return poly.embed(2 * N, x_offset=N)


def _kernel_pp(N, max_deg, max_ferm, inverse):
    big = SuperPoly(2 * N)
    p_terms = {}
    for d in range(max_deg + 1):
        for fm in range(max_ferm + 1):
            for lam in enumerate_spar(d, fm):
                coeff = lam.z_beta().inverse() * reversal_sign(fm)
                if inverse:
                    coeff = coeff * lam.omega_sign()
                p_terms[lam] = coeff
                px = realize_power_product(lam, N).embed(2 * N)
                py = _embed_y(realize_power_product(lam, N), N)
                big = big + (px * py).scale(coeff)
    return big, p_terms


def _kernel_mg(N, max_deg, max_ferm) -> SuperPoly:
    big = SuperPoly(2 * N)
    for d in range(max_deg + 1):
        for fm in range(max_ferm + 1):
            for lam in enumerate_spar(d, fm, max_length=N):
                mx = realize_monomial(lam, N).embed(2 * N)
                gy = _embed_y(_realize_expansion(convert(BasisExpansion.unit("g", lam), "m"), N), N)
                big = big + (mx * gy).scale(reversal_sign(fm))
    return big


def _kernel_direct(N, max_deg, max_ferm, inverse) -> SuperPoly:
    """Product over variable pairs of (1 -+ x_i y_j -+ theta_i phi_j)^(-+b)."""
    big = SuperPoly.one(2 * N)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            factor = SuperPoly(2 * N)
            for k in range(max_deg + 2):
                coeff = binom_beta_choose(k) if inverse else beta_binomial(k)
                # u^k = (x y)^k + k (x y)^(k-1) theta phi
                if k <= max_deg:
                    e = [0] * (2 * N)
                    e[i - 1] = k
                    e[N + j - 1] = k
                    factor._iadd_term(((), tuple(e)), coeff)
                if k >= 1 and max_ferm >= 1 and k - 1 <= max_deg:
                    e2 = [0] * (2 * N)
                    e2[i - 1] = k - 1
                    e2[N + j - 1] = k - 1
                    factor._iadd_term(((i - 1, N + j - 1), tuple(e2)), coeff * k)
            big = _truncate_bi(big * factor, N, max_deg, max_ferm)
    return big


def kernel_pair_x(kernel: KernelExpansion, f: BasisExpansion) -> BasisExpansion:
    """Pair the power-sum kernel presentation against f in the x variables.

    The stored diagonal coefficients include the fermionic reversal sign, so
    the pairing first converts the x side back to standard order; the result
    is the y-side image, which equals f when the kernel reproduces.
    """
    if kernel.mode != "p_tensor_p" or kernel.p_terms is None:
        raise InnerError("pairing is defined on the power-sum presentation")
    fp = convert(f, "p")
    out = BasisExpansion("p", f.n, f.m)
    for lam, kcoeff in kernel.p_terms.items():
        if (lam.n, lam.m) != (f.n, f.m):
            continue
        c = fp.coeffs.get(lam)
        if c is None:
            continue
        # x side carries the reversal sign inside kcoeff; undo it, then pair
        paired = (kcoeff * reversal_sign(lam.m)) * (c * lam.z_beta())
        if not paired.is_zero():
            out.coeffs[lam] = paired
    return convert(out, f.basis)


# ---------------------------------------------------------------------------
# Physical (constant-term) scalar product
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _delta_density(N: int, beta: int) -> SuperPoly:
    """Delta^beta(xbar) Delta^beta(x) as a Laurent polynomial."""
    vand = SuperPoly.one(N)
    for j in range(1, N + 1):
        for k in range(j + 1, N + 1):
            vand = vand * (SuperPoly.x(j, N) - SuperPoly.x(k, N))
    dens = SuperPoly.one(N)
    for _ in range(beta):
        dens = dens * vand
    # divide by (prod x_i)^((N-1) beta)
    shift = SuperPoly(N, {((), tuple([-(N - 1) * beta] * N)): RF_ONE})
    delta = dens * shift
    return delta.bar() * delta


def physical_form(f: SuperPoly, g: SuperPoly, N: int, beta: int) -> RatFunc:
    """Constant-term scalar product with the squared Vandermonde density.

    Components with matching theta index sets pair; the first argument is
    bar-conjugated.  Requires symmetric inputs and a positive integer beta.
    """
    if not isinstance(beta, int) or beta < 1:
        raise InnerError("the physical product needs a positive integer deformation parameter")
    if f.N != N or g.N != N:
        raise InnerError("variable count mismatch")
    if not f.is_symmetric() or not g.is_symmetric():
        raise InnerError("physical product requires symmetric inputs")
    density = _delta_density(N, beta)
    fcomp = f.theta_components()
    gcomp = g.theta_components()
    total = RF_ZERO
    for th, fI in fcomp.items():
        gI = gcomp.get(th)
        if gI is None:
            continue
        paired = density * fI.bar() * gI
        total = total + paired.constant_term()
    return total


def physical_form_expansions(f: BasisExpansion, g: BasisExpansion, N: int, beta: int) -> RatFunc:
    """Physical product of two monomial-basis expansions realized at N variables."""
    bval = Fraction(beta)
    fr = _realize_expansion(convert(f, "m").subs_beta(bval), N)
    gr = _realize_expansion(convert(g, "m").subs_beta(bval), N)
    return physical_form(fr, gr, N, beta)
