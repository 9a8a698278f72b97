"""Closed-form parameter predictors, distance bounds, and the asymptotic /
random-coding machinery.

The three Singleton-type bounds take locality into account; the predictors
evaluate the covering-map parameter formulas without building a code; the
random-coding (GV-style) rate uses an exact integer weight enumerator and
high-precision arithmetic, minimizing over the enumerator variable by
golden-section search on its logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

import mpmath as mp

from .errors import ParameterError


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def bound_sb2(n: int, k: int, r: int) -> int:
    """Distance upper bound for an LRC with locality r (single local
    erasure)."""
    return n - k + 2 - _ceil_div(k, r)


def bound_sb(n: int, k: int, r: int, rho: int) -> int:
    """Distance upper bound for an LRC with locality (r, rho)."""
    return n - k + 1 - (_ceil_div(k, r) - 1) * (rho - 1)


def bound_hlrc(n: int, k: int, tuples: list[tuple[int, int]]) -> int:
    """Distance upper bound for a tau-level hierarchical LRC.

    tuples is [(r1, rho1), ..., (r_tau, rho_tau)], outermost first.
    """
    if not tuples:
        raise ParameterError("at least one locality tuple required")
    r_t, rho_t = tuples[-1]
    val = n - k + 1 - (_ceil_div(k, r_t) - 1) * (rho_t - 1)
    for j in range(len(tuples) - 1):
        rj, rhoj = tuples[j]
        rho_next = tuples[j + 1][1]
        val -= (_ceil_div(k, rj) - 1) * (rhoj - rho_next)
    return val


# ---------------------------------------------------------------------------
# Parameter predictors
# ---------------------------------------------------------------------------

@dataclass
class GeneralParams:
    """Inputs of the general two-cover parameter formulas.

    deg_psi_x is the worst fiber multiplicity of x; the source material gives
    no way to compute it, so it is always an input here.
    """

    t: int
    r2: int
    s: int
    deg_y: int
    deg_x: int
    deg_psi_x: int
    g_z: int
    deg_qinf: int
    n: int

    def __post_init__(self):
        if min(self.t, self.r2, self.s, self.deg_y, self.deg_x, self.n) < 1:
            raise ParameterError("t, r2, s, degrees and n must be positive")
        if self.deg_psi_x < 1:
            raise ParameterError("deg_psi_x must be >= 1")
        if self.g_z < 0 or self.deg_qinf < 0:
            raise ParameterError("genus and divisor degree must be >= 0")


def predict_general(p: GeneralParams) -> dict:
    nu = (p.s + 1) * (p.r2 + 1)
    r1 = p.r2 * p.s
    rho1 = max(2 * (p.r2 + 1) - p.deg_psi_x * (p.r2 - 1), 4)
    k = p.t * p.r2 * p.s
    k_lower = r1 * (p.deg_qinf - p.g_z + 1)
    d_lower = (
        p.n
        - (p.deg_qinf * (p.s + 1) + p.deg_y * (p.s - 1)) * (p.r2 + 1)
        - p.deg_x * (p.r2 - 1)
    )
    return {
        "nu": nu,
        "r1": r1,
        "rho1_lower": rho1,
        "k": k,
        "k_lower": k_lower,
        "d_lower": d_lower,
    }


def tower_genus_bound(q0: int, j: int) -> int:
    """Upper bound n_j/(q0-1) on the genus of level j of the asymptotically
    good tower (n_j points above the punctured line)."""
    n_j = q0 ** (j - 1) * (q0 ** 2 - 1)
    return n_j // (q0 - 1)


def predict_gs(q0: int, j: int, ell: int, deg_psi_x: int | None = None) -> dict:
    """Parameters of the naive two-step tower construction at level j.

    deg_psi_x is unknown in general; when omitted, rho1 is reported as the
    unconditional floor 4.
    """
    if j < 1 or q0 < 2 or ell < 0:
        raise ParameterError("need j >= 1, q0 >= 2, ell >= 0")
    n = q0 ** (j + 1) * (q0 ** 2 - 1)
    g_bound = tower_genus_bound(q0, j)
    k_lower = max(ell - g_bound + 1, 0) * (q0 - 1) ** 2
    d_lower = n - ell * q0 ** 2 - 2 * q0 ** (j + 1) * (q0 - 2)
    if deg_psi_x is None:
        rho1 = 4
    else:
        rho1 = max(2 * q0 - deg_psi_x * (q0 - 2), 4)
    return {
        "n": n,
        "r1": (q0 - 1) ** 2,
        "r2": q0 - 1,
        "rho1_lower": rho1,
        "rho2": 2,
        "k_lower": k_lower,
        "d_lower": d_lower,
        "genus_bound": g_bound,
    }


def predict_pow(q0: int, j: int, a: int, b: int, ell: int) -> dict:
    """Parameters of the power-map construction at tower level j in {1, 2}.

    The dimension uses the exact pole-order count on the quotient; higher
    levels have no closed form for that count and are out of scope.
    """
    if j not in (1, 2):
        raise ParameterError("predict_pow supports tower levels j=1 and j=2 only")
    nu = (a + 1) * (b + 1)
    if (q0 + 1) % nu != 0:
        raise ParameterError(f"(a+1)(b+1)={nu} must divide q0+1={q0 + 1}")
    if ell < 0:
        raise ParameterError("ell must be >= 0")
    n = q0 ** (j - 1) * (q0 ** 2 - 1)
    if j == 1:
        t = ell + 1
    else:
        from .construct import hermitian_pole_basis

        t = len(hermitian_pole_basis(q0, (q0 + 1) // nu, ell))
    d_lower = n - ell * nu - q0 ** (j - 1) * (a * b + b - 2)
    return {
        "n": n,
        "k": t * a * b,
        "t": t,
        "d_lower": d_lower,
        "r1": a * b,
        "rho1": a + 3,
        "r2": a,
        "rho2": 2,
    }


@dataclass
class AvailabilityParams:
    """Inputs of the two-hierarchy fiber-product parameter formulas."""

    c: int
    s1: int
    s2: int
    t1: int
    t2: int
    m: int
    h_x1: int
    h_x2: int
    h_y1: int
    h_y2: int
    hp11: int
    hp12: int
    hp21: int
    hp22: int

    @classmethod
    def rs_instance(cls, c: int, s1: int, s2: int, t1: int, t2: int, m: int):
        """The degrees and fiber multiplicities of the subgroup-coset
        realization on the line."""
        return cls(
            c=c, s1=s1, s2=s2, t1=t1, t2=t2, m=m,
            h_x1=s2 * t1 * t2, h_x2=s1 * t1 * t2,
            h_y1=t2, h_y2=t1,
            hp11=s1, hp12=1, hp21=1, hp22=s2,
        )

    def __post_init__(self):
        if gcd(self.s1, self.s2) != 1 or gcd(self.t1, self.t2) != 1:
            raise ParameterError("s1,s2 and t1,t2 must be coprime pairs")
        if min(self.hp11, self.hp12, self.hp21, self.hp22) < 1:
            raise ParameterError("fiber multiplicities must be >= 1")
        if self.m < 1:
            raise ParameterError("m must be >= 1")


def predict_availability(p: AvailabilityParams) -> dict:
    """Formula values as published; the known one-off discrepancy of the
    worked example (26 vs the formula's 27) is documented, not matched."""
    n = p.c * p.s1 * p.s2 * p.t1 * p.t2
    k = p.m * (p.s1 - 1) * (p.s2 - 1) * (p.t1 - 1) * (p.t2 - 1)
    d_lower = (
        n
        - (p.m - 1) * p.s1 * p.s2 * p.t1 * p.t2
        - (p.h_y1 * (p.t1 - 2) + p.h_y2 * (p.t2 - 2)) * p.s1 * p.s2
        - p.h_x1 * (p.s1 - 2)
        - p.h_x2 * (p.s2 - 2)
    )
    rho11 = max(
        p.s1 * p.s2 * (p.t2 - p.t1 + 2) - p.hp11 * (p.s1 - 2) - p.hp21 * (p.s2 - 2), 4
    )
    rho12 = max(
        p.s1 * p.s2 * (p.t1 - p.t2 + 2) - p.hp12 * (p.s1 - 2) - p.hp22 * (p.s2 - 2), 4
    )
    return {
        "n": n,
        "k": k,
        "d_lower": d_lower,
        "r11": (p.s1 - 1) * (p.s2 - 1) * (p.t1 - 1),
        "r12": (p.s1 - 1) * (p.s2 - 1) * (p.t2 - 1),
        "rho11_lower": rho11,
        "rho12_lower": rho12,
        "nu1": p.s1 * p.s2 * p.t2,
        "nu2": p.s1 * p.s2 * p.t1,
    }


# ---------------------------------------------------------------------------
# Weight enumerators and the random-coding rate bound
# ---------------------------------------------------------------------------

@dataclass
class WeightEnum:
    """Exact weight distribution A_0..A_n of a code with q^k words."""

    n: int
    k: int
    q: int
    coeffs: list[int]

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ParameterError("need exactly n+1 coefficients")
        if self.coeffs[0] != 1:
            raise ParameterError("A_0 must be 1")
        if sum(self.coeffs) != self.q ** self.k:
            raise ParameterError("weight distribution does not sum to q^k")


def rs_weight_enumerator(n: int, k: int, q: int) -> WeightEnum:
    """Exact weight distribution of an MDS [n, k, n-k+1] code over GF(q)."""
    if not 1 <= k <= n <= q:
        raise ParameterError("need 1 <= k <= n <= q")
    d = n - k + 1
    coeffs = [0] * (n + 1)
    coeffs[0] = 1
    for w in range(d, n + 1):
        total = 0
        for j in range(w - d + 1):
            total += (-1) ** j * comb(w - 1, j) * q ** (w - d - j)
        coeffs[w] = comb(n, w) * (q - 1) * total
    return WeightEnum(n=n, k=k, q=q, coeffs=coeffs)


def _golden_min(f, lo: float, hi: float, rel_tol: float = 1e-8):
    """Golden-section minimum of a unimodal f on [lo, hi]."""
    phi = (mp.sqrt(5) - 1) / 2
    a, b = mp.mpf(lo), mp.mpf(hi)
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > rel_tol * max(1, abs(a), abs(b)):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def gv_rate(
    nu: int,
    r1: int,
    enum: WeightEnum,
    delta: float,
    q: int,
    rel_tol: float = 1e-8,
    u_range: tuple[float, float] = (-30.0, 30.0),
) -> dict:
    """Achievable-rate value of the random-coding bound.

    Minimizes (1/nu) log_q B(s) - delta log_q s over s > 0, searching on
    u = log10 s in u_range; the bracket values at the endpoints are reported
    so a non-unimodal pathology would be visible.
    """
    if not 0 < delta < 1:
        raise ParameterError("delta must be in (0, 1)")
    if enum.n != nu:
        raise ParameterError("enumerator length does not match nu")
    with mp.workdps(60):
        lnq = mp.log(q)
        coeffs = enum.coeffs

        def bracket(u):
            s = mp.power(10, u)
            b = mp.mpf(0)
            for w, a_w in enumerate(coeffs):
                if a_w:
                    b += a_w * mp.power(s, w)
            return mp.log(b) / lnq / nu - delta * u * mp.log(10) / lnq

        u_star, h_min = _golden_min(bracket, u_range[0], u_range[1], rel_tol)
        rate = mp.mpf(r1) / nu - h_min
        return {
            "rate": float(rate),
            "s_star": float(mp.power(10, u_star)),
            "bracket_min": float(h_min),
            "bracket_at_lo": float(bracket(mp.mpf(u_range[0]))),
            "bracket_at_hi": float(bracket(mp.mpf(u_range[1]))),
        }


# ---------------------------------------------------------------------------
# Asymptotic rate / relative-distance trade-offs
# ---------------------------------------------------------------------------

def asympt_ab(q0: int, delta: float) -> float:
    """Asymptotic rate floor of the naive tower family."""
    if q0 < 2:
        raise ParameterError("q0 must be >= 2")
    return ((q0 - 1) / q0) ** 2 * (1 - delta - 3 / (q0 + 1))


def asympt_prop2(q0: int, s: int, r2: int, delta: float) -> float:
    """Rate floor with the inner exponent ranges trimmed to s and r2."""
    if not (2 <= s <= q0 - 1 and 2 <= r2 <= q0 - 1):
        raise ParameterError("need 2 <= s, r2 <= q0-1")
    return (s * r2 / q0 ** 2) * (1 - delta - (q0 + s + r2 - 1) / (q0 ** 2 - 1))


def asympt_pa(q0: int, a: int, b: int, delta: float) -> float:
    """Rate floor of the power-map family (distance-optimal middle codes)."""
    nu = (a + 1) * (b + 1)
    if (q0 + 1) % nu != 0:
        raise ParameterError(f"(a+1)(b+1)={nu} must divide q0+1={q0 + 1}")
    return (a * b / nu) * (1 - delta - (q0 + a * b + b - 1) / (q0 ** 2 - 1))
