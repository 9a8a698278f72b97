"""Construction of hierarchical locally recoverable evaluation codes.

Every code here is the image of a function space evaluated on a structured
point set: the function space is spanned by products of group-invariant
functions (powers of x on the line, orbit-sum Mobius invariants on the
projective line, powers of the fiber coordinates elsewhere) with low-degree
monomials in the moving coordinate.  The generator matrix, hierarchy and
claimed parameters are recorded on an immutable EvalCode value; claimed
distances are stored as claims and proved or bounded later by the verify
module, never asserted blindly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd as int_gcd

import numpy as np

from .errors import InvariantError, ParameterError
from .galois import Field
from .linalg import Mat, rank, vec_mat
from .curves import (
    Hierarchy,
    MobiusMap,
    Point,
    availability_hierarchies,
    hermitian_hierarchy,
    hermitian_points,
    hermitian_q0,
    rs_evaluation_set,
    torus_orbits,
)

NEG_INF = float("-inf")


class Poly:
    """Dense univariate polynomial over a field, coefficients low-degree
    first, trailing zeros trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, field: Field, c: int) -> "Poly":
        return cls(field, [c])

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Poly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Poly(F, [F.sub(x, y) for x, y in zip(a, b)])

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ai in enumerate(self.coeffs):
            if ai == 0:
                continue
            for j, bj in enumerate(other.coeffs):
                if bj:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def pow(self, e: int) -> "Poly":
        result = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def eval(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = F.inv(other.lead())
        d = len(other.coeffs) - 1
        while len(rem) - 1 >= d and rem:
            if rem[-1] == 0:
                rem.pop()
                continue
            coef = F.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - d
            quo[shift] = coef
            for i, oc in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(coef, oc))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, quo), Poly(F, rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


class RationalFunc:
    """Reduced fraction num/den of polynomials; den monic and nonzero.

    Evaluation at the infinite point compares degrees: 0 when deg num <
    deg den, ratio of leading coefficients when equal, pole otherwise.
    Finite evaluation returns None at a pole.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        c = den.lead()
        if c != 1:
            inv = den.field.inv(c)
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFunc":
        return cls(p, Poly.const(p.field, 1))

    def eval(self, x: int) -> int | None:
        d = self.den.eval(x)
        if d == 0:
            return None
        return self.num.field.div(self.num.eval(x), d)

    def eval_infinity(self) -> int | None:
        dn, dd = self.num.degree, self.den.degree
        if dn == NEG_INF or dn < dd:
            return 0
        if dn == dd:
            return self.num.field.div(self.num.lead(), self.den.lead())
        return None

    def eval_point(self, x: int | None) -> int | None:
        return self.eval_infinity() if x is None else self.eval(x)

    def __add__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(self.num * other.num, self.den * other.den)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def to_dict(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}

    @classmethod
    def from_dict(cls, field: Field, d: dict) -> "RationalFunc":
        return cls(Poly(field, d["num"]), Poly(field, d["den"]))


@dataclass(frozen=True)
class BasisFn:
    """One basis function: a monomial in named coordinates, optionally
    multiplied by powers of rational functions of x."""

    mono: tuple[tuple[str, int], ...] = ()
    factors: tuple[tuple[RationalFunc, int], ...] = ()

    @classmethod
    def monomial(cls, **exps: int) -> "BasisFn":
        return cls(tuple(sorted((v, e) for v, e in exps.items() if e)), ())

    @classmethod
    def rational(cls, factors, x_exp: int = 0) -> "BasisFn":
        mono = (("x", x_exp),) if x_exp else ()
        return cls(mono, tuple(factors))

    def x_exponent(self) -> int:
        for v, e in self.mono:
            if v == "x":
                return e
        return 0

    def eval_finite(self, field: Field, point: Point) -> int:
        val = 1
        for var, e in self.mono:
            val = field.mul(val, field.pow(point.get(var), e))
        for rf, e in self.factors:
            fv = rf.eval(point.get("x"))
            if fv is None:
                raise InvariantError("basis function has a pole at an evaluation point")
            val = field.mul(val, field.pow(fv, e))
        return val

    def eval_at_infinity(self, field: Field, shift: int) -> int:
        """Value of (x^-shift * self) at the infinite point, via the combined
        rational normal form."""
        num = Poly.const(field, 1)
        den = Poly.const(field, 1)
        for rf, e in self.factors:
            num = num * rf.num.pow(e)
            den = den * rf.den.pow(e)
        num = num * Poly.x(field).pow(self.x_exponent())
        den = den * Poly.x(field).pow(shift)
        v = RationalFunc(num, den).eval_infinity()
        if v is None:
            raise InvariantError("pole at the infinite point after degree shift")
        return v

    def to_dict(self) -> dict:
        if not self.factors:
            return {"mono": dict(self.mono)}
        return {
            "mono": dict(self.mono),
            "factors": [{"exp": e, **rf.to_dict()} for rf, e in self.factors],
        }

    @classmethod
    def from_dict(cls, field: Field, d: dict) -> "BasisFn":
        mono = tuple(sorted((k, int(v)) for k, v in d.get("mono", {}).items()))
        factors = tuple(
            (RationalFunc.from_dict(field, f), int(f["exp"]))
            for f in d.get("factors", ())
        )
        return cls(mono, factors)


@dataclass
class EvalCode:
    """An evaluation code: field, ordered points, basis, generator matrix,
    one or two hierarchies, and the claimed parameters."""

    field: Field
    points: list[Point]
    basis: list[BasisFn]
    hierarchies: list[Hierarchy]
    generator: Mat
    claims: dict
    infinity_shift: int | None = None

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def k(self) -> int:
        return len(self.basis)

    def hierarchy(self, index: int = 0) -> Hierarchy:
        return self.hierarchies[index]


def build_generator(
    field: Field,
    points: list[Point],
    basis: list[BasisFn],
    infinity_shift: int | None = None,
) -> Mat:
    """k x n matrix of basis evaluations; raises on poles or rank deficiency.

    At an infinite point the basis function is first multiplied by
    x^-infinity_shift and then read off by degree comparison.
    """
    n = len(points)
    inf_positions = [i for i, p in enumerate(points) if p.at_infinity]
    if inf_positions and infinity_shift is None:
        raise ParameterError("point set contains the infinite point but no "
                             "evaluation rule was given")
    rows = []
    all_mono = all(not b.factors for b in basis) and not inf_positions
    if all_mono:
        var_arrays = {}
        for b in basis:
            for v, _ in b.mono:
                if v not in var_arrays:
                    var_arrays[v] = field.arr([p.get(v) for p in points])
        for b in basis:
            row = np.ones(n, dtype=np.int64)
            for v, e in b.mono:
                row = field.vmul(row, field.vpow(var_arrays[v], e))
            rows.append(row)
    else:
        for b in basis:
            row = np.empty(n, dtype=np.int64)
            for i, p in enumerate(points):
                if p.at_infinity:
                    row[i] = b.eval_at_infinity(field, infinity_shift)
                else:
                    row[i] = b.eval_finite(field, p)
            rows.append(row)
    g = Mat(field, np.stack(rows))
    r = rank(g)
    if r != len(basis):
        raise InvariantError(
            f"generator rank {r} != basis size {len(basis)}: construction is "
            "degenerate for these parameters"
        )
    return g


def local_model_matrix(code: EvalCode, h_index: int, mg: int, lg: int) -> tuple[Mat, list[int]]:
    """The univariate repair model of one local group.

    Returns (B, group): codewords restricted to the group are exactly
    coeff_vector @ B, where row c of B is the c-th power of the group's
    moving coordinate (and the infinite position, when present, stores the
    leading coefficient, so its column is a unit vector).
    """
    hier = code.hierarchies[h_index]
    group = hier.local_groups[mg][lg]
    r_local = hier.claimed["r2"]
    F = code.field
    cols = []
    for pos in group:
        p = code.points[pos]
        if p.at_infinity:
            cols.append([1 if c == r_local - 1 else 0 for c in range(r_local)])
        else:
            mv = F.pow(p.get("x"), hier.local_coord_exp)
            cols.append([F.pow(mv, c) for c in range(r_local)])
    b = Mat(F, np.array(cols, dtype=np.int64).T)
    return b, group


def check_local_models(code: EvalCode) -> None:
    """Build-time self-check: on every local group, every generator row lies
    in the row space of the local repair model."""
    from .linalg import row_space_basis

    for h_index, hier in enumerate(code.hierarchies):
        for mg in range(len(hier.middle_groups)):
            for lg in range(len(hier.local_groups[mg])):
                b, group = local_model_matrix(code, h_index, mg, lg)
                sub = code.generator.a[:, group]
                stacked = Mat(code.field, np.concatenate([b.a, sub], axis=0))
                if rank(stacked) != rank(b):
                    raise InvariantError(
                        f"restricted code leaves the local repair model "
                        f"(hierarchy {h_index}, group {mg}/{lg})"
                    )


def encode(code: EvalCode, message) -> np.ndarray:
    """Codeword = message @ G."""
    msg = np.asarray(message, dtype=np.int64)
    if msg.shape != (code.k,):
        raise ValueError(f"message length {msg.shape} != k={code.k}")
    return vec_mat(msg, code.generator)


def encode_batch(code: EvalCode, messages) -> np.ndarray:
    from .linalg import matmul

    m = Mat(code.field, np.asarray(messages, dtype=np.int64))
    return matmul(m, code.generator).a


# ---------------------------------------------------------------------------
# RS-like construction on the affine line
# ---------------------------------------------------------------------------

def construct_rs_hlrc(
    field: Field, r2: int, s: int, t: int, n: int, flat: bool = False
) -> EvalCode:
    """Two-level code from nested multiplicative cosets, with local groups of
    size r2+1 inside middle groups of size (s+1)(r2+1).

    With flat=True the two outer exponent ranges are merged into a single
    range of size s*t, which drops the middle level and yields the
    single-level comparison code with the same dimension.
    """
    if r2 < 1 or s < 1 or t < 1:
        raise ParameterError("r2, s, t must all be >= 1")
    if flat:
        return _construct_rs_flat(field, r2, s * t, n)
    nu = (s + 1) * (r2 + 1)
    r1 = s * r2
    d_claim = n - t * (r1 + r2 + 1 + s) + r2 + 3
    if d_claim < 1:
        raise ParameterError(f"claimed distance {d_claim} < 1: t too large")
    points, hier = rs_evaluation_set(field, nu, r2 + 1, n)
    hier.claimed = {"r1": r1, "rho1": r2 + 3, "r2": r2, "rho2": 2}
    hier.validate(n)
    basis = [
        BasisFn.monomial(x=nu * kf + (r2 + 1) * j + i)
        for kf in range(t)
        for j in range(s)
        for i in range(r2)
    ]
    g = build_generator(field, points, basis)
    claims = {
        "construction": "rs-hlrc",
        "params": {"q": field.q, "r2": r2, "s": s, "t": t, "n": n},
        "n": n,
        "k": t * s * r2,
        "d": d_claim,
        "levels": 2,
        "notes": {},
    }
    code = EvalCode(field, points, basis, [hier], g, claims)
    check_local_models(code)
    return code


def _construct_rs_flat(field: Field, r2: int, st: int, n: int) -> EvalCode:
    max_deg = (st - 1) * (r2 + 1) + r2 - 1
    d_claim = n - max_deg
    if d_claim < 1:
        raise ParameterError(f"claimed distance {d_claim} < 1")
    points, hier = rs_evaluation_set(field, r2 + 1, r2 + 1, n)
    hier.claimed = {"r1": r2, "rho1": 2, "r2": r2, "rho2": 2}
    hier.levels = 1
    basis = [
        BasisFn.monomial(x=(r2 + 1) * j + i) for j in range(st) for i in range(r2)
    ]
    g = build_generator(field, points, basis)
    claims = {
        "construction": "rs-hlrc",
        "params": {"q": field.q, "r2": r2, "st": st, "n": n, "flat": True},
        "n": n,
        "k": st * r2,
        "d": d_claim,
        "levels": 1,
        "notes": {},
    }
    code = EvalCode(field, points, basis, [hier], g, claims)
    check_local_models(code)
    return code


def construct_rs_hlrc_rho2(
    field: Field, r2: int, rho2: int, s: int, t: int, n: int
) -> EvalCode:
    """Variant with local groups enlarged to size r2+rho2-1, so each local
    group tolerates rho2-1 erasures.  rho2=2 reduces exactly to
    construct_rs_hlrc."""
    if rho2 < 2:
        raise ParameterError("rho2 must be >= 2")
    if r2 < 1 or s < 1 or t < 1:
        raise ParameterError("r2, s, t must all be >= 1")
    loc = r2 + rho2 - 1
    nu = (s + 1) * loc
    r1 = s * r2
    d_claim = n - t * r1 + 1 - (t - 1) * loc - (t * s - 1) * (rho2 - 1)
    if d_claim < 1:
        raise ParameterError(f"claimed distance {d_claim} < 1")
    points, hier = rs_evaluation_set(field, nu, loc, n)
    hier.claimed = {"r1": r1, "rho1": r2 + 2 * rho2 - 1, "r2": r2, "rho2": rho2}
    hier.validate(n)
    basis = [
        BasisFn.monomial(x=nu * kf + loc * j + i)
        for kf in range(t)
        for j in range(s)
        for i in range(r2)
    ]
    g = build_generator(field, points, basis)
    claims = {
        "construction": "rs-hlrc-rho2",
        "params": {"q": field.q, "r2": r2, "rho2": rho2, "s": s, "t": t, "n": n},
        "n": n,
        "k": t * s * r2,
        "d": d_claim,
        "levels": 2,
        "notes": {},
    }
    code = EvalCode(field, points, basis, [hier], g, claims)
    check_local_models(code)
    return code


# ---------------------------------------------------------------------------
# Length q+1 construction on the projective line
# ---------------------------------------------------------------------------

def _orbit_sum(field: Field, maps: list[MobiusMap], power: int) -> RationalFunc:
    """Sum over the subgroup of sigma(x)^power as a rational function."""
    total = RationalFunc.from_poly(Poly(field, []))
    for mm in maps:
        num = Poly(field, [mm.b, mm.a])
        den = Poly(field, [mm.d, mm.c])
        term = RationalFunc(num.pow(power), den.pow(power))
        total = total + term
    return total


def _clear_rational_poles(field: Field, rf: RationalFunc) -> RationalFunc:
    """Post-compose with w -> 1/(w - c) for the smallest c outside the value
    set on rational points, so the result has no pole on P^1(F_q).

    The raw orbit sum always has simple poles on the orbit of the infinite
    point (the term whose Mobius map sends the point to infinity blows up),
    and a target-side coordinate change removes them without touching the
    fibers."""
    values = set()
    for x in range(field.q):
        v = rf.eval(x)
        if v is not None:
            values.add(v)
    v_inf = rf.eval_infinity()
    if v_inf is not None:
        values.add(v_inf)
    c = next((a for a in range(field.q) if a not in values), None)
    if c is None:
        raise ParameterError("invariant takes every value on rational points; "
                             "cannot clear poles")
    shifted_den = rf.num - rf.den.scale(c)
    return RationalFunc(rf.den, shifted_den)


def _verify_invariant(
    field: Field,
    rf: RationalFunc,
    points: list[Point],
    groups: list[list[int]],
) -> list[int]:
    """Check the function is pole-free and constant on each group with
    pairwise distinct group values; returns the per-group values."""
    vals = []
    for g in groups:
        group_vals = set()
        for i in g:
            p = points[i]
            v = rf.eval_point(None if p.at_infinity else p.get("x"))
            if v is None:
                raise InvariantError("invariant has a pole on a rational point")
            group_vals.add(v)
        if len(group_vals) != 1:
            raise InvariantError("invariant not constant on a group")
        vals.append(group_vals.pop())
    return vals


def _projline_invariant(
    field: Field,
    maps: list[MobiusMap],
    points: list[Point],
    groups: list[list[int]],
) -> tuple[RationalFunc, str]:
    """Group invariant whose fibers are exactly the orbits: the normalized
    orbit sum, falling back to the normalized orbit power sum."""
    for tag, power in (("orbit_sum", 1), ("orbit_sum_sq", 2)):
        raw = _orbit_sum(field, maps, power)
        if raw.num.degree <= 0 and raw.den.degree <= 0:
            continue  # degenerate: constant
        rf = _clear_rational_poles(field, raw)
        try:
            vals = _verify_invariant(field, rf, points, groups)
        except InvariantError:
            continue
        if len(set(vals)) == len(vals):
            return rf, tag
    raise ParameterError(
        "no suitable group invariant: both the orbit sum and the orbit power "
        "sum are degenerate for these parameters"
    )


def construct_projline_qplus1(field: Field, r2: int, s: int, t: int) -> EvalCode:
    """Length q+1 code from torus orbits on the projective line.

    The basis is f^k y^j x^i with y (resp. f) a verified invariant of the
    order-(r2+1) (resp. order-nu) subgroup; at the infinite point every
    basis function is evaluated after multiplication by x^-(r2-1), which
    stores the leading coefficient of the local polynomial there.
    """
    if r2 < 1 or s < 1 or t < 1:
        raise ParameterError("r2, s, t must all be >= 1")
    q = field.q
    nu = (s + 1) * (r2 + 1)
    n = q + 1
    r1 = s * r2
    d_claim = n - t * (r1 + r2 + 1 + s) + r2 + 3
    if d_claim < 1:
        raise ParameterError(f"claimed distance {d_claim} < 1: t too large")
    points, hier, maps = torus_orbits(field, nu, r2 + 1)
    hier.claimed = {"r1": r1, "rho1": r2 + 3, "r2": r2, "rho2": 2}
    hier.validate(n)

    local_groups_flat = [l for locs in hier.local_groups for l in locs]
    y_rf, y_tag = _projline_invariant(
        field, maps["local_subgroup"], points, local_groups_flat
    )
    f_rf, f_tag = _projline_invariant(field, maps["group"], points, hier.middle_groups)
    # y must also separate local groups inside each middle group (weaker than
    # global separation, which _projline_invariant already established)
    basis = [
        BasisFn.rational((( f_rf, kf), (y_rf, j)), x_exp=i)
        for kf in range(t)
        for j in range(s)
        for i in range(r2)
    ]
    g = build_generator(field, points, basis, infinity_shift=r2 - 1)
    claims = {
        "construction": "projline-q1",
        "params": {"q": q, "r2": r2, "s": s, "t": t},
        "n": n,
        "k": t * s * r2,
        "d": d_claim,
        "levels": 2,
        "notes": {"y_invariant": y_tag, "f_invariant": f_tag},
    }
    code = EvalCode(field, points, basis, [hier], g, claims, infinity_shift=r2 - 1)
    check_local_models(code)
    return code


# ---------------------------------------------------------------------------
# Hermitian-curve construction via power maps
# ---------------------------------------------------------------------------

def hermitian_pole_basis(q0: int, e: int, ell: int) -> list[tuple[int, int]]:
    """Monomials u^alpha z^beta with pole order alpha*q0 + beta*e <= ell at
    the unique infinite place of the quotient curve z^q0 + z = u^e, where u
    has pole order q0 and z pole order e (Weierstrass semigroup <q0, e>)."""
    out = []
    for beta in range(q0):
        if beta * e > ell:
            break
        for alpha in range((ell - beta * e) // q0 + 1):
            out.append((alpha, beta))
    out.sort(key=lambda ab: (ab[0] * q0 + ab[1] * e, ab[1]))
    return out


def construct_hermitian_hlrc(field: Field, a: int, b: int, ell: int) -> EvalCode:
    """Code on the q0^3 - q0 affine points of z^q0 + z = x^(q0+1), x != 0,
    with locality from the power maps x -> x^(a+1) -> x^((a+1)(b+1))."""
    if ell < 0:
        raise ParameterError("ell must be >= 0")
    q0 = hermitian_q0(field)
    nu = (a + 1) * (b + 1)
    if (q0 + 1) % nu != 0:
        raise ParameterError(f"(a+1)(b+1)={nu} must divide q0+1={q0 + 1}")
    e = (q0 + 1) // nu
    points = hermitian_points(field)
    n = len(points)
    d_claim = n - ell * nu - q0 * (a * b + b - 2)
    if d_claim < 1:
        raise ParameterError(f"claimed distance {d_claim} < 1: ell too large")
    hier = hermitian_hierarchy(field, points, a, b)
    pole_basis = hermitian_pole_basis(q0, e, ell)
    t = len(pole_basis)
    basis = [
        BasisFn.monomial(x=nu * alpha + (a + 1) * j + i, z=beta)
        for (alpha, beta) in pole_basis
        for j in range(b)
        for i in range(a)
    ]
    g = build_generator(field, points, basis)
    claims = {
        "construction": "hermitian",
        "params": {"q": field.q, "q0": q0, "a": a, "b": b, "ell": ell},
        "n": n,
        "k": t * a * b,
        "d": d_claim,
        "levels": 2,
        "notes": {"t": t, "quotient_exponent": e},
    }
    code = EvalCode(field, points, basis, [hier], g, claims)
    check_local_models(code)
    return code


# ---------------------------------------------------------------------------
# Availability construction on F*
# ---------------------------------------------------------------------------

def construct_rs_availability(
    field: Field, s1: int, s2: int, t1: int, t2: int, c: int, m: int
) -> EvalCode:
    """Code of length q-1 with two orthogonal repair hierarchies.

    Basis monomials are x^E with E running over the five-index exponent grid;
    per-hierarchy middle-code dimensions and distance claims are derived from
    the exponent pattern modulo the group order (the structure-consistent
    values; the closed-form predictor values are kept in the notes)."""
    if m < 1:
        raise ParameterError("m must be >= 1")
    points, h1, h2 = availability_hierarchies(field, s1, s2, t1, t2, c)
    q = field.q
    n = q - 1
    big = s1 * s2 * t1 * t2
    d_claim = (c - m - 3) * big + 2 * (s1 * s2 * (t1 + t2) + t1 * t2 * (s1 + s2))
    if d_claim < 1:
        raise ParameterError(f"claimed distance {d_claim} < 1: m too large")
    exps = []
    for i in range(1, m + 1):
        for j1 in range(s1 - 1):
            for j2 in range(s2 - 1):
                for k1 in range(t1 - 1):
                    for k2 in range(t2 - 1):
                        e = (
                            big * (i - 1)
                            + s2 * j1
                            + s1 * j2
                            + s1 * s2 * t2 * k1
                            + s1 * s2 * t1 * k2
                        ) % (q - 1)
                        exps.append(e)
    if len(set(exps)) != len(exps):
        raise ParameterError(
            "basis exponent collision modulo q-1: the parameters do not give "
            "a full-rank generator"
        )
    for hier in (h1, h2):
        reduced = [e % hier.nu for e in exps]
        distinct = len(set(reduced))
        if distinct != hier.claimed["r1"]:
            raise InvariantError(
                f"restricted dimension {distinct} != structural claim "
                f"{hier.claimed['r1']}"
            )
        hier.claimed["rho1"] = max(hier.nu - max(reduced), 4)
        hier.validate(n)
    basis = [BasisFn.monomial(x=e) for e in exps]
    g = build_generator(field, points, basis)
    rho11_formula = max(s1 * s2 * (t2 - t1 + 2) - s1 * (s1 - 2) - (s2 - 2), 4)
    rho12_formula = max(s1 * s2 * (t1 - t2 + 2) - (s1 - 2) - s2 * (s2 - 2), 4)
    claims = {
        "construction": "rs-avail",
        "params": {
            "q": q, "s1": s1, "s2": s2, "t1": t1, "t2": t2, "c": c, "m": m,
        },
        "n": n,
        "k": m * (s1 - 1) * (s2 - 1) * (t1 - 1) * (t2 - 1),
        "d": d_claim,
        "levels": 2,
        "notes": {
            "rho11_formula": rho11_formula,
            "rho12_formula": rho12_formula,
        },
    }
    code = EvalCode(field, points, basis, [h1, h2], g, claims)
    check_local_models(code)
    return code
