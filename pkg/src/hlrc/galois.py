"""Exact arithmetic in GF(p^m).

Elements are represented as integers in [0, q) whose base-p digits, least
significant first, are the coefficients of the polynomial representative.
The modulus is always the lexicographically smallest monic irreducible of
its degree (smallest when read as an integer with the top coefficient most
significant), so two runs -- or two machines -- always agree on the
representation.

For q <= 2^16 a log/antilog table over a primitive element is built once
and drives multiplication, inversion and powering; larger fields fall back
to polynomial arithmetic.  Addition is digit-wise mod p (XOR when p = 2).
All tables are immutable after construction and every operation is pure.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ParameterError

_TABLE_LIMIT = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _factorize(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomial helpers over GF(p), coefficients low-degree first ---

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm and a:
        a = _ptrim(a)
        if len(a) - 1 < dm:
            break
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = _ptrim(a)
    return a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_mod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _is_irreducible(coeffs, p):
    """Monic degree-m poly is irreducible iff gcd(x^{p^i} - x, f) is trivial
    for all 1 <= i <= m/2 (any factor of degree d <= m/2 would show up at
    i = d)."""
    m = len(coeffs) - 1
    if m == 1:
        return True
    if coeffs[0] == 0:
        return False
    t = [0, 1]
    for _ in range(m // 2):
        t = _ppow_mod(t, p, coeffs, p)
        diff = list(t)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(coeffs, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over GF(p),
    scanning candidates in increasing integer encoding of the low part."""
    if m == 1:
        return (0, 1)
    for low in range(p ** m):
        coeffs = []
        v = low
        for _ in range(m):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if coeffs[0] != 0 and _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """GF(p^m) with canonical integer element representation.

    Instances are immutable and safely shareable; obtain them through
    :func:`field_create`, which caches per (p, m).
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        self._p_powers = [p ** i for i in range(m)]
        self._build_tables()
        self._primitive: int | None = None

    # -- representation helpers --

    def _digits(self, rep: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(rep % self.p)
            rep //= self.p
        return out

    def _from_digits(self, digits) -> int:
        rep = 0
        for d, pw in zip(digits, self._p_powers):
            rep += (d % self.p) * pw
        return rep

    def _mul_raw(self, a: int, b: int) -> int:
        """Polynomial multiply mod modulus, no tables."""
        if self.m == 1:
            return (a * b) % self.p
        prod = _pmul(self._digits(a), self._digits(b), self.p)
        prod = _pmod(prod, list(self.modulus), self.p)
        return self._from_digits(prod + [0] * (self.m - len(prod)))

    def _build_tables(self):
        self._exp = None
        self._log = None
        self._exp_np = None
        self._log_np = None
        if self.q > _TABLE_LIMIT:
            self._dig_np = None
            return
        # dig_np[d][rep] = d-th base-p digit, for vectorized addition
        reps = np.arange(self.q, dtype=np.int64)
        self._dig_np = [(reps // pw) % self.p for pw in self._p_powers]
        # log/antilog over the smallest primitive element
        g = self._find_primitive()
        self._primitive = g
        exp = [0] * (2 * (self.q - 1) if self.q > 1 else 1)
        log = [0] * self.q
        v = 1
        for i in range(self.q - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, g)
        for i in range(self.q - 1, len(exp)):
            exp[i] = exp[i - (self.q - 1)]
        self._exp = exp
        self._log = log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        primes = _factorize(self.q - 1)
        for g in range(2, self.q):
            if all(self._pow_raw(g, (self.q - 1) // ell) != 1 for ell in primes):
                return g
        raise RuntimeError("no primitive element found")

    def _pow_raw(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    # -- scalar arithmetic on integer reps --

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element rep of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._from_digits(
            [(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))]
        )

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return self._from_digits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        if self.m == 1:
            return (a * b) % self.p
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._exp is not None:
            return self._exp[(self.q - 1) - self._log[a]]
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._pow_raw(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1 if self.q > 2 else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)] if self.q > 2 else a
        return self._pow_raw(a, e)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def e(self, rep: int) -> "Fe":
        return Fe(self, self.check(rep))

    # -- multiplicative structure --

    def primitive_element(self) -> int:
        """Smallest rep of multiplicative order q-1."""
        if self._primitive is None:
            self._primitive = 1 if self.q == 2 else self._find_primitive()
        return self._primitive

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        order = self.q - 1
        for ell in _factorize(self.q - 1):
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    def roots_of_unity(self, n: int) -> list[int]:
        """All n solutions of z^n = 1, sorted by rep.  Requires n | q-1."""
        if n < 1 or (self.q - 1) % n != 0:
            raise ParameterError(f"n={n} does not divide q-1={self.q - 1}")
        h = self.pow(self.primitive_element(), (self.q - 1) // n)
        out = set()
        v = 1
        for _ in range(n):
            out.add(v)
            v = self.mul(v, h)
        return sorted(out)

    def subgroup_cosets(self, h: int) -> list[list[int]]:
        """Cosets of the order-h subgroup partitioning F*.

        Coset 0 is the subgroup itself; cosets are ordered by minimal
        representative and elements within a coset by rep.
        """
        if h < 1 or (self.q - 1) % h != 0:
            raise ParameterError(f"h={h} does not divide q-1={self.q - 1}")
        subgroup = self.roots_of_unity(h)
        seen = set()
        cosets = []
        for a in range(1, self.q):
            if a in seen:
                continue
            coset = sorted(self.mul(a, s) for s in subgroup)
            seen.update(coset)
            cosets.append(coset)
        cosets.sort(key=lambda c: c[0])
        return cosets

    # -- vectorized arithmetic on numpy int64 arrays of reps --

    def arr(self, values) -> np.ndarray:
        return np.asarray(values, dtype=np.int64)

    def vadd(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for d, pw in zip(self._dig_np, self._p_powers):
            out += ((d[a] + d[b]) % self.p) * pw
        return out

    def vneg(self, a):
        if self.p == 2:
            return np.array(a, copy=True)
        if self.m == 1:
            return (-a) % self.p
        out = np.zeros(np.shape(a), dtype=np.int64)
        for d, pw in zip(self._dig_np, self._p_powers):
            out += ((-d[a]) % self.p) * pw
        return out

    def vsub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if self._exp_np is None:
            f = np.frompyfunc(self.mul, 2, 1)
            return f(a, b).astype(np.int64)
        a = np.asarray(a)
        b = np.asarray(b)
        mask = (a != 0) & (b != 0)
        idx = self._log_np[np.where(a == 0, 1, a)] + self._log_np[np.where(b == 0, 1, b)]
        return np.where(mask, self._exp_np[idx], 0)

    def vscale(self, c: int, a):
        if c == 0:
            return np.zeros(np.shape(a), dtype=np.int64)
        if c == 1:
            return np.array(a, copy=True)
        return self.vmul(np.int64(c), a)

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self.m == 1:
            # pow() per entry keeps intermediate values bounded
            return np.array([pow(int(x), e, self.p) for x in a.ravel()],
                            dtype=np.int64).reshape(a.shape)
        if self._exp_np is None:
            f = np.frompyfunc(lambda x: self.pow(int(x), e), 1, 1)
            return f(a).astype(np.int64)
        mask = a != 0
        idx = (self._log_np[np.where(mask, a, 1)] * (e % (self.q - 1))) % (self.q - 1)
        return np.where(mask, self._exp_np[idx], 0)

    # -- serialization --

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> Field:
    """Build GF(p^m) deterministically (same (p, m) -> same modulus)."""
    if not _is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if m < 1:
        raise ParameterError(f"extension degree m={m} must be >= 1")
    return Field(p, m, _smallest_irreducible(p, m))


def field_from_dict(d: dict) -> Field:
    f = field_create(int(d["p"]), int(d["m"]))
    if list(f.modulus) != [int(c) for c in d["modulus"]]:
        raise ValueError("field modulus mismatch: descriptor was written by an "
                         "incompatible implementation")
    return f


class Fe:
    """A field element: a thin wrapper over (field, rep) with operators.

    Mixing elements of different fields raises ValueError.
    """

    __slots__ = ("field", "rep")

    def __init__(self, field: Field, rep: int):
        self.field = field
        self.rep = rep

    def _coerce(self, other) -> int:
        if isinstance(other, Fe):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("operands from different fields")
            return other.rep
        if isinstance(other, int):
            return self.field.check(other % self.field.p if self.field.m == 1 else other)
        raise TypeError(f"cannot combine Fe with {type(other)!r}")

    def __add__(self, other):
        return Fe(self.field, self.field.add(self.rep, self._coerce(other)))

    def __sub__(self, other):
        return Fe(self.field, self.field.sub(self.rep, self._coerce(other)))

    def __mul__(self, other):
        return Fe(self.field, self.field.mul(self.rep, self._coerce(other)))

    def __truediv__(self, other):
        return Fe(self.field, self.field.div(self.rep, self._coerce(other)))

    def __neg__(self):
        return Fe(self.field, self.field.neg(self.rep))

    def __pow__(self, e: int):
        return Fe(self.field, self.field.pow(self.rep, e))

    def inv(self):
        return Fe(self.field, self.field.inv(self.rep))

    def __eq__(self, other):
        if isinstance(other, Fe):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, int):
            return self.rep == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.rep))

    def __repr__(self):
        return f"Fe({self.rep})"


class QuadExt:
    """Degree-2 extension of a base field, elements as pairs (a, b) = a + b*theta.

    For odd p, theta^2 = s with s the smallest non-square; in characteristic 2,
    theta^2 + theta = s with s the smallest element of trace 1.  The embedding
    a -> (a, 0) is a ring homomorphism and norm(z) = z^(q+1) lands in the base.
    """

    def __init__(self, base: Field):
        self.base = base
        q = base.q
        if base.p != 2:
            s = next(
                a for a in range(2, q)
                if base.pow(a, (q - 1) // 2) != 1
            )
        else:
            def trace(a):
                t, x = 0, a
                for _ in range(base.m):
                    t = base.add(t, x)
                    x = base.mul(x, x)
                return t
            s = next(a for a in range(1, q) if trace(a) == 1)
        self.s = s
        self.q = q
        self.order = q * q

    def embed(self, a: int) -> tuple[int, int]:
        return (a, 0)

    def zero(self):
        return (0, 0)

    def one(self):
        return (1, 0)

    def add(self, x, y):
        F = self.base
        return (F.add(x[0], y[0]), F.add(x[1], y[1]))

    def sub(self, x, y):
        F = self.base
        return (F.sub(x[0], y[0]), F.sub(x[1], y[1]))

    def mul(self, x, y):
        F = self.base
        a, b = x
        c, d = y
        ac = F.mul(a, c)
        bd = F.mul(b, d)
        ad_bc = F.add(F.mul(a, d), F.mul(b, c))
        if F.p != 2:
            # (a+bt)(c+dt) = ac + s*bd + (ad+bc) t
            return (F.add(ac, F.mul(self.s, bd)), ad_bc)
        # t^2 = t + s
        return (F.add(ac, F.mul(self.s, bd)), F.add(ad_bc, bd))

    def pow(self, x, e: int):
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, x):
        """x -> x^q."""
        a, b = x
        F = self.base
        if F.p != 2:
            return (a, F.neg(b))
        return (F.add(a, b), b)

    def norm(self, x) -> int:
        """z * z^q, always in the base field."""
        prod = self.mul(x, self.frobenius(x))
        if prod[1] != 0:
            raise AssertionError("norm left the base field")
        return prod[0]

    def inv(self, x):
        if x == (0, 0):
            raise ZeroDivisionError("inverse of zero extension element")
        n_inv = self.base.inv(self.norm(x))
        conj = self.frobenius(x)
        return (self.base.mul(conj[0], n_inv), self.base.mul(conj[1], n_inv))

    def generator(self) -> tuple[int, int]:
        """First element (lexicographic in (a, b), b > 0) of order q^2 - 1."""
        primes = _factorize(self.order - 1)
        for b in range(1, self.q):
            for a in range(self.q):
                cand = (a, b)
                if all(self.pow(cand, (self.order - 1) // ell) != self.one()
                       for ell in primes):
                    return cand
        raise RuntimeError("no generator found in quadratic extension")


def quad_ext(base: Field) -> QuadExt:
    return QuadExt(base)
