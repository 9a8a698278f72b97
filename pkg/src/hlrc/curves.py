"""Evaluation point sets and their nested repair-group partitions.

Four families are built here: multiplicative cosets on the affine line,
orbits of the cyclic order-(q+1) torus on the projective line, affine
points of the curve z^q0 + z = x^(q0+1) with power-map fibers, and the two
mutually orthogonal coset hierarchies used for parallel repair.

Point order is canonical everywhere (documented per constructor), so
serialized codes and test vectors are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import ParameterError
from .galois import Field, quad_ext


@dataclass(frozen=True)
class Point:
    """A finite point with named coordinates, or the distinguished infinite
    point (empty coords)."""

    coords: tuple[tuple[str, int], ...] = ()
    at_infinity: bool = False

    @classmethod
    def finite(cls, **coords: int) -> "Point":
        return cls(tuple(sorted(coords.items())), False)

    @classmethod
    def infinity(cls) -> "Point":
        return cls((), True)

    def get(self, var: str) -> int:
        for name, rep in self.coords:
            if name == var:
                return rep
        raise KeyError(var)

    def to_dict(self) -> dict:
        if self.at_infinity:
            return {"inf": True}
        return dict(self.coords)

    @classmethod
    def from_dict(cls, d: dict) -> "Point":
        if d.get("inf"):
            return cls.infinity()
        return cls(tuple(sorted((k, int(v)) for k, v in d.items())), False)


@dataclass
class Hierarchy:
    """Nested partition of code coordinates: middle groups, each split into
    local groups, with the claimed locality parameters attached once the
    construction knows them."""

    middle_groups: list[list[int]]
    local_groups: list[list[list[int]]]
    nu: int
    claimed: dict | None = None  # {"r1", "rho1", "r2", "rho2"}
    local_coord_exp: int = 1
    levels: int = 2
    _pos_index: dict = dc_field(default=None, repr=False, compare=False)

    def validate(self, n: int) -> None:
        seen = sorted(i for g in self.middle_groups for i in g)
        if seen != list(range(n)):
            raise ParameterError("middle groups do not partition the coordinates")
        sizes = {len(g) for g in self.middle_groups}
        if sizes != {self.nu}:
            raise ParameterError(f"middle group sizes {sizes} != nu={self.nu}")
        local_sizes = set()
        for g, locs in zip(self.middle_groups, self.local_groups):
            flat = sorted(i for l in locs for i in l)
            if flat != sorted(g):
                raise ParameterError("local groups do not cover their middle group")
            local_sizes.update(len(l) for l in locs)
        if len(local_sizes) != 1:
            raise ParameterError(f"non-uniform local group sizes {local_sizes}")
        if self.levels == 2 and self.claimed and self.claimed.get("rho1") is not None:
            c = self.claimed
            if not (c["rho2"] < c["rho1"] and c["r2"] <= c["r1"]):
                raise ParameterError("claimed locality violates rho2 < rho1, r2 <= r1")

    @property
    def local_size(self) -> int:
        return len(self.local_groups[0][0])

    def position_of(self, pos: int) -> tuple[int, int]:
        """(middle group index, local group index) containing pos."""
        if self._pos_index is None:
            idx = {}
            for mg, locs in enumerate(self.local_groups):
                for lg, group in enumerate(locs):
                    for i in group:
                        idx[i] = (mg, lg)
            self._pos_index = idx
        return self._pos_index[pos]

    def to_dict(self) -> dict:
        return {
            "middle": self.middle_groups,
            "local": self.local_groups,
            "nu": self.nu,
            "claimed": self.claimed,
            "local_coord_exp": self.local_coord_exp,
            "levels": self.levels,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Hierarchy":
        return cls(
            middle_groups=[[int(i) for i in g] for g in d["middle"]],
            local_groups=[[[int(i) for i in l] for l in locs] for locs in d["local"]],
            nu=int(d["nu"]),
            claimed=d.get("claimed"),
            local_coord_exp=int(d.get("local_coord_exp", 1)),
            levels=int(d.get("levels", 2)),
        )


@dataclass(frozen=True)
class MobiusMap:
    """x -> (a x + b) / (c x + d) on the projective line over a field."""

    field: Field
    a: int
    b: int
    c: int
    d: int

    def apply(self, x: int | None) -> int | None:
        """Apply to a finite coordinate rep, or None for the infinite point."""
        F = self.field
        if x is None:
            if self.c == 0:
                return None
            return F.div(self.a, self.c)
        den = F.add(F.mul(self.c, x), self.d)
        if den == 0:
            return None
        return F.div(F.add(F.mul(self.a, x), self.b), den)

    def apply_point(self, p: Point) -> Point:
        img = self.apply(None if p.at_infinity else p.get("x"))
        return Point.infinity() if img is None else Point.finite(x=img)


def _point_key(p: Point) -> int:
    return -1 if p.at_infinity else p.get("x")


def rs_evaluation_set(field: Field, nu: int, local_size: int, n: int):
    """Multiplicative-coset evaluation set on the affine line.

    Points are the first n/nu cosets (by minimal representative) of the
    order-nu subgroup of F*; each is subdivided into cosets of the
    order-local_size subgroup.  Within the array, local groups are
    contiguous, cosets ordered by minimal representative and elements by rep.
    """
    q = field.q
    if local_size < 1 or nu % local_size != 0:
        raise ParameterError(f"local size {local_size} must divide nu={nu}")
    if n % nu != 0:
        raise ParameterError(f"nu={nu} must divide n={n}")
    if (q - 1) % n != 0:
        raise ParameterError(f"n={n} must divide q-1={q - 1}")
    middle_cosets = field.subgroup_cosets(nu)[: n // nu]
    points: list[Point] = []
    middle_groups, local_groups = [], []
    for coset in middle_cosets:
        buckets: dict[int, list[int]] = {}
        for a in coset:
            buckets.setdefault(field.pow(a, local_size), []).append(a)
        locals_sorted = sorted((sorted(v) for v in buckets.values()), key=lambda l: l[0])
        mg, locs = [], []
        for loc in locals_sorted:
            idxs = []
            for a in loc:
                idxs.append(len(points))
                points.append(Point.finite(x=a))
            locs.append(idxs)
            mg.extend(idxs)
        middle_groups.append(mg)
        local_groups.append(locs)
    hier = Hierarchy(middle_groups, local_groups, nu=nu)
    hier.validate(len(points))
    return points, hier


def torus_orbits(field: Field, nu: int, local_size: int):
    """Orbit partition of P^1(F_q) under the cyclic order-(q+1) torus.

    P^1(F_q) is identified with nonzero classes of the quadratic extension
    modulo F_q*; the torus acts simply transitively, so orbits of the
    order-nu subgroup give (q+1)/nu middle groups, subdivided by the
    order-local_size subgroup.  The orbit of the infinite point is middle
    group 0 with the infinite point first.  Returns (points, hierarchy,
    maps) where maps["group"] lists the full order-nu subgroup as Mobius
    maps and maps["local_subgroup"] its order-local_size subgroup.
    """
    q = field.q
    if (q + 1) % nu != 0:
        raise ParameterError(f"nu={nu} must divide q+1={q + 1}")
    if local_size < 1 or nu % local_size != 0:
        raise ParameterError(f"local size {local_size} must divide nu={nu}")
    ext = quad_ext(field)
    w = ext.generator()

    def normalize(cl) -> Point:
        a, b = cl
        if b == 0:
            return Point.infinity()
        return Point.finite(x=field.div(a, b))

    def class_of(p: Point):
        if p.at_infinity:
            return (1, 0)
        return (p.get("x"), 1)

    def orbit(start: Point, gen) -> list[Point]:
        out = [start]
        cur = class_of(start)
        while True:
            cur = ext.mul(cur, gen)
            nxt = normalize(cur)
            if nxt == start:
                return out
            out.append(nxt)

    gen_mid = ext.pow(w, (q + 1) // nu)
    gen_loc = ext.pow(w, (q + 1) // local_size)

    all_points = [Point.infinity()] + [Point.finite(x=x) for x in range(q)]
    assigned: set[Point] = set()
    ordered_orbits: list[list[Point]] = []
    for p in all_points:
        if p in assigned:
            continue
        orb = orbit(p, gen_mid)
        if len(orb) != nu:
            raise ParameterError(f"torus orbit of size {len(orb)} != nu={nu}")
        assigned.update(orb)
        ordered_orbits.append(orb)

    points: list[Point] = []
    middle_groups, local_groups = [], []
    for orb in ordered_orbits:
        done: set[Point] = set()
        local_orbits = []
        for p in sorted(orb, key=_point_key):
            if p in done:
                continue
            lorb = orbit(p, gen_loc)
            done.update(lorb)
            local_orbits.append(sorted(lorb, key=_point_key))
        local_orbits.sort(key=lambda l: _point_key(l[0]))
        mg, locs = [], []
        for lorb in local_orbits:
            idxs = []
            for p in lorb:
                idxs.append(len(points))
                points.append(p)
            locs.append(idxs)
            mg.extend(idxs)
        middle_groups.append(mg)
        local_groups.append(locs)

    def as_map(cl) -> MobiusMap:
        c, d = cl
        sd = field.mul(ext.s, d)
        if field.p != 2:
            return MobiusMap(field, c, sd, d, c)
        return MobiusMap(field, c, sd, d, field.add(c, d))

    group_maps, cur = [], ext.one()
    for _ in range(nu):
        group_maps.append(as_map(cur))
        cur = ext.mul(cur, gen_mid)
    local_maps, cur = [], ext.one()
    for _ in range(local_size):
        local_maps.append(as_map(cur))
        cur = ext.mul(cur, gen_loc)

    hier = Hierarchy(middle_groups, local_groups, nu=nu)
    hier.validate(len(points))
    return points, hier, {"group": group_maps, "local_subgroup": local_maps}


def hermitian_q0(field: Field) -> int:
    """The square root q0 of q; rejects fields of non-square order."""
    if field.m % 2 != 0:
        raise ParameterError(f"q={field.q} is not a square")
    return field.p ** (field.m // 2)


def hermitian_points(field: Field) -> list[Point]:
    """All affine (x, z) with z^q0 + z = x^(q0+1) and x != 0.

    Exactly q0^3 - q0 points, ordered by (x rep, z rep).
    """
    q0 = hermitian_q0(field)
    by_trace: dict[int, list[int]] = {}
    for z in range(field.q):
        t = field.add(field.pow(z, q0), z)
        by_trace.setdefault(t, []).append(z)
    points = []
    for x in range(1, field.q):
        c = field.pow(x, q0 + 1)
        for z in sorted(by_trace.get(c, ())):
            points.append(Point.finite(x=x, z=z))
    if len(points) != q0 ** 3 - q0:
        raise ParameterError(
            f"expected {q0 ** 3 - q0} curve points, found {len(points)}"
        )
    return points


def hermitian_hierarchy(field: Field, points: list[Point], a: int, b: int) -> Hierarchy:
    """Power-map fibers on the curve points.

    Middle groups collect points sharing (x^((a+1)(b+1)), z); local groups
    share (x^(a+1), z).  Requires (a+1)(b+1) | q0+1 so the fibers are full
    root-of-unity orbits.
    """
    q0 = hermitian_q0(field)
    nu = (a + 1) * (b + 1)
    if a < 1 or b < 1:
        raise ParameterError("a and b must be >= 1")
    if (q0 + 1) % nu != 0:
        raise ParameterError(f"(a+1)(b+1)={nu} must divide q0+1={q0 + 1}")
    mid_buckets: dict[tuple[int, int], list[int]] = {}
    for i, p in enumerate(points):
        key = (field.pow(p.get("x"), nu), p.get("z"))
        mid_buckets.setdefault(key, []).append(i)
    middle_sorted = sorted(mid_buckets.values(), key=lambda g: g[0])
    middle_groups, local_groups = [], []
    for mg in middle_sorted:
        loc_buckets: dict[tuple[int, int], list[int]] = {}
        for i in mg:
            p = points[i]
            key = (field.pow(p.get("x"), a + 1), p.get("z"))
            loc_buckets.setdefault(key, []).append(i)
        locs = sorted((sorted(v) for v in loc_buckets.values()), key=lambda l: l[0])
        middle_groups.append(sorted(mg))
        local_groups.append(locs)
    hier = Hierarchy(
        middle_groups,
        local_groups,
        nu=nu,
        claimed={"r1": a * b, "rho1": a + 3, "r2": a, "rho2": 2},
    )
    hier.validate(len(points))
    return hier


def availability_hierarchies(field: Field, s1: int, s2: int, t1: int, t2: int, c: int):
    """Two orthogonal coset hierarchies on F* for parallel repair.

    Hierarchy 1: middle groups are fibers of x -> x^(s1 s2 t2) (cosets of the
    order-(s1 s2 t2) subgroup), locals are cosets of the order-s2 subgroup
    and move along x^s1.  Hierarchy 2 swaps the roles: middle order s1 s2 t1,
    locals of order s1 moving along x^s2.  Local groups from the two
    hierarchies meet in at most one point since gcd(s1, s2) = 1.
    """
    q = field.q
    if c * s1 * s2 * t1 * t2 != q - 1:
        raise ParameterError(
            f"q-1={q - 1} != c*s1*s2*t1*t2={c * s1 * s2 * t1 * t2}"
        )
    from math import gcd

    if gcd(s1, s2) != 1 or gcd(t1, t2) != 1:
        raise ParameterError("s1,s2 and t1,t2 must be coprime pairs")
    points = [Point.finite(x=x) for x in range(1, q)]

    def build(mid_order: int, loc_order: int, loc_exp: int, r_mid: int, r_loc: int):
        mid_cosets = field.subgroup_cosets(mid_order)
        middle_groups, local_groups = [], []
        for coset in mid_cosets:
            buckets: dict[int, list[int]] = {}
            for x in coset:
                buckets.setdefault(field.pow(x, loc_order), []).append(x - 1)
            locs = sorted((sorted(v) for v in buckets.values()), key=lambda l: l[0])
            middle_groups.append(sorted(i for l in locs for i in l))
            local_groups.append(locs)
        order = sorted(range(len(middle_groups)), key=lambda i: middle_groups[i][0])
        hier = Hierarchy(
            [middle_groups[i] for i in order],
            [local_groups[i] for i in order],
            nu=mid_order,
            claimed={"r1": r_mid, "rho1": None, "r2": r_loc, "rho2": 2},
            local_coord_exp=loc_exp,
        )
        hier.validate(q - 1)
        return hier

    h1 = build(s1 * s2 * t2, s2, s1, (s1 - 1) * (s2 - 1) * (t2 - 1), s2 - 1)
    h2 = build(s1 * s2 * t1, s1, s2, (s1 - 1) * (s2 - 1) * (t1 - 1), s1 - 1)
    return points, h1, h2
