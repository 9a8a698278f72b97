"""Erasure repair at all hierarchy levels.

Local repair interpolates the univariate model of one local group (degree
< r2 in the group's moving coordinate, with the infinite position storing
the leading coefficient); middle repair solves for the restricted row
space of one middle group; global repair solves on the full generator.
Every routine either returns symbols that re-encode consistently with the
unerased data it accessed, or an explicit failure -- never a wrong value.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .construct import EvalCode, local_model_matrix
from .linalg import Mat, rank, row_space_basis, rref, solve_left


@dataclass
class ErasedWord:
    """A codeword with some symbols erased (None)."""

    code: EvalCode
    symbols: list[int | None]

    def __post_init__(self):
        if len(self.symbols) != self.code.n:
            raise ValueError("word length does not match the code")

    @classmethod
    def from_codeword(cls, code: EvalCode, codeword, positions) -> "ErasedWord":
        symbols: list[int | None] = [int(x) for x in codeword]
        for p in positions:
            symbols[p] = None
        return cls(code, symbols)

    def erased_positions(self) -> list[int]:
        return [i for i, s in enumerate(self.symbols) if s is None]

    def is_complete(self) -> bool:
        return all(s is not None for s in self.symbols)


@dataclass
class LocalFit:
    """Result of one local interpolation."""

    value: int
    access: list[int]
    coeffs: list[int]  # interpolant in the moving coordinate, low degree first


@dataclass
class RepairReport:
    """Per-position record of how each erasure was recovered."""

    recovered: dict[int, int] = dc_field(default_factory=dict)
    level: dict[int, str] = dc_field(default_factory=dict)
    access: dict[int, list[int]] = dc_field(default_factory=dict)
    success: bool = True

    def check_invariants(self, code: EvalCode, h_index: int = 0) -> None:
        hier = code.hierarchies[h_index]
        for pos, acc in self.access.items():
            assert pos not in acc, "access set contains the repaired position"
            lvl = self.level[pos]
            mg, lg = hier.position_of(pos)
            if lvl == "local":
                assert set(acc) <= set(hier.local_groups[mg][lg])
            elif lvl == "middle":
                assert set(acc) <= set(hier.middle_groups[mg])

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "repaired": {
                str(p): {
                    "value": self.recovered[p],
                    "level": self.level[p],
                    "access": self.access[p],
                }
                for p in sorted(self.recovered)
            },
        }


def local_repair(
    code: EvalCode, word: ErasedWord, pos: int, h_index: int = 0
) -> LocalFit | None:
    """Repair one erased symbol from its local group alone.

    Fails (returns None) when more than rho2-1 in-group symbols are erased
    or the unerased values are inconsistent with the local model.
    """
    hier = code.hierarchies[h_index]
    if word.symbols[pos] is not None:
        raise ValueError(f"position {pos} is not erased")
    mg, lg = hier.position_of(pos)
    group = hier.local_groups[mg][lg]
    erased = [i for i in group if word.symbols[i] is None]
    rho2 = hier.claimed["rho2"] if hier.claimed else 2
    if len(erased) > rho2 - 1:
        return None
    b, _ = local_model_matrix(code, h_index, mg, lg)
    keep = [j for j, i in enumerate(group) if word.symbols[i] is not None]
    access = [i for i in group if word.symbols[i] is not None]
    vals = [word.symbols[i] for i in access]
    coeffs = solve_left(b.take_cols(keep), vals)
    if coeffs is None or rank(b.take_cols(keep)) != b.rows:
        return None
    pos_col = group.index(pos)
    value = _dot(code.field, coeffs, b.a[:, pos_col])
    return LocalFit(value=value, access=access, coeffs=[int(c) for c in coeffs])


def _dot(field, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(int(a), int(b)))
    return acc


def middle_repair(
    code: EvalCode, word: ErasedWord, group_index: int, h_index: int = 0
) -> dict[int, int] | None:
    """Repair every erasure in one middle group from in-group symbols.

    Solves for the coefficients of the restricted function space; fails when
    the unerased in-group columns do not span the restricted row space (the
    erasure pattern is beyond the guarantee -- callers fall through to
    global repair).
    """
    hier = code.hierarchies[h_index]
    group = hier.middle_groups[group_index]
    erased = [i for i in group if word.symbols[i] is None]
    if not erased:
        return {}
    restricted = row_space_basis(code.generator.take_cols(group))
    keep = [j for j, i in enumerate(group) if word.symbols[i] is not None]
    vals = [word.symbols[group[j]] for j in keep]
    sub = restricted.take_cols(keep)
    if rank(sub) != restricted.rows:
        return None
    coeffs = solve_left(sub, vals)
    if coeffs is None:
        return None
    out = {}
    for i in erased:
        col = restricted.a[:, group.index(i)]
        out[i] = _dot(code.field, coeffs, col)
    return out


def middle_repair_fiberwise(
    code: EvalCode, word: ErasedWord, group_index: int, h_index: int = 0
) -> dict[int, int] | None:
    """Alternative middle repair: interpolate each local fiber separately,
    then interpolate coefficient-by-coefficient across fibers.

    Needs at least r1/r2 fibers with at most rho2-1 erasures each; used to
    cross-check the linear-solve route on patterns it covers.
    """
    hier = code.hierarchies[h_index]
    claimed = hier.claimed or {}
    r2 = claimed.get("r2")
    r1 = claimed.get("r1")
    if r2 is None or r1 is None or r1 % r2 != 0:
        return None
    s = r1 // r2
    group = hier.middle_groups[group_index]
    erased = [i for i in group if word.symbols[i] is None]
    if not erased:
        return {}
    good_fibers = {}
    for lg, fiber in enumerate(hier.local_groups[group_index]):
        missing = [i for i in fiber if word.symbols[i] is None]
        if len(missing) > (claimed.get("rho2", 2) - 1):
            continue
        probe = missing[0] if missing else None
        if probe is None:
            # fully intact fiber: fit coefficients directly
            b, _ = local_model_matrix(code, h_index, group_index, lg)
            vals = [word.symbols[i] for i in fiber]
            coeffs = solve_left(b, vals)
            if coeffs is None:
                return None
            good_fibers[lg] = [int(c) for c in coeffs]
        else:
            fit = local_repair(code, word, probe, h_index)
            if fit is None:
                continue
            good_fibers[lg] = fit.coeffs
    if len(good_fibers) < s:
        return None
    # each local coefficient, as a function of the fiber, lives in an
    # s-dimensional space: interpolate it from s fibers through the middle
    # solve on a synthetic word restricted to those fibers
    synth = ErasedWord(code, list(word.symbols))
    for lg, coeffs in good_fibers.items():
        b, fiber = local_model_matrix(code, h_index, group_index, lg)
        for j, i in enumerate(fiber):
            synth.symbols[i] = _dot(code.field, coeffs, b.a[:, j])
    rest = middle_repair(code, synth, group_index, h_index)
    if rest is None:
        return None
    out = {}
    for i in erased:
        out[i] = rest[i] if i in rest else synth.symbols[i]
    return out


def global_erasure_decode(
    code: EvalCode, word: ErasedWord
) -> tuple[np.ndarray, list[int]] | None:
    """Full-word decode: succeeds iff the unerased generator columns have
    rank k; returns (codeword, access) with access an information set of k
    unerased positions, or None."""
    unerased = [i for i, s in enumerate(word.symbols) if s is not None]
    sub = code.generator.take_cols(unerased)
    _, pivots = rref(sub)
    if len(pivots) != code.k:
        return None
    vals = [word.symbols[i] for i in unerased]
    msg = solve_left(sub, vals)
    if msg is None:
        return None
    from .linalg import vec_mat

    codeword = vec_mat(msg, code.generator)
    access = [unerased[j] for j in pivots]
    return codeword, access


def hierarchical_decode(
    code: EvalCode, word: ErasedWord, h_index: int = 0
) -> tuple[np.ndarray, RepairReport] | None:
    """Repair policy: per erasure try local, then per middle group try
    middle, then global for whatever remains.  Returns the full codeword
    plus a per-position report, or None when global repair fails."""
    hier = code.hierarchies[h_index]
    report = RepairReport()
    work = ErasedWord(code, list(word.symbols))
    for pos in word.erased_positions():
        fit = local_repair(code, work, pos, h_index)
        if fit is not None:
            report.recovered[pos] = fit.value
            report.level[pos] = "local"
            report.access[pos] = fit.access
    for pos, v in report.recovered.items():
        work.symbols[pos] = v
    remaining = work.erased_positions()
    if remaining:
        for gi, group in enumerate(hier.middle_groups):
            todo = [i for i in group if work.symbols[i] is None]
            if not todo:
                continue
            got = middle_repair(code, work, gi, h_index)
            if got is None:
                continue
            access = [i for i in group if word.symbols[i] is not None]
            for i, v in got.items():
                work.symbols[i] = v
                report.recovered[i] = v
                report.level[i] = "middle"
                report.access[i] = access
        remaining = work.erased_positions()
    if remaining:
        got = global_erasure_decode(code, work)
        if got is None:
            return None
        codeword, access = got
        for i in remaining:
            report.recovered[i] = int(codeword[i])
            report.level[i] = "global"
            report.access[i] = [a for a in access if a != i]
            work.symbols[i] = int(codeword[i])
    return np.asarray(work.symbols, dtype=np.int64), report


def availability_repair(
    code: EvalCode, word: ErasedWord, pos: int, which: str | int = "auto"
) -> tuple[int, list[int], int] | None:
    """Repair one symbol through one of the two hierarchies.

    which in {1, 2, "auto"}; tries the local level first, then the middle
    group of the chosen hierarchy.  Returns (value, access, hierarchy used,
    1-based) or None when every requested ladder fails.
    """
    if len(code.hierarchies) < 2:
        raise ValueError("availability repair needs a two-hierarchy code")
    if which == "auto":
        candidates = [0, 1]
    elif which in (1, 2):
        candidates = [which - 1]
    else:
        raise ValueError("which must be 1, 2 or 'auto'")
    for h in candidates:
        fit = local_repair(code, word, pos, h)
        if fit is not None:
            return fit.value, fit.access, h + 1
        hier = code.hierarchies[h]
        mg, _ = hier.position_of(pos)
        got = middle_repair(code, word, mg, h)
        if got is not None and pos in got:
            access = [i for i in hier.middle_groups[mg] if word.symbols[i] is not None]
            return got[pos], access, h + 1
    return None
