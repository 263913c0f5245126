"""Exact rational linear systems: canonical inequalities, LP, redundancy removal.

Everything here is exact.  Rationals are `fractions.Fraction`, coefficient
data is arbitrary-precision `int`, and the LP solver certifies its own
answers (primal/dual feasibility and equal objective values) before
returning them.  No tolerances appear anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# Exact rational scalar used throughout the package.  Fraction already
# guarantees lowest terms and a positive denominator.
Rational = Fraction


class ZeroHalfError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ZeroHalfError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class LimitExceededError(ZeroHalfError):
    """An enumeration would need more work than the caller allowed."""

    def __init__(self, message: str, required: int):
        super().__init__(f"{message} (required {required})")
        self.required = required


class InfeasibleSystemError(ZeroHalfError):
    pass


class UnboundedPolyhedronError(ZeroHalfError):
    pass


class PointNotInPolyhedronError(ZeroHalfError):
    pass


def rational_to_str(value: Fraction | int) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


def rational_from_str(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


@dataclass(frozen=True)
class Inequality:
    """A halfspace ``coeffs . x <= rhs`` with integer data."""

    coeffs: tuple[int, ...]
    rhs: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", int(self.rhs))

    @property
    def is_trivial(self) -> bool:
        """All-zero coefficients with nonnegative rhs: satisfied everywhere."""
        return self.rhs >= 0 and not any(self.coeffs)

    @property
    def is_infeasible(self) -> bool:
        """All-zero coefficients with negative rhs: an empty halfspace."""
        return self.rhs < 0 and not any(self.coeffs)

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        if len(point) != len(self.coeffs):
            raise ValueError("point dimension mismatch")
        return sum((Fraction(x) * c for c, x in zip(self.coeffs, point)),
                   Fraction(0))

    def satisfied_by(self, point: Sequence[Fraction | int]) -> bool:
        return self.evaluate(point) <= self.rhs

    def tight_at(self, point: Sequence[Fraction | int]) -> bool:
        return self.evaluate(point) == self.rhs


def canonicalize(ineq: Inequality) -> Inequality:
    """Reduce an inequality by the gcd of its coefficients.

    The rhs is divided only when the gcd divides it exactly; otherwise the
    row is kept un-scaled so that the stored data always describes the
    original halfspace.  Halfspace identity is decided by
    :func:`same_halfspace`, never by textual equality.
    """
    g = math.gcd(*ineq.coeffs) if ineq.coeffs else 0
    if g > 1 and ineq.rhs % g == 0:
        return Inequality(tuple(c // g for c in ineq.coeffs), ineq.rhs // g)
    return ineq


def halfspace_key(ineq: Inequality) -> tuple[int, ...]:
    """Canonical key of the halfspace: the primitive (coeffs, rhs) direction.

    Two inequalities get the same key iff one is a positive rational
    multiple of the other.
    """
    entries = ineq.coeffs + (ineq.rhs,)
    g = math.gcd(*entries)
    if g > 1:
        entries = tuple(v // g for v in entries)
    return entries


def same_halfspace(a: Inequality, b: Inequality) -> bool:
    """True iff (coeffs, rhs) of a and b are positive multiples of each other."""
    if len(a.coeffs) != len(b.coeffs):
        return False
    return halfspace_key(a) == halfspace_key(b)


@dataclass(frozen=True)
class LinearSystem:
    """A finite list of integer inequalities ``Ax <= b`` over n_vars variables.

    ``row_tags`` optionally labels each row (lower-bound, upper-bound,
    adjacency, cardinality-bottom, cut, other).
    """

    rows: tuple[Inequality, ...]
    n_vars: int
    row_tags: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.row_tags is not None:
            object.__setattr__(self, "row_tags", tuple(self.row_tags))
            if len(self.row_tags) != len(self.rows):
                raise ValueError("row_tags length must equal row count")
        for row in self.rows:
            if len(row.coeffs) != self.n_vars:
                raise ValueError("row length does not match n_vars")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def tag(self, index: int) -> str:
        if self.row_tags is None:
            return "other"
        return self.row_tags[index]

    def subsystem(self, indices: Iterable[int]) -> "LinearSystem":
        idx = list(indices)
        tags = None
        if self.row_tags is not None:
            tags = tuple(self.row_tags[i] for i in idx)
        return LinearSystem(tuple(self.rows[i] for i in idx), self.n_vars, tags)

    def with_rows(self, extra: Sequence[Inequality],
                  tag: str = "other") -> "LinearSystem":
        tags = None
        if self.row_tags is not None:
            tags = self.row_tags + (tag,) * len(extra)
        return LinearSystem(self.rows + tuple(extra), self.n_vars, tags)

    def satisfied_by(self, point: Sequence[Fraction | int]) -> bool:
        return all(row.satisfied_by(point) for row in self.rows)


def parse_system(text: str) -> LinearSystem:
    """Parse the plain-text linear system format.

    First non-comment line is ``<m> <n>``; each of the next m lines holds
    ``a_1 ... a_n b`` and an optional trailing ``tag=<name>``.  Lines
    starting with ``#`` are comments.
    """
    rows: list[Inequality] = []
    tags: list[str] = []
    header: tuple[int, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise ParseError("expected header '<m> <n>'", lineno, 1)
            try:
                m, n = int(tokens[0]), int(tokens[1])
            except ValueError:
                col = line.index(tokens[0]) + 1
                raise ParseError("header entries must be integers", lineno, col)
            if m < 0 or n < 0:
                raise ParseError("header entries must be nonnegative", lineno, 1)
            header = (m, n)
            continue
        m, n = header
        tag = "other"
        if tokens and tokens[-1].startswith("tag="):
            tag = tokens[-1][4:]
            if not tag:
                col = line.rindex(tokens[-1]) + 1
                raise ParseError("empty tag name", lineno, col)
            tokens = tokens[:-1]
        if len(tokens) != n + 1:
            raise ParseError(
                f"expected {n + 1} integers, found {len(tokens)}", lineno, 1)
        values = []
        for tok in tokens:
            try:
                values.append(int(tok))
            except ValueError:
                col = line.index(tok) + 1
                raise ParseError(f"bad integer token {tok!r}", lineno, col)
        rows.append(Inequality(tuple(values[:-1]), values[-1]))
        tags.append(tag)
    if header is None:
        raise ParseError("empty input", 1, 1)
    if len(rows) != header[0]:
        raise ParseError(
            f"header announced {header[0]} rows, found {len(rows)}",
            header[0] + 1, 1)
    return LinearSystem(tuple(rows), header[1], tuple(tags))


def format_system(system: LinearSystem) -> str:
    lines = [f"{system.n_rows} {system.n_vars}"]
    for i, row in enumerate(system.rows):
        parts = [str(c) for c in row.coeffs] + [str(row.rhs)]
        tag = system.tag(i)
        if system.row_tags is not None and tag:
            parts.append(f"tag={tag}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LpResult:
    """Outcome of an exact LP solve.

    For ``sense="max"`` an optimal result satisfies, exactly:
    ``A @ primal <= b``, ``dual >= 0``, ``dual @ A == objective`` and
    ``dual @ b == value``.  For ``sense="min"`` the dual certifies the
    negated problem: ``dual @ A == -objective`` and ``dual @ b == -value``.
    """

    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    primal: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None


_INT64_GUARD = 1 << 30  # beyond this the next pivot might overflow int64


class _Tableau:
    """Dense simplex tableau over the integers with a shared denominator.

    The rational tableau is ``T / d`` where ``d`` is the previous pivot
    element.  The pivot update ``T'[i,j] = (T[i,j]*p - T[i,c]*T[r,j]) / d``
    is an exact integer division (the entries are subdeterminants of the
    starting matrix), so no rounding can occur.  Arithmetic runs on int64
    until entries approach the overflow guard, then switches to Python
    integers via an object-dtype array.
    """

    def __init__(self, matrix: list[list[int]]):
        arr = np.array(matrix, dtype=object)
        if int(np.abs(arr).max()) < _INT64_GUARD:
            arr = arr.astype(np.int64)
        self.T = arr
        self.d = 1

    def _widen_if_needed(self):
        if self.T.dtype == object:
            return
        if max(int(np.abs(self.T).max()), abs(self.d)) >= _INT64_GUARD:
            self.T = self.T.astype(object)

    def pivot(self, r: int, c: int):
        self._widen_if_needed()
        T = self.T
        p = int(T[r, c])
        if p == 0:
            raise RuntimeError("zero pivot")
        col = T[:, c].copy()
        row = T[r, :].copy()
        T *= p
        T -= np.outer(col, row)
        T //= self.d
        T[r, :] = row
        self.d = p

    def rat(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.T[i, j]), self.d)


def _simplex(a_rows: list[tuple[int, ...]], b: list[int],
             c_int: list[int]) -> tuple[str, dict]:
    """Two-phase primal simplex with Bland's rule, exact throughout.

    Maximizes ``c_int . x`` over ``a_rows . x <= b`` with free variables
    (each x_j is split into a difference of two nonnegative columns).
    Returns the status plus raw certificate data (all Fractions).
    """
    n = len(c_int)
    r_count = len(a_rows)
    if r_count == 0:
        if any(c_int):
            return "unbounded", {"ray": tuple(
                Fraction(1 if ci > 0 else -1 if ci < 0 else 0) for ci in c_int)}
        zero = tuple(Fraction(0) for _ in range(n))
        return "optimal", {"x": zero, "y": (), "value": Fraction(0)}

    n_struct = 2 * n
    art_rows = [i for i in range(r_count) if b[i] < 0]
    n_art = len(art_rows)
    n_cols = n_struct + r_count + n_art + 1
    rhs_col = n_cols - 1
    art_base = n_struct + r_count

    matrix: list[list[int]] = []
    sigma = [1] * r_count
    art_of_row = {}
    for i, (row, bi) in enumerate(zip(a_rows, b)):
        line = [0] * n_cols
        s = 1
        if bi < 0:
            s = -1
        sigma[i] = s
        for j, aij in enumerate(row):
            line[j] = s * aij
            line[n + j] = -s * aij
        line[n_struct + i] = s
        line[rhs_col] = s * bi
        if s < 0:
            k = art_rows.index(i)
            line[art_base + k] = 1
            art_of_row[i] = art_base + k
        matrix.append(line)

    # Phase-2 objective row (carried through phase-1 pivots so its reduced
    # costs stay consistent automatically).
    z2 = [0] * n_cols
    for j, cj in enumerate(c_int):
        z2[j] = -cj
        z2[n + j] = cj
    matrix.append(z2)
    z2_i = r_count

    # Phase-1 objective: maximize minus the sum of artificials.
    z1_i = None
    if n_art:
        z1 = [0] * n_cols
        for k in range(n_art):
            z1[art_base + k] = 1
        for i in art_rows:
            for j in range(n_cols):
                z1[j] -= matrix[i][j]
        matrix.append(z1)
        z1_i = r_count + 1

    tab = _Tableau(matrix)
    basis = [0] * r_count
    for i in range(r_count):
        basis[i] = art_of_row.get(i, n_struct + i)

    def run_phase(z_row: int, allowed: int):
        while True:
            T, d = tab.T, tab.d
            s = 1 if d > 0 else -1
            enter = -1
            for j in range(allowed):
                if int(T[z_row, j]) * s < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            ratio_n = ratio_d = 0
            for i in range(r_count):
                tic = int(T[i, enter]) * s
                if tic <= 0:
                    continue
                num, den = int(T[i, rhs_col]) * s, tic
                if leave < 0 or num * ratio_d < ratio_n * den or (
                        num * ratio_d == ratio_n * den
                        and basis[i] < basis[leave]):
                    leave, ratio_n, ratio_d = i, num, den
            if leave < 0:
                return ("unbounded", enter)
            tab.pivot(leave, enter)
            basis[leave] = enter

    if n_art:
        # Artificial columns may not re-enter; -sum(artificials) is bounded
        # above by zero, so this phase always terminates at an optimum.
        if run_phase(z1_i, art_base) != "optimal":
            raise RuntimeError("phase-1 objective cannot be unbounded")
        if tab.rat(z1_i, rhs_col) != 0:
            # Infeasible: the phase-1 reduced costs of the slack columns
            # give an exact Farkas certificate.
            y = tuple(tab.rat(z1_i, n_struct + i) for i in range(r_count))
            return "infeasible", {"farkas": y}
        for i in range(r_count):
            if basis[i] >= art_base:
                for j in range(art_base):
                    if int(tab.T[i, j]) != 0:
                        tab.pivot(i, j)
                        basis[i] = j
                        break
                else:
                    raise RuntimeError("stranded artificial row")

    outcome = run_phase(z2_i, art_base)
    T = tab.T
    if outcome != "optimal":
        _, enter = outcome
        direction = [Fraction(0)] * (n_struct + r_count)
        direction[enter] = Fraction(1)
        for i in range(r_count):
            direction[basis[i]] = -tab.rat(i, enter)
        ray = tuple(direction[j] - direction[n + j] for j in range(n))
        return "unbounded", {"ray": ray}

    values = [Fraction(0)] * (n_struct + r_count)
    for i in range(r_count):
        values[basis[i]] = tab.rat(i, rhs_col)
    x = tuple(values[j] - values[n + j] for j in range(n))
    y = tuple(tab.rat(z2_i, n_struct + i) for i in range(r_count))
    return "optimal", {"x": x, "y": y, "value": tab.rat(z2_i, rhs_col)}


def solve_lp(system: LinearSystem, objective: Sequence[Fraction | int],
             sense: str = "max") -> LpResult:
    """Exact LP over ``system`` with Bland's rule; self-certifying.

    Optimal results are verified before returning: the primal point
    satisfies every row, the dual is nonnegative, recombines to the
    objective, and both objective values agree exactly.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    if len(objective) != system.n_vars:
        raise ValueError("objective dimension mismatch")
    obj = [Fraction(v) for v in objective]
    scale = math.lcm(*(v.denominator for v in obj)) if obj else 1
    c_int = [int(v * scale) for v in obj]
    if sense == "min":
        c_int = [-v for v in c_int]

    a_rows = [row.coeffs for row in system.rows]
    b = [row.rhs for row in system.rows]
    status, data = _simplex(a_rows, b, c_int)

    if status == "infeasible":
        y = data["farkas"]
        _check(all(yi >= 0 for yi in y), "farkas sign")
        for j in range(system.n_vars):
            _check(sum(yi * r.coeffs[j] for yi, r in zip(y, system.rows)) == 0,
                   "farkas combination")
        _check(sum(yi * r.rhs for yi, r in zip(y, system.rows)) < 0,
               "farkas rhs")
        return LpResult(status="infeasible")
    if status == "unbounded":
        ray = data["ray"]
        for row in system.rows:
            _check(sum(Fraction(c) * t for c, t in zip(row.coeffs, ray)) <= 0,
                   "unbounded ray direction")
        _check(sum(ci * t for ci, t in zip(c_int, ray)) > 0,
               "unbounded ray improves")
        return LpResult(status="unbounded")

    x, y = data["x"], data["y"]
    value = data["value"]
    for row in system.rows:
        _check(row.evaluate(x) <= row.rhs, "primal feasibility")
    _check(all(yi >= 0 for yi in y), "dual sign")
    for j in range(system.n_vars):
        lhs = sum(yi * r.coeffs[j] for yi, r in zip(y, system.rows))
        _check(lhs == c_int[j], "dual combination")
    _check(sum(yi * r.rhs for yi, r in zip(y, system.rows)) == value,
           "strong duality")
    _check(sum(ci * xi for ci, xi in zip(c_int, x)) == value,
           "primal objective")

    if sense == "min":
        return LpResult("optimal", -value / scale, x,
                        tuple(yi / scale for yi in y))
    return LpResult("optimal", value / scale, x,
                    tuple(yi / scale for yi in y))


def _check(condition: bool, what: str):
    if not condition:
        raise RuntimeError(f"internal LP certificate check failed: {what}")


def remove_redundant(system: LinearSystem) -> LinearSystem:
    """Drop rows implied by the remaining ones, one exact LP per row.

    The returned subsystem defines the same polyhedron.  Raises
    InfeasibleSystemError when the input polyhedron is empty.
    """
    feas = solve_lp(system, [0] * system.n_vars)
    if feas.status == "infeasible":
        raise InfeasibleSystemError("cannot reduce an empty polyhedron")
    keep = list(range(system.n_rows))
    for idx in range(system.n_rows):
        others = [i for i in keep if i != idx]
        row = system.rows[idx]
        if not others:
            if row.is_trivial:
                keep = others
            continue
        res = solve_lp(system.subsystem(others), row.coeffs)
        if res.status == "optimal" and res.value <= row.rhs:
            keep = others
    return system.subsystem(keep)
