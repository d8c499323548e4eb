"""Averaging (Markov) operators built from a group measure.

Conventions, fixed once and tested:

* functions on G are column vectors; the averaging matrix acts by
  ``(M h)(g) = sum_t h(g t) mu(t)``, i.e. ``M[g, x] = mu(g^{-1} x)``, so
  ``M(mu * nu) = M(mu) @ M(nu)``;
* the right regular representation permutes basis vectors by
  ``rho(g) e_h = e_{h g^{-1}}`` (on functions: ``(rho(g) f)(x) = f(x g)``),
  and ``M(mu) = sum_g mu(g) rho(g)``;
* the predual action on l^1 vectors is right convolution ``x -> x * mu``,
  whose matrix is ``M(mu).T``;
* operators on matrices use row-major vec, so conjugation by ``rho(g)``
  vectorizes to ``kron(rho(g), rho(g))`` (permutation matrices are
  orthogonal, which collapses the transpose-inverse factor).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConstructionError
from .groups import FiniteGroup, Subgroup, same_group
from .measures import FiniteMeasure, convolve

STOCHASTIC_TOL = 1e-12
CONJUGATION_ORDER_CAP = 24


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense complex square matrix with an optional row-stochastic flag."""

    entries: np.ndarray
    stochastic: bool = False

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.complex128)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"operator must be square, got shape {e.shape}")
        if not np.all(np.isfinite(e.view(np.float64))):
            raise ValueError("operator entries must be finite")
        object.__setattr__(self, "entries", e)
        e.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def check_stochastic(self, tol: float = STOCHASTIC_TOL) -> bool:
        e = self.entries
        return bool(
            np.all(np.abs(e.imag) <= tol)
            and np.all(e.real >= -tol)
            and np.all(np.abs(e.real.sum(axis=1) - 1.0) <= tol)
        )

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries,
                                  stochastic=self.stochastic and other.stochastic)
        return self.entries @ other

    def __repr__(self):
        return f"OperatorMatrix(dim={self.dim}, stochastic={self.stochastic})"


def operator_to_csv(op: OperatorMatrix | np.ndarray, path) -> None:
    e = np.asarray(getattr(op, "entries", op))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in e:
            writer.writerow([f"{z.real:.17g}{z.imag:+.17g}j" for z in row])


def as_matrix(op: OperatorMatrix | np.ndarray) -> np.ndarray:
    return np.asarray(getattr(op, "entries", op), dtype=np.complex128)


# ------------------------------------------------------- regular representations

def right_regular(g: FiniteGroup) -> np.ndarray:
    """Stack of right-regular permutation matrices, shape (order, order, order)."""
    n = g.order
    rho = np.zeros((n, n, n))
    cols = np.arange(n)
    for a in range(n):
        rows = g.cayley[cols, g.inv(a)]  # h -> h a^{-1}
        rho[a, rows, cols] = 1.0
    return rho


def left_regular(g: FiniteGroup) -> np.ndarray:
    """Stack of left-regular permutation matrices rho_l(g) e_h = e_{g h}."""
    n = g.order
    rho = np.zeros((n, n, n))
    cols = np.arange(n)
    for a in range(n):
        rows = g.cayley[a, cols]
        rho[a, rows, cols] = 1.0
    return rho


# ------------------------------------------------------------ averaging matrices

def right_markov_matrix(g: FiniteGroup, mu: FiniteMeasure) -> OperatorMatrix:
    """Averaging matrix of the measure: M[g, x] = mu(g^{-1} x)."""
    if not (mu.on_group and same_group(mu.carrier, g)):
        raise ValueError("measure does not live on the given group")
    n = g.order
    m = np.zeros((n, n), dtype=np.complex128)
    m[np.arange(n)[:, None], g.cayley] = mu.weights[None, :]
    return OperatorMatrix(m, stochastic=mu.is_probability())


def predual_action(x: np.ndarray, mu: FiniteMeasure) -> np.ndarray:
    """Right convolution x * mu of an l^1 vector; the predual of averaging.

    The pairing identity <x * mu, h> = <x, M h> holds with the bilinear
    pairing <x, h> = sum_g x(g) h(g).
    """
    g = mu.carrier
    if not isinstance(g, FiniteGroup):
        raise ValueError("predual_action expects a group-carried measure")
    x = np.asarray(x, dtype=np.complex128)
    return convolve(FiniteMeasure(g, x), mu).weights


def predual_matrix(g: FiniteGroup, mu: FiniteMeasure) -> np.ndarray:
    """Matrix of x -> x * mu; equals right_markov_matrix(g, mu).T."""
    return right_markov_matrix(g, mu).entries.T.copy()


def conjugation_operator(g: FiniteGroup, mu: FiniteMeasure) -> OperatorMatrix:
    """The averaged conjugation A -> sum_g mu(g) rho(g) A rho(g)^{-1}.

    Materialized as an order^2 x order^2 matrix acting on row-major vec(A);
    group orders above CONJUGATION_ORDER_CAP are rejected so the fixed-space
    eigenproblems stay dense and small.
    """
    if g.order > CONJUGATION_ORDER_CAP:
        raise CapacityError(
            f"conjugation operators are materialized only for order <= "
            f"{CONJUGATION_ORDER_CAP}; got order {g.order}"
        )
    rho = right_regular(g)
    n = g.order
    out = np.zeros((n * n, n * n), dtype=np.complex128)
    for a in np.nonzero(mu.weights)[0]:
        out += mu.weights[a] * np.kron(rho[a], rho[a])
    return OperatorMatrix(out, stochastic=False)


def apply_conjugation(g: FiniteGroup, mu: FiniteMeasure, a: np.ndarray) -> np.ndarray:
    """Apply the averaged conjugation directly to a matrix (no vec blowup).

    rho(s) A rho(s)^{-1} permutes entries by [x, y] -> A[x s, y s].
    """
    a = np.asarray(a, dtype=np.complex128)
    out = np.zeros_like(a)
    for s in np.nonzero(mu.weights)[0]:
        idx = g.cayley[:, s]
        out += mu.weights[s] * a[np.ix_(idx, idx)]
    return out


# ---------------------------------------------------------------- group actions

@dataclass(frozen=True, eq=False)
class GSpaceAction:
    """Action of a finite group on a finite point set, table[g, x] = g.x."""

    group: FiniteGroup
    points: int
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.shape != (self.group.order, self.points):
            raise ConstructionError(
                f"action table shape {t.shape} != (order, points) = "
                f"({self.group.order}, {self.points})"
            )
        if t.min() < 0 or t.max() >= self.points:
            raise ConstructionError("action table entries must be point indices")
        e = self.group.identity
        if not np.array_equal(t[e], np.arange(self.points)):
            raise ConstructionError("identity must act trivially")
        for g in range(self.group.order):
            for h in range(self.group.order):
                gh = self.group.mul(g, h)
                if not np.array_equal(t[gh], t[g][t[h]]):
                    raise ConstructionError(
                        f"action fails homomorphism at (g={g}, h={h})"
                    )
        object.__setattr__(self, "table", t)
        t.setflags(write=False)

    def apply(self, g: int, x: int) -> int:
        return int(self.table[g, x])


def translation_action(g: FiniteGroup) -> GSpaceAction:
    """G acting on itself by left translation."""
    return GSpaceAction(g, g.order, g.cayley.copy())


def coset_action(g: FiniteGroup, h: Subgroup) -> GSpaceAction:
    """G acting on the left cosets of a subgroup."""
    from .groups import left_cosets

    part = left_cosets(g, h)
    block_index = np.zeros(g.order, dtype=np.int64)
    for i, block in enumerate(part.blocks):
        for x in block:
            block_index[x] = i
    reps = [block[0] for block in part.blocks]
    table = np.zeros((g.order, len(reps)), dtype=np.int64)
    for a in range(g.order):
        for i, r in enumerate(reps):
            table[a, i] = block_index[g.mul(a, r)]
    return GSpaceAction(g, len(reps), table)


def trivial_action(g: FiniteGroup, points: int) -> GSpaceAction:
    return GSpaceAction(g, points, np.tile(np.arange(points), (g.order, 1)))


def gspace_markov_matrix(action: GSpaceAction, mu: FiniteMeasure) -> OperatorMatrix:
    """Transition matrix P[x, y] = mu({g : g.x = y}) of the induced chain."""
    if not (mu.on_group and same_group(mu.carrier, action.group)):
        raise ValueError("measure does not live on the acting group")
    m = action.points
    p = np.zeros((m, m), dtype=np.complex128)
    for g in np.nonzero(mu.weights)[0]:
        np.add.at(p, (np.arange(m), action.table[g]), mu.weights[g])
    return OperatorMatrix(p, stochastic=mu.is_probability())
