"""Finite groups presented by Cayley tables.

Elements are dense integer indices ``0 .. order-1``.  Construction always
validates the identity and inverse tables; the full O(order^3) associativity
sweep runs for orders up to ``EXHAUSTIVE_CHECK_ORDER`` (larger groups are only
accepted from builders that are associative by construction, e.g. permutation
composition).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConstructionError

MAX_ORDER = 120
EXHAUSTIVE_CHECK_ORDER = 64


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group of ``order`` elements with multiplication table ``cayley[a, b]``."""

    order: int
    cayley: np.ndarray
    identity: int
    inverses: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str = "group"

    def __post_init__(self):
        self.cayley.setflags(write=False)
        self.inverses.setflags(write=False)

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A validated subgroup, stored as a sorted tuple of member indices."""

    parent: FiniteGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in set(self.members)

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={self.members})"


@dataclass(frozen=True, eq=False)
class CosetPartition:
    """Disjoint left cosets gH covering the parent group."""

    parent: FiniteGroup
    subgroup: Subgroup
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_of(self, g: int) -> int:
        for i, b in enumerate(self.blocks):
            if g in b:
                return i
        raise ValueError(f"element {g} not covered by the partition")


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    """Structural equality: identical order and Cayley table."""
    return a is b or (a.order == b.order and np.array_equal(a.cayley, b.cayley))


def _validate_table(cayley: np.ndarray, check_associativity: bool) -> tuple[int, np.ndarray]:
    n = cayley.shape[0]
    if cayley.shape != (n, n):
        raise ConstructionError(f"cayley table must be square, got shape {cayley.shape}")
    if cayley.min() < 0 or cayley.max() >= n:
        raise ConstructionError("cayley table entries must be element indices")

    identity = None
    rng = np.arange(n)
    for e in range(n):
        if np.array_equal(cayley[e], rng) and np.array_equal(cayley[:, e], rng):
            identity = e
            break
    if identity is None:
        raise ConstructionError("table has no two-sided identity element")

    inverses = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        hits = np.nonzero(cayley[x] == identity)[0]
        if len(hits) == 0:
            raise ConstructionError(f"element {x} has no right inverse")
        y = int(hits[0])
        if cayley[y, x] != identity:
            raise ConstructionError(f"element {x}: right inverse {y} is not a left inverse")
        inverses[x] = y

    if check_associativity:
        # (xy)z == x(yz) for all triples; vectorised over z.
        for x in range(n):
            for y in range(n):
                lhs = cayley[cayley[x, y], :]
                rhs = cayley[x, cayley[y, :]]
                if not np.array_equal(lhs, rhs):
                    z = int(np.nonzero(lhs != rhs)[0][0])
                    raise ConstructionError(
                        f"associativity fails at triple (x={x}, y={y}, z={z}): "
                        f"(xy)z={int(lhs[z])} but x(yz)={int(rhs[z])}"
                    )

    return identity, inverses


def group_from_table(cayley, labels=None, name: str = "from_table") -> FiniteGroup:
    """Validate an explicit Cayley table and wrap it as a FiniteGroup."""
    cayley = np.asarray(cayley, dtype=np.int64)
    n = cayley.shape[0]
    if n > MAX_ORDER:
        raise CapacityError(f"group order {n} exceeds the cap of {MAX_ORDER}")
    identity, inverses = _validate_table(cayley, check_associativity=n <= EXHAUSTIVE_CHECK_ORDER)
    lab = tuple(labels) if labels is not None else None
    return FiniteGroup(n, cayley, identity, inverses, lab, name)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ConstructionError("cyclic order must be >= 1")
    i = np.arange(n)
    cayley = (i[:, None] + i[None, :]) % n
    return group_from_table(cayley, labels=[str(k) for k in range(n)], name=f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: index j*n + i encodes r^i s^j."""
    if n < 1:
        raise ConstructionError("dihedral parameter must be >= 1")

    def mul(a, b):
        i1, j1 = a % n, a // n
        i2, j2 = b % n, b // n
        i = (i1 + i2) % n if j1 == 0 else (i1 - i2) % n
        return (j1 ^ j2) * n + i

    m = 2 * n
    cayley = np.array([[mul(a, b) for b in range(m)] for a in range(m)], dtype=np.int64)
    labels = [f"r{i}" for i in range(n)] + [f"r{i}s" for i in range(n)]
    return group_from_table(cayley, labels=labels, name=f"D{n}")


def _cycle_notation(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) if parts else "e"


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on permutations of {0..n-1} in lexicographic order; n <= 5.

    The product convention is composition with the right factor applied
    first, so the natural action table[g][x] = perm_g(x) is a homomorphism.
    """
    if not 1 <= n <= 5:
        raise ConstructionError("symmetric groups are supported for 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    cayley = np.zeros((m, m), dtype=np.int64)
    for a, p in enumerate(perms):
        for b, q in enumerate(perms):
            cayley[a, b] = index[tuple(p[q[i]] for i in range(n))]
    labels = [_cycle_notation(p) for p in perms]
    return group_from_table(cayley, labels=labels, name=f"S{n}")


def product_group(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Direct product; index (x, y) -> x * b.order + y."""
    n = a.order * b.order
    if n > MAX_ORDER:
        raise CapacityError(f"product order {n} exceeds the cap of {MAX_ORDER}")
    ax, ay = np.divmod(np.arange(n), b.order)
    cx = a.cayley[ax[:, None], ax[None, :]]
    cy = b.cayley[ay[:, None], ay[None, :]]
    cayley = cx * b.order + cy
    labels = tuple(f"({a.label(x)},{b.label(y)})" for x, y in zip(ax, ay))
    return group_from_table(cayley, labels=labels, name=f"{a.name}x{b.name}")


def build_group(kind: str, **params) -> FiniteGroup:
    """Dispatch constructor: cyclic, dihedral, symmetric, product, from_table."""
    if kind == "cyclic":
        return cyclic_group(int(params["n"]))
    if kind == "dihedral":
        return dihedral_group(int(params["n"]))
    if kind == "symmetric":
        return symmetric_group(int(params["n"]))
    if kind == "product":
        factors = params["factors"]
        if len(factors) < 2:
            raise ConstructionError("product needs at least two factors")
        g = factors[0]
        for f in factors[1:]:
            g = product_group(g, f)
        return g
    if kind == "from_table":
        return group_from_table(params["cayley"], labels=params.get("labels"))
    raise ConstructionError(f"unknown group kind {kind!r}")


def group_from_json(obj) -> FiniteGroup:
    """Build a group from the JSON description documented in the README.

    {"kind": "cyclic", "n": 6}
    {"kind": "dihedral", "n": 4}
    {"kind": "symmetric", "n": 3}
    {"kind": "product", "factors": [<spec>, <spec>, ...]}
    {"kind": "from_table", "cayley": [[...], ...], "labels": [...]}
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("kind")
    if kind == "product":
        return build_group("product", factors=[group_from_json(f) for f in obj["factors"]])
    params = {k: v for k, v in obj.items() if k != "kind"}
    return build_group(kind, **params)


def group_to_json(g: FiniteGroup) -> dict:
    return {
        "kind": "from_table",
        "cayley": g.cayley.tolist(),
        "labels": list(g.labels) if g.labels is not None else None,
    }


def generated_subgroup(g: FiniteGroup, support) -> Subgroup:
    """Smallest subgroup containing ``support`` (closure under products and inverses)."""
    support = sorted(set(int(s) for s in support))
    if not support:
        raise ConstructionError("generated_subgroup needs a nonempty support")
    for s in support:
        if not 0 <= s < g.order:
            raise ConstructionError(f"element index {s} out of range for order {g.order}")
    members = {g.identity}
    frontier = [g.identity]
    gens = set(support) | {g.inv(s) for s in support}
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = g.mul(x, s)
            if y not in members:
                members.add(y)
                frontier.append(y)
    return Subgroup(g, tuple(sorted(members)))


def left_cosets(g: FiniteGroup, h: Subgroup) -> CosetPartition:
    """Partition of g into left cosets xH."""
    if not same_group(h.parent, g):
        raise ConstructionError("subgroup does not belong to the given group")
    seen = np.zeros(g.order, dtype=bool)
    blocks = []
    members = np.array(h.members, dtype=np.int64)
    for x in range(g.order):
        if seen[x]:
            continue
        block = np.unique(g.cayley[x, members])
        seen[block] = True
        blocks.append(tuple(int(b) for b in block))
    return CosetPartition(g, h, tuple(blocks))
