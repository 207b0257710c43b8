"""Combinatorial access topologies: block designs, GDDs, resolvable designs, OAs.

Everything here is small and exhaustive by intent: constructors build the
classical families used as cache-access topologies, verifiers check the
defining coverage properties by full enumeration, and the duality transforms
move between cross resolvable designs, group divisible designs, and
orthogonal arrays.

Conventions: points are 1-based, every subset is stored as a sorted tuple,
and enumerations are lexicographic unless a catalog entry pins a specific
published ordering.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    InvalidInputError,
    InvalidParametersError,
    NotFoundError,
    UnsupportedParametersError,
)

# Exhaustive verification caps; correctness over scale.
MAX_DESIGN_POINTS = 24
MAX_OA_CELLS = 1 << 20


def _sorted_block(block) -> tuple:
    out = tuple(sorted(block))
    if len(set(out)) != len(out):
        raise InvalidInputError(f"block {block!r} has repeated points")
    return out


# ---------------------------------------------------------------------------
# t-designs


@dataclass(frozen=True)
class Design:
    """A uniform block design on points 1..num_points.

    ``strength``/``index`` record the claimed t-(v, L, lambda) tag; they are
    advisory until checked with :func:`verify_t_design`.
    """

    num_points: int
    blocks: tuple
    strength: Optional[int] = None
    index: Optional[int] = None

    def __post_init__(self):
        if self.num_points < 1:
            raise InvalidParametersError("need at least one point")
        blocks = tuple(_sorted_block(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise InvalidInputError("design has no blocks")
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1:
            raise InvalidInputError(f"non-uniform block sizes {sorted(sizes)}")
        for b in blocks:
            if b[0] < 1 or b[-1] > self.num_points:
                raise InvalidInputError(f"block {b} not inside [{self.num_points}]")

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def replication(self) -> Fraction:
        """Average number of blocks through a point, K*L/v."""
        return Fraction(self.num_blocks * self.block_size, self.num_points)

    def canonical(self) -> "Design":
        return Design(self.num_points, tuple(sorted(self.blocks)), self.strength, self.index)


def complete_design(num_points: int, block_size: int) -> Design:
    """All ``block_size``-subsets of the point set, in lexicographic order."""
    if not 1 <= block_size <= num_points:
        raise InvalidParametersError(
            f"block size must satisfy 1 <= L <= {num_points}, got {block_size}"
        )
    blocks = tuple(itertools.combinations(range(1, num_points + 1), block_size))
    return Design(num_points, blocks, strength=block_size, index=1)


# Published catalog instances.  Block order follows the source listings so
# that rendered scheme tables are reproducible; blocks themselves are sorted.
_CATALOG_DESIGNS = {
    "fano-7-3-1": (
        7,
        ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (1, 5, 6), (2, 6, 7), (1, 3, 7)),
        2,
        1,
    ),
    "affine-9-3-1": (
        9,
        (
            (1, 4, 7), (2, 5, 8), (3, 6, 9),
            (1, 2, 3), (4, 5, 6), (7, 8, 9),
            (1, 6, 8), (2, 4, 9), (3, 5, 7),
            (1, 5, 9), (2, 6, 7), (3, 4, 8),
        ),
        2,
        1,
    ),
    "biplane-7-4-2": (
        7,
        (
            (1, 2, 3, 5), (2, 3, 4, 6), (3, 4, 5, 7), (1, 4, 5, 6),
            (2, 5, 6, 7), (1, 3, 6, 7), (1, 2, 4, 7),
        ),
        2,
        2,
    ),
    # The 2-(3,2,3,1) GDD example flattened to plain points via
    # gamma = (u-1)q + v; as a design it is a 1-(6,3,2).
    "gdd-dual-example": (
        6,
        ((1, 3, 5), (2, 3, 6), (1, 4, 6), (2, 4, 5)),
        1,
        2,
    ),
}


def catalog_design(name: str) -> Design:
    try:
        points, blocks, t, lam = _CATALOG_DESIGNS[name]
    except KeyError:
        raise NotFoundError(
            f"unknown design {name!r}; available: {sorted(_CATALOG_DESIGNS)}"
        ) from None
    return Design(points, blocks, strength=t, index=lam)


def catalog_design_names() -> tuple:
    return tuple(sorted(_CATALOG_DESIGNS))


@dataclass
class DesignVerification:
    ok: bool
    strength: int
    index: int
    replication: Fraction
    derived_indices: dict
    first_violation: Optional[str] = None


def verify_t_design(design: Design, strength: int, index: int) -> DesignVerification:
    """Exhaustively check that every t-subset lies in exactly ``index`` blocks.

    The report carries the replication count and the derived lower-strength
    indices lambda * C(v-t', t-t') / C(L-t', t-t') for every t' <= t.
    """
    t, lam = strength, index
    v, L = design.num_points, design.block_size
    if not 1 <= t <= L:
        raise InvalidParametersError(f"need 1 <= t <= L={L}, got t={t}")
    if v > MAX_DESIGN_POINTS:
        raise UnsupportedParametersError(
            f"exhaustive verification capped at {MAX_DESIGN_POINTS} points"
        )
    replication = Fraction(lam * math.comb(v - 1, t - 1), math.comb(L - 1, t - 1))
    derived = {
        tp: Fraction(lam * math.comb(v - tp, t - tp), math.comb(L - tp, t - tp))
        for tp in range(1, t + 1)
    }
    counts = {}
    for block in design.blocks:
        for sub in itertools.combinations(block, t):
            counts[sub] = counts.get(sub, 0) + 1
    violation = None
    for sub in itertools.combinations(range(1, v + 1), t):
        got = counts.get(sub, 0)
        if got != lam:
            violation = f"subset {set(sub)} lies in {got} blocks, expected {lam}"
            break
    return DesignVerification(
        ok=violation is None,
        strength=t,
        index=lam,
        replication=replication,
        derived_indices=derived,
        first_violation=violation,
    )


def check_divisibility(strength: int, block_size: int, index: int, num_points: int) -> bool:
    """Necessary divisibility conditions for a t-(v, L, lambda) design.

    True means the parameters pass the divisibility test (no existence claim);
    False certifies that no such design exists.
    """
    t, L, lam, v = strength, block_size, index, num_points
    if not 1 <= t <= L <= v:
        raise InvalidParametersError(f"need 1 <= t <= L <= v, got {(t, L, v)}")
    return all(
        lam * math.comb(v - i, t - i) % math.comb(L - i, t - i) == 0
        for i in range(t)
    )


# ---------------------------------------------------------------------------
# Group divisible designs


@dataclass(frozen=True)
class GroupDivisibleDesign:
    """Blocks over points (u, v), u a group in 1..m and v a slot in 1..q."""

    num_groups: int
    group_size: int
    blocks: tuple
    strength: Optional[int] = None
    index: Optional[int] = None

    def __post_init__(self):
        if self.num_groups < 1 or self.group_size < 1:
            raise InvalidParametersError("need m >= 1 and q >= 1")
        blocks = []
        for block in self.blocks:
            pts = tuple(sorted(tuple(p) for p in block))
            if len(set(pts)) != len(pts):
                raise InvalidInputError(f"block {block!r} has repeated points")
            for (u, v) in pts:
                if not (1 <= u <= self.num_groups and 1 <= v <= self.group_size):
                    raise InvalidInputError(f"point {(u, v)} outside the group frame")
            blocks.append(pts)
        if not blocks:
            raise InvalidInputError("GDD has no blocks")
        if len({len(b) for b in blocks}) != 1:
            raise InvalidInputError("non-uniform block sizes")
        object.__setattr__(self, "blocks", tuple(blocks))

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_groups(self, k: int) -> tuple:
        """Group indices of block k (0-based), ascending."""
        return tuple(u for u, _ in self.blocks[k])

    def block_values(self, k: int) -> tuple:
        """Within-group values of block k, ordered by group."""
        return tuple(v for _, v in self.blocks[k])

    def canonical(self) -> "GroupDivisibleDesign":
        return GroupDivisibleDesign(
            self.num_groups, self.group_size, tuple(sorted(self.blocks)),
            self.strength, self.index,
        )


def flatten_point(point, group_size: int) -> int:
    """Map (u, v) to the flat node index (u-1)*q + v."""
    u, v = point
    return (u - 1) * group_size + v


def transversal_gdd(num_groups: int, group_size: int, strength: int) -> GroupDivisibleDesign:
    """The t-(m, q, t, 1) GDD whose blocks are all value assignments on all
    t-subsets of groups, in lexicographic order."""
    m, q, t = num_groups, group_size, strength
    if not 1 <= t <= m or q < 1:
        raise InvalidParametersError(f"need 1 <= t <= m and q >= 1, got {(m, q, t)}")
    blocks = []
    for groups in itertools.combinations(range(1, m + 1), t):
        for values in itertools.product(range(1, q + 1), repeat=t):
            blocks.append(tuple(zip(groups, values)))
    return GroupDivisibleDesign(m, q, tuple(sorted(blocks)), strength=t, index=1)


_CATALOG_GDDS = {
    # Dual of the 2-(4,2,6,3,1) resolvable design; a 2-(3,2,3,1) GDD.
    "gdd-3-2-3-1": (
        3,
        2,
        (
            ((1, 1), (2, 1), (3, 1)),
            ((1, 2), (2, 1), (3, 2)),
            ((1, 1), (2, 2), (3, 2)),
            ((1, 2), (2, 2), (3, 1)),
        ),
        2,
        1,
    ),
}


def catalog_gdd(name: str) -> GroupDivisibleDesign:
    try:
        m, q, blocks, t, lam = _CATALOG_GDDS[name]
    except KeyError:
        raise NotFoundError(
            f"unknown GDD {name!r}; available: {sorted(_CATALOG_GDDS)}"
        ) from None
    return GroupDivisibleDesign(m, q, blocks, strength=t, index=lam)


@dataclass
class GddVerification:
    ok: bool
    strength: int
    index: int
    expected_num_blocks: Fraction
    first_violation: Optional[str] = None


def verify_gdd(gdd: GroupDivisibleDesign, strength: int, index: int) -> GddVerification:
    """Check transversality, cross coverage, and the block count
    lambda * C(m,t) * q^t / C(L,t)."""
    t, lam = strength, index
    m, q, L = gdd.num_groups, gdd.group_size, gdd.block_size
    if not 1 <= t <= L <= m:
        raise InvalidParametersError(f"need 1 <= t <= L <= m, got t={t}, L={L}, m={m}")
    if math.comb(m, t) * q**t > MAX_OA_CELLS:
        raise UnsupportedParametersError("cross t-set enumeration too large")
    expected_blocks = Fraction(lam * math.comb(m, t) * q**t, math.comb(L, t))

    violation = None
    for k, block in enumerate(gdd.blocks):
        groups = gdd.block_groups(k)
        if len(set(groups)) != len(groups):
            violation = f"block {block} meets a group twice"
            break

    if violation is None:
        counts = {}
        for block in gdd.blocks:
            for sub in itertools.combinations(block, t):
                if len({u for u, _ in sub}) == t:
                    counts[sub] = counts.get(sub, 0) + 1
        for groups in itertools.combinations(range(1, m + 1), t):
            for values in itertools.product(range(1, q + 1), repeat=t):
                sub = tuple(zip(groups, values))
                got = counts.get(sub, 0)
                if got != lam:
                    violation = f"cross subset {sub} lies in {got} blocks, expected {lam}"
                    break
            if violation:
                break

    if violation is None and gdd.num_blocks != expected_blocks:
        violation = (
            f"block count {gdd.num_blocks} != lambda*C(m,t)*q^t/C(L,t) = {expected_blocks}"
        )
    return GddVerification(
        ok=violation is None,
        strength=t,
        index=lam,
        expected_num_blocks=expected_blocks,
        first_violation=violation,
    )


# ---------------------------------------------------------------------------
# Resolvable designs


@dataclass(frozen=True)
class ResolvableDesign:
    """A design whose blocks split into parallel classes, each a partition
    of the point set 1..num_points."""

    num_points: int
    parallel_classes: tuple
    strength: Optional[int] = None
    cross_number: Optional[int] = None

    def __post_init__(self):
        classes = tuple(
            tuple(_sorted_block(b) for b in cls) for cls in self.parallel_classes
        )
        object.__setattr__(self, "parallel_classes", classes)
        if not classes or not all(classes):
            raise InvalidInputError("need at least one non-empty parallel class")
        sizes = {len(b) for cls in classes for b in cls}
        if len(sizes) != 1:
            raise InvalidInputError(f"non-uniform block sizes {sorted(sizes)}")

    @property
    def block_size(self) -> int:
        return len(self.parallel_classes[0][0])

    @property
    def num_classes(self) -> int:
        return len(self.parallel_classes)

    @property
    def blocks_per_class(self) -> int:
        return len(self.parallel_classes[0])

    @property
    def num_blocks(self) -> int:
        return sum(len(cls) for cls in self.parallel_classes)

    def canonical(self) -> "ResolvableDesign":
        classes = tuple(tuple(sorted(cls)) for cls in self.parallel_classes)
        return ResolvableDesign(self.num_points, classes, self.strength, self.cross_number)


@dataclass
class ResolvableVerification:
    ok: bool
    strength: int
    cross_number: int
    first_violation: Optional[str] = None


def verify_resolvable(rd: ResolvableDesign, strength: int, cross_number: int) -> ResolvableVerification:
    """Check that each class partitions the points and any ``strength`` blocks
    from distinct classes intersect in exactly ``cross_number`` points."""
    t, lam = strength, cross_number
    if not 1 <= t <= rd.num_classes:
        raise InvalidParametersError(f"need 1 <= t <= m={rd.num_classes}")
    points = set(range(1, rd.num_points + 1))
    violation = None
    for u, cls in enumerate(rd.parallel_classes, start=1):
        seen = [p for b in cls for p in b]
        if len(seen) != len(points) or set(seen) != points:
            violation = f"class {u} is not a partition of [{rd.num_points}]"
            break
    if violation is None:
        for class_ids in itertools.combinations(range(rd.num_classes), t):
            for choice in itertools.product(*(rd.parallel_classes[u] for u in class_ids)):
                inter = set(choice[0])
                for b in choice[1:]:
                    inter &= set(b)
                if len(inter) != lam:
                    violation = (
                        f"blocks {choice} from classes {[u + 1 for u in class_ids]} "
                        f"meet in {len(inter)} points, expected {lam}"
                    )
                    break
            if violation:
                break
    return ResolvableVerification(violation is None, t, lam, violation)


def _resolve_cross_tag(rd: ResolvableDesign, strength, cross_number):
    t = strength if strength is not None else rd.strength
    lam = cross_number if cross_number is not None else rd.cross_number
    if t is None or lam is None:
        raise InvalidInputError("resolvable design carries no cross tag; pass strength/cross_number")
    return t, lam


def dual_of_resolvable(rd: ResolvableDesign, strength=None, cross_number=None) -> GroupDivisibleDesign:
    """Swap points and blocks: class u becomes group u, and point j becomes
    the block {(u, v) : j in class-u block v}.  A t-cross design with
    intersection number lam dualizes to a t-(m, q, m, lam) GDD."""
    t, lam = _resolve_cross_tag(rd, strength, cross_number)
    report = verify_resolvable(rd, t, lam)
    if not report.ok:
        raise InvalidInputError(f"input is not {t}-cross resolvable: {report.first_violation}")
    m = rd.num_classes
    q = rd.blocks_per_class
    blocks = []
    for j in range(1, rd.num_points + 1):
        block = []
        for u, cls in enumerate(rd.parallel_classes, start=1):
            for v, b in enumerate(cls, start=1):
                if j in b:
                    block.append((u, v))
        blocks.append(tuple(block))
    return GroupDivisibleDesign(m, q, tuple(blocks), strength=t, index=lam)


def dual_of_gdd(gdd: GroupDivisibleDesign) -> ResolvableDesign:
    """Inverse of :func:`dual_of_resolvable` for GDDs whose blocks meet every
    group exactly once."""
    if gdd.block_size != gdd.num_groups:
        raise InvalidInputError("dualization needs blocks meeting every group (L = m)")
    classes = []
    for u in range(1, gdd.num_groups + 1):
        cls = []
        for v in range(1, gdd.group_size + 1):
            cls.append(tuple(
                k for k in range(1, gdd.num_blocks + 1)
                if (u, v) in gdd.blocks[k - 1]
            ))
        cls = [b for b in cls if b]
        sizes = {len(b) for b in cls}
        if len(sizes) != 1:
            raise InvalidInputError("dual blocks are not uniform; input is not a dual GDD")
        classes.append(tuple(cls))
    return ResolvableDesign(
        gdd.num_blocks, tuple(classes),
        strength=gdd.strength, cross_number=gdd.index,
    )


# ---------------------------------------------------------------------------
# Orthogonal arrays


@dataclass(frozen=True)
class OrthogonalArray:
    """index * num_symbols^strength rows over 1..num_symbols."""

    num_symbols: int
    strength: int
    index: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.num_symbols < 1:
            raise InvalidParametersError("need q >= 1")
        if not rows:
            raise InvalidInputError("OA has no rows")
        if len({len(r) for r in rows}) != 1:
            raise InvalidInputError("ragged OA rows")
        for r in rows:
            for x in r:
                if not 1 <= x <= self.num_symbols:
                    raise InvalidInputError(f"entry {x} outside [{self.num_symbols}]")
        expected = self.index * self.num_symbols**self.strength
        if len(rows) != expected:
            raise InvalidInputError(
                f"row count {len(rows)} != index*q^strength = {expected}"
            )

    @property
    def num_columns(self) -> int:
        return len(self.rows[0])

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def canonical(self) -> "OrthogonalArray":
        return OrthogonalArray(self.num_symbols, self.strength, self.index, tuple(sorted(self.rows)))


@dataclass
class OaVerification:
    ok: bool
    strength: int
    index: int
    first_violation: Optional[str] = None


def verify_oa(oa: OrthogonalArray, strength: int, index: int) -> OaVerification:
    """Check every ``strength``-column projection hits each tuple exactly
    ``index`` times."""
    s, lam = strength, index
    m = oa.num_columns
    q = oa.num_symbols
    if not 1 <= s <= m:
        raise InvalidParametersError(f"need 1 <= s <= m={m}")
    if q**s > MAX_OA_CELLS:
        raise UnsupportedParametersError("projection enumeration too large")
    violation = None
    if oa.num_rows != lam * q**s:
        violation = f"row count {oa.num_rows} != index*q^s = {lam * q ** s}"
    else:
        for cols in itertools.combinations(range(m), s):
            counts = {}
            for row in oa.rows:
                key = tuple(row[c] for c in cols)
                counts[key] = counts.get(key, 0) + 1
            for tup in itertools.product(range(1, q + 1), repeat=s):
                got = counts.get(tup, 0)
                if got != lam:
                    violation = (
                        f"columns {tuple(c + 1 for c in cols)}: tuple {tup} "
                        f"appears {got} times, expected {lam}"
                    )
                    break
            if violation:
                break
    return OaVerification(violation is None, s, lam, violation)


def trivial_oa(num_columns: int, num_symbols: int) -> OrthogonalArray:
    """Full enumeration of [q]^m in lexicographic order; strength m, index 1."""
    m, q = num_columns, num_symbols
    if m < 1 or q < 2:
        raise InvalidParametersError(f"need m >= 1 and q >= 2, got {(m, q)}")
    if q**m > MAX_OA_CELLS:
        raise UnsupportedParametersError("full enumeration too large")
    rows = tuple(itertools.product(range(1, q + 1), repeat=m))
    return OrthogonalArray(q, m, 1, rows)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


def linear_oa(num_columns: int, num_symbols: int, strength: int) -> OrthogonalArray:
    """Strength-s OA from degree-<s polynomial evaluation over a prime field.

    Row for coefficients c evaluates sum c_i x^i at ``num_columns`` distinct
    field points, so any s columns form an invertible Vandermonde system.
    The s = m case falls back to full enumeration.
    """
    m, q, s = num_columns, num_symbols, strength
    if s < 1 or s > m:
        raise InvalidParametersError(f"need 1 <= s <= m, got s={s}, m={m}")
    if s == m:
        return trivial_oa(m, q)
    if not _is_prime(q):
        raise InvalidParametersError(f"q={q} is not prime")
    if m > q:
        raise UnsupportedParametersError(
            f"polynomial construction needs m <= q for s < m (got m={m}, q={q}); "
            "use trivial_oa or a catalog array"
        )
    rows = []
    for coeffs in itertools.product(range(q), repeat=s):
        row = []
        for x in range(m):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * x + c) % q
            row.append(acc + 1)
        rows.append(tuple(row))
    return OrthogonalArray(q, s, 1, tuple(rows))


_CATALOG_OAS = {
    # The strength-2 binary array on three columns used by the small GDD demos.
    "oa-3-2-2": (2, 2, 1, ((1, 1, 1), (2, 1, 2), (1, 2, 2), (2, 2, 1))),
}


def catalog_oa(name: str) -> OrthogonalArray:
    try:
        q, s, lam, rows = _CATALOG_OAS[name]
    except KeyError:
        raise NotFoundError(
            f"unknown OA {name!r}; available: {sorted(_CATALOG_OAS)}"
        ) from None
    return OrthogonalArray(q, s, lam, rows)


def resolvable_to_oa(rd: ResolvableDesign, strength=None, cross_number=None) -> OrthogonalArray:
    """Encode a t-cross resolvable design as an OA: row j, column u holds the
    class-u block containing point j."""
    t, lam = _resolve_cross_tag(rd, strength, cross_number)
    report = verify_resolvable(rd, t, lam)
    if not report.ok:
        raise InvalidInputError(f"input is not {t}-cross resolvable: {report.first_violation}")
    q = rd.blocks_per_class
    rows = []
    for j in range(1, rd.num_points + 1):
        row = []
        for cls in rd.parallel_classes:
            for v, b in enumerate(cls, start=1):
                if j in b:
                    row.append(v)
                    break
        rows.append(tuple(row))
    return OrthogonalArray(q, t, lam, tuple(rows))


def oa_to_resolvable(oa: OrthogonalArray) -> ResolvableDesign:
    """Inverse of :func:`resolvable_to_oa`: points are row indices and class u
    collects the rows showing each symbol in column u."""
    report = verify_oa(oa, oa.strength, oa.index)
    if not report.ok:
        raise InvalidInputError(f"not an OA: {report.first_violation}")
    classes = []
    for u in range(oa.num_columns):
        cls = []
        for v in range(1, oa.num_symbols + 1):
            cls.append(tuple(j for j, row in enumerate(oa.rows, start=1) if row[u] == v))
        classes.append(tuple(cls))
    return ResolvableDesign(
        oa.num_rows, tuple(classes),
        strength=oa.strength, cross_number=oa.index,
    )
