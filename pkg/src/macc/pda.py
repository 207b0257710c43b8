"""Placement delivery arrays.

A PDA is an F x K array over {star} plus message ids.  Stars mark packets a
user can already retrieve; equal ids mark packets combined into one multicast
message.  The defining conditions:

  C1   every column holds the same number Z of stars;
  C2   every message id occurs at least once;
  C3a  an id never repeats within a row or a column;
  C3b  for two cells sharing an id, both crossing cells are stars.

Ids are opaque hashable objects.  Constructions use structured ids (subsets,
symbol vectors with copy counters); serialization canonicalizes them to dense
integers 1..S in row-major first-occurrence order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .errors import InvalidParametersError, NotAPdaError


class _Star:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"


STAR = _Star()


@dataclass(frozen=True)
class SubsetId:
    """Message id naming a point subset (index-1 design deliveries)."""

    elements: tuple

    def __str__(self):
        if all(x <= 9 for x in self.elements):
            return "".join(str(x) for x in self.elements)
        return "{" + ",".join(str(x) for x in self.elements) + "}"


@dataclass(frozen=True)
class CountedSubsetId:
    """Point subset plus a copy counter (index > 1 design deliveries)."""

    elements: tuple
    copy: int

    def __str__(self):
        return f"{SubsetId(self.elements)},{self.copy}"


@dataclass(frozen=True)
class CountedVectorId:
    """Symbol vector plus a per-column copy counter (GDD deliveries)."""

    symbols: tuple
    copy: int

    def display(self, show_copy: bool) -> str:
        body = "".join(str(x) for x in self.symbols) if all(
            x <= 9 for x in self.symbols
        ) else "(" + ",".join(str(x) for x in self.symbols) + ")"
        return f"{body},{self.copy}" if show_copy else body

    def __str__(self):
        return self.display(self.copy > 1)


class Pda:
    """Immutable star/message-id grid with cached statistics."""

    def __init__(self, cells):
        rows = tuple(tuple(r) for r in cells)
        if not rows or not rows[0]:
            raise InvalidParametersError("PDA needs at least one row and one column")
        if len({len(r) for r in rows}) != 1:
            raise InvalidParametersError("ragged PDA rows")
        self._cells = rows

    @property
    def cells(self):
        return self._cells

    @property
    def num_rows(self) -> int:
        return len(self._cells)

    @property
    def num_cols(self) -> int:
        return len(self._cells[0])

    def cell(self, row: int, col: int):
        return self._cells[row][col]

    @cached_property
    def ids(self) -> tuple:
        """Distinct ids in row-major first-occurrence order."""
        seen = {}
        for row in self._cells:
            for c in row:
                if c is not STAR and c not in seen:
                    seen[c] = len(seen)
        return tuple(seen)

    @property
    def num_ids(self) -> int:
        return len(self.ids)

    @cached_property
    def id_positions(self) -> dict:
        pos = {i: [] for i in self.ids}
        for j, row in enumerate(self._cells):
            for k, c in enumerate(row):
                if c is not STAR:
                    pos[c].append((j, k))
        return {i: tuple(p) for i, p in pos.items()}

    @cached_property
    def canonical_index(self) -> dict:
        """id -> dense integer 1..S."""
        return {i: n for n, i in enumerate(self.ids, start=1)}

    @cached_property
    def column_star_counts(self) -> tuple:
        return tuple(
            sum(1 for row in self._cells if row[k] is STAR)
            for k in range(self.num_cols)
        )

    def to_canonical(self) -> "Pda":
        index = self.canonical_index
        return Pda(
            tuple(
                tuple(STAR if c is STAR else index[c] for c in row)
                for row in self._cells
            )
        )

    def stars_uniform(self) -> bool:
        return len(set(self.column_star_counts)) == 1

    def stats(self) -> "PdaStats":
        return pda_stats(self)

    def __eq__(self, other):
        return isinstance(other, Pda) and self._cells == other._cells

    def __hash__(self):
        return hash(self._cells)


@dataclass
class PdaStats:
    num_users: int
    subpacketization: int
    stars_per_column: int
    num_messages: int
    load: Fraction
    gain: Optional[Fraction]
    degenerate: bool


def pda_stats(pda: Pda) -> PdaStats:
    """Exact (K, F, Z, S) plus load S/F and gain K(F-Z)/S."""
    if not pda.stars_uniform():
        raise NotAPdaError(f"column star counts are not uniform: {pda.column_star_counts}")
    k, f = pda.num_cols, pda.num_rows
    z = pda.column_star_counts[0]
    s = pda.num_ids
    load = Fraction(s, f)
    gain = Fraction(k * (f - z), s) if s else None
    return PdaStats(k, f, z, s, load, gain, degenerate=(s == 0 or z == f))


@dataclass
class PdaVerification:
    ok: bool
    c1_uniform_stars: bool
    c2_ids_complete: bool
    c3a_distinct_rows_cols: bool
    c3b_crossing_stars: bool
    num_users: int
    subpacketization: int
    stars_per_column: Optional[int]
    num_messages: int
    degenerate: bool
    first_violation: Optional[str] = None


def verify_pda(pda: Pda) -> PdaVerification:
    """Exhaustive check of C1-C3 over every pair of cells sharing an id."""
    violations = []

    c1 = pda.stars_uniform()
    if not c1:
        violations.append(f"C1: column star counts {pda.column_star_counts}")
    z = pda.column_star_counts[0] if c1 else None

    # C2 is only informative when ids are the integers 1..S: a gap means some
    # advertised message is never sent.
    c2 = True
    ids = pda.ids
    if ids and all(isinstance(i, int) for i in ids):
        missing = set(range(1, max(ids) + 1)) - set(ids)
        if missing:
            c2 = False
            violations.append(f"C2: integer ids missing {sorted(missing)}")

    c3a = True
    c3b = True
    first_a = first_b = None
    for ident, cells in pda.id_positions.items():
        for (j1, k1), (j2, k2) in itertools.combinations(cells, 2):
            if j1 == j2 or k1 == k2:
                c3a = False
                if first_a is None:
                    first_a = f"C3a: id {ident} repeats at {(j1 + 1, k1 + 1)} and {(j2 + 1, k2 + 1)}"
            elif pda.cell(j1, k2) is not STAR or pda.cell(j2, k1) is not STAR:
                c3b = False
                if first_b is None:
                    first_b = (
                        f"C3b: id {ident} at {(j1 + 1, k1 + 1)},{(j2 + 1, k2 + 1)} "
                        "lacks crossing stars"
                    )
    if first_a:
        violations.append(first_a)
    if first_b:
        violations.append(first_b)

    s = pda.num_ids
    return PdaVerification(
        ok=c1 and c2 and c3a and c3b,
        c1_uniform_stars=c1,
        c2_ids_complete=c2,
        c3a_distinct_rows_cols=c3a,
        c3b_crossing_stars=c3b,
        num_users=pda.num_cols,
        subpacketization=pda.num_rows,
        stars_per_column=z,
        num_messages=s,
        degenerate=(s == 0 or z == pda.num_rows),
        first_violation=violations[0] if violations else None,
    )


def subset_lex_rank(subset, universe: int) -> int:
    """1-based rank of a sorted subset among all same-size subsets of
    [universe] in lexicographic order."""
    rank = 0
    size = len(subset)
    prev = 0
    for i, x in enumerate(subset):
        for y in range(prev + 1, x):
            rank += math.comb(universe - y, size - i - 1)
        prev = x
    return rank + 1


def mn_pda(num_users: int, cached_fraction: int) -> Pda:
    """The classical single-cache PDA: rows are the t-subsets of users in
    lexicographic order, and cell (D, k) for k outside D is the rank of
    D + {k} among (t+1)-subsets."""
    k_users, t = num_users, cached_fraction
    if not 0 <= t <= k_users:
        raise InvalidParametersError(f"need 0 <= t <= K, got t={t}, K={k_users}")
    rows = []
    for d in itertools.combinations(range(1, k_users + 1), t):
        dset = set(d)
        row = [
            STAR if k in dset else subset_lex_rank(tuple(sorted(d + (k,))), k_users)
            for k in range(1, k_users + 1)
        ]
        rows.append(tuple(row))
    return Pda(tuple(rows))
