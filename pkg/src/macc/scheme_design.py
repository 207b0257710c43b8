"""Multiaccess caching schemes over a t-design access topology.

The cache side uses the classical subset placement: a file is split into one
subfile per size-``cached_nodes`` subset D of the nodes, each subfile into one
packet per t-subset T of the access positions, and node ``g`` stores the
packets with ``g in D``.  A user attached to block B retrieves everything its
L nodes hold, and the delivery array assigns the remaining cells the message
id D + B(T) (plus a copy counter when the design index exceeds 1).

Row order everywhere is T-major: all D's in lexicographic order under the
first T, then the next T.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np

from .designs import Design
from .errors import InconsistentDesignError, InvalidInputError, InvalidParametersError
from .pda import Pda, STAR, CountedSubsetId, SubsetId


@dataclass(frozen=True)
class DesignSchemeParams:
    num_nodes: int        # node count
    access_degree: int    # L, nodes per user
    strength: int         # t
    index: int            # design index lambda
    cached_nodes: int     # subset size defining one subfile
    num_files: int

    def __post_init__(self):
        g, l, t, lam, mu = (
            self.num_nodes, self.access_degree, self.strength, self.index, self.cached_nodes,
        )
        if not 1 <= t <= l <= g:
            raise InvalidParametersError(f"need 1 <= t <= L <= nodes, got {(t, l, g)}")
        if lam < 1:
            raise InvalidParametersError("design index must be >= 1")
        if not 0 <= mu <= g - l:
            raise InvalidParametersError(
                f"cached_nodes must satisfy 0 <= cached_nodes <= nodes - L = {g - l}, got {mu}"
            )
        if lam * math.comb(g, t) % math.comb(l, t):
            raise InvalidParametersError(
                f"user count lambda*C({g},{t})/C({l},{t}) is not an integer"
            )
        if self.num_files < 1:
            raise InvalidParametersError("need at least one file")

    @property
    def num_users(self) -> int:
        return self.index * math.comb(self.num_nodes, self.strength) // math.comb(
            self.access_degree, self.strength
        )

    @property
    def subpacketization(self) -> int:
        return math.comb(self.num_nodes, self.cached_nodes) * math.comb(
            self.access_degree, self.strength
        )

    @property
    def stars_per_user(self) -> int:
        g, l, mu = self.num_nodes, self.access_degree, self.cached_nodes
        return (math.comb(g, mu) - math.comb(g - l, mu)) * math.comb(l, self.strength)

    @property
    def memory_ratio(self) -> Fraction:
        return Fraction(self.cached_nodes, self.num_nodes)

    @classmethod
    def from_design(cls, design: Design, cached_nodes: int, num_files: Optional[int] = None):
        if design.strength is None or design.index is None:
            raise InvalidInputError("design carries no (strength, index) tag")
        params = cls(
            num_nodes=design.num_points,
            access_degree=design.block_size,
            strength=design.strength,
            index=design.index,
            cached_nodes=cached_nodes,
            num_files=num_files if num_files is not None else 1,
        )
        if design.num_blocks != params.num_users:
            raise InvalidInputError(
                f"design has {design.num_blocks} blocks but its tag implies "
                f"{params.num_users}"
            )
        if num_files is None:
            params = cls(
                params.num_nodes, params.access_degree, params.strength,
                params.index, params.cached_nodes, params.num_users,
            )
        return params


def row_labels(params: DesignSchemeParams) -> tuple:
    """(D, T) row labels, T-major then D lexicographic."""
    g, l, t, mu = (
        params.num_nodes, params.access_degree, params.strength, params.cached_nodes,
    )
    return tuple(
        (d, tt)
        for tt in itertools.combinations(range(1, l + 1), t)
        for d in itertools.combinations(range(1, g + 1), mu)
    )


def build_node_placement(params: DesignSchemeParams) -> np.ndarray:
    """F x nodes boolean grid; row (D, T) stars node g iff g is in D."""
    grid = np.zeros((params.subpacketization, params.num_nodes), dtype=bool)
    for r, (d, _) in enumerate(row_labels(params)):
        for g in d:
            grid[r, g - 1] = True
    return grid


def build_user_retrieve(design: Design, cached_nodes: int) -> np.ndarray:
    """F x users boolean grid; row (D, T) stars user B iff B meets D."""
    params = DesignSchemeParams.from_design(design, cached_nodes)
    grid = np.zeros((params.subpacketization, design.num_blocks), dtype=bool)
    block_sets = [frozenset(b) for b in design.blocks]
    for r, (d, _) in enumerate(row_labels(params)):
        dset = frozenset(d)
        for k, b in enumerate(block_sets):
            if dset & b:
                grid[r, k] = True
    return grid


def _check_unique_t_subsets(design: Design, strength: int) -> None:
    seen = set()
    for block in design.blocks:
        for sub in itertools.combinations(block, strength):
            if sub in seen:
                raise InconsistentDesignError(
                    f"t-subset {set(sub)} appears in two blocks of an index-1 design"
                )
            seen.add(sub)


def build_user_delivery(design: Design, cached_nodes: int) -> Pda:
    """Delivery array: the cell at row (D, T), column B is a star when B meets
    D; otherwise it carries the subset D + B(T).

    For index 1 the subset alone is the message id.  For index > 1 every id is
    the pair (D + B(T), copy), where the copy number counts occurrences of the
    split (D, B(T)) scanning columns left to right and each column top to
    bottom.
    """
    params = DesignSchemeParams.from_design(design, cached_nodes)
    lam = params.index
    labels = row_labels(params)
    if lam == 1:
        _check_unique_t_subsets(design, params.strength)

    # (union, D) per non-star cell; D fixes the split since D and B(T) are disjoint.
    raw = [[None] * design.num_blocks for _ in range(len(labels))]
    for r, (d, tt) in enumerate(labels):
        dset = frozenset(d)
        for k, block in enumerate(design.blocks):
            if dset & frozenset(block):
                continue
            selected = tuple(block[i - 1] for i in tt)
            union = tuple(sorted(d + selected))
            raw[r][k] = (union, d)

    cells = [[STAR] * design.num_blocks for _ in range(len(labels))]
    if lam == 1:
        for r in range(len(labels)):
            for k in range(design.num_blocks):
                if raw[r][k] is not None:
                    cells[r][k] = SubsetId(raw[r][k][0])
    else:
        copies = {}
        for k in range(design.num_blocks):
            for r in range(len(labels)):
                if raw[r][k] is None:
                    continue
                union, d = raw[r][k]
                n = copies.get((union, d), 0) + 1
                copies[(union, d)] = n
                cells[r][k] = CountedSubsetId(union, n)
    return Pda(cells)


@dataclass
class DesignCachingScheme:
    params: DesignSchemeParams
    design: Design
    row_labels: tuple
    node_placement: np.ndarray
    user_retrieve: np.ndarray
    user_delivery: Pda

    @property
    def num_users(self) -> int:
        return self.params.num_users

    @property
    def subpacketization(self) -> int:
        return self.params.subpacketization

    @property
    def num_nodes(self) -> int:
        return self.params.num_nodes

    @property
    def user_blocks(self) -> tuple:
        return self.design.blocks

    def user_node_indices(self, user: int) -> tuple:
        """0-based node columns reachable by user ``user`` (0-based)."""
        return tuple(g - 1 for g in self.design.blocks[user])

    @property
    def counted_messages(self) -> int:
        return self.user_delivery.num_ids

    @cached_property
    def message_bound(self) -> int:
        p = self.params
        if p.cached_nodes == 0:
            # Pure unicast: one message per (t-subset, copy) pair, exactly.
            return p.index * math.comb(p.num_nodes, p.strength)
        return p.index * math.comb(p.num_nodes, p.strength + p.cached_nodes) - (
            p.num_users * math.comb(p.access_degree, p.strength + p.cached_nodes)
        )

    @property
    def guaranteed_known(self) -> int:
        """Multicast messages every user can rebuild from its own cache."""
        return self.params.index * redundancy_count(self.params)


def build_scheme(design: Design, cached_nodes: int, num_files: Optional[int] = None) -> DesignCachingScheme:
    params = DesignSchemeParams.from_design(design, cached_nodes, num_files)
    return DesignCachingScheme(
        params=params,
        design=design,
        row_labels=row_labels(params),
        node_placement=build_node_placement(params),
        user_retrieve=build_user_retrieve(design, cached_nodes),
        user_delivery=build_user_delivery(design, cached_nodes),
    )


def redundancy_count(params: DesignSchemeParams) -> int:
    """Per-user count of message subsets meeting the user's block in at least
    t+1 but fewer than t+cached_nodes points; those multicasts are already
    reconstructible from the user's cache."""
    g, l, t, mu = (
        params.num_nodes, params.access_degree, params.strength, params.cached_nodes,
    )
    if mu < 1:
        return 0
    return sum(
        math.comb(l, t + i) * math.comb(g - l, mu - i) for i in range(1, mu)
    )


def achievable_load(params: DesignSchemeParams) -> Fraction:
    """Worst-case delivery load after replacing the multicast batch with an
    erasure-coded batch that skips the per-user reconstructible messages.

    With no caching the closed form degenerates; the scheme then unicasts
    every packet and the load equals the user count.
    """
    g, l, t, lam, mu = (
        params.num_nodes, params.access_degree, params.strength,
        params.index, params.cached_nodes,
    )
    if mu == 0:
        return Fraction(params.num_users)
    numerator = (
        lam * math.comb(g, t + mu)
        - lam * sum(math.comb(l, t + i) * math.comb(g - l, mu - i) for i in range(1, mu))
        - params.num_users * math.comb(l, t + mu)
    )
    return Fraction(numerator, math.comb(g, mu) * math.comb(l, t))


def shared_link_tradeoff(params: DesignSchemeParams):
    """(memory ratio, load) of the scheme re-read as a single shared-link
    system where each user's cache is its retrievable content."""
    g, l, mu = params.num_nodes, params.access_degree, params.cached_nodes
    memory = 1 - Fraction(math.comb(g - l, mu), math.comb(g, mu))
    return memory, achievable_load(params)


def known_messages(scheme: DesignCachingScheme, user) -> frozenset:
    """Canonical ids of the multicast messages user ``user`` can rebuild from
    cache alone: every cell of the id sits in a row starred for the user.

    ``user`` is a 0-based column index or a block tuple.
    """
    if not isinstance(user, int):
        block = tuple(sorted(user))
        try:
            user = scheme.design.blocks.index(block)
        except ValueError:
            raise InvalidInputError(f"no user with block {block}") from None
    pda = scheme.user_delivery
    starred = scheme.user_retrieve[:, user]
    canon = pda.canonical_index
    known = set()
    for ident, cells in pda.id_positions.items():
        if all(starred[j] for j, _ in cells):
            known.add(canon[ident])
    return frozenset(known)
