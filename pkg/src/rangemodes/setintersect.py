"""Dynamic set-intersection queries reduced to range mode queries.

Each set S over a universe of ``u`` ids occupies one gadget of exactly
``2u`` sequence positions: the members ascending, the non-members ascending,
the non-members again, the members again.  Every universe element appears
exactly twice per gadget, so in the query range spanning the tail copy of
gadget ``i``, all full gadgets between, and the head copy of gadget ``j``,
an element ``x`` occurs ``2(j - i - 1) + [x in S_i] + [x in S_j]`` times.
The range modes therefore reach multiplicity ``2(j - i)`` exactly when the
two sets intersect, and the modes are then exactly the intersection.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from typing import Iterable, Sequence

from .engine import Config, RangeModeEngine


class SetFamily:
    """A family of dynamic sets with intersection queries via mode queries.

    Set indices are 1-based; universe members are the ids ``0..universe_size-1``.
    The number of sets and the universe are fixed at build time.
    """

    def __init__(
        self,
        sets: Sequence[Iterable[int]],
        universe_size: int,
        config: Config | None = None,
    ) -> None:
        if universe_size < 0:
            raise ValueError("universe_size must be non-negative")
        self._universe = universe_size
        self._members: list[list[int]] = []
        for idx, raw in enumerate(sets, start=1):
            members = sorted(raw)
            for a, b in zip(members, members[1:]):
                if a == b:
                    raise ValueError(f"set {idx} lists member {a} twice")
            if members and not (0 <= members[0] and members[-1] < universe_size):
                raise IndexError(f"set {idx} has members outside the universe")
            self._members.append(members)
        symbols: list[int] = []
        for members in self._members:
            symbols.extend(self._gadget(members))
        self.engine = RangeModeEngine(symbols, config)

    def _gadget(self, members: list[int]) -> list[int]:
        complement = sorted(set(range(self._universe)) - set(members))
        return members + complement + complement + members

    # ------------------------------------------------------------------
    # accessors
    # ------------------------------------------------------------------

    @property
    def universe_size(self) -> int:
        return self._universe

    @property
    def num_sets(self) -> int:
        return len(self._members)

    def members(self, k: int) -> list[int]:
        """Snapshot of set ``k``'s members, ascending."""
        self._check_set(k)
        return list(self._members[k - 1])

    def _check_set(self, k: int) -> None:
        if not 1 <= k <= len(self._members):
            raise IndexError(f"set index {k} out of range (1..{len(self._members)})")

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    def _query_range(self, i: int, j: int) -> tuple[int, int]:
        u = self._universe
        lo = 2 * i * u - len(self._members[i - 1])
        hi = 2 * (j - 1) * u + len(self._members[j - 1]) - 1
        return lo, hi

    def intersect(self, i: int, j: int) -> bool:
        """Whether sets ``i`` and ``j`` share a member (requires ``i < j``)."""
        self._check_set(i)
        self._check_set(j)
        if not i < j:
            raise ValueError(f"intersect requires i < j, got ({i}, {j})")
        lo, hi = self._query_range(i, j)
        if lo > hi:
            return False
        return self.engine.modes(lo, hi).multiplicity == 2 * (j - i)

    def enumerate_intersection(self, i: int, j: int) -> set[int]:
        """The members of ``S_i ∩ S_j`` (empty when the sets are disjoint)."""
        self._check_set(i)
        self._check_set(j)
        if not i < j:
            raise ValueError(f"intersect requires i < j, got ({i}, {j})")
        lo, hi = self._query_range(i, j)
        if lo > hi:
            return set()
        result = self.engine.modes(lo, hi)
        if result.multiplicity != 2 * (j - i):
            return set()
        return set(result.modes)

    # ------------------------------------------------------------------
    # updates
    # ------------------------------------------------------------------

    def add_member(self, k: int, x: int) -> None:
        """Add ``x`` to set ``k`` (four point updates inside gadget ``k``)."""
        self._check_set(k)
        if not 0 <= x < self._universe:
            raise IndexError(f"member {x} outside the universe")
        members = self._members[k - 1]
        rank_m = bisect_left(members, x)
        if rank_m < len(members) and members[rank_m] == x:
            raise ValueError(f"member {x} already in set {k}")
        base = 2 * (k - 1) * self._universe
        size = len(members)
        comp = self._universe - size
        rank_c = x - rank_m  # non-members below x
        engine = self.engine
        # Drop x from both complement copies (higher position first), then
        # insert it into both member copies.
        engine.delete(base + size + comp + rank_c)
        engine.delete(base + size + rank_c)
        engine.insert(base + rank_m, x)
        engine.insert(base + (size + 1) + 2 * (comp - 1) + rank_m, x)
        insort(members, x)

    def remove_member(self, k: int, x: int) -> None:
        """Remove ``x`` from set ``k`` (mirror of :meth:`add_member`)."""
        self._check_set(k)
        if not 0 <= x < self._universe:
            raise IndexError(f"member {x} outside the universe")
        members = self._members[k - 1]
        rank_m = bisect_left(members, x)
        if rank_m >= len(members) or members[rank_m] != x:
            raise ValueError(f"member {x} not in set {k}")
        base = 2 * (k - 1) * self._universe
        size = len(members)
        comp = self._universe - size
        rank_c = x - rank_m
        engine = self.engine
        engine.delete(base + size + 2 * comp + rank_m)
        engine.delete(base + rank_m)
        engine.insert(base + (size - 1) + rank_c, x)
        engine.insert(base + (size - 1) + (comp + 1) + rank_c, x)
        del members[rank_m]

    def gadget_symbols(self, k: int) -> list[int]:
        """Current sequence contents of gadget ``k`` (for audits and tests)."""
        self._check_set(k)
        base = 2 * (k - 1) * self._universe
        if self._universe == 0:
            return []
        return self.engine.to_list()[base : base + 2 * self._universe]
