import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rangemodes import (
    PCN,
    SIMPLE,
    AuditError,
    Config,
    InvariantError,
    ModesResult,
    NaiveSeq,
    RangeModeEngine,
)


def ceil_root(num: int, den: int, p: int, q: int) -> int:
    """Smallest k with k**q * den**p >= num**p (independent of the engine)."""
    k = 0
    while k**q * den**p < num**p:
        k += 1
    return k


def region_map(engine):
    return {r.name: r for r in engine.regions()}


class TestConfig:
    def test_defaults(self):
        cfg = Config()
        assert cfg.alpha == Fraction(1, 3)
        assert cfg.strategy == SIMPLE
        assert not cfg.audit_mode

    @pytest.mark.parametrize("alpha", [0, 1, Fraction(3, 2), Fraction(-1, 3)])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(ValueError):
            Config(alpha=alpha)

    def test_alpha_float_rejected(self):
        # Binary floats expand to astronomical denominators; refuse them.
        with pytest.raises(ValueError):
            Config(alpha=0.333)

    def test_alpha_string_fraction(self):
        assert Config(alpha=Fraction("1/2")).alpha == Fraction(1, 2)

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            Config(strategy="bogus")


class TestConstruction:
    def test_empty(self):
        engine = RangeModeEngine()
        assert len(engine) == 0
        assert engine.block_sizes() == [0] * len(engine.block_sizes())

    def test_small_sequence_modes(self):
        engine = RangeModeEngine([1, 2, 1])
        assert engine.modes(0, 2) == ModesResult(2, (1,))

    def test_nine_elements_layout(self):
        engine = RangeModeEngine([4] * 9)
        cur = region_map(engine)["cur"]
        assert cur.slots == ceil_root(9, 1, 1, 3) == 3
        assert cur.capacity == ceil_root(9, 1, 2, 3) == 5
        sizes = engine.block_sizes()
        assert sizes[cur.start : cur.end] == [5, 4, 0]

    def test_len(self):
        assert len(RangeModeEngine([1, 2])) == 2

    def test_pcn_region_formulas(self):
        engine = RangeModeEngine(range(64), Config(strategy=PCN))
        regions = region_map(engine)
        n0 = engine.n0
        for name, num, den in [
            ("prev2", n0, 4),
            ("prev", n0, 2),
            ("cur", n0, 1),
            ("next", 2 * n0, 1),
            ("next2", 4 * n0, 1),
        ]:
            assert regions[name].slots == ceil_root(num, den, 1, 3), name
            assert regions[name].capacity == ceil_root(num, den, 2, 3), name
        order = [r.name for r in engine.regions()]
        assert order == ["prev2", "prev", "cur", "next", "next2"]

    def test_simple_has_three_regions(self):
        engine = RangeModeEngine(range(10))
        assert [r.name for r in engine.regions()] == ["prev", "cur", "next"]

    def test_symbol_validation(self):
        with pytest.raises(ValueError):
            RangeModeEngine([-1])
        engine = RangeModeEngine()
        with pytest.raises(ValueError):
            engine.insert(0, -5)
        with pytest.raises(ValueError):
            engine.insert(0, 1 << 64)


class TestInsert:
    def test_insert_middle(self):
        engine = RangeModeEngine([1, 2])
        engine.insert(1, 3)
        assert engine.to_list() == [1, 3, 2]
        assert engine.modes(0, 2) == ModesResult(1, (1, 2, 3))

    def test_insert_into_empty(self):
        engine = RangeModeEngine()
        engine.insert(0, 7)
        assert len(engine) == 1
        assert engine.modes(0, 0) == ModesResult(1, (7,))

    def test_insert_front_and_append(self):
        engine = RangeModeEngine([5, 6, 7])
        engine.insert(0, 9)
        engine.insert(4, 8)
        assert engine.to_list() == [9, 5, 6, 7, 8]
        assert engine.audit().ok

    def test_bounds(self):
        engine = RangeModeEngine([1])
        with pytest.raises(IndexError):
            engine.insert(2, 0)
        with pytest.raises(IndexError):
            engine.insert(-1, 0)

    def test_doubling_reset_fires_and_answers_survive(self):
        config = Config(strategy=PCN, audit_mode=True)
        engine = RangeModeEngine([0] * 16, config)
        oracle = NaiveSeq([0] * 16)
        rng = random.Random(2)
        for k in range(2 * engine.n0):
            pos = rng.randint(0, len(oracle))
            sym = rng.randrange(5)
            engine.insert(pos, sym)
            oracle.insert_at(pos, sym)
        assert ("double", 32) in engine.reset_events
        for _ in range(20):
            lo = rng.randrange(len(oracle))
            hi = rng.randint(lo, len(oracle) - 1)
            assert engine.modes(lo, hi) == oracle.modes(lo, hi)
        assert engine.audit().ok


class TestDelete:
    def test_delete_middle(self):
        engine = RangeModeEngine([1, 2, 1])
        assert engine.delete(1) == 2
        assert engine.modes(0, 1) == ModesResult(2, (1,))

    def test_delete_only_element(self):
        engine = RangeModeEngine([3])
        assert engine.delete(0) == 3
        assert len(engine) == 0

    def test_bounds(self):
        engine = RangeModeEngine()
        with pytest.raises(IndexError):
            engine.delete(0)

    def test_halving_reset_fires_and_answers_survive(self):
        config = Config(strategy=PCN, audit_mode=True)
        engine = RangeModeEngine(range(64), config)
        oracle = NaiveSeq(range(64))
        rng = random.Random(3)
        while len(oracle) > 30:
            pos = rng.randrange(len(oracle))
            assert engine.delete(pos) == oracle.delete_at(pos)
        assert any(kind == "halve" for kind, _ in engine.reset_events)
        for _ in range(20):
            lo = rng.randrange(len(oracle))
            hi = rng.randint(lo, len(oracle) - 1)
            assert engine.modes(lo, hi) == oracle.modes(lo, hi)
        assert engine.audit().ok


class TestModes:
    def test_hand_counted(self):
        engine = RangeModeEngine([1, 2, 1, 2, 3])
        assert engine.modes(0, 4) == ModesResult(2, (1, 2))

    def test_singleton(self):
        engine = RangeModeEngine([9])
        assert engine.modes(0, 0) == ModesResult(1, (9,))

    def test_mode_inside_blocks_margin_empty(self):
        # Layout at n0=5 packs the cur region as [b,a,a | a,b]; the full-range
        # query has no margin, so the answer must come from the summary's top
        # entry (the step the uncorrected scan-only computation would miss).
        b, a = 1, 0
        engine = RangeModeEngine([b, a, a, a, b])
        cur = region_map(engine)["cur"]
        sizes = engine.block_sizes()
        assert sizes[cur.start : cur.end] == [3, 2]
        assert engine.modes(0, 4) == ModesResult(3, (a,))

    def test_mode_inside_blocks_with_margin(self):
        b, a = 1, 0
        engine = RangeModeEngine([b, a, a, a, b])
        # Range [1, 4]: only the second block is fully contained; the first
        # block's tail [a, a] lands in the margin.
        assert engine.modes(1, 4) == ModesResult(3, (a,))

    def test_margin_only_range(self):
        engine = RangeModeEngine([1, 2, 1, 2, 3])
        for lo in range(5):
            for hi in range(lo, 5):
                counted = {}
                for sym in engine.to_list()[lo : hi + 1]:
                    counted[sym] = counted.get(sym, 0) + 1
                top = max(counted.values())
                want = ModesResult(
                    top, tuple(sorted(s for s, c in counted.items() if c == top))
                )
                assert engine.modes(lo, hi) == want

    def test_bounds(self):
        engine = RangeModeEngine([1])
        with pytest.raises(IndexError):
            engine.modes(0, 1)
        with pytest.raises(IndexError):
            engine.modes(-1, 0)
        with pytest.raises(IndexError):
            RangeModeEngine().modes(0, 0)

    def test_mode_projection(self):
        assert RangeModeEngine([1, 2, 1]).mode(0, 2) == (2, 1)
        assert RangeModeEngine([9]).mode(0, 0) == (1, 9)
        # Smallest id among tied modes.
        assert RangeModeEngine([1, 0]).mode(0, 1) == (1, 0)


class TestMoves:
    def make_engine(self):
        # n0=3 layout: cur region holds [10,11,12] in its first block.
        engine = RangeModeEngine([10, 11, 12])
        cur = region_map(engine)["cur"]
        assert engine.block_sizes()[cur.start : cur.end] == [3, 0]
        return engine, cur

    def test_move_right_then_left_is_identity(self):
        engine, cur = self.make_engine()
        before = engine.block_sizes()
        engine.move_right(cur.start)
        sizes = engine.block_sizes()
        assert sizes[cur.start : cur.end] == [2, 1]
        assert engine.to_list() == [10, 11, 12]
        engine.move_left(cur.start + 1)
        assert engine.block_sizes() == before
        assert engine.audit().ok

    def test_move_updates_summary_cells(self):
        engine, cur = self.make_engine()
        engine.move_right(cur.start)
        table = engine._table
        assert dict(table.cell(cur.start, cur.start).items()) == {10: 1, 11: 1}
        assert dict(table.cell(cur.start + 1, cur.start + 1).items()) == {12: 1}

    def test_move_left_appends_to_previous(self):
        engine, cur = self.make_engine()
        engine.move_right(cur.start)  # blocks [10,11] [12]
        engine.move_left(cur.start + 1)  # first of right block joins the left
        assert engine.block_sizes()[cur.start : cur.end] == [3, 0]
        assert engine.to_list() == [10, 11, 12]

    def test_move_from_empty_block(self):
        engine, cur = self.make_engine()
        with pytest.raises(InvariantError):
            engine.move_right(cur.start + 1)
        with pytest.raises(InvariantError):
            engine.move_left(cur.end)

    def test_move_bounds(self):
        engine, _ = self.make_engine()
        slots = len(engine.block_sizes())
        with pytest.raises(IndexError):
            engine.move_left(0)
        with pytest.raises(IndexError):
            engine.move_right(slots - 1)


class TestRegionTransfers:
    def make_engine(self):
        return RangeModeEngine([0, 1, 2], Config(strategy=PCN))

    def totals(self, engine):
        return {
            r.name: engine._region_total(r) for r in engine.regions()
        }

    def test_transfer_moves_one_element_right(self):
        engine = self.make_engine()
        engine._transfer_last_right("cur", "next")
        assert self.totals(engine) == {
            "prev2": 0,
            "prev": 0,
            "cur": 2,
            "next": 1,
            "next2": 0,
        }
        assert engine.to_list() == [0, 1, 2]
        assert engine.audit().ok

    def test_transfer_moves_one_element_left(self):
        engine = self.make_engine()
        engine._transfer_first_left("prev", "cur")
        assert self.totals(engine)["prev"] == 1
        assert self.totals(engine)["cur"] == 2
        assert engine.to_list() == [0, 1, 2]
        assert engine.audit().ok

    def test_transfer_from_empty_region_is_noop(self):
        engine = self.make_engine()
        before = engine.block_sizes()
        engine._transfer_last_right("prev", "cur")
        assert engine.block_sizes() == before

    def test_transfer_chain_crosses_empty_blocks(self):
        engine = self.make_engine()
        # prev <- cur puts an element into prev's last slot even though every
        # intervening block is empty; flattened order must be exact.
        engine._transfer_first_left("prev", "cur")
        prev = region_map(engine)["prev"]
        sizes = engine.block_sizes()
        assert sizes[prev.end - 1] == 1
        assert engine.to_list() == [0, 1, 2]

    def test_transfer_roundtrip_restores_totals(self):
        engine = self.make_engine()
        engine._transfer_first_left("prev", "cur")
        engine._transfer_last_right("prev", "cur")  # single hop back into cur
        assert self.totals(engine) == {
            "prev2": 0,
            "prev": 0,
            "cur": 3,
            "next": 0,
            "next2": 0,
        }
        assert engine.to_list() == [0, 1, 2]
        assert engine.audit().ok


class TestResets:
    def test_no_reset_strictly_inside_window(self):
        engine = RangeModeEngine(range(64), Config(strategy=PCN, audit_mode=True))
        rng = random.Random(4)
        for _ in range(600):
            if len(engine) <= 50 or (len(engine) < 90 and rng.random() < 0.5):
                engine.insert(rng.randint(0, len(engine)), rng.randrange(4))
            else:
                engine.delete(rng.randrange(len(engine)))
        assert engine.reset_events == []
        assert engine.audit().ok

    def test_doubling_resets_walk_up(self):
        engine = RangeModeEngine((), Config(strategy=PCN, audit_mode=True))
        for k in range(70):
            engine.insert(len(engine), k % 3)
        kinds = [kind for kind, _ in engine.reset_events]
        assert "double" in kinds
        lengths = [length for kind, length in engine.reset_events if kind == "double"]
        assert lengths == [2, 4, 8, 16, 32, 64]

    def test_halving_resets_walk_down(self):
        engine = RangeModeEngine(range(64), Config(strategy=PCN, audit_mode=True))
        while len(engine):
            engine.delete(len(engine) - 1)
        halvings = [length for kind, length in engine.reset_events if kind == "halve"]
        assert halvings[:4] == [32, 16, 8, 4]

    def test_simple_strategy_resets_too(self):
        engine = RangeModeEngine((), Config(audit_mode=True))
        for k in range(40):
            engine.insert(0, k % 2)
        assert ("double", 32) in engine.reset_events
        assert engine.audit().ok


class TestAudit:
    def test_fresh_engine_passes(self):
        assert RangeModeEngine([1, 2, 3]).audit().ok

    def test_after_random_ops(self):
        rng = random.Random(11)
        engine = RangeModeEngine((), Config(strategy=PCN))
        for _ in range(400):
            n = len(engine)
            if n == 0 or rng.random() < 0.6:
                engine.insert(rng.randint(0, n), rng.randrange(6))
            else:
                engine.delete(rng.randrange(n))
        assert engine.audit().ok

    def test_detects_corrupted_cell(self):
        engine = RangeModeEngine([1, 2, 3, 4, 5])
        engine._table.cell(0, 0).increment(7)  # bypass the engine bookkeeping
        report = engine.audit()
        assert not report.ok
        assert "cell" in report.message

    def test_detects_partition_drift(self):
        engine = RangeModeEngine([1, 2, 3])
        engine._sizes.adjust(0, 1)
        report = engine.audit()
        assert not report.ok
        assert "sum" in report.message

    def test_capacity_checked_in_audit_mode(self):
        engine = RangeModeEngine([1, 2, 3], Config(audit_mode=True))
        cur = region_map(engine)["cur"]
        engine._sizes.adjust(cur.end - 1, cur.capacity + 1)
        with pytest.raises(AuditError):
            engine._check_capacities()


class TestEquivalence:
    def run_ops(self, strategy, seed):
        rng = random.Random(seed)
        engine = RangeModeEngine((), Config(strategy=strategy))
        answers = []
        for _ in range(700):
            n = len(engine)
            roll = rng.random()
            if n == 0 or (roll < 0.45 and n < 150):
                engine.insert(rng.randint(0, n), rng.randrange(6))
            elif roll < 0.65:
                engine.delete(rng.randrange(n))
            else:
                lo = rng.randrange(n)
                answers.append(engine.modes(lo, rng.randint(lo, n - 1)))
        return answers

    def test_strategies_agree(self):
        for seed in (0, 1):
            assert self.run_ops(SIMPLE, seed) == self.run_ops(PCN, seed)

    @pytest.mark.parametrize("strategy", [SIMPLE, PCN])
    @pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 5)])
    def test_oracle_equivalence_mini_fuzz(self, strategy, alpha):
        rng = random.Random(17)
        engine = RangeModeEngine((), Config(alpha=alpha, strategy=strategy, audit_mode=True))
        oracle = NaiveSeq()
        for step in range(1500):
            n = len(oracle)
            roll = rng.random()
            if n == 0 or (roll < 0.45 and n < 120):
                pos = rng.randint(0, n)
                sym = rng.randrange(5)
                engine.insert(pos, sym)
                oracle.insert_at(pos, sym)
            elif roll < 0.65:
                pos = rng.randrange(n)
                assert engine.delete(pos) == oracle.delete_at(pos)
            else:
                lo = rng.randrange(n)
                hi = rng.randint(lo, n - 1)
                assert engine.modes(lo, hi) == oracle.modes(lo, hi)
        assert engine.audit().ok

    def test_reserved_regions_stay_empty(self):
        rng = random.Random(23)
        engine = RangeModeEngine((), Config(strategy=PCN))
        for _ in range(500):
            n = len(engine)
            if n == 0 or rng.random() < 0.6:
                engine.insert(rng.randint(0, n), rng.randrange(4))
            else:
                engine.delete(rng.randrange(n))
        totals = {r.name: engine._region_total(r) for r in engine.regions()}
        assert totals["prev2"] == 0
        assert totals["next2"] == 0

    def test_sigma_prime_tracks_distinct_symbols(self):
        engine = RangeModeEngine([1, 1, 2, 5])
        assert engine.sigma_prime == 3
        engine.delete(3)
        assert engine.sigma_prime == 2

    @settings(max_examples=30, deadline=None)
    @given(
        st.sampled_from([SIMPLE, PCN]),
        st.lists(st.tuples(st.integers(0, 10**6), st.integers(0, 4)), max_size=50),
    )
    def test_property_any_interleaving_matches_oracle(self, strategy, ops):
        engine = RangeModeEngine((), Config(strategy=strategy, audit_mode=True))
        oracle = NaiveSeq()
        for raw, sym in ops:
            n = len(oracle)
            action = raw % 5
            if n == 0 or action < 2:
                pos = raw % (n + 1)
                engine.insert(pos, sym)
                oracle.insert_at(pos, sym)
            elif action == 2:
                pos = raw % n
                assert engine.delete(pos) == oracle.delete_at(pos)
            else:
                lo = raw % n
                hi = lo + (raw // 7) % (n - lo)
                assert engine.modes(lo, hi) == oracle.modes(lo, hi)
        assert engine.audit().ok
