#!/usr/bin/env python3
"""Test suite for sl2 fusion ranks, the four (1^j, t) algorithms and the memo table."""

import json
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import mpmath

from app.errors import ContractViolation, IntegralityError, PrecisionExhausted
from app.fusion.cache import FusionCache, fusion_cache
from app.fusion.ranks import (
    choose, fuse_channels, fusion_rank_small, nonvanishing_criterion, rank, rank_1t, rank_by_reflection,
    rank_closed_form, rank_infinity, rank_infinity_table, reflection_terms,
)
from app.fusion.verlinde import verlinde_rank_numeric, verlinde_sum

ROW_15 = [0, 1430, 0, 2002, 0, 1638, 0, 910, 0, 350, 0, 90, 0, 14, 0, 1]


class TestFusionRules(unittest.TestCase):
    """Base cases and factorization."""

    def test_small_fusion_rules(self):
        """Test the one, two and three point rules."""
        print("\n🔧 Testing small fusion rules...")

        self.assertEqual(fusion_rank_small(4, [0]), 1)
        self.assertEqual(fusion_rank_small(4, [2]), 0)
        self.assertEqual(fusion_rank_small(4, [3, 3]), 1)
        self.assertEqual(fusion_rank_small(4, [3, 1]), 0)
        # 2+2+2 exceeds 2*level
        self.assertEqual(fusion_rank_small(2, [2, 2, 2]), 0)
        self.assertEqual(fusion_rank_small(3, [2, 2, 2]), 1)
        self.assertEqual(fusion_rank_small(1, [1, 1, 1]), 0)
        self.assertEqual(fusion_rank_small(1, [1, 1, 0]), 1)

        with self.assertRaises(ContractViolation):
            fusion_rank_small(2, [1, 1, 1, 1])

        print("   ✅ Fusion rules correct")

    def test_rank_377(self):
        """Test r_3(15, 3) through factorization."""
        print("\n🧮 Testing rank(3, 1^15 3)...")

        self.assertEqual(rank(3, [1] * 15 + [3]), 377)
        # order of the weights does not matter
        self.assertEqual(rank(3, [3] + [1] * 15), 377)

        print("   ✅ 377")

    def test_channel_multiplicities(self):
        """The channel counts after fusing 1^15 hold every r_3(15, t)."""
        channels = fuse_channels(3, [1] * 15)
        self.assertEqual(channels[3], 377)
        self.assertEqual(channels, {t: rank_1t(3, 15, t) for t in (1, 3)})
        self.assertEqual(fuse_channels(3, []), {0: 1})

    def test_long_vectors(self):
        """Test weight vectors much longer than the interpreter recursion limit."""
        print("\n📏 Testing 400 and 2000 weights...")

        self.assertEqual(rank(2, [1] * 400), 2 ** 199)
        self.assertEqual(rank(3, [1] * 2000), rank_1t(3, 2000, 0))
        self.assertEqual(rank(4, [4] * 1200), 1)

        print("   ✅ No recursion limit")

    def test_odd_sum_and_propagation(self):
        """Test the odd sum rule and dropping zero weights."""
        print("\n🧪 Testing odd sums and propagation...")

        self.assertEqual(rank(2, [1, 1, 1]), 0)
        self.assertEqual(rank(5, [1] * 7), 0)
        self.assertEqual(rank(3, [1, 1, 0, 0, 0]), rank(3, [1, 1]))
        self.assertEqual(rank(3, [0, 0, 0, 0]), 1)

        print("   ✅ Odd sums vanish and zeros propagate")

    def test_level_one_ranks(self):
        """At level one every even set of 1s has rank one."""
        print("\n🔍 Testing level one...")

        for n in range(2, 18, 2):
            self.assertEqual(rank(1, [1] * n), 1)

        print("   ✅ rank 1 throughout")

    def test_weight_bounds(self):
        """Test that weights outside [0, level] are rejected."""
        print("\n🚫 Testing weight bounds...")

        with self.assertRaises(ContractViolation) as ctx:
            rank(2, [3, 1])
        self.assertEqual(ctx.exception.contract, "weight-bound")
        with self.assertRaises(ContractViolation):
            rank(0, [0, 0])
        with self.assertRaises(ContractViolation):
            rank(2, [-1, 1])

        print("   ✅ Out of range weights rejected")

    def test_nonvanishing_criterion_agrees_with_rank(self):
        """Test the subset criterion against factorization on small vectors."""
        print("\n🔍 Testing nonvanishing criterion...")

        samples = [
            (1, [1, 1, 1, 1]), (2, [2, 2, 1, 1]), (2, [2, 1, 1]), (3, [3, 3, 3, 3]),
            (3, [3, 3, 3, 1]), (2, [2, 2, 2, 2, 2]), (4, [4, 4, 1, 1]), (3, [3, 1, 1, 1]),
            (1, [1, 1, 1]), (5, [5, 5, 5, 1, 2]),
        ]
        for level, weights in samples:
            self.assertEqual(nonvanishing_criterion(level, weights), rank(level, weights) > 0,
                             f"level {level}, weights {weights}")

        print(f"   ✅ {len(samples)} vectors agree")


class TestOneTFamily(unittest.TestCase):
    """The four routes to r_level(j, t)."""

    def test_recurrence_values(self):
        """Test spot values of the Pascal recurrence."""
        print("\n📊 Testing r_level(j, t) recurrence...")

        self.assertEqual(rank_1t(3, 15, 3), 377)
        self.assertEqual(rank_1t(2, 8, 0), 8)
        self.assertEqual(rank_1t(2, 7, 1), 2 ** 3)
        self.assertEqual(rank_1t(2, 6, 2), 4)
        self.assertEqual(rank_1t(4, 0, 0), 1)
        self.assertEqual(rank_1t(4, 0, 2), 0)
        self.assertEqual(rank_1t(4, 5, 7), 0)

        for level in range(1, 7):
            for k in range(1, level + 1):
                self.assertEqual(rank_1t(level, k, k), 1)
            self.assertEqual(rank_1t(level, level + 2, level), level)

        print("   ✅ Recurrence values correct")

    def test_closed_form_and_reflection(self):
        """Test the binomial sums and the reflection sum on the 377 example."""
        print("\n🧮 Testing closed form and reflections...")

        self.assertEqual(rank_closed_form(3, 15, 3), 377)
        terms = reflection_terms(3, 15, 3)
        self.assertEqual([sign * value for sign, _, value in terms], [2002, -1638, 14, -1])
        self.assertEqual(rank_by_reflection(3, 15, 3), 377)

        print("   ✅ 2002 - 1638 + 14 - 1 = 377")

    def test_algorithms_agree(self):
        """Test that recurrence, closed form, reflection and factorization agree."""
        print("\n🔗 Testing four-way agreement...")

        checked = 0
        for level in range(1, 6):
            for j in range(0, 17):
                for t in range(level + 1):
                    expected = rank_1t(level, j, t)
                    self.assertEqual(rank_closed_form(level, j, t), expected, (level, j, t))
                    self.assertEqual(rank_by_reflection(level, j, t), expected, (level, j, t))
                    if j + t > 0:
                        self.assertEqual(rank(level, [1] * j + [t]), expected, (level, j, t))
                    checked += 1

        print(f"   ✅ {checked} entries agree")

    def test_large_level_matches_infinity(self):
        """For level >= j the level is irrelevant."""
        print("\n♾️  Testing large level limit...")

        for j in range(0, 12):
            for t in range(0, j + 1):
                self.assertEqual(rank_1t(j + 1, j, t), rank_infinity(j, t))
                self.assertEqual(rank_closed_form(max(j, t, 1), j, t), rank_infinity(j, t))

        print("   ✅ r_level = r_inf for level >= j")

    def test_closed_form_column_bounds(self):
        """Test that a column outside [0, level] is rejected."""
        with self.assertRaises(ContractViolation):
            rank_closed_form(2, 6, 3)
        with self.assertRaises(ContractViolation):
            reflection_terms(2, 6, -1)


class TestRankInfinity(unittest.TestCase):
    """The level-free table."""

    def test_row_15(self):
        """Test row 15 of r_inf."""
        print("\n📊 Testing r_inf row 15...")

        self.assertEqual([rank_infinity(15, t) for t in range(16)], ROW_15)

        print("   ✅ Row 15 matches")

    def test_catalan_and_seeds(self):
        """Test the Catalan column and the diagonal."""
        catalan = [1, 1, 2, 5, 14, 42, 132]
        self.assertEqual([rank_infinity(2 * k, 0) for k in range(7)], catalan)
        self.assertEqual(rank_infinity(8, 0), 14)
        for j in range(20):
            self.assertEqual(rank_infinity(j, j), 1)
        self.assertEqual(rank_infinity(4, 6), 0)
        self.assertEqual(rank_infinity(5, 2), 0)

    def test_formula_matches_recurrence(self):
        """Test the closed formula against the recurrence table."""
        table = rank_infinity_table(20)
        for j, row in enumerate(table):
            self.assertEqual(row, [rank_infinity(j, t) for t in range(j + 1)])

    def test_negative_arguments(self):
        with self.assertRaises(ContractViolation):
            rank_infinity(-1, 0)

    def test_choose_convention(self):
        self.assertEqual(choose(5, -1), 0)
        self.assertEqual(choose(5, 6), 0)
        self.assertEqual(choose(6, 3), 20)


class TestVerlinde(unittest.TestCase):
    """Numeric Verlinde sums."""

    def test_verlinde_377(self):
        """Test the Verlinde sum on the 377 example."""
        print("\n🌀 Testing Verlinde formula...")

        self.assertEqual(verlinde_rank_numeric(3, [1] * 15 + [3]), 377)
        self.assertEqual(verlinde_rank_numeric(4, [3, 3]), 1)
        self.assertEqual(verlinde_rank_numeric(2, [1, 1, 1]), 0)

        print("   ✅ Verlinde sum rounds to 377")

    def test_verlinde_matches_recurrence(self):
        """Test the Verlinde sum against the recurrence on a grid."""
        for level in range(1, 5):
            for j in range(1, 11):
                for t in range(level + 1):
                    if (j + t) % 2 == 0:
                        self.assertEqual(verlinde_rank_numeric(level, [1] * j + [t]), rank_1t(level, j, t))

    def test_precision_exhausted(self):
        """A sum that never rounds raises PrecisionExhausted after the retries."""
        print("\n⚠️  Testing precision retries...")

        with patch('app.fusion.verlinde.verlinde_sum', return_value=mpmath.mpf('2.5')) as mocked:
            with self.assertRaises(PrecisionExhausted):
                verlinde_rank_numeric(2, [1, 1])
            self.assertGreaterEqual(mocked.call_count, 2)
        self.assertTrue(issubclass(PrecisionExhausted, IntegralityError))

        print("   ✅ PrecisionExhausted raised")

    def test_verlinde_sum_value(self):
        """Level one, two points of weight one: the sum is one."""
        with mpmath.workprec(128):
            value = verlinde_sum(1, [1, 1])
        self.assertAlmostEqual(float(value), 1.0, places=10)

    def test_negative_genus(self):
        with self.assertRaises(ContractViolation):
            verlinde_rank_numeric(2, [1, 1], genus=-1)


class TestFusionCache(unittest.TestCase):
    """Memo table behaviour and JSON persistence."""

    def setUp(self):
        """Set up test environment."""
        self.test_dir = Path(tempfile.mkdtemp())
        self.cache_file = self.test_dir / "fusion_cache.json"
        print(f"🧪 Test setup complete")
        print(f"   Cache file: {self.cache_file}")

    def tearDown(self):
        """Clean up test environment."""
        if self.test_dir.exists():
            shutil.rmtree(self.test_dir)
        print("🗑️  Test cleanup complete")

    def test_get_or_insert_keeps_first_value(self):
        """Test that a stored value is returned without recomputing."""
        cache = FusionCache()
        calls = []

        def compute():
            calls.append(1)
            return 5

        self.assertEqual(cache.get_or_insert((2, (2, 2, 1, 1)), compute), 5)
        self.assertEqual(cache.get_or_insert((2, (2, 2, 1, 1)), lambda: 99), 5)
        self.assertEqual(len(calls), 1)
        self.assertEqual(len(cache), 1)

    def test_save_and_load(self):
        """Test that the memo table survives a save and load."""
        print("\n💾 Testing cache persistence...")

        rank(3, [1] * 10 + [2])
        fusion_cache.save(self.cache_file)

        with open(self.cache_file, 'r', encoding='utf-8') as f:
            data = json.load(f)
        self.assertIn("ranks", data)
        self.assertTrue(data["ranks"])

        fresh = FusionCache()
        loaded = fresh.load(self.cache_file)
        self.assertEqual(loaded, len(data["ranks"]))
        self.assertEqual(dict(fresh.items()), dict(fusion_cache.items()))

        print(f"   ✅ {loaded} entries reloaded")

    def test_load_missing_and_corrupt(self):
        """Test that missing or corrupt files load nothing."""
        cache = FusionCache()
        self.assertEqual(cache.load(self.test_dir / "absent.json"), 0)

        self.cache_file.write_text("{not json", encoding='utf-8')
        self.assertEqual(cache.load(self.cache_file), 0)
        self.assertEqual(len(cache), 0)

    def test_load_wrong_shapes(self):
        """Test that valid JSON of the wrong shape is rejected or filtered."""
        print("\n🧹 Testing malformed cache contents...")

        cache = FusionCache()
        for payload in ([1, 2, 3], "ranks", {"ranks": [1]}, {}):
            self.cache_file.write_text(json.dumps(payload), encoding='utf-8')
            with patch('sys.stderr'):
                self.assertEqual(cache.load(self.cache_file), 0)
        self.assertEqual(len(cache), 0)

        entries = {"2|1,1": 1, "3|2,1,1": "many", "bad-key": 4, "2|2,2": -1, "1|1,1,1,1": True, "3|3,3": 1}
        self.cache_file.write_text(json.dumps({"ranks": entries}), encoding='utf-8')
        with patch('sys.stderr'):
            self.assertEqual(cache.load(self.cache_file), 2)
        self.assertEqual(dict(cache.items()), {(2, (1, 1)): 1, (3, (3, 3)): 1})

        print("   ✅ Only well-formed entries merged")

    def test_level_rows_grow(self):
        """Test that recurrence rows are extended in place."""
        cache = FusionCache()

        def extend(rows, upto):
            while len(rows) <= upto:
                rows.append([len(rows)])

        self.assertEqual(len(cache.level_rows(2, 3, extend)), 4)
        self.assertEqual(len(cache.level_rows(2, 6, extend)), 7)
        cache.clear()
        self.assertEqual(len(cache.level_rows(2, 0, extend)), 1)


if __name__ == "__main__":
    unittest.main(verbosity=2)
