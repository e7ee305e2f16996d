# Copyright (c) 2025, Picurit and Contributors
# See license.txt

import itertools
import unittest
from collections import Counter
from unittest.mock import patch

from hypothesis import given, strategies as st

from legendrian_skein.exceptions import (
    DataError,
    DivisibilityError,
    OddStrandCount,
    ValidationError,
)
from legendrian_skein.front.front import (
    FrontWord,
    apply_move,
    basic_front,
    left_cusp,
    maslov,
    orient,
    product_of_basic,
    reverse_orientation,
    right_cusp,
    sigma,
    stack,
)
from legendrian_skein.polyring.polyring import ONE, ZERO, VAR_Z, parse_poly
from legendrian_skein.rulings.rulings import (
    PASS,
    SWITCH,
    RulingState,
    admissible_states,
    enumerate_rulings,
    ruling_count_report,
    ruling_polynomial,
    transfer,
)
from legendrian_skein.strategies import moves, play, property_settings
from legendrian_skein.symfun.symfun import bracket, partitions_of, turaev_inner

UNKNOT = "l1 r1"
STABILIZED = "l1 l1 r2 r1"
TREFOIL = "l1 l1 s2 s2 s2 r1 r1"


def front(text, base=0):
    return orient(FrontWord.of(text, base))


def stack_all(parts):
    f = basic_front(parts[0])
    for part in parts[1:]:
        f = stack(f, basic_front(part))
    return f


MOVE_STARTS = (front(TREFOIL), stack(basic_front(2), basic_front(-2)), front(UNKNOT), front(STABILIZED))


class TestRulingState(unittest.TestCase):
    """Pairings of strand positions."""

    def test_from_pairs(self):
        """Pairs map both ways."""
        state = RulingState.from_pairs([(1, 3), (2, 4)])
        self.assertEqual(state.partners, (3, 4, 1, 2))
        self.assertEqual(state.partner(4), 2)
        self.assertEqual(state.pairs(), [(1, 3), (2, 4)])
        self.assertEqual(str(state), "1-3 2-4")

    def test_rejects_fixed_points(self):
        """A position cannot be its own partner."""
        with self.assertRaises(ValidationError):
            RulingState((1, 2))
        with self.assertRaises(ValidationError):
            RulingState((2, 3, 1))


class TestAdmissibleStates(unittest.TestCase):
    """Graded pairings of a single slice."""

    def test_forced_pair(self):
        """The upper strand must sit one above the lower."""
        self.assertEqual(admissible_states(2, (1, 0), 0), [RulingState((2, 1))])

    def test_no_pair(self):
        """Equal potentials never pair in grading 0."""
        self.assertEqual(admissible_states(2, (0, 0), 0), [])

    def test_ungraded(self):
        """Grading 1 allows all three pairings of four strands."""
        self.assertEqual(len(admissible_states(4, (5, -2, 0, 7), 1)), 3)

    def test_mod_two(self):
        """Grading 2 pairs strands of opposite parity."""
        states = admissible_states(4, (0, 0, 1, 1), 2)
        self.assertEqual([s.pairs() for s in states], [[(1, 3), (2, 4)], [(1, 4), (2, 3)]])

    def test_odd_count(self):
        """An odd slice has no pairing at all."""
        with self.assertRaises(OddStrandCount):
            admissible_states(3, (0, 0, 0), 1)

    def test_bad_input(self):
        """Potential count and grading are checked."""
        with self.assertRaises(ValidationError):
            admissible_states(2, (0,), 1)
        with self.assertRaises(ValidationError):
            admissible_states(2, (1, 0), -1)


class TestTransfer(unittest.TestCase):
    """Sweeping a state across one letter."""

    def test_crossing_paired_strands(self):
        """Strands paired with each other cannot cross."""
        self.assertEqual(transfer(sigma(1), RulingState((2, 1)), (0, 0), 1), [])

    def test_pass_and_switch(self):
        """Disjoint companion intervals allow both successors."""
        state = RulingState.from_pairs([(1, 2), (3, 4)])
        out = transfer(sigma(2), state, (0, 0, 0, 0), 1)
        self.assertEqual(out, [(RulingState.from_pairs([(1, 3), (2, 4)]), PASS), (state, SWITCH)])

    def test_interleaved_switch_refused(self):
        """Interleaved companion intervals only pass."""
        state = RulingState.from_pairs([(1, 3), (2, 4)])
        out = transfer(sigma(2), state, (0, 0, 0, 0), 1)
        self.assertEqual(out, [(RulingState.from_pairs([(1, 2), (3, 4)]), PASS)])

    def test_nested_switch(self):
        """Nested companion intervals allow a switch."""
        state = RulingState.from_pairs([(1, 4), (2, 3)])
        out = transfer(sigma(1), state, (0, 0, 1, 1), 2)
        self.assertIn((state, SWITCH), out)

    def test_switch_needs_admissible_result(self):
        """A switch that leaves an inadmissible pair is dropped."""
        state = RulingState.from_pairs([(1, 4), (2, 3)])
        out = transfer(sigma(1), state, (0, 1, 1, 0), 2)
        self.assertNotIn((state, SWITCH), out)
        self.assertEqual(out, [(RulingState.from_pairs([(1, 3), (2, 4)]), PASS)])

    def test_right_cusp(self):
        """Closing a paired cusp leaves the empty state."""
        self.assertEqual(transfer(right_cusp(1), RulingState((2, 1)), (), 2), [(RulingState(()), PASS)])
        self.assertEqual(transfer(right_cusp(1), RulingState.from_pairs([(1, 3), (2, 4)]), (0, 1), 1), [])

    def test_left_cusp(self):
        """A new cusp pairs its two strands and shifts the rest."""
        out = transfer(left_cusp(1), RulingState((2, 1)), (1, 0, 1, 0), 0)
        self.assertEqual(out, [(RulingState.from_pairs([(1, 2), (3, 4)]), PASS)])


class TestRulingPolynomial(unittest.TestCase):
    """Sums over closed sweeps."""

    def test_unknot(self):
        """One ruling, no switch, one right cusp."""
        self.assertEqual(ruling_polynomial(front(UNKNOT), 2), VAR_Z ** -1)
        self.assertEqual(ruling_count_report(front(UNKNOT), 2), [(0, 1)])

    def test_basic_pair(self):
        """A_2 over A_-2 gives 2 + z^2."""
        self.assertEqual(ruling_polynomial(stack(basic_front(2), basic_front(-2)), 2), parse_poly("2 + z^2"))

    def test_stabilized_unknot(self):
        """A zigzag kills every ruling."""
        self.assertEqual(ruling_polynomial(front(STABILIZED), 2), ZERO)
        self.assertEqual(ruling_polynomial(front(STABILIZED), 1), ZERO)

    def test_single_strands(self):
        """A_1 over A_-1 has exactly one ruling."""
        self.assertEqual(ruling_count_report(stack(basic_front(1), basic_front(-1)), 2), [(0, 1)])
        self.assertEqual(ruling_polynomial(stack(basic_front(1), basic_front(-1)), 2), ONE)

    def test_histogram_for_three_strands(self):
        """A_3 over A_-3 has 3, 4 and 1 rulings with 0, 2 and 4 switches."""
        report = ruling_count_report(stack(basic_front(3), basic_front(-3)), 2)
        self.assertEqual(report, [(0, 3), (2, 4), (4, 1)])

    def test_trefoil(self):
        """The trefoil has one three-switch ruling and two one-switch rulings."""
        f = front(TREFOIL)
        self.assertEqual(ruling_count_report(f, 2), [(1, 2), (3, 1)])
        self.assertEqual(ruling_polynomial(f, 2), parse_poly("z + 2*z^-1"))

    def test_odd_seam(self):
        """An odd number of strands gives 0."""
        f = stack(basic_front(1), front(UNKNOT))
        self.assertEqual(ruling_polynomial(f, 2), ZERO)
        self.assertEqual(ruling_count_report(f, 2), [])
        self.assertEqual(enumerate_rulings(f, 2), [])

    def test_divisibility(self):
        """p must divide 2r of every component."""
        with self.assertRaises(DivisibilityError):
            ruling_polynomial(front(STABILIZED), 0)
        with self.assertRaises(DivisibilityError):
            ruling_polynomial(front(STABILIZED), 4)

    def test_bracket_values(self):
        """A_m over A_-m gives <m>."""
        for m in range(1, 6):
            self.assertEqual(ruling_polynomial(stack(basic_front(m), basic_front(-m)), 2), bracket(m), msg=str(m))

    def test_turaev_pairing(self):
        """A_lam over A_-mu gives the Turaev pairing for every lam, mu of n <= 4."""
        for n in range(1, 5):
            for lam in partitions_of(n):
                for mu in partitions_of(n):
                    f = product_of_basic(lam, mu)
                    self.assertEqual(ruling_polynomial(f, 2), turaev_inner(lam, mu), msg=f"{lam} {mu}")

    def test_turaev_pairing_weight_five(self):
        """A sample of weight five pairs."""
        for lam in ((5,), (3, 2), (2, 2, 1)):
            for mu in partitions_of(5):
                f = product_of_basic(lam, mu)
                self.assertEqual(ruling_polynomial(f, 2), turaev_inner(lam, mu), msg=f"{lam} {mu}")

    def test_reordering_factors(self):
        """R^2 does not see the order of stacked basic fronts."""
        seen = set()
        for size in range(1, 5):
            for parts in itertools.product((-4, -3, -2, -1, 1, 2, 3, 4), repeat=size):
                if sum(abs(p) for p in parts) > 4:
                    continue
                key = tuple(sorted(parts))
                if key in seen:
                    continue
                seen.add(key)
                values = {ruling_polynomial(stack_all(order), 2) for order in set(itertools.permutations(parts))}
                self.assertEqual(len(values), 1, msg=str(parts))

    def test_orientation_independence(self):
        """Reversing every component leaves R^2 alone."""
        for f in (front(TREFOIL), stack(basic_front(2), basic_front(-2)), front(UNKNOT)):
            self.assertEqual(ruling_polynomial(reverse_orientation(f), 2), ruling_polynomial(f, 2))

    def test_cyclic_rotation(self):
        """The seam position does not matter."""
        f = front(TREFOIL)
        g = f
        for _ in range(len(f.letters)):
            g = apply_move(g, "cyclic_rotate")
            self.assertEqual(ruling_polynomial(g, 2), ruling_polynomial(f, 2))

    @patch('legendrian_skein.rulings.rulings.log_error')
    def test_sweep_failure_is_logged(self, mock_log_error):
        """Unexpected sweep failures become DataError."""
        with patch('legendrian_skein.rulings.rulings._switch_histogram', side_effect=RuntimeError("boom")):
            with self.assertRaises(DataError):
                ruling_polynomial(front(UNKNOT), 2)
        mock_log_error.assert_called_once()
        self.assertIn("boom", mock_log_error.call_args.kwargs["message"])


class TestGradedWitness(unittest.TestCase):
    """Integer-graded rulings tell stacking orders apart."""

    def setUp(self):
        """Set up A_2 with one A_-1 below it or with A_-1 on both sides."""
        self.below = stack_all((2, -1, -1))
        self.around = stack_all((-1, 2, -1))

    def test_orders_differ(self):
        """Only the order with both A_-1 below has a 0-graded ruling."""
        below = maslov(self.below, {0: 2, 1: 1, 2: 1})
        around = maslov(self.around, {0: 1, 1: 2, 2: 1})
        self.assertEqual(ruling_polynomial(self.below, 0, below), VAR_Z)
        self.assertEqual(ruling_polynomial(self.around, 0, around), ZERO)

    def test_unchecked_parity(self):
        """The same answer with A_2 at 1 and A_-1 at 0."""
        below = maslov(self.below, {0: 1, 1: 0, 2: 0}, check_parity=False)
        around = maslov(self.around, {0: 0, 1: 1, 2: 0}, check_parity=False)
        self.assertEqual(ruling_polynomial(self.below, 0, below), VAR_Z)
        self.assertEqual(ruling_polynomial(self.around, 0, around), ZERO)

    def test_every_small_pair(self):
        """A_m over A_n over A_-(m+n) has a 0-graded ruling; A_n over A_m does not."""
        for m in range(1, 5):
            for n in range(-m, 0):
                rest = () if m + n == 0 else (-(m + n),)
                below = stack_all((m, n) + rest)
                around = stack_all((n, m) + rest)
                tail = {} if not rest else {2: 1}
                with self.subTest(m=m, n=n):
                    below_values = maslov(below, {0: 2, 1: 1, **tail})
                    around_values = maslov(around, {0: 1, 1: 2, **tail})
                    self.assertNotEqual(ruling_polynomial(below, 0, below_values), ZERO)
                    self.assertEqual(ruling_polynomial(around, 0, around_values), ZERO)

    def test_common_shift(self):
        """Shifting all potentials by one constant changes nothing."""
        base = maslov(self.below, {0: 2, 1: 1, 2: 1})
        shifted = base.shifted(self.below, {0: 6, 1: 6, 2: 6})
        self.assertEqual(ruling_polynomial(self.below, 0, shifted), ruling_polynomial(self.below, 0, base))

    def test_two_graded_agree(self):
        """R^2 cannot tell the two orders apart."""
        self.assertEqual(ruling_polynomial(self.below, 2), ruling_polynomial(self.around, 2))

    def test_mismatched_potential(self):
        """A potential for another front is rejected."""
        with self.assertRaises(ValidationError):
            ruling_polynomial(front(TREFOIL), 2, maslov(front(UNKNOT)))


class TestEnumeration(unittest.TestCase):
    """Explicit rulings against the sweep."""

    def test_matches_report(self):
        """Counting enumerated rulings by switches gives the histogram."""
        fronts = [
            front(TREFOIL),
            stack(basic_front(3), basic_front(-3)),
            product_of_basic((2, 1), (2, 1)),
            front(UNKNOT),
            front("l1 s2 s2 r1", 2),
        ]
        for f in fronts:
            counts = Counter(len(r.switches) for r in enumerate_rulings(f, 2))
            self.assertEqual(sorted(counts.items()), ruling_count_report(f, 2), msg=str(f.word))

    def test_rulings_close_up(self):
        """Each ruling lists one state per slice and starts where it ends."""
        for ruling in enumerate_rulings(front(TREFOIL), 2):
            self.assertEqual(len(ruling.states), 7)
            self.assertEqual(ruling.states[0], RulingState(()))

    def test_empty_word(self):
        """Parallel strands: one ruling per admissible seam state."""
        f = stack(basic_front(1), basic_front(-1))
        self.assertEqual(len(enumerate_rulings(f, 2)), 1)


class TestMoveInvariance(unittest.TestCase):
    """Ruling polynomials survive Legendrian isotopy."""

    @property_settings(40)
    @given(st.sampled_from(MOVE_STARTS), st.lists(moves(), min_size=1, max_size=25))
    def test_random_moves(self, start, sequence):
        """R^1 and R^2 are unchanged along move sequences."""
        expected = {p: ruling_polynomial(start, p) for p in (1, 2)}
        current = start
        for move in sequence:
            current = play(current, move, len(start.letters) + 6)
            for p in (1, 2):
                self.assertEqual(ruling_polynomial(current, p), expected[p], msg=str(current.word))


if __name__ == '__main__':
    unittest.main()
