# Copyright (c) 2025, Picurit and Contributors
# See license.txt

import itertools
import unittest
from unittest.mock import patch

from hypothesis import given

from legendrian_skein.exceptions import ValidationError, DataError
from legendrian_skein.polyring.polyring import (
    LaurentPoly, TruncSeries, ONE, ZERO, VAR_S, VAR_Z, parse_poly, series_inverse, subst_z,
)
from legendrian_skein.symfun.symfun import (
    EMPTY,
    SchurVector,
    UNIT,
    a_to_schur,
    bracket,
    contingency_matrices,
    coproduct_of_A,
    hook,
    hook_expand_A,
    lr_coefficient,
    parse_partition,
    partitions_of,
    render_partition,
    schur_coproduct,
    schur_inner,
    schur_mul,
    subpartitions,
    tensor,
    tensor_inner,
    tensor_mul,
    turaev_inner,
)
from legendrian_skein.strategies import property_settings, schur_vectors

Q = SchurVector.basis


def brute_force_lr(lam, mu, nu):
    """Count LR tableaux by trying every arrangement of the content."""
    if sum(mu) + sum(nu) != sum(lam):
        return 0
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        return 0
    cells = []
    for r, length in enumerate(lam):
        start = mu[r] if r < len(mu) else 0
        for c in range(length - 1, start - 1, -1):
            cells.append((r, c))
    content = [value for value, count in enumerate(nu, start=1) for _ in range(count)]
    total = 0
    for word in set(itertools.permutations(content)):
        filling = dict(zip(cells, word))
        ok = True
        for (r, c), value in filling.items():
            if (r, c + 1) in filling and filling[(r, c + 1)] < value:
                ok = False
            if (r - 1, c) in filling and filling[(r - 1, c)] >= value:
                ok = False
        if not ok:
            continue
        counts = [0] * (len(nu) + 2)
        for value in word:
            counts[value] += 1
            if value > 1 and counts[value] > counts[value - 1]:
                ok = False
                break
        total += ok
    return total


class TestPartitions(unittest.TestCase):
    """Partition enumeration and text format."""

    def test_small_weights(self):
        """Reverse lexicographic order, each partition once."""
        self.assertEqual(partitions_of(0), [EMPTY])
        self.assertEqual(partitions_of(3), [(3,), (2, 1), (1, 1, 1)])
        self.assertEqual(partitions_of(4), [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])

    def test_counts(self):
        """Known partition numbers."""
        self.assertEqual([len(partitions_of(n)) for n in range(9)], [1, 1, 2, 3, 5, 7, 11, 15, 22])

    def test_render_and_parse(self):
        """Comma lists with '-' for the empty partition."""
        self.assertEqual(render_partition((2, 1)), "2,1")
        self.assertEqual(render_partition(EMPTY), "-")
        self.assertEqual(parse_partition("3,1,1"), (3, 1, 1))
        self.assertEqual(parse_partition("-"), EMPTY)

    def test_parse_rejects_bad_input(self):
        """Increasing or non-numeric parts are refused."""
        for text in ("1,2", "a", "2,,1", "0"):
            with self.assertRaises(ValidationError, msg=text):
                parse_partition(text)

    def test_subpartitions(self):
        """Diagrams inside (2,1)."""
        self.assertEqual(sorted(subpartitions((2, 1))), sorted([EMPTY, (1,), (2,), (1, 1), (2, 1)]))

    def test_hook(self):
        """(a|b) = (a+1, 1^b)."""
        self.assertEqual(hook(0, 0), (1,))
        self.assertEqual(hook(2, 1), (3, 1))
        self.assertEqual(hook(0, 2), (1, 1, 1))


class TestContingencyMatrices(unittest.TestCase):
    """Matrices with prescribed row and column sums."""

    def test_single_column(self):
        """(1,1) over (2) is the column (1,1)."""
        matrices = contingency_matrices((1, 1), (2,))
        self.assertEqual([m.entries for m in matrices], [((1,), (1,))])

    def test_permutation_matrices(self):
        """Unit sums force permutation matrices."""
        matrices = contingency_matrices((1, 1), (1, 1))
        self.assertEqual({m.entries for m in matrices}, {((1, 0), (0, 1)), ((0, 1), (1, 0))})

    def test_two_one(self):
        """(2,1) against itself has two matrices, the diagonal one first."""
        matrices = contingency_matrices((2, 1), (2, 1))
        self.assertEqual([m.entries for m in matrices], [((2, 0), (0, 1)), ((1, 1), (1, 0))])

    def test_weight_mismatch(self):
        """Different weights give no matrices."""
        self.assertEqual(contingency_matrices((2,), (1,)), [])

    def test_sums(self):
        """Every matrix has the requested margins."""
        for m in contingency_matrices((3, 2, 1), (2, 2, 2)):
            self.assertEqual(tuple(sum(row) for row in m.entries), (3, 2, 1))
            self.assertEqual(tuple(sum(col) for col in zip(*m.entries)), (2, 2, 2))


class TestBracketAndTuraevInner(unittest.TestCase):
    """The closed bracket formula and the Turaev basis pairing."""

    def test_bracket_values(self):
        """Values at 0, 1, 2, 3."""
        self.assertEqual(bracket(0), VAR_Z ** -2)
        self.assertEqual(bracket(1), ONE)
        self.assertEqual(bracket(2), parse_poly("2 + z^2"))
        self.assertEqual(bracket(3), parse_poly("3 + 4*z^2 + z^4"))

    def test_inner_examples(self):
        """Small pairings."""
        self.assertEqual(turaev_inner((1,), (1,)), ONE)
        self.assertEqual(turaev_inner((1, 1), (2,)), VAR_Z)
        self.assertEqual(turaev_inner((1, 1), (1, 1)), LaurentPoly.constant(2))
        self.assertEqual(turaev_inner((2,), (2,)), bracket(2))

    def test_empty_and_mixed_weights(self):
        """Empty pairs to 1, different weights to 0."""
        self.assertEqual(turaev_inner(EMPTY, EMPTY), ONE)
        self.assertEqual(turaev_inner((2,), (1,)), ZERO)
        self.assertEqual(turaev_inner(EMPTY, (1,)), ZERO)

    def test_symmetry(self):
        """The pairing is symmetric up to weight 6."""
        for n in range(7):
            for lam in partitions_of(n):
                for mu in partitions_of(n):
                    self.assertEqual(turaev_inner(lam, mu), turaev_inner(mu, lam))

    def test_bracket_matches_schur_norm(self):
        """subst_z(<m>) = sum over a < m of s^(2(2a-(m-1)))."""
        for m in range(1, 9):
            expected = sum((LaurentPoly.monomial(1, s=2 * (2 * a - (m - 1))) for a in range(m)), ZERO)
            self.assertEqual(subst_z(bracket(m)), expected)

    def test_generating_function(self):
        """z^2 sum <m> t^m inverts 1 - sum m z^2 t^m modulo t^11."""
        order = 10
        z2 = VAR_Z ** 2
        f = TruncSeries.from_coeffs([ONE] + [-m * z2 for m in range(1, order + 1)], order)
        g = series_inverse(f)
        self.assertEqual(g.coeffs, tuple(z2 * bracket(m) for m in range(order + 1)))


class TestLittlewoodRichardson(unittest.TestCase):
    """LR coefficients in the standard convention."""

    def test_unit_and_pieri(self):
        """Trivial and Pieri cases."""
        self.assertEqual(lr_coefficient((1,), EMPTY, (1,)), 1)
        self.assertEqual(lr_coefficient((2,), (1,), (1,)), 1)
        self.assertEqual(lr_coefficient((1, 1), (1,), (1,)), 1)
        self.assertEqual(lr_coefficient((2, 1), (1,), (1, 1)), 1)

    def test_classic_multiplicity_two(self):
        """c^(3,2,1)_{(2,1),(2,1)} = 2."""
        self.assertEqual(lr_coefficient((3, 2, 1), (2, 1), (2, 1)), 2)

    def test_zero_cases(self):
        """Containment and weight conditions."""
        self.assertEqual(lr_coefficient((2,), (1, 1), EMPTY), 0)
        self.assertEqual(lr_coefficient((2, 1), (1,), (1,)), 0)

    def test_against_brute_force(self):
        """Agreement with exhaustive tableau counting for |lam| <= 6."""
        for n in range(7):
            for lam in partitions_of(n):
                for mu in subpartitions(lam):
                    for nu in partitions_of(n - sum(mu)):
                        self.assertEqual(
                            lr_coefficient(lam, mu, nu), brute_force_lr(lam, mu, nu),
                            msg=f"{lam} {mu} {nu}",
                        )

    def test_hook_coproduct_closed_form(self):
        """c^(a|b)_{(a'|b'),(a''|b'')} is 1 exactly when (a'+a'', b'+b'') is (a, b-1) or (a-1, b)."""

        def as_hook(p):
            if p and all(part == 1 for part in p[1:]):
                return p[0] - 1, len(p) - 1
            return None

        for a in range(4):
            for b in range(4):
                lam = hook(a, b)
                for mu in subpartitions(lam):
                    for nu in partitions_of(sum(lam) - sum(mu)):
                        c = lr_coefficient(lam, mu, nu)
                        if not mu or not nu:
                            expected = 1 if (mu or nu) == lam else 0
                        else:
                            hm, hn = as_hook(mu), as_hook(nu)
                            sums = None if hn is None else (hm[0] + hn[0], hm[1] + hn[1])
                            expected = 1 if sums in ((a, b - 1), (a - 1, b)) else 0
                        self.assertEqual(c, expected, msg=f"{lam} {mu} {nu}")


class TestSchurVectors(unittest.TestCase):
    """Products, hook expansions and the inner product."""

    def test_unit(self):
        """Q_() is the multiplicative unit."""
        f = Q((2, 1), VAR_S) + Q((1,), 3)
        self.assertEqual(schur_mul(UNIT, f), f)

    def test_pieri_square(self):
        """Q_(1)^2 = Q_(2) + Q_(1,1)."""
        self.assertEqual(schur_mul(Q((1,)), Q((1,))), Q((2,)) + Q((1, 1)))
        self.assertEqual(a_to_schur((1, 1)), Q((2,)) + Q((1, 1)))

    def test_hook_expansions(self):
        """A_1, A_2 and A_3 in the Schur basis."""
        s = VAR_S
        self.assertEqual(hook_expand_A(1), Q((1,)))
        self.assertEqual(hook_expand_A(2), Q((2,), s) - Q((1, 1), s ** -1))
        self.assertEqual(hook_expand_A(3), Q((3,), s ** 2) - Q((2, 1)) + Q((1, 1, 1), s ** -2))
        with self.assertRaises(ValidationError):
            hook_expand_A(0)

    def test_a_to_schur_edges(self):
        """Empty and single-part inputs."""
        self.assertEqual(a_to_schur(EMPTY), UNIT)
        self.assertEqual(a_to_schur((1,)), Q((1,)))
        self.assertEqual(a_to_schur((3,)), hook_expand_A(3))

    def test_inner_examples(self):
        """Orthonormal basis values."""
        self.assertEqual(schur_inner(Q((2,)), Q((1, 1))), ZERO)
        self.assertEqual(schur_inner(hook_expand_A(2), hook_expand_A(2)), parse_poly("s^2 + s^-2"))
        self.assertEqual(schur_inner(a_to_schur((1, 1)), a_to_schur((2,))), VAR_S - VAR_S ** -1)

    def test_schur_side_matches_turaev_pairing(self):
        """(A_lam, A_mu) computed from Schur expansions equals the contingency formula."""
        for n in range(7):
            parts = partitions_of(n)
            for lam in parts:
                for mu in parts:
                    self.assertEqual(
                        schur_inner(a_to_schur(lam), a_to_schur(mu)),
                        subst_z(turaev_inner(lam, mu)),
                        msg=f"{lam} {mu}",
                    )


class TestCoproduct(unittest.TestCase):
    """The coproduct and its compatibility with products and pairing."""

    def test_primitive(self):
        """Delta(Q_(1)) = 1 (x) Q_(1) + Q_(1) (x) 1."""
        self.assertEqual(schur_coproduct(Q((1,))), {(EMPTY, (1,)): ONE, ((1,), EMPTY): ONE})

    def test_hook_interior_terms(self):
        """Delta(Q_(2,1)) has Q_(1) (x) Q_(1,1) and Q_(1) (x) Q_(2) once each."""
        delta = schur_coproduct(Q((2, 1)))
        self.assertEqual(delta[((1,), (1, 1))], ONE)
        self.assertEqual(delta[((1,), (2,))], ONE)

    def test_coproduct_of_A_identity(self):
        """Delta(A_m) = z sum A_i (x) A_(m-i) with A_0 = 1/z, for m <= 8."""
        for m in range(1, 9):
            self.assertEqual(schur_coproduct(hook_expand_A(m)), coproduct_of_A(m), msg=f"m={m}")

    def test_coproduct_of_A2_explicit(self):
        """The m = 2 case written out."""
        a2 = hook_expand_A(2)
        expected = tensor(UNIT, a2)
        for key, coef in tensor(a2, UNIT).items():
            expected[key] = coef
        expected[((1,), (1,))] = VAR_S - VAR_S ** -1
        self.assertEqual(schur_coproduct(a2), expected)

    @property_settings(12)
    @given(schur_vectors(max_weight=2), schur_vectors(max_weight=3))
    def test_algebra_morphism(self, f, g):
        """Delta(f g) = Delta(f) Delta(g) up to weight 5."""
        self.assertEqual(schur_coproduct(schur_mul(f, g)), tensor_mul(schur_coproduct(f), schur_coproduct(g)))

    @property_settings(12)
    @given(schur_vectors(max_weight=5), schur_vectors(max_weight=2), schur_vectors(max_weight=3))
    def test_adjointness(self, f, g, h):
        """(f, g h) = (Delta f, g (x) h) up to weight 5."""
        self.assertEqual(schur_inner(f, schur_mul(g, h)), tensor_inner(schur_coproduct(f), tensor(g, h)))

    @patch('legendrian_skein.symfun.symfun.log_error')
    @patch('legendrian_skein.symfun.symfun._basis_coproduct', side_effect=RuntimeError("boom"))
    def test_failure_is_wrapped_and_logged(self, mock_basis, mock_log_error):
        """Unexpected failures become DataError and are logged."""
        with self.assertRaises(DataError):
            schur_coproduct(Q((2,)))
        mock_log_error.assert_called_once()
        self.assertIn("boom", mock_log_error.call_args.kwargs["message"])


if __name__ == '__main__':
    unittest.main()
