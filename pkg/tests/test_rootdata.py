"""Root datum construction, pairings, Frobenius actions and quotients."""

from __future__ import annotations

from fractions import Fraction

import pytest

from affweyl.rootdata import RootDatum, cartan_matrix, datum


class TestCartan:
    @pytest.mark.parametrize(
        "typ,rank,det",
        [("A", 1, 2), ("A", 2, 3), ("A", 3, 4), ("B", 2, 2), ("C", 3, 2),
         ("D", 4, 4), ("G", 2, 1), ("F", 4, 1), ("E", 6, 3)],
    )
    def test_determinants(self, typ, rank, det):
        import sympy

        m = sympy.Matrix(cartan_matrix(typ, rank))
        assert m.det() == det

    def test_bad_type_rejected(self):
        with pytest.raises(ValueError):
            cartan_matrix("H", 3)
        with pytest.raises(ValueError):
            cartan_matrix("E", 9)


class TestPositiveRoots:
    @pytest.mark.parametrize(
        "typ,rank,count",
        [("A", 1, 1), ("A", 2, 3), ("A", 3, 6), ("B", 2, 4), ("B", 3, 9),
         ("C", 3, 9), ("D", 4, 12), ("G", 2, 6), ("F", 4, 24)],
    )
    def test_counts(self, typ, rank, count):
        assert datum(typ, rank).n_pos == count

    def test_roots_closed_under_negation(self):
        d = datum("B", 2)
        for i in range(2 * d.n_pos):
            j = d.neg_root(i)
            assert d.neg_root(j) == i
            assert d.is_positive(i) != d.is_positive(j)

    def test_heights_and_highest_root(self):
        d = datum("G", 2)
        heights = sorted(r.height for r in d.roots[: d.n_pos])
        assert heights[0] == 1 and heights[-1] == 5


class TestLattices:
    def test_gl_lattice_rank(self):
        d = datum("A", 2, "gl")
        assert (d.rank, d.ss_rank) == (3, 2)
        assert d.coroot_quotient.describe() == "Z"

    def test_adjoint_pi1(self):
        assert datum("A", 2, "adjoint").coroot_quotient.describe() == "Z/3"
        assert datum("A", 1, "adjoint").coroot_quotient.describe() == "Z/2"

    def test_sc_pi1_trivial(self):
        assert datum("A", 2, "sc").coroot_quotient.describe() == "trivial"
        assert datum("G", 2).coroot_quotient.describe() == "trivial"

    def test_custom_lattice_must_contain_coroots(self):
        config = {
            "components": [{"type": "A", "rank": 1}],
            "lattice": "custom",
            "lattice_basis": [[4]],  # alpha^vee = 2 omega^vee not in 4Z
        }
        with pytest.raises(ValueError):
            RootDatum.from_config(config)

    def test_custom_lattice_coweight(self):
        # basis row omega^vee = alpha^vee / 2: the adjoint lattice of A1
        config = {
            "components": [{"type": "A", "rank": 1}],
            "lattice": "custom",
            "lattice_basis": [["1/2"]],
        }
        d = RootDatum.from_config(config)
        assert d.rank == 1
        assert d.coroot_quotient.describe() == "Z/2"


class TestPairings:
    def test_cartan_recovered(self):
        d = datum("C", 2)
        for i in range(d.ss_rank):
            for j in range(d.ss_rank):
                # <alpha_j^vee, alpha_i> = a_{ji} with a_{ij} = <a_i^vee, a_j>
                got = d.pair(d.roots[d.simple_idx[j]].covec, d.simple_idx[i])
                assert got == cartan_matrix("C", 2)[j][i]

    def test_pair_2rho_counts_roots(self):
        # <alpha^vee, 2 rho> = 2 for simple alpha in simply laced types
        d = datum("A", 3)
        for i in range(d.ss_rank):
            assert d.pair_2rho(d.roots[d.simple_idx[i]].covec) == 2

    def test_reflect_vec_involution(self):
        d = datum("B", 2)
        mu = (2, -1)
        for i in range(d.n_pos):
            assert d.reflect_vec(i, d.reflect_vec(i, mu)) == mu

    def test_dominant_with_word(self):
        d = datum("A", 2)
        mu, word = d.dominant_with_word((-1, -1))
        assert d.is_dominant(mu)
        assert len(word) > 0

    def test_coroot_coords_roundtrip(self):
        d = datum("A", 2, "gl")
        # alpha_1^vee = e_1 - e_2 in the GL basis
        cc = d.coroot_coords((1, -1, 0))
        assert cc == (Fraction(1), Fraction(0))
        assert d.coroot_coords((1, 0, 0)) is None  # not in Q Phi^vee


class TestAverages:
    def test_avg_full_weyl_is_invariant(self):
        d = datum("A", 2)
        v = d.avg_J((3, 1), range(d.ss_rank))
        # invariant under both simple reflections
        for i in range(d.ss_rank):
            assert d.reflect_vec(d.simple_idx[i], v) == v

    def test_conv_is_dominant_and_bounded(self):
        d = datum("C", 2)
        for mu in [(1, 0), (0, 1), (-2, 1), (3, -1)]:
            c = d.conv(mu)
            assert d.is_dominant(c)
            assert d.leq_coroot_cone(c, d.dominant_with_word(mu)[0])

    def test_conv_of_dominant_is_identity(self):
        d = datum("A", 2, "gl")
        assert d.conv((2, 1, 0)) == (2, 1, 0)


class TestFrobenius:
    def test_diagram_flip_a2(self):
        d = datum("A", 2, perm=(2, 1))
        assert d.sigma_order == 2
        assert d.sigma_simple_orbits() == [(0, 1)]
        # sigma swaps the two simple coroots
        assert d.sigma_vec((1, 0)) == (0, 1)

    def test_perm_must_preserve_cartan(self):
        with pytest.raises(ValueError):
            datum("C", 2, perm=(2, 1))  # would swap long and short

    def test_avg_sigma_projects_to_invariants(self):
        d = datum("A", 2, perm=(2, 1))
        v = d.avg_sigma((1, 0))
        assert d.sigma_vec(v) == v
        assert v == (Fraction(1, 2), Fraction(1, 2))

    def test_pi1_coinvariants_with_flip(self):
        # pi1(PGL3) = Z/3; the flip acts by inversion, coinvariants Z/3 -> ?
        d = datum("A", 2, "adjoint", perm=(2, 1))
        # (1 - sigma) kills 2x mod 3 => quotient Z/3 / <2> = trivial
        assert d.pi1_quotient.describe() == "trivial"

    def test_multi_component_rotation(self):
        config = {
            "components": [{"type": "A", "rank": 1}, {"type": "A", "rank": 1}],
            "lattice": "sc",
            "frobenius": {"perm": [2, 1]},
        }
        d = RootDatum.from_config(config)
        assert d.sigma_order == 2
        assert d.sigma_root(0) != 0


class TestOmegaTwist:
    def test_twist_accepted(self):
        d = datum("A", 1, "adjoint", twist={"sigma1_word": [1], "mu_sigma": [1]})
        assert d.omega_twist is not None

    def test_twist_must_have_length_zero(self):
        # eps^0 s1 has length 1, not a valid Omega element
        with pytest.raises(ValueError):
            datum("A", 1, "adjoint", twist={"sigma1_word": [1], "mu_sigma": [0]})

    def test_twist_not_on_sc(self):
        # Omega is trivial for the simply connected lattice
        with pytest.raises(ValueError):
            datum("A", 1, "sc", twist={"sigma1_word": [1], "mu_sigma": [1]})


class TestTypeString:
    def test_single(self):
        assert datum("A", 2, "gl").type_string() == "A2"

    def test_multi(self):
        config = {
            "components": [{"type": "A", "rank": 1}, {"type": "C", "rank": 2}],
            "lattice": "sc",
        }
        assert RootDatum.from_config(config).type_string() == "A1 x C2"
