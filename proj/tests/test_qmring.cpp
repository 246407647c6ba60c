#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qmf/qmring.hpp"

using namespace qmf;
using qmf::testutil::Rng;

TEST_SUITE("qmring")
{
    TEST_CASE("grading is enforced")
    {
        IsobaricPoly p(HalfInt::whole(4));
        p.add_term({8, 0, 0}, 1);
        CHECK_THROWS_AS(p.add_term({7, 0, 0}, 1), WeightMismatch);
        CHECK_THROWS_AS(IsobaricPoly::theta() + IsobaricPoly::f2(), WeightMismatch);
        // the zero polynomial is fine at any weight
        IsobaricPoly z(HalfInt::halves(9));
        CHECK(z.is_zero());
        CHECK((z + z).is_zero());
    }

    TEST_CASE("eval_to_qseries on generators")
    {
        CHECK(eval_to_qseries(IsobaricPoly::theta(), 20) == theta_series(20));
        CHECK(eval_to_qseries(IsobaricPoly::f2(), 20) == f2_series(20));
        CHECK(eval_to_qseries(IsobaricPoly::e2(), 20) == eisenstein_series(2, 20));
        CHECK(eval_to_qseries(e4_poly(), 20) == eisenstein_series(4, 20));
    }

    TEST_CASE("derivative rules on the generators")
    {
        IsobaricPoly dx = d_poly(IsobaricPoly::theta());
        IsobaricPoly expected_dx(HalfInt::halves(5));
        expected_dx.add_term({1, 0, 1}, make_rational(1, 24));
        expected_dx.add_term({5, 0, 0}, make_rational(-1, 24));
        expected_dx.add_term({1, 1, 0}, make_rational(80, 24));
        CHECK(dx == expected_dx);

        IsobaricPoly dy = d_poly(IsobaricPoly::f2());
        IsobaricPoly expected_dy(HalfInt::whole(4));
        expected_dy.add_term({0, 1, 1}, make_rational(1, 6));
        expected_dy.add_term({4, 1, 0}, make_rational(5, 6));
        expected_dy.add_term({0, 2, 0}, make_rational(-16, 6));
        CHECK(dy == expected_dy);

        CHECK(d_poly(IsobaricPoly::one()).is_zero());
        CHECK(d_poly(IsobaricPoly::one()).weight() == HalfInt::whole(2));
    }

    TEST_CASE("derivative commutes with evaluation")
    {
        for (const auto& p : {IsobaricPoly::theta(), IsobaricPoly::f2(), IsobaricPoly::e2(),
                              IsobaricPoly::monomial({4, 1, 0}, 1),
                              IsobaricPoly::monomial({1, 0, 2}, 1)}) {
            CHECK(d_poly(p).weight() == p.weight() + 2);
            CHECK(eval_to_qseries(d_poly(p), 40) == d_series(eval_to_qseries(p, 40)));
        }
        Rng rng(2024);
        for (int i = 0; i < 50; ++i) {
            IsobaricPoly p = testutil::random_isobaric(rng, testutil::random_weight(rng));
            CHECK(eval_to_qseries(d_poly(p), 40) == d_series(eval_to_qseries(p, 40)));
        }
    }

    TEST_CASE("modular_part")
    {
        CHECK(modular_part(IsobaricPoly::theta() * IsobaricPoly::e2()).is_zero());
        IsobaricPoly p(HalfInt::halves(5));
        p.add_term({5, 0, 0}, 1);
        p.add_term({1, 0, 1}, 1);
        IsobaricPoly x5(HalfInt::halves(5));
        x5.add_term({5, 0, 0}, 1);
        CHECK(modular_part(p) == x5);
        CHECK(modular_part(x5) == x5); // already Z-free
    }

    TEST_CASE("decompose_gamma14 on the classical forms")
    {
        CHECK(decompose_gamma14(eisenstein_series(4, 20), HalfInt::whole(4)) == e4_poly());
        CHECK(decompose_gamma14(eisenstein_series(6, 20), HalfInt::whole(6)) == e6_poly());
        IsobaricPoly x = decompose_gamma14(theta_series(10), HalfInt::halves(1));
        CHECK(x == IsobaricPoly::theta());
    }

    TEST_CASE("decompose_gamma14 error paths")
    {
        // E2 is quasimodular, not modular: the residual must flag it.
        CHECK_THROWS_AS(decompose_gamma14(eisenstein_series(2, 20), HalfInt::whole(2)),
                        NotInSpan);
        CHECK_THROWS_AS(decompose_gamma14(eisenstein_series(4, 6), HalfInt::whole(4)),
                        InsufficientPrecision);
    }

    TEST_CASE("decompose round-trips evaluation")
    {
        Rng rng(555);
        for (int i = 0; i < 30; ++i) {
            HalfInt w = HalfInt::halves(
                std::uniform_int_distribution<long>(0, 60)(rng));
            IsobaricPoly p = testutil::random_isobaric(rng, w, 5, /*allow_z=*/false);
            std::size_t prec = std::size_t(w.twice() / 4 + 1) + kDecomposeGuard + 2;
            CHECK(decompose_gamma14(eval_to_qseries(p, prec), w) == p);
        }
    }

    TEST_CASE("denominators of decompositions of integral forms are 6-smooth")
    {
        Rng rng(77);
        auto six_smooth = [](const Rational& r) {
            Int den = r.get_den(), tmp;
            mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), Int(2).get_mpz_t());
            den = tmp;
            mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), Int(3).get_mpz_t());
            return tmp == 1;
        };
        for (unsigned k : {4u, 6u, 8u, 10u}) {
            IsobaricPoly dec =
                decompose_gamma14(eisenstein_series(k, 20), HalfInt::whole(k));
            for (const auto& [m, v] : dec.terms())
                CHECK(six_smooth(v));
        }
        // 6-smooth recombinations of the monomial basis decompose 6-smoothly
        for (int i = 0; i < 10; ++i) {
            HalfInt w = HalfInt::halves(std::uniform_int_distribution<long>(0, 40)(rng));
            IsobaricPoly p = testutil::random_isobaric(rng, w, 4, false);
            IsobaricPoly dec = decompose_gamma14(eval_to_qseries(p, 30), w);
            for (const auto& [m, v] : dec.terms())
                CHECK(six_smooth(v));
        }
    }

    TEST_CASE("decompose_gamma1 on E4, E8, E10")
    {
        // E8 = E4^2 and E10 = E4*E6, first re-derived by expansion
        QSeries e4 = eisenstein_series(4, 20);
        QSeries e6 = eisenstein_series(6, 20);
        CHECK(eisenstein_series(8, 20) == e4 * e4);
        CHECK(eisenstein_series(10, 20) == e4 * e6);

        Gamma1Poly g4 = decompose_gamma1(e4, 4);
        CHECK(g4.terms().size() == 1);
        CHECK(g4.terms().begin()->first == Monomial{1, 0, 0});

        Gamma1Poly g8 = decompose_gamma1(eisenstein_series(8, 20), 8);
        CHECK(g8.terms().size() == 1);
        CHECK(g8.terms().begin()->first == Monomial{2, 0, 0});

        Gamma1Poly g10 = decompose_gamma1(eisenstein_series(10, 20), 10);
        CHECK(g10.terms().size() == 1);
        CHECK(g10.terms().begin()->first == Monomial{1, 1, 0});
    }

    TEST_CASE("evaluation is a ring homomorphism")
    {
        Rng rng(616);
        for (int i = 0; i < 20; ++i) {
            IsobaricPoly p = testutil::random_isobaric(rng, testutil::random_weight(rng, 12));
            IsobaricPoly q = testutil::random_isobaric(rng, testutil::random_weight(rng, 12));
            CHECK(eval_to_qseries(p * q, 25) ==
                  eval_to_qseries(p, 25) * eval_to_qseries(q, 25));
        }
    }

    TEST_CASE("level-1 decomposition round-trips on E4/E6 combinations")
    {
        Rng rng(617);
        std::uniform_int_distribution<long> coeff(-5, 5);
        for (int i = 0; i < 10; ++i) {
            // random element of weight 12: a E4^3 + b E6^2
            QSeries e4 = eisenstein_series(4, 12);
            QSeries e6 = eisenstein_series(6, 12);
            Rational a(coeff(rng)), b(coeff(rng));
            QSeries f = e4.pow(3).scaled(a) + e6.pow(2).scaled(b);
            Gamma1Poly g = decompose_gamma1(f, 12);
            CHECK(g.terms().size() == std::size_t((a != 0) + (b != 0)));
            if (a != 0)
                CHECK(g.terms().at({3, 0, 0}) == a);
            if (b != 0)
                CHECK(g.terms().at({0, 2, 0}) == b);
        }
    }

    TEST_CASE("gamma1_to_gamma14 substitution")
    {
        Gamma1Poly gx(4);
        gx.add_term({1, 0, 0}, 1);
        CHECK(gamma1_to_gamma14(gx) == e4_poly());

        Gamma1Poly gy(6);
        gy.add_term({0, 1, 0}, 1);
        CHECK(gamma1_to_gamma14(gy) == e6_poly());

        Gamma1Poly gone(0);
        gone.add_term({0, 0, 0}, 1);
        CHECK(gamma1_to_gamma14(gone) == IsobaricPoly::one());
    }

    TEST_CASE("hasse_poly: monic, correct X-degree, dual routes agree")
    {
        CHECK(hasse_poly(5) == e4_poly());
        CHECK(hasse_poly(7) == e6_poly());
        // p = 11: E10 = E4 * E6 transported to the theta basis
        Gamma1Poly gxy(10);
        gxy.add_term({1, 1, 0}, 1);
        CHECK(hasse_poly(11) == gamma1_to_gamma14(gxy));
        for (long p : {5L, 7L, 11L, 13L}) {
            IsobaricPoly a = hasse_poly(p);
            unsigned deg = unsigned(2 * (p - 1));
            CHECK(a.x_degree() == deg);
            CHECK(a.coeff({deg, 0, 0}) == 1);
        }
        CHECK_THROWS_AS(hasse_poly(4), Error);
        CHECK_THROWS_AS(hasse_poly(3), Error);
    }
}
