#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "equimax/rng.hpp"
#include "equimax/series.hpp"

using equimax::PowerSeries;
using equimax::Rational;

namespace {

// Taylor coefficients of c1*e^(a1*x) + c2*e^(a2*x): closed-form oracle for
// the exponential-series identities below.
PowerSeries exp_combination(const Rational& c1, const Rational& a1, const Rational& c2,
                            const Rational& a2, unsigned order) {
    std::vector<Rational> c(order + 1);
    Rational p1(1);
    Rational p2(1);
    for (unsigned k = 0; k <= order; ++k) {
        c[k] = (c1 * p1 + c2 * p2) / Rational(equimax::factorial(k));
        p1 *= a1;
        p2 *= a2;
    }
    return PowerSeries(std::move(c));
}

PowerSeries random_series(equimax::Philox& rng, unsigned order) {
    std::vector<Rational> c(order + 1);
    for (auto& v : c) {
        const long long num = static_cast<long long>(rng.next() % 41) - 20;
        const long long den = static_cast<long long>(rng.next() % 9) + 1;
        v = Rational(num, den);
    }
    return PowerSeries(std::move(c));
}

}  // namespace

TEST_CASE("exponential density series") {
    const PowerSeries f = equimax::exp_density_series(Rational(1), 3);
    CHECK(f.coefficients() ==
          std::vector<Rational>{Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 6)});
    const PowerSeries g = equimax::exp_density_series(Rational(2), 2);
    CHECK(g.coefficients() == std::vector<Rational>{Rational(2), Rational(-4), Rational(4)});
    CHECK_THROWS_AS(equimax::exp_density_series(Rational(0), 4), std::domain_error);
    CHECK_THROWS_AS(equimax::exp_density_series(Rational(-2), 4), std::domain_error);
}

TEST_CASE("series multiply") {
    const PowerSeries a({Rational(1), Rational(1)});
    const PowerSeries b({Rational(1), Rational(-1)});
    CHECK(equimax::multiply(a, b).coefficients() ==
          std::vector<Rational>{Rational(1), Rational(0)});

    const PowerSeries s = equimax::exp_density_series(Rational(3, 2), 5);
    const PowerSeries unit({Rational(1), Rational(0), Rational(0), Rational(0), Rational(0),
                            Rational(0)});
    CHECK(equimax::multiply(s, unit) == s);

    // e^-x * e^-x = e^-2x, coefficients (-2)^k/k!
    const PowerSeries e1 = equimax::exp_density_series(Rational(1), 4);
    const PowerSeries sq = equimax::multiply(e1, e1);
    CHECK(sq.coefficients() == std::vector<Rational>{Rational(1), Rational(-2), Rational(2),
                                                     Rational(-4, 3), Rational(2, 3)});
    // truncation: result order is the shorter operand's
    CHECK(equimax::multiply(e1, equimax::exp_density_series(Rational(1), 2)).order() == 2);
}

TEST_CASE("antiderivative and derivative") {
    CHECK(equimax::antiderivative(PowerSeries({Rational(1)})).coefficients() ==
          std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(equimax::antiderivative(PowerSeries({Rational(0), Rational(2)})).coefficients() ==
          std::vector<Rational>{Rational(0), Rational(0), Rational(1)});

    // term-by-term integration oracle for the lambda=1 density
    const PowerSeries f = equimax::exp_density_series(Rational(1), 4);
    std::vector<Rational> expected{Rational(0)};
    for (unsigned k = 0; k <= 4; ++k) {
        expected.push_back(f[k] / Rational(static_cast<int>(k) + 1));
    }
    const PowerSeries big_f = equimax::antiderivative(f);
    CHECK(big_f.coefficients() == expected);
    CHECK(big_f.coefficients() ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(-1, 2), Rational(1, 6),
                                Rational(-1, 24), Rational(1, 120)});

    // derivative inverts antiderivative exactly
    equimax::Philox rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        const PowerSeries s = random_series(rng, 1 + static_cast<unsigned>(rng.next() % 12));
        CHECK(equimax::derivative(equimax::antiderivative(s)) == s);
    }
    CHECK_THROWS_AS(equimax::derivative(PowerSeries({Rational(3)})), std::domain_error);
}

TEST_CASE("series truncation bookkeeping") {
    const PowerSeries f = equimax::exp_density_series(Rational(1), 3);
    CHECK(f.order() == 3);
    CHECK_THROWS_AS(f[4], std::out_of_range);
    CHECK(equimax::antiderivative(f).order() == 4);
    CHECK(f.truncated(1).order() == 1);
    CHECK_THROWS_AS(f.truncated(9), std::out_of_range);
}

TEST_CASE("g_m_series") {
    const PowerSeries f = equimax::exp_density_series(Rational(1), 8);
    CHECK(equimax::g_m_series(f, 0) == f);

    // G_1 for lambda=1 is e^-x - e^-2x
    const PowerSeries g1 = equimax::g_m_series(f, 1);
    CHECK(g1 == exp_combination(Rational(1), Rational(-1), Rational(-1), Rational(-2), 8));
    CHECK(g1[0] == Rational(0));
    CHECK(g1[1] == Rational(1));
    CHECK(g1[2] == Rational(-3, 2));
    CHECK(g1[3] == Rational(7, 6));

    // G_1 for lambda=2 is 2e^-2x - 2e^-4x
    const PowerSeries f2 = equimax::exp_density_series(Rational(2), 6);
    const PowerSeries g2 = equimax::g_m_series(f2, 1);
    CHECK(g2 == exp_combination(Rational(2), Rational(-2), Rational(-2), Rational(-4), 6));
    CHECK(g2[1] == Rational(4));
    CHECK(g2[2] == Rational(-12));

    // recursion G_{m+1} = F * G_m, coefficientwise
    const PowerSeries big_f = equimax::antiderivative(f);
    for (unsigned m = 0; m <= 3; ++m) {
        CHECK(equimax::g_m_series(f, m + 1) ==
              equimax::multiply(big_f, equimax::g_m_series(f, m)));
    }

    // low-order coefficients of G_{n-2} vanish: indices 0..n-3
    for (unsigned n = 3; n <= 8; ++n) {
        const PowerSeries g = equimax::g_m_series(f, n - 2);
        for (unsigned i = 0; i + 3 <= n; ++i) {
            CAPTURE(n, i);
            CHECK(g[i] == Rational(0));
        }
    }
}

TEST_CASE("scale_argument") {
    const PowerSeries a({Rational(1), Rational(1), Rational(1)});
    CHECK(equimax::scale_argument(a, 2).coefficients() ==
          std::vector<Rational>{Rational(1), Rational(2), Rational(4)});
    CHECK(equimax::scale_argument(a, 1) == a);

    const PowerSeries f = equimax::exp_density_series(Rational(1), 4);
    const PowerSeries s = equimax::scale_argument(f, 3);  // e^{-3y}
    CHECK(s[0] == Rational(1));
    CHECK(s[1] == Rational(-3));
    CHECK(s[2] == Rational(9, 2));
    CHECK_THROWS_AS(equimax::scale_argument(a, 0), std::domain_error);
}

TEST_CASE("convolution integral") {
    const PowerSeries one({Rational(1)});
    CHECK(equimax::convolution_integral(one, one).coefficients() ==
          std::vector<Rational>{Rational(0), Rational(1)});

    const PowerSeries x({Rational(0), Rational(1)});
    const PowerSeries one1({Rational(1), Rational(0)});
    CHECK(equimax::convolution_integral(one1, x).coefficients() ==
          std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2)});

    // int_0^x e^{-2y} e^{-(x-y)} dy = e^-x - e^-2x
    const unsigned order = 10;
    const PowerSeries ea = equimax::scale_argument(equimax::exp_density_series(Rational(1), order), 2);
    const PowerSeries eb = equimax::exp_density_series(Rational(1), order);
    const PowerSeries conv = equimax::convolution_integral(ea, eb);
    CHECK(conv ==
          exp_combination(Rational(1), Rational(-1), Rational(-1), Rational(-2), order + 1));

    // symmetry of the integral under y -> x-y
    equimax::Philox rng(99);
    for (int iter = 0; iter < 25; ++iter) {
        const unsigned oa = 1 + static_cast<unsigned>(rng.next() % 12);
        const unsigned ob = 1 + static_cast<unsigned>(rng.next() % 12);
        const PowerSeries pa = random_series(rng, oa);
        const PowerSeries pb = random_series(rng, ob);
        CHECK(equimax::convolution_integral(pa, pb) == equimax::convolution_integral(pb, pa));
    }
}

TEST_CASE("lemma1 for exponential densities") {
    const PowerSeries f = equimax::exp_density_series(Rational(1), 12);
    const auto report = equimax::verify_lemma1(f, 1);
    CHECK(report.passed());

    // G_1''(0) = -3 read off the series, matching -1 * 1 * H_{1,2}(2)
    const PowerSeries g1 = equimax::g_m_series(f, 1);
    CHECK(Rational(equimax::factorial(2)) * g1[2] == Rational(-3));
    CHECK(Rational(-1) * equimax::hni(1, 2, Rational(2)) == Rational(-3));

    // diagonal case: G_m^{(m)}(0) = m! f(0)^{m+1}, i.e. coefficient m = f(0)^{m+1}
    for (const Rational& lambda : {Rational(1), Rational(2), Rational(1, 3)}) {
        const PowerSeries fl = equimax::exp_density_series(lambda, 12);
        for (unsigned m = 1; m <= 6; ++m) {
            CAPTURE(lambda.str(), m);
            CHECK(equimax::verify_lemma1(fl, m).passed());
            CHECK(equimax::g_m_series(fl, m)[m] ==
                  equimax::rat_pow(lambda, static_cast<long long>(m) + 1));
        }
    }
}

TEST_CASE("lemma1 domain errors and failure reporting") {
    // f(0) = 0 is outside the formula's domain
    const PowerSeries zero_at_0({Rational(0), Rational(1), Rational(1)});
    CHECK_THROWS_AS(equimax::verify_lemma1(zero_at_0, 1), std::domain_error);

    // insufficient truncation order
    const PowerSeries shallow = equimax::exp_density_series(Rational(1), 3);
    CHECK_THROWS_AS(equimax::verify_lemma1(shallow, 2), std::domain_error);

    // a density violating the derivative chain is reported, not asserted
    std::vector<Rational> c = equimax::exp_density_series(Rational(1), 12).coefficients();
    c[3] += Rational(1, 7);
    const auto report = equimax::verify_lemma1(PowerSeries(c), 4);
    CHECK_FALSE(report.passed());
    bool has_hypothesis_entry = false;
    for (const auto& d : report.discrepancies) {
        if (d.parameters.find("hypothesis") != std::string::npos) {
            has_hypothesis_entry = true;
        }
    }
    CHECK(has_hypothesis_entry);
}

TEST_CASE("eq8 series identity for exponentials") {
    for (const Rational& lambda : {Rational(1), Rational(2), Rational(1, 3), Rational(7, 5)}) {
        const PowerSeries f = equimax::exp_density_series(lambda, 16);
        for (long long n = 2; n <= 8; ++n) {
            CAPTURE(lambda.str(), n);
            CHECK_FALSE(equimax::verify_eq8(f, n, 16).has_value());
        }
    }

    // n=2 closed form: both sides are the series of e^-x - e^-2x (lambda=1)
    const PowerSeries f = equimax::exp_density_series(Rational(1), 12);
    const PowerSeries lhs =
        equimax::convolution_integral(equimax::scale_argument(f, 2), equimax::g_m_series(f, 0));
    const PowerSeries rhs = equimax::multiply(f, equimax::antiderivative(f));
    const PowerSeries closed =
        exp_combination(Rational(1), Rational(-1), Rational(-1), Rational(-2), 13);
    CHECK(lhs == closed);
    for (unsigned k = 0; k <= rhs.order(); ++k) {
        CHECK(rhs[k] == closed[k]);
    }
    CHECK_FALSE(equimax::verify_eq8(f, 2, 12).has_value());
}

TEST_CASE("eq8 detects a perturbed density") {
    std::vector<Rational> c = equimax::exp_density_series(Rational(1), 16).coefficients();
    c[2] += Rational(1, 10);
    const auto mismatch = equimax::verify_eq8(PowerSeries(c), 3, 16);
    REQUIRE(mismatch.has_value());
    CHECK(mismatch->index <= 16);
    CHECK(mismatch->lhs != mismatch->rhs);
}

TEST_CASE("eq8 preconditions") {
    const PowerSeries f = equimax::exp_density_series(Rational(1), 8);
    CHECK_THROWS_AS(equimax::verify_eq8(f, 1, 8), std::domain_error);
    CHECK_THROWS_AS(equimax::verify_eq8(f, 3, 9), std::domain_error);
    CHECK_THROWS_AS(equimax::verify_eq8(f, 3, 0), std::invalid_argument);
}

TEST_CASE("maclaurin reconstruction") {
    CHECK(equimax::maclaurin_reconstruct(Rational(2), Rational(-4), 3).coefficients() ==
          std::vector<Rational>{Rational(2), Rational(-4), Rational(4), Rational(-8, 3)});
    for (unsigned order : {1u, 5u, 20u}) {
        CHECK(equimax::maclaurin_reconstruct(Rational(1), Rational(-1), order) ==
              equimax::exp_density_series(Rational(1), order));
    }
    CHECK_THROWS_AS(equimax::maclaurin_reconstruct(Rational(0), Rational(1), 2),
                    std::domain_error);
}

TEST_CASE("lemma3 hypothesis check") {
    CHECK(equimax::check_lemma3_hypothesis(equimax::exp_density_series(Rational(2), 10), 10)
              .passed());
    CHECK(equimax::check_lemma3_hypothesis(equimax::exp_density_series(Rational(1), 8), 8)
              .passed());

    // 1/(1+x) = 1 - x + x^2 - ... breaks the chain at k=2: f''(0) = 2, not 1
    std::vector<Rational> geo(4);
    for (unsigned k = 0; k < 4; ++k) {
        geo[k] = (k % 2 == 0) ? Rational(1) : Rational(-1);
    }
    const auto report = equimax::check_lemma3_hypothesis(PowerSeries(geo), 3);
    CHECK_FALSE(report.passed());
    REQUIRE_FALSE(report.discrepancies.empty());
    CHECK(report.discrepancies.front().parameters == "k=2");
    CHECK(report.discrepancies.front().lhs == Rational(2));
    CHECK(report.discrepancies.front().rhs == Rational(1));

    CHECK_THROWS_AS(
        equimax::check_lemma3_hypothesis(PowerSeries({Rational(0), Rational(1)}), 1),
        std::domain_error);

    // reconstructed series always satisfy the chain they encode
    equimax::Philox rng(5);
    for (int iter = 0; iter < 20; ++iter) {
        const Rational f0(static_cast<long long>(rng.next() % 9) + 1,
                          static_cast<long long>(rng.next() % 5) + 1);
        const Rational f1(static_cast<long long>(rng.next() % 19) - 9,
                          static_cast<long long>(rng.next() % 7) + 1);
        const PowerSeries rec = equimax::maclaurin_reconstruct(f0, f1, 10);
        CHECK(equimax::check_lemma3_hypothesis(rec, 10).passed());
    }
}
