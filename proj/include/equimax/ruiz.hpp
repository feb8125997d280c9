#pragma once

// Exact evaluation of the alternating binomial sums
//
//     H_{n,i}(x) = sum_{j=0}^{n} (-1)^j C(n,j) (x-j)^i
//
// together with verifiers for the combinatorial identities built on them:
// the Ruiz identity (H_{n,i}(x) = n! when i = n, 0 when i < n), a
// geometric-vs-binomial weighted-sum identity ("lemma2"), and the key
// identity behind the consecutive-maxima characterization ("theorem").
//
// H is always evaluated by its defining sum; the identities under test are
// never used as evaluation shortcuts.

#include <string>
#include <utility>
#include <vector>

#include "equimax/exact.hpp"

namespace equimax {

struct IdentityDiscrepancy {
    std::string parameters;  // e.g. "n=3 i=2 x=7/3"
    Rational lhs;
    Rational rhs;
};

struct IdentityReport {
    std::string identity_name;
    std::vector<std::pair<std::string, std::string>> parameter_set;
    std::vector<IdentityDiscrepancy> discrepancies;

    bool passed() const { return discrepancies.empty(); }
};

inline Rational hni(unsigned n, unsigned i, const Rational& x) {
    Rational sum(0);
    for (unsigned j = 0; j <= n; ++j) {
        Rational term = Rational(binomial(n, j)) * rat_pow(x - Rational(static_cast<int>(j)), i);
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

// Checks hni(n,i,x) = n! for i = n and 0 for i < n, over every n <= n_max,
// 0 <= i <= n, and every supplied x. All violations are collected so a
// failure is diagnosable from the report alone.
inline IdentityReport verify_ruiz(unsigned n_max, const std::vector<Rational>& x_values) {
    if (x_values.empty()) {
        throw std::invalid_argument("verify_ruiz: x_values must be nonempty");
    }
    IdentityReport report;
    report.identity_name = "ruiz";
    report.parameter_set = {{"n_max", std::to_string(n_max)},
                            {"x_count", std::to_string(x_values.size())}};
    for (unsigned n = 0; n <= n_max; ++n) {
        const Rational expected_diag{factorial(n)};
        for (unsigned i = 0; i <= n; ++i) {
            const Rational& expected = (i == n) ? expected_diag : Rational(0);
            for (const Rational& x : x_values) {
                Rational got = hni(n, i, x);
                if (got != expected) {
                    report.discrepancies.push_back(
                        {"n=" + std::to_string(n) + " i=" + std::to_string(i) + " x=" + x.str(),
                         got, expected});
                }
            }
        }
    }
    return report;
}

// Signed discrepancy (lhs - rhs) of
//   sum_{j=0}^{m} (k+2)^{m-j} H_{k,j}(k+1)  =  sum_{j=0}^{m} C(m+1,j+1) H_{k,j}(k+1).
// Zero certifies the identity instance.
inline Rational verify_lemma2(unsigned m, unsigned k) {
    const Rational x{static_cast<int>(k) + 1};
    const Rational base{static_cast<int>(k) + 2};
    Rational lhs(0);
    Rational rhs(0);
    for (unsigned j = 0; j <= m; ++j) {
        Rational h = hni(k, j, x);
        lhs += rat_pow(base, static_cast<long long>(m - j)) * h;
        rhs += Rational(binomial(m + 1, j + 1)) * h;
    }
    return lhs - rhs;
}

// Signed discrepancy (lhs - rhs) of
//   sum_{i=n-2}^{2n-4} n^{2n-3-i} H_{n-2,i}(n-1)
//     = sum_{i=n-2}^{2n-4} C(2n-2,i+1) H_{n-2,i}(n-1),
// the instance that closes the characterization argument for sample size n.
inline Rational verify_theorem_identity(long long n) {
    if (n < 3) {
        throw std::domain_error("verify_theorem_identity: requires n >= 3");
    }
    const unsigned un = static_cast<unsigned>(n);
    const Rational x{n - 1};
    const Rational base{n};
    Rational lhs(0);
    Rational rhs(0);
    for (unsigned i = un - 2; i <= 2 * un - 4; ++i) {
        Rational h = hni(un - 2, i, x);
        lhs += rat_pow(base, static_cast<long long>(2 * un - 3 - i)) * h;
        rhs += Rational(binomial(2 * un - 2, i + 1)) * h;
    }
    return lhs - rhs;
}

}  // namespace equimax
