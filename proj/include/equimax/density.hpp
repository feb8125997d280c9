#pragma once

// Parametric catalog of nonnegative continuous distributions: pdf, cdf,
// quantile, and seeded sampling. The family set deliberately spans both
// densities with f(0) > 0 (exponential, uniform, half-normal) and with
// f(0) = 0 (weibull/gamma with shape > 1), so the equidistribution identity
// can be falsified from either side of the analytic-at-zero divide.
//
// Sampling is deterministic given (model, count, seed): exponential, weibull
// and uniform invert their closed-form cdfs; gamma uses Marsaglia-Tsang and
// half-normal |sigma*Z|, all driven by the counter-based Philox engine.

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "equimax/rng.hpp"

namespace equimax {

enum class Family { exponential, weibull, gamma, uniform, half_normal };

class DensityModel {
  public:
    static DensityModel exponential(double rate) {
        return DensityModel(Family::exponential, rate, 0.0);
    }
    static DensityModel weibull(double shape, double scale) {
        return DensityModel(Family::weibull, shape, scale);
    }
    static DensityModel gamma(double shape, double rate) {
        return DensityModel(Family::gamma, shape, rate);
    }
    static DensityModel uniform(double theta) { return DensityModel(Family::uniform, theta, 0.0); }
    static DensityModel half_normal(double sigma) {
        return DensityModel(Family::half_normal, sigma, 0.0);
    }

    // Grammar: "exp:rate=1.0", "weibull:shape=2,scale=1", "gamma:shape=2,rate=1",
    // "uniform:theta=1", "halfnormal:sigma=1".
    static DensityModel parse(std::string_view text);

    Family family() const { return family_; }

    // Canonical spec string (round-trips through parse).
    std::string spec_string() const {
        switch (family_) {
            case Family::exponential: return "exp:rate=" + fmt(a_);
            case Family::weibull: return "weibull:shape=" + fmt(a_) + ",scale=" + fmt(b_);
            case Family::gamma: return "gamma:shape=" + fmt(a_) + ",rate=" + fmt(b_);
            case Family::uniform: return "uniform:theta=" + fmt(a_);
            case Family::half_normal: return "halfnormal:sigma=" + fmt(a_);
        }
        return {};
    }

    double pdf(double x) const {
        require_nonneg(x);
        switch (family_) {
            case Family::exponential:
                return a_ * std::exp(-a_ * x);
            case Family::weibull: {
                if (x == 0.0) {
                    if (a_ > 1.0) return 0.0;
                    if (a_ == 1.0) return 1.0 / b_;
                    return std::numeric_limits<double>::infinity();
                }
                const double t = std::pow(x / b_, a_);
                return (a_ / b_) * std::pow(x / b_, a_ - 1.0) * std::exp(-t);
            }
            case Family::gamma: {
                if (x == 0.0) {
                    if (a_ > 1.0) return 0.0;
                    if (a_ == 1.0) return b_;
                    return std::numeric_limits<double>::infinity();
                }
                return std::exp(a_ * std::log(b_) + (a_ - 1.0) * std::log(x) - b_ * x -
                                std::lgamma(a_));
            }
            case Family::uniform:
                return x <= a_ ? 1.0 / a_ : 0.0;
            case Family::half_normal:
                return std::sqrt(2.0 / 3.141592653589793238462643383279) / a_ *
                       std::exp(-0.5 * (x / a_) * (x / a_));
        }
        return 0.0;
    }

    double cdf(double x) const {
        require_nonneg(x);
        switch (family_) {
            case Family::exponential:
                return -std::expm1(-a_ * x);
            case Family::weibull:
                return -std::expm1(-std::pow(x / b_, a_));
            case Family::gamma:
                return boost::math::gamma_p(a_, b_ * x);
            case Family::uniform:
                return x >= a_ ? 1.0 : x / a_;
            case Family::half_normal:
                return std::erf(x / (a_ * 1.4142135623730950488016887242097));
        }
        return 0.0;
    }

    // Inverse cdf for u in [0, 1). Exponential, weibull and uniform are
    // closed-form; gamma and half-normal go through boost inverses.
    double quantile(double u) const {
        if (!(u >= 0.0 && u < 1.0)) {
            throw std::domain_error("quantile: u must lie in [0, 1)");
        }
        switch (family_) {
            case Family::exponential:
                return -std::log1p(-u) / a_;
            case Family::weibull:
                return b_ * std::pow(-std::log1p(-u), 1.0 / a_);
            case Family::gamma:
                return boost::math::gamma_p_inv(a_, u) / b_;
            case Family::uniform:
                return a_ * u;
            case Family::half_normal:
                return a_ * 1.4142135623730950488016887242097 * boost::math::erf_inv(u);
        }
        return 0.0;
    }

    bool has_closed_form_quantile() const {
        return family_ == Family::exponential || family_ == Family::weibull ||
               family_ == Family::uniform;
    }

    // (pdf, cdf) in one call.
    std::pair<double, double> evaluate(double x) const { return {pdf(x), cdf(x)}; }

    // One draw; strictly positive for every family.
    double draw(Philox& rng) const {
        switch (family_) {
            case Family::exponential:
            case Family::weibull:
            case Family::uniform: {
                const double u = rng.uniform_open01();
                if (family_ == Family::uniform) {
                    return a_ * u;
                }
                const double e = -std::log(u);  // Exp(1), strictly positive
                return family_ == Family::exponential ? e / a_ : b_ * std::pow(e, 1.0 / a_);
            }
            case Family::gamma:
                return gamma_draw(rng, a_) / b_;
            case Family::half_normal:
                return std::abs(a_ * standard_normal(rng));
        }
        return 0.0;
    }

    // Deterministic given (model, count, seed); uses the sampling stream.
    std::vector<double> sample(std::size_t count, std::uint64_t seed) const {
        if (count < 1) {
            throw std::invalid_argument("sample: count must be >= 1");
        }
        Philox rng(seed, stream::id(stream::kSampling, 0));
        std::vector<double> out(count);
        for (double& v : out) {
            v = draw(rng);
        }
        return out;
    }

  private:
    DensityModel(Family family, double a, double b) : family_(family), a_(a), b_(b) {
        if (!(a_ > 0.0) || (uses_second_param() && !(b_ > 0.0))) {
            throw std::domain_error("DensityModel: parameters must be strictly positive");
        }
    }

    bool uses_second_param() const {
        return family_ == Family::weibull || family_ == Family::gamma;
    }

    static void require_nonneg(double x) {
        if (!(x >= 0.0)) {
            throw std::domain_error("DensityModel: x must be >= 0");
        }
    }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }

    Family family_;
    double a_;
    double b_;
};

inline DensityModel DensityModel::parse(std::string_view text) {
    const auto fail = [&]() -> DensityModel {
        throw std::invalid_argument(
            "invalid model '" + std::string(text) +
            "'; expected exp:rate=R | weibull:shape=K,scale=S | gamma:shape=A,rate=B | "
            "uniform:theta=T | halfnormal:sigma=S");
    };
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        return fail();
    }
    const std::string_view family = text.substr(0, colon);
    std::string_view rest = text.substr(colon + 1);

    // key=value pairs, comma separated, order as written in the grammar
    std::vector<std::pair<std::string_view, double>> kv;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
            return fail();
        }
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(std::string(item.substr(eq + 1)), &used);
        } catch (const std::exception&) {
            return fail();
        }
        if (used != item.size() - eq - 1) {
            return fail();
        }
        kv.emplace_back(item.substr(0, eq), value);
    }

    const auto get = [&](std::string_view key) -> double {
        for (const auto& [k, v] : kv) {
            if (k == key) {
                return v;
            }
        }
        fail();
        return 0.0;
    };

    try {
        if (family == "exp" && kv.size() == 1) {
            return DensityModel::exponential(get("rate"));
        }
        if (family == "weibull" && kv.size() == 2) {
            return DensityModel::weibull(get("shape"), get("scale"));
        }
        if (family == "gamma" && kv.size() == 2) {
            return DensityModel::gamma(get("shape"), get("rate"));
        }
        if (family == "uniform" && kv.size() == 1) {
            return DensityModel::uniform(get("theta"));
        }
        if (family == "halfnormal" && kv.size() == 1) {
            return DensityModel::half_normal(get("sigma"));
        }
    } catch (const std::domain_error&) {
        throw std::invalid_argument("invalid model '" + std::string(text) +
                                    "': parameters must be strictly positive");
    }
    return fail();
}

}  // namespace equimax
