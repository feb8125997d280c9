#pragma once

// Counter-based random number generation: Philox-4x64 with 10 rounds
// (Salmon et al., SC'11), the same keyed block function numpy exposes as
// numpy.random.Philox. Counter-based means a draw is a pure function of
// (key, counter), so streams never share state: the 128-bit key carries
// (seed, stream) and distinct streams are independent by construction.
// Reports produced from a given seed are bit-reproducible across platforms.

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace equimax {

inline constexpr const char* kRngName = "philox4x64-10";

// Stream ids are partitioned as (tag << 32) | index so different uses of the
// same base seed can never collide.
namespace stream {
inline constexpr std::uint64_t kSampling = 0;     // density_models sampling
inline constexpr std::uint64_t kGrouping = 1;     // batch shuffle before grouping
inline constexpr std::uint64_t kPermutation = 2;  // permutation b uses tag 2, index b
inline constexpr std::uint64_t kReplicate = 3;    // per-replicate seed derivation

inline constexpr std::uint64_t id(std::uint64_t tag, std::uint64_t index) {
    return (tag << 32) | (index & 0xffffffffu);
}
}  // namespace stream

class Philox {
  public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream_id = 0)
        : key_{seed, stream_id} {}

    // One keyed block: 4 output words from a 256-bit counter.
    static std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 2>& key,
                                              std::array<std::uint64_t, 4> ctr) {
        std::uint64_t k0 = key[0];
        std::uint64_t k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += kWeyl0;
                k1 += kWeyl1;
            }
            const auto [hi0, lo0] = mulwide(kMult0, ctr[0]);
            const auto [hi1, lo1] = mulwide(kMult1, ctr[2]);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
        }
        return ctr;
    }

    std::uint64_t next() {
        if (pos_ == 4) {
            buf_ = block(key_, counter_);
            increment_counter();
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0, 1); safe as a log/quantile argument.
    double uniform_open01() {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

  private:
    static std::pair<std::uint64_t, std::uint64_t> mulwide(std::uint64_t a, std::uint64_t b) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        return {static_cast<std::uint64_t>(p >> 64), static_cast<std::uint64_t>(p)};
    }

    void increment_counter() {
        for (int i = 0; i < 4; ++i) {
            if (++counter_[i] != 0) {
                break;
            }
        }
    }

    static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
    static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> buf_{};
    unsigned pos_ = 4;
};

// Collapses (base seed, index) into a fresh seed for an independent
// replicate; one Philox block keyed by the replicate stream.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    return Philox::block({base_seed, stream::id(stream::kReplicate, index)},
                         {index, 0, 0, 0})[0];
}

// Standard normal via Box-Muller; consumes two uniforms per draw (the sine
// component is discarded to keep consumption patterns uniform).
inline double standard_normal(Philox& rng) {
    const double u1 = rng.uniform_open01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled with the
// standard boost: draw at shape+1 and scale by u^(1/shape).
inline double gamma_draw(Philox& rng, double shape) {
    if (shape < 1.0) {
        const double u = rng.uniform_open01();
        return gamma_draw(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open01();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

}  // namespace equimax
