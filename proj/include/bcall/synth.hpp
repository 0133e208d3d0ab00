#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bcall/model.hpp"

namespace bcall {

// Deterministic random stream: mt19937_64 (output sequence fixed by the
// standard), uniforms from the top 53 bits, normals via Box-Muller consuming
// exactly two uniforms each. Identical seeds give identical streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        // 1 - u1 keeps the log argument in (0, 1]
        return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * kPi * u2);
    }

    // true with probability p
    bool bernoulli(double p) { return uniform01() < p; }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

// Name of the stream contract above, recorded in generated metadata.
inline constexpr const char* kRngContract = "mt19937_64/53bit-uniform/box-muller";

struct SynthConfig {
    std::size_t n_legislators = 0;
    std::size_t n_rollcalls = 0;
    std::vector<double> theta;         // latent ideology per legislator, in [-1,1]
    std::vector<double> sigma;         // vote noise per legislator, >= 0
    std::vector<std::string> parties;  // optional, empty or one per legislator
    double abstain_prob = 0.0;         // in [0,1)
    double absent_prob = 0.0;          // in [0,1); abstain_prob + absent_prob < 1
    double cutpoint_min = -0.5;
    double cutpoint_max = 0.5;
    std::uint64_t seed = 0;
    int year = 2020; // all generated rollcalls are dated within this year

    void validate() const; // throws ConfigError
};

struct SynthResult {
    VoteMatrix matrix;
    std::vector<double> theta; // planted truth, echoed from the config
    std::vector<double> sigma;
};

// Cutpoint voting model. Per rollcall j: polarity s_j uniform on {-1,+1} and
// cutpoint c_j uniform on [cutpoint_min, cutpoint_max]; legislator i casts Yea
// iff s_j * theta_i - c_j + noise > 0 with noise ~ N(0, sigma_i), Nay
// otherwise; the cast is then overwritten with Abstain (prob abstain_prob) or
// Absent (prob absent_prob). Stream order per rollcall: polarity, cutpoint,
// then per legislator noise (2 uniforms) and overwrite (1 uniform).
SynthResult generate(const SynthConfig& cfg);

// Config with theta ~ U[theta_lo, theta_hi] and sigma ~ U[sigma_lo, sigma_hi],
// drawn from their own stream seeded with `seed`; generate() will reuse the
// same seed for the vote stream.
SynthConfig random_config(std::size_t n_legislators, std::size_t n_rollcalls, std::uint64_t seed,
                          double theta_lo = -1.0, double theta_hi = 1.0, double sigma_lo = 0.1,
                          double sigma_hi = 0.6, double abstain_prob = 0.0,
                          double absent_prob = 0.0);

// Two noise-free blocs at theta = -0.8 and +0.8 (parties "PL"/"PR"), first
// half left. Every generated rollcall is a perfect party-line split.
SynthConfig two_bloc_config(std::size_t n_legislators, std::size_t n_rollcalls,
                            std::uint64_t seed);

} // namespace bcall
