#include "bcall/synth.hpp"

#include <cmath>
#include <cstdio>

namespace bcall {

namespace {

std::string padded_id(const char* prefix, std::size_t index, std::size_t total) {
    int width = 1;
    for (std::size_t t = total; t >= 10; t /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, index + 1);
    return buf;
}

} // namespace

void SynthConfig::validate() const {
    if (n_legislators < 4) throw ConfigError("synth: need at least 4 legislators");
    if (n_rollcalls < 2) throw ConfigError("synth: need at least 2 rollcalls");
    if (theta.size() != n_legislators)
        throw ConfigError("synth: theta size must equal n_legislators");
    if (sigma.size() != n_legislators)
        throw ConfigError("synth: sigma size must equal n_legislators");
    if (!parties.empty() && parties.size() != n_legislators)
        throw ConfigError("synth: parties must be empty or one per legislator");
    for (double t : theta)
        if (t < -1.0 || t > 1.0) throw ConfigError("synth: theta values must lie in [-1,1]");
    for (double s : sigma)
        if (s < 0.0) throw ConfigError("synth: sigma values must be >= 0");
    if (abstain_prob < 0.0 || abstain_prob >= 1.0 || absent_prob < 0.0 || absent_prob >= 1.0 ||
        abstain_prob + absent_prob >= 1.0)
        throw ConfigError("synth: abstain_prob + absent_prob must stay below 1");
    if (cutpoint_max < cutpoint_min) throw ConfigError("synth: empty cutpoint range");
}

SynthResult generate(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    std::vector<Legislator> legislators(cfg.n_legislators);
    for (std::size_t i = 0; i < cfg.n_legislators; ++i) {
        legislators[i].id = padded_id("L", i, cfg.n_legislators);
        legislators[i].name = legislators[i].id;
        if (!cfg.parties.empty()) legislators[i].party = cfg.parties[i];
    }

    std::vector<RollCall> rollcalls(cfg.n_rollcalls);
    for (std::size_t j = 0; j < cfg.n_rollcalls; ++j) {
        RollCall& rc = rollcalls[j];
        rc.id = padded_id("V", j, cfg.n_rollcalls);
        // spread through the configured year, always a valid date
        rc.date = Date{cfg.year, 1 + static_cast<int>((j / 28) % 12),
                       1 + static_cast<int>(j % 28)};

        double polarity = rng.bernoulli(0.5) ? 1.0 : -1.0;
        double cutpoint = rng.uniform(cfg.cutpoint_min, cfg.cutpoint_max);
        for (std::size_t i = 0; i < cfg.n_legislators; ++i) {
            double noise = rng.normal() * cfg.sigma[i];
            Cast cast = polarity * cfg.theta[i] - cutpoint + noise > 0.0 ? Cast::Yea : Cast::Nay;
            double overwrite = rng.uniform01();
            if (overwrite < cfg.abstain_prob)
                cast = Cast::Abstain;
            else if (overwrite < cfg.abstain_prob + cfg.absent_prob)
                cast = Cast::Absent;
            rc.casts.emplace(legislators[i].id, cast);
        }
    }

    return SynthResult{VoteMatrix(std::move(legislators), std::move(rollcalls)), cfg.theta,
                       cfg.sigma};
}

SynthConfig random_config(std::size_t n_legislators, std::size_t n_rollcalls, std::uint64_t seed,
                          double theta_lo, double theta_hi, double sigma_lo, double sigma_hi,
                          double abstain_prob, double absent_prob) {
    SynthConfig cfg;
    cfg.n_legislators = n_legislators;
    cfg.n_rollcalls = n_rollcalls;
    cfg.seed = seed;
    cfg.abstain_prob = abstain_prob;
    cfg.absent_prob = absent_prob;
    Rng rng(seed);
    cfg.theta.resize(n_legislators);
    cfg.sigma.resize(n_legislators);
    for (auto& t : cfg.theta) t = rng.uniform(theta_lo, theta_hi);
    for (auto& s : cfg.sigma) s = rng.uniform(sigma_lo, sigma_hi);
    return cfg;
}

SynthConfig two_bloc_config(std::size_t n_legislators, std::size_t n_rollcalls,
                            std::uint64_t seed) {
    SynthConfig cfg;
    cfg.n_legislators = n_legislators;
    cfg.n_rollcalls = n_rollcalls;
    cfg.seed = seed;
    cfg.theta.assign(n_legislators, 0.8);
    cfg.sigma.assign(n_legislators, 0.0);
    cfg.parties.assign(n_legislators, "PR");
    for (std::size_t i = 0; i < n_legislators / 2; ++i) {
        cfg.theta[i] = -0.8;
        cfg.parties[i] = "PL";
    }
    return cfg;
}

} // namespace bcall
