#include "unruhsim/coinflip.hpp"

#include <cmath>
#include <stdexcept>

#include "unruhsim/mc.hpp"

namespace unruhsim {

namespace {

void check_detector(const DetectorModel& detector) {
    if (!(detector.efficiency >= 0.0 && detector.efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
    if (!(detector.dark_count_prob >= 0.0 && detector.dark_count_prob < 1.0)) {
        throw std::invalid_argument("dark count probability must lie in [0, 1)");
    }
}

void check_config(const CoinFlipConfig& config) {
    if (!(config.mu >= 0.0 && config.mu < 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1)");
    }
    if (config.trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    check_detector(config.alice);
    check_detector(config.bob);
    if (config.cheat.kind == CheatModel::Kind::injection) {
        if (config.cheat.photons < 1) {
            throw std::invalid_argument("injected photon count must be >= 1");
        }
        if (!(config.cheat.evade_prob >= 0.0 && config.cheat.evade_prob <= 1.0)) {
            throw std::invalid_argument("evade probability must lie in [0, 1]");
        }
    }
}

struct Counts {
    std::uint64_t outcome0 = 0;
    std::uint64_t outcome1 = 0;
    std::uint64_t fail = 0;
    std::uint64_t agree = 0;
};

// One trial; returns {honest bit or -1 for fail, announced agreement}.
void run_trial(const CoinFlipConfig& config, Rng& rng, Counts& counts) {
    const CheatModel& cheat = config.cheat;
    if (cheat.kind == CheatModel::Kind::injection) {
        // Bob's friend populates the mode headed for Alice's lab; Alice's
        // vacuum check catches it unless the injection evades.
        if (!rng.bernoulli(cheat.evade_prob)) {
            ++counts.fail;
            return;
        }
        const int n = sample_joint_photons(config.mu, rng);
        const bool alice_bit = detect(n + cheat.photons, config.alice, rng);
        const bool bob_bit = detect(n, config.bob, rng);
        ++(alice_bit ? counts.outcome1 : counts.outcome0);
        counts.agree += alice_bit == bob_bit;
        return;
    }
    const int n = sample_joint_photons(config.mu, rng);
    const bool alice_bit = detect(n, config.alice, rng);
    const bool bob_bit = detect(n, config.bob, rng);
    bool honest_bit = alice_bit;
    bool announced_other = bob_bit;
    if (cheat.kind == CheatModel::Kind::report_flip) {
        if (cheat.flipped == CheatModel::Party::bob) {
            announced_other = !bob_bit;
        } else {
            honest_bit = bob_bit;
            announced_other = !alice_bit;
        }
    }
    ++(honest_bit ? counts.outcome1 : counts.outcome0);
    counts.agree += honest_bit == announced_other;
}

ProtocolStats finalize(const CoinFlipConfig& config,
                       const std::vector<Counts>& parts) {
    Counts total;
    for (const Counts& part : parts) {
        total.outcome0 += part.outcome0;
        total.outcome1 += part.outcome1;
        total.fail += part.fail;
        total.agree += part.agree;
    }
    ProtocolStats stats;
    stats.trials = config.trials;
    stats.count0 = total.outcome0;
    stats.count1 = total.outcome1;
    stats.count_fail = total.fail;
    stats.count_agree = total.agree;
    const double n = static_cast<double>(config.trials);
    stats.p_outcome0 = total.outcome0 / n;
    stats.p_outcome1 = total.outcome1 / n;
    stats.p_fail = total.fail / n;
    const std::uint64_t completed = total.outcome0 + total.outcome1;
    stats.agreement_rate =
        completed > 0 ? static_cast<double>(total.agree) / completed : 1.0;
    const double honest_share = (1.0 - stats.p_fail) / 2.0;
    stats.epsilon0 = std::max(0.0, stats.p_outcome0 - honest_share);
    stats.epsilon1 = std::max(0.0, stats.p_outcome1 - honest_share);
    // Multinomial delta method for p_b - (1 - p_fail)/2.
    auto epsilon_se = [&](double pb) {
        const double pf = stats.p_fail;
        const double var =
            (pb * (1.0 - pb) + 0.25 * pf * (1.0 - pf) - pb * pf) / n;
        return std::sqrt(std::max(0.0, var));
    };
    stats.epsilon0_se = epsilon_se(stats.p_outcome0);
    stats.epsilon1_se = epsilon_se(stats.p_outcome1);
    return stats;
}

ProtocolStats run_config(const CoinFlipConfig& config) {
    check_config(config);
    auto kernel = [&config](Rng& rng, mc::BlockRange range) {
        Counts counts;
        for (std::uint64_t t = range.begin; t < range.end; ++t) {
            run_trial(config, rng, counts);
        }
        return counts;
    };
    return finalize(config, mc::run_blocks(config.trials, config.seed,
                                           config.shards, kernel));
}

}  // namespace

int sample_joint_photons(double mu, Rng& rng) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1)");
    }
    const double u = rng.uniform();
    if (mu == 0.0) {
        return 0;
    }
    // P(n) = (1 - mu^2) mu^(2n): inverse CDF of the geometric law.
    return static_cast<int>(std::floor(std::log1p(-u) / (2.0 * std::log(mu))));
}

bool detect(int photons, const DetectorModel& detector, Rng& rng) {
    if (photons < 0) {
        throw std::invalid_argument("photon count must be >= 0");
    }
    check_detector(detector);
    const double p_click = 1.0 - std::pow(1.0 - detector.efficiency, photons) *
                                     (1.0 - detector.dark_count_prob);
    return rng.bernoulli(p_click);
}

ProtocolStats run_protocol(const CoinFlipConfig& config) {
    if (config.cheat.kind != CheatModel::Kind::none) {
        throw std::invalid_argument("run_protocol expects no cheat model");
    }
    return run_config(config);
}

ProtocolStats run_with_cheat(const CoinFlipConfig& config) {
    if (config.cheat.kind == CheatModel::Kind::none) {
        throw std::invalid_argument("run_with_cheat expects a cheat model");
    }
    return run_config(config);
}

KitaevReport kitaev_check(double eps_alice, double eps_bob) {
    return kitaev_check(eps_alice, eps_alice, eps_bob, eps_bob);
}

KitaevReport kitaev_check(double eps_alice0, double eps_alice1,
                          double eps_bob0, double eps_bob1) {
    for (double eps : {eps_alice0, eps_alice1, eps_bob0, eps_bob1}) {
        if (!(eps >= 0.0 && eps <= 0.5 + 1e-12)) {
            throw std::invalid_argument("epsilon must lie in [0, 1/2]");
        }
    }
    KitaevReport report;
    report.product0 = (0.5 + eps_alice0) * (0.5 + eps_bob0);
    report.product1 = (0.5 + eps_alice1) * (0.5 + eps_bob1);
    report.satisfies_bound = report.product0 >= 0.5 && report.product1 >= 0.5;
    return report;
}

}  // namespace unruhsim
