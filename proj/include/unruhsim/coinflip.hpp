#pragma once

#include <cstdint>

#include "unruhsim/rng.hpp"

namespace unruhsim {

// Coin-flipping on the shared vacuum: both parties count photons in mirrored
// mode pairs, so they observe the same geometric photon number
// P(n) = (1 - mu^2) mu^(2n). "Click" (n >= 1 detected) means outcome 1,
// "no click" outcome 0; mu^2 = 1/2 makes the coin fair.

struct DetectorModel {
    double efficiency = 1.0;        // per-photon detection probability
    double dark_count_prob = 0.0;   // false click probability per trial
};

struct CheatModel {
    enum class Kind { none, injection, report_flip };
    enum class Party { alice, bob };
    Kind kind = Kind::none;
    // injection: the cheating party (Bob, by the protocol roles) injects
    // `photons` into Alice's mode before the flip; with probability
    // 1 - evade_prob Alice's vacuum check catches it and the trial fails.
    int photons = 1;
    double evade_prob = 0.0;
    // report_flip: the flagged party announces the negation of its own bit.
    Party flipped = Party::bob;
};

struct CoinFlipConfig {
    double mu = 0.0;
    DetectorModel alice;
    DetectorModel bob;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    CheatModel cheat;
    int shards = 1;
};

// Outcome probabilities always track the honest party and satisfy
// p_outcome0 + p_outcome1 + p_fail = 1 exactly. agreement_rate compares the
// honest party's bit with the other party's announced bit over completed
// trials. epsilon_b = max(0, p_b - (1 - p_fail) / 2) measures the excess of
// outcome b over the honest expectation among completed trials; with no
// fails this is exactly max(0, p_b - 1/2).
struct ProtocolStats {
    std::uint64_t trials = 0;
    std::uint64_t count0 = 0;
    std::uint64_t count1 = 0;
    std::uint64_t count_fail = 0;
    std::uint64_t count_agree = 0;
    double p_outcome0 = 0.0;
    double p_outcome1 = 0.0;
    double p_fail = 0.0;
    double agreement_rate = 0.0;
    double epsilon0 = 0.0;
    double epsilon1 = 0.0;
    double epsilon0_se = 0.0;
    double epsilon1_se = 0.0;
};

// Photon number both parties share in one trial; inverse-CDF sampling of the
// geometric law. Consumes exactly one uniform.
int sample_joint_photons(double mu, Rng& rng);

// P(click) = 1 - (1 - efficiency)^n (1 - dark_count_prob). Consumes exactly
// one uniform.
bool detect(int photons, const DetectorModel& detector, Rng& rng);

ProtocolStats run_protocol(const CoinFlipConfig& config);

ProtocolStats run_with_cheat(const CoinFlipConfig& config);

struct KitaevReport {
    double product0 = 0.0;
    double product1 = 0.0;
    bool satisfies_bound = false;  // product >= 1/2 for both bits
};

// (1/2 + eps_A)(1/2 + eps_B) per bit against the bound 1/2. A single epsilon
// pair applies to both bits; the four-argument overload takes per-bit values.
KitaevReport kitaev_check(double eps_alice, double eps_bob);
KitaevReport kitaev_check(double eps_alice0, double eps_alice1,
                          double eps_bob0, double eps_bob1);

}  // namespace unruhsim
