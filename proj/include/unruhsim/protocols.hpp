#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "unruhsim/coinflip.hpp"
#include "unruhsim/gaussian.hpp"

namespace unruhsim {

// Two-mode entanglement witness Var(x_a - x_b) + Var(p_a + p_b). Separable
// states stay at or above 1; two_mode_squeezed(mu, +1) gives
// (1 - mu)/(1 + mu).
double duan_epr(const GaussianState& state);

// Displaced-parity correlation: each party displaces its mode and measures
// photon-number parity. E(a, b) = (pi/2)^2 W(a, b) via the Wigner-parity
// identity, which the tests verify against the Fock backend.
struct ChshSetting {
    Eigen::Vector2d a = Eigen::Vector2d::Zero();  // Alice (x, p) displacement
    Eigen::Vector2d b = Eigen::Vector2d::Zero();  // Bob (x, p) displacement
};

double parity_correlation(const GaussianState& state, const Eigen::Vector2d& a,
                          const Eigen::Vector2d& b);

// E(0,0) + E(a,0) + E(0,b) - E(a,b) for settings {0, a} x {0, b}.
double chsh_parity(const GaussianState& state, const ChshSetting& setting);

struct ChshSearchResult {
    ChshSetting best;
    double value = 0.0;
    std::vector<double> level_values;  // best value per refinement level
};

// Deterministic grid search over both parties' displacements, refined around
// the running optimum. No randomness enters; repeated calls are identical.
ChshSearchResult chsh_search(const GaussianState& state, double range = 1.5,
                             int points = 9, int refinements = 2);

struct KeyBits {
    std::vector<std::uint8_t> alice;
    std::vector<std::uint8_t> bob;
    double qber = 0.0;
    double bit_bias = 0.0;       // fraction of 1s on Alice's side
    double chsh_estimate = 0.0;  // grid-searched violation of the source state
};

// Raw key from correlated photon counting, with the displaced-parity
// violation of the underlying two-mode state as the eavesdropping check.
KeyBits generate_key_bits(double mu, std::uint64_t n_bits,
                          const DetectorModel& alice,
                          const DetectorModel& bob, std::uint64_t seed,
                          int shards = 1);

}  // namespace unruhsim
