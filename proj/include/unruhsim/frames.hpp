#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unruhsim/gaussian.hpp"

namespace unruhsim {

inline constexpr double kSpeedOfLight = 299792458.0;        // m / s
inline constexpr double kPlanckReduced = 1.054571817e-34;   // J s
inline constexpr double kBoltzmann = 1.380649e-23;          // J / K

struct AccelParams {
    double acceleration = 0.0;        // proper acceleration, m / s^2
    double rindler_frequency = 0.0;   // mode frequency in the accelerated frame
    double speed_of_light = kSpeedOfLight;
    double planck_reduced = kPlanckReduced;
    double boltzmann = kBoltzmann;
};

// mu = exp(-pi omega' c / a).
double mu_from_acceleration(const AccelParams& params);

// mu = exp(-pi^2 D / lambda) for wavepackets separated by D at wavelength
// lambda. D = 0 returns the boundary value 1, which the state constructors
// reject; everything downstream works on the open interval [0, 1).
double mu_from_geometry(double distance, double wavelength);

// Acceleration with mu^2 = 1/2: a = 2 pi omega' c / ln 2.
double fair_coin_acceleration(double rindler_frequency, double speed_of_light);

// k_B T = hbar a / (2 pi c).
double unruh_temperature(const AccelParams& params);

// Pairing of one accelerated-frame mode and its mirror with the two inertial
// wavepacket modes they mix into.
struct FramePair {
    std::string rindler_mode;
    std::string mirror_mode;
    std::pair<std::string, std::string> minkowski_modes;
    double mu = 0.0;
};

enum class FrameDirection { to_rindler, to_minkowski };

// The literal two-mode Bogoliubov map a' = (a - mu a~^dag) / sqrt(1 - mu^2)
// as a symplectic matrix over (x, p, x~, p~):
//   x' = (x - mu x~)/s,  p' = (p + mu p~)/s,
//   x~' = (x~ - mu x)/s, p~' = (p~ + mu p)/s,  s = sqrt(1 - mu^2).
SymplecticOp bogoliubov_symplectic(double mu);

// Re-expresses a state in the other frame, blockwise per pair, and renames the
// pair's modes accordingly. Mode phases are fixed so that the inertial vacuum
// appears in the accelerated frame as two_mode_squeezed(mu, +1); concretely,
// to_rindler conjugates by the inverse of bogoliubov_symplectic(mu) (which
// equals the mu -> -mu matrix, the standard two-mode squeezer with
// tanh r = mu) and to_minkowski conjugates by the matrix itself.
GaussianState transform_state(const GaussianState& state,
                              const std::vector<FramePair>& pairs,
                              FrameDirection direction);

// Pushes a linear quadrature observable (coefficients over the quadratures of
// `labels`, in that mode order) through the frame change so that expectation
// values are preserved: if states map with B, coefficients map with B^-T.
// A Rindler-local observable picks up support on the mirror mode's inertial
// partner, with coefficient magnitude mu / sqrt(1 - mu^2).
Eigen::VectorXd transform_observable(const Eigen::VectorXd& coefficients,
                                     const std::vector<std::string>& labels,
                                     const std::vector<FramePair>& pairs,
                                     FrameDirection direction);

// State of an accelerated-frame vacuum pair as inertial observers describe
// it: two_mode_squeezed(mu, -1), the mu -> -mu twin of the thermal-looking
// resource state. Cooling a mode pair to the accelerated-frame vacuum
// therefore *creates* inertial-frame entanglement.
GaussianState rindler_vacuum_in_minkowski(double mu, const std::string& a = "A",
                                          const std::string& b = "At");

}  // namespace unruhsim
