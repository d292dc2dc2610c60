#include "unruhsim/frames.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace unruhsim {

namespace {

// Literal frame-change matrix for a signed parameter; the inverse of the
// mu matrix is the -mu matrix.
Eigen::Matrix4d bogoliubov_matrix(double mu) {
    const double s = std::sqrt(1.0 - mu * mu);
    const double c = 1.0 / s;
    const double m = mu / s;
    Eigen::Matrix4d b;
    b << c, 0.0, -m, 0.0,
         0.0, c, 0.0, m,
         -m, 0.0, c, 0.0,
         0.0, m, 0.0, c;
    return b;
}

void check_mu(double mu) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1)");
    }
}

}  // namespace

double mu_from_acceleration(const AccelParams& params) {
    if (params.acceleration <= 0.0) {
        throw std::invalid_argument("acceleration must be > 0");
    }
    if (params.rindler_frequency <= 0.0) {
        throw std::invalid_argument("rindler frequency must be > 0");
    }
    return std::exp(-std::numbers::pi * params.rindler_frequency *
                    params.speed_of_light / params.acceleration);
}

double mu_from_geometry(double distance, double wavelength) {
    if (distance < 0.0) {
        throw std::invalid_argument("distance must be >= 0");
    }
    if (wavelength <= 0.0) {
        throw std::invalid_argument("wavelength must be > 0");
    }
    return std::exp(-std::numbers::pi * std::numbers::pi * distance /
                    wavelength);
}

double fair_coin_acceleration(double rindler_frequency, double speed_of_light) {
    if (rindler_frequency <= 0.0 || speed_of_light <= 0.0) {
        throw std::invalid_argument("frequency and speed must be > 0");
    }
    // Solves mu^2 = 1/2.
    return 2.0 * std::numbers::pi * rindler_frequency * speed_of_light /
           std::log(2.0);
}

double unruh_temperature(const AccelParams& params) {
    if (params.acceleration <= 0.0) {
        throw std::invalid_argument("acceleration must be > 0");
    }
    return params.planck_reduced * params.acceleration /
           (2.0 * std::numbers::pi * params.speed_of_light * params.boltzmann);
}

SymplecticOp bogoliubov_symplectic(double mu) {
    check_mu(mu);
    return SymplecticOp(bogoliubov_matrix(mu));
}

GaussianState transform_state(const GaussianState& state,
                              const std::vector<FramePair>& pairs,
                              FrameDirection direction) {
    GaussianState out = state;
    std::map<std::string, std::string> names;
    for (const auto& pair : pairs) {
        check_mu(pair.mu);
        const double mu_signed = direction == FrameDirection::to_rindler
                                     ? -pair.mu
                                     : pair.mu;
        const SymplecticOp op{bogoliubov_matrix(mu_signed)};
        if (direction == FrameDirection::to_rindler) {
            out = out.apply(
                op, {pair.minkowski_modes.first, pair.minkowski_modes.second});
            names[pair.minkowski_modes.first] = pair.rindler_mode;
            names[pair.minkowski_modes.second] = pair.mirror_mode;
        } else {
            out = out.apply(op, {pair.rindler_mode, pair.mirror_mode});
            names[pair.rindler_mode] = pair.minkowski_modes.first;
            names[pair.mirror_mode] = pair.minkowski_modes.second;
        }
    }
    return out.renamed(names);
}

Eigen::VectorXd transform_observable(const Eigen::VectorXd& coefficients,
                                     const std::vector<std::string>& labels,
                                     const std::vector<FramePair>& pairs,
                                     FrameDirection direction) {
    if (coefficients.size() != 2 * static_cast<int>(labels.size())) {
        throw std::invalid_argument("coefficient vector must have length 2M");
    }
    auto find = [&labels](const std::string& label) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) {
                return static_cast<int>(i);
            }
        }
        throw std::invalid_argument("unknown mode: " + label);
    };
    Eigen::VectorXd out = coefficients;
    for (const auto& pair : pairs) {
        check_mu(pair.mu);
        // Coordinates map with B, so coefficients map with B^-T; the inverse
        // of the signed matrix is the sign-flipped matrix, and each matrix is
        // symmetric.
        const double mu_signed = direction == FrameDirection::to_rindler
                                     ? pair.mu
                                     : -pair.mu;
        const Eigen::Matrix4d b = bogoliubov_matrix(mu_signed);
        // The labels named by the pair are the ones present *before* the
        // change of frame.
        const int ia = direction == FrameDirection::to_rindler
                           ? find(pair.minkowski_modes.first)
                           : find(pair.rindler_mode);
        const int ib = direction == FrameDirection::to_rindler
                           ? find(pair.minkowski_modes.second)
                           : find(pair.mirror_mode);
        const int at[4] = {2 * ia, 2 * ia + 1, 2 * ib, 2 * ib + 1};
        Eigen::Vector4d v;
        for (int j = 0; j < 4; ++j) {
            v(j) = out(at[j]);
        }
        const Eigen::Vector4d w = b.transpose() * v;
        for (int j = 0; j < 4; ++j) {
            out(at[j]) = w(j);
        }
    }
    return out;
}

GaussianState rindler_vacuum_in_minkowski(double mu, const std::string& a,
                                          const std::string& b) {
    check_mu(mu);
    FramePair pair{"R", "Rt", {a, b}, mu};
    return transform_state(vacuum_state({"R", "Rt"}), {pair},
                           FrameDirection::to_minkowski);
}

}  // namespace unruhsim
