#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "unruhsim/rng.hpp"

namespace unruhsim {

// Quadrature convention used throughout the library: a = X + iP, so
// [X, P] = i/2 and the vacuum has Var(X) = Var(P) = 1/4. Phase-space vectors
// are ordered (x1, p1, ..., xM, pM). The symplectic form Omega is block
// diagonal with 2x2 blocks [[0, 1], [-1, 0]], and every stored covariance
// matrix must satisfy the uncertainty relation Sigma + (i/4) Omega >= 0 and be
// nonsingular. Wigner functions are normalized to integrate to 1 over phase
// space.

Eigen::MatrixXd symplectic_form(int dim);

struct PhasePoint {
    Eigen::VectorXd coordinates;
};

// Linear phase-space map r -> S r + d with S Omega S^T = Omega. The
// constructor rejects non-symplectic matrices.
class SymplecticOp {
public:
    explicit SymplecticOp(Eigen::MatrixXd matrix,
                          Eigen::VectorXd displacement = Eigen::VectorXd());
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::VectorXd& displacement() const { return displacement_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

private:
    Eigen::MatrixXd matrix_;
    Eigen::VectorXd displacement_;
};

struct ModeStats {
    double mean_photons;
    double purity;
};

class GaussianState;

struct MeasurementResult;

class GaussianState {
public:
    GaussianState(std::vector<std::string> labels, Eigen::VectorXd mean,
                  Eigen::MatrixXd covariance);

    static GaussianState empty();

    int modes() const { return static_cast<int>(labels_.size()); }
    int dim() const { return 2 * modes(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return cov_; }

    int mode_index(const std::string& label) const;
    int x_index(const std::string& label) const { return 2 * mode_index(label); }
    int p_index(const std::string& label) const { return 2 * mode_index(label) + 1; }

    GaussianState displace(const std::string& mode,
                           std::complex<double> alpha) const;

    // Applies op to the listed modes (embedding as identity elsewhere). The
    // op's coordinate order is (x, p) per listed mode, in the given order.
    GaussianState apply(const SymplecticOp& op,
                        const std::vector<std::string>& modes) const;

    GaussianState partial_trace(const std::vector<std::string>& keep) const;

    GaussianState tensor(const GaussianState& other) const;

    GaussianState renamed(const std::map<std::string, std::string>& names) const;

    double wigner(const PhasePoint& point) const;

    ModeStats mode_stats(const std::string& label) const;

    // Purity Tr(rho^2) = 1 / sqrt(det(4 Sigma)).
    double purity() const;

    // Overlap Tr(rho_this rho_ref) with a pure reference. The normalization
    // constant is fixed by overlap(pure, pure-itself) = 1; it is validated
    // against the Fock backend in the tests rather than quoted from anywhere.
    double overlap_with_pure(const GaussianState& reference) const;

    // Homodyne measurement of K pairwise commuting quadrature combinations
    // (rows of `observables`, each of length 2M). If `outcomes` is absent the
    // outcomes are drawn from the exact marginal using `rng`; supplying
    // outcomes reuses the identical conditioning path. The measured degrees of
    // freedom and their conjugates are removed: modes untouched by the
    // observables keep their labels, leftover directions inside the measured
    // support become synthesized modes labeled q0, q1, ... The posterior
    // covariance is outcome-independent.
    MeasurementResult measure(const Eigen::MatrixXd& observables,
                              const std::optional<Eigen::VectorXd>& outcomes,
                              Rng* rng) const;

private:
    void validate() const;

    std::vector<std::string> labels_;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

struct MeasurementResult {
    Eigen::VectorXd outcomes;
    GaussianState posterior;
    Eigen::VectorXd marginal_mean;
    Eigen::MatrixXd marginal_cov;
};

GaussianState vacuum_state(std::vector<std::string> labels);

GaussianState coherent_state(const std::string& label,
                             std::complex<double> alpha);

GaussianState thermal_state(const std::string& label, double mean_photons);

// Two-mode squeezed state with parameter mu in [0, 1):
//   Var(x) = Var(p) = (1 + mu^2) / (4 (1 - mu^2)) per mode,
//   Cov(x_a, x_b) = sign * mu / (2 (1 - mu^2)),
//   Cov(p_a, p_b) = -sign * mu / (2 (1 - mu^2)).
// sign = -1 is the state obtained by flipping the phase of one mode
// (mu -> -mu in the Schmidt coefficients).
GaussianState two_mode_squeezed(double mu, int sign, const std::string& a,
                                const std::string& b);

}  // namespace unruhsim
