#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "unruhsim/gaussian.hpp"

namespace unruhsim {

// Truncated Fock-space backend used to cross-check the Gaussian engine by an
// independent computational path. Amplitudes are stored over photon numbers
// 0..cutoff per mode; for two modes the flat index is n1 * (cutoff + 1) + n2.
// The norm deficit 1 - |psi|^2 is exposed as truncation_loss and bounds every
// comparison against the Gaussian side.
class FockVector {
public:
    FockVector(int modes, int cutoff);

    int modes() const { return modes_; }
    int cutoff() const { return cutoff_; }
    int basis() const { return cutoff_ + 1; }

    std::complex<double>& at(int n);
    std::complex<double>& at(int n1, int n2);
    std::complex<double> at(int n) const;
    std::complex<double> at(int n1, int n2) const;

    Eigen::VectorXcd& amplitudes() { return amps_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

    double norm_squared() const { return amps_.squaredNorm(); }
    double truncation_loss() const { return 1.0 - norm_squared(); }

private:
    int modes_;
    int cutoff_;
    Eigen::VectorXcd amps_;
};

// Schmidt form sqrt(1 - mu^2) sum_n (sign * mu)^n |n, n>.
FockVector tmss_fock(double mu, int cutoff, int sign = +1);

FockVector coherent_fock(std::complex<double> alpha, int cutoff);

std::vector<double> photon_number_distribution(const FockVector& psi, int mode);

struct FockMoments {
    Eigen::VectorXd mean;        // (x1, p1, ..., xM, pM)
    Eigen::MatrixXd second;      // symmetrized <{R_i, R_j}> / 2
    Eigen::MatrixXd covariance() const {
        return second - mean * mean.transpose();
    }
};

FockMoments quadrature_moments(const FockVector& psi);

// <D(beta) (-1)^N D(beta)^dagger> with beta_k = x_k + i p_k per mode. The
// parity operator covers parity_modes (empty means every mode), so reduced
// single-mode parities of a joint state are available. Throws if displacing
// pushes more than 1e-6 of the norm past the cutoff.
double displaced_parity(const FockVector& psi, const PhasePoint& point,
                        const std::vector<int>& parity_modes = {});

double overlap_fock(const FockVector& a, const FockVector& b);

}  // namespace unruhsim
