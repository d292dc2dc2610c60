#include "unruhsim/fock.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace unruhsim {

namespace {

// <m|D(beta)|n> for m >= n:
//   sqrt(n!/m!) beta^(m-n) exp(-|beta|^2/2) L_n^(m-n)(|beta|^2).
// For m < n mirror with beta -> -beta via hermiticity of the generator.
std::complex<double> displacement_element(int m, int n,
                                          std::complex<double> beta) {
    if (m < n) {
        return std::conj(displacement_element(n, m, -beta));
    }
    const int d = m - n;
    const double t = std::norm(beta);
    // Associated Laguerre L_n^(d)(t) by upward recurrence.
    double lkm1 = 1.0;
    double lk = 1.0 + d - t;
    double lag = (n == 0) ? lkm1 : lk;
    for (int k = 2; k <= n; ++k) {
        const double next =
            ((2.0 * k - 1.0 + d - t) * lk - (k - 1.0 + d) * lkm1) / k;
        lkm1 = lk;
        lk = next;
        lag = next;
    }
    const double log_ratio = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0));
    std::complex<double> power = 1.0;
    for (int k = 0; k < d; ++k) {
        power *= beta;
    }
    return power * (std::exp(log_ratio - 0.5 * t) * lag);
}

Eigen::MatrixXcd displacement_matrix(std::complex<double> beta, int basis) {
    Eigen::MatrixXcd d(basis, basis);
    for (int m = 0; m < basis; ++m) {
        for (int n = 0; n < basis; ++n) {
            d(m, n) = displacement_element(m, n, beta);
        }
    }
    return d;
}

// Two-mode amplitudes as a matrix A with A(n1, n2); an operator on mode 1
// acts as O * A and on mode 2 as A * O^T.
Eigen::MatrixXcd as_matrix(const FockVector& psi) {
    const int basis = psi.basis();
    Eigen::MatrixXcd a(basis, basis);
    for (int n1 = 0; n1 < basis; ++n1) {
        for (int n2 = 0; n2 < basis; ++n2) {
            a(n1, n2) = psi.at(n1, n2);
        }
    }
    return a;
}

std::complex<double> frobenius_inner(const Eigen::MatrixXcd& a,
                                     const Eigen::MatrixXcd& b) {
    return (a.conjugate().cwiseProduct(b)).sum();
}

}  // namespace

FockVector::FockVector(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
    if (modes < 1 || modes > 2) {
        throw std::invalid_argument("supported mode counts are 1 and 2");
    }
    if (cutoff < 1) {
        throw std::invalid_argument("cutoff must be >= 1");
    }
    int size = cutoff + 1;
    if (modes == 2) {
        size *= cutoff + 1;
    }
    amps_ = Eigen::VectorXcd::Zero(size);
}

std::complex<double>& FockVector::at(int n) {
    if (modes_ != 1 || n < 0 || n > cutoff_) {
        throw std::invalid_argument("index out of range");
    }
    return amps_(n);
}

std::complex<double> FockVector::at(int n) const {
    return const_cast<FockVector*>(this)->at(n);
}

std::complex<double>& FockVector::at(int n1, int n2) {
    if (modes_ != 2 || n1 < 0 || n1 > cutoff_ || n2 < 0 || n2 > cutoff_) {
        throw std::invalid_argument("index out of range");
    }
    return amps_(n1 * (cutoff_ + 1) + n2);
}

std::complex<double> FockVector::at(int n1, int n2) const {
    return const_cast<FockVector*>(this)->at(n1, n2);
}

FockVector tmss_fock(double mu, int cutoff, int sign) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1)");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    FockVector psi(2, cutoff);
    double coeff = std::sqrt(1.0 - mu * mu);
    for (int n = 0; n <= cutoff; ++n) {
        psi.at(n, n) = coeff;
        coeff *= sign * mu;
    }
    return psi;
}

FockVector coherent_fock(std::complex<double> alpha, int cutoff) {
    if (std::norm(alpha) > 0.25 * cutoff) {
        std::cerr << "coherent_fock: |alpha|^2 = " << std::norm(alpha)
                  << " is large for cutoff " << cutoff
                  << "; expect visible truncation loss\n";
    }
    FockVector psi(1, cutoff);
    std::complex<double> amp = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n <= cutoff; ++n) {
        psi.at(n) = amp;
        amp *= alpha / std::sqrt(n + 1.0);
    }
    return psi;
}

std::vector<double> photon_number_distribution(const FockVector& psi,
                                               int mode) {
    const int basis = psi.basis();
    std::vector<double> dist(basis, 0.0);
    if (psi.modes() == 1) {
        if (mode != 0) {
            throw std::invalid_argument("mode index out of range");
        }
        for (int n = 0; n < basis; ++n) {
            dist[n] = std::norm(psi.at(n));
        }
        return dist;
    }
    if (mode != 0 && mode != 1) {
        throw std::invalid_argument("mode index out of range");
    }
    for (int n1 = 0; n1 < basis; ++n1) {
        for (int n2 = 0; n2 < basis; ++n2) {
            dist[mode == 0 ? n1 : n2] += std::norm(psi.at(n1, n2));
        }
    }
    return dist;
}

FockMoments quadrature_moments(const FockVector& psi) {
    const int basis = psi.basis();
    const int modes = psi.modes();
    // X = (a + a^dag)/2, P = (a - a^dag)/(2i) in the a = X + iP convention.
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(basis, basis);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(basis, basis);
    for (int n = 1; n < basis; ++n) {
        const double r = 0.5 * std::sqrt(static_cast<double>(n));
        x(n - 1, n) = r;
        x(n, n - 1) = r;
        p(n - 1, n) = std::complex<double>(0.0, -r);
        p(n, n - 1) = std::complex<double>(0.0, r);
    }
    const Eigen::MatrixXcd* single[2] = {&x, &p};

    const int dim = 2 * modes;
    FockMoments moments;
    moments.mean = Eigen::VectorXd::Zero(dim);
    moments.second = Eigen::MatrixXd::Zero(dim, dim);

    if (modes == 1) {
        const Eigen::VectorXcd& v = psi.amplitudes();
        for (int i = 0; i < dim; ++i) {
            const Eigen::MatrixXcd& oi = *single[i % 2];
            moments.mean(i) = (v.adjoint() * oi * v).value().real();
            for (int j = 0; j < dim; ++j) {
                const Eigen::MatrixXcd& oj = *single[j % 2];
                const Eigen::MatrixXcd sym = 0.5 * (oi * oj + oj * oi);
                moments.second(i, j) = (v.adjoint() * sym * v).value().real();
            }
        }
        return moments;
    }

    const Eigen::MatrixXcd a = as_matrix(psi);
    for (int i = 0; i < dim; ++i) {
        const Eigen::MatrixXcd& oi = *single[i % 2];
        const bool i_first = i / 2 == 0;
        moments.mean(i) = (i_first ? frobenius_inner(a, oi * a)
                                   : frobenius_inner(a, a * oi.transpose()))
                              .real();
        for (int j = 0; j < dim; ++j) {
            const Eigen::MatrixXcd& oj = *single[j % 2];
            const bool j_first = j / 2 == 0;
            std::complex<double> val;
            if (i_first && j_first) {
                val = frobenius_inner(a, 0.5 * (oi * oj + oj * oi) * a);
            } else if (!i_first && !j_first) {
                val = frobenius_inner(
                    a, a * (0.5 * (oi * oj + oj * oi)).transpose());
            } else if (i_first) {
                val = frobenius_inner(a, oi * a * oj.transpose());
            } else {
                val = frobenius_inner(a, oj * a * oi.transpose());
            }
            moments.second(i, j) = val.real();
        }
    }
    return moments;
}

double displaced_parity(const FockVector& psi, const PhasePoint& point,
                        const std::vector<int>& parity_modes) {
    const int modes = psi.modes();
    if (point.coordinates.size() != 2 * modes) {
        throw std::invalid_argument("phase point dimension mismatch");
    }
    bool flip[2] = {false, false};
    if (parity_modes.empty()) {
        flip[0] = flip[1] = true;
    } else {
        for (int m : parity_modes) {
            if (m < 0 || m >= modes) {
                throw std::invalid_argument("parity mode index out of range");
            }
            flip[m] = true;
        }
    }
    const int basis = psi.basis();
    const std::complex<double> beta0(point.coordinates(0),
                                     point.coordinates(1));
    double parity = 0.0;
    double kept = 0.0;
    if (modes == 1) {
        const Eigen::VectorXcd phi =
            displacement_matrix(-beta0, basis) * psi.amplitudes();
        for (int n = 0; n < basis; ++n) {
            const double w = std::norm(phi(n));
            kept += w;
            const int odd = flip[0] ? n % 2 : 0;
            parity += (odd == 0 ? 1.0 : -1.0) * w;
        }
    } else {
        const std::complex<double> beta1(point.coordinates(2),
                                         point.coordinates(3));
        const Eigen::MatrixXcd phi = displacement_matrix(-beta0, basis) *
                                     as_matrix(psi) *
                                     displacement_matrix(-beta1, basis)
                                         .transpose();
        for (int n1 = 0; n1 < basis; ++n1) {
            for (int n2 = 0; n2 < basis; ++n2) {
                const double w = std::norm(phi(n1, n2));
                kept += w;
                const int odd = (flip[0] ? n1 : 0) + (flip[1] ? n2 : 0);
                parity += (odd % 2 == 0 ? 1.0 : -1.0) * w;
            }
        }
    }
    if (psi.norm_squared() - kept > 1e-6) {
        throw std::domain_error(
            "displacement pushes weight past the cutoff; raise it");
    }
    return parity;
}

double overlap_fock(const FockVector& a, const FockVector& b) {
    if (a.modes() != b.modes() || a.cutoff() != b.cutoff()) {
        throw std::invalid_argument("overlap shape mismatch");
    }
    return std::norm((a.amplitudes().adjoint() * b.amplitudes()).value());
}

}  // namespace unruhsim
