#include "unruhsim/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

namespace unruhsim {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSymplecticTol = 1e-12;
constexpr double kUncertaintyTol = 1e-10;
constexpr double kCommutationTol = 1e-10;

double omega_product(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    // u^T Omega v without materializing Omega.
    double s = 0.0;
    for (int m = 0; 2 * m < u.size(); ++m) {
        s += u(2 * m) * v(2 * m + 1) - u(2 * m + 1) * v(2 * m);
    }
    return s;
}

}  // namespace

Eigen::MatrixXd symplectic_form(int dim) {
    if (dim < 0 || dim % 2 != 0) {
        throw std::invalid_argument("symplectic form dimension must be even");
    }
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    for (int m = 0; m < dim / 2; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

SymplecticOp::SymplecticOp(Eigen::MatrixXd matrix, Eigen::VectorXd displacement)
    : matrix_(std::move(matrix)), displacement_(std::move(displacement)) {
    const int n = static_cast<int>(matrix_.rows());
    if (n == 0 || matrix_.cols() != n || n % 2 != 0) {
        throw std::invalid_argument("symplectic matrix must be square with even dimension");
    }
    if (displacement_.size() == 0) {
        displacement_ = Eigen::VectorXd::Zero(n);
    }
    if (displacement_.size() != n) {
        throw std::invalid_argument("displacement dimension mismatch");
    }
    const Eigen::MatrixXd omega = symplectic_form(n);
    const double defect =
        (matrix_ * omega * matrix_.transpose() - omega).cwiseAbs().maxCoeff();
    if (defect > kSymplecticTol) {
        throw std::invalid_argument("matrix is not symplectic");
    }
}

GaussianState::GaussianState(std::vector<std::string> labels,
                             Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : labels_(std::move(labels)), mean_(std::move(mean)),
      cov_(std::move(covariance)) {
    validate();
}

GaussianState GaussianState::empty() {
    return GaussianState({}, Eigen::VectorXd(), Eigen::MatrixXd());
}

void GaussianState::validate() const {
    const int n = dim();
    if (mean_.size() != n || cov_.rows() != n || cov_.cols() != n) {
        throw std::invalid_argument("state dimension mismatch");
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (static_cast<int>(seen.size()) != modes()) {
        throw std::invalid_argument("duplicate mode labels");
    }
    if (n == 0) {
        return;
    }
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
        throw std::invalid_argument("covariance is not symmetric");
    }
    Eigen::MatrixXcd h = cov_.cast<std::complex<double>>();
    const Eigen::MatrixXd omega = symplectic_form(n);
    h += std::complex<double>(0.0, 0.25) * omega.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kUncertaintyTol) {
        throw std::domain_error("covariance violates the uncertainty relation");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(cov_,
                                                      Eigen::EigenvaluesOnly);
    if (er.eigenvalues().minCoeff() <= 1e-13) {
        throw std::domain_error("singular covariance");
    }
}

int GaussianState::mode_index(const std::string& label) const {
    for (int i = 0; i < modes(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    throw std::invalid_argument("unknown mode: " + label);
}

GaussianState GaussianState::displace(const std::string& mode,
                                      std::complex<double> alpha) const {
    Eigen::VectorXd mean = mean_;
    mean(x_index(mode)) += alpha.real();
    mean(p_index(mode)) += alpha.imag();
    return GaussianState(labels_, std::move(mean), cov_);
}

GaussianState GaussianState::apply(const SymplecticOp& op,
                                   const std::vector<std::string>& modes) const {
    if (op.dim() != 2 * static_cast<int>(modes.size())) {
        throw std::invalid_argument("operation dimension does not match mode list");
    }
    std::vector<int> idx;
    idx.reserve(op.dim());
    for (const auto& label : modes) {
        idx.push_back(x_index(label));
        idx.push_back(p_index(label));
    }
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(dim(), dim());
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(dim());
    for (int r = 0; r < op.dim(); ++r) {
        for (int c = 0; c < op.dim(); ++c) {
            full(idx[r], idx[c]) = op.matrix()(r, c);
        }
        shift(idx[r]) = op.displacement()(r);
    }
    return GaussianState(labels_, full * mean_ + shift,
                         full * cov_ * full.transpose());
}

GaussianState GaussianState::partial_trace(
    const std::vector<std::string>& keep) const {
    std::vector<int> idx;
    idx.reserve(2 * keep.size());
    for (const auto& label : keep) {
        idx.push_back(x_index(label));
        idx.push_back(p_index(label));
    }
    const int n = static_cast<int>(idx.size());
    Eigen::VectorXd mean(n);
    Eigen::MatrixXd cov(n, n);
    for (int r = 0; r < n; ++r) {
        mean(r) = mean_(idx[r]);
        for (int c = 0; c < n; ++c) {
            cov(r, c) = cov_(idx[r], idx[c]);
        }
    }
    return GaussianState(keep, std::move(mean), std::move(cov));
}

GaussianState GaussianState::tensor(const GaussianState& other) const {
    std::vector<std::string> labels = labels_;
    labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
    const int n = dim();
    const int m = other.dim();
    Eigen::VectorXd mean(n + m);
    mean << mean_, other.mean_;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n + m, n + m);
    cov.topLeftCorner(n, n) = cov_;
    cov.bottomRightCorner(m, m) = other.cov_;
    return GaussianState(std::move(labels), std::move(mean), std::move(cov));
}

GaussianState GaussianState::renamed(
    const std::map<std::string, std::string>& names) const {
    std::vector<std::string> labels = labels_;
    for (auto& label : labels) {
        auto it = names.find(label);
        if (it != names.end()) {
            label = it->second;
        }
    }
    return GaussianState(std::move(labels), mean_, cov_);
}

double GaussianState::wigner(const PhasePoint& point) const {
    const int n = dim();
    if (point.coordinates.size() != n) {
        throw std::invalid_argument("phase point dimension mismatch");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov_);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("singular covariance in Wigner evaluation");
    }
    const Eigen::VectorXd d = point.coordinates - mean_;
    const double quad = d.dot(llt.solve(d));
    double log_det = 0.0;
    for (int i = 0; i < n; ++i) {
        log_det += 2.0 * std::log(llt.matrixL()(i, i));
    }
    const double log_norm =
        -0.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * log_det;
    return std::exp(log_norm - 0.5 * quad);
}

ModeStats GaussianState::mode_stats(const std::string& label) const {
    const int ix = x_index(label);
    const int ip = p_index(label);
    const double vx = cov_(ix, ix);
    const double vp = cov_(ip, ip);
    const double mx = mean_(ix);
    const double mp = mean_(ip);
    ModeStats stats;
    // n = <X^2 + P^2> - 1/2 in the a = X + iP convention.
    stats.mean_photons = vx + vp + mx * mx + mp * mp - 0.5;
    const double det =
        vx * vp - cov_(ix, ip) * cov_(ix, ip);
    stats.purity = 1.0 / (4.0 * std::sqrt(det));
    return stats;
}

double GaussianState::purity() const {
    Eigen::LLT<Eigen::MatrixXd> llt(cov_);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("singular covariance");
    }
    double log_det = 0.0;
    for (int i = 0; i < dim(); ++i) {
        log_det += 2.0 * std::log(llt.matrixL()(i, i));
    }
    // 1 / sqrt(det(4 Sigma))
    return std::exp(-0.5 * (log_det + dim() * std::log(4.0)));
}

double GaussianState::overlap_with_pure(const GaussianState& reference) const {
    if (reference.dim() != dim()) {
        throw std::invalid_argument("overlap dimension mismatch");
    }
    if (std::abs(reference.purity() - 1.0) > 1e-9) {
        throw std::invalid_argument("overlap reference must be pure");
    }
    const Eigen::MatrixXd sum = cov_ + reference.cov_;
    Eigen::LLT<Eigen::MatrixXd> llt(sum);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("singular covariance sum");
    }
    const Eigen::VectorXd d = mean_ - reference.mean_;
    const double quad = d.dot(llt.solve(d));
    double log_det = 0.0;
    for (int i = 0; i < dim(); ++i) {
        log_det += 2.0 * std::log(llt.matrixL()(i, i));
    }
    // Normalization fixed by overlap(pure, itself) = 1: 2^-M / sqrt(det sum).
    return std::exp(-0.5 * quad - 0.5 * log_det - modes() * std::log(2.0));
}

MeasurementResult GaussianState::measure(
    const Eigen::MatrixXd& observables,
    const std::optional<Eigen::VectorXd>& outcomes, Rng* rng) const {
    const int k = static_cast<int>(observables.rows());
    const int n = dim();
    if (k < 1 || observables.cols() != n) {
        throw std::invalid_argument("observable matrix must be K x 2M with K >= 1");
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double w = omega_product(observables.row(i).transpose(),
                                           observables.row(j).transpose());
            if (std::abs(w) > kCommutationTol) {
                throw std::invalid_argument("observables do not commute");
            }
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(observables.transpose());
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        throw std::invalid_argument("degenerate observable set");
    }

    const Eigen::VectorXd marginal_mean = observables * mean_;
    const Eigen::MatrixXd marginal_cov =
        observables * cov_ * observables.transpose();

    Eigen::VectorXd y;
    if (outcomes.has_value()) {
        if (outcomes->size() != k) {
            throw std::invalid_argument("outcome vector length mismatch");
        }
        y = *outcomes;
    } else {
        if (rng == nullptr) {
            throw std::invalid_argument("sampling requires an RNG");
        }
        Eigen::LLT<Eigen::MatrixXd> llt(marginal_cov);
        if (llt.info() != Eigen::Success) {
            throw std::domain_error("degenerate outcome marginal");
        }
        Eigen::VectorXd z(k);
        for (int i = 0; i < k; ++i) {
            z(i) = rng->normal();
        }
        y = marginal_mean + Eigen::MatrixXd(llt.matrixL()) * z;
    }

    // Kept coordinates: untouched modes keep their planes; inside the touched
    // sector, the symplectic complement of span{c_i, Omega c_i} survives as
    // synthesized modes.
    std::vector<int> untouched;
    std::vector<int> touched;
    for (int m = 0; m < modes(); ++m) {
        const bool hit = observables.col(2 * m).cwiseAbs().maxCoeff() > 0.0 ||
                         observables.col(2 * m + 1).cwiseAbs().maxCoeff() > 0.0;
        (hit ? touched : untouched).push_back(m);
    }

    std::vector<std::string> kept_labels;
    std::vector<Eigen::VectorXd> kept_rows;
    for (int m : untouched) {
        kept_labels.push_back(labels_[m]);
        Eigen::VectorXd ex = Eigen::VectorXd::Zero(n);
        ex(2 * m) = 1.0;
        Eigen::VectorXd ep = Eigen::VectorXd::Zero(n);
        ep(2 * m + 1) = 1.0;
        kept_rows.push_back(std::move(ex));
        kept_rows.push_back(std::move(ep));
    }

    const int leftover = static_cast<int>(touched.size()) - k;
    if (leftover < 0) {
        throw std::invalid_argument("more observables than measured modes support");
    }
    if (leftover > 0) {
        // Basis of { v supported on touched modes : c_i . v = 0 and
        // c_i^T Omega v = 0 } via the kernel of the stacked constraints.
        std::vector<int> tidx;
        for (int m : touched) {
            tidx.push_back(2 * m);
            tidx.push_back(2 * m + 1);
        }
        const int tn = static_cast<int>(tidx.size());
        Eigen::MatrixXd constraints(2 * k, tn);
        const Eigen::MatrixXd omega = symplectic_form(n);
        for (int i = 0; i < k; ++i) {
            const Eigen::VectorXd ci = observables.row(i).transpose();
            const Eigen::VectorXd ciw = omega.transpose() * ci;  // row c_i^T Omega
            for (int j = 0; j < tn; ++j) {
                constraints(2 * i, j) = ci(tidx[j]);
                constraints(2 * i + 1, j) = ciw(tidx[j]);
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
        lu.setThreshold(1e-10);
        Eigen::MatrixXd kernel = lu.kernel();
        if (kernel.cols() != 2 * leftover) {
            throw std::domain_error("unexpected measured-subspace structure");
        }
        std::vector<Eigen::VectorXd> basis;
        for (int j = 0; j < kernel.cols(); ++j) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            for (int t = 0; t < tn; ++t) {
                v(tidx[t]) = kernel(t, j);
            }
            basis.push_back(std::move(v));
        }
        // Symplectic Gram-Schmidt into standard (x-like, p-like) pairs.
        int synth = 0;
        while (!basis.empty()) {
            Eigen::VectorXd e = basis.front();
            basis.erase(basis.begin());
            e.normalize();
            int partner = -1;
            double best = 0.0;
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const double w = omega_product(e, basis[j]);
                if (std::abs(w) > std::abs(best)) {
                    best = w;
                    partner = static_cast<int>(j);
                }
            }
            if (partner < 0 || std::abs(best) < 1e-10) {
                throw std::domain_error("degenerate symplectic complement");
            }
            Eigen::VectorXd f = basis[partner] / best;
            basis.erase(basis.begin() + partner);
            for (auto& v : basis) {
                v = v - omega_product(v, f) * e + omega_product(v, e) * f;
            }
            kept_labels.push_back("q" + std::to_string(synth++));
            kept_rows.push_back(std::move(e));
            kept_rows.push_back(std::move(f));
        }
    }

    const int kn = static_cast<int>(kept_rows.size());
    Eigen::MatrixXd keep(kn, n);
    for (int r = 0; r < kn; ++r) {
        keep.row(r) = kept_rows[r].transpose();
    }

    GaussianState posterior = GaussianState::empty();
    if (kn > 0) {
        Eigen::LLT<Eigen::MatrixXd> llt(marginal_cov);
        if (llt.info() != Eigen::Success) {
            throw std::domain_error("degenerate outcome marginal");
        }
        const Eigen::MatrixXd cross = keep * cov_ * observables.transpose();
        const Eigen::VectorXd mean_post =
            keep * mean_ + cross * llt.solve(y - marginal_mean);
        Eigen::MatrixXd cov_post =
            keep * cov_ * keep.transpose() -
            cross * llt.solve(cross.transpose());
        cov_post = 0.5 * (cov_post + cov_post.transpose());
        posterior = GaussianState(kept_labels, mean_post, cov_post);
    }

    return MeasurementResult{y, std::move(posterior), marginal_mean,
                             marginal_cov};
}

GaussianState vacuum_state(std::vector<std::string> labels) {
    const int n = 2 * static_cast<int>(labels.size());
    return GaussianState(std::move(labels), Eigen::VectorXd::Zero(n),
                         0.25 * Eigen::MatrixXd::Identity(n, n));
}

GaussianState coherent_state(const std::string& label,
                             std::complex<double> alpha) {
    return vacuum_state({label}).displace(label, alpha);
}

GaussianState thermal_state(const std::string& label, double mean_photons) {
    if (mean_photons < 0.0) {
        throw std::invalid_argument("mean photon number must be >= 0");
    }
    const double v = (2.0 * mean_photons + 1.0) / 4.0;
    return GaussianState({label}, Eigen::VectorXd::Zero(2),
                         v * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState two_mode_squeezed(double mu, int sign, const std::string& a,
                                const std::string& b) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1)");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    const double v = (1.0 + mu * mu) / (4.0 * (1.0 - mu * mu));
    const double w = sign * mu / (2.0 * (1.0 - mu * mu));
    Eigen::MatrixXd cov = v * Eigen::MatrixXd::Identity(4, 4);
    cov(0, 2) = cov(2, 0) = w;
    cov(1, 3) = cov(3, 1) = -w;
    return GaussianState({a, b}, Eigen::VectorXd::Zero(4), std::move(cov));
}

}  // namespace unruhsim
