#include "unruhsim/teleport.hpp"

#include <cmath>
#include <stdexcept>

#include "unruhsim/frames.hpp"
#include "unruhsim/mc.hpp"

namespace unruhsim {

namespace {

void check_mu_open(double mu) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1)");
    }
}

// Accelerated-frame preparation, mode order (T, E, Et, Tt).
GaussianState prepared_state(const TeleportationConfig& config) {
    GaussianState input = coherent_state("T", config.alpha0);
    GaussianState resource = two_mode_squeezed(config.mu, +1, "E", "Et");
    const double thermal_photons =
        config.mu * config.mu / (1.0 - config.mu * config.mu);
    GaussianState mirror = config.cool_bob
                               ? vacuum_state({"Tt"})
                               : thermal_state("Tt", thermal_photons);
    return input.tensor(resource).tensor(mirror);
}

// Rows of X_E + X_T and P_E - P_T over the prepared state's coordinates.
Eigen::MatrixXd alice_observables(const GaussianState& state) {
    Eigen::MatrixXd obs = Eigen::MatrixXd::Zero(2, state.dim());
    obs(0, state.x_index("T")) = 1.0;
    obs(0, state.x_index("E")) = 1.0;
    obs(1, state.p_index("E")) = 1.0;
    obs(1, state.p_index("T")) = -1.0;
    return obs;
}

GaussianState bob_posterior(const TeleportationConfig& config,
                            const Eigen::Vector2d& outcomes) {
    GaussianState prep = prepared_state(config);
    const Eigen::VectorXd y = outcomes;
    const MeasurementResult result =
        prep.measure(alice_observables(prep), y, nullptr);
    return result.posterior.partial_trace({"Et"});
}

std::vector<FramePair> teleport_pairs(double mu) {
    return {FramePair{"T", "Tt", {"T_M", "Tt_M"}, mu},
            FramePair{"E", "Et", {"E_M", "Et_M"}, mu}};
}

// Conditions the covariance on the observables without dropping coordinates,
// then reports the size of the correlation between (T, E) and (Et, Tt).
MorkEntanglement cross_block_after_conditioning(const GaussianState& state,
                                                const Eigen::MatrixXd& obs) {
    const Eigen::MatrixXd& sigma = state.covariance();
    const Eigen::MatrixXd marginal = obs * sigma * obs.transpose();
    const Eigen::MatrixXd cross = sigma * obs.transpose();
    const Eigen::MatrixXd conditioned =
        sigma - cross * marginal.llt().solve(cross.transpose());
    MorkEntanglement report;
    report.cross_block_norm = conditioned.block(0, 4, 4, 4).norm();
    report.entangled = report.cross_block_norm > 1e-10;
    return report;
}

// Fidelity of a conditional state against the coherent target after the
// gain-weighted recentring and the mirror-axis half-turn.
double recentred_fidelity(const ConditionalLaw& law, double gain,
                          std::complex<double> alpha0, double outcome_x,
                          double outcome_p) {
    const Eigen::Vector4d inputs(alpha0.real(), alpha0.imag(), outcome_x,
                                 outcome_p);
    const Eigen::Vector2d center = law.center_coefficients * inputs;
    const Eigen::Vector2d outcome_part =
        law.center_coefficients.block<2, 2>(0, 2) *
        Eigen::Vector2d(outcome_x, outcome_p);
    const Eigen::Vector2d aligned = -(center - gain * outcome_part);
    const Eigen::Vector2d target(alpha0.real(), alpha0.imag());
    const Eigen::Matrix2d sum =
        law.covariance + 0.25 * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d d = aligned - target;
    const double quad = d.dot(sum.llt().solve(d));
    return std::exp(-0.5 * quad) / (2.0 * std::sqrt(sum.determinant()));
}

}  // namespace

ConditionalLaw conditional_form(double mu) {
    check_mu_open(mu);
    auto probe = [mu](double x0, double p0, double x, double p) {
        TeleportationConfig config;
        config.mu = mu;
        config.alpha0 = {x0, p0};
        return bob_posterior(config, Eigen::Vector2d(x, p));
    };
    ConditionalLaw law;
    const GaussianState base = probe(0.0, 0.0, 0.0, 0.0);
    const Eigen::Vector2d offset = base.mean();
    for (int j = 0; j < 4; ++j) {
        Eigen::Vector4d unit = Eigen::Vector4d::Zero();
        unit(j) = 1.0;
        const GaussianState probed = probe(unit(0), unit(1), unit(2), unit(3));
        law.center_coefficients.col(j) = probed.mean() - offset;
    }
    law.covariance = base.covariance();
    return law;
}

GaussianState eq_five_reference(double mu, std::complex<double> alpha0,
                                double outcome_x, double outcome_p) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1]");
    }
    const double k = 4.0 * mu / (3.0 + mu * mu);
    const double variance = (9.0 - mu * mu) / (24.0 + 8.0 * mu * mu);
    Eigen::VectorXd mean(2);
    mean << outcome_x + k * alpha0.real(), outcome_p + k * alpha0.imag();
    return GaussianState({"Et"}, mean,
                         variance * Eigen::MatrixXd::Identity(2, 2));
}

MorkDescription mork_description(double mu) {
    check_mu_open(mu);
    const std::vector<FramePair> pairs = teleport_pairs(mu);
    const std::vector<std::string> labels = {"T", "E", "Et", "Tt"};

    Eigen::VectorXd x_obs = Eigen::VectorXd::Zero(8);
    x_obs(0) = 1.0;  // x_T
    x_obs(2) = 1.0;  // x_E
    Eigen::VectorXd p_obs = Eigen::VectorXd::Zero(8);
    p_obs(3) = 1.0;   // p_E
    p_obs(1) = -1.0;  // p_T

    Eigen::MatrixXd observables(2, 8);
    observables.row(0) =
        transform_observable(x_obs, labels, pairs, FrameDirection::to_minkowski)
            .transpose();
    observables.row(1) =
        transform_observable(p_obs, labels, pairs, FrameDirection::to_minkowski)
            .transpose();

    TeleportationConfig config;
    config.mu = mu;
    const GaussianState minkowski = transform_state(
        prepared_state(config), pairs, FrameDirection::to_minkowski);

    return MorkDescription{
        rindler_vacuum_in_minkowski(mu, "T_M", "Tt_M"), observables,
        cross_block_after_conditioning(minkowski, observables)};
}

TeleportationResult run_teleportation(const TeleportationConfig& config) {
    check_mu_open(config.mu);
    GaussianState prep = prepared_state(config);
    const Eigen::MatrixXd obs = alice_observables(prep);

    Rng rng(config.seed);
    std::optional<Eigen::VectorXd> fixed;
    if (!config.sample_outcomes) {
        Eigen::VectorXd y(2);
        y << config.outcome_x, config.outcome_p;
        fixed = y;
    }
    const MeasurementResult measured = prep.measure(obs, fixed, &rng);
    const double x = measured.outcomes(0);
    const double p = measured.outcomes(1);
    GaussianState bob = measured.posterior.partial_trace({"Et"});

    const ConditionalLaw law = conditional_form(config.mu);
    const double fidelity =
        recentred_fidelity(law, 1.0, config.alpha0, x, p);

    const std::vector<FramePair> pairs = teleport_pairs(config.mu);
    GaussianState mork_state =
        transform_state(prep, pairs, FrameDirection::to_minkowski);
    const MorkDescription mork = mork_description(config.mu);
    const MorkEntanglement entanglement =
        cross_block_after_conditioning(mork_state, mork.observables);

    const bool applicable = config.mu >= 0.99;
    bool limit_ok = false;
    if (applicable) {
        const double center_norm = bob.mean().norm();
        const double beta_norm = std::hypot(x, p);
        const double cov_gap =
            (bob.covariance() - 0.25 * Eigen::Matrix2d::Identity())
                .cwiseAbs()
                .maxCoeff();
        limit_ok =
            std::abs(center_norm - beta_norm) <= 0.01 && cov_gap <= 1e-3;
    }

    return TeleportationResult{
        x,
        p,
        std::move(bob),
        eq_five_reference(config.mu, config.alpha0, x, p),
        fidelity,
        std::move(mork_state),
        mork.observables,
        entanglement,
        applicable,
        limit_ok};
}

FidelityStats average_fidelity_stats(double mu, double gain,
                                     std::complex<double> alpha0,
                                     std::uint64_t trials, std::uint64_t seed,
                                     int shards) {
    check_mu_open(mu);
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    const ConditionalLaw law = conditional_form(mu);

    // Outcome marginal probed from the pipeline; sampling below reproduces
    // measure()'s own sampling path draw for draw.
    TeleportationConfig config;
    config.mu = mu;
    config.alpha0 = alpha0;
    GaussianState prep = prepared_state(config);
    const MeasurementResult probe =
        prep.measure(alice_observables(prep), Eigen::VectorXd::Zero(2),
                     nullptr);
    const Eigen::Vector2d marginal_mean = probe.marginal_mean;
    const Eigen::Matrix2d chol =
        Eigen::Matrix2d(probe.marginal_cov).llt().matrixL();

    struct Partial {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    auto kernel = [&](Rng& block_rng, mc::BlockRange range) {
        Partial part;
        for (std::uint64_t t = range.begin; t < range.end; ++t) {
            Eigen::Vector2d z(block_rng.normal(), block_rng.normal());
            const Eigen::Vector2d y = marginal_mean + chol * z;
            const double f = recentred_fidelity(law, gain, alpha0, y(0), y(1));
            part.sum += f;
            part.sum_sq += f * f;
        }
        return part;
    };
    const std::vector<Partial> parts =
        mc::run_blocks(trials, seed, shards, kernel);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const Partial& part : parts) {
        sum += part.sum;
        sum_sq += part.sum_sq;
    }
    FidelityStats stats;
    stats.trials = trials;
    stats.mean = sum / trials;
    const double variance =
        std::max(0.0, sum_sq / trials - stats.mean * stats.mean);
    stats.std_error = std::sqrt(variance / trials);
    return stats;
}

double average_fidelity(double mu, double gain, std::complex<double> alpha0,
                        std::uint64_t trials, std::uint64_t seed, int shards) {
    return average_fidelity_stats(mu, gain, alpha0, trials, seed, shards).mean;
}

}  // namespace unruhsim
