#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "unruhsim/fock.hpp"
#include "unruhsim/gaussian.hpp"

using namespace unruhsim;

namespace {

PhasePoint point_of(std::initializer_list<double> coords) {
    PhasePoint p;
    p.coordinates = Eigen::VectorXd(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) p.coordinates(i++) = c;
    return p;
}

}  // namespace

TEST_CASE("tmss_fock amplitudes follow the Schmidt form") {
    FockVector zero = tmss_fock(0.0, 5);
    CHECK(zero.at(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(zero.at(1, 1)) == 0.0);

    FockVector st = tmss_fock(0.5, 2);
    CHECK(st.at(0, 0).real() == doctest::Approx(0.866025).epsilon(1e-6));
    CHECK(st.at(1, 1).real() == doctest::Approx(0.433013).epsilon(1e-6));
    CHECK(st.at(2, 2).real() == doctest::Approx(0.216506).epsilon(1e-6));
    CHECK(std::abs(st.at(1, 0)) == 0.0);

    FockVector deep = tmss_fock(0.5, 10);
    CHECK(deep.truncation_loss() ==
          doctest::Approx(std::pow(0.5, 22)).epsilon(1e-6));
    CHECK(deep.truncation_loss() == doctest::Approx(2.38e-7).epsilon(1e-2));

    // Norm deficit equals the analytic tail across a mu grid.
    for (double mu : {0.1, 0.4, 0.8}) {
        FockVector f = tmss_fock(mu, 30);
        CHECK(std::abs(f.truncation_loss() - std::pow(mu, 62)) < 1e-12);
    }

    FockVector minus = tmss_fock(0.5, 10, -1);
    CHECK(minus.at(1, 1).real() == doctest::Approx(-0.433013).epsilon(1e-6));
    CHECK(minus.at(2, 2).real() == doctest::Approx(0.216506).epsilon(1e-6));

    CHECK_THROWS_AS(tmss_fock(1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(tmss_fock(0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(tmss_fock(0.5, 10, 3), std::invalid_argument);
}

TEST_CASE("coherent_fock is the Poisson amplitude vector") {
    FockVector vac = coherent_fock(0.0, 10);
    CHECK(vac.at(0).real() == doctest::Approx(1.0).epsilon(1e-14));

    FockVector coh = coherent_fock(1.0, 20);
    FockMoments m = quadrature_moments(coh);
    double mean_n = m.second(0, 0) + m.second(1, 1) - 0.5;
    CHECK(mean_n == doctest::Approx(1.0).epsilon(1e-10));

    FockVector fock_vac = coherent_fock(0.0, 20);
    CHECK(overlap_fock(fock_vac, coh) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("photon_number_distribution matches the geometric law") {
    const double mu = std::sqrt(0.5);
    FockVector st = tmss_fock(mu, 40);
    std::vector<double> p = photon_number_distribution(st, 0);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.125).epsilon(1e-12));
    for (int n = 0; n <= 40; ++n) {
        CHECK(std::abs(p[n] - 0.5 * std::pow(0.5, n)) < 1e-12);
    }

    FockVector vac = tmss_fock(0.0, 5);
    CHECK(photon_number_distribution(vac, 1)[0] == doctest::Approx(1.0).epsilon(1e-14));

    // Joint distribution is exactly diagonal.
    FockVector f = tmss_fock(0.6, 20);
    for (int n1 = 0; n1 <= 20; ++n1) {
        for (int n2 = 0; n2 <= 20; ++n2) {
            if (n1 != n2) CHECK(std::abs(f.at(n1, n2)) == 0.0);
        }
    }
}

TEST_CASE("quadrature moments agree with the Gaussian engine") {
    FockVector vac = coherent_fock(0.0, 10);
    FockMoments mv = quadrature_moments(vac);
    CHECK(mv.second(0, 0) == doctest::Approx(0.25).epsilon(1e-12));

    FockVector coh = coherent_fock(1.0, 25);
    FockMoments mc = quadrature_moments(coh);
    CHECK(mc.mean(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mc.mean(1) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(mc.covariance()(0, 0) == doctest::Approx(0.25).epsilon(1e-10));

    const double mu = 0.5;
    FockVector tm = tmss_fock(mu, 60);
    FockMoments mt = quadrature_moments(tm);
    const double w = mu / (2.0 * (1.0 - mu * mu));
    CHECK(mt.second(0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(mt.second(0, 2) == doctest::Approx(w).epsilon(1e-9));
    CHECK(mt.second(1, 3) == doctest::Approx(-w).epsilon(1e-9));

    GaussianState gs = two_mode_squeezed(mu, +1, "E", "Et");
    CHECK((mt.covariance() - gs.covariance()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("gaussian mean photons match the oracle within the truncation tail") {
    const int cutoff = 60;
    for (double mu : {0.3, 0.5, 0.8}) {
        FockVector f = tmss_fock(mu, cutoff);
        std::vector<double> p = photon_number_distribution(f, 0);
        double oracle = 0.0;
        for (int n = 0; n <= cutoff; ++n) oracle += n * p[n];
        const double engine =
            two_mode_squeezed(mu, +1, "E", "Et").mode_stats("E").mean_photons;
        // The truncated sum undershoots by the analytic tail
        // sum_{n > N} n (1 - mu^2) mu^(2n).
        const double m2 = mu * mu;
        const double tail =
            std::pow(m2, cutoff + 1) * ((cutoff + 1) - cutoff * m2) / (1.0 - m2);
        CHECK(std::abs(engine - oracle - tail) < 1e-12);
    }
}

TEST_CASE("displaced parity at the origin") {
    FockVector vac = coherent_fock(0.0, 10);
    CHECK(displaced_parity(vac, point_of({0.0, 0.0})) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const double mu = std::sqrt(0.5);
    FockVector tm = tmss_fock(mu, 50);
    // Two-mode parity: equal photon numbers make every term positive.
    CHECK(displaced_parity(tm, point_of({0.0, 0.0, 0.0, 0.0})) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // Parity on one mode only: alternating geometric sum.
    CHECK(displaced_parity(tm, point_of({0.0, 0.0, 0.0, 0.0}), {0}) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("wigner equals the scaled displaced parity") {
    FockVector coh = coherent_fock({0.7, -0.3}, 40);
    GaussianState gcoh = coherent_state("A", {0.7, -0.3});
    const double scale1 = 2.0 / std::numbers::pi;
    for (double x : {-0.5, 0.0, 0.8}) {
        for (double p : {-0.4, 0.3}) {
            PhasePoint pt = point_of({x, p});
            CHECK(gcoh.wigner(pt) ==
                  doctest::Approx(scale1 * displaced_parity(coh, pt)).epsilon(1e-8));
        }
    }

    const double mu = 0.6;
    FockVector tm = tmss_fock(mu, 60);
    GaussianState gtm = two_mode_squeezed(mu, +1, "E", "Et");
    const double scale2 = scale1 * scale1;
    for (double x : {-1.0, 0.0, 0.5}) {
        for (double p : {-0.5, 1.0}) {
            PhasePoint pt = point_of({x, p, -p, x});
            CHECK(std::abs(gtm.wigner(pt) - scale2 * displaced_parity(tm, pt)) < 1e-6);
        }
    }
}

TEST_CASE("overlap_fock reproduces closed forms") {
    FockVector tm = tmss_fock(0.5, 40);
    CHECK(overlap_fock(tm, tm) == doctest::Approx(1.0).epsilon(1e-10));

    FockVector plus = tmss_fock(0.5, 40, +1);
    FockVector minus = tmss_fock(0.5, 40, -1);
    CHECK(overlap_fock(plus, minus) == doctest::Approx(0.36).epsilon(1e-10));

    FockVector a = coherent_fock(1.0, 30);
    FockVector b = coherent_fock(0.0, 30);
    CHECK(overlap_fock(a, b) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

    FockVector small = coherent_fock(0.0, 10);
    CHECK_THROWS_AS(overlap_fock(small, a), std::invalid_argument);
}

TEST_CASE("gaussian overlap agrees with the fock oracle") {
    // Thermal reduced state against the vacuum, both engines.
    const double mu = 0.5;
    GaussianState thermal = two_mode_squeezed(mu, +1, "E", "Et").partial_trace({"E"});
    const double gauss = thermal.overlap_with_pure(vacuum_state({"E"}));
    // Fock side: overlap of the reduced thermal state with vacuum is P(0).
    FockVector f = tmss_fock(mu, 40);
    const double fock = photon_number_distribution(f, 0)[0];
    CHECK(gauss == doctest::Approx(fock).epsilon(1e-10));
}

TEST_CASE("fock validation errors") {
    CHECK_THROWS_AS(FockVector(3, 10), std::invalid_argument);
    CHECK_THROWS_AS(FockVector(1, 0), std::invalid_argument);

    FockVector coh = coherent_fock(0.5, 8);
    CHECK_THROWS_AS(coh.at(9), std::invalid_argument);

    // Displacement far past the cutoff loses norm and must be reported.
    CHECK_THROWS_AS(displaced_parity(coh, point_of({4.0, 0.0})), std::domain_error);
}
