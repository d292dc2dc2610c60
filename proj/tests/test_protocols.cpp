#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "unruhsim/fock.hpp"
#include "unruhsim/gaussian.hpp"
#include "unruhsim/protocols.hpp"

using namespace unruhsim;

TEST_CASE("duan_epr witness values") {
    CHECK(duan_epr(vacuum_state({"a", "b"})) == doctest::Approx(1.0).epsilon(1e-12));

    GaussianState half = two_mode_squeezed(0.5, +1, "a", "b");
    CHECK(duan_epr(half) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    GaussianState strong = two_mode_squeezed(0.6, +1, "a", "b");
    CHECK(duan_epr(strong) == doctest::Approx(0.25).epsilon(1e-12));

    // Strictly decreasing in mu.
    double previous = 1.0;
    for (double mu : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double value = duan_epr(two_mode_squeezed(mu, +1, "a", "b"));
        CHECK(value == doctest::Approx((1.0 - mu) / (1.0 + mu)).epsilon(1e-12));
        CHECK(value < previous);
        previous = value;
    }

    // Displacements do not move the witness.
    GaussianState shifted = half.displace("a", {1.3, -0.4});
    CHECK(duan_epr(shifted) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(duan_epr(vacuum_state({"a"})), std::invalid_argument);
}

TEST_CASE("parity correlation agrees with the Fock backend") {
    const double mu = 0.5;
    GaussianState state = two_mode_squeezed(mu, +1, "a", "b");
    FockVector psi = tmss_fock(mu, 50);

    const Eigen::Vector2d zero = Eigen::Vector2d::Zero();
    const double scale = std::pow(std::numbers::pi / 2.0, 2);
    for (auto [ax, ap, bx, bp] :
         std::vector<std::array<double, 4>>{{0.0, 0.0, 0.0, 0.0},
                                            {0.2, 0.0, -0.1, 0.3},
                                            {-0.4, 0.25, 0.15, -0.2}}) {
        Eigen::Vector2d a{ax, ap};
        Eigen::Vector2d b{bx, bp};
        PhasePoint point;
        point.coordinates = Eigen::Vector4d{ax, ap, bx, bp};
        const double gaussian = parity_correlation(state, a, b);
        const double fock = displaced_parity(psi, point);
        CHECK(gaussian == doctest::Approx(fock).epsilon(1e-6));
        CHECK(gaussian == doctest::Approx(scale * state.wigner(point)).epsilon(1e-12));
    }
    CHECK(parity_correlation(state, zero, zero) > 0.0);
}

TEST_CASE("chsh_parity at the trivial setting is 2") {
    // All four correlators coincide at the origin, so the sum is 2 E(0, 0)
    // up to one rounding step in the four-term accumulation.
    ChshSetting zeros;
    GaussianState vac = vacuum_state({"a", "b"});
    CHECK(chsh_parity(vac, zeros) == doctest::Approx(2.0).epsilon(1e-14));
    GaussianState tmss = two_mode_squeezed(0.6, +1, "a", "b");
    CHECK(chsh_parity(tmss, zeros) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("chsh_search finds a violation on the squeezed state") {
    GaussianState tmss = two_mode_squeezed(0.6, +1, "a", "b");
    ChshSearchResult coarse = chsh_search(tmss, 1.5, 9, 2);
    CHECK(coarse.value > 2.0);
    CHECK(coarse.value == doctest::Approx(2.16839).epsilon(1e-4));
    CHECK(coarse.level_values.size() == 3);
    // Levels never regress.
    for (std::size_t i = 1; i < coarse.level_values.size(); ++i) {
        CHECK(coarse.level_values[i] >= coarse.level_values[i - 1]);
    }
    // The reported best setting reproduces the reported value.
    CHECK(chsh_parity(tmss, coarse.best) == doctest::Approx(coarse.value).epsilon(1e-12));

    // One more refinement moves the value by less than 1e-3.
    ChshSearchResult fine = chsh_search(tmss, 1.5, 9, 3);
    CHECK(std::abs(fine.value - coarse.value) < 1e-3);

    // Determinism: repeated calls give bitwise-identical results.
    ChshSearchResult again = chsh_search(tmss, 1.5, 9, 2);
    CHECK(again.value == coarse.value);
    CHECK((again.best.a - coarse.best.a).cwiseAbs().maxCoeff() == 0.0);
    CHECK((again.best.b - coarse.best.b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("chsh_search on the vacuum stays at the classical boundary") {
    GaussianState vac = vacuum_state({"a", "b"});
    ChshSearchResult result = chsh_search(vac, 1.5, 9, 2);
    CHECK(result.value <= 2.0 + 1e-9);
    CHECK(result.value >= 2.0 - 1e-12);
}

TEST_CASE("chsh_search validates its parameters") {
    GaussianState tmss = two_mode_squeezed(0.5, +1, "a", "b");
    CHECK_THROWS_AS(chsh_search(tmss, -1.0, 9, 2), std::invalid_argument);
    CHECK_THROWS_AS(chsh_search(tmss, 1.5, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(chsh_search(tmss, 1.5, 9, -1), std::invalid_argument);
    CHECK_THROWS_AS(chsh_search(vacuum_state({"a"}), 1.5, 9, 2),
                    std::invalid_argument);
}

TEST_CASE("ideal key generation is error-free and unbiased") {
    DetectorModel ideal;
    KeyBits key = generate_key_bits(std::sqrt(0.5), 10000, ideal, ideal, 21);
    REQUIRE(key.alice.size() == 10000);
    REQUIRE(key.bob.size() == 10000);
    CHECK(key.qber == 0.0);
    for (std::size_t i = 0; i < key.alice.size(); ++i) {
        CHECK(key.alice[i] == key.bob[i]);
    }
    // 3 sigma at 1e4 bits: 0.015.
    CHECK(std::abs(key.bit_bias - 0.5) < 0.016);
    CHECK(key.chsh_estimate > 2.0);
}

TEST_CASE("no squeezing yields an all-zero key") {
    DetectorModel ideal;
    KeyBits key = generate_key_bits(0.0, 2000, ideal, ideal, 4);
    for (std::uint8_t bit : key.alice) {
        CHECK(bit == 0);
    }
    CHECK(key.bit_bias == 0.0);
    CHECK(key.qber == 0.0);
}

TEST_CASE("dark counts introduce key errors") {
    DetectorModel ideal;
    DetectorModel noisy{1.0, 0.05};
    KeyBits key = generate_key_bits(std::sqrt(0.5), 20000, noisy, ideal, 15);
    CHECK(key.qber > 0.0);
    CHECK(key.qber < 0.1);
}

TEST_CASE("key generation is reproducible and shard-independent") {
    DetectorModel ideal;
    KeyBits a = generate_key_bits(std::sqrt(0.5), 20000, ideal, ideal, 9);
    KeyBits b = generate_key_bits(std::sqrt(0.5), 20000, ideal, ideal, 9);
    CHECK(a.alice == b.alice);
    CHECK(a.bob == b.bob);
    CHECK(a.qber == b.qber);
    CHECK(a.chsh_estimate == b.chsh_estimate);

    KeyBits sharded = generate_key_bits(std::sqrt(0.5), 20000, ideal, ideal, 9, 4);
    CHECK(a.alice == sharded.alice);
    CHECK(a.bob == sharded.bob);
    CHECK(a.chsh_estimate == sharded.chsh_estimate);
}

TEST_CASE("key generation validates its parameters") {
    DetectorModel ideal;
    CHECK_THROWS_AS(generate_key_bits(1.0, 100, ideal, ideal, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_key_bits(0.5, 0, ideal, ideal, 1),
                    std::invalid_argument);
}
