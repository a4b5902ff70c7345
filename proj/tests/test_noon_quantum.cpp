#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gearsense/errors.hpp"
#include "gearsense/fock.hpp"
#include "gearsense/fringe_model.hpp"

using namespace gearsense;
using namespace gearsense::quantum;

namespace {
constexpr double kPi = std::numbers::pi;

FockVector random_state(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss;
    FockVector v;
    v.amplitudes.resize(static_cast<size_t>(n) + 1);
    for (auto& a : v.amplitudes) a = {gauss(rng), gauss(rng)};
    const double norm = std::sqrt(v.norm_sq());
    for (auto& a : v.amplitudes) a /= norm;
    return v;
}
} // namespace

TEST_CASE("closed-form coincidence values") {
    CHECK(coincidence_probability(0.0, 1, 2) == doctest::Approx(1.0).epsilon(1e-15));
    for (int charge : {1, 4, 16})
        CHECK(coincidence_probability(kPi / (2.0 * charge), charge, 2) ==
              doctest::Approx(0.0).scale(1).epsilon(1e-15));
}

TEST_CASE("l=16 fringe fits just under two oscillations in 20.8 degrees") {
    // One coincidence period in theta spans 180/l degrees.
    const double period_deg = 180.0 / 16.0;
    const double oscillations = 20.8 / period_deg;
    CHECK(oscillations > 1.8);
    CHECK(oscillations < 2.0);
    CHECK(period_deg == doctest::Approx(11.25));
}

TEST_CASE("closed form requires n = 2") {
    CHECK_THROWS_AS(coincidence_probability(0.1, 1, 3), UnsupportedClosedFormError);
    CHECK_THROWS_AS(coincidence_probability(0.1, 1, 1), UnsupportedClosedFormError);
}

TEST_CASE("splitter sends a noon state to cos^2(phi/2) coincidence") {
    // Hand expansion of (a+ + i b+)^2 and (i a+ + b+)^2 gives
    // P(1,1) = |1 + e^{i phi}|^2 / 4 = cos^2(phi/2).
    const double phis[] = {0.0, kPi / 3.0, kPi / 2.0, kPi};
    const double expected[] = {1.0, 0.75, 0.5, 0.0};
    for (int i = 0; i < 4; ++i) {
        const FockVector out = beamsplitter_oracle(NoonState{2, phis[i]}.to_fock());
        CHECK(out.probability(1) == doctest::Approx(expected[i]).scale(1).epsilon(1e-14));
    }
}

TEST_CASE("single photon splits 50:50") {
    FockVector in;
    in.amplitudes = {{0.0, 0.0}, {1.0, 0.0}}; // |1,0>
    const FockVector out = beamsplitter_oracle(in);
    CHECK(out.probability(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(out.probability(0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("two photons meeting at the splitter never coincide (HOM)") {
    FockVector in;
    in.amplitudes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}; // |1,1>
    const FockVector out = beamsplitter_oracle(in);
    CHECK(out.probability(1) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(out.probability(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(out.probability(2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("oracle rejects bad input") {
    FockVector unnormalized;
    unnormalized.amplitudes = {{0.5, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(beamsplitter_oracle(unnormalized), ConfigError);

    FockVector too_big;
    too_big.amplitudes.assign(12, {0.0, 0.0});
    too_big.amplitudes[0] = 1.0;
    CHECK_THROWS_AS(beamsplitter_oracle(too_big), ConfigError);
}

TEST_CASE("oracle equals the closed form on random phases") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const double phi = phase(rng);
        const FockVector out = beamsplitter_oracle(NoonState{2, phi}.to_fock());
        const double closed = std::cos(phi / 2.0) * std::cos(phi / 2.0);
        CHECK(std::abs(out.probability(1) - closed) < 1e-12);
    }
}

TEST_CASE("noon phase bookkeeping carries N * theta * l") {
    const NoonState state = noon_after_rotation(2, 0.1, 16);
    CHECK(state.phase == doctest::Approx(3.2).epsilon(1e-15));
    // Oracle driven by phi = N theta l reproduces cos^2(theta l).
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int charge : {1, 16}) {
        for (int trial = 0; trial < 50; ++trial) {
            const double theta = angle(rng);
            const FockVector out =
                beamsplitter_oracle(noon_after_rotation(2, theta, charge).to_fock());
            CHECK(std::abs(out.probability(1) - coincidence_probability(theta, charge, 2)) <
                  1e-12);
        }
    }
}

TEST_CASE("splitter unitary preserves norm up to 10 photons") {
    std::mt19937_64 rng(123);
    for (int n = 1; n <= kMaxOraclePhotons; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const FockVector out = beamsplitter_oracle(random_state(rng, n));
            CHECK(std::abs(out.norm_sq() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("fringe extrema hit B and A + B") {
    FringeModel model;
    model.amplitude = 4490.0;
    model.offset = 120.0;
    model.phase_deg = 40.0;
    model.photon_number = 2;
    model.charge = 4;
    // Cosine argument equals the offset phase at theta = C / (N l).
    const double theta_min = model.phase_deg / (model.photon_number * model.charge);
    CHECK(fringe_rate(theta_min, model) == doctest::Approx(model.offset).epsilon(1e-12));
    const double theta_max = (model.phase_deg + 180.0) / (model.photon_number * model.charge);
    CHECK(fringe_rate(theta_max, model) ==
          doctest::Approx(model.amplitude + model.offset).epsilon(1e-12));
}

TEST_CASE("fringe value reproduces the l=1 peak rate") {
    FringeModel model;
    model.amplitude = 4490.0;
    model.offset = 0.0;
    model.phase_deg = 0.0;
    model.photon_number = 2;
    model.charge = 1;
    CHECK(fringe_rate(90.0, model) == doctest::Approx(4490.0).epsilon(1e-12));
}

TEST_CASE("fringe has exactly N*l maxima per turn") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> phase(0.0, 360.0);
    for (int n : {1, 2}) {
        for (int charge : {1, 4, 16}) {
            FringeModel model;
            model.amplitude = 1000.0;
            model.offset = 50.0;
            model.phase_deg = phase(rng);
            model.photon_number = n;
            model.charge = charge;
            CHECK(count_fringe_maxima(model) == n * charge);
        }
    }
}

TEST_CASE("fringe visibility identity") {
    FringeModel model;
    model.amplitude = 4000.0;
    model.offset = 250.0;
    model.phase_deg = 123.0;
    model.photon_number = 2;
    model.charge = 8;
    SUBCASE("analytic extrema") {
        // max = A + B at argument pi, min = B at argument 0.
        const double hi = model.amplitude + model.offset;
        const double lo = model.offset;
        CHECK((hi - lo) / (hi + lo) == doctest::Approx(model.visibility()).epsilon(1e-12));
    }
    SUBCASE("numeric extrema over one period") {
        double lo = 1e300, hi = -1e300;
        const double period = 360.0 / (model.photon_number * model.charge);
        for (int i = 0; i <= 200000; ++i) {
            const double rate = fringe_rate(period * i / 200000.0, model);
            lo = std::min(lo, rate);
            hi = std::max(hi, rate);
        }
        CHECK((hi - lo) / (hi + lo) == doctest::Approx(model.visibility()).epsilon(1e-9));
    }
}
