#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gearsense/errors.hpp"
#include "gearsense/fringe_model.hpp"
#include "gearsense/rng.hpp"
#include "gearsense/simulate.hpp"

using namespace gearsense;
using namespace gearsense::sim;

namespace {

ExperimentConfig clean_config() {
    ExperimentConfig cfg;
    cfg.pair_rate = 44900.0;
    cfg.singles1_rate = 0.0;
    cfg.singles2_rate = 0.0;
    cfg.coincidence_window = 0.0;
    cfg.acq_time = 0.1;
    cfg.visibility = 1.0;
    cfg.photon_number = 2;
    cfg.charge = 1;
    cfg.repeats = 1;
    cfg.drift_std_deg = 0.0;
    cfg.rng_seed = 42;
    cfg.randomize_offset = false;
    return cfg;
}

} // namespace

TEST_CASE("random streams are reproducible and independent") {
    RandomStream a(1234, 7), b(1234, 7), c(1234, 8);
    bool all_equal = true, any_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double va = a.uniform();
        all_equal = all_equal && va == b.uniform();
        any_differs = any_differs || va != c.uniform();
    }
    CHECK(all_equal);
    CHECK(any_differs);
}

TEST_CASE("uniform stays in [0, 1)") {
    RandomStream rng(5, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal moments") {
    RandomStream rng(17, 0);
    const int count = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < count; ++i) {
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / count;
    const double variance = sum_sq / count - mean * mean;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(double(count)));
    CHECK(variance == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson sampler matches mean and variance across regimes") {
    // Covers the Knuth branch, the PTRS branch, and the normal tail.
    for (double lambda : {0.3, 4.0, 50.0, 4490.0, 2e6}) {
        RandomStream rng(101, 3);
        const int count = lambda > 1e5 ? 2000 : 20000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < count; ++i) {
            const double k = static_cast<double>(rng.poisson(lambda));
            sum += k;
            sum_sq += k * k;
        }
        const double mean = sum / count;
        const double variance = sum_sq / count - mean * mean;
        const double mean_se = std::sqrt(lambda / count);
        CHECK(std::abs(mean - lambda) < 5.0 * mean_se);
        // Var(s^2) ~ 2 lambda^2 / n for Poisson at large lambda; keep 6 sigma.
        const double var_tol = 6.0 * lambda * std::sqrt(2.0 / count) + 6.0 * mean_se;
        CHECK(std::abs(variance - lambda) < var_tol);
    }
}

TEST_CASE("poisson concentration at mean 1e6") {
    RandomStream rng(2024, 0);
    for (int i = 0; i < 50; ++i) {
        const double sample = static_cast<double>(rng.poisson(1e6));
        CHECK(sample / 1e6 > 0.99);
        CHECK(sample / 1e6 < 1.01);
    }
}

TEST_CASE("poisson rejects bad means") {
    RandomStream rng(1, 0);
    CHECK_THROWS_AS(rng.poisson(-1.0), ConfigError);
    CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("drift: zero std is constant and consumes no randomness") {
    RandomStream rng(9, 0);
    const double before = RandomStream(9, 0).uniform();
    const auto walk = apply_drift(30.0, 0.0, 100, rng);
    for (double c : walk) CHECK(c == 30.0);
    CHECK(rng.uniform() == before);
}

TEST_CASE("drift walk is seeded-deterministic") {
    RandomStream a(77, 1), b(77, 1);
    const auto walk_a = apply_drift(0.0, 0.5, 1000, a);
    const auto walk_b = apply_drift(0.0, 0.5, 1000, b);
    CHECK(walk_a == walk_b);
}

TEST_CASE("drift increment variance matches the configured std") {
    RandomStream rng(31, 0);
    const double sigma = 0.8;
    const int increments = 10000;
    const auto walk = apply_drift(10.0, sigma, increments + 1, rng);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 1; i <= increments; ++i) {
        const double d = walk[size_t(i)] - walk[size_t(i) - 1];
        sum += d;
        sum_sq += d * d;
    }
    const double mean = sum / increments;
    const double variance = sum_sq / increments - mean * mean;
    // 3 sigma of the variance estimator: sigma^2 sqrt(2/n).
    CHECK(std::abs(variance - sigma * sigma) <
          3.0 * sigma * sigma * std::sqrt(2.0 / increments));
}

TEST_CASE("accidental rate from the singles product") {
    ExperimentConfig cfg = clean_config();
    cfg.singles1_rate = 5e5;
    cfg.singles2_rate = 4.9e5;
    cfg.coincidence_window = 0.5e-9;
    CHECK(cfg.accidental_rate() == doctest::Approx(122.5).epsilon(1e-12));
}

TEST_CASE("peak fringe bin means 4490 counts at the l=1 rate") {
    ExperimentConfig cfg = clean_config();
    cfg.repeats = 2000;
    // With C = 0 the fringe maximum of the N=2, l=1 curve sits at 90 deg.
    const auto records = simulate_sweep(cfg, {90.0}, 0.0);
    double sum = 0.0;
    for (const auto& record : records) sum += static_cast<double>(record.coincidences[0]);
    const double mean = sum / cfg.repeats;
    const double se = std::sqrt(4490.0 / cfg.repeats);
    CHECK(std::abs(mean - 4490.0) < 5.0 * se);
}

TEST_CASE("empirical bin mean tracks the fringe model") {
    ExperimentConfig cfg = clean_config();
    cfg.visibility = 0.957;
    cfg.singles1_rate = 5e5;
    cfg.singles2_rate = 4.9e5;
    cfg.coincidence_window = 0.5e-9;
    cfg.repeats = 100000;
    const double theta = 37.0;

    quantum::FringeModel model;
    model.amplitude = cfg.amplitude_counts();
    model.offset = cfg.offset_counts();
    model.phase_deg = 0.0;
    model.photon_number = cfg.photon_number;
    model.charge = cfg.charge;
    const double expected = quantum::fringe_rate(theta, model);

    const auto records = simulate_sweep(cfg, {theta}, 0.0);
    double sum = 0.0;
    for (const auto& record : records) sum += static_cast<double>(record.coincidences[0]);
    const double mean = sum / cfg.repeats;
    const double se = std::sqrt(expected / cfg.repeats);
    CHECK(std::abs(mean - expected) < 5.0 * se);
}

TEST_CASE("sweep records are bit-identical under a fixed seed") {
    ExperimentConfig cfg = clean_config();
    cfg.repeats = 5;
    cfg.randomize_offset = true;
    cfg.drift_std_deg = 0.2;
    cfg.singles1_rate = 5e5;
    cfg.singles2_rate = 4.9e5;
    std::vector<double> angles;
    for (int i = 0; i < 40; ++i) angles.push_back(3.0 * i);

    const auto first = simulate_sweep(cfg, angles, 15.0);
    const auto second = simulate_sweep(cfg, angles, 15.0);
    REQUIRE(first.size() == second.size());
    for (size_t m = 0; m < first.size(); ++m) {
        CHECK(first[m].coincidences == second[m].coincidences);
        CHECK(first[m].singles1 == second[m].singles1);
        CHECK(first[m].singles2 == second[m].singles2);
        CHECK(first[m].realized_offset_deg == second[m].realized_offset_deg);
    }
}

TEST_CASE("each repeat starts at its own offset") {
    ExperimentConfig cfg = clean_config();
    cfg.repeats = 50;
    cfg.randomize_offset = true;
    const auto records = simulate_sweep(cfg, {0.0, 1.0, 2.0}, 0.0);
    double lo = 1e9, hi = -1e9;
    for (const auto& record : records) {
        lo = std::min(lo, record.realized_offset_deg);
        hi = std::max(hi, record.realized_offset_deg);
        CHECK(record.realized_offset_deg >= 0.0);
        CHECK(record.realized_offset_deg < 360.0);
    }
    CHECK(hi - lo > 90.0); // spread across the period, not clustered
}

TEST_CASE("sweep validation") {
    ExperimentConfig cfg = clean_config();
    CHECK_THROWS_AS(simulate_sweep(cfg, {}, 0.0), ConfigError);
    CHECK_THROWS_AS(simulate_sweep(cfg, {1.0, 1.0}, 0.0), ConfigError);
    cfg.visibility = 1.5;
    CHECK_THROWS_AS(simulate_sweep(cfg, {0.0, 1.0}, 0.0), ConfigError);
}

TEST_CASE("chirp phase bookkeeping") {
    const ChirpModel chirp = make_chirp(0.0, 0.0, 10.0, 10.0, 2, 16);
    // k T equals the final instantaneous angular frequency omega * w_f.
    CHECK(chirp.k * chirp.duration ==
          doctest::Approx(chirp.omega() * 10.0).epsilon(1e-12));
    CHECK(chirp.acceleration_deg_s2() == doctest::Approx(1.0).epsilon(1e-12));

    const ChirpModel small = make_chirp(0.0, 0.0, 10.0, 10.0, 2, 1);
    CHECK(chirp.k / small.k == doctest::Approx(16.0).epsilon(1e-12));

    ChirpModel broken = chirp;
    broken.k *= 1.0 + 1e-6;
    CHECK_THROWS_AS(broken.validate(), ConfigError);
}

TEST_CASE("chirp record covers the requested bins") {
    ExperimentConfig cfg = clean_config();
    cfg.acq_time = 0.01;
    cfg.charge = 16;
    const ChirpModel chirp = make_chirp(0.0, 0.0, 10.0, 10.0, 2, 16);
    const CountRecord record = simulate_chirp(cfg, chirp, 1000);
    CHECK(record.size() == 1000);
    CHECK(record.kind == CountRecord::Kind::Time);
    CHECK(record.abscissa.front() == doctest::Approx(0.005));
    CHECK(record.abscissa.back() == doctest::Approx(9.995));
    REQUIRE(record.chirp_truth.has_value());
    CHECK(record.chirp_truth->k == chirp.k);

    CHECK_THROWS_AS(simulate_chirp(cfg, chirp, 1100), ConfigError);
}

TEST_CASE("zero-acceleration chirp means match a constant-rate fringe") {
    ExperimentConfig cfg = clean_config();
    cfg.acq_time = 0.01;
    cfg.charge = 4;
    cfg.pair_rate = 40000.0;
    const double speed = 5.0; // deg/s, constant
    const ChirpModel chirp = make_chirp(0.3, speed, speed, 10.0, 2, 4);
    CHECK(chirp.k == 0.0);

    const int bins = 200;
    const int trials = 400;
    std::vector<double> sums(bins, 0.0);
    for (int trial = 0; trial < trials; ++trial) {
        ExperimentConfig seeded = cfg;
        seeded.rng_seed = 1000 + static_cast<std::uint64_t>(trial);
        const CountRecord record = simulate_chirp(seeded, chirp, bins);
        for (int j = 0; j < bins; ++j)
            sums[size_t(j)] += static_cast<double>(record.coincidences[size_t(j)]);
    }
    // Constant rotation: the mean at bin time t is the fringe at theta = w t.
    quantum::FringeModel model;
    model.amplitude = cfg.amplitude_counts();
    model.offset = cfg.offset_counts();
    model.phase_deg = -chirp.theta0 * 180.0 / std::numbers::pi;
    model.photon_number = 2;
    model.charge = 4;
    int checked = 0;
    for (int j = 0; j < bins; j += 25) {
        const double t = (j + 0.5) * cfg.acq_time;
        const double expected = quantum::fringe_rate(speed * t, model);
        const double mean = sums[size_t(j)] / trials;
        const double se = std::sqrt(expected / trials);
        CHECK(std::abs(mean - expected) < 5.0 * se);
        ++checked;
    }
    CHECK(checked == 8);
}

TEST_CASE("chirp and config must agree on N and l") {
    ExperimentConfig cfg = clean_config();
    cfg.acq_time = 0.01;
    cfg.charge = 1;
    const ChirpModel chirp = make_chirp(0.0, 0.0, 10.0, 10.0, 2, 16);
    CHECK_THROWS_AS(simulate_chirp(cfg, chirp, 100), ConfigError);
}
