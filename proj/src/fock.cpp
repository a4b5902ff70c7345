#include "gearsense/fock.hpp"

#include <array>
#include <cmath>

#include "gearsense/errors.hpp"

namespace gearsense::quantum {

double FockVector::norm_sq() const {
    double acc = 0.0;
    for (const cplx& a : amplitudes) acc += std::norm(a);
    return acc;
}

double FockVector::probability(int n_a) const {
    return std::norm(amplitudes.at(static_cast<size_t>(n_a)));
}

FockVector NoonState::to_fock() const {
    if (n < 1) throw ConfigError("NoonState needs n >= 1");
    FockVector v;
    v.amplitudes.assign(static_cast<size_t>(n) + 1, {0.0, 0.0});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    v.amplitudes[static_cast<size_t>(n)] = inv_sqrt2;          // |n, 0>
    v.amplitudes[0] = std::polar(inv_sqrt2, phase);            // e^{i phase} |0, n>
    return v;
}

NoonState noon_after_rotation(int n, double theta, int charge) {
    if (n < 1) throw ConfigError("photon number must be >= 1");
    return NoonState{n, static_cast<double>(n) * theta * static_cast<double>(charge)};
}

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

cplx i_power(int m) {
    static const std::array<cplx, 4> table{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    return table[static_cast<size_t>(((m % 4) + 4) % 4)];
}

// U[j][k] = <j, n-j| B |k, n-k> from expanding
// B (a+)^k (b+)^{n-k} B+ = 2^{-n/2} (a+ + i b+)^k (i a+ + b+)^{n-k}.
std::vector<std::vector<cplx>> splitter_matrix(int n) {
    std::vector<std::vector<cplx>> u(static_cast<size_t>(n) + 1,
                                     std::vector<cplx>(static_cast<size_t>(n) + 1, {0.0, 0.0}));
    const double root_half_n = std::pow(0.5, 0.5 * n);
    for (int k = 0; k <= n; ++k) {
        const double in_norm = std::sqrt(factorial(k) * factorial(n - k));
        for (int p = 0; p <= k; ++p) {
            for (int q = 0; q <= n - k; ++q) {
                const int j = p + q;
                const cplx coeff = binomial(k, p) * binomial(n - k, q) * i_power(k - p + q);
                u[static_cast<size_t>(j)][static_cast<size_t>(k)] +=
                    coeff * root_half_n * std::sqrt(factorial(j) * factorial(n - j)) / in_norm;
            }
        }
    }
    return u;
}

} // namespace

FockVector beamsplitter_oracle(const FockVector& input) {
    const int n = input.total_photons();
    if (n < 0) throw ConfigError("empty Fock vector");
    if (n > kMaxOraclePhotons)
        throw ConfigError("beamsplitter_oracle handles at most 10 photons");
    if (std::abs(input.norm_sq() - 1.0) > 1e-12)
        throw ConfigError("beamsplitter_oracle input must be normalized");

    const auto u = splitter_matrix(n);
    FockVector out;
    out.amplitudes.assign(static_cast<size_t>(n) + 1, {0.0, 0.0});
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
            out.amplitudes[static_cast<size_t>(j)] +=
                u[static_cast<size_t>(j)][static_cast<size_t>(k)] * input.amplitudes[static_cast<size_t>(k)];
    return out;
}

double coincidence_probability(double theta, int charge, int n) {
    if (charge == 0) throw ConfigError("topological charge must be nonzero");
    if (n != 2)
        throw UnsupportedClosedFormError(
            "closed-form coincidence only exists for n = 2; use beamsplitter_oracle");
    const double c = std::cos(theta * static_cast<double>(charge));
    return c * c;
}

} // namespace gearsense::quantum
