#ifndef GEARSENSE_FOCK_HPP
#define GEARSENSE_FOCK_HPP

#include <complex>
#include <vector>

namespace gearsense::quantum {

using cplx = std::complex<double>;

// Two-mode Fock state of fixed total photon number. amplitudes[k] is the
// coefficient of |k, n-k> where k photons sit in mode a.
struct FockVector {
    std::vector<cplx> amplitudes;

    int total_photons() const { return static_cast<int>(amplitudes.size()) - 1; }
    double norm_sq() const;
    double probability(int n_a) const;
};

// Path-entangled (|n,0> + e^{i phase} |0,n>)/sqrt(2). `phase` is the full
// accumulated inter-arm phase; after a rotation theta of one plate with
// charge l it equals n * theta * l.
struct NoonState {
    int n = 2;
    double phase = 0.0; // [rad]

    FockVector to_fock() const;
};

NoonState noon_after_rotation(int n, double theta, int charge);

// Exact 50:50 beam-splitter unitary on the two-mode Fock space,
// convention a -> (a + i b)/sqrt(2), b -> (i a + b)/sqrt(2). Matrix
// elements come from the binomial expansion of the transformed creation
// operators; exact up to n_total = 10. Input must be normalized to 1e-12.
FockVector beamsplitter_oracle(const FockVector& input);

// Closed-form coincidence probability for the two-photon case: the |1,1>
// outcome after the splitter is cos^2(theta * l). Only n = 2 has this
// closed form; other n must go through beamsplitter_oracle.
double coincidence_probability(double theta, int charge, int n);

inline constexpr int kMaxOraclePhotons = 10;

} // namespace gearsense::quantum

#endif
