#ifndef GEARSENSE_BOUNDS_HPP
#define GEARSENSE_BOUNDS_HPP

namespace gearsense::est {

// Heisenberg-limited angular uncertainty 1/(sqrt(M) * N * l) in radians for
// M repeated measurements with N-photon states through charge-l plates.
double heisenberg_limit(int measurements, int photon_number, int charge);

// Resources entering the shot-noise violation criterion eta^N * V^2 * N > 1.
struct EfficiencyBudget {
    double eta = 0.0;        // Klyshko efficiency, in (0, 1]
    double visibility = 0.0; // in [0, 1]
    int photon_number = 2;
};

struct ViolationFigure {
    double figure = 0.0; // eta^N V^2 N
    bool violated = false;
};

ViolationFigure violation_figure(const EfficiencyBudget& budget);

// Smallest eta with eta^N V^2 N = 1, found by bisection to 1e-12. Throws
// NumericError when even eta = 1 cannot reach the criterion.
double eta_threshold(double visibility, int photon_number);

} // namespace gearsense::est

#endif
