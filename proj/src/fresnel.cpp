#include "gearsense/fresnel.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "gearsense/errors.hpp"

namespace gearsense::optics {

namespace {

// FFTW plans are cheap to build with FFTW_ESTIMATE but not free; keep one
// forward/inverse pair per grid size. Planning is not thread-safe.
class Fft2d {
public:
    explicit Fft2d(int n) : n_(n) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n) * n));
        fwd_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft2d() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(buf_);
    }
    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    cplx* buffer() { return reinterpret_cast<cplx*>(buf_); }
    size_t size() const { return static_cast<size_t>(n_) * n_; }
    void forward() { fftw_execute(fwd_); }
    void inverse() { fftw_execute(inv_); }

private:
    int n_;
    fftw_complex* buf_;
    fftw_plan fwd_;
    fftw_plan inv_;
};

Fft2d& plan_for(int n) {
    static std::mutex mtx;
    static std::vector<std::pair<int, std::unique_ptr<Fft2d>>> cache;
    std::lock_guard lock(mtx);
    for (auto& [size, plan] : cache)
        if (size == n) return *plan;
    cache.emplace_back(n, std::make_unique<Fft2d>(n));
    return *cache.back().second;
}

} // namespace

double max_propagation_distance(const FieldGrid& field) {
    const double dx = field.spacing();
    return field.n * dx * dx / field.wavelength;
}

FieldGrid propagate_fresnel(const FieldGrid& field, double distance) {
    if (distance < 0.0) throw ConfigError("propagation distance must be >= 0");
    if (field.n < 2 || field.samples.size() != static_cast<size_t>(field.n) * field.n)
        throw GeometryError("malformed field grid");
    if (distance == 0.0) return field;

    const double z_max = max_propagation_distance(field);
    if (distance > z_max) {
        const double dx = field.spacing();
        const int min_n = static_cast<int>(std::ceil(field.wavelength * distance / (dx * dx)));
        std::ostringstream msg;
        msg << "transfer-function chirp aliases at z = " << distance << " m (limit " << z_max
            << " m); at the current spacing use n >= " << min_n << " samples per axis";
        throw AliasingError(msg.str(), min_n);
    }

    Fft2d& fft = plan_for(field.n);
    std::copy(field.samples.begin(), field.samples.end(), fft.buffer());
    fft.forward();

    const int n = field.n;
    const double window = 2.0 * field.extent; // full physical width
    const double df = 1.0 / window;
    const double lambda_z = field.wavelength * distance;
    const double piston = 2.0 * std::numbers::pi * distance / field.wavelength;
    cplx* spec = fft.buffer();
    for (int iy = 0; iy < n; ++iy) {
        const double fy = (iy <= n / 2 ? iy : iy - n) * df;
        for (int ix = 0; ix < n; ++ix) {
            const double fx = (ix <= n / 2 ? ix : ix - n) * df;
            const double phase = piston - std::numbers::pi * lambda_z * (fx * fx + fy * fy);
            spec[static_cast<size_t>(iy) * n + ix] *= std::polar(1.0, phase);
        }
    }

    fft.inverse();
    FieldGrid out = field;
    const double scale = 1.0 / (static_cast<double>(n) * n);
    const cplx* buf = fft.buffer();
    for (size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = buf[i] * scale;
    return out;
}

} // namespace gearsense::optics
