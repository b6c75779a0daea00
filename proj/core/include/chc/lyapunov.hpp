#pragma once

#include <array>
#include <vector>

#include "chc/chaos.hpp"

namespace chc {

// Row-major 4x4 matrix.  Tiny fixed-size loops beat a linalg dependency
// here, and we need a guaranteed evaluation order anyway.
using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 mat4_identity();

// Jacobian of the flow at s:
//   [ -a        a      0     0   ]
//   [ -e1 z     c    -e1 x  k_fb ]
//   [  0      2 e2 y   0     0   ]
//   [  0       -m      0     0   ]
// Trace is -a + c independent of the state.
Mat4 jacobian(const State4& s, const SystemParams& p);

// Base trajectory point plus the four tangent vectors carried alongside it
// (columns of `basis`).
struct TangentFrame {
    State4 base_state;
    Mat4 basis;
};

struct LyapunovSpectrum {
    double le1 = 0.0;  // sorted descending
    double le2 = 0.0;
    double le3 = 0.0;
    double le4 = 0.0;

    double sum() const { return le1 + le2 + le3 + le4; }
    std::array<double, 4> as_array() const { return {le1, le2, le3, le4}; }
};

// Running estimate emitted after a renormalization, for convergence plots.
struct SpectrumSample {
    double t;
    std::array<double, 4> le;
};

// Benettin tangent-space method: integrate state and variational system
// together with RK4, re-orthonormalize the tangent basis (classical
// Gram-Schmidt) every renorm_every steps, accumulate log stretching
// factors, divide by the accumulated time.  `transient_time` time units are
// integrated (state only) and discarded first.  If `series` is non-null a
// SpectrumSample is appended after every series_stride-th renormalization.
LyapunovSpectrum lyapunov_spectrum(const SystemParams& p, const TangentFrame& start,
                                   double dt, double t_total, int renorm_every,
                                   double transient_time = 10.0,
                                   std::vector<SpectrumSample>* series = nullptr,
                                   std::size_t series_stride = 1);

// Same, starting from the identity tangent basis.
LyapunovSpectrum lyapunov_spectrum(const SystemParams& p, const State4& initial,
                                   double dt, double t_total, int renorm_every,
                                   double transient_time = 10.0,
                                   std::vector<SpectrumSample>* series = nullptr,
                                   std::size_t series_stride = 1);

// Two exponents strictly above `threshold`.  Throws InvalidParams for
// threshold <= 0.
bool is_hyperchaotic(const LyapunovSpectrum& s, double threshold = 0.01);

}  // namespace chc
