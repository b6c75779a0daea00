#include "chc/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "chc/errors.hpp"

namespace chc {

Mat4 mat4_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

Mat4 jacobian(const State4& s, const SystemParams& p) {
    Mat4 j{};
    j[0][0] = -p.a;
    j[0][1] = p.a;
    j[1][0] = -p.e1 * s.z;
    j[1][1] = p.c;
    j[1][2] = -p.e1 * s.x;
    j[1][3] = p.k_fb;
    j[2][1] = 2.0 * p.e2 * s.y;
    j[3][1] = -p.m;
    return j;
}

namespace {

// State and tangent basis integrated as one 20-dim system so both see the
// same RK4 stages.
struct Flow {
    State4 s;
    Mat4 m;  // columns are tangent vectors
};

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

Flow flow_derivative(const Flow& f, const SystemParams& p) {
    return {derivative(f.s, p), mat_mul(jacobian(f.s, p), f.m)};
}

Flow flow_add_scaled(const Flow& f, double h, const Flow& d) {
    Flow r;
    r.s = {f.s.x + h * d.s.x, f.s.y + h * d.s.y, f.s.z + h * d.s.z, f.s.w + h * d.s.w};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = f.m[i][j] + h * d.m[i][j];
    return r;
}

Flow flow_rk4_step(const Flow& f, const SystemParams& p, double dt) {
    const Flow k1 = flow_derivative(f, p);
    const Flow k2 = flow_derivative(flow_add_scaled(f, 0.5 * dt, k1), p);
    const Flow k3 = flow_derivative(flow_add_scaled(f, 0.5 * dt, k2), p);
    const Flow k4 = flow_derivative(flow_add_scaled(f, dt, k3), p);
    const double h6 = dt / 6.0;
    Flow out;
    out.s = {f.s.x + h6 * (k1.s.x + 2.0 * k2.s.x + 2.0 * k3.s.x + k4.s.x),
             f.s.y + h6 * (k1.s.y + 2.0 * k2.s.y + 2.0 * k3.s.y + k4.s.y),
             f.s.z + h6 * (k1.s.z + 2.0 * k2.s.z + 2.0 * k3.s.z + k4.s.z),
             f.s.w + h6 * (k1.s.w + 2.0 * k2.s.w + 2.0 * k3.s.w + k4.s.w)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.m[i][j] = f.m[i][j] + h6 * (k1.m[i][j] + 2.0 * k2.m[i][j] +
                                            2.0 * k3.m[i][j] + k4.m[i][j]);
    if (!std::isfinite(out.s.x) || !std::isfinite(out.m[0][0]))
        throw IntegrationDiverged("lyapunov: non-finite flow state");
    return out;
}

// Classical Gram-Schmidt on the columns; returns the four norms taken
// just before normalization (the stretching factors).
std::array<double, 4> gram_schmidt(Mat4& m) {
    std::array<double, 4> norms{};
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < j; ++k) {
            double dot = 0.0;
            for (int i = 0; i < 4; ++i) dot += m[i][k] * m[i][j];
            for (int i = 0; i < 4; ++i) m[i][j] -= dot * m[i][k];
        }
        double nrm = 0.0;
        for (int i = 0; i < 4; ++i) nrm += m[i][j] * m[i][j];
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw IntegrationDiverged("lyapunov: tangent basis collapsed");
        norms[j] = nrm;
        const double inv = 1.0 / nrm;
        for (int i = 0; i < 4; ++i) m[i][j] *= inv;
    }
    return norms;
}

}  // namespace

LyapunovSpectrum lyapunov_spectrum(const SystemParams& p, const TangentFrame& start,
                                   double dt, double t_total, int renorm_every,
                                   double transient_time,
                                   std::vector<SpectrumSample>* series,
                                   std::size_t series_stride) {
    validate_params(p);
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidParams("lyapunov_spectrum: dt must be finite and > 0");
    if (!(t_total > 0.0) || !std::isfinite(t_total))
        throw InvalidParams("lyapunov_spectrum: t_total must be finite and > 0");
    if (renorm_every < 1)
        throw InvalidParams("lyapunov_spectrum: renorm_every must be >= 1");
    if (transient_time < 0.0 || !std::isfinite(transient_time))
        throw InvalidParams("lyapunov_spectrum: transient_time must be >= 0");
    if (series_stride == 0) series_stride = 1;

    State4 s = start.base_state;
    const auto n_transient = static_cast<std::size_t>(std::llround(transient_time / dt));
    for (std::size_t i = 0; i < n_transient; ++i) s = rk4_step(s, p, dt);

    Flow f{s, start.basis};
    // The caller's basis need not be orthonormal; start from its span.
    gram_schmidt(f.m);

    const auto n_steps = static_cast<std::size_t>(std::llround(t_total / dt));
    if (n_steps == 0) throw InvalidParams("lyapunov_spectrum: t_total shorter than dt");

    std::array<double, 4> log_sums{};
    std::size_t since_renorm = 0;
    std::size_t renorm_count = 0;

    auto renormalize = [&](std::size_t steps_done) {
        const auto norms = gram_schmidt(f.m);
        for (int j = 0; j < 4; ++j) log_sums[j] += std::log(norms[j]);
        since_renorm = 0;
        ++renorm_count;
        if (series && renorm_count % series_stride == 0) {
            const double t = static_cast<double>(steps_done) * dt;
            std::array<double, 4> le{};
            for (int j = 0; j < 4; ++j) le[j] = log_sums[j] / t;
            std::sort(le.begin(), le.end(), std::greater<>());
            series->push_back({t, le});
        }
    };

    for (std::size_t i = 1; i <= n_steps; ++i) {
        f = flow_rk4_step(f, p, dt);
        if (++since_renorm == static_cast<std::size_t>(renorm_every)) renormalize(i);
    }
    if (since_renorm > 0) renormalize(n_steps);

    const double elapsed = static_cast<double>(n_steps) * dt;
    std::array<double, 4> le{};
    for (int j = 0; j < 4; ++j) le[j] = log_sums[j] / elapsed;
    std::sort(le.begin(), le.end(), std::greater<>());
    return {le[0], le[1], le[2], le[3]};
}

LyapunovSpectrum lyapunov_spectrum(const SystemParams& p, const State4& initial,
                                   double dt, double t_total, int renorm_every,
                                   double transient_time,
                                   std::vector<SpectrumSample>* series,
                                   std::size_t series_stride) {
    return lyapunov_spectrum(p, TangentFrame{initial, mat4_identity()}, dt, t_total,
                             renorm_every, transient_time, series, series_stride);
}

bool is_hyperchaotic(const LyapunovSpectrum& s, double threshold) {
    if (!(threshold > 0.0) || !std::isfinite(threshold))
        throw InvalidParams("is_hyperchaotic: threshold must be > 0");
    return s.le1 > threshold && s.le2 > threshold;
}

}  // namespace chc
