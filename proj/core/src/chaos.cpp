#include "chc/chaos.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "chc/errors.hpp"

namespace chc {

SystemParams default_system_params() {
    return {10.0, 3.0, 2.5, 12.0, 0.1, 2.0, 2.0};
}

State4 default_initial_state() {
    return {1.0, 1.0, 1.0, 1.0};
}

void validate_params(const SystemParams& p) {
    const double vals[] = {p.a, p.b, p.c, p.e1, p.e2, p.k_fb, p.m};
    const char* names[] = {"a", "b", "c", "e1", "e2", "k", "m"};
    for (int i = 0; i < 7; ++i) {
        if (!std::isfinite(vals[i]) || vals[i] <= 0.0)
            throw InvalidParams(std::string("parameter ") + names[i] +
                                " must be finite and > 0");
    }
}

State4 derivative(const State4& s, const SystemParams& p) {
    return {p.a * (s.y - s.x),
            -p.e1 * s.x * s.z + p.c * s.y + p.k_fb * s.w,
            -p.b + p.e2 * s.y * s.y,
            -p.m * s.y};
}

namespace {

State4 add_scaled(const State4& s, double h, const State4& d) {
    return {s.x + h * d.x, s.y + h * d.y, s.z + h * d.z, s.w + h * d.w};
}

bool all_finite(const State4& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z) &&
           std::isfinite(s.w);
}

bool within_limit(const State4& s) {
    return std::fabs(s.x) <= kDivergenceLimit && std::fabs(s.y) <= kDivergenceLimit &&
           std::fabs(s.z) <= kDivergenceLimit && std::fabs(s.w) <= kDivergenceLimit;
}

}  // namespace

State4 rk4_step(const State4& s, const SystemParams& p, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidParams("rk4_step: dt must be finite and > 0");

    const State4 k1 = derivative(s, p);
    const State4 k2 = derivative(add_scaled(s, 0.5 * dt, k1), p);
    const State4 k3 = derivative(add_scaled(s, 0.5 * dt, k2), p);
    const State4 k4 = derivative(add_scaled(s, dt, k3), p);

    const double h6 = dt / 6.0;
    State4 out{s.x + h6 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
               s.y + h6 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
               s.z + h6 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
               s.w + h6 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
    if (!all_finite(out))
        throw IntegrationDiverged("rk4_step produced a non-finite state");
    return out;
}

Trajectory simulate(const State4& initial, const SystemParams& p, double dt,
                    std::size_t n_steps, std::size_t n_transient) {
    validate_params(p);
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidParams("simulate: dt must be finite and > 0");
    if (!all_finite(initial))
        throw InvalidParams("simulate: initial state must be finite");

    auto step_checked = [&](const State4& s, std::size_t i) {
        State4 next = rk4_step(s, p, dt);
        if (!within_limit(next))
            throw IntegrationDiverged("simulate: state exceeded " +
                                      std::to_string(kDivergenceLimit) + " at step " +
                                      std::to_string(i));
        return next;
    };

    State4 s = initial;
    for (std::size_t i = 0; i < n_transient; ++i) s = step_checked(s, i);

    Trajectory tr;
    tr.dt = dt;
    tr.transient_discarded = n_transient;
    tr.states.reserve(n_steps + 1);
    tr.states.push_back(s);
    for (std::size_t i = 0; i < n_steps; ++i) {
        s = step_checked(s, n_transient + i);
        tr.states.push_back(s);
    }
    return tr;
}

std::vector<State4> find_equilibria(const SystemParams& p) {
    validate_params(p);
    // w' = -m y = 0 forces y = 0; then z' = -b + e2 y^2 = -b < 0 for every
    // valid b, so the right-hand side never vanishes.
    return {};
}

namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

std::string trajectory_csv(const Trajectory& tr) {
    std::string out = "t,x,y,z,w\n";
    out.reserve(out.size() + tr.states.size() * 80);
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
        const State4& s = tr.states[i];
        append_double(out, static_cast<double>(i) * tr.dt);
        out.push_back(',');
        append_double(out, s.x);
        out.push_back(',');
        append_double(out, s.y);
        out.push_back(',');
        append_double(out, s.z);
        out.push_back(',');
        append_double(out, s.w);
        out.push_back('\n');
    }
    return out;
}

}  // namespace chc
