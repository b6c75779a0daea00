#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace chc {

// Parameters of the 4-D hyper-chaotic flow
//
//   x' = a (y - x)
//   y' = -e1 x z + c y + k_fb w
//   z' = -b + e2 y^2
//   w' = -m y
//
// All seven must be strictly positive and finite.  The feedback gain is
// named k_fb rather than k to keep it apart from the ECC ephemeral scalar.
struct SystemParams {
    double a;
    double b;
    double c;
    double e1;
    double e2;
    double k_fb;
    double m;
};

struct State4 {
    double x;
    double y;
    double z;
    double w;
};

// Reference parameter set: a=10, b=3, c=2.5, e1=12, e2=0.1, k_fb=2, m=2.
SystemParams default_system_params();

// Reference initial condition (1, 1, 1, 1).
State4 default_initial_state();

// Throws InvalidParams unless every parameter is finite and > 0.
void validate_params(const SystemParams& p);

// Right-hand side of the flow.
State4 derivative(const State4& s, const SystemParams& p);

// One classical fixed-step RK4 step.  The arithmetic here has a fixed
// evaluation order on purpose: identical inputs must give bit-identical
// outputs across runs, since the keystream is harvested from raw doubles.
// Throws InvalidParams for dt <= 0, IntegrationDiverged on non-finite output.
State4 rk4_step(const State4& s, const SystemParams& p, double dt);

struct Trajectory {
    double dt = 0.0;
    std::vector<State4> states;              // n_steps + 1 retained states
    std::size_t transient_discarded = 0;
};

// Any state component exceeding this magnitude aborts the integration.
inline constexpr double kDivergenceLimit = 1e12;

// Integrates n_transient + n_steps steps from `initial`, discards the
// transient, and returns the n_steps + 1 states starting with the first
// post-transient state.
Trajectory simulate(const State4& initial, const SystemParams& p, double dt,
                    std::size_t n_steps, std::size_t n_transient);

// Always empty for valid parameters: w' = 0 forces y = 0, but then
// z' = -b < 0 can never vanish.  Kept as a function so the claim is
// checkable and the parameter validation still applies.
std::vector<State4> find_equilibria(const SystemParams& p);

// CSV dump, header "t,x,y,z,w", one row per retained state, t = i * dt.
// Doubles are printed in shortest round-trip form.
std::string trajectory_csv(const Trajectory& tr);

}  // namespace chc
