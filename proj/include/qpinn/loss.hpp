#pragma once

#include <functional>
#include <vector>

#include "qpinn/hybrid.hpp"
#include "qpinn/ode.hpp"

namespace qpinn {

struct LossWeights {
    double ic = 1.0;
    double ode = 1.0;
    double sol = 1.0;
};

struct LossBreakdown {
    double total = 0.0;
    double ic = 0.0;
    double ode = 0.0;
    double sol = 0.0;
    bool sol_skipped = false;  // no supervised samples were available
};

// The loss terms score anything that can report a value and a time derivative
// at a point; the hybrid model and closed-form solutions both fit behind this.
struct TrajectoryEval {
    std::vector<double> value;
    std::vector<double> derivative;
};
using Trajectory = std::function<TrajectoryEval(double)>;

// Adapter over a model; QNode expectations are simulated once at wrap time.
Trajectory model_trajectory(const HybridModel& model);

// Adapter over a problem's closed-form solution (derivative via the rhs).
Trajectory analytic_trajectory(const ODEProblem& problem);

// || y(t0) - y0 ||^2.
double loss_ic(const Trajectory& traj, const ODEProblem& problem);

// sum_k || y'(t_k) - f(t_k, y(t_k)) ||^2 over the collocation grid
// (unnormalized sum, so refining the grid raises the weight of the term).
double loss_ode(const Trajectory& traj, const ODEProblem& problem);

// sum_k || y(t_k) - y_ref_k ||^2 over known solution samples; 0 when none.
double loss_sol(const Trajectory& traj, const ODEProblem& problem);

LossBreakdown composite_loss(const Trajectory& traj, const ODEProblem& problem,
                             const LossWeights& weights);
LossBreakdown composite_loss(const HybridModel& model, const ODEProblem& problem,
                             const LossWeights& weights);

// Weighted loss with its gradient w.r.t. every model parameter. The rhs
// Jacobian in the residual cross term is contracted by central differences
// with step 1e-6 * (1 + ||y||); the quantum blocks reuse one parameter-shift
// evaluation per output, scaled by the accumulated coupling coefficients.
struct LossAndGrad {
    LossBreakdown breakdown;
    std::vector<double> grad_classical;      // flat network layout
    std::vector<QNodeParams> grad_quantum;   // one block per output
};
LossAndGrad total_loss_and_grad(const HybridModel& model, const ODEProblem& problem,
                                const LossWeights& weights);

}  // namespace qpinn
