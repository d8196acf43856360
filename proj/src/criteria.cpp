#include "entrap/criteria.hpp"

#include <cmath>

#include "entrap/errors.hpp"

namespace entrap {

void Tolerances::validate() const {
    if (!(eps_zero > 0.0) || !(eps_ag > 0.0) || !(eps_mg > 0.0) || !(char_length > 0.0)) {
        throw ValidationError("tolerances must be strictly positive");
    }
    if (!(eps_mg < eps_ag)) {
        throw ValidationError("eps_mg must be smaller than eps_ag");
    }
}

DivergenceWeights DivergenceWeights::from_matrix(const std::array<double, 4>& m) {
    for (double v : m) {
        if (!std::isfinite(v)) throw ValidationError("weight matrix entry not finite");
    }
    if (std::abs(m[1] - m[2]) > 1e-12) {
        throw ValidationError("weight matrix must be symmetric");
    }
    // Smallest eigenvalue of a symmetric 2x2.
    const double tr = m[0] + m[3];
    const double det = m[0] * m[3] - m[1] * m[2];
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    const double lambda_min = 0.5 * (tr - disc);
    if (lambda_min < -1e-12) {
        throw ValidationError("weight matrix must be positive semi-definite");
    }
    return DivergenceWeights(m);
}

DivergenceWeights DivergenceWeights::identity() {
    return DivergenceWeights({1.0, 0.0, 0.0, 1.0});
}

double stacked_norm(const TaskVelocity& x, double char_length) {
    const double w = x.omega * char_length;
    return std::sqrt(x.vx * x.vx + x.vy * x.vy + w * w);
}

VelocityError velocity_error(const TaskVelocity& assumed, const TaskVelocity& measured) {
    VelocityError err;
    err.e_v = std::hypot(assumed.vx - measured.vx, assumed.vy - measured.vy);
    err.e_omega = std::abs(assumed.omega - measured.omega);
    return err;
}

double weighted_divergence(const VelocityError& err, const DivergenceWeights& w) {
    const auto& m = w.matrix();
    const double quad = err.e_v * (m[0] * err.e_v + m[1] * err.e_omega) +
                        err.e_omega * (m[2] * err.e_v + m[3] * err.e_omega);
    return std::sqrt(std::max(0.0, quad));
}

namespace {

TaskVelocity diff(const TaskVelocity& a, const TaskVelocity& b) {
    return TaskVelocity{a.vx - b.vx, a.vy - b.vy, a.omega - b.omega};
}

}  // namespace

bool entrapped_ground_truth(const TaskVelocity& assumed, const TaskVelocity& ground_truth,
                            const Tolerances& tol) {
    const bool not_moving = stacked_norm(ground_truth, tol.char_length) < tol.eps_zero;
    const bool diverged = stacked_norm(diff(assumed, ground_truth), tol.char_length) > tol.eps_ag;
    return not_moving && diverged;
}

bool entrapped_measured(const TaskVelocity& assumed, const TaskVelocity& measured,
                        const Tolerances& tol) {
    return entrapped_ground_truth(assumed, measured, tol);
}

bool measurement_valid(const TaskVelocity& measured, const TaskVelocity& ground_truth,
                       const Tolerances& tol) {
    return stacked_norm(diff(measured, ground_truth), tol.char_length) < tol.eps_mg;
}

}  // namespace entrap
