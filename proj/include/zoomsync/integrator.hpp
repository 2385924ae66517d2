#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace zoomsync
{

/// Raised when an integrated state acquires a non-finite component.
class DivergenceError : public std::runtime_error
{
public:
    DivergenceError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

struct State
{
    Eigen::VectorXd components;
    double time = 0.0;
};

/// Autonomous right-hand side writing dx = f(x) into a preallocated vector.
using RhsFunction = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/**
 * Classical fixed-step fourth-order Runge-Kutta stepper.  Owns its stage
 * buffers so the hot loop in the closed-loop simulation does not allocate.
 */
class Rk4Stepper
{
public:
    explicit Rk4Stepper(Eigen::Index dim);

    /// Advances x in place by one step h.  Throws DivergenceError on non-finite output.
    template <class Rhs>
    void step(Rhs&& rhs, Eigen::VectorXd& x, double h, double t_after = 0.0)
    {
        rhs(x, k1_);
        tmp_ = x + (0.5 * h) * k1_;
        rhs(tmp_, k2_);
        tmp_ = x + (0.5 * h) * k2_;
        rhs(tmp_, k3_);
        tmp_ = x + h * k3_;
        rhs(tmp_, k4_);
        x += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
        if (!x.allFinite())
            throw DivergenceError("state became non-finite", t_after);
    }

private:
    Eigen::VectorXd k1_, k2_, k3_, k4_, tmp_;
};

/// One RK4 step of size h > 0 from `state`; time advances by h.
State integrate_step(const RhsFunction& rhs, const State& state, double h);

} // namespace zoomsync
