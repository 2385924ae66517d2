#include "zoomsync/integrator.hpp"

namespace zoomsync
{

Rk4Stepper::Rk4Stepper(Eigen::Index dim)
    : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim)
{
}

State integrate_step(const RhsFunction& rhs, const State& state, double h)
{
    if (!(h > 0.0))
        throw std::invalid_argument("integrate_step: step must be positive");
    State next{state.components, state.time + h};
    Rk4Stepper stepper(next.components.size());
    stepper.step(rhs, next.components, h, next.time);
    return next;
}

} // namespace zoomsync
