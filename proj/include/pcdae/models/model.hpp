#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "pcdae/dae.hpp"

namespace pcdae {

/// A built system together with its consistent initial state.
struct ModelInstance {
    std::unique_ptr<DaeSystem> system;
    SystemState initial;
    /// (x(t), y(t)) when the model has a closed-form solution.
    std::function<std::pair<Vector, Vector>(double)> analytic;
};

}  // namespace pcdae
