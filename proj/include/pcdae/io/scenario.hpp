#pragma once

#include <cstdint>
#include <string>

#include "pcdae/integrators.hpp"
#include "pcdae/io/config.hpp"
#include "pcdae/models/model.hpp"
#include "pcdae/models/power_network.hpp"

namespace pcdae {

enum class ModelKind { Smib, MultiMachine, ScalarLinear, LinearOde };

[[nodiscard]] ModelKind parse_model_kind(const std::string& name);
[[nodiscard]] std::string to_string(ModelKind kind);

/// Everything one `run` needs. Defaults reproduce the SMIB fault study with
/// pc-predict at rtol 1e-6.
struct ScenarioConfig {
    ModelKind model = ModelKind::Smib;
    bool events = true;

    SmibParams smib;
    std::string case_path;  ///< empty selects the bundled three-machine case
    LineTrip trip;

    double lin_a = -2.0;
    double lin_b = 1.0;
    double lin_c = 1.0;
    double lin_x0 = 1.0;

    SimulationOptions sim;

    std::uint64_t seed = 0;  ///< reserved; no solver draws random numbers
    std::string output_dir = "out";

    /// Runs every component validator; throws ConfigError.
    void validate() const;
};

/// Applies every recognised key on top of the defaults. Unknown keys and
/// malformed values throw ConfigError naming the key and its location.
[[nodiscard]] ScenarioConfig scenario_from_config(const Config& config);

[[nodiscard]] ModelInstance build_model(const ScenarioConfig& scenario);

}  // namespace pcdae
