#include "pcdae/io/scenario.hpp"

#include <cstdlib>
#include <functional>
#include <map>

#include "pcdae/errors.hpp"
#include "pcdae/models/scalar_linear.hpp"

namespace pcdae {

namespace {

double to_double(const Config& cfg, const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError(cfg.where(key) + ": '" + key + "' expects a number, got '" + v + "'");
    }
    return out;
}

long to_integer(const Config& cfg, const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long out = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError(cfg.where(key) + ": '" + key + "' expects an integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const Config& cfg, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ConfigError(cfg.where(key) + ": '" + key + "' expects true or false, got '" + v + "'");
}

using Setter = std::function<void(ScenarioConfig&, const Config&, const std::string&,
                                  const std::string&)>;

Setter num(double ScenarioConfig::*field) {
    return [field](ScenarioConfig& s, const Config& c, const std::string& k,
                   const std::string& v) { s.*field = to_double(c, k, v); };
}

template <typename Get>
Setter num_in(Get get) {
    return [get](ScenarioConfig& s, const Config& c, const std::string& k, const std::string& v) {
        get(s) = to_double(c, k, v);
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["model.type"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                             const std::string& v) {
            try {
                s.model = parse_model_kind(v);
            } catch (const ConfigError& e) {
                throw ConfigError(c.where(k) + ": " + e.what());
            }
        };
        t["model.events"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                               const std::string& v) { s.events = to_bool(c, k, v); };

        t["smib.H"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.H; });
        t["smib.D"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.D; });
        t["smib.xd_prime"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.xd_prime; });
        t["smib.v1"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.v1; });
        t["smib.v2"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.v2; });
        t["smib.x12"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.x12; });
        t["smib.x13"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.x13; });
        t["smib.x23"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.x23; });
        t["smib.p_load"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.p_load; });
        t["smib.q_load"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.q_load; });
        t["smib.p_gen"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.p_gen; });
        t["smib.fault_admittance"] =
            num_in([](ScenarioConfig& s) -> double& { return s.smib.fault_admittance; });
        t["smib.fault_on"] = num_in([](ScenarioConfig& s) -> double& { return s.smib.fault_on; });
        t["smib.fault_off"] =
            num_in([](ScenarioConfig& s) -> double& { return s.smib.fault_off; });

        t["case.path"] = [](ScenarioConfig& s, const Config&, const std::string&,
                            const std::string& v) { s.case_path = v; };
        t["trip.branch"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                              const std::string& v) {
            s.trip.branch = static_cast<int>(to_integer(c, k, v));
        };
        t["trip.time"] = num_in([](ScenarioConfig& s) -> double& { return s.trip.trip_time; });
        t["trip.reconnect"] =
            num_in([](ScenarioConfig& s) -> double& { return s.trip.reconnect_time; });

        t["linear.a"] = num(&ScenarioConfig::lin_a);
        t["linear.b"] = num(&ScenarioConfig::lin_b);
        t["linear.c"] = num(&ScenarioConfig::lin_c);
        t["linear.x0"] = num(&ScenarioConfig::lin_x0);

        t["solver.scheme"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                                const std::string& v) {
            try {
                s.sim.scheme.kind = parse_scheme(v);
            } catch (const ConfigError& e) {
                throw ConfigError(c.where(k) + ": " + e.what());
            }
        };
        t["solver.corrector_iterations"] = [](ScenarioConfig& s, const Config& c,
                                              const std::string& k, const std::string& v) {
            s.sim.scheme.corrector.fixed_iterations = static_cast<int>(to_integer(c, k, v));
        };
        t["solver.check_predict"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                                       const std::string& v) {
            s.sim.scheme.check_predict = to_bool(c, k, v);
        };

        t["newton.tol_residual"] =
            num_in([](ScenarioConfig& s) -> double& { return s.sim.step.newton.tol_residual; });
        t["newton.tol_step"] =
            num_in([](ScenarioConfig& s) -> double& { return s.sim.step.newton.tol_step; });
        t["newton.max_iter"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                                  const std::string& v) {
            s.sim.step.newton.max_iter = static_cast<int>(to_integer(c, k, v));
        };
        t["newton.damping"] =
            num_in([](ScenarioConfig& s) -> double& { return s.sim.step.newton.damping; });
        t["newton.min_damping"] =
            num_in([](ScenarioConfig& s) -> double& { return s.sim.step.newton.min_damping; });

        auto ctl = [](double PiController::*field) {
            return [field](ScenarioConfig& s, const Config& c, const std::string& k,
                           const std::string& v) {
                s.sim.step.controller.*field = to_double(c, k, v);
            };
        };
        t["controller.rtol"] = ctl(&PiController::rtol);
        t["controller.atol"] = ctl(&PiController::atol);
        t["controller.k_i"] = ctl(&PiController::k_i);
        t["controller.k_p"] = ctl(&PiController::k_p);
        t["controller.safety"] = ctl(&PiController::safety);
        t["controller.fac_min"] = ctl(&PiController::fac_min);
        t["controller.fac_max"] = ctl(&PiController::fac_max);
        t["controller.h_min"] = ctl(&PiController::h_min);
        t["controller.h_max"] = ctl(&PiController::h_max);
        t["controller.h_init"] = num_in([](ScenarioConfig& s) -> double& { return s.sim.h_init; });

        // check.profile is applied before check.epsilon so an explicit value wins.
        t["check.profile"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                                const std::string& v) {
            if (v == "loose") {
                s.sim.step.check.epsilon = AlgebraicCheck::kLooseEpsilon;
            } else if (v == "tight") {
                s.sim.step.check.epsilon = AlgebraicCheck::kTightEpsilon;
            } else {
                throw ConfigError(c.where(k) + ": '" + k + "' expects loose or tight, got '" + v +
                                  "'");
            }
        };
        t["check.epsilon"] =
            num_in([](ScenarioConfig& s) -> double& { return s.sim.step.check.epsilon; });
        t["check.max_recorrections"] = [](ScenarioConfig& s, const Config& c,
                                          const std::string& k, const std::string& v) {
            s.sim.step.check.max_recorrections = static_cast<int>(to_integer(c, k, v));
        };

        t["run.t_end"] = num_in([](ScenarioConfig& s) -> double& { return s.sim.t_end; });
        t["run.fixed_step"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                                 const std::string& v) { s.sim.fixed_step = to_double(c, k, v); };
        t["run.seed"] = [](ScenarioConfig& s, const Config& c, const std::string& k,
                           const std::string& v) {
            const long seed = to_integer(c, k, v);
            if (seed < 0) {
                throw ConfigError(c.where(k) + ": '" + k + "' must be non-negative");
            }
            s.seed = static_cast<std::uint64_t>(seed);
        };
        t["output.dir"] = [](ScenarioConfig& s, const Config&, const std::string&,
                             const std::string& v) { s.output_dir = v; };
        return t;
    }();
    return table;
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
    if (name == "smib") {
        return ModelKind::Smib;
    }
    if (name == "multimachine") {
        return ModelKind::MultiMachine;
    }
    if (name == "scalar-linear") {
        return ModelKind::ScalarLinear;
    }
    if (name == "linear-ode") {
        return ModelKind::LinearOde;
    }
    throw ConfigError("unknown model '" + name +
                      "' (expected smib, multimachine, scalar-linear or linear-ode)");
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Smib:
            return "smib";
        case ModelKind::MultiMachine:
            return "multimachine";
        case ModelKind::ScalarLinear:
            return "scalar-linear";
        case ModelKind::LinearOde:
            return "linear-ode";
    }
    return "?";
}

void ScenarioConfig::validate() const {
    sim.step.controller.validate();
    sim.step.check.validate();
    sim.step.newton.validate();
    if (!(sim.t_end >= 0.0)) {
        throw ConfigError("run.t_end must be non-negative");
    }
    if (!(sim.h_init > 0.0)) {
        throw ConfigError("controller.h_init must be positive");
    }
    if (sim.fixed_step && !(*sim.fixed_step > 0.0)) {
        throw ConfigError("run.fixed_step must be positive");
    }
    if (sim.scheme.corrector.fixed_iterations < 0) {
        throw ConfigError("solver.corrector_iterations must be non-negative");
    }
    if (model == ModelKind::Smib && events && !(smib.fault_on < smib.fault_off)) {
        throw ConfigError("smib.fault_on must precede smib.fault_off");
    }
    if (model == ModelKind::MultiMachine && events &&
        !(trip.trip_time < trip.reconnect_time)) {
        throw ConfigError("trip.time must precede trip.reconnect");
    }
}

ScenarioConfig scenario_from_config(const Config& config) {
    ScenarioConfig s;
    const auto& table = setters();
    for (const auto& [key, entry] : config.entries()) {
        if (table.count(key) == 0) {
            throw ConfigError(config.where(key) + ": unknown key '" + key + "'");
        }
    }
    // std::map iterates check.epsilon before check.profile; apply the profile first.
    if (const auto it = config.entries().find("check.profile"); it != config.entries().end()) {
        table.at("check.profile")(s, config, it->first, it->second.value);
    }
    for (const auto& [key, entry] : config.entries()) {
        if (key != "check.profile") {
            table.at(key)(s, config, key, entry.value);
        }
    }
    s.validate();
    return s;
}

ModelInstance build_model(const ScenarioConfig& s) {
    switch (s.model) {
        case ModelKind::Smib: {
            SmibParams p = s.smib;
            p.with_fault = s.events;
            return build_smib(p);
        }
        case ModelKind::MultiMachine: {
            const std::string path = s.case_path.empty() ? bundled_three_machine_case()
                                                         : s.case_path;
            std::optional<LineTrip> trip;
            if (s.events) {
                trip = s.trip;
            }
            return build_multimachine(load_case_file(path), trip);
        }
        case ModelKind::ScalarLinear:
            return build_scalar_linear(s.lin_a, s.lin_b, s.lin_c, s.lin_x0);
        case ModelKind::LinearOde:
            return build_linear_ode(s.lin_a, s.lin_x0);
    }
    throw ConfigError("unknown model kind");
}

}  // namespace pcdae
