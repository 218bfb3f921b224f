#pragma once

#include <complex>
#include <istream>
#include <string>
#include <vector>

#include "pcdae/models/model.hpp"

namespace pcdae {

enum class BusType { Slack, PV, PQ };

struct Bus {
    int id = 0;
    BusType type = BusType::PQ;
    double v_spec = 1.0;       ///< pu; used by slack and PV buses
    double angle_deg = 0.0;    ///< slack angle
};

struct Branch {
    int from = 0;
    int to = 0;
    double r = 0.0;
    double x = 0.0;
    double b = 0.0;  ///< total line charging
    bool in_service = true;
};

/// Classical machine: constant EMF behind transient reactance.
struct Machine {
    int bus = 0;
    double H = 0.0;
    double D = 0.0;
    double xd_prime = 0.0;
    double p_gen = 0.0;  ///< dispatch for PV buses; recomputed at the slack
};

/// Constant-power load; below v_threshold it continues as the constant
/// impedance that draws the same power at the threshold.
struct Load {
    int bus = 0;
    double p = 0.0;
    double q = 0.0;
};

struct NetworkCase {
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Machine> machines;
    std::vector<Load> loads;
    double frequency = 60.0;
    double v_threshold = 0.4;

    /// Throws MalformedCase on dangling references or non-physical data.
    void validate() const;
};

/// Result of the network power flow used for initialization.
struct PowerFlowSolution {
    std::vector<std::complex<double>> voltages;  ///< in case bus order
    std::vector<std::complex<double>> generation;  ///< per machine
    int iterations = 0;
};

/// Newton power flow in rectangular coordinates. Throws InitializationFailure.
[[nodiscard]] PowerFlowSolution solve_power_flow(const NetworkCase& c);

/// Multi-machine classical-model network in rectangular voltage coordinates.
///
/// States: (delta, omega) per machine. Algebraic: (v_re, v_im) per bus.
/// Slack buses without a machine are infinite buses and pin their voltage;
/// every other bus contributes a complex current balance
///   sum_j Y_kj V_j + Y_fault,k V_k + I_load,k - I_gen,k = 0.
///
/// Event keys: fault.<bus>.g, fault.<bus>.b (shunt admittance) and
/// branch.<k>.status (1-based case order, 0 or 1).
class PowerNetworkSystem final : public DaeSystem {
public:
    PowerNetworkSystem(NetworkCase network, std::vector<double> emf, std::vector<double> p_mech);

    [[nodiscard]] std::size_t n_states() const override { return 2 * machines_.size(); }
    [[nodiscard]] std::size_t n_algebraic() const override { return 2 * buses_.size(); }

    [[nodiscard]] Vector f(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Vector g(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_fx(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_fy(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_gx(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_gy(double t, const Vector& x, const Vector& y) const override;

    [[nodiscard]] std::vector<std::string> variable_names() const override;
    void set_parameter(std::string_view key, double value) override;
    [[nodiscard]] double parameter(std::string_view key) const override;
    [[nodiscard]] std::unique_ptr<DaeSystem> clone() const override;

    /// Bus admittance matrix including in-service branches and fault shunts.
    [[nodiscard]] const Eigen::MatrixXcd& admittance() const noexcept { return ybus_; }
    [[nodiscard]] const NetworkCase& network() const noexcept { return case_; }
    [[nodiscard]] double p_mech(std::size_t machine) const { return p_mech_.at(machine); }
    [[nodiscard]] double emf(std::size_t machine) const { return emf_.at(machine); }

    /// Air-gap power of machine i.
    [[nodiscard]] double electrical_power(std::size_t machine, const Vector& x,
                                          const Vector& y) const;

    [[nodiscard]] std::size_t bus_index(int bus_id) const;

private:
    void rebuild_admittance();

    NetworkCase case_;
    std::vector<Bus> buses_;
    std::vector<Machine> machines_;
    std::vector<double> emf_;
    std::vector<double> p_mech_;
    std::vector<std::size_t> machine_bus_;       // machine -> bus index
    std::vector<bool> infinite_;                 // per bus
    std::vector<std::complex<double>> fault_;    // per bus shunt
    std::vector<double> load_p_;                 // per bus aggregated
    std::vector<double> load_q_;
    Eigen::MatrixXcd ybus_;
    double omega_s_;
};

/// Power flow + machine initialization. The returned state satisfies
/// f = 0 and g = 0.
[[nodiscard]] ModelInstance build_network_model(const NetworkCase& c);

/// Parses the line-oriented case format (sections [bus], [branch],
/// [machine], [load]). `source` names the input in error messages.
[[nodiscard]] NetworkCase parse_case(std::istream& in, const std::string& source);
[[nodiscard]] NetworkCase load_case_file(const std::string& path);

/// Parameters of the single-machine infinite-bus test system.
///
/// Bus 1 carries the machine (PV, |V| = v1), bus 2 is the infinite bus and
/// bus 3 a PQ load. Defaults give an undamped machine that swings after the
/// bus-3 fault.
struct SmibParams {
    double H = 3.0;
    double D = 0.0;
    double xd_prime = 0.3;
    double v1 = 1.0;
    double v2 = 1.0;
    double x12 = 0.5;
    double x13 = 0.3;
    double x23 = 0.2;
    double p_load = 0.8;
    double q_load = 0.2;
    double p_gen = 0.9;
    double fault_admittance = 1e4;
    double fault_on = 0.5;
    double fault_off = 0.6;
    bool with_fault = true;
};

[[nodiscard]] NetworkCase smib_case(const SmibParams& p);
[[nodiscard]] ModelInstance build_smib(const SmibParams& p = {});

struct LineTrip {
    int branch = 4;  // line 5-7 in the bundled case
    double trip_time = 0.5;
    double reconnect_time = 0.6;
};

/// Builds a multi-machine model and schedules the trip/reconnect pair.
[[nodiscard]] ModelInstance build_multimachine(const NetworkCase& c,
                                               const std::optional<LineTrip>& trip);

/// Path of the bundled three-machine nine-bus case.
[[nodiscard]] std::string bundled_three_machine_case();

}  // namespace pcdae
