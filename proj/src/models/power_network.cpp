#include "pcdae/models/power_network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "pcdae/errors.hpp"

namespace pcdae {

using Complex = std::complex<double>;

void NetworkCase::validate() const {
    if (buses.empty()) {
        throw MalformedCase("case has no buses");
    }
    std::set<int> ids;
    int slack_count = 0;
    for (const auto& b : buses) {
        if (!ids.insert(b.id).second) {
            throw MalformedCase("duplicate bus id " + std::to_string(b.id));
        }
        if (b.type != BusType::PQ && !(b.v_spec > 0.0)) {
            throw MalformedCase("bus " + std::to_string(b.id) + " needs a positive voltage");
        }
        slack_count += b.type == BusType::Slack ? 1 : 0;
    }
    if (slack_count != 1) {
        throw MalformedCase("case must have exactly one slack bus");
    }
    auto known = [&](int id) { return ids.count(id) != 0; };
    for (const auto& br : branches) {
        if (!known(br.from) || !known(br.to) || br.from == br.to) {
            throw MalformedCase("branch " + std::to_string(br.from) + "-" + std::to_string(br.to) +
                                " references an unknown bus");
        }
        if (br.r == 0.0 && br.x == 0.0) {
            throw MalformedCase("branch " + std::to_string(br.from) + "-" + std::to_string(br.to) +
                                " has zero impedance");
        }
    }
    std::set<int> machine_buses;
    for (const auto& m : machines) {
        if (!known(m.bus)) {
            throw MalformedCase("machine at unknown bus " + std::to_string(m.bus));
        }
        if (!machine_buses.insert(m.bus).second) {
            throw MalformedCase("more than one machine at bus " + std::to_string(m.bus));
        }
        if (!(m.H > 0.0) || !(m.xd_prime > 0.0) || m.D < 0.0) {
            throw MalformedCase("machine at bus " + std::to_string(m.bus) +
                                " needs H > 0, x'd > 0, D >= 0");
        }
        const auto it = std::find_if(buses.begin(), buses.end(),
                                     [&](const Bus& b) { return b.id == m.bus; });
        if (it->type == BusType::PQ) {
            throw MalformedCase("machine at PQ bus " + std::to_string(m.bus));
        }
    }
    for (const auto& b : buses) {
        if (b.type == BusType::PV && machine_buses.count(b.id) == 0) {
            throw MalformedCase("PV bus " + std::to_string(b.id) + " has no machine");
        }
    }
    for (const auto& l : loads) {
        if (!known(l.bus)) {
            throw MalformedCase("load at unknown bus " + std::to_string(l.bus));
        }
    }
    if (!(frequency > 0.0) || !(v_threshold > 0.0)) {
        throw MalformedCase("frequency and load voltage threshold must be positive");
    }
}

namespace {

std::size_t index_of(const std::vector<Bus>& buses, int id) {
    for (std::size_t k = 0; k < buses.size(); ++k) {
        if (buses[k].id == id) {
            return k;
        }
    }
    throw MalformedCase("unknown bus id " + std::to_string(id));
}

Eigen::MatrixXcd build_ybus(const NetworkCase& c, const std::vector<Complex>& shunts) {
    const auto n = static_cast<Eigen::Index>(c.buses.size());
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& br : c.branches) {
        if (!br.in_service) {
            continue;
        }
        const auto i = static_cast<Eigen::Index>(index_of(c.buses, br.from));
        const auto j = static_cast<Eigen::Index>(index_of(c.buses, br.to));
        const Complex series = 1.0 / Complex(br.r, br.x);
        const Complex half_shunt(0.0, 0.5 * br.b);
        y(i, i) += series + half_shunt;
        y(j, j) += series + half_shunt;
        y(i, j) -= series;
        y(j, i) -= series;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        y(k, k) += shunts[static_cast<std::size_t>(k)];
    }
    return y;
}

// Load current and its derivatives with respect to (vr, vi).
struct LoadCurrent {
    double ir = 0.0;
    double ii = 0.0;
    double dir_dvr = 0.0;
    double dir_dvi = 0.0;
    double dii_dvr = 0.0;
    double dii_dvi = 0.0;
};

LoadCurrent load_current(double p, double q, double vr, double vi, double v_threshold) {
    LoadCurrent lc;
    if (p == 0.0 && q == 0.0) {
        return lc;
    }
    const double m2 = vr * vr + vi * vi;
    const double th2 = v_threshold * v_threshold;
    if (m2 < th2) {
        // I = (P - jQ) / Vth^2 * V
        const double gl = p / th2;
        const double bl = -q / th2;
        lc.ir = gl * vr - bl * vi;
        lc.ii = gl * vi + bl * vr;
        lc.dir_dvr = gl;
        lc.dir_dvi = -bl;
        lc.dii_dvr = bl;
        lc.dii_dvi = gl;
        return lc;
    }
    // I = conj(S / V) = (P - jQ) V / |V|^2
    const double nr = p * vr + q * vi;
    const double ni = p * vi - q * vr;
    lc.ir = nr / m2;
    lc.ii = ni / m2;
    const double m4 = m2 * m2;
    lc.dir_dvr = p / m2 - 2.0 * nr * vr / m4;
    lc.dir_dvi = q / m2 - 2.0 * nr * vi / m4;
    lc.dii_dvr = -q / m2 - 2.0 * ni * vr / m4;
    lc.dii_dvi = p / m2 - 2.0 * ni * vi / m4;
    return lc;
}

std::vector<std::string> split_key(std::string_view key) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = key.find('.', start);
        parts.emplace_back(key.substr(start, dot - start));
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return parts;
}

int parse_index(const std::string& s, std::string_view key) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("bad index in parameter key '" + std::string(key) + "'");
}

}  // namespace

PowerNetworkSystem::PowerNetworkSystem(NetworkCase network, std::vector<double> emf,
                                       std::vector<double> p_mech)
    : case_(std::move(network)),
      emf_(std::move(emf)),
      p_mech_(std::move(p_mech)),
      omega_s_(2.0 * std::numbers::pi * case_.frequency) {
    case_.validate();
    buses_ = case_.buses;
    machines_ = case_.machines;
    if (emf_.size() != machines_.size() || p_mech_.size() != machines_.size()) {
        throw MalformedCase("machine initialization data does not match the case");
    }
    const std::size_t nb = buses_.size();
    infinite_.assign(nb, false);
    fault_.assign(nb, Complex(0.0, 0.0));
    load_p_.assign(nb, 0.0);
    load_q_.assign(nb, 0.0);
    std::vector<bool> has_machine(nb, false);
    for (const auto& m : machines_) {
        const std::size_t k = index_of(buses_, m.bus);
        machine_bus_.push_back(k);
        has_machine[k] = true;
    }
    for (std::size_t k = 0; k < nb; ++k) {
        infinite_[k] = buses_[k].type == BusType::Slack && !has_machine[k];
    }
    for (const auto& l : case_.loads) {
        const std::size_t k = index_of(buses_, l.bus);
        load_p_[k] += l.p;
        load_q_[k] += l.q;
    }
    rebuild_admittance();
}

void PowerNetworkSystem::rebuild_admittance() { ybus_ = build_ybus(case_, fault_); }

std::size_t PowerNetworkSystem::bus_index(int bus_id) const { return index_of(buses_, bus_id); }

double PowerNetworkSystem::electrical_power(std::size_t i, const Vector& x,
                                            const Vector& y) const {
    const std::size_t k = machine_bus_.at(i);
    const double er = emf_[i] * std::cos(x[2 * i]);
    const double ei = emf_[i] * std::sin(x[2 * i]);
    return (ei * y[2 * k] - er * y[2 * k + 1]) / machines_[i].xd_prime;
}

Vector PowerNetworkSystem::f(double, const Vector& x, const Vector& y) const {
    Vector out(n_states());
    for (std::size_t i = 0; i < machines_.size(); ++i) {
        const auto& m = machines_[i];
        const double dw = x[2 * i + 1] - 1.0;
        out[2 * i] = omega_s_ * dw;
        out[2 * i + 1] = (p_mech_[i] - electrical_power(i, x, y) - m.D * dw) / (2.0 * m.H);
    }
    return out;
}

Vector PowerNetworkSystem::g(double, const Vector& x, const Vector& y) const {
    const auto nb = static_cast<Eigen::Index>(buses_.size());
    Vector out(n_algebraic());
    for (Eigen::Index k = 0; k < nb; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        if (infinite_[uk]) {
            const double th = buses_[uk].angle_deg * std::numbers::pi / 180.0;
            out[2 * k] = y[2 * k] - buses_[uk].v_spec * std::cos(th);
            out[2 * k + 1] = y[2 * k + 1] - buses_[uk].v_spec * std::sin(th);
            continue;
        }
        double re = 0.0;
        double im = 0.0;
        for (Eigen::Index j = 0; j < nb; ++j) {
            const double gkj = ybus_(k, j).real();
            const double bkj = ybus_(k, j).imag();
            re += gkj * y[2 * j] - bkj * y[2 * j + 1];
            im += gkj * y[2 * j + 1] + bkj * y[2 * j];
        }
        const LoadCurrent lc =
            load_current(load_p_[uk], load_q_[uk], y[2 * k], y[2 * k + 1], case_.v_threshold);
        out[2 * k] = re + lc.ir;
        out[2 * k + 1] = im + lc.ii;
    }
    for (std::size_t i = 0; i < machines_.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(machine_bus_[i]);
        if (infinite_[machine_bus_[i]]) {
            continue;
        }
        const double xd = machines_[i].xd_prime;
        const double er = emf_[i] * std::cos(x[2 * i]);
        const double ei = emf_[i] * std::sin(x[2 * i]);
        out[2 * k] += (y[2 * k + 1] - ei) / xd;
        out[2 * k + 1] += (er - y[2 * k]) / xd;
    }
    return out;
}

Matrix PowerNetworkSystem::jac_fx(double, const Vector& x, const Vector& y) const {
    const auto m = static_cast<Eigen::Index>(n_states());
    Matrix jac = Matrix::Zero(m, m);
    for (std::size_t i = 0; i < machines_.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(2 * i);
        const std::size_t k = machine_bus_[i];
        const auto& mc = machines_[i];
        const double er = emf_[i] * std::cos(x[2 * i]);
        const double ei = emf_[i] * std::sin(x[2 * i]);
        const double dpe_ddelta = (er * y[2 * k] + ei * y[2 * k + 1]) / mc.xd_prime;
        jac(r, r + 1) = omega_s_;
        jac(r + 1, r) = -dpe_ddelta / (2.0 * mc.H);
        jac(r + 1, r + 1) = -mc.D / (2.0 * mc.H);
    }
    return jac;
}

Matrix PowerNetworkSystem::jac_fy(double, const Vector& x, const Vector&) const {
    Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(n_states()),
                              static_cast<Eigen::Index>(n_algebraic()));
    for (std::size_t i = 0; i < machines_.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(2 * i + 1);
        const auto k = static_cast<Eigen::Index>(machine_bus_[i]);
        const auto& mc = machines_[i];
        const double er = emf_[i] * std::cos(x[2 * i]);
        const double ei = emf_[i] * std::sin(x[2 * i]);
        jac(r, 2 * k) = -ei / mc.xd_prime / (2.0 * mc.H);
        jac(r, 2 * k + 1) = er / mc.xd_prime / (2.0 * mc.H);
    }
    return jac;
}

Matrix PowerNetworkSystem::jac_gx(double, const Vector& x, const Vector&) const {
    Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(n_algebraic()),
                              static_cast<Eigen::Index>(n_states()));
    for (std::size_t i = 0; i < machines_.size(); ++i) {
        if (infinite_[machine_bus_[i]]) {
            continue;
        }
        const auto k = static_cast<Eigen::Index>(machine_bus_[i]);
        const auto c = static_cast<Eigen::Index>(2 * i);
        const double xd = machines_[i].xd_prime;
        jac(2 * k, c) = -emf_[i] * std::cos(x[2 * i]) / xd;
        jac(2 * k + 1, c) = -emf_[i] * std::sin(x[2 * i]) / xd;
    }
    return jac;
}

Matrix PowerNetworkSystem::jac_gy(double, const Vector&, const Vector& y) const {
    const auto nb = static_cast<Eigen::Index>(buses_.size());
    Matrix jac = Matrix::Zero(2 * nb, 2 * nb);
    for (Eigen::Index k = 0; k < nb; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        if (infinite_[uk]) {
            jac(2 * k, 2 * k) = 1.0;
            jac(2 * k + 1, 2 * k + 1) = 1.0;
            continue;
        }
        for (Eigen::Index j = 0; j < nb; ++j) {
            const double gkj = ybus_(k, j).real();
            const double bkj = ybus_(k, j).imag();
            jac(2 * k, 2 * j) = gkj;
            jac(2 * k, 2 * j + 1) = -bkj;
            jac(2 * k + 1, 2 * j) = bkj;
            jac(2 * k + 1, 2 * j + 1) = gkj;
        }
        const LoadCurrent lc =
            load_current(load_p_[uk], load_q_[uk], y[2 * k], y[2 * k + 1], case_.v_threshold);
        jac(2 * k, 2 * k) += lc.dir_dvr;
        jac(2 * k, 2 * k + 1) += lc.dir_dvi;
        jac(2 * k + 1, 2 * k) += lc.dii_dvr;
        jac(2 * k + 1, 2 * k + 1) += lc.dii_dvi;
    }
    for (std::size_t i = 0; i < machines_.size(); ++i) {
        if (infinite_[machine_bus_[i]]) {
            continue;
        }
        const auto k = static_cast<Eigen::Index>(machine_bus_[i]);
        const double xd = machines_[i].xd_prime;
        jac(2 * k, 2 * k + 1) += 1.0 / xd;
        jac(2 * k + 1, 2 * k) -= 1.0 / xd;
    }
    return jac;
}

std::vector<std::string> PowerNetworkSystem::variable_names() const {
    std::vector<std::string> names;
    for (const auto& m : machines_) {
        names.push_back("delta_" + std::to_string(m.bus));
        names.push_back("omega_" + std::to_string(m.bus));
    }
    for (const auto& b : buses_) {
        names.push_back("vr_" + std::to_string(b.id));
        names.push_back("vi_" + std::to_string(b.id));
    }
    return names;
}

void PowerNetworkSystem::set_parameter(std::string_view key, double value) {
    const auto parts = split_key(key);
    if (parts.size() == 3 && parts[0] == "fault" && (parts[2] == "g" || parts[2] == "b")) {
        const std::size_t k = index_of(buses_, parse_index(parts[1], key));
        if (parts[2] == "g") {
            fault_[k].real(value);
        } else {
            fault_[k].imag(value);
        }
        rebuild_admittance();
        return;
    }
    if (parts.size() == 3 && parts[0] == "branch" && parts[2] == "status") {
        const int idx = parse_index(parts[1], key);
        if (idx < 1 || static_cast<std::size_t>(idx) > case_.branches.size()) {
            throw ConfigError("branch index out of range in '" + std::string(key) + "'");
        }
        if (value != 0.0 && value != 1.0) {
            throw ConfigError("'" + std::string(key) + "' must be 0 or 1");
        }
        case_.branches[static_cast<std::size_t>(idx - 1)].in_service = value == 1.0;
        rebuild_admittance();
        return;
    }
    DaeSystem::set_parameter(key, value);
}

double PowerNetworkSystem::parameter(std::string_view key) const {
    const auto parts = split_key(key);
    if (parts.size() == 3 && parts[0] == "fault" && (parts[2] == "g" || parts[2] == "b")) {
        const std::size_t k = index_of(buses_, parse_index(parts[1], key));
        return parts[2] == "g" ? fault_[k].real() : fault_[k].imag();
    }
    if (parts.size() == 3 && parts[0] == "branch" && parts[2] == "status") {
        const int idx = parse_index(parts[1], key);
        if (idx < 1 || static_cast<std::size_t>(idx) > case_.branches.size()) {
            throw ConfigError("branch index out of range in '" + std::string(key) + "'");
        }
        return case_.branches[static_cast<std::size_t>(idx - 1)].in_service ? 1.0 : 0.0;
    }
    return DaeSystem::parameter(key);
}

std::unique_ptr<DaeSystem> PowerNetworkSystem::clone() const {
    return std::make_unique<PowerNetworkSystem>(*this);
}

PowerFlowSolution solve_power_flow(const NetworkCase& c) {
    c.validate();
    const std::size_t nb = c.buses.size();
    const Eigen::MatrixXcd ybus = build_ybus(c, std::vector<Complex>(nb, Complex(0.0, 0.0)));

    std::vector<double> p_spec(nb, 0.0);
    std::vector<double> q_spec(nb, 0.0);
    for (const auto& m : c.machines) {
        p_spec[index_of(c.buses, m.bus)] += m.p_gen;
    }
    for (const auto& l : c.loads) {
        p_spec[index_of(c.buses, l.bus)] -= l.p;
        q_spec[index_of(c.buses, l.bus)] -= l.q;
    }

    // Unknowns: (vr, vi) of every non-slack bus.
    std::vector<std::size_t> unknown_bus;
    std::vector<Complex> v(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        const Bus& b = c.buses[k];
        if (b.type == BusType::Slack) {
            v[k] = std::polar(b.v_spec, b.angle_deg * std::numbers::pi / 180.0);
        } else {
            v[k] = Complex(b.type == BusType::PV ? b.v_spec : 1.0, 0.0);
            unknown_bus.push_back(k);
        }
    }
    const auto nu = static_cast<Eigen::Index>(unknown_bus.size());

    auto voltages = [&](const Vector& z) {
        std::vector<Complex> vv = v;
        for (Eigen::Index u = 0; u < nu; ++u) {
            vv[unknown_bus[static_cast<std::size_t>(u)]] = Complex(z[2 * u], z[2 * u + 1]);
        }
        return vv;
    };
    auto residual = [&](const Vector& z) -> Vector {
        const auto vv = voltages(z);
        Eigen::VectorXcd vec(static_cast<Eigen::Index>(nb));
        for (std::size_t k = 0; k < nb; ++k) {
            vec[static_cast<Eigen::Index>(k)] = vv[k];
        }
        const Eigen::VectorXcd cur = ybus * vec;
        Vector r(2 * nu);
        for (Eigen::Index u = 0; u < nu; ++u) {
            const std::size_t k = unknown_bus[static_cast<std::size_t>(u)];
            const Complex s = vv[k] * std::conj(cur[static_cast<Eigen::Index>(k)]);
            r[2 * u] = s.real() - p_spec[k];
            if (c.buses[k].type == BusType::PV) {
                r[2 * u + 1] = std::norm(vv[k]) - c.buses[k].v_spec * c.buses[k].v_spec;
            } else {
                r[2 * u + 1] = s.imag() - q_spec[k];
            }
        }
        return r;
    };
    auto jacobian = [&](const Vector& z) -> Matrix {
        Matrix jac(2 * nu, 2 * nu);
        Vector work = z;
        for (Eigen::Index j = 0; j < 2 * nu; ++j) {
            const double e = 1e-7 * std::abs(z[j]) + 1e-7;
            work[j] = z[j] + e;
            const Vector plus = residual(work);
            work[j] = z[j] - e;
            const Vector minus = residual(work);
            work[j] = z[j];
            jac.col(j) = (plus - minus) / (2.0 * e);
        }
        return jac;
    };

    Vector z(2 * nu);
    for (Eigen::Index u = 0; u < nu; ++u) {
        const Complex vk = v[unknown_bus[static_cast<std::size_t>(u)]];
        z[2 * u] = vk.real();
        z[2 * u + 1] = vk.imag();
    }
    NewtonConfig cfg;
    cfg.tol_residual = 1e-12;
    cfg.tol_step = 1e-14;
    cfg.max_iter = 50;
    PowerFlowSolution sol;
    try {
        const auto res = newton_solve(residual, jacobian, z, cfg);
        sol.iterations = res.report.iterations;
        sol.voltages = voltages(res.solution);
    } catch (const Error& e) {
        throw InitializationFailure(std::string("power flow did not converge: ") + e.what());
    }

    Eigen::VectorXcd vec(static_cast<Eigen::Index>(nb));
    for (std::size_t k = 0; k < nb; ++k) {
        vec[static_cast<Eigen::Index>(k)] = sol.voltages[k];
    }
    const Eigen::VectorXcd cur = ybus * vec;
    for (const auto& m : c.machines) {
        const std::size_t k = index_of(c.buses, m.bus);
        Complex s_load(0.0, 0.0);
        for (const auto& l : c.loads) {
            if (l.bus == m.bus) {
                s_load += Complex(l.p, l.q);
            }
        }
        sol.generation.push_back(sol.voltages[k] * std::conj(cur[static_cast<Eigen::Index>(k)]) +
                                 s_load);
    }
    return sol;
}

ModelInstance build_network_model(const NetworkCase& c) {
    const PowerFlowSolution pf = solve_power_flow(c);
    for (std::size_t k = 0; k < c.buses.size(); ++k) {
        bool loaded = false;
        for (const auto& l : c.loads) {
            loaded = loaded || (l.bus == c.buses[k].id && (l.p != 0.0 || l.q != 0.0));
        }
        if (loaded && std::abs(pf.voltages[k]) < c.v_threshold) {
            throw InitializationFailure("load bus " + std::to_string(c.buses[k].id) +
                                        " below the constant-power voltage threshold");
        }
    }

    const std::size_t nm = c.machines.size();
    std::vector<double> emf(nm);
    std::vector<double> pm(nm);
    Vector x0(static_cast<Eigen::Index>(2 * nm));
    for (std::size_t i = 0; i < nm; ++i) {
        const std::size_t k = index_of(c.buses, c.machines[i].bus);
        const Complex v = pf.voltages[k];
        const Complex current = std::conj(pf.generation[i] / v);
        const Complex e = v + Complex(0.0, c.machines[i].xd_prime) * current;
        emf[i] = std::abs(e);
        pm[i] = (e * std::conj(current)).real();
        x0[static_cast<Eigen::Index>(2 * i)] = std::arg(e);
        x0[static_cast<Eigen::Index>(2 * i + 1)] = 1.0;
    }

    auto sys = std::make_unique<PowerNetworkSystem>(c, emf, pm);
    Vector y_flat(static_cast<Eigen::Index>(2 * c.buses.size()));
    for (std::size_t k = 0; k < c.buses.size(); ++k) {
        y_flat[static_cast<Eigen::Index>(2 * k)] = pf.voltages[k].real();
        y_flat[static_cast<Eigen::Index>(2 * k + 1)] = pf.voltages[k].imag();
    }
    NewtonConfig cfg;
    cfg.tol_residual = 1e-12;
    cfg.tol_step = 1e-15;
    ModelInstance m;
    try {
        m.initial = consistent_initialize(*sys, 0.0, x0, y_flat, cfg);
    } catch (const Error& e) {
        throw InitializationFailure(std::string("network initialization failed: ") + e.what());
    }
    m.system = std::move(sys);
    return m;
}

NetworkCase smib_case(const SmibParams& p) {
    NetworkCase c;
    c.buses = {{1, BusType::PV, p.v1, 0.0}, {2, BusType::Slack, p.v2, 0.0}, {3, BusType::PQ, 1.0, 0.0}};
    c.branches = {{1, 2, 0.0, p.x12, 0.0, true},
                  {1, 3, 0.0, p.x13, 0.0, true},
                  {2, 3, 0.0, p.x23, 0.0, true}};
    c.machines = {{1, p.H, p.D, p.xd_prime, p.p_gen}};
    c.loads = {{3, p.p_load, p.q_load}};
    return c;
}

ModelInstance build_smib(const SmibParams& p) {
    if (!(p.H > 0.0) || !(p.xd_prime > 0.0) || !(p.x12 > 0.0) || !(p.x13 > 0.0) ||
        !(p.x23 > 0.0)) {
        throw ConfigError("SMIB parameters must satisfy H > 0 and positive reactances");
    }
    ModelInstance m = build_network_model(smib_case(p));
    if (p.with_fault) {
        if (!(p.fault_off > p.fault_on) || p.fault_on < 0.0) {
            throw ConfigError("SMIB fault must clear after it is applied");
        }
        m.system->set_events({
            {p.fault_on, "fault on bus 3", {{"fault.3.g", p.fault_admittance}}},
            {p.fault_off, "fault cleared", {{"fault.3.g", 0.0}}},
        });
    }
    return m;
}

ModelInstance build_multimachine(const NetworkCase& c, const std::optional<LineTrip>& trip) {
    ModelInstance m = build_network_model(c);
    if (trip) {
        if (trip->branch < 1 || static_cast<std::size_t>(trip->branch) > c.branches.size()) {
            throw ConfigError("line trip references branch " + std::to_string(trip->branch) +
                              " which is not in the case");
        }
        if (!(trip->reconnect_time > trip->trip_time)) {
            throw ConfigError("line reconnect must follow the trip");
        }
        const std::string key = "branch." + std::to_string(trip->branch) + ".status";
        m.system->set_events({
            {trip->trip_time, "trip branch " + std::to_string(trip->branch), {{key, 0.0}}},
            {trip->reconnect_time, "reconnect branch " + std::to_string(trip->branch),
             {{key, 1.0}}},
        });
    }
    return m;
}

std::string bundled_three_machine_case() {
    return std::string(PCDAE_DATA_DIR) + "/three_machine_nine_bus.case";
}

}  // namespace pcdae
