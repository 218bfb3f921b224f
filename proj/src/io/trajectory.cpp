#include "pcdae/io/trajectory.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pcdae/errors.hpp"

namespace pcdae {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    return out;
}

void check_written(std::ostream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
    for (std::size_t i = 0; i < trajectory.labels.size(); ++i) {
        out << (i ? "," : "") << trajectory.labels[i];
    }
    out << '\n';
    const std::size_t w = trajectory.width();
    for (std::size_t r = 0; r < trajectory.n_rows(); ++r) {
        for (std::size_t i = 0; i < w; ++i) {
            out << (i ? "," : "") << format_number(trajectory.at(r, i));
        }
        out << '\n';
    }
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
    auto out = open_output(path);
    write_trajectory_csv(trajectory, out);
    check_written(out, path);
}

Trajectory read_trajectory_csv(std::istream& in, const std::string& source) {
    Trajectory t;
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("'" + source + "' is empty");
    }
    {
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            t.labels.push_back(cell);
        }
    }
    if (t.labels.size() < Trajectory::kFirstVariable) {
        throw IoError("'" + source + "' lacks the time and step_size columns");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0') {
                throw IoError(source + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            row.push_back(v);
        }
        if (row.size() != t.labels.size()) {
            throw IoError(source + ":" + std::to_string(lineno) + ": row width differs from header");
        }
        t.append(row);
    }
    return t;
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_trajectory_csv(in, path);
}

void write_step_trace_csv(const RunMetrics& metrics, const std::string& path) {
    auto out = open_output(path);
    out << "t,h,accepted\n";
    for (const auto& r : metrics.step_records) {
        out << format_number(r.t) << ',' << format_number(r.h) << ',' << (r.accepted ? 1 : 0)
            << '\n';
    }
    check_written(out, path);
}

void write_metrics(const RunMetrics& m, std::ostream& out) {
    out << "nonlinear_calls = " << m.nonlinear_calls << '\n'
        << "accepted_steps = " << m.accepted_steps << '\n'
        << "rejected_steps = " << m.rejected_steps << '\n'
        << "recorrections = " << m.recorrections << '\n'
        << "diverged = " << (m.diverged ? "true" : "false") << '\n'
        << "diverged_reason = " << m.diverged_reason << '\n';
}

void write_metrics(const RunMetrics& metrics, const std::string& path) {
    auto out = open_output(path);
    write_metrics(metrics, out);
    check_written(out, path);
}

void Trajectory::append(const std::vector<double>& row) {
    if (row.size() != labels.size()) {
        throw std::invalid_argument("trajectory row width differs from the label count");
    }
    values.insert(values.end(), row.begin(), row.end());
}

bool RunMetrics::counters_consistent() const noexcept {
    return accepted_steps + rejected_steps == step_records.size() &&
           nonlinear_calls >= accepted_steps;
}

}  // namespace pcdae
