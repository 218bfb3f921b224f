#include "pcdae/io/compare.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pcdae/errors.hpp"

namespace pcdae {

namespace {

// Candidate value of column `col` at reference time t, where t is the
// occurrence-th row carrying that time in the reference.
double sample(const Trajectory& c, std::size_t col, double t, std::size_t occurrence) {
    const std::size_t n = c.n_rows();
    std::size_t lo = 0;
    std::size_t hi = n;
    while (lo < hi) {  // first row with time >= t
        const std::size_t mid = lo + (hi - lo) / 2;
        if (c.time(mid) < t) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    std::size_t end = lo;
    while (end < n && c.time(end) == t) {
        ++end;
    }
    if (end > lo) {
        return c.at(lo + std::min(occurrence, end - lo - 1), col);
    }
    if (lo == 0) {
        return c.at(0, col);
    }
    if (lo == n) {
        return c.at(n - 1, col);
    }
    const double ta = c.time(lo - 1);
    const double tb = c.time(lo);
    const double w = (t - ta) / (tb - ta);
    const double va = c.at(lo - 1, col);
    return va + w * (c.at(lo, col) - va);
}

}  // namespace

ComparisonReport compare_trajectories(const Trajectory& reference, const Trajectory& candidate) {
    if (reference.empty() || candidate.empty()) {
        throw VariableMismatch("cannot compare an empty trajectory");
    }
    std::map<std::string, std::size_t> cand_cols;
    for (std::size_t j = Trajectory::kFirstVariable; j < candidate.labels.size(); ++j) {
        cand_cols[candidate.labels[j]] = j;
    }
    if (cand_cols.size() != reference.n_variables()) {
        throw VariableMismatch("trajectories carry different numbers of variables");
    }
    std::vector<std::size_t> mapping;
    for (std::size_t j = Trajectory::kFirstVariable; j < reference.labels.size(); ++j) {
        const auto it = cand_cols.find(reference.labels[j]);
        if (it == cand_cols.end()) {
            throw VariableMismatch("candidate lacks variable '" + reference.labels[j] + "'");
        }
        mapping.push_back(it->second);
    }

    ComparisonReport rep;
    const std::size_t nv = mapping.size();
    rep.variables.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        rep.variables[v].name = reference.labels[Trajectory::kFirstVariable + v];
    }
    auto for_each_row = [&](auto&& visit) {
        std::size_t occurrence = 0;
        for (std::size_t i = 0; i < reference.n_rows(); ++i) {
            const double t = reference.time(i);
            occurrence = (i > 0 && reference.time(i - 1) == t) ? occurrence + 1 : 0;
            visit(i, t, occurrence);
        }
    };
    auto diff = [&](std::size_t i, std::size_t v, double t, std::size_t occurrence) {
        const double ref = reference.at(i, Trajectory::kFirstVariable + v);
        return std::abs(sample(candidate, mapping[v], t, occurrence) - ref);
    };

    rep.times.reserve(reference.n_rows());
    for_each_row([&](std::size_t i, double t, std::size_t occurrence) {
        rep.times.push_back(t);
        for (std::size_t v = 0; v < nv; ++v) {
            const double d = diff(i, v, t, occurrence);
            rep.variables[v].l2 += d * d;
            rep.variables[v].linf = std::max(rep.variables[v].linf, d);
        }
    });
    for (std::size_t v = 0; v < nv; ++v) {
        rep.variables[v].l2 = std::sqrt(rep.variables[v].l2);
        rep.max_abs = std::max(rep.max_abs, rep.variables[v].linf);
        if (rep.variables[v].l2 > rep.variables[rep.worst].l2 ||
            std::isnan(rep.variables[v].l2)) {
            rep.worst = v;
        }
    }
    if (nv > 0) {
        rep.worst_series.reserve(reference.n_rows());
        for_each_row([&](std::size_t i, double t, std::size_t occurrence) {
            rep.worst_series.push_back(diff(i, rep.worst, t, occurrence));
        });
    }
    return rep;
}

}  // namespace pcdae
