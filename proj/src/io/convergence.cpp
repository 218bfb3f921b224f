#include "pcdae/io/convergence.hpp"

#include <cmath>
#include <sstream>

#include "pcdae/errors.hpp"

namespace pcdae {

namespace {

std::string describe_h(double h) {
    std::ostringstream os;
    os << "h = " << h;
    return os.str();
}

Vector reference_state(const ModelInstance& model, const ConvergenceSpec& spec) {
    if (model.analytic) {
        return model.analytic(spec.t_end).first;
    }
    SimulationOptions opts;
    opts.scheme.kind = SchemeKind::SimultaneousItm;
    opts.step = spec.settings;
    opts.step.fixed_step = false;
    opts.step.controller.rtol = 1e-10;
    opts.step.controller.atol = 1e-12;
    opts.t_end = spec.t_end;
    const SimulationResult ref = simulate(*model.system, model.initial, opts);
    if (ref.metrics.diverged) {
        throw Error("reference run failed: " + ref.metrics.diverged_reason);
    }
    return ref.final_state.x;
}

double state_error(const ModelInstance& model, const ConvergenceSpec& spec, const Vector& x_ref,
                   double h) {
    SimulationOptions opts;
    opts.scheme = spec.scheme;
    opts.step = spec.settings;
    opts.t_end = spec.t_end;
    opts.fixed_step = h;
    const SimulationResult run = simulate(*model.system, model.initial, opts);
    if (run.metrics.diverged) {
        throw Error(describe_h(h) + ": " + run.metrics.diverged_reason);
    }
    return inf_norm(run.final_state.x - x_ref);
}

double estimate_error(const ModelInstance& model, const ConvergenceSpec& spec, double h) {
    if (!model.analytic) {
        throw ConfigError("the algebraic estimate study needs a closed-form solution");
    }
    const double t = spec.t_end;
    AlgebraicHistory history(model.analytic(t - 2.0 * h).second);
    history.push_accepted(model.analytic(t - h).second, h);
    Vector est;
    switch (spec.scheme.kind) {
        case SchemeKind::PartitionedHold:
            est = estimate_hold(history);
            break;
        case SchemeKind::PartitionedPredict:
            est = estimate_extrapolate(history, h);
            break;
        case SchemeKind::SimultaneousItm:
            throw ConfigError("the simultaneous scheme has no algebraic estimate");
    }
    return inf_norm(est - model.analytic(t).second);
}

}  // namespace

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ConfigError("fit_line needs at least two paired samples");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw ConfigError("fit_line needs two distinct abscissae");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size()) {
        throw ConfigError("fit_loglog_slope: size mismatch");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0) || !(err[i] > 0.0)) {
            throw ConfigError("fit_loglog_slope: entries must be positive");
        }
        lx.push_back(std::log(h[i]));
        ly.push_back(std::log(err[i]));
    }
    return fit_line(lx, ly).slope;
}

ConvergenceResult convergence_study(const ModelInstance& model, const ConvergenceSpec& spec) {
    if (spec.steps.size() < 3) {
        throw ConfigError("a convergence study needs at least three step sizes");
    }
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        if (!(spec.steps[i] > 0.0) || (i > 0 && !(spec.steps[i] < spec.steps[i - 1]))) {
            throw ConfigError("step sizes must be positive and strictly decreasing");
        }
    }
    ConvergenceResult out;
    std::vector<double> hs;
    std::vector<double> errs;
    if (spec.quantity == StudyQuantity::FinalState) {
        const Vector x_ref = reference_state(model, spec);
        for (double h : spec.steps) {
            out.points.push_back({h, state_error(model, spec, x_ref, h)});
        }
    } else {
        for (double h : spec.steps) {
            out.points.push_back({h, estimate_error(model, spec, h)});
        }
    }
    for (const auto& p : out.points) {
        hs.push_back(p.h);
        errs.push_back(p.error);
    }
    out.slope = fit_loglog_slope(hs, errs);
    return out;
}

}  // namespace pcdae
