#include "gridnadir/sfr/simulate.hpp"

#include <cmath>
#include <string>

#include "gridnadir/common/num_format.hpp"

namespace gridnadir::sfr {

namespace {

// One RK4 step of x' = A x + B p with p held constant over the step.
void rk4_step(const Eigen::MatrixXd& A, const Eigen::VectorXd& B, double p, double dt,
              Eigen::VectorXd& x, Eigen::VectorXd& k1, Eigen::VectorXd& k2, Eigen::VectorXd& k3,
              Eigen::VectorXd& k4, Eigen::VectorXd& tmp) {
    const Eigen::VectorXd Bp = B * p;
    k1.noalias() = A * x;
    k1 += Bp;
    tmp = x + (0.5 * dt) * k1;
    k2.noalias() = A * tmp;
    k2 += Bp;
    tmp = x + (0.5 * dt) * k2;
    k3.noalias() = A * tmp;
    k3 += Bp;
    tmp = x + dt * k3;
    k4.noalias() = A * tmp;
    k4 += Bp;
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::size_t step_count(double dt, double horizon) {
    if (!(dt > 0.0)) throw DomainError("dt must be > 0");
    if (horizon < 0.0) throw DomainError("horizon must be >= 0");
    return static_cast<std::size_t>(std::llround(horizon / dt));
}

}  // namespace

FrequencyTrace simulate(const AreaDynamicModel& model, double initial_imbalance,
                        const EfcAction& efc, double dt, double horizon) {
    validate_efc(efc);
    if (horizon < std::max(efc.epc_delay, efc.dlc_delay))
        throw DomainError("horizon shorter than an EFC delay");

    const AreaStateSpace ss = make_state_space(model);
    const std::size_t n_steps = step_count(dt, horizon);
    const std::size_t dlc_at = delay_index(efc.dlc_delay, dt);
    const std::size_t epc_at = delay_index(efc.epc_delay, dt);

    FrequencyTrace trace;
    trace.dt = dt;
    trace.horizon = horizon;
    trace.samples.resize(n_steps + 1);
    trace.samples[0] = 0.0;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.A.rows());
    Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
    const double f0 = model.base_frequency;

    for (std::size_t i = 0; i < n_steps; ++i) {
        double p = initial_imbalance;
        if (i >= dlc_at) p += efc.dlc_power;
        if (i >= epc_at) p += efc.epc_power;
        rk4_step(ss.A, ss.B, p, dt, x, k1, k2, k3, k4, tmp);
        const double f_pu = x(0);
        if (!std::isfinite(f_pu))
            throw DomainError("integration produced a non-finite state at t = " +
                              format_double(static_cast<double>(i + 1) * dt) + " s");
        trace.samples[i + 1] = f_pu * f0;
    }
    return trace;
}

std::pair<double, double> nadir(const FrequencyTrace& trace) {
    if (trace.samples.empty()) throw DomainError("nadir of an empty trace");
    double best = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const double a = std::abs(trace.samples[i]);
        if (a > best) {
            best = a;
            at = i;
        }
    }
    return {best, trace.time_at(at)};
}

double quasi_steady_state(const AreaDynamicModel& model, double total_imbalance) {
    double gain = model.load_damping;
    for (const auto& u : model.thermal)
        if (u.committed) gain += u.p_max / u.droop;
    for (const auto& u : model.hydro) gain += u.p_max / u.perm_droop;
    for (const auto& u : model.storage) gain += u.p_max / u.droop;
    if (gain <= 0.0) throw DomainError("zero total DC gain: quasi-steady-state undefined");
    return total_imbalance / gain * model.base_frequency;
}

StepResponse unit_step_response(const AreaDynamicModel& model, double dt, double horizon) {
    const AreaStateSpace ss = make_state_space(model);
    const std::size_t n_steps = step_count(dt, horizon);

    StepResponse sr;
    sr.dt = dt;
    sr.base_frequency = model.base_frequency;
    sr.g.resize(static_cast<Eigen::Index>(n_steps + 1));
    sr.g(0) = 0.0;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.A.rows());
    Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
    for (std::size_t i = 0; i < n_steps; ++i) {
        rk4_step(ss.A, ss.B, 1.0, dt, x, k1, k2, k3, k4, tmp);
        if (!std::isfinite(x(0)))
            throw DomainError("integration produced a non-finite state at t = " +
                              format_double(static_cast<double>(i + 1) * dt) + " s");
        sr.g(static_cast<Eigen::Index>(i + 1)) = x(0);
    }
    return sr;
}

std::pair<double, std::size_t> StepResponse::superposed_nadir(double dp_d, double dp_dlc,
                                                              std::size_t dlc_shift, double dp_epc,
                                                              std::size_t epc_shift) const {
    const std::size_t n = static_cast<std::size_t>(g.size());
    double best = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = dp_d * g(static_cast<Eigen::Index>(i));
        if (i >= dlc_shift) v += dp_dlc * g(static_cast<Eigen::Index>(i - dlc_shift));
        if (i >= epc_shift) v += dp_epc * g(static_cast<Eigen::Index>(i - epc_shift));
        const double a = std::abs(v);
        if (a > best) {
            best = a;
            at = i;
        }
    }
    return {best * base_frequency, at};
}

}  // namespace gridnadir::sfr
