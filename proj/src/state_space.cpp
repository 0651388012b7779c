#include "gridnadir/sfr/state_space.hpp"

#include <cmath>

namespace gridnadir::sfr {

Eigen::VectorXd poly_mul(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(p.size() + q.size() - 1);
    for (Eigen::Index i = 0; i < p.size(); ++i)
        for (Eigen::Index j = 0; j < q.size(); ++j) r(i + j) += p(i) * q(j);
    return r;
}

void TransferFunction::normalize() {
    const double lead = den(den.size() - 1);
    den /= lead;
    num /= lead;
}

namespace {
Eigen::VectorXd first_order(double tc) {
    Eigen::VectorXd p(2);
    p << 1.0, tc;
    return p;
}
}  // namespace

TransferFunction thermal_tf(const ThermalUnitDyn& u) {
    // (1 + F_H T_R s) / (R (1+T_G s)(1+T_C s)(1+T_R s)), scaled to MW/p.u.
    const double gain = u.p_max / u.droop;
    TransferFunction tf;
    tf.num = Eigen::VectorXd(2);
    tf.num << gain, gain * u.hp_fraction * u.reheat_tc;
    tf.den = poly_mul(poly_mul(first_order(u.gov_tc), first_order(u.chest_tc)),
                      first_order(u.reheat_tc));
    tf.normalize();
    return tf;
}

TransferFunction hydro_tf(const HydroUnitDyn& u) {
    // (T_R s + 1)(1 - T_W s) / (R_P (1+T_G s)((R_T/R_P) T_R s + 1)(1 + T_W/2 s))
    const double gain = u.p_max / u.perm_droop;
    Eigen::VectorXd lead(2), hammer(2);
    lead << 1.0, u.reset_tc;
    hammer << 1.0, -u.water_tc;  // non-minimum-phase zero
    TransferFunction tf;
    tf.num = gain * poly_mul(lead, hammer);
    tf.den = poly_mul(poly_mul(first_order(u.gov_tc),
                               first_order(u.temp_droop / u.perm_droop * u.reset_tc)),
                      first_order(u.water_tc / 2.0));
    tf.normalize();
    return tf;
}

TransferFunction storage_tf(const StorageUnitDyn& u) {
    TransferFunction tf;
    tf.num = Eigen::VectorXd::Constant(1, u.p_max / u.droop);
    tf.den = first_order(u.delay_tc);
    tf.normalize();
    return tf;
}

AreaStateSpace make_state_space(const AreaDynamicModel& model) {
    std::vector<TransferFunction> blocks;
    blocks.reserve(model.thermal.size() + model.hydro.size() + model.storage.size());
    for (const auto& u : model.thermal)
        if (u.committed) blocks.push_back(thermal_tf(u));
    for (const auto& u : model.hydro) blocks.push_back(hydro_tf(u));
    for (const auto& u : model.storage) blocks.push_back(storage_tf(u));

    int n = 1;
    for (const auto& tf : blocks) n += tf.order();

    AreaStateSpace ss;
    ss.inertia_mws = total_inertia_mws(model);
    if (ss.inertia_mws <= 0.0)
        throw DomainError("zero total inertia: swing equation is degenerate");

    ss.A = Eigen::MatrixXd::Zero(n, n);
    ss.B = Eigen::VectorXd::Zero(n);
    const double inv2h = 1.0 / ss.inertia_mws;

    ss.A(0, 0) = -model.load_damping * inv2h;
    ss.B(0) = inv2h;

    int offset = 1;
    for (const auto& tf : blocks) {
        const int k = tf.order();
        // controllable canonical form: companion block, input = delta_f (state 0)
        for (int i = 0; i + 1 < k; ++i) ss.A(offset + i, offset + i + 1) = 1.0;
        for (int i = 0; i < k; ++i) ss.A(offset + k - 1, offset + i) = -tf.den(i);
        ss.A(offset + k - 1, 0) = 1.0;
        // block output C x feeds back into the swing equation
        for (int i = 0; i < tf.num.size(); ++i) ss.A(0, offset + i) -= tf.num(i) * inv2h;
        offset += k;
    }
    return ss;
}

}  // namespace gridnadir::sfr
