#include "gridnadir/wodt/objective.hpp"

#include <cmath>

namespace gridnadir::wodt {

namespace {

constexpr double kTiny = 1e-300;
const double kInvLn2 = 1.0 / std::log(2.0);

inline double log2_safe(double v) { return std::log(std::max(v, kTiny)) * kInvLn2; }

// W log2 W - sum_k W^k log2 W^k for one side; zero mass contributes zero
inline double side_term(double w_total, double w0, double w1) {
    double t = w_total > 0.0 ? w_total * log2_safe(w_total) : 0.0;
    if (w0 > 0.0) t -= w0 * log2_safe(w0);
    if (w1 > 0.0) t -= w1 * log2_safe(w1);
    return t;
}

inline Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& z) {
    // numerically stable piecewise form
    return (z >= 0.0).select(1.0 / (1.0 + (-z).exp()), z.exp() / (1.0 + z.exp()));
}

}  // namespace

SplitObjective split_objective(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                               const Vector7d& a) {
    const Eigen::Index n = X.rows();
    Eigen::ArrayXd z = (X * a.head<6>()).array() + a(6);
    Eigen::ArrayXd w = sigmoid(z);

    const Eigen::ArrayXd cls = y.cast<double>().array();  // 1 for insecure rows
    const double w_r1 = (w * cls).sum();
    const double w_r = w.sum();
    const double w_r0 = w_r - w_r1;
    const double n1 = cls.sum();
    const double w_l1 = n1 - w_r1;
    const double w_l = static_cast<double>(n) - w_r;
    const double w_l0 = w_l - w_l1;

    SplitObjective out;
    out.value = side_term(w_l, w_l0, w_l1) + side_term(w_r, w_r0, w_r1);

    // dE/dw_i = log2(W_R / W_R^{c_i}) - log2(W_L / W_L^{c_i})
    const double d0 = log2_safe(w_r) - log2_safe(w_r0) - log2_safe(w_l) + log2_safe(w_l0);
    const double d1 = log2_safe(w_r) - log2_safe(w_r1) - log2_safe(w_l) + log2_safe(w_l1);
    Eigen::ArrayXd chain = (cls * d1 + (1.0 - cls) * d0) * w * (1.0 - w);
    out.gradient.head<6>() = X.transpose() * chain.matrix();
    out.gradient(6) = chain.sum();
    return out;
}

double split_objective_value(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                             const Vector7d& a) {
    const Eigen::Index n = X.rows();
    Eigen::ArrayXd z = (X * a.head<6>()).array() + a(6);
    Eigen::ArrayXd w = sigmoid(z);
    const Eigen::ArrayXd cls = y.cast<double>().array();
    const double w_r1 = (w * cls).sum();
    const double w_r = w.sum();
    const double w_l1 = cls.sum() - w_r1;
    const double w_l = static_cast<double>(n) - w_r;
    return side_term(w_l, w_l - w_l1, w_l1) + side_term(w_r, w_r - w_r1, w_r1);
}

}  // namespace gridnadir::wodt
