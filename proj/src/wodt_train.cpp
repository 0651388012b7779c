#include "gridnadir/wodt/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gridnadir/common/parallel.hpp"
#include "gridnadir/common/rng.hpp"
#include "gridnadir/wodt/objective.hpp"

namespace gridnadir::wodt {

Standardization standardize(const dataset::Dataset& ds) {
    if (ds.rows.size() < 2) throw DomainError("standardization needs at least 2 rows");
    Standardization st;
    const double n = static_cast<double>(ds.rows.size());
    for (const auto& r : ds.rows) st.mean += r.features.x;
    st.mean /= n;
    Vector6d var = Vector6d::Zero();
    for (const auto& r : ds.rows) var += (r.features.x - st.mean).cwiseAbs2();
    var /= n;
    for (int i = 0; i < 6; ++i) st.stddev(i) = var(i) > 0.0 ? std::sqrt(var(i)) : 1.0;
    return st;
}

void to_matrix(const dataset::Dataset& ds, const Standardization& stats, Eigen::MatrixXd& X,
               Eigen::VectorXi& y) {
    const Eigen::Index n = static_cast<Eigen::Index>(ds.rows.size());
    X.resize(n, 6);
    y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X.row(i) = stats.apply(ds.rows[static_cast<std::size_t>(i)].features.x).transpose();
        y(i) = static_cast<int>(ds.rows[static_cast<std::size_t>(i)].label);
    }
}

namespace {

// --- quasi-Newton descent -------------------------------------------------

struct BfgsOutcome {
    Vector7d a;
    double value = 0.0;
    bool descended = false;
};

BfgsOutcome bfgs_minimize(const Eigen::MatrixXd& X, const Eigen::VectorXi& y, Vector7d a,
                          const TrainConfig& cfg) {
    using Matrix7d = Eigen::Matrix<double, 7, 7>;
    Matrix7d h_inv = Matrix7d::Identity();

    SplitObjective cur = split_objective(X, y, a);
    BfgsOutcome out{a, cur.value, false};

    for (int iter = 0; iter < cfg.bfgs_max_iter; ++iter) {
        if (cur.gradient.norm() < cfg.grad_tol) break;
        Vector7d dir = -(h_inv * cur.gradient);
        double slope = dir.dot(cur.gradient);
        if (slope >= 0.0) {  // reset a non-descent direction
            h_inv = Matrix7d::Identity();
            dir = -cur.gradient;
            slope = dir.dot(cur.gradient);
        }

        // Armijo backtracking
        double step = 1.0;
        bool accepted = false;
        double next_value = 0.0;
        for (int bt = 0; bt < 40; ++bt) {
            next_value = split_objective_value(X, y, a + step * dir);
            if (next_value <= cur.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        const Vector7d a_next = a + step * dir;
        SplitObjective next = split_objective(X, y, a_next);
        const Vector7d s = a_next - a;
        const Vector7d yk = next.gradient - cur.gradient;
        const double sy = s.dot(yk);
        if (sy > 1e-12) {
            const double rho = 1.0 / sy;
            const Matrix7d eye = Matrix7d::Identity();
            h_inv = (eye - rho * s * yk.transpose()) * h_inv * (eye - rho * yk * s.transpose()) +
                    rho * s * s.transpose();
        }
        a = a_next;
        cur = next;
        out.descended = true;
        if (cur.value < out.value) {
            out.value = cur.value;
            out.a = a;
        }
        if (s.norm() < 1e-12) break;
    }
    return out;
}

// --- split starts -----------------------------------------------------------

double hard_entropy(double n0, double n1) {
    const double n = n0 + n1;
    if (n <= 0.0) return 0.0;
    double e = 0.0;
    if (n0 > 0.0) e -= n0 / n * std::log2(n0 / n);
    if (n1 > 0.0) e -= n1 / n * std::log2(n1 / n);
    return e;
}

}  // namespace

AxisSplit best_axis_split(const Eigen::MatrixXd& X, const Eigen::VectorXi& y) {
    const Eigen::Index n = X.rows();
    AxisSplit best;
    best.entropy = std::numeric_limits<double>::infinity();
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int f = 0; f < 6; ++f) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int i, int j) { return X(i, f) < X(j, f); });
        double left0 = 0, left1 = 0;
        double total1 = y.cast<double>().sum();
        double total0 = static_cast<double>(n) - total1;
        for (Eigen::Index k = 0; k + 1 < n; ++k) {
            const int i = order[static_cast<std::size_t>(k)];
            if (y(i) == 1) ++left1; else ++left0;
            const double xa = X(i, f);
            const double xb = X(order[static_cast<std::size_t>(k + 1)], f);
            if (xb <= xa) continue;  // no boundary between equal values
            const double nl = left0 + left1, nr = static_cast<double>(n) - nl;
            const double e =
                nl * hard_entropy(left0, left1) + nr * hard_entropy(total0 - left0, total1 - left1);
            if (e < best.entropy) {
                best.entropy = e;
                best.feature = f;
                best.threshold = 0.5 * (xa + xb);
            }
        }
    }
    return best;
}

namespace {

/// A few IRLS steps toward the logistic-regression separator.
Vector7d logistic_direction(const Eigen::MatrixXd& X, const Eigen::VectorXi& y) {
    using Matrix7d = Eigen::Matrix<double, 7, 7>;
    const Eigen::Index n = X.rows();
    Vector7d beta = Vector7d::Zero();
    for (int iter = 0; iter < 15; ++iter) {
        Eigen::ArrayXd z = (X * beta.head<6>()).array() + beta(6);
        Eigen::ArrayXd p = (z >= 0.0).select(1.0 / (1.0 + (-z).exp()), z.exp() / (1.0 + z.exp()));
        Eigen::ArrayXd w = (p * (1.0 - p)).max(1e-6);
        Eigen::ArrayXd resid = y.cast<double>().array() - p;

        Matrix7d h = Matrix7d::Zero();
        Vector7d g = Vector7d::Zero();
        h.topLeftCorner<6, 6>() = X.transpose() * w.matrix().asDiagonal() * X;
        h.topRightCorner<6, 1>() = X.transpose() * w.matrix();
        h.bottomLeftCorner<1, 6>() = h.topRightCorner<6, 1>().transpose();
        h(6, 6) = w.sum();
        h += 1e-6 * Matrix7d::Identity() * static_cast<double>(n);
        g.head<6>() = X.transpose() * resid.matrix();
        g(6) = resid.sum();
        const Vector7d delta = h.ldlt().solve(g);
        beta += delta;
        if (delta.norm() < 1e-8) break;
    }
    return beta;
}

}  // namespace

SplitResult optimize_split(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                           const TrainConfig& config, std::uint64_t node_seed) {
    std::vector<Vector7d> starts;

    const AxisSplit axis = best_axis_split(X, y);
    if (axis.feature >= 0) {
        for (double scale : {1.0, 4.0, 16.0}) {
            Vector7d a = Vector7d::Zero();
            a(axis.feature) = scale;
            a(6) = -scale * axis.threshold;
            starts.push_back(a);
        }
    }
    starts.push_back(logistic_direction(X, y));
    Rng rng(node_seed);
    for (int r = 0; r < config.random_starts; ++r) {
        Vector7d a;
        for (int i = 0; i < 7; ++i) a(i) = rng.gaussian();
        starts.push_back(a);
    }

    std::vector<BfgsOutcome> outcomes(starts.size());
    parallel_for(starts.size(), config.jobs,
                 [&](std::size_t s) { outcomes[s] = bfgs_minimize(X, y, starts[s], config); });

    SplitResult best;
    best.objective = std::numeric_limits<double>::infinity();
    bool any_descent = false;
    for (std::size_t s = 0; s < outcomes.size(); ++s) {
        any_descent = any_descent || outcomes[s].descended;
        if (outcomes[s].value < best.objective) {
            best.objective = outcomes[s].value;
            best.a = outcomes[s].a;
        }
    }
    best.warning = !any_descent;
    return best;
}

namespace {

struct Builder {
    const TrainConfig& cfg;
    ObliqueTree& tree;
    std::uint64_t tree_seed;

    int make_leaf(const Eigen::VectorXi& y) {
        const double n = static_cast<double>(y.size());
        const double n1 = y.cast<double>().sum();
        Node leaf;
        leaf.is_leaf = true;
        leaf.label = n1 > n - n1 ? Label::insecure : Label::secure;
        if (n1 == n - n1) leaf.label = Label::insecure;  // deterministic tie rule
        leaf.purity = n > 0 ? std::max(n1, n - n1) / n : 1.0;
        leaf.sample_count = static_cast<std::int64_t>(n);
        tree.nodes.push_back(leaf);
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    int build(const Eigen::MatrixXd& X, const Eigen::VectorXi& y, int depth) {
        tree.depth = std::max(tree.depth, depth);
        const Eigen::Index n = X.rows();
        const double n1 = y.cast<double>().sum();
        const double purity = std::max(n1, static_cast<double>(n) - n1) / static_cast<double>(n);

        const bool stop = depth >= cfg.max_depth || purity >= cfg.purity_stop ||
                          n < static_cast<Eigen::Index>(cfg.min_samples) || n1 == 0.0 ||
                          n1 == static_cast<double>(n);
        if (stop) return make_leaf(y);

        const auto split =
            optimize_split(X, y, cfg, derive_seed(tree_seed, "split", tree.nodes.size()));
        if (split.warning) tree.split_warning = true;

        // hard routing: a^T [z; 1] >= 0 goes right
        Eigen::ArrayXd score = (X * split.a.head<6>()).array() + split.a(6);
        const Eigen::Index n_right = (score >= 0.0).count();
        if (n_right == 0 || n_right == n) return make_leaf(y);  // degenerate split rejected

        Eigen::MatrixXd xl(n - n_right, 6), xr(n_right, 6);
        Eigen::VectorXi yl(n - n_right), yr(n_right);
        Eigen::Index il = 0, ir = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (score(i) >= 0.0) {
                xr.row(ir) = X.row(i);
                yr(ir++) = y(i);
            } else {
                xl.row(il) = X.row(i);
                yl(il++) = y(i);
            }
        }

        Node node;
        node.is_leaf = false;
        node.coeffs = split.a;
        node.sample_count = n;
        tree.nodes.push_back(node);
        const int idx = static_cast<int>(tree.nodes.size()) - 1;
        const int left = build(xl, yl, depth + 1);
        const int right = build(xr, yr, depth + 1);
        tree.nodes[static_cast<std::size_t>(idx)].left = left;
        tree.nodes[static_cast<std::size_t>(idx)].right = right;
        return idx;
    }
};

}  // namespace

ObliqueTree fit(const dataset::Dataset& ds, const TrainConfig& config) {
    if (ds.rows.empty()) throw DomainError("cannot fit a tree on an empty dataset");

    ObliqueTree tree;
    tree.config = config;
    tree.stats = ds.rows.size() >= 2 ? standardize(ds) : Standardization{};

    Eigen::MatrixXd X;
    Eigen::VectorXi y;
    to_matrix(ds, tree.stats, X, y);

    Builder builder{config, tree, derive_seed(config.seed, "wodt")};
    builder.build(X, y, 0);
    return tree;
}

Label predict(const ObliqueTree& tree, const FeatureVector& x) {
    if (!x.x.allFinite()) throw DomainError("predict: non-finite feature value");
    Vector6d z = tree.stats.apply(x.x);
    const Node* node = &tree.root();
    while (!node->is_leaf) {
        const double score = node->coeffs.head<6>().dot(z) + node->coeffs(6);
        node = &tree.nodes[static_cast<std::size_t>(score >= 0.0 ? node->right : node->left)];
    }
    return node->label;
}

double accuracy(const ObliqueTree& tree, const dataset::Dataset& ds) {
    if (ds.rows.empty()) return 1.0;
    std::size_t hits = 0;
    for (const auto& r : ds.rows)
        if (predict(tree, r.features) == r.label) ++hits;
    return static_cast<double>(hits) / static_cast<double>(ds.rows.size());
}

}  // namespace gridnadir::wodt
