#include "gridnadir/wodt/cart.hpp"

#include "gridnadir/wodt/train.hpp"

namespace gridnadir::wodt {

namespace {

struct CartBuilder {
    const TrainConfig& cfg;
    ObliqueTree& tree;

    int make_leaf(const Eigen::VectorXi& y) {
        const double n = static_cast<double>(y.size());
        const double n1 = y.cast<double>().sum();
        Node leaf;
        leaf.is_leaf = true;
        leaf.label = n1 >= n - n1 ? Label::insecure : Label::secure;  // ties insecure
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
        if (depth >= cfg.max_depth || purity >= cfg.purity_stop ||
            n < static_cast<Eigen::Index>(cfg.min_samples) || n1 == 0.0 ||
            n1 == static_cast<double>(n))
            return make_leaf(y);

        const AxisSplit split = best_axis_split(X, y);
        if (split.feature < 0) return make_leaf(y);

        Eigen::ArrayXd score = X.col(split.feature).array() - split.threshold;
        const Eigen::Index n_right = (score >= 0.0).count();
        if (n_right == 0 || n_right == n) return make_leaf(y);

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
        node.coeffs = Vector7d::Zero();
        node.coeffs(split.feature) = 1.0;
        node.coeffs(6) = -split.threshold;
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

ObliqueTree fit_axis_aligned(const dataset::Dataset& ds, const TrainConfig& config) {
    if (ds.rows.empty()) throw DomainError("cannot fit a tree on an empty dataset");
    ObliqueTree tree;
    tree.config = config;
    tree.stats = ds.rows.size() >= 2 ? standardize(ds) : Standardization{};
    Eigen::MatrixXd X;
    Eigen::VectorXi y;
    to_matrix(ds, tree.stats, X, y);
    CartBuilder builder{config, tree};
    builder.build(X, y, 0);
    return tree;
}

}  // namespace gridnadir::wodt
