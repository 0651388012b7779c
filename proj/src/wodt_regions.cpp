#include "gridnadir/wodt/regions.hpp"

namespace gridnadir::wodt {

namespace {

/// De-standardize a half-space a^T [z; 1] >= 0 into row (A_row, b) acting on
/// original-unit features: z_j = (x_j - mu_j) / sigma_j.
std::pair<Eigen::Matrix<double, 1, 6>, double> destandardized_row(const Vector7d& a,
                                                                  const Standardization& st) {
    Eigen::Matrix<double, 1, 6> row;
    double offset = a(6);
    for (int j = 0; j < 6; ++j) {
        row(j) = a(j) / st.stddev(j);
        offset -= a(j) * st.mean(j) / st.stddev(j);
    }
    return {row, offset};
}

void walk(const ObliqueTree& tree, int idx, std::vector<Vector7d>& path,
          std::vector<SecureRegion>& out) {
    const Node& node = tree.nodes[static_cast<std::size_t>(idx)];
    if (node.is_leaf) {
        if (node.label != Label::secure) return;
        SecureRegion region;
        region.leaf_id = idx;
        region.A.resize(static_cast<Eigen::Index>(path.size()), 6);
        region.b.resize(static_cast<Eigen::Index>(path.size()));
        for (std::size_t r = 0; r < path.size(); ++r) {
            const auto [row, offset] = destandardized_row(path[r], tree.stats);
            region.A.row(static_cast<Eigen::Index>(r)) = row;
            region.b(static_cast<Eigen::Index>(r)) = offset;
        }
        out.push_back(std::move(region));
        return;
    }
    path.push_back(-node.coeffs);  // left branch: a^T [z;1] < 0, kept as -a >= 0
    walk(tree, node.left, path, out);
    path.back() = node.coeffs;
    walk(tree, node.right, path, out);
    path.pop_back();
}

}  // namespace

std::vector<SecureRegion> extract_secure_regions(const ObliqueTree& tree) {
    if (tree.nodes.empty()) throw DomainError("cannot extract regions from an unfitted tree");
    std::vector<SecureRegion> out;
    std::vector<Vector7d> path;
    walk(tree, 0, path, out);
    return out;
}

bool in_secure_region(const std::vector<SecureRegion>& regions, const Vector6d& x) {
    for (const auto& r : regions)
        if (r.contains(x)) return true;
    return false;
}

SecureRegion mirrored(const SecureRegion& region) {
    SecureRegion m = region;
    for (int j = 3; j < 6; ++j) m.A.col(j) *= -1.0;  // dp_epc, dp_dlc, dp_d
    return m;
}

std::vector<SecureRegion> with_mirrors(const std::vector<SecureRegion>& regions) {
    std::vector<SecureRegion> out = regions;
    out.reserve(regions.size() * 2);
    for (const auto& r : regions) out.push_back(mirrored(r));
    return out;
}

}  // namespace gridnadir::wodt
