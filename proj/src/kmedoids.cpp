#include "gridnadir/dataset/kmedoids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gridnadir/common/error.hpp"

namespace gridnadir::dataset {

namespace {

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points) {
    // z-score each column; constant columns map to zero
    Eigen::MatrixXd z = points;
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        const double mean = z.col(c).mean();
        z.col(c).array() -= mean;
        const double sd = std::sqrt(z.col(c).squaredNorm() / static_cast<double>(z.rows()));
        if (sd > 0.0) z.col(c) /= sd;
    }
    const Eigen::Index n = z.rows();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dist = (z.row(i) - z.row(j)).norm();
            d(i, j) = dist;
            d(j, i) = dist;
        }
    }
    return d;
}

double total_cost(const Eigen::MatrixXd& d, const std::vector<int>& medoids) {
    double cost = 0.0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int m : medoids) best = std::min(best, d(i, m));
        cost += best;
    }
    return cost;
}

}  // namespace

std::vector<int> kmedoids(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
    (void)seed;  // BUILD+SWAP is deterministic; the seed is part of the interface only
    const int n = static_cast<int>(points.rows());
    if (n == 0) throw DomainError("kmedoids: empty input");
    if (k <= 0) throw DomainError("kmedoids: k must be positive");
    if (k > n) throw DomainError("kmedoids: k exceeds the number of points");
    if (!points.allFinite()) throw DomainError("kmedoids: non-finite coordinates");

    std::vector<int> medoids;
    if (k == n) {
        medoids.resize(n);
        for (int i = 0; i < n; ++i) medoids[i] = i;
        return medoids;
    }

    const Eigen::MatrixXd d = pairwise_distances(points);

    // BUILD: start from the 1-medoid optimum, then greedily add the point
    // that most reduces the assignment cost.
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    for (int round = 0; round < k; ++round) {
        int best_idx = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < n; ++c) {
            if (std::find(medoids.begin(), medoids.end(), c) != medoids.end()) continue;
            double gain = 0.0;
            for (int i = 0; i < n; ++i) gain += std::max(0.0, nearest[i] - d(i, c));
            if (round == 0) gain = -total_cost(d, {c});
            if (gain > best_gain) {
                best_gain = gain;
                best_idx = c;
            }
        }
        medoids.push_back(best_idx);
        for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], d(i, best_idx));
    }

    // SWAP until no exchange improves the total cost
    double cost = total_cost(d, medoids);
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
            for (int o = 0; o < n; ++o) {
                if (std::find(medoids.begin(), medoids.end(), o) != medoids.end()) continue;
                std::vector<int> trial = medoids;
                trial[mi] = o;
                const double trial_cost = total_cost(d, trial);
                if (trial_cost < cost - 1e-12) {
                    medoids = trial;
                    cost = trial_cost;
                    improved = true;
                }
            }
        }
    }
    std::sort(medoids.begin(), medoids.end());
    return medoids;
}

std::vector<int> kmedoids(const std::vector<EquivalentParams>& points, int k,
                          std::uint64_t seed) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), 3);
    for (std::size_t i = 0; i < points.size(); ++i)
        m.row(static_cast<Eigen::Index>(i)) << points[i].inertia, points[i].d_fast,
            points[i].d_slow;
    return kmedoids(m, k, seed);
}

}  // namespace gridnadir::dataset
