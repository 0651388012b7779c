#include "gridnadir/wodt/tree_io.hpp"

#include <fstream>

#include "gridnadir/common/num_format.hpp"
#include "json.hpp"

namespace gridnadir::wodt {

using nlohmann::json;
using nlohmann::ordered_json;

void save_tree(const ObliqueTree& tree, const std::filesystem::path& file) {
    ordered_json j;
    j["format"] = "gridnadir-wodt-1";
    j["feature_order"] = feature_order_string();
    j["stats"]["mean"] = std::vector<double>(tree.stats.mean.data(), tree.stats.mean.data() + 6);
    j["stats"]["stddev"] =
        std::vector<double>(tree.stats.stddev.data(), tree.stats.stddev.data() + 6);
    j["config"] = {{"max_depth", tree.config.max_depth},
                   {"purity_stop", tree.config.purity_stop},
                   {"min_samples", tree.config.min_samples},
                   {"random_starts", tree.config.random_starts},
                   {"seed", tree.config.seed}};
    j["depth"] = tree.depth;
    j["split_warning"] = tree.split_warning;
    j["nodes"] = ordered_json::array();
    for (const auto& n : tree.nodes) {
        ordered_json node;
        if (n.is_leaf) {
            node["leaf"] = {{"label", static_cast<int>(n.label)},
                            {"purity", n.purity},
                            {"count", n.sample_count}};
        } else {
            node["split"] = std::vector<double>(n.coeffs.data(), n.coeffs.data() + 7);
            node["left"] = n.left;
            node["right"] = n.right;
        }
        j["nodes"].push_back(node);
    }

    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write tree file " + file.string());
    out << j.dump(2) << '\n';
}

ObliqueTree load_tree(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open tree file " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("bad JSON in " + file.string() + ": " + e.what());
    }
    if (j.value("format", "") != "gridnadir-wodt-1")
        throw UsageError(file.string() + " is not a tree file");
    if (j.value("feature_order", "") != feature_order_string())
        throw UsageError("tree " + file.string() + " was trained with a different feature order");

    ObliqueTree tree;
    for (int i = 0; i < 6; ++i) {
        tree.stats.mean(i) = j["stats"]["mean"].at(static_cast<std::size_t>(i)).get<double>();
        tree.stats.stddev(i) = j["stats"]["stddev"].at(static_cast<std::size_t>(i)).get<double>();
    }
    const auto& cfg = j["config"];
    tree.config.max_depth = cfg.value("max_depth", 3);
    tree.config.purity_stop = cfg.value("purity_stop", 0.995);
    tree.config.min_samples = cfg.value("min_samples", 20);
    tree.config.random_starts = cfg.value("random_starts", 8);
    tree.config.seed = cfg.value("seed", 0ULL);
    tree.depth = j.value("depth", 0);
    tree.split_warning = j.value("split_warning", false);

    for (const auto& nj : j["nodes"]) {
        Node n;
        if (nj.contains("leaf")) {
            n.is_leaf = true;
            n.label = nj["leaf"].value("label", 0) == 0 ? Label::secure : Label::insecure;
            n.purity = nj["leaf"].value("purity", 1.0);
            n.sample_count = nj["leaf"].value("count", 0);
        } else {
            n.is_leaf = false;
            for (int i = 0; i < 7; ++i)
                n.coeffs(i) = nj["split"].at(static_cast<std::size_t>(i)).get<double>();
            n.left = nj.value("left", -1);
            n.right = nj.value("right", -1);
            if (n.left < 0 || n.right < 0) throw UsageError("tree node missing children");
        }
        tree.nodes.push_back(n);
    }
    if (tree.nodes.empty()) throw UsageError("tree file holds no nodes");
    for (const auto& n : tree.nodes)
        if (!n.is_leaf && (n.left >= static_cast<int>(tree.nodes.size()) ||
                           n.right >= static_cast<int>(tree.nodes.size())))
            throw UsageError("tree node references a missing child");
    return tree;
}

void write_regions_csv(const std::vector<SecureRegion>& regions,
                       const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write regions file " + file.string());
    out << "leaf_id,row_idx,a_h,a_d_fast,a_d_slow,a_dp_epc,a_dp_dlc,a_dp_d,bias\n";
    for (const auto& r : regions) {
        for (Eigen::Index row = 0; row < r.A.rows(); ++row) {
            out << r.leaf_id << ',' << row;
            for (int c = 0; c < 6; ++c) out << ',' << format_double(r.A(row, c));
            out << ',' << format_double(r.b(row)) << '\n';
        }
    }
}

}  // namespace gridnadir::wodt
