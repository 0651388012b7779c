#include "gridnadir/dataset/dataset.hpp"

#include <fstream>
#include <sstream>

#include "gridnadir/common/num_format.hpp"

namespace gridnadir::dataset {

std::size_t Dataset::count(Label l) const {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.label == l) ++n;
    return n;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write dataset file " + file.string());
    out << "# feature_order=" << ds.feature_order << '\n';
    out << "# threshold_hz=" << format_double(ds.threshold_hz) << '\n';
    out << "# band=" << format_double(ds.band_lo) << ',' << format_double(ds.band_hi) << '\n';
    out << "# seed=" << ds.seed << '\n';
    out << "# dt=" << format_double(ds.dt) << '\n';
    out << "# horizon=" << format_double(ds.horizon) << '\n';
    out << "# count_secure=" << ds.count(Label::secure) << '\n';
    out << "# count_insecure=" << ds.count(Label::insecure) << '\n';
    out << "h,d_fast,d_slow,dp_epc,dp_dlc,dp_d,nadir_hz,label\n";
    for (const auto& r : ds.rows) {
        for (int i = 0; i < 6; ++i) out << format_double(r.features.x(i)) << ',';
        out << format_double(r.nadir_hz) << ',' << static_cast<int>(r.label) << '\n';
    }
}

Dataset read_dataset(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open dataset file " + file.string());

    Dataset ds;
    std::size_t declared_secure = 0, declared_insecure = 0;
    bool have_counts = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string val = line.substr(eq + 1);
            if (key == "feature_order") ds.feature_order = val;
            else if (key == "threshold_hz") ds.threshold_hz = parse_double(val);
            else if (key == "band") {
                const auto comma = val.find(',');
                if (comma == std::string::npos) throw UsageError("bad band header in " + file.string());
                ds.band_lo = parse_double(val.substr(0, comma));
                ds.band_hi = parse_double(val.substr(comma + 1));
            } else if (key == "seed") ds.seed = static_cast<std::uint64_t>(parse_long(val));
            else if (key == "dt") ds.dt = parse_double(val);
            else if (key == "horizon") ds.horizon = parse_double(val);
            else if (key == "count_secure") { declared_secure = static_cast<std::size_t>(parse_long(val)); have_counts = true; }
            else if (key == "count_insecure") { declared_insecure = static_cast<std::size_t>(parse_long(val)); have_counts = true; }
            continue;
        }
        if (line.empty()) continue;
        if (line.rfind("h,", 0) == 0) continue;  // column header

        LabeledSample row;
        std::stringstream ss(line);
        std::string field;
        for (int i = 0; i < 6; ++i) {
            if (!std::getline(ss, field, ',')) throw UsageError("short dataset row in " + file.string());
            row.features.x(i) = parse_double(field);
        }
        if (!std::getline(ss, field, ',')) throw UsageError("short dataset row in " + file.string());
        row.nadir_hz = parse_double(field);
        if (!std::getline(ss, field, ',')) throw UsageError("short dataset row in " + file.string());
        row.label = parse_long(field) == 0 ? Label::secure : Label::insecure;
        ds.rows.push_back(row);
    }

    if (ds.feature_order != feature_order_string())
        throw UsageError("dataset " + file.string() + " has feature order '" + ds.feature_order +
                         "', expected '" + feature_order_string() + "'");
    if (have_counts && (ds.count(Label::secure) != declared_secure ||
                        ds.count(Label::insecure) != declared_insecure))
        throw UsageError("dataset " + file.string() + " header counts do not match its rows");
    return ds;
}

}  // namespace gridnadir::dataset
