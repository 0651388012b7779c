#include "gridnadir/milp/lp_writer.hpp"

#include <cctype>
#include <fstream>

#include "gridnadir/common/num_format.hpp"
#include "json.hpp"

namespace gridnadir::milp {

std::pair<std::string, bool> sanitize_lp_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    bool changed = false;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            out += c;
        } else {
            out += '_';
            changed = true;
        }
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())) ||
        out.front() == '.') {
        out.insert(out.begin(), 'v');
        changed = true;
    }
    return {out, changed};
}

namespace {

void write_expr(std::ofstream& out, const LinExpr& expr, const std::vector<std::string>& names) {
    bool first = true;
    for (const auto& t : expr.terms()) {
        const double c = t.coeff;
        if (first) {
            out << ' ' << format_double(c) << ' ';
            first = false;
        } else if (c >= 0.0) {
            out << " + " << format_double(c) << ' ';
        } else {
            out << " - " << format_double(-c) << ' ';
        }
        out << names[static_cast<std::size_t>(t.var.idx)];
    }
}

std::string bound_token(double v) {
    if (v == kInf) return "1e30";
    if (v == -kInf) return "-1e30";
    return format_double(v);
}

}  // namespace

std::unordered_map<std::string, std::string> write_lp(const MilpModel& model,
                                                      const std::filesystem::path& destination) {
    // sanitize with collision resolution, insertion order
    std::vector<std::string> names;
    std::unordered_map<std::string, std::string> reverse;
    bool any_changed = false;
    for (const auto& v : model.variables()) {
        auto [clean, changed] = sanitize_lp_name(v.name);
        std::string candidate = clean;
        int suffix = 2;
        while (reverse.count(candidate)) {
            candidate = clean + "__" + std::to_string(suffix++);
            changed = true;
        }
        names.push_back(candidate);
        reverse.emplace(candidate, v.name);
        any_changed = any_changed || changed;
    }

    std::ofstream out(destination);
    if (!out) throw EnvironmentError("cannot write LP file " + destination.string());

    out << "\\ gridnadir LP export\n";
    out << "\\ objective_constant " << format_double(model.objective().expr.constant()) << '\n';
    out << (model.objective().sense == ObjSense::maximize ? "Maximize\n" : "Minimize\n");
    out << " obj:";
    if (model.objective().expr.terms().empty()) {
        if (!model.variables().empty()) out << " 0 " << names.front();
    } else {
        write_expr(out, model.objective().expr, names);
    }
    out << '\n';

    out << "Subject To\n";
    std::unordered_map<std::string, int> row_names;
    for (const auto& c : model.constraints()) {
        auto [cname, cchanged] = sanitize_lp_name(c.name);
        (void)cchanged;  // constraint names are not parsed back
        auto [it, fresh] = row_names.try_emplace(cname, 1);
        if (!fresh) cname += "__" + std::to_string(++it->second);
        out << ' ' << cname << ':';
        write_expr(out, c.expr, names);
        switch (c.sense) {
            case Sense::le: out << " <= "; break;
            case Sense::eq: out << " = "; break;
            case Sense::ge: out << " >= "; break;
        }
        out << format_double(c.rhs) << '\n';
    }

    out << "Bounds\n";
    for (std::size_t i = 0; i < model.variables().size(); ++i) {
        const auto& v = model.variables()[i];
        if (v.kind == VarKind::binary) continue;  // implied by the Binaries section
        if (v.lo == -kInf && v.hi == kInf) {
            out << ' ' << names[i] << " free\n";
        } else if (v.lo == v.hi) {
            out << ' ' << names[i] << " = " << format_double(v.lo) << '\n';
        } else {
            out << ' ' << bound_token(v.lo) << " <= " << names[i] << " <= " << bound_token(v.hi)
                << '\n';
        }
    }

    bool have_bin = false, have_int = false;
    for (const auto& v : model.variables()) {
        have_bin = have_bin || v.kind == VarKind::binary;
        have_int = have_int || v.kind == VarKind::integer;
    }
    if (have_bin) {
        out << "Binaries\n";
        for (std::size_t i = 0; i < model.variables().size(); ++i)
            if (model.variables()[i].kind == VarKind::binary) out << ' ' << names[i] << '\n';
    }
    if (have_int) {
        out << "Generals\n";
        for (std::size_t i = 0; i < model.variables().size(); ++i)
            if (model.variables()[i].kind == VarKind::integer) out << ' ' << names[i] << '\n';
    }
    out << "End\n";

    if (any_changed) {
        nlohmann::ordered_json mapping;
        for (std::size_t i = 0; i < model.variables().size(); ++i)
            mapping[names[i]] = model.variables()[i].name;
        auto side = destination;
        side.replace_extension(".names.json");
        std::ofstream ms(side);
        ms << mapping.dump(2) << '\n';
    }
    return reverse;
}

}  // namespace gridnadir::milp
