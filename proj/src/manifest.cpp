#include "gridnadir/common/manifest.hpp"

#include <fstream>

#include "gridnadir/common/error.hpp"
#include "gridnadir/common/hash.hpp"
#include "json.hpp"

namespace gridnadir {

void RunManifest::write(const std::filesystem::path& file) const {
    nlohmann::ordered_json j;
    j["tool"] = "gridnadir";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["inputs"] = inputs;
    if (has_seed) j["seed"] = seed;
    j["artifacts"] = nlohmann::ordered_json::object();
    for (const auto& a : artifacts) j["artifacts"][a.filename().string()] = sha256_file(a);

    std::ofstream out(file);
    if (!out) throw EnvironmentError("cannot write manifest " + file.string());
    out << j.dump(2) << '\n';
}

}  // namespace gridnadir
