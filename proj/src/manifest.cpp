#include "camplab/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "camplab/version.hpp"
#include "json.hpp"

namespace camplab {

void write_manifest(const std::string& output_path, const std::string& command,
                    const std::string& config_json, std::uint64_t seed, int threads) {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["config"] = nlohmann::json::parse(config_json);
    doc["seed"] = seed;
    doc["threads"] = threads;

    namespace fs = std::filesystem;
    const fs::path target(output_path + ".manifest.json");
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << doc.dump(2) << '\n';
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace camplab
