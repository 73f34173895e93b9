#pragma once

#include <cstdint>
#include <string>

namespace camplab {

// Writes <output>.manifest.json recording the library version, the resolved
// command line, the effective configuration (JSON text), the master seed and
// the thread count. Deliberately carries no timestamp so a rerun is
// byte-identical.
void write_manifest(const std::string& output_path, const std::string& command,
                    const std::string& config_json, std::uint64_t seed, int threads);

}  // namespace camplab
