#pragma once

#include <string>

#include "camplab/ensembles.hpp"

namespace camplab {

// Fixed little-endian container for a problem instance:
//   magic "CLABINST" | u32 version = 1 | u32 flags (bit 0: truth present)
//   u64 n | u64 N | u64 seed | f64 sigma
//   A row-major, each entry re then im as f64 | y likewise | truth likewise.
// Writing goes through a temp file renamed into place so readers never see a
// partial file.
void save_instance(const std::string& path, const Instance& inst);
Instance load_instance(const std::string& path);

}  // namespace camplab
