#pragma once

namespace camplab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace camplab
