#pragma once

#include <string>
#include <vector>

namespace camplab {

// Shortest round-trippable decimal rendering (%.17g).
std::string csv_number(double v);

// Writes header + rows with RFC 4180 quoting, through a temp file renamed
// into place (parent directories created). Every row must match the header
// width.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace camplab
