#pragma once

#include <string>
#include <utility>

#include "sngs/model.hpp"

namespace sngs {

// CSV with header "r,value", one row per node, 17 significant digits.
void write_field_csv(const std::string& path, const RadialField& f);
// Rebuilds the uniform grid from the r column. Throws IoError on malformed input.
RadialField read_field_csv(const std::string& path);

// CSV with header "r,u,v".
void write_state_csv(const std::string& path, const GroundState& state);
std::pair<RadialField, RadialField> read_state_csv(const std::string& path);

// "%.17g"
std::string format_double(double x);

}  // namespace sngs
