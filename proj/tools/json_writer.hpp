#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace gds::cli {

using Json = nlohmann::ordered_json;

/// Formats a double with 17 significant digits; non-finite values become
/// the JSON literal null.
std::string format_number(double value);

/// Writes `doc` as indented JSON with every floating-point number printed
/// through format_number, followed by a newline.
void write_json(std::ostream& out, const Json& doc);

}  // namespace gds::cli
