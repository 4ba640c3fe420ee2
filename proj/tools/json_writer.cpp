#include "json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace gds::cli {

namespace {

void write_value(std::ostream& out, const Json& v, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(key).dump() << ": ";
        write_value(out, item, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& item : v) flat = flat && !item.is_structured();
      out << "[";
      if (!flat) out << "\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << (flat ? ", " : ",\n");
        first = false;
        if (!flat) out << pad;
        write_value(out, item, depth + 1);
      }
      if (!flat) out << "\n" << close_pad;
      out << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_number(v.get<double>());
      return;
    default:
      out << v.dump();
      return;
  }
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_json(std::ostream& out, const Json& doc) {
  write_value(out, doc, 0);
  out << "\n";
}

}  // namespace gds::cli
