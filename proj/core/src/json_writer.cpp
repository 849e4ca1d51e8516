#include "gdesign/json_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gdesign {
namespace {

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: out += format_double(j.get<double>()); break;
    default: out += j.dump(); break;
  }
}

std::string scalar_cell(const Json& j) {
  std::string s;
  if (j.is_string())
    s = j.get<std::string>();
  else if (j.is_number_float())
    s = format_double(j.get<double>());
  else if (j.is_null())
    s = "";
  else
    s = j.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void flatten(const Json& j, const std::string& prefix, Json& row) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), row);
  } else if (j.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) joined += ';';
      joined += j[i].is_object() || j[i].is_array() ? j[i].dump() : scalar_cell(j[i]);
    }
    row[prefix] = joined;
  } else {
    row[prefix] = j;
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& j) {
  std::string out;
  write(j, out);
  return out;
}

std::string to_csv(const Json& j) {
  std::vector<Json> rows;
  if (j.is_array()) {
    for (const auto& e : j) {
      Json row = Json::object();
      flatten(e, "", row);
      rows.push_back(std::move(row));
    }
  } else {
    Json row = Json::object();
    flatten(j, "", row);
    rows.push_back(std::move(row));
  }
  std::vector<std::string> header;
  for (const auto& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(header.begin(), header.end(), it.key()) == header.end()) header.push_back(it.key());
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + scalar_cell(header[i]);
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      if (r.contains(header[i])) out += scalar_cell(r[header[i]]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace gdesign
