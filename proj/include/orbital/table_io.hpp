#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "table.hpp"
#include "var.hpp"

namespace orbital {

/// A table as read from a file, before a ground set is fixed. No schema
/// means ALL (the empty table).
struct RawTable {
  std::optional<VarSet> schema;
  std::vector<std::vector<std::string>> rows;  // aligned with the sorted schema

  std::set<std::string> atoms() const {
    std::set<std::string> out;
    for (auto const& r : rows) out.insert(r.begin(), r.end());
    return out;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// One CSV record; fields may be double-quoted with "" as an escaped quote.
inline std::vector<std::string> csv_fields(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"' && trim(cur).empty()) {
      quoted = was_quoted = true;
      cur.clear();
    } else if (c == ',') {
      out.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) throw Error("unterminated quote on line " + std::to_string(lineno));
  out.push_back(was_quoted ? cur : trim(cur));
  return out;
}

/// Reorders a row given in `order` into sorted-variable order.
inline RawTable aligned(const std::vector<Var>& order, std::vector<std::vector<std::string>> rows) {
  VarSet sorted(order);
  if (sorted.size() != order.size()) throw Error("a variable is listed twice in the header");
  std::vector<std::size_t> pos;
  for (Var x : sorted) pos.push_back(static_cast<std::size_t>(std::find(order.begin(), order.end(), x) - order.begin()));
  RawTable t;
  t.schema = sorted;
  for (auto& r : rows) {
    if (r.size() != order.size()) {
      throw Error("row with " + std::to_string(r.size()) + " values under a header of " + std::to_string(order.size()));
    }
    std::vector<std::string> out;
    for (std::size_t p : pos) out.push_back(std::move(r[p]));
    t.rows.push_back(std::move(out));
  }
  return t;
}

}  // namespace detail

/// Header lists the variables (any order); each further line is a row. A header
/// of ALL (or no header) with no rows is the empty table. With an empty header
/// line the schema is {} and each following empty line is the row <>.
inline RawTable read_csv(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (lines.empty()) return RawTable{};
  std::string head = detail::trim(lines.front());
  if (head == "ALL") {
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (!detail::trim(lines[i]).empty()) throw Error("an ALL table has no rows");
    }
    return RawTable{};
  }
  if (head.empty()) {
    RawTable t;
    t.schema = VarSet{};
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (!detail::trim(lines[i]).empty()) throw Error("a table over {} has only empty rows (line " + std::to_string(i + 1) + ")");
      t.rows.push_back({});
    }
    if (t.rows.empty()) return RawTable{};
    return t;
  }
  std::vector<Var> order;
  for (auto const& f : detail::csv_fields(head, 1)) order.push_back(parse_var(f));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (detail::trim(lines[i]).empty()) continue;
    rows.push_back(detail::csv_fields(lines[i], i + 1));
  }
  if (rows.empty()) return RawTable{};
  return detail::aligned(order, std::move(rows));
}

/// {"schema": ["x1","x2"], "rows": [["a","b"]]}; "schema": "ALL" is the empty table.
inline RawTable read_json_table(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema")) throw Error("a JSON table needs a \"schema\"");
  const auto& s = j.at("schema");
  std::vector<std::vector<std::string>> rows;
  if (j.contains("rows")) {
    if (!j.at("rows").is_array()) throw Error("\"rows\" must be an array");
    for (auto const& r : j.at("rows")) {
      if (!r.is_array()) throw Error("each row must be an array of atoms");
      std::vector<std::string> row;
      for (auto const& a : r) {
        if (!a.is_string()) throw Error("atoms must be strings");
        row.push_back(a.get<std::string>());
      }
      rows.push_back(std::move(row));
    }
  }
  if (s.is_string()) {
    if (s.get<std::string>() != "ALL") throw Error("schema must be a list of variables or \"ALL\"");
    if (!rows.empty()) throw Error("an ALL table has no rows");
    return RawTable{};
  }
  if (!s.is_array()) throw Error("schema must be a list of variables or \"ALL\"");
  std::vector<Var> order;
  for (auto const& x : s) {
    if (!x.is_string()) throw Error("schema entries must be strings");
    order.push_back(parse_var(x.get<std::string>()));
  }
  if (rows.empty()) return RawTable{};
  return detail::aligned(order, std::move(rows));
}

/// A JSON file holds one table, or {"ground": [...], "tables": {"T": table, ...}}.
struct TableFile {
  std::optional<std::vector<std::string>> ground;
  std::vector<std::pair<std::string, RawTable>> tables;
};

inline TableFile read_json_tables(const nlohmann::json& j, const std::string& default_name) {
  TableFile f;
  if (j.is_object() && j.contains("tables")) {
    if (!j.at("tables").is_object()) throw Error("\"tables\" must map names to tables");
    for (auto const& [name, t] : j.at("tables").items()) f.tables.emplace_back(name, read_json_table(t));
    if (j.contains("ground")) f.ground = j.at("ground").get<std::vector<std::string>>();
  } else {
    f.tables.emplace_back(default_name, read_json_table(j));
  }
  return f;
}

/// Reads a .csv or .json file; a single table is named after the file stem.
inline TableFile load_table_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string name = path.stem().string();
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  try {
    if (ext == ".json") return read_json_tables(nlohmann::json::parse(buf.str()), name);
    if (ext == ".csv") return TableFile{std::nullopt, {{name, read_csv(buf.str())}}};
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  throw Error(path.string() + ": expected a .csv or .json file");
}

inline Table<std::string> build_table(const RawTable& raw, const GroundPtr<std::string>& ground) {
  if (!raw.schema) return Table<std::string>::empty(ground);
  return Table<std::string>::from_rows(ground, *raw.schema, raw.rows);
}

inline nlohmann::json table_json(const Table<std::string>& t) {
  if (t.is_empty()) return {{"schema", "ALL"}, {"rows", nlohmann::json::array()}};
  nlohmann::json schema = nlohmann::json::array(), rows = nlohmann::json::array();
  for (Var x : t.schema().vars()) schema.push_back(x.str());
  for (std::size_t i = 0; i < t.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (auto const& a : t.row(i)) row.push_back(a);
    rows.push_back(std::move(row));
  }
  return {{"schema", schema}, {"rows", rows}};
}

inline std::string table_csv(const Table<std::string>& t) {
  if (t.is_empty()) return "ALL\n";
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos && s == detail::trim(s)) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::string out;
  bool first = true;
  for (Var x : t.schema().vars()) {
    out += (first ? "" : ",") + x.str();
    first = false;
  }
  out += '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    first = true;
    for (auto const& a : t.row(i)) {
      out += (first ? "" : ",") + field(a);
      first = false;
    }
    out += '\n';
  }
  return out;
}

/// Aligned text grid; the empty table prints as "(empty, schema ALL)".
inline std::string table_grid(const Table<std::string>& t) {
  if (t.is_empty()) return "(empty, schema ALL)\n";
  const VarSet& cols = t.schema().vars();
  if (cols.empty()) return "()\n<>\n";
  std::vector<std::size_t> w;
  for (Var x : cols) w.push_back(x.str().size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto r = t.row(i);
    for (std::size_t c = 0; c < cols.size(); ++c) w[c] = std::max(w[c], r[c].size());
  }
  auto line = [&](auto cell) {
    std::string out;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::string s = cell(c);
      if (c) out += " | ";
      out += s + std::string(w[c] - s.size(), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + '\n';
  };
  std::string out = line([&](std::size_t c) { return cols[c].str(); });
  for (std::size_t c = 0; c < cols.size(); ++c) out += (c ? "-+-" : "") + std::string(w[c], '-');
  out += '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto r = t.row(i);
    out += line([&](std::size_t c) { return r[c]; });
  }
  return out;
}

}  // namespace orbital
