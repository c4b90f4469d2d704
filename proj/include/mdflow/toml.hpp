#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mdflow/core.hpp"

// Minimal TOML subset: tables, dotted table headers, arrays of tables,
// key = value with strings, numbers, booleans and (nested) single-line
// arrays. Enough for scenario files; not a general TOML implementation.

namespace mdflow::toml {

class Value {
 public:
  enum class Kind { String, Number, Bool, Array, Table };

  Kind kind = Kind::Table;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<Value> array;
  std::map<std::string, Value> table;

  bool is_table() const { return kind == Kind::Table; }
  bool is_array() const { return kind == Kind::Array; }

  const Value* find(const std::string& key) const {
    if (kind != Kind::Table) return nullptr;
    auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
  }

  const Value& at(const std::string& key) const {
    const Value* v = find(key);
    if (!v) throw ParseError("missing key '" + key + "'");
    return *v;
  }

  double as_number(const std::string& what) const {
    if (kind != Kind::Number) throw ParseError(what + " must be a number");
    return num;
  }
  bool as_bool(const std::string& what) const {
    if (kind != Kind::Bool) throw ParseError(what + " must be a boolean");
    return boolean;
  }
  const std::string& as_string(const std::string& what) const {
    if (kind != Kind::String) throw ParseError(what + " must be a string");
    return str;
  }
  const std::vector<Value>& as_array(const std::string& what) const {
    if (kind != Kind::Array) throw ParseError(what + " must be an array");
    return array;
  }

  std::vector<double> as_numbers(const std::string& what) const {
    std::vector<double> out;
    for (const Value& v : as_array(what)) out.push_back(v.as_number(what + " element"));
    return out;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

inline std::vector<std::string> split_dotted(const std::string& s, int lineno) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) {
    part = trim(part);
    if (part.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty table name component");
    parts.push_back(part);
  }
  return parts;
}

inline Value parse_value(const std::string& raw, int lineno);

inline std::vector<std::string> split_top_level(const std::string& s, int lineno) {
  std::vector<std::string> items;
  int depth = 0;
  bool in_str = false;
  std::string cur;
  for (char ch : s) {
    if (ch == '"') in_str = !in_str;
    if (!in_str) {
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if (ch == ',' && depth == 0) {
        items.push_back(cur);
        cur.clear();
        continue;
      }
    }
    cur += ch;
  }
  if (depth != 0 || in_str)
    throw ParseError("line " + std::to_string(lineno) + ": unbalanced array or string");
  if (!trim(cur).empty()) items.push_back(cur);
  return items;
}

inline Value parse_value(const std::string& raw, int lineno) {
  const std::string s = trim(raw);
  if (s.empty()) throw ParseError("line " + std::to_string(lineno) + ": missing value");
  Value v;
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw ParseError("line " + std::to_string(lineno) + ": unterminated string");
    v.kind = Value::Kind::String;
    v.str = s.substr(1, s.size() - 2);
    return v;
  }
  if (s == "true" || s == "false") {
    v.kind = Value::Kind::Bool;
    v.boolean = s == "true";
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']')
      throw ParseError("line " + std::to_string(lineno) + ": arrays must close on the same line");
    v.kind = Value::Kind::Array;
    for (const std::string& item : split_top_level(s.substr(1, s.size() - 2), lineno))
      v.array.push_back(parse_value(item, lineno));
    return v;
  }
  char* end = nullptr;
  v.kind = Value::Kind::Number;
  v.num = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw ParseError("line " + std::to_string(lineno) + ": cannot parse value '" + s + "'");
  return v;
}

}  // namespace detail

inline Value parse(const std::string& text) {
  using namespace detail;
  Value root;
  Value* current = &root;

  auto navigate = [&](const std::vector<std::string>& parts, bool array_of_tables, int lineno) {
    Value* node = &root;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const bool leaf = i + 1 == parts.size();
      Value& slot = node->table[parts[i]];
      if (leaf && array_of_tables) {
        if (slot.kind == Value::Kind::Table && slot.table.empty() && slot.array.empty())
          slot.kind = Value::Kind::Array;
        if (slot.kind != Value::Kind::Array)
          throw ParseError("line " + std::to_string(lineno) + ": '" + parts[i] +
                           "' is not an array of tables");
        slot.array.emplace_back();
        node = &slot.array.back();
      } else if (slot.kind == Value::Kind::Array) {
        if (slot.array.empty())
          throw ParseError("line " + std::to_string(lineno) + ": empty array of tables");
        node = &slot.array.back();
        if (leaf) break;
      } else {
        if (slot.kind != Value::Kind::Table)
          throw ParseError("line " + std::to_string(lineno) + ": '" + parts[i] +
                           "' is not a table");
        node = &slot;
      }
    }
    return node;
  };

  std::stringstream ss(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(ss, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.size() >= 4 && line.substr(0, 2) == "[[" && line.substr(line.size() - 2) == "]]") {
      current = navigate(split_dotted(line.substr(2, line.size() - 4), lineno), true, lineno);
      continue;
    }
    if (line.front() == '[' && line.back() == ']') {
      current = navigate(split_dotted(line.substr(1, line.size() - 2), lineno), false, lineno);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
    if (current->table.count(key))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    current->table[key] = parse_value(line.substr(eq + 1), lineno);
  }
  return root;
}

inline Value parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace mdflow::toml
