#include "pathweave/toml.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace pathweave {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::invalid_argument("toml: line " + std::to_string(line + 1) + ": " + what);
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Removes a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

std::vector<std::string> split_dotted(const std::string& key, std::size_t line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : key) {
    if (c == '.') {
      if (cur.empty()) fail(line, "empty table-name segment");
      parts.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (strip(cur).empty()) fail(line, "empty table-name segment");
  parts.push_back(strip(cur));
  return parts;
}

nlohmann::json parse_scalar(const std::string& raw, std::size_t line) {
  const std::string v = strip(raw);
  if (v.empty()) fail(line, "missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(line, "unterminated string");
    return v.substr(1, v.size() - 2);
  }
  if (v == "true") return true;
  if (v == "false") return false;
  try {
    std::size_t used = 0;
    if (v.find_first_of(".eE") == std::string::npos && v != "inf" && v != "-inf") {
      const long long n = std::stoll(v, &used);
      if (used == v.size()) return n;
    }
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  fail(line, "cannot parse value '" + v + "'");
}

nlohmann::json parse_value(const std::string& raw, std::size_t line) {
  const std::string v = strip(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') fail(line, "unterminated array (arrays must be single-line)");
    nlohmann::json arr = nlohmann::json::array();
    std::string inner = v.substr(1, v.size() - 2);
    std::string cur;
    bool in_str = false;
    for (char c : inner) {
      if (c == '"') in_str = !in_str;
      if (c == ',' && !in_str) {
        if (!strip(cur).empty()) arr.push_back(parse_scalar(cur, line));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!strip(cur).empty()) arr.push_back(parse_scalar(cur, line));
    return arr;
  }
  return parse_scalar(v, line);
}

}  // namespace

nlohmann::json parse_toml(const std::string& text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;

  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  lines.push_back(cur);

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = strip(strip_comment(lines[ln]));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ln, "unterminated table header");
      table = &root;
      for (const auto& part : split_dotted(line.substr(1, line.size() - 2), ln)) {
        if (!table->contains(part)) (*table)[part] = nlohmann::json::object();
        table = &(*table)[part];
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(ln, "expected key = value");
    const std::string key = strip(line.substr(0, eq));
    if (key.empty()) fail(ln, "empty key");
    (*table)[key] = parse_value(line.substr(eq + 1), ln);
  }
  return root;
}

}  // namespace pathweave
