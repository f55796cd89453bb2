#include "chered/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chered {

const std::string& TomlValue::as_string() const {
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  throw std::invalid_argument("config value is not a string");
}
double TomlValue::as_number() const {
  if (auto* d = std::get_if<double>(&v)) return *d;
  throw std::invalid_argument("config value is not a number");
}
bool TomlValue::as_bool() const {
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw std::invalid_argument("config value is not a boolean");
}
const std::vector<TomlValue>& TomlValue::as_array() const {
  if (auto* a = std::get_if<std::vector<TomlValue>>(&v)) return *a;
  throw std::invalid_argument("config value is not an array");
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void skip_ws() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
};

TomlValue parse_value(Cursor& c);

TomlValue parse_array(Cursor& c) {
  std::vector<TomlValue> items;
  ++c.i;  // consume [
  while (true) {
    c.skip_ws();
    if (c.done()) throw std::invalid_argument("unterminated array in config");
    if (c.peek() == ']') {
      ++c.i;
      break;
    }
    items.push_back(parse_value(c));
    c.skip_ws();
    if (!c.done() && c.peek() == ',') ++c.i;
  }
  return TomlValue{items};
}

TomlValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) throw std::invalid_argument("missing value in config");
  char ch = c.peek();
  if (ch == '[') return parse_array(c);
  if (ch == '"' || ch == '\'') {
    char quote = ch;
    ++c.i;
    std::string out;
    while (!c.done() && c.peek() != quote) out += c.s[c.i++];
    if (c.done()) throw std::invalid_argument("unterminated string in config");
    ++c.i;
    return TomlValue{out};
  }
  std::string tok;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '#' &&
         c.peek() != ' ' && c.peek() != '\t')
    tok += c.s[c.i++];
  if (tok == "true") return TomlValue{true};
  if (tok == "false") return TomlValue{false};
  try {
    size_t used = 0;
    double d = std::stod(tok, &used);
    if (used == tok.size()) return TomlValue{d};
  } catch (...) {
  }
  return TomlValue{tok};  // bare word treated as string
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  std::istringstream in(text);
  std::string line, section;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("bad section line: " + line);
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key = value: " + line);
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string rest = line.substr(eq + 1);
    Cursor c{rest, 0};
    TomlValue v = parse_value(c);
    table[section.empty() ? key : section + "." + key] = v;
  }
  return table;
}

TomlTable parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

}  // namespace chered
