#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace chered {

/// Minimal TOML subset: [sections], key = value with strings, numbers,
/// booleans and (nested) arrays.  Keys are exposed as "section.key".
struct TomlValue {
  std::variant<std::string, double, bool, std::vector<TomlValue>> v;

  const std::string& as_string() const;
  double as_number() const;
  bool as_bool() const;
  const std::vector<TomlValue>& as_array() const;
};

using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml_file(const std::string& path);
TomlTable parse_toml(const std::string& text);

}  // namespace chered
