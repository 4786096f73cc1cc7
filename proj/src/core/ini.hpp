#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lcorrupt {

// Minimal INI-style document: [section] headers over key = value lines.
// '#' and ';' start comments; values keep their raw text so callers decide
// how to interpret them. Order is preserved.
struct IniSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const;
};

struct IniDocument {
  std::vector<IniSection> sections;

  static IniDocument parse(const std::string& text);
  static IniDocument load(const std::string& path);

  const IniSection* find(const std::string& name) const;
};

// Splits a value on whitespace and commas.
std::vector<std::string> split_tokens(const std::string& value);

// Strict numeric/boolean parsers; throw config errors naming the offending
// text so config mistakes surface with context.
double parse_double(const std::string& text);
long long parse_int(const std::string& text);
bool parse_bool(const std::string& text);

}  // namespace lcorrupt
