#include "presets.hpp"

#include <algorithm>
#include <sstream>

#include "common.hpp"

namespace zd {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_line(int line, const std::string& why) {
  fail(ErrorCode::InvalidArgument, "preset manifest line " + std::to_string(line) + ": " + why);
}

}  // namespace

PresetTable PresetTable::parse(std::string_view text) {
  PresetTable t;
  bool have_version = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "version") {
      int v = 0;
      if (!(ls >> v) || v < 1) bad_line(lineno, "bad version");
      if (v > kPresetManifestVersion) bad_line(lineno, "unsupported manifest version " + std::to_string(v));
      t.version_ = v;
      have_version = true;
      continue;
    }
    if (kw != "preset") bad_line(lineno, "expected 'version' or 'preset'");
    if (!have_version) bad_line(lineno, "missing version line");
    Preset p;
    std::string acc;
    if (!(ls >> p.name >> acc >> p.query)) bad_line(lineno, "expected: preset <name> <exact|approximate> <query>");
    if (acc == "approximate") {
      p.approximate = true;
    } else if (acc != "exact") {
      bad_line(lineno, "accuracy must be exact or approximate");
    }
    std::string rest;
    std::getline(ls, rest);
    p.description = trim(rest);
    auto it = std::find_if(t.entries_.begin(), t.entries_.end(), [&](const Preset& q) { return q.name == p.name; });
    if (it != t.entries_.end()) bad_line(lineno, "duplicate preset '" + p.name + "'");
    t.entries_.push_back(std::move(p));
  }
  if (!have_version) fail(ErrorCode::InvalidArgument, "preset manifest: missing version line");
  return t;
}

const PresetTable& PresetTable::builtin() {
  static const PresetTable table = parse(kBuiltinPresetManifest);
  return table;
}

void PresetTable::merge(const PresetTable& other) {
  for (const Preset& p : other.entries_) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Preset& q) { return q.name == p.name; });
    if (it != entries_.end()) {
      *it = p;
    } else {
      entries_.push_back(p);
    }
  }
}

const Preset* PresetTable::find(std::string_view name) const {
  for (const Preset& p : entries_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace zd
