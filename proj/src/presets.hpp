// Named render presets from a versioned text manifest.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zd {

struct Preset {
  std::string name;
  bool approximate = false;
  std::string query;  // same grammar as a tile request
  std::string description;
};

class PresetTable {
 public:
  // Parses the manifest grammar; throws InvalidArgument with the line number.
  static PresetTable parse(std::string_view text);
  static const PresetTable& builtin();

  // Entries of `other` replace same-named entries here.
  void merge(const PresetTable& other);
  const Preset* find(std::string_view name) const;
  const std::vector<Preset>& entries() const { return entries_; }
  int version() const { return version_; }

 private:
  int version_ = 1;
  std::vector<Preset> entries_;
};

inline constexpr int kPresetManifestVersion = 1;

// Manifest text compiled into the library.
extern const char* const kBuiltinPresetManifest;

}  // namespace zd
