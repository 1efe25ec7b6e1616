#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace landuse {

/// Bad or missing input data: unreadable files, malformed records, broken
/// resources. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or training setup (bad ranges, too few examples,
/// incompatible model). The CLI maps it to exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// WGS84 position in decimal degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const {
    return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
  }
  bool operator==(const GeoPoint&) const = default;
};

// The five re-categorized land uses plus the abstention label.
enum class ParentClass {
  Residential,
  Commercial,
  IndustrialOffices,
  InstitutionalGovernmental,
  UnbuiltLand,
  NonClassified,
};

// Corpus subcategories; each belongs to exactly one parent.
enum class SubClass {
  Commercial,
  CommercialRestaurant,
  CommercialService,
  Institutional,
  InstitutionalEducation,
  InstitutionalCultural,
  IndustrialOffices,
  Residential,
  UnbuiltLand,
};

inline constexpr std::array<ParentClass, 6> kAllParents = {
    ParentClass::Residential,          ParentClass::Commercial,
    ParentClass::IndustrialOffices,    ParentClass::InstitutionalGovernmental,
    ParentClass::UnbuiltLand,          ParentClass::NonClassified};

inline constexpr std::array<SubClass, 9> kAllSubClasses = {
    SubClass::Commercial,          SubClass::CommercialRestaurant,
    SubClass::CommercialService,   SubClass::Institutional,
    SubClass::InstitutionalEducation, SubClass::InstitutionalCultural,
    SubClass::IndustrialOffices,   SubClass::Residential,
    SubClass::UnbuiltLand};

ParentClass parent_of(SubClass sub);

std::string_view to_string(ParentClass parent);
std::string_view to_string(SubClass sub);

std::optional<ParentClass> parse_parent(std::string_view name);
std::optional<SubClass> parse_sub(std::string_view name);

/// A land-use label. `sub`, when set, always agrees with `parent`, and a
/// NonClassified label never carries a subcategory.
class LandUseClass {
 public:
  static LandUseClass non_classified() { return LandUseClass(ParentClass::NonClassified, std::nullopt); }
  static LandUseClass of(SubClass sub) { return LandUseClass(parent_of(sub), sub); }
  /// Throws InputError when the pair violates the parent/sub grouping.
  static LandUseClass make(ParentClass parent, std::optional<SubClass> sub);

  ParentClass parent() const { return parent_; }
  std::optional<SubClass> sub() const { return sub_; }

  bool operator==(const LandUseClass&) const = default;

 private:
  LandUseClass(ParentClass parent, std::optional<SubClass> sub) : parent_(parent), sub_(sub) {}

  ParentClass parent_;
  std::optional<SubClass> sub_;
};

namespace utf8 {

/// Decodes one code point starting at `pos`, advancing `pos`. Invalid bytes
/// decode as U+FFFD and consume a single byte.
char32_t next(std::string_view text, std::size_t& pos);
void append(std::string& out, char32_t cp);
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

/// Letters of the Latin, Greek and Cyrillic blocks.
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
/// ASCII punctuation plus the Latin-1 and general punctuation marks that
/// show up in Spanish posts (¡ ¿ « » dashes, curly quotes, ellipsis).
bool is_punctuation(char32_t cp);
bool is_space(char32_t cp);

std::size_t length(std::string_view text);

}  // namespace utf8

std::string trim(std::string_view text);

}  // namespace landuse
