#include "landuse/core.hpp"

namespace landuse {

ParentClass parent_of(SubClass sub) {
  switch (sub) {
    case SubClass::Commercial:
    case SubClass::CommercialRestaurant:
    case SubClass::CommercialService:
      return ParentClass::Commercial;
    case SubClass::Institutional:
    case SubClass::InstitutionalEducation:
    case SubClass::InstitutionalCultural:
      return ParentClass::InstitutionalGovernmental;
    case SubClass::IndustrialOffices:
      return ParentClass::IndustrialOffices;
    case SubClass::Residential:
      return ParentClass::Residential;
    case SubClass::UnbuiltLand:
      return ParentClass::UnbuiltLand;
  }
  throw std::logic_error("unknown subcategory");
}

std::string_view to_string(ParentClass parent) {
  switch (parent) {
    case ParentClass::Residential: return "Residential";
    case ParentClass::Commercial: return "Commercial";
    case ParentClass::IndustrialOffices: return "IndustrialOffices";
    case ParentClass::InstitutionalGovernmental: return "InstitutionalGovernmental";
    case ParentClass::UnbuiltLand: return "UnbuiltLand";
    case ParentClass::NonClassified: return "NonClassified";
  }
  return "?";
}

std::string_view to_string(SubClass sub) {
  switch (sub) {
    case SubClass::Commercial: return "Commercial";
    case SubClass::CommercialRestaurant: return "CommercialRestaurant";
    case SubClass::CommercialService: return "CommercialService";
    case SubClass::Institutional: return "Institutional";
    case SubClass::InstitutionalEducation: return "InstitutionalEducation";
    case SubClass::InstitutionalCultural: return "InstitutionalCultural";
    case SubClass::IndustrialOffices: return "IndustrialOffices";
    case SubClass::Residential: return "Residential";
    case SubClass::UnbuiltLand: return "UnbuiltLand";
  }
  return "?";
}

std::optional<ParentClass> parse_parent(std::string_view name) {
  for (auto p : kAllParents) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::optional<SubClass> parse_sub(std::string_view name) {
  for (auto s : kAllSubClasses) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

LandUseClass LandUseClass::make(ParentClass parent, std::optional<SubClass> sub) {
  if (sub) {
    if (parent == ParentClass::NonClassified) {
      throw InputError("NonClassified label cannot carry a subcategory");
    }
    if (parent_of(*sub) != parent) {
      throw InputError("subcategory " + std::string(to_string(*sub)) +
                       " does not belong to " + std::string(to_string(parent)));
    }
  }
  return LandUseClass(parent, sub);
}

namespace utf8 {

char32_t next(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (std::size_t i = 1; i <= extra; ++i) {
    const unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(next(text, pos));
  return out;
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append(out, cp);
  return out;
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  // Latin-1 capitals, minus the multiplication sign.
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
  // Latin Extended-A: capitals sit on even code points except in the
  // U+0139..U+0148 and U+0179..U+017E runs.
  if (cp == 0x130) return U'i';
  if (cp == 0x178) return 0xFF;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) return cp % 2 == 0 ? cp + 1 : cp;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return cp % 2 == 1 ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) append(out, to_lower(next(text, pos)));
  return out;
}

bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x370 && cp <= 0x3FF) return cp != 0x37E && cp != 0x387;
  if (cp >= 0x400 && cp <= 0x52F) return true;
  // Combining diacritics stay attached to their letters.
  if (cp >= 0x300 && cp <= 0x36F) return true;
  return false;
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1:  // ¡
    case 0xAB:  // «
    case 0xB7:  // middle dot
    case 0xBB:  // »
    case 0xBF:  // ¿
      return true;
    default:
      break;
  }
  return cp >= 0x2010 && cp <= 0x2027;
}

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0xA0 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x202F ||
         cp == 0x3000;
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    next(text, pos);
    ++n;
  }
  return n;
}

}  // namespace utf8

std::string trim(std::string_view text) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && ws(text[b])) ++b;
  while (e > b && ws(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

}  // namespace landuse
