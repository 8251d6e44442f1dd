#pragma once

// Scene files use a small TOML subset:
//
//   [background]
//   permittivity = 1.0
//   permeability = 1.0
//
//   [[inhomogeneity]]
//   location = [0.4, 0.0]
//   radius = 0.05
//   permittivity = 5
//   permeability = 5
//   shape_area = 3.14159   # optional, defaults to pi
//
// Dotted keys (`background.permittivity = 1`) are accepted at top level.
// Background values default to 1 when absent. Unknown keys are rejected.

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "submig/errors.hpp"
#include "submig/io.hpp"
#include "submig/scene.hpp"

namespace submig::io {

namespace detail {

inline std::string trim(std::string s) {
  const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && issp(static_cast<unsigned char>(s[b]))) ++b;
  return s.substr(b);
}

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

struct SceneDraft {
  std::optional<double> eps0;
  std::optional<double> mu0;
  struct Target {
    std::optional<Vec2> location;
    std::optional<double> radius, permittivity, permeability, shape_area;
    int line = 0;
  };
  std::vector<Target> targets;
};

[[noreturn]] inline void scene_error(int line, const std::string& msg) {
  std::ostringstream os;
  os << "scene file line " << line << ": " << msg;
  throw FormatError(os.str());
}

inline Vec2 parse_pair(const std::string& value, int line) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']')
    scene_error(line, "expected [x, y]");
  const std::string inner = value.substr(1, value.size() - 2);
  const auto comma = inner.find(',');
  if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos)
    scene_error(line, "expected exactly two components in [x, y]");
  try {
    return {parse_double(trim(inner.substr(0, comma)), "x"),
            parse_double(trim(inner.substr(comma + 1)), "y")};
  } catch (const FormatError& e) {
    scene_error(line, e.what());
  }
}

inline double parse_number(const std::string& value, int line) {
  try {
    return parse_double(value, "number");
  } catch (const FormatError& e) {
    scene_error(line, e.what());
  }
}

}  // namespace detail

inline SceneConfig read_scene(std::istream& is) {
  using detail::scene_error;
  detail::SceneDraft draft;
  enum class Section { kTop, kBackground, kTarget } section = Section::kTop;

  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line == "[[inhomogeneity]]") {
      section = Section::kTarget;
      draft.targets.emplace_back();
      draft.targets.back().line = line_no;
      continue;
    }
    if (line == "[background]") {
      section = Section::kBackground;
      continue;
    }
    if (line.front() == '[') scene_error(line_no, "unknown table " + line);

    const auto eq = line.find('=');
    if (eq == std::string::npos) scene_error(line_no, "expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));

    Section target = section;
    if (section == Section::kTop && key.rfind("background.", 0) == 0) {
      key = key.substr(11);
      target = Section::kBackground;
    }

    switch (target) {
      case Section::kTop:
        scene_error(line_no, "unknown top-level key " + key);
      case Section::kBackground:
        if (key == "permittivity")
          draft.eps0 = detail::parse_number(value, line_no);
        else if (key == "permeability")
          draft.mu0 = detail::parse_number(value, line_no);
        else
          scene_error(line_no, "unknown key background." + key);
        break;
      case Section::kTarget: {
        auto& t = draft.targets.back();
        if (key == "location")
          t.location = detail::parse_pair(value, line_no);
        else if (key == "radius")
          t.radius = detail::parse_number(value, line_no);
        else if (key == "permittivity")
          t.permittivity = detail::parse_number(value, line_no);
        else if (key == "permeability")
          t.permeability = detail::parse_number(value, line_no);
        else if (key == "shape_area")
          t.shape_area = detail::parse_number(value, line_no);
        else
          scene_error(line_no, "unknown inhomogeneity key " + key);
        break;
      }
    }
  }

  if (draft.targets.empty()) throw FormatError("scene file has no [[inhomogeneity]] blocks");
  std::vector<Inhomogeneity> targets;
  for (const auto& t : draft.targets) {
    if (!t.location) scene_error(t.line, "inhomogeneity missing location");
    if (!t.radius) scene_error(t.line, "inhomogeneity missing radius");
    if (!t.permittivity) scene_error(t.line, "inhomogeneity missing permittivity");
    if (!t.permeability) scene_error(t.line, "inhomogeneity missing permeability");
    try {
      targets.emplace_back(*t.location, *t.radius, *t.permittivity, *t.permeability,
                           t.shape_area.value_or(std::numbers::pi));
    } catch (const InvalidArgument& e) {
      scene_error(t.line, e.what());
    }
  }
  try {
    return SceneConfig(std::move(targets), draft.eps0.value_or(1.0), draft.mu0.value_or(1.0));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("scene file: ") + e.what());
  }
}

inline void write_scene(std::ostream& os, const SceneConfig& scene) {
  detail::set_float_format(os);
  os << "[background]\npermittivity = " << scene.background_permittivity()
     << "\npermeability = " << scene.background_permeability() << '\n';
  for (const auto& t : scene.inhomogeneities()) {
    os << "\n[[inhomogeneity]]\nlocation = [" << t.location().x << ", " << t.location().y
       << "]\nradius = " << t.radius() << "\npermittivity = " << t.permittivity()
       << "\npermeability = " << t.permeability() << "\nshape_area = " << t.shape_area() << '\n';
  }
}

}  // namespace submig::io
