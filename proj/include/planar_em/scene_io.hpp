#pragma once

#include <string>

#include "planar_em/geometry.hpp"

namespace pem {

// Plain-text scene format, 6 decimal places, round-trip stable.
// See docs/scene_format.md for the grammar.
std::string serialize_scene(const Layout& layout);
Layout parse_scene(const std::string& text);

void write_scene(const std::string& path, const Layout& layout);
Layout read_scene(const std::string& path);

}  // namespace pem
