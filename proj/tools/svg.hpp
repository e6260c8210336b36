#pragma once

#include "hyperrefl/tessellation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperrefl::cli {

struct SvgOverlay {
  std::optional<poincare::ConeNbhd> nbhd;
  std::vector<hyperboloid::Hyperplane> lines;
  std::optional<tessellation::Tile> highlight;
};

struct SvgOptions {
  int pixels = 1024;  // width and height attributes
  std::string title;
};

/// Fill colour for a reflection length; lengths above 9 reuse the palette
/// and are drawn hatched.
std::string lr_colour(int l_r);

/// SVG path data for a planar tile outline (geodesic arcs plus ideal arcs).
std::string tile_path(const tessellation::Tile& t, int pixels);

std::string render_tessellation(const std::vector<tessellation::Tile>& tiles, const SvgOptions& opts,
                                const SvgOverlay& overlay = {});

}  // namespace hyperrefl::cli
