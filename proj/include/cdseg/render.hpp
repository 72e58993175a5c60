#pragma once

#include <string>
#include <vector>

#include "cdseg/geometry.hpp"

namespace cdseg {

struct RenderItem {
  DigitalSegment seg;
  bool chord = true;  // overlay the straight chord between the endpoints
};

struct RenderOptions {
  Window bounds;
  int cell = 16;  // pixels per lattice cell

  explicit RenderOptions(Window b) : bounds(b) {}
};

// Deterministic renderings: calling twice with the same input yields the same
// bytes.  Grid cells are filled per segment from a fixed palette, chords are
// drawn between endpoint cell centres, and y grows upwards.
std::string render_svg(const std::vector<RenderItem>& items, const RenderOptions& opt);
std::string render_ppm(const std::vector<RenderItem>& items, const RenderOptions& opt);

// Smallest window containing every point of every item.
Window bounding_window(const std::vector<RenderItem>& items, std::int64_t margin);

}  // namespace cdseg
