#include "cdseg/render.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cdseg {

namespace {

struct Rgb {
  int r, g, b;
};

// fixed palette, cycled by item index
constexpr Rgb kPalette[] = {
    {68, 119, 170}, {238, 102, 119}, {34, 136, 51},
    {204, 187, 68}, {102, 204, 238}, {170, 51, 119},
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

char hex_digit(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

std::string hex_color(Rgb c) {
  std::string out = "#";
  for (int channel : {c.r, c.g, c.b}) {
    out += hex_digit(channel / 16);
    out += hex_digit(channel % 16);
  }
  return out;
}

// pixel column of the cell's left edge; y is flipped so the axis grows upwards
std::int64_t cell_left(const RenderOptions& opt, std::int64_t x) {
  return (x - opt.bounds.lo.x) * opt.cell;
}
std::int64_t cell_top(const RenderOptions& opt, std::int64_t y) {
  return (opt.bounds.hi.y - y) * opt.cell;
}

}  // namespace

Window bounding_window(const std::vector<RenderItem>& items, std::int64_t margin) {
  bool any = false;
  GridPoint lo{0, 0}, hi{0, 0};
  for (const RenderItem& item : items) {
    for (GridPoint p : item.seg.points) {
      if (!any) {
        lo = hi = p;
        any = true;
        continue;
      }
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
    }
  }
  if (!any) throw std::invalid_argument("nothing to render");
  return Window(lo, hi).enlarged(margin);
}

std::string render_svg(const std::vector<RenderItem>& items, const RenderOptions& opt) {
  if (opt.cell <= 0) throw std::invalid_argument("cell size must be positive");
  const std::int64_t width = opt.bounds.width() * opt.cell;
  const std::int64_t height = opt.bounds.height() * opt.cell;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";

  for (std::size_t i = 0; i < items.size(); ++i) {
    out << "<g fill=\"" << hex_color(kPalette[i % kPaletteSize]) << "\">\n";
    for (GridPoint p : items[i].seg.points) {
      if (!opt.bounds.contains(p)) continue;
      out << "<rect x=\"" << cell_left(opt, p.x) << "\" y=\"" << cell_top(opt, p.y)
          << "\" width=\"" << opt.cell << "\" height=\"" << opt.cell << "\"/>\n";
    }
    out << "</g>\n";
  }
  for (const RenderItem& item : items) {
    if (!item.chord || item.seg.points.empty()) continue;
    const GridPoint a = item.seg.front(), b = item.seg.back();
    const std::int64_t half = opt.cell / 2;
    out << "<line x1=\"" << cell_left(opt, a.x) + half << "\" y1=\"" << cell_top(opt, a.y) + half
        << "\" x2=\"" << cell_left(opt, b.x) + half << "\" y2=\"" << cell_top(opt, b.y) + half
        << "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_ppm(const std::vector<RenderItem>& items, const RenderOptions& opt) {
  if (opt.cell <= 0) throw std::invalid_argument("cell size must be positive");
  const std::int64_t width = opt.bounds.width() * opt.cell;
  const std::int64_t height = opt.bounds.height() * opt.cell;
  if (width * height > (std::int64_t{1} << 26))
    throw std::invalid_argument("raster too large; shrink the bounds or the cell size");

  std::vector<Rgb> pixels(static_cast<std::size_t>(width * height), Rgb{255, 255, 255});
  const auto paint = [&](std::int64_t px, std::int64_t py, Rgb c) {
    if (px < 0 || px >= width || py < 0 || py >= height) return;
    pixels[static_cast<std::size_t>(py * width + px)] = c;
  };

  for (std::size_t i = 0; i < items.size(); ++i) {
    const Rgb color = kPalette[i % kPaletteSize];
    for (GridPoint p : items[i].seg.points) {
      if (!opt.bounds.contains(p)) continue;
      const std::int64_t left = cell_left(opt, p.x), top = cell_top(opt, p.y);
      for (std::int64_t dy = 0; dy < opt.cell; ++dy)
        for (std::int64_t dx = 0; dx < opt.cell; ++dx) paint(left + dx, top + dy, color);
    }
  }

  for (const RenderItem& item : items) {
    if (!item.chord || item.seg.points.empty()) continue;
    const GridPoint a = item.seg.front(), b = item.seg.back();
    const std::int64_t half = opt.cell / 2;
    std::int64_t x0 = cell_left(opt, a.x) + half, y0 = cell_top(opt, a.y) + half;
    const std::int64_t x1 = cell_left(opt, b.x) + half, y1 = cell_top(opt, b.y) + half;
    const std::int64_t dx = std::llabs(x1 - x0), dy = -std::llabs(y1 - y0);
    const std::int64_t sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    std::int64_t err = dx + dy;
    for (;;) {
      paint(x0, y0, Rgb{0, 0, 0});
      if (x0 == x1 && y0 == y1) break;
      const std::int64_t doubled = 2 * err;
      if (doubled >= dy) {
        err += dy;
        x0 += sx;
      }
      if (doubled <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }

  std::ostringstream out;
  out << "P3\n" << width << " " << height << "\n255\n";
  for (std::int64_t py = 0; py < height; ++py) {
    for (std::int64_t px = 0; px < width; ++px) {
      const Rgb& c = pixels[static_cast<std::size_t>(py * width + px)];
      if (px > 0) out << " ";
      out << c.r << " " << c.g << " " << c.b;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace cdseg
