#include "landcore/render.hpp"

#include "landcore/csv.hpp"
#include "landcore/error.hpp"

#include <algorithm>

namespace landcore {

Viewport::Viewport(const Box2& data) : data_(data) {
  double span = std::max(data.width(), data.height());
  if (!(span > 0.0)) span = 1.0;
  scale_ = (kWidth - 2.0 * kMargin) / span;
  height_ = data.height() * scale_ + 2.0 * kMargin;
}

Point2 Viewport::to_screen(Point2 p) const noexcept {
  return {kMargin + (p.x - data_.min.x) * scale_, height_ - kMargin - (p.y - data_.min.y) * scale_};
}

Point2 Viewport::to_data(Point2 s) const noexcept {
  return {data_.min.x + (s.x - kMargin) / scale_, data_.min.y + (height_ - kMargin - s.y) / scale_};
}

Box2 scene_extent(const Scene& scene) {
  if (scene.extent) return *scene.extent;
  std::optional<Box2> box;
  const auto add = [&](const Box2& b) {
    if (box) box->expand(b);
    else box = b;
  };
  for (const Polygon2& p : scene.polygons) add(bbox(p));
  for (const Polyline2& l : scene.polylines) add(bbox(l));
  if (!scene.path.empty()) add(bbox(scene.path));
  for (const Stratum& s : scene.strata)
    for (const Box2& b : s.blocks) add(b);
  if (!box) throw ValidationError("scene is empty");
  return *box;
}

namespace {

const char* stratum_colour(StratumLevel level) {
  switch (level) {
  case StratumLevel::high: return "#1a9641";
  case StratumLevel::medium: return "#a6d96a";
  case StratumLevel::low: return "#fdae61";
  }
  return "#cccccc";
}

void append_point(std::string& out, const Viewport& vp, Point2 p) {
  const Point2 s = vp.to_screen(p);
  out += format_number(s.x);
  out += ',';
  out += format_number(s.y);
}

void append_ring(std::string& out, const Viewport& vp, std::span<const Point2> ring) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    out += i == 0 ? "M" : " L";
    append_point(out, vp, ring[i]);
  }
  out += " Z";
}

} // namespace

std::string render_svg(const Scene& scene) {
  if (scene.empty()) throw ValidationError("scene is empty");
  const Viewport vp(scene_extent(scene));

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         format_number(vp.width()) + "\" height=\"" + format_number(vp.height()) +
         "\" viewBox=\"0 0 " + format_number(vp.width()) + " " + format_number(vp.height()) + "\">\n";

  if (!scene.strata.empty()) {
    out += "<g id=\"strata\" stroke=\"none\" fill-opacity=\"0.5\">\n";
    for (const Stratum& s : scene.strata)
      for (const Box2& b : s.blocks) {
        const Point2 tl = vp.to_screen({b.min.x, b.max.y});
        const Point2 br = vp.to_screen({b.max.x, b.min.y});
        out += "<rect class=\"" + to_string(s.level) + "\" x=\"" + format_number(tl.x) + "\" y=\"" +
               format_number(tl.y) + "\" width=\"" + format_number(br.x - tl.x) + "\" height=\"" +
               format_number(br.y - tl.y) + "\" fill=\"" + stratum_colour(s.level) + "\"/>\n";
      }
    out += "</g>\n";
  }
  if (!scene.polygons.empty()) {
    out += "<g id=\"polygons\" fill=\"#dddddd\" fill-opacity=\"0.6\" stroke=\"#333333\" "
           "stroke-width=\"1\" fill-rule=\"evenodd\">\n";
    for (const Polygon2& p : scene.polygons) {
      out += "<path d=\"";
      append_ring(out, vp, p.outer().vertices());
      for (const Ring& island : p.islands()) {
        out += ' ';
        append_ring(out, vp, island.vertices());
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  if (!scene.polylines.empty()) {
    out += "<g id=\"polylines\" fill=\"none\" stroke=\"#2b83ba\" stroke-width=\"1.5\">\n";
    for (const Polyline2& l : scene.polylines) {
      out += "<polyline points=\"";
      const auto v = l.vertices();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        append_point(out, vp, v[i]);
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  if (!scene.path.empty()) {
    out += "<polyline id=\"path\" fill=\"none\" stroke=\"#d7191c\" stroke-width=\"2.5\" points=\"";
    for (std::size_t i = 0; i < scene.path.size(); ++i) {
      if (i) out += ' ';
      append_point(out, vp, scene.path[i]);
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

} // namespace landcore
