#pragma once

// Deterministic SVG figures of the bending construction.
//
// Geometry is written in model coordinates (unit sphere for the construction
// figures, physical sheet units for loxodrome_compare) inside a group whose
// transform applies a uniform scale, the y-up to y-down flip and a 5% margin.
// Element ids are stable so callers can locate and measure geometry; every
// line and polyline carries its model length in a catbend:length attribute.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catbend/catenary.hpp"
#include "catbend/errors.hpp"
#include "catbend/gudermann.hpp"
#include "catbend/projections.hpp"

namespace catbend {

enum class FigureKind {
  kMercatorConstruction,
  kGudermannConstruction,
  kCatenaryConstruction,
  kLoxodromeCompare,
};

inline constexpr std::array<FigureKind, 4> kAllFigureKinds = {
    FigureKind::kMercatorConstruction, FigureKind::kGudermannConstruction,
    FigureKind::kCatenaryConstruction, FigureKind::kLoxodromeCompare};

inline std::string_view to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::kMercatorConstruction: return "mercator_construction";
    case FigureKind::kGudermannConstruction: return "gudermann_construction";
    case FigureKind::kCatenaryConstruction: return "catenary_construction";
    case FigureKind::kLoxodromeCompare: return "loxodrome_compare";
  }
  return "unknown";
}

inline FigureKind parse_figure_kind(std::string_view name) {
  for (const auto kind : kAllFigureKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw SpecError("unknown figure kind '" + std::string(name) + "'");
}

inline constexpr int kMinFigureSamples = 16;

struct FigureSpec {
  FigureKind kind = FigureKind::kMercatorConstruction;
  double phi = kPi / 4;                // construction figures
  std::optional<BendSpec> bend;        // loxodrome_compare
  std::vector<Loxodrome> loxodromes;   // loxodrome_compare
  double width = 800;
  double height = 600;
  int samples = 256;
};

struct SvgElement {
  std::string id;
  std::string tag;
};

struct SvgDocument {
  std::string content;
  std::vector<SvgElement> elements;

  bool contains(std::string_view id) const {
    return std::any_of(elements.begin(), elements.end(),
                       [id](const SvgElement& e) { return e.id == id; });
  }
};

/// Ids every document of the given kind is guaranteed to contain.
inline std::vector<std::string> required_element_ids(FigureKind kind) {
  switch (kind) {
    case FigureKind::kMercatorConstruction:
      return {"unit_circle", "point_N", "point_B", "point_Q", "line_AB",
              "psi_segment"};
    case FigureKind::kGudermannConstruction:
      return {"unit_hyperbola", "point_M", "segment_MP", "segment_OP",
              "segment_AB", "segment_OB"};
    case FigureKind::kCatenaryConstruction:
      return {"unit_hyperbola", "catenary_AC", "segment_AB", "point_A",
              "point_B", "point_C"};
    case FigureKind::kLoxodromeCompare:
      return {"panel_flat", "panel_bent", "map_flat_outline",
              "map_bent_outline", "loxodrome_flat_0", "loxodrome_bent_0"};
  }
  return {};
}

namespace detail {

/// Nine significant digits; never prints "-0".
inline std::string svg_number(double v) {
  if (v == 0) v = 0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

inline double polyline_length(const std::vector<PlanePoint>& pts) {
  double total = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    total += std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  }
  return total;
}

struct Style {
  const char* stroke = "black";
  double width_px = 1.5;
  const char* dash = nullptr;
};

inline constexpr Style kHyperbolaStyle{"#1f4fd8", 2.0};
inline constexpr Style kCatenaryStyle{"#d020c8", 2.5};
inline constexpr Style kLengthStyle{"#1a9a2a", 2.5};
inline constexpr Style kGuideStyle{"#555555", 1.0, "4 3"};
inline constexpr Style kOutlineStyle{"black", 1.5};
inline constexpr Style kLoxodromeStyle{"#d03020", 1.8};
inline constexpr Style kGraticuleStyle{"#aaaaaa", 0.8};

class Panel {
 public:
  void circle(std::string id, PlanePoint centre, double radius, Style style) {
    extend({centre.x - radius, centre.y - radius});
    extend({centre.x + radius, centre.y + radius});
    items_.push_back({Item::kCircle, std::move(id), {centre}, radius, style, {}});
  }

  void polyline(std::string id, std::vector<PlanePoint> pts, Style style) {
    for (const auto& p : pts) extend(p);
    items_.push_back({Item::kPolyline, std::move(id), std::move(pts), 0, style, {}});
  }

  void segment(std::string id, PlanePoint a, PlanePoint b, Style style) {
    extend(a);
    extend(b);
    items_.push_back({Item::kSegment, std::move(id), {a, b}, 0, style, {}});
  }

  void path(std::string id, std::vector<PlanePoint> pts, Style style) {
    for (const auto& p : pts) extend(p);
    items_.push_back({Item::kPath, std::move(id), std::move(pts), 0, style, {}});
  }

  void marker(std::string id, PlanePoint p, std::string label) {
    extend(p);
    items_.push_back({Item::kMarker, std::move(id), {p}, 0, {}, std::move(label)});
  }

  /// Writes the panel as a transformed group fitted into the canvas box
  /// (x0, y0, w, h). Labels go to a separate untransformed stream.
  void emit(std::string_view group_id, double x0, double y0, double w, double h,
            std::string& out, std::string& labels,
            std::vector<SvgElement>& index) const {
    const double bw = std::max(hi_.x - lo_.x, 1e-9);
    const double bh = std::max(hi_.y - lo_.y, 1e-9);
    const double margin = 0.05;
    const double scale = std::min(w * (1 - 2 * margin) / bw,
                                  h * (1 - 2 * margin) / bh);
    const double tx = x0 + w / 2 - scale * (lo_.x + hi_.x) / 2;
    const double ty = y0 + h / 2 + scale * (lo_.y + hi_.y) / 2;

    index.push_back({std::string(group_id), "g"});
    out += "<g id=\"" + std::string(group_id) + "\" transform=\"matrix(" +
           svg_number(scale) + " 0 0 " + svg_number(-scale) + " " +
           svg_number(tx) + " " + svg_number(ty) + ")\">\n";

    for (const auto& item : items_) {
      const std::string stroke = stroke_attrs(item.style, scale);
      switch (item.kind) {
        case Item::kCircle:
          index.push_back({item.id, "circle"});
          out += "<circle id=\"" + item.id + "\" cx=\"" + svg_number(item.pts[0].x) +
                 "\" cy=\"" + svg_number(item.pts[0].y) + "\" r=\"" +
                 svg_number(item.radius) + "\" fill=\"none\"" + stroke + "/>\n";
          break;
        case Item::kSegment:
          index.push_back({item.id, "line"});
          out += "<line id=\"" + item.id + "\" x1=\"" + svg_number(item.pts[0].x) +
                 "\" y1=\"" + svg_number(item.pts[0].y) + "\" x2=\"" +
                 svg_number(item.pts[1].x) + "\" y2=\"" + svg_number(item.pts[1].y) +
                 "\" catbend:length=\"" + svg_number(polyline_length(item.pts)) +
                 "\"" + stroke + "/>\n";
          break;
        case Item::kPolyline: {
          index.push_back({item.id, "polyline"});
          out += "<polyline id=\"" + item.id + "\" points=\"";
          for (std::size_t i = 0; i < item.pts.size(); ++i) {
            if (i) out += ' ';
            out += svg_number(item.pts[i].x) + "," + svg_number(item.pts[i].y);
          }
          out += "\" catbend:length=\"" + svg_number(polyline_length(item.pts)) +
                 "\" fill=\"none\"" + stroke + "/>\n";
          break;
        }
        case Item::kPath: {
          // Consecutive point pairs are separate strokes.
          index.push_back({item.id, "path"});
          out += "<path id=\"" + item.id + "\" d=\"";
          for (std::size_t i = 0; i + 1 < item.pts.size(); i += 2) {
            if (i) out += ' ';
            out += "M" + svg_number(item.pts[i].x) + " " + svg_number(item.pts[i].y) +
                   " L" + svg_number(item.pts[i + 1].x) + " " +
                   svg_number(item.pts[i + 1].y);
          }
          out += "\" fill=\"none\"" + stroke + "/>\n";
          break;
        }
        case Item::kMarker: {
          index.push_back({item.id, "circle"});
          const PlanePoint p = item.pts[0];
          out += "<circle id=\"" + item.id + "\" cx=\"" + svg_number(p.x) +
                 "\" cy=\"" + svg_number(p.y) + "\" r=\"" + svg_number(3 / scale) +
                 "\" fill=\"black\"/>\n";
          const std::string label_id = "label_" + item.id;
          index.push_back({label_id, "text"});
          labels += "<text id=\"" + label_id + "\" x=\"" +
                    svg_number(scale * p.x + tx + 6) + "\" y=\"" +
                    svg_number(-scale * p.y + ty - 6) + "\">" + item.label +
                    "</text>\n";
          break;
        }
      }
    }
    out += "</g>\n";
  }

 private:
  struct Item {
    enum Kind { kCircle, kPolyline, kSegment, kPath, kMarker } kind;
    std::string id;
    std::vector<PlanePoint> pts;
    double radius;
    Style style;
    std::string label;
  };

  static std::string stroke_attrs(const Style& style, double scale) {
    std::string s = " stroke=\"" + std::string(style.stroke) +
                    "\" stroke-width=\"" + svg_number(style.width_px / scale) + "\"";
    if (style.dash) {
      // Dash lengths are in user units, so rescale the pixel pattern.
      double a = 0, b = 0;
      std::sscanf(style.dash, "%lf %lf", &a, &b);
      s += " stroke-dasharray=\"" + svg_number(a / scale) + " " +
           svg_number(b / scale) + "\"";
    }
    return s;
  }

  void extend(PlanePoint p) {
    lo_.x = std::min(lo_.x, p.x);
    lo_.y = std::min(lo_.y, p.y);
    hi_.x = std::max(hi_.x, p.x);
    hi_.y = std::max(hi_.y, p.y);
  }

  std::vector<Item> items_;
  PlanePoint lo_{std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
  PlanePoint hi_{-std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
};

inline std::vector<PlanePoint> sample_curve(double t0, double t1, int n,
                                            auto&& point_at) {
  std::vector<PlanePoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = i + 1 == n ? t1 : t0 + (t1 - t0) * i / (n - 1);
    pts.push_back(point_at(t));
  }
  return pts;
}

inline std::vector<PlanePoint> hyperbola_branch(double psi, int samples) {
  const double reach = psi + 0.3;
  return sample_curve(-reach, reach, samples, [](double t) {
    return PlanePoint{std::cosh(t), std::sinh(t)};
  });
}

// Point N on the sphere, B on the tangent cylinder, Q at the Mercator height.
inline Panel mercator_construction(double phi) {
  const double length = std::tan(phi);
  const double psi = gd_inverse(phi);
  const PlanePoint origin{0, 0}, a{1, 0}, b{1, length}, q{1, psi};
  const PlanePoint n{std::cos(phi), std::sin(phi)};
  const double top = std::max(length, psi) + 0.25;

  Panel panel;
  panel.segment("equator", {-1.2, 0}, {1.2, 0}, kGuideStyle);
  panel.segment("tangent_line", {1, -0.25}, {1, top}, kGuideStyle);
  panel.circle("unit_circle", origin, 1, kOutlineStyle);
  panel.segment("ray_OB", origin, b, kOutlineStyle);
  panel.segment("line_AB", a, b, kLengthStyle);
  panel.segment("psi_segment", a, q, kCatenaryStyle);
  panel.segment("segment_BQ", b, q, kGuideStyle);
  panel.marker("point_O", origin, "O");
  panel.marker("point_N", n, "N");
  panel.marker("point_A", a, "A");
  panel.marker("point_B", b, "B");
  panel.marker("point_Q", q, "Q");
  return panel;
}

// M on the unit hyperbola at hyperbolic measure psi, with |MP| = tan(phi)
// and |OP| = sec(phi) mirrored by AB and OB on the circle side.
inline Panel gudermann_construction(double phi, int samples) {
  const double psi = gd_inverse(phi);
  const PlanePoint origin{0, 0}, a{1, 0}, b{1, std::tan(phi)};
  const PlanePoint m{std::cosh(psi), std::sinh(psi)}, p{std::cosh(psi), 0};

  Panel panel;
  panel.segment("axis_x", {-1.2, 0}, {m.x + 0.3, 0}, kGuideStyle);
  panel.circle("unit_circle", origin, 1, kOutlineStyle);
  panel.polyline("unit_hyperbola", hyperbola_branch(psi, samples), kHyperbolaStyle);
  panel.polyline("angle_phi", sample_curve(0, phi, kMinFigureSamples, [](double t) {
                   return PlanePoint{0.3 * std::cos(t), 0.3 * std::sin(t)};
                 }),
                 kGuideStyle);
  panel.segment("segment_OB", origin, b, kOutlineStyle);
  panel.segment("segment_AB", a, b, kLengthStyle);
  panel.segment("segment_OP", origin, p, kOutlineStyle);
  panel.segment("segment_MP", m, p, kLengthStyle);
  panel.segment("segment_OM", origin, m, kGuideStyle);
  panel.marker("point_O", origin, "O");
  panel.marker("point_A", a, "A");
  panel.marker("point_B", b, "B");
  panel.marker("point_M", m, "M");
  panel.marker("point_P", p, "P");
  return panel;
}

// Horizontal catenary x = cosh(y) sharing its vertex A with the hyperbola.
// Arc AC has the length of the flat segment AB; C projects onto AB at Q.
inline Panel catenary_construction(double phi, int samples) {
  const double psi = gd_inverse(phi);
  const PlanePoint a{1, 0}, b{1, std::tan(phi)}, c{std::cosh(psi), psi}, q{1, psi};
  const auto catenary = [](double y) { return PlanePoint{std::cosh(y), y}; };

  Panel panel;
  panel.polyline("unit_hyperbola", hyperbola_branch(psi, samples), kHyperbolaStyle);
  panel.polyline("catenary_curve",
                 sample_curve(-(psi + 0.3), psi + 0.3, samples, catenary),
                 kGuideStyle);
  panel.polyline("catenary_AC", sample_curve(0, psi, samples, catenary),
                 kCatenaryStyle);
  panel.segment("segment_AB", a, b, kLengthStyle);
  panel.segment("psi_segment", a, q, kOutlineStyle);
  panel.segment("segment_CQ", c, q, kGuideStyle);
  panel.marker("point_A", a, "A");
  panel.marker("point_B", b, "B");
  panel.marker("point_C", c, "C");
  panel.marker("point_Q", q, "Q");
  return panel;
}

inline Loxodrome clip_to_sheet(Loxodrome lox, double alpha) {
  lox.south = std::max(lox.south, -alpha);
  lox.north = std::min(lox.north, alpha);
  if (!(lox.south < lox.north)) {
    throw SpecError("loxodrome does not cross the printed latitude band");
  }
  return lox;
}

inline std::array<Panel, 2> loxodrome_compare(const BendSpec& spec,
                                              const std::vector<Loxodrome>& loxodromes,
                                              int samples) {
  Panel flat, bent;
  double lon_min = 0, lon_max = 0;
  for (std::size_t i = 0; i < loxodromes.size(); ++i) {
    const auto track = loxodrome_points(clip_to_sheet(loxodromes[i], spec.alpha),
                                        static_cast<std::size_t>(samples));
    std::vector<PlanePoint> on_sheet, projected;
    on_sheet.reserve(track.size());
    projected.reserve(track.size());
    for (const auto& g : track) {
      lon_min = std::min(lon_min, g.lon);
      lon_max = std::max(lon_max, g.lon);
      on_sheet.push_back(central_cylindrical_forward(g, spec.radius));
      projected.push_back(bend_map_point(on_sheet.back(), spec));
    }
    flat.polyline("loxodrome_flat_" + std::to_string(i), std::move(on_sheet),
                  kLoxodromeStyle);
    bent.polyline("loxodrome_bent_" + std::to_string(i), std::move(projected),
                  kLoxodromeStyle);
  }

  const double x0 = spec.radius * lon_min;
  const double x1 = spec.radius * lon_max;
  const double top = spec.height / 2;
  const double edge = spec.edge_distance / 2;
  flat.polyline("map_flat_outline",
                {{x0, -top}, {x1, -top}, {x1, top}, {x0, top}, {x0, -top}},
                kOutlineStyle);
  bent.polyline("map_bent_outline",
                {{x0, -edge}, {x1, -edge}, {x1, edge}, {x0, edge}, {x0, -edge}},
                kOutlineStyle);

  // Parallels every 15 degrees inside the sheet.
  std::vector<PlanePoint> flat_grid, bent_grid;
  for (int deg = -75; deg <= 75; deg += 15) {
    const double lat = deg_to_rad(deg);
    if (std::fabs(lat) >= spec.alpha) continue;
    const double y = spec.radius * std::tan(lat);
    const double yb = bend_map_point({0, y}, spec).y;
    flat_grid.insert(flat_grid.end(), {{x0, y}, {x1, y}});
    bent_grid.insert(bent_grid.end(), {{x0, yb}, {x1, yb}});
  }
  flat.path("graticule_flat", std::move(flat_grid), kGraticuleStyle);
  bent.path("graticule_bent", std::move(bent_grid), kGraticuleStyle);
  return {std::move(flat), std::move(bent)};
}

inline void validate(const FigureSpec& spec) {
  if (spec.samples < kMinFigureSamples) {
    throw SpecError("samples must be at least " + std::to_string(kMinFigureSamples));
  }
  if (!(spec.width > 0) || !(spec.height > 0) || !std::isfinite(spec.width) ||
      !std::isfinite(spec.height)) {
    throw SpecError("canvas dimensions must be positive");
  }
  if (spec.kind == FigureKind::kLoxodromeCompare) {
    if (!spec.bend) throw SpecError("loxodrome_compare needs a bend specification");
    if (spec.loxodromes.empty()) throw SpecError("loxodrome_compare needs a loxodrome");
    return;
  }
  if (!std::isfinite(spec.phi) || !(spec.phi > 0) ||
      spec.phi >= kHalfPi - kPoleMargin) {
    throw SpecError("construction figures need 0 < phi < pi/2");
  }
}

}  // namespace detail

inline SvgDocument render_figure(const FigureSpec& spec) {
  detail::validate(spec);

  SvgDocument doc;
  std::string body, labels;
  const std::string kind(to_string(spec.kind));
  try {
    switch (spec.kind) {
      case FigureKind::kMercatorConstruction:
        detail::mercator_construction(spec.phi)
            .emit("construction", 0, 0, spec.width, spec.height, body, labels,
                  doc.elements);
        break;
      case FigureKind::kGudermannConstruction:
        detail::gudermann_construction(spec.phi, spec.samples)
            .emit("construction", 0, 0, spec.width, spec.height, body, labels,
                  doc.elements);
        break;
      case FigureKind::kCatenaryConstruction:
        detail::catenary_construction(spec.phi, spec.samples)
            .emit("construction", 0, 0, spec.width, spec.height, body, labels,
                  doc.elements);
        break;
      case FigureKind::kLoxodromeCompare: {
        const auto panels =
            detail::loxodrome_compare(*spec.bend, spec.loxodromes, spec.samples);
        const double half = spec.width / 2;
        panels[0].emit("panel_flat", 0, 0, half, spec.height, body, labels,
                       doc.elements);
        panels[1].emit("panel_bent", half, 0, half, spec.height, body, labels,
                       doc.elements);
        break;
      }
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(kind + ": " + e.what());
  }

  const std::string w = detail::svg_number(spec.width);
  const std::string h = detail::svg_number(spec.height);
  std::string& out = doc.content;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "xmlns:catbend=\"urn:catbend:figure\" version=\"1.1\" width=\"" +
         w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  out += "<title>" + kind + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h +
         "\" fill=\"white\"/>\n";
  out += body;
  out += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"14\">\n";
  out += labels;
  out += "</g>\n</svg>\n";
  doc.elements.push_back({"labels", "g"});
  return doc;
}

}  // namespace catbend
