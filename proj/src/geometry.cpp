#include "planar_em/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace bg = boost::geometry;

namespace pem {

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPoly = bg::model::polygon<BPoint>;
using BMulti = bg::model::multi_polygon<BPoly>;

bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d) {
  auto cross = [](const Point& o, const Point& p, const Point& q) {
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
  };
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool polygon_is_simple(const std::vector<Point>& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const Point& c = poly[j];
      const Point& d = poly[(j + 1) % n];
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

// Even-odd with inclusive boundary.
bool point_in_polygon(const Point& p, const std::vector<Point>& poly) {
  const size_t n = poly.size();
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[j];
    const Point& b = poly[i];
    const double minx = std::min(a.x, b.x), maxx = std::max(a.x, b.x);
    const double miny = std::min(a.y, b.y), maxy = std::max(a.y, b.y);
    if (p.x >= minx && p.x <= maxx && p.y >= miny && p.y <= maxy) {
      const double c =
          (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      if (std::abs(c) < 1e-12 * (1.0 + maxx + maxy)) return true;  // on edge
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

std::vector<Point> rect_poly(double x0, double y0, double x1, double y1) {
  return {{snap_mm(x0), snap_mm(y0)},
          {snap_mm(x1), snap_mm(y0)},
          {snap_mm(x1), snap_mm(y1)},
          {snap_mm(x0), snap_mm(y1)}};
}

LayerShape make_rect(Layer layer, const std::string& name, double x0,
                     double y0, double x1, double y1) {
  LayerShape s;
  s.layer = layer;
  s.name = name;
  s.polygon = rect_poly(x0, y0, x1, y1);
  return s;
}

}  // namespace

double snap_mm(double v) { return std::round(v * 1e6) / 1e6; }

const char* layer_name(Layer layer) {
  switch (layer) {
    case Layer::TopMetal: return "TOP_METAL";
    case Layer::Ground: return "GROUND";
    case Layer::EbgPatch: return "EBG_PATCH";
  }
  return "?";
}

Layer layer_from_name(const std::string& name) {
  if (name == "TOP_METAL") return Layer::TopMetal;
  if (name == "GROUND") return Layer::Ground;
  if (name == "EBG_PATCH") return Layer::EbgPatch;
  throw GeometryError("unknown layer name: " + name);
}

void StackUp::validate() const {
  if (!(eps_r >= 1.0)) throw GeometryError("stackup: eps_r must be >= 1");
  if (!(loss_tangent >= 0.0))
    throw GeometryError("stackup: loss_tangent must be >= 0");
  if (!(thickness_mm > 0.0))
    throw GeometryError("stackup: thickness must be > 0");
}

Rect LayerShape::bbox() const {
  Rect r{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
         std::numeric_limits<double>::lowest(),
         std::numeric_limits<double>::lowest()};
  for (const Point& p : polygon) {
    r.x0 = std::min(r.x0, p.x);
    r.y0 = std::min(r.y0, p.y);
    r.x1 = std::max(r.x1, p.x);
    r.y1 = std::max(r.y1, p.y);
  }
  return r;
}

double LayerShape::signed_area_mm2() const {
  double a = 0.0;
  const size_t n = polygon.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    a += polygon[j].x * polygon[i].y - polygon[i].x * polygon[j].y;
  }
  return 0.5 * a;
}

std::vector<const LayerShape*> Layout::shapes_on(Layer layer) const {
  std::vector<const LayerShape*> out;
  for (const auto& s : shapes)
    if (s.layer == layer) out.push_back(&s);
  return out;
}

const LayerShape* Layout::find_shape(const std::string& name) const {
  for (const auto& s : shapes)
    if (s.name == name) return &s;
  return nullptr;
}

void Layout::validate() const {
  stackup.validate();
  if (ports.empty()) throw GeometryError("layout: needs at least one port");
  for (const auto& s : shapes) {
    if (s.polygon.size() < 3)
      throw GeometryError("shape '" + s.name + "': fewer than 3 vertices");
    for (const Point& p : s.polygon) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw GeometryError("shape '" + s.name + "': non-finite vertex");
    }
    if (!polygon_is_simple(s.polygon))
      throw GeometryError("shape '" + s.name + "': self-intersecting polygon");
    const Rect bb = s.bbox();
    const double tol = 1e-9;
    if (bb.x0 < bounds.x0 - tol || bb.y0 < bounds.y0 - tol ||
        bb.x1 > bounds.x1 + tol || bb.y1 > bounds.y1 + tol) {
      throw GeometryError("shape '" + s.name + "' extends outside bounds");
    }
  }
  for (const auto& port : ports) {
    bool on_top = false, on_gnd = false;
    for (const auto& s : shapes) {
      if (!point_in_polygon(port.position, s.polygon)) continue;
      if (s.layer == Layer::TopMetal) on_top = true;
      if (s.layer == Layer::Ground) on_gnd = true;
    }
    if (!on_top || !on_gnd) {
      throw GeometryError("port " + std::to_string(port.id) +
                          ": pin column must connect TOP_METAL to GROUND");
    }
    if (port.impedance_ohm <= 0.0)
      throw GeometryError("port " + std::to_string(port.id) +
                          ": impedance must be > 0");
  }
}

double SirAntennaParams::cascade_length_mm() const {
  return l1 + l2 + l3 + l4 + l5 + l6 + l7 + lp;
}

double SirAntennaParams::resolved_board_l() const {
  return board_l > 0.0 ? board_l : snap_mm(cascade_length_mm() + 2.0);
}

void SirAntennaParams::validate() const {
  const double dims[] = {l1, l2, l3, l4, l5, l6, l7, lp,
                         w1, w2, w3, w4, w5, w6, w7, w8, board_w};
  for (double d : dims) {
    if (!(d > 0.0) || !std::isfinite(d))
      throw GeometryError("antenna params: all dimensions must be > 0");
  }
  if (port_inset_mm <= 0.0 || port_inset_mm >= l1)
    throw GeometryError("antenna params: port inset must sit inside the feed");
  const double wmax = std::max({w1, w2, w3, w4, w5, w6, w7, w8});
  if (wmax > board_w)
    throw GeometryError("antenna params: widest section exceeds the board");
  if (board_l > 0.0 && cascade_length_mm() > board_l)
    throw GeometryError("antenna params: cascade longer than the board");
}

void MimoParams::validate() const {
  if (!(element_spacing_mm > 0.0))
    throw GeometryError("mimo params: spacing must be > 0");
  if (!(ground_len_mm > 0.0))
    throw GeometryError("mimo params: ground strip length must be > 0");
  if (!(bend.corner_y_mm > 0.0))
    throw GeometryError("mimo params: bend corner must be above the edge");
}

void EbgParams::validate() const {
  if (!(a > 0.0 && b > 0.0 && t1 > 0.0 && t2 > 0.0))
    throw GeometryError("ebg params: a, b, t1, t2 must be > 0");
  if (n_rows < 0 || n_cols < 0)
    throw GeometryError("ebg params: counts must be >= 0");
}

std::vector<Point> mirror_polygon(const std::vector<Point>& poly, double axis) {
  std::vector<Point> out(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[poly.size() - 1 - i];
    out[i] = Point{snap_mm(2.0 * axis - p.x), p.y};
  }
  return out;
}

double mirror_axis_x(const Layout& layout) {
  return snap_mm(0.5 * (layout.bounds.x0 + layout.bounds.x1));
}

namespace {

// Emits the canonical SIR chain centred on x = cx, starting at y = y0:
// sections (l_i, w_i) for the requested index range, stacked in +y.
void emit_cascade(std::vector<LayerShape>& shapes, const SirAntennaParams& p,
                  const std::string& prefix, double cx, double y0,
                  int first_section) {
  const double lens[] = {p.l1, p.l2, p.l3, p.l4, p.l5, p.l6, p.l7, p.lp};
  const double wids[] = {p.w1, p.w2, p.w3, p.w4, p.w5, p.w6, p.w7, p.w8};
  double y = y0;
  for (int i = first_section; i < 8; ++i) {
    const double hw = wids[i] / 2.0;
    std::string name = prefix + (i == 0   ? "feed"
                                 : i == 7 ? "rad"
                                          : "seg" + std::to_string(i + 1));
    shapes.push_back(make_rect(Layer::TopMetal, name, cx - hw, y, cx + hw,
                               y + lens[i]));
    y += lens[i];
  }
}

}  // namespace

Layout build_single(const SirAntennaParams& params) {
  params.validate();
  Layout layout;
  const double bl = params.resolved_board_l();
  layout.bounds = Rect{0.0, 0.0, snap_mm(params.board_w), snap_mm(bl)};
  layout.shapes.push_back(
      make_rect(Layer::Ground, "gnd", 0.0, 0.0, params.board_w, bl));
  const double cx = params.board_w / 2.0;
  emit_cascade(layout.shapes, params, "a1_", cx, 0.0, 0);

  PortSpec port;
  port.id = 1;
  port.position = Point{snap_mm(cx), snap_mm(params.port_inset_mm)};
  layout.ports.push_back(port);
  layout.validate();
  return layout;
}

Layout build_mimo(const SirAntennaParams& params, const MimoParams& mimo) {
  params.validate();
  mimo.validate();

  const double spacing = mimo.element_spacing_mm;
  const double board_w = snap_mm(spacing + params.board_w);
  const double mid = board_w / 2.0;
  const double cx1 = mid - spacing / 2.0;

  const double wmax = std::max({params.w1, params.w2, params.w3, params.w4,
                                params.w5, params.w6, params.w7, params.w8});
  if (spacing <= wmax)
    throw GeometryError("mimo: spacing too small for the element footprint");

  const double w1 = params.w1;
  const double xp = mimo.port_inset_mm;
  const double yc = mimo.bend.corner_y_mm;
  const double run_h = cx1 - xp;  // centreline, port to element axis
  if (run_h <= 0.0)
    throw GeometryError("mimo: spacing too small for the feed bend");
  const double run_v = params.l1 - run_h;  // remaining feed length, upward
  if (run_v < 0.0)
    throw GeometryError("mimo: feed line l1 too short to reach the bend");
  const double y_casc = snap_mm(yc + run_v);

  Layout layout;
  const double casc_top =
      y_casc + (params.cascade_length_mm() - params.l1);
  const double board_l = snap_mm(casc_top + 2.0);
  layout.bounds = Rect{0.0, 0.0, board_w, board_l};

  layout.shapes.push_back(make_rect(Layer::Ground, "gnd", 0.0, 0.0, board_w,
                                    mimo.ground_len_mm));

  std::vector<LayerShape> elem;
  if (mimo.bend.mitered) {
    // Chamfer the outer corner by half a line width.
    const double m = w1 / 2.0;
    elem.push_back(make_rect(Layer::TopMetal, "p1_feed_h", xp - w1 / 2.0,
                             yc - w1 / 2.0, cx1 - w1 / 2.0, yc + w1 / 2.0));
    elem.push_back(make_rect(Layer::TopMetal, "p1_feed_v", cx1 - w1 / 2.0,
                             yc + w1 / 2.0, cx1 + w1 / 2.0, y_casc));
    LayerShape corner;
    corner.layer = Layer::TopMetal;
    corner.name = "p1_bend";
    corner.polygon = {{snap_mm(cx1 - w1 / 2.0), snap_mm(yc - w1 / 2.0)},
                      {snap_mm(cx1 + w1 / 2.0 - m), snap_mm(yc - w1 / 2.0)},
                      {snap_mm(cx1 + w1 / 2.0), snap_mm(yc - w1 / 2.0 + m)},
                      {snap_mm(cx1 + w1 / 2.0), snap_mm(yc + w1 / 2.0)},
                      {snap_mm(cx1 - w1 / 2.0), snap_mm(yc + w1 / 2.0)}};
    elem.push_back(corner);
  } else {
    elem.push_back(make_rect(Layer::TopMetal, "p1_feed_h", xp - w1 / 2.0,
                             yc - w1 / 2.0, cx1 + w1 / 2.0, yc + w1 / 2.0));
    elem.push_back(make_rect(Layer::TopMetal, "p1_feed_v", cx1 - w1 / 2.0,
                             yc - w1 / 2.0, cx1 + w1 / 2.0, y_casc));
  }
  emit_cascade(elem, params, "p1_", cx1, y_casc, 1);

  const double axis = mid;
  for (const LayerShape& s : elem) {
    layout.shapes.push_back(s);
  }
  for (const LayerShape& s : elem) {
    LayerShape m = s;
    m.name = "p2_" + s.name.substr(3);
    m.polygon = mirror_polygon(s.polygon, axis);
    layout.shapes.push_back(m);
  }

  PortSpec p1;
  p1.id = 1;
  p1.position = Point{snap_mm(xp), snap_mm(yc)};
  PortSpec p2;
  p2.id = 2;
  p2.position = Point{snap_mm(2.0 * axis - xp), snap_mm(yc)};
  layout.ports = {p1, p2};
  if (yc + params.w1 / 2.0 > mimo.ground_len_mm)
    throw GeometryError("mimo: feed bend must run over the ground strip");
  layout.validate();
  return layout;
}

Layout add_ebg(const Layout& layout, const EbgParams& ebg) {
  ebg.validate();
  if (ebg.n_rows == 0) return layout;
  if (layout.ports.size() < 2)
    throw GeometryError("ebg: loading applies to MIMO layouts");

  const LayerShape* gnd = nullptr;
  for (const auto& s : layout.shapes)
    if (s.layer == Layer::Ground) gnd = &s;
  if (!gnd) throw GeometryError("ebg: layout has no ground shape");
  const Rect gbox = gnd->bbox();

  // Inter-element region: between the inner edges of the two cascades.
  double inner_lo = layout.bounds.x0, inner_hi = layout.bounds.x1;
  const double axis = mirror_axis_x(layout);
  for (const auto& s : layout.shapes) {
    if (s.layer != Layer::TopMetal) continue;
    const Rect bb = s.bbox();
    if (bb.y1 <= gbox.y1) continue;  // feed region, not the radiators
    if (bb.x1 < axis) inner_lo = std::max(inner_lo, bb.x1);
    if (bb.x0 > axis) inner_hi = std::min(inner_hi, bb.x0);
  }
  const double gap = inner_hi - inner_lo;

  int n_cols = ebg.n_cols;
  if (n_cols == 0) {
    n_cols = static_cast<int>(std::floor((gap + ebg.t1) / (ebg.a + ebg.t1)));
    if (n_cols < 1)
      throw GeometryError("ebg: inter-element region too small for one cell");
  }

  const double span_x = n_cols * ebg.a + (n_cols - 1) * ebg.t1;
  const double x_first = axis - span_x / 2.0;
  const double y_first = gbox.y1 + ebg.offset_y_mm;

  Layout out = layout;
  for (int r = 0; r < ebg.n_rows; ++r) {
    for (int c = 0; c < n_cols; ++c) {
      const double x0 = x_first + c * (ebg.a + ebg.t1);
      const double y0 = y_first + r * (ebg.b + ebg.t2);
      LayerShape patch = make_rect(
          Layer::EbgPatch, "ebg_r" + std::to_string(r) + "c" + std::to_string(c),
          x0, y0, x0 + ebg.a, y0 + ebg.b);
      const Rect bb = patch.bbox();
      if (bb.x0 < gbox.x0 - 1e-9 || bb.x1 > gbox.x1 + 1e-9)
        throw GeometryError("ebg: array exceeds the ground extent");
      if (bb.y1 > out.bounds.y1 + 1e-9)
        throw GeometryError("ebg: array exceeds the board bounds");
      out.shapes.push_back(std::move(patch));
    }
  }
  out.validate();
  return out;
}

double layout_area(const Layout& layout, Layer layer) {
  BMulti acc;
  for (const auto& s : layout.shapes) {
    if (s.layer != layer) continue;
    BPoly poly;
    for (const Point& p : s.polygon) bg::append(poly.outer(), BPoint(p.x, p.y));
    bg::append(poly.outer(), BPoint(s.polygon[0].x, s.polygon[0].y));
    bg::correct(poly);
    BMulti merged;
    bg::union_(acc, poly, merged);
    acc = std::move(merged);
  }
  return bg::area(acc);
}

}  // namespace pem
