#pragma once

#include <string>
#include <vector>

#include "planar_em/errors.hpp"

namespace pem {

enum class Layer { TopMetal, Ground, EbgPatch };

const char* layer_name(Layer layer);
Layer layer_from_name(const std::string& name);

// Board-plane point, millimetres. Builders snap all coordinates to 1e-6 mm
// so that serialization at 6 decimal places is lossless.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(const Point& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct StackUp {
  double eps_r = 3.66;          // Rogers 4350
  double loss_tangent = 0.004;
  double thickness_mm = 0.508;
  bool pec_metal = true;        // zero-thickness PEC sheets
  void validate() const;
  friend bool operator==(const StackUp&, const StackUp&) = default;
};

struct LayerShape {
  Layer layer = Layer::TopMetal;
  std::vector<Point> polygon;   // simple, counter-clockwise or clockwise
  std::string name;             // shape id, used in diagnostics
  Rect bbox() const;
  double signed_area_mm2() const;
  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

// Vertical excitation column between the ground plane and the top metal.
struct PortSpec {
  int id = 1;
  Point position;               // mm, board coordinates
  int polarity = +1;            // +1 = +z
  double impedance_ohm = 50.0;
  friend bool operator==(const PortSpec&, const PortSpec&) = default;
};

struct Layout {
  StackUp stackup;
  std::vector<LayerShape> shapes;
  std::vector<PortSpec> ports;
  Rect bounds;

  std::vector<const LayerShape*> shapes_on(Layer layer) const;
  const LayerShape* find_shape(const std::string& name) const;

  // Enforces: >=1 port, every port over top metal and ground, shapes within
  // bounds, polygons simple and finite. Throws GeometryError.
  void validate() const;

  friend bool operator==(const Layout&, const Layout&) = default;
};

// Table I dimensions; defaults are the published values.
struct SirAntennaParams {
  double l1 = 17.5, l2 = 2.0, l3 = 2.5, l4 = 2.5, l5 = 4.0, l6 = 4.0, l7 = 4.0;
  double lp = 16.3;
  double w1 = 1.07, w2 = 0.4, w3 = 2.8, w4 = 2.265, w5 = 2.5, w6 = 0.5,
         w7 = 0.5, w8 = 0.5;
  double board_w = 36.0;
  double board_l = 0.0;         // <=0: cascade length + 2 mm margin
  double port_inset_mm = 1.0;   // feed-pin distance from the fed board edge

  double cascade_length_mm() const;
  double resolved_board_l() const;
  void validate() const;
  friend bool operator==(const SirAntennaParams&, const SirAntennaParams&) = default;
};

struct BendSpec {
  double corner_y_mm = 2.0;     // centreline height of the horizontal feed run
  bool mitered = false;         // false: square corner
  friend bool operator==(const BendSpec&, const BendSpec&) = default;
};

struct MimoParams {
  double element_spacing_mm = 30.0;  // 0.25 lambda0 at 2.5 GHz
  BendSpec bend;
  double ground_len_mm = 13.0;  // partial ground strip, from the fed edge
  double port_inset_mm = 1.0;   // port distance from the side board edge
  void validate() const;
  friend bool operator==(const MimoParams&, const MimoParams&) = default;
};

// Table II dimensions; defaults are the published values.
struct EbgParams {
  double a = 4.0;               // unit-cell width (x)
  double b = 2.0;               // unit-cell length (y)
  double t1 = 0.5;              // x gap
  double t2 = 0.4;              // y gap
  int n_rows = 1;
  int n_cols = 0;               // 0: fill the inter-element region
  double offset_y_mm = 0.4;     // first row above the ground strip edge
  void validate() const;
  friend bool operator==(const EbgParams&, const EbgParams&) = default;
};

// Single SIR element, straight feed, full ground under the substrate.
Layout build_single(const SirAntennaParams& params);

// Two mirrored elements, bend feeds to the side edges, partial ground strip.
// The layout is mirror symmetric about the vertical mid plane.
Layout build_mimo(const SirAntennaParams& params, const MimoParams& mimo);

// Appends the EBG patch array on the ground-side plane. n_rows == 0 returns
// the input unchanged.
Layout add_ebg(const Layout& layout, const EbgParams& ebg);

// Union metal area on one layer, mm^2.
double layout_area(const Layout& layout, Layer layer);

// Mid plane of a MIMO layout (x = centre of bounds).
double mirror_axis_x(const Layout& layout);

// Reflect a polygon about the vertical line x = axis; coordinates re-snapped
// to 1e-6 mm. Vertex order is reversed so orientation is preserved.
std::vector<Point> mirror_polygon(const std::vector<Point>& poly, double axis);

// Snap a coordinate to the 1e-6 mm lattice used throughout.
double snap_mm(double v);

}  // namespace pem
