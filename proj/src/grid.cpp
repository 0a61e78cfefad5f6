#include "planar_em/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "planar_em/constants.hpp"
#include "planar_em/errors.hpp"

namespace pem {

namespace {

// All point classification runs on a half-nanometre integer lattice so that
// flagging is exact, vertex-order independent and mirror symmetric.
using i64 = long long;

i64 to_lattice(double mm) { return llround(mm * 2e6); }

struct IntPoly {
  std::vector<i64> xs, ys;
  i64 bx0, by0, bx1, by1;
};

IntPoly to_int_poly(const std::vector<Point>& poly) {
  IntPoly p;
  p.xs.reserve(poly.size());
  p.ys.reserve(poly.size());
  for (const Point& v : poly) {
    p.xs.push_back(to_lattice(v.x));
    p.ys.push_back(to_lattice(v.y));
  }
  p.bx0 = *std::min_element(p.xs.begin(), p.xs.end());
  p.bx1 = *std::max_element(p.xs.begin(), p.xs.end());
  p.by0 = *std::min_element(p.ys.begin(), p.ys.end());
  p.by1 = *std::max_element(p.ys.begin(), p.ys.end());
  return p;
}

// Even-odd inclusive-boundary test, exact integer arithmetic.
bool inside(const IntPoly& p, i64 px, i64 py) {
  if (px < p.bx0 || px > p.bx1 || py < p.by0 || py > p.by1) return false;
  const size_t n = p.xs.size();
  bool in = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const i64 ax = p.xs[j], ay = p.ys[j];
    const i64 bx = p.xs[i], by = p.ys[i];
    const i64 cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    if (cross == 0 && px >= std::min(ax, bx) && px <= std::max(ax, bx) &&
        py >= std::min(ay, by) && py <= std::max(ay, by)) {
      return true;  // on the boundary
    }
    if ((ay > py) != (by > py)) {
      const i64 lhs = (px - ax) * (by - ay);
      const i64 rhs = (py - ay) * (bx - ax);
      if (by > ay ? lhs < rhs : lhs > rhs) in = !in;
    }
  }
  return in;
}

uint64_t fnv1a(const void* data, size_t len, uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

GridSpec GridSpec::preset_default() { return GridSpec{}; }

GridSpec GridSpec::preset_coarse() {
  GridSpec g;
  g.dx_mm = g.dy_mm = 0.4;
  g.dz_mm = 0.254;
  g.padding_cells = 8;
  g.pml_cells = 8;
  return g;
}

GridSpec GridSpec::preset_fine() {
  GridSpec g;
  g.dx_mm = g.dy_mm = 0.1;
  g.dz_mm = 0.0635;
  return g;
}

GridSpec GridSpec::preset_smoke() {
  GridSpec g;
  g.dx_mm = g.dy_mm = 0.8;
  g.dz_mm = 0.254;
  g.padding_cells = 6;
  g.pml_cells = 8;
  return g;
}

GridSpec GridSpec::preset(const std::string& name) {
  if (name == "default") return preset_default();
  if (name == "coarse") return preset_coarse();
  if (name == "fine") return preset_fine();
  if (name == "smoke") return preset_smoke();
  throw UsageError("unknown grid preset '" + name + "'");
}

void GridSpec::validate() const {
  if (!(dx_mm > 0.0 && dy_mm > 0.0 && dz_mm > 0.0))
    throw VoxelError("grid spec: cell sizes must be > 0");
  if (padding_cells < 0) throw VoxelError("grid spec: negative padding");
  if (pml_cells != 0 && pml_cells < 6)
    throw VoxelError("grid spec: pml_cells must be 0 or >= 6");
  if (!(max_cells > 0)) throw VoxelError("grid spec: bad cell guard");
}

long MaterialGrid::flagged_edge_count() const {
  long n = 0;
  for (uint8_t f : pec_ex) n += f;
  for (uint8_t f : pec_ey) n += f;
  return n;
}

double MaterialGrid::flagged_area_mm2(int k_plane) const {
  double cells = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (pec_ex[ex(i, j, k_plane)] && pec_ex[ex(i, j + 1, k_plane)] &&
          pec_ey[ey(i, j, k_plane)] && pec_ey[ey(i + 1, j, k_plane)]) {
        cells += 1.0;
      }
    }
  }
  return cells * (dx * 1e3) * (dy * 1e3);
}

MaterialGrid voxelize(const Layout& layout, const GridSpec& spec) {
  spec.validate();
  layout.validate();

  const double dx = spec.dx_mm, dy = spec.dy_mm, dz = spec.dz_mm;
  const int pad = spec.padding_cells + spec.pml_cells;

  const double bw = layout.bounds.width();
  const double blen = layout.bounds.height();
  const int nbx = std::max(1, static_cast<int>(std::ceil(bw / dx - 1e-9)));
  const int nby = std::max(1, static_cast<int>(std::ceil(blen / dy - 1e-9)));

  int nz_sub = std::max(1, static_cast<int>(std::llround(
                               layout.stackup.thickness_mm / dz)));

  MaterialGrid g;
  g.nx = nbx + 2 * pad;
  g.ny = nby + 2 * pad;
  g.nz = nz_sub + 2 * pad;
  g.dx = dx * 1e-3;
  g.dy = dy * 1e-3;
  g.dz = dz * 1e-3;
  g.x0 = (layout.bounds.x0 - pad * dx) * 1e-3;
  g.y0 = (layout.bounds.y0 - pad * dy) * 1e-3;
  g.z0 = -pad * dz * 1e-3;
  g.padding_cells = spec.padding_cells;
  g.pml_cells = spec.pml_cells;
  g.k_ground = pad;
  g.k_top = pad + nz_sub;
  g.eps_substrate = layout.stackup.eps_r;

  const double total = static_cast<double>(g.nx) * g.ny * g.nz;
  if (total > spec.max_cells) {
    throw ResourceError("voxelize: estimated " + std::to_string(
                            static_cast<long long>(total)) +
                        " cells exceeds the guard of " +
                        std::to_string(static_cast<long long>(spec.max_cells)));
  }

  g.eps_r.assign(g.total_cells(), 1.0f);
  g.sigma.assign(g.total_cells(), 0.0f);
  g.pec_ex.assign(static_cast<size_t>(g.nx) * (g.ny + 1) * (g.nz + 1), 0);
  g.pec_ey.assign(static_cast<size_t>(g.nx + 1) * g.ny * (g.nz + 1), 0);

  // Substrate slab, restricted to the board footprint.
  const double sigma_sub = 2.0 * kPi * kLossRefFreqHz * kEps0 *
                           layout.stackup.eps_r * layout.stackup.loss_tangent;
  const i64 dx_l = to_lattice(dx), dy_l = to_lattice(dy);
  const i64 gx0 = to_lattice(layout.bounds.x0 - pad * dx);
  const i64 gy0 = to_lattice(layout.bounds.y0 - pad * dy);
  const i64 brd_x0 = to_lattice(layout.bounds.x0);
  const i64 brd_x1 = to_lattice(layout.bounds.x1);
  const i64 brd_y0 = to_lattice(layout.bounds.y0);
  const i64 brd_y1 = to_lattice(layout.bounds.y1);

  for (int i = 0; i < g.nx; ++i) {
    const i64 cx = gx0 + i * dx_l + dx_l / 2;
    if (cx < brd_x0 || cx > brd_x1) continue;
    for (int j = 0; j < g.ny; ++j) {
      const i64 cy = gy0 + j * dy_l + dy_l / 2;
      if (cy < brd_y0 || cy > brd_y1) continue;
      for (int k = g.k_ground; k < g.k_top; ++k) {
        const size_t c = g.cell(i, j, k);
        g.eps_r[c] = static_cast<float>(layout.stackup.eps_r);
        g.sigma[c] = static_cast<float>(sigma_sub);
      }
    }
  }

  // Metal sheets: tangential E edges on the layer plane.
  for (const auto& shape : layout.shapes) {
    const int kp = (shape.layer == Layer::TopMetal) ? g.k_top : g.k_ground;
    const IntPoly poly = to_int_poly(shape.polygon);
    long flagged = 0;

    // Ex edges: midpoint ((i+1/2)dx, j dy).
    {
      const int i_lo = std::max<int>(0, (poly.bx0 - gx0) / dx_l - 2);
      const int i_hi = std::min<int>(g.nx - 1, (poly.bx1 - gx0) / dx_l + 2);
      const int j_lo = std::max<int>(0, (poly.by0 - gy0) / dy_l - 2);
      const int j_hi = std::min<int>(g.ny, (poly.by1 - gy0) / dy_l + 2);
      for (int i = i_lo; i <= i_hi; ++i) {
        const i64 mx = gx0 + i * dx_l + dx_l / 2;
        for (int j = j_lo; j <= j_hi; ++j) {
          const i64 my = gy0 + j * dy_l;
          if (inside(poly, mx, my)) {
            g.pec_ex[g.ex(i, j, kp)] = 1;
            ++flagged;
          }
        }
      }
    }
    // Ey edges: midpoint (i dx, (j+1/2)dy).
    {
      const int i_lo = std::max<int>(0, (poly.bx0 - gx0) / dx_l - 2);
      const int i_hi = std::min<int>(g.nx, (poly.bx1 - gx0) / dx_l + 2);
      const int j_lo = std::max<int>(0, (poly.by0 - gy0) / dy_l - 2);
      const int j_hi = std::min<int>(g.ny - 1, (poly.by1 - gy0) / dy_l + 2);
      for (int i = i_lo; i <= i_hi; ++i) {
        const i64 mx = gx0 + i * dx_l;
        for (int j = j_lo; j <= j_hi; ++j) {
          const i64 my = gy0 + j * dy_l + dy_l / 2;
          if (inside(poly, mx, my)) {
            g.pec_ey[g.ey(i, j, kp)] = 1;
            ++flagged;
          }
        }
      }
    }
    if (flagged == 0) {
      throw VoxelError("voxelize: shape '" + shape.name +
                       "' is under-resolved (no flagged edges) at dx=" +
                       std::to_string(dx) + " mm");
    }
  }

  // Ports: nearest node column.
  for (const auto& p : layout.ports) {
    PortLocation loc;
    loc.id = p.id;
    loc.polarity = p.polarity;
    loc.impedance_ohm = p.impedance_ohm;
    loc.i = static_cast<int>(llround((p.position.x - layout.bounds.x0) / dx)) +
            pad;
    loc.j = static_cast<int>(llround((p.position.y - layout.bounds.y0) / dy)) +
            pad;
    loc.k0 = g.k_ground;
    loc.k1 = g.k_top;
    if (loc.i < 1 || loc.i >= g.nx || loc.j < 1 || loc.j >= g.ny)
      throw VoxelError("voxelize: port " + std::to_string(p.id) +
                       " outside the grid");
    const bool top_metal =
        g.pec_ex[g.ex(loc.i, loc.j, g.k_top)] ||
        g.pec_ex[g.ex(loc.i - 1, loc.j, g.k_top)] ||
        g.pec_ey[g.ey(loc.i, loc.j, g.k_top)] ||
        g.pec_ey[g.ey(loc.i, loc.j - 1, g.k_top)];
    const bool gnd_metal =
        g.pec_ex[g.ex(loc.i, loc.j, g.k_ground)] ||
        g.pec_ex[g.ex(loc.i - 1, loc.j, g.k_ground)] ||
        g.pec_ey[g.ey(loc.i, loc.j, g.k_ground)] ||
        g.pec_ey[g.ey(loc.i, loc.j - 1, g.k_ground)];
    if (!top_metal || !gnd_metal)
      throw VoxelError("voxelize: port " + std::to_string(p.id) +
                       " column does not connect top metal to ground");
    g.ports.push_back(loc);
  }

  uint64_t h = 1469598103934665603ULL;
  h = fnv1a(&g.nx, sizeof(g.nx), h);
  h = fnv1a(&g.ny, sizeof(g.ny), h);
  h = fnv1a(&g.nz, sizeof(g.nz), h);
  h = fnv1a(g.pec_ex.data(), g.pec_ex.size(), h);
  h = fnv1a(g.pec_ey.data(), g.pec_ey.size(), h);
  h = fnv1a(g.eps_r.data(), g.eps_r.size() * sizeof(float), h);
  g.digest = h;
  return g;
}

MaterialGrid convergence_refine(const Layout& layout, const GridSpec& spec,
                                double factor) {
  if (!(factor >= 1.0))
    throw VoxelError("convergence_refine: factor must be >= 1");
  GridSpec fine = spec;
  fine.dx_mm /= factor;
  fine.dy_mm /= factor;
  fine.dz_mm /= factor;
  return voxelize(layout, fine);
}

}  // namespace pem
