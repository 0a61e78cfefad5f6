#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planar_em/geometry.hpp"

namespace pem {

struct GridSpec {
  double dx_mm = 0.2, dy_mm = 0.2, dz_mm = 0.127;
  int padding_cells = 12;  // air buffer per side
  int pml_cells = 10;      // absorbing layer per side (0 = closed PEC box)
  double max_cells = 4.0e8;

  static GridSpec preset_default();
  static GridSpec preset_coarse();
  static GridSpec preset_fine();
  static GridSpec preset_smoke();
  static GridSpec preset(const std::string& name);

  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct PortLocation {
  int id = 1;
  int i = 0, j = 0;  // Ez edge column at node (i, j)
  int k0 = 0, k1 = 0;  // edge k range [k0, k1)
  int polarity = +1;
  double impedance_ohm = 50.0;
};

// Yee-grid material description. Cells are (nx, ny, nz) with k fastest.
// Edge flag arrays mark tangential-E edges forced to zero (PEC sheets).
struct MaterialGrid {
  int nx = 0, ny = 0, nz = 0;
  double dx = 0.0, dy = 0.0, dz = 0.0;  // metres
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;  // node (0,0,0), board frame, metres
  int padding_cells = 0, pml_cells = 0;
  int k_ground = 0, k_top = 0;  // node-plane indices of the metal layers
  double eps_substrate = 1.0;

  std::vector<float> eps_r;   // per cell
  std::vector<float> sigma;   // per cell, S/m
  std::vector<uint8_t> pec_ex;  // (nx,   ny+1, nz+1)
  std::vector<uint8_t> pec_ey;  // (nx+1, ny,   nz+1)
  std::vector<PortLocation> ports;
  uint64_t digest = 0;

  size_t cell(size_t i, size_t j, size_t k) const {
    return (i * ny + j) * nz + k;
  }
  size_t ex(size_t i, size_t j, size_t k) const {
    return (i * (ny + 1) + j) * (nz + 1) + k;
  }
  size_t ey(size_t i, size_t j, size_t k) const {
    return (i * static_cast<size_t>(ny) + j) * (nz + 1) + k;
  }
  size_t total_cells() const {
    return static_cast<size_t>(nx) * ny * nz;
  }
  long flagged_edge_count() const;

  // Metal area estimate on a layer plane from the flag set: cell faces whose
  // four bounding edges are all flagged. mm^2.
  double flagged_area_mm2(int k_plane) const;
};

// Rasterizes a layout. Metal polygons become PEC edge flags on their layer
// plane; substrate cells get eps_r and a conductivity derived from the loss
// tangent at the band-centre reference frequency.
MaterialGrid voxelize(const Layout& layout, const GridSpec& spec);

// Same layout on a factor-refined grid.
MaterialGrid convergence_refine(const Layout& layout, const GridSpec& spec,
                                double factor);

}  // namespace pem
