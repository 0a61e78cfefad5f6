#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "planar_em/grid.hpp"

namespace pem {

// Worker count for the data-parallel update slabs. Results are bit-identical
// for any value (no cross-slab reductions in the hot loops).
void set_max_workers(int n);
int max_workers();

// Differentiated-Gaussian voltage pulse; spectrum peaks at peak_freq_hz and
// has no DC content.
struct Excitation {
  double peak_freq_hz = 4.25e9;
  double amplitude_v = 1.0;

  double tau_s() const;
  double delay_s() const { return 6.0 * tau_s(); }
  double value(double t) const;
  // Relative spectral magnitude, peak = 1.
  double spectrum_rel(double f) const;
  // -20 dB band edges of the pulse spectrum.
  double band_lo_hz() const;
  double band_hi_hz() const;
};

struct SimConfig {
  double courant_factor = 0.99;
  long max_steps = 200000;
  double termination_db = -50.0;   // trailing-window port energy vs peak
  long termination_window = 1000;  // steps
  Excitation excitation;
  double reference_impedance = 50.0;
  bool pmc_xy_walls = false;  // magnetic side walls (1-D validation runs)

  void validate() const;
  uint64_t digest() const;
};

struct PortRecord {
  double dt = 0.0;
  std::vector<double> v;  // volts, sample n at t = (n+1) dt
  std::vector<double> i;  // amps, time-centred to the same instants
  bool excited = false;
};

enum class MonitorKind { SurfaceCurrent, NtffBox };

struct MonitorSpec {
  MonitorKind kind = MonitorKind::NtffBox;
  Layer layer = Layer::TopMetal;  // SurfaceCurrent only
  std::vector<double> freqs_hz;
};

// Tangential-H phasors just above and below a metal-layer plane,
// cell-centred on the layer grid.
struct SurfaceMonitorData {
  Layer layer = Layer::TopMetal;
  int k_plane = 0;
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;  // metres
  std::vector<double> freqs_hz;
  // [freq][cell], cell = i * ny + j
  std::vector<std::vector<std::complex<double>>> hx_above, hy_above;
  std::vector<std::vector<std::complex<double>>> hx_below, hy_below;
};

// Tangential E/H phasors on the closed box used by the far-field transform.
struct NtffBoxData {
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0, k0 = 0, k1 = 0;  // node planes
  double dx = 0.0, dy = 0.0, dz = 0.0;                 // metres
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;                 // node (0,0,0)
  std::vector<double> freqs_hz;

  struct Face {
    int axis = 0;   // outward normal axis
    int side = 0;   // 0 = low, 1 = high
    int n1 = 0, n2 = 0;  // face cells along (axis+1)%3, (axis+2)%3
    // [freq][cell]; tangential components in cyclic order
    std::vector<std::vector<std::complex<double>>> e1, e2, h1, h2;
  };
  std::vector<Face> faces;  // all six
};

struct RunResult {
  std::vector<PortRecord> ports;  // grid port order
  int excited_port_id = 0;
  std::vector<SurfaceMonitorData> surface_monitors;
  std::vector<NtffBoxData> ntff_boxes;
  long steps = 0;
  bool decayed = false;  // termination criterion reached before max_steps
  double dt = 0.0;
  double band_lo_hz = 0.0, band_hi_hz = 0.0;
  uint64_t grid_digest = 0;
  uint64_t config_digest = 0;
};

enum class Comp { Ex, Ey, Ez, Hx, Hy, Hz };

// Polynomial-graded CPML profiles over one absorber depth.
// Index q = 0 sits on the inner PML boundary (zero conductivity).
struct CpmlProfile {
  std::vector<double> sigma_e, kappa_e, alpha_e, b_e, a_e;  // size n+1
  std::vector<double> sigma_h, kappa_h, alpha_h, b_h, a_h;  // size n
};

CpmlProfile cpml_coefficients(int pml_cells, double cell_size_m, double dt_s,
                              double grading_m = 3.0, double sigma_ratio = 0.8,
                              double kappa_max = 7.0, double alpha_max = 0.24);

// One Yee leapfrog engine bound to a material grid. Exclusive to one run.
class FdtdSolver {
 public:
  FdtdSolver(const MaterialGrid& grid, const SimConfig& config);
  ~FdtdSolver();
  FdtdSolver(const FdtdSolver&) = delete;
  FdtdSolver& operator=(const FdtdSolver&) = delete;

  void set_excited_port(int port_id);
  void add_monitor(const MonitorSpec& spec);

  // One H/E leapfrog iteration. Throws InstabilityError on non-finite fields.
  void step(bool track_energy = false);

  long step_count() const;
  double dt() const;
  double time() const;  // of the last E update

  float field(Comp c, int i, int j, int k) const;
  void add_soft_source(Comp c, int i, int j, int k, double value);

  // Conserved-form energy of the last tracked step (J).
  double last_step_energy() const;
  // Plain 0.5*(eps E^2 + mu H^2) sum (J).
  double total_energy() const;

  // Runs to termination or max_steps and collects results.
  RunResult run_to_completion();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Full run: excites one port, records all ports, accumulates monitors.
RunResult run(const MaterialGrid& grid, int excited_port_id,
              const std::vector<MonitorSpec>& monitors,
              const SimConfig& config);

}  // namespace pem
