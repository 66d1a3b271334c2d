#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "rfem/assembly.hpp"
#include "rfem/mesh.hpp"

namespace rfem {

/// Cavity-facing surface (A or C): convection to cavity air plus absorbed
/// concentrated solar flux.
struct CavitySurface {
  double convection_coefficient = 0.0;  // alpha_B [W/m^2 K]
  double air_temperature = 300.0;       // T_f [K]
  double solar_flux = 0.0;              // q [W/m^2]
};

struct SurfacePhysics {
  CavitySurface wall;   // A
  CavitySurface floor;  // C
  struct {
    double loss_coefficient = 0.0;  // K_D, through the insulation
    double ambient_temperature = 300.0;
  } exterior;  // D
  struct {
    double coefficient = 0.0;  // K_w, to the working gas
    double gas_temperature = 300.0;
  } exchanger;  // E
  struct {
    double h = 0.0;
    double temperature = 300.0;
    double flux = 0.0;
  } aperture;  // B

  /// Throws Error(Configuration) for negative coefficients or fluxes and for
  /// non-positive temperatures.
  void validate() const;
};

/// Outward heat flux density on a surface is h (T - t_inf) - flux.
struct SurfaceCondition {
  double h = 0.0;
  double t_inf = 0.0;
  double flux = 0.0;

  RobinPair robin() const { return {h, h * t_inf + flux}; }
};

using SurfaceConditions = std::map<SurfaceTag, SurfaceCondition>;

SurfaceConditions surface_conditions(const SurfacePhysics& physics);
SurfaceBCs surface_to_robin(const SurfacePhysics& physics);
SurfaceBCs to_robin(const SurfaceConditions& conditions);

struct ElementFlux {
  double q_r = 0.0;  // W/m^2
  double q_z = 0.0;
};

/// -lambda grad T on each element; constant per element.
std::vector<ElementFlux> element_heat_flux(const Mesh& mesh, std::span<const double> temperature,
                                           const Conductivities& conductivity);

struct TemperatureField {
  std::shared_ptr<const Mesh> mesh;  // generated ordering
  std::vector<double> temperature;   // per node [K]
  std::vector<ElementFlux> flux;     // per element

  double min_temperature() const;
  double max_temperature() const;
};

/// Heat flows in watts over the full 360 degrees, using the trapezoidal rule
/// along each boundary edge with weight 2 pi r.
struct EnergyBalance {
  std::map<SurfaceTag, double> outflow;  // positive = heat leaving the body
  double net_outflow = 0.0;
  double gross_input = 0.0;  // sum of inward edge flows
  double imbalance_fraction = 0.0;
};

EnergyBalance energy_balance(const TemperatureField& field, const SurfaceConditions& conditions);
EnergyBalance energy_balance(const TemperatureField& field, const SurfacePhysics& physics);

struct ReceiverRun {
  TemperatureField field;
  EnergyBalance balance;
  CylMethod method = CylMethod::ExactIntegral;
  double residual_norm = 0.0;
  bool used_dense_fallback = false;
  std::size_t half_bandwidth_generated = 0;
  std::size_t half_bandwidth = 0;  // after renumbering
};

/// renumber -> assemble -> solve -> post-process on an already generated mesh.
ReceiverRun solve_on_mesh(Mesh generated, const Conductivities& conductivity,
                          const SurfaceConditions& conditions, CylMethod method,
                          SolveOptions options = {});

ReceiverRun solve_receiver(const ReceiverGeometry& geometry, int nr, int nz,
                           const Conductivities& conductivity, const SurfacePhysics& physics,
                           CylMethod method, SolveOptions options = {});

}  // namespace rfem
