#include "rfem/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rfem/elements.hpp"
#include "rfem/error.hpp"

namespace rfem {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) {
    std::ostringstream os;
    os << what << " must be non-negative (got " << v << ")";
    throw Error(ErrorKind::Configuration, os.str());
  }
}

void require_temperature(double v, const char* what) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << what << " must be a positive absolute temperature (got " << v << ")";
    throw Error(ErrorKind::Configuration, os.str());
  }
}

}  // namespace

void SurfacePhysics::validate() const {
  require_nonnegative(wall.convection_coefficient, "A convection coefficient");
  require_nonnegative(wall.solar_flux, "A solar flux");
  require_temperature(wall.air_temperature, "A air temperature");
  require_nonnegative(floor.convection_coefficient, "C convection coefficient");
  require_nonnegative(floor.solar_flux, "C solar flux");
  require_temperature(floor.air_temperature, "C air temperature");
  require_nonnegative(exterior.loss_coefficient, "D loss coefficient");
  require_temperature(exterior.ambient_temperature, "D ambient temperature");
  require_nonnegative(exchanger.coefficient, "E exchanger coefficient");
  require_temperature(exchanger.gas_temperature, "E gas temperature");
  require_nonnegative(aperture.h, "B coefficient");
  require_nonnegative(aperture.flux, "B flux");
  require_temperature(aperture.temperature, "B temperature");
}

SurfaceConditions surface_conditions(const SurfacePhysics& p) {
  p.validate();
  return {
      {SurfaceTag::A, {p.wall.convection_coefficient, p.wall.air_temperature, p.wall.solar_flux}},
      {SurfaceTag::B, {p.aperture.h, p.aperture.temperature, p.aperture.flux}},
      {SurfaceTag::C,
       {p.floor.convection_coefficient, p.floor.air_temperature, p.floor.solar_flux}},
      {SurfaceTag::D, {p.exterior.loss_coefficient, p.exterior.ambient_temperature, 0.0}},
      {SurfaceTag::E, {p.exchanger.coefficient, p.exchanger.gas_temperature, 0.0}},
  };
}

SurfaceBCs to_robin(const SurfaceConditions& conditions) {
  SurfaceBCs out;
  for (const auto& [tag, cond] : conditions) out[tag] = cond.robin();
  return out;
}

SurfaceBCs surface_to_robin(const SurfacePhysics& physics) {
  return to_robin(surface_conditions(physics));
}

std::vector<ElementFlux> element_heat_flux(const Mesh& mesh, std::span<const double> temperature,
                                           const Conductivities& conductivity) {
  std::vector<ElementFlux> out;
  out.reserve(mesh.elements.size());
  for (const auto& el : mesh.elements) {
    const auto s = shape_coefficients(mesh.corners(el));
    double dr = 0.0, dz = 0.0;
    for (int i = 0; i < 3; ++i) {
      dr += temperature[el.nodes[i]] * s.b[i];
      dz += temperature[el.nodes[i]] * s.c[i];
    }
    const double lambda = conductivity_of(conductivity, el.material);
    out.push_back({-lambda * dr, -lambda * dz});
  }
  return out;
}

double TemperatureField::min_temperature() const {
  return temperature.empty() ? 0.0 : *std::min_element(temperature.begin(), temperature.end());
}

double TemperatureField::max_temperature() const {
  return temperature.empty() ? 0.0 : *std::max_element(temperature.begin(), temperature.end());
}

EnergyBalance energy_balance(const TemperatureField& field, const SurfaceConditions& conditions) {
  EnergyBalance eb;
  for (const auto& [tag, cond] : conditions) eb.outflow[tag] = 0.0;

  const Mesh& mesh = *field.mesh;
  for (const auto& edge : mesh.boundary) {
    auto it = conditions.find(edge.tag);
    if (it == conditions.end()) continue;
    const SurfaceCondition& c = it->second;
    double sum = 0.0;
    for (NodeId n : edge.nodes) {
      const double density = c.h * (field.temperature[n] - c.t_inf) - c.flux;
      sum += density * 2.0 * std::numbers::pi * mesh.nodes[n].r;
    }
    const double flow = 0.5 * edge.length * sum;
    eb.outflow[edge.tag] += flow;
    eb.net_outflow += flow;
    if (flow < 0.0) eb.gross_input -= flow;
  }
  eb.imbalance_fraction = eb.gross_input > 0.0 ? std::abs(eb.net_outflow) / eb.gross_input : 0.0;
  return eb;
}

EnergyBalance energy_balance(const TemperatureField& field, const SurfacePhysics& physics) {
  return energy_balance(field, surface_conditions(physics));
}

ReceiverRun solve_on_mesh(Mesh generated, const Conductivities& conductivity,
                          const SurfaceConditions& conditions, CylMethod method,
                          SolveOptions options) {
  ReceiverRun run;
  run.method = method;
  run.half_bandwidth_generated = generated.half_bandwidth;

  const Mesh renumbered = renumber_bandwidth(generated);
  run.half_bandwidth = renumbered.half_bandwidth;

  const auto system = assemble(renumbered, method, conductivity, to_robin(conditions));
  Solution sol = solve_banded(system, options);
  run.residual_norm = sol.residual_norm;
  run.used_dense_fallback = sol.used_dense_fallback;

  auto mesh = std::make_shared<const Mesh>(std::move(generated));
  run.field.flux = element_heat_flux(*mesh, sol.temperature, conductivity);
  run.field.temperature = std::move(sol.temperature);
  run.field.mesh = std::move(mesh);
  run.balance = energy_balance(run.field, conditions);
  return run;
}

ReceiverRun solve_receiver(const ReceiverGeometry& geometry, int nr, int nz,
                           const Conductivities& conductivity, const SurfacePhysics& physics,
                           CylMethod method, SolveOptions options) {
  const auto conditions = surface_conditions(physics);
  return solve_on_mesh(generate_mesh(geometry, nr, nz), conductivity, conditions, method,
                       options);
}

}  // namespace rfem
