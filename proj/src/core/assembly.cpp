#include "rfem/assembly.hpp"

#include <cmath>
#include <sstream>

#include "rfem/error.hpp"

namespace rfem {

namespace {

std::vector<double> to_original_order(const GlobalSystem& system, std::vector<double> x) {
  if (system.permutation.empty()) return x;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[system.permutation[i]] = x[i];
  return out;
}

void require_constrained(const GlobalSystem& system) {
  if (!system.constrained) {
    throw Error(ErrorKind::Solver,
                "stiffness matrix is singular: no boundary edge has a Robin "
                "coefficient h > 0, so a uniform temperature shift is unconstrained");
  }
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

double conductivity_of(const Conductivities& table, int material) {
  if (table.size() == 1) return table.front();
  if (material < 0 || static_cast<std::size_t>(material) >= table.size()) {
    std::ostringstream os;
    os << "no conductivity given for material " << material;
    throw Error(ErrorKind::Material, os.str());
  }
  return table[static_cast<std::size_t>(material)];
}

GlobalSystem assemble(const Mesh& mesh, CylMethod method, const Conductivities& conductivity,
                      const SurfaceBCs& bcs) {
  GlobalSystem sys;
  const std::size_t n = mesh.nodes.size();
  sys.stiffness = BandedMatrix(n, mesh.half_bandwidth);
  sys.load.assign(n, 0.0);
  sys.method = method;
  sys.permutation = mesh.original_id;

  for (const auto& el : mesh.elements) {
    const auto k = element_matrix(method, mesh.corners(el), conductivity_of(conductivity, el.material));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sys.stiffness.add(el.nodes[i], el.nodes[j], k(i, j));
  }

  for (const auto& edge : mesh.boundary) {
    auto it = bcs.find(edge.tag);
    if (it == bcs.end()) {
      std::ostringstream os;
      os << "no boundary condition given for surface " << tag_letter(edge.tag);
      throw Error(ErrorKind::Configuration, os.str());
    }
    const RobinPair bc = it->second;
    const auto contrib =
        method == CylMethod::ModifiedConductivity
            ? edge_robin_contrib_weighted(mesh.nodes[edge.nodes[0]], mesh.nodes[edge.nodes[1]],
                                          bc.h, bc.c)
            : edge_robin_contrib(edge, bc.h, bc.c);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) sys.stiffness.add(edge.nodes[a], edge.nodes[b], contrib.g[a][b]);
      sys.load[edge.nodes[a]] += contrib.f[a];
    }
    sys.constrained |= bc.h > 0.0;
  }
  return sys;
}

Solution solve_banded(const GlobalSystem& system, SolveOptions options) {
  require_constrained(system);
  if (auto x = solve_banded_lu(system.stiffness, system.load); x && all_finite(*x)) {
    const double res = relative_residual(system.stiffness, *x, system.load);
    if (res < options.residual_tolerance) {
      return {to_original_order(system, std::move(*x)), res, false};
    }
  }
  Solution fallback = solve_dense(system);
  fallback.used_dense_fallback = true;
  if (!(fallback.residual_norm < options.residual_tolerance)) {
    std::ostringstream os;
    os << "solve did not reach residual tolerance " << options.residual_tolerance
       << " (dense pivoted residual " << fallback.residual_norm << ")";
    throw Error(ErrorKind::Solver, os.str());
  }
  return fallback;
}

Solution solve_dense(const GlobalSystem& system) {
  require_constrained(system);
  auto x = solve_dense_pivoted(system.stiffness, system.load);
  if (!x || !all_finite(*x)) {
    throw Error(ErrorKind::Solver, "stiffness matrix is numerically singular");
  }
  const double res = relative_residual(system.stiffness, *x, system.load);
  return {to_original_order(system, std::move(*x)), res, false};
}

}  // namespace rfem
