#pragma once

#include <map>
#include <span>
#include <vector>

#include "rfem/banded.hpp"
#include "rfem/elements.hpp"
#include "rfem/mesh.hpp"

namespace rfem {

/// Boundary condition lambda dT/dn = -h T + c on one surface
/// (c = h T_inf + absorbed flux).
struct RobinPair {
  double h = 0.0;
  double c = 0.0;
};

using SurfaceBCs = std::map<SurfaceTag, RobinPair>;

/// Conductivity per material id. A single entry applies to every material.
using Conductivities = std::vector<double>;

struct GlobalSystem {
  BandedMatrix stiffness;
  std::vector<double> load;
  CylMethod method = CylMethod::ExactIntegral;
  /// Maps node ids of the assembled system to generated-mesh ids.
  std::vector<NodeId> permutation;
  /// True when some boundary edge carries h > 0.
  bool constrained = false;
};

double conductivity_of(const Conductivities& table, int material);

/// Element loop in element-id order, then Robin edges in boundary order.
/// With ModifiedConductivity the edge integrals carry the radius weight so
/// that boundary and interior terms share the factor r.
GlobalSystem assemble(const Mesh& mesh, CylMethod method, const Conductivities& conductivity,
                      const SurfaceBCs& bcs);

struct SolveOptions {
  double residual_tolerance = 1e-9;
};

struct Solution {
  /// Indexed by generated-mesh node id.
  std::vector<double> temperature;
  double residual_norm = 0.0;
  bool used_dense_fallback = false;
};

/// Banded LU without pivoting; falls back to dense partial pivoting when the
/// residual check fails. Throws Error(Solver) for an unconstrained system or
/// when neither route reaches the tolerance.
Solution solve_banded(const GlobalSystem& system, SolveOptions options = {});

/// Dense pivoted route only.
Solution solve_dense(const GlobalSystem& system);

}  // namespace rfem
