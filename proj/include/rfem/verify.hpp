#pragma once

#include <functional>
#include <map>

#include "rfem/elements.hpp"
#include "rfem/receiver.hpp"

namespace rfem::verify {

/// Steady radial conduction through a cylinder wall with fixed surface
/// temperatures: T(r) = T1 + (T2 - T1) ln(r / r1) / ln(r2 / r1).
/// Throws Error(Domain) for r outside [r1, r2] or r1 <= 0.
double radial_temperature(double r1, double r2, double t1, double t2, double r);

struct QuadratureSpec {
  double relative_tolerance = 1e-12;  // must be >= 1e-13
  int max_depth = 14;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive 4-way subdivision with the degree-5 seven-point rule; stops when
/// parent and children estimates agree. Throws Error(OracleNonconvergence)
/// when max_depth is hit.
QuadratureResult integrate_triangle(const std::function<double(double, double)>& f,
                                    const Triangle& tri, QuadratureSpec spec = {});

/// Adaptive bisection with 5-point Gauss-Legendre; f takes the edge
/// parameter t in [0, 1], and the result is the integral over arc length.
QuadratureResult integrate_edge(const std::function<double(double)>& f, const Node& a,
                                const Node& b, QuadratureSpec spec = {});

enum class Integrand { InvR, ZOverR, GradientProduct };

/// Integrals over a triangle. GradientProduct uses shape functions obtained
/// by inverting the nodal interpolation matrix, not from shape_coefficients.
QuadratureResult quadrature_oracle(Integrand integrand, const Triangle& tri,
                                   QuadratureSpec spec = {}, int i = 0, int j = 0);

/// Integral of h N_i N_j along edge a-b with 1-D linear shape functions.
QuadratureResult edge_shape_product(const Node& a, const Node& b, int i, int j, double h,
                                    QuadratureSpec spec = {});

/// max over nodes of |T_fem - T_oracle| / |T_oracle|.
double compare_fields(const TemperatureField& field,
                      const std::function<double(const Node&)>& oracle);

/// Dirichlet values are imposed through a Robin penalty.
inline constexpr double kPenalty = 1e8;

struct RadialCase {
  double r1 = 0.1;
  double r2 = 0.2;
  double height = 0.1;
  double t1 = 1000.0;
  double t2 = 500.0;
  double conductivity = 40.0;
  int nr = 32;
  int nz = 4;
};

/// Lateral faces insulated, bottom and top held by penalty. With linear
/// elements the Robin problem's own (linear) solution is reproduced exactly.
struct AxialCase {
  double r1 = 0.1;
  double r2 = 0.2;
  double height = 0.1;
  double t_bottom = 900.0;
  double t_top = 400.0;
  double conductivity = 40.0;
  double penalty = kPenalty;
  int nr = 4;
  int nz = 16;

  double exact(double z) const;
};

struct CaseResult {
  double max_relative_error = 0.0;
  ReceiverRun run;
};

SurfaceConditions radial_conditions(const RadialCase& c);
SurfaceConditions axial_conditions(const AxialCase& c);
CaseResult run_radial_case(const RadialCase& c, CylMethod method);
CaseResult run_axial_case(const AxialCase& c, CylMethod method);

inline constexpr double kRadialThreshold = 1e-3;
inline constexpr double kAxialThreshold = 1e-9;

struct VerificationReport {
  std::map<CylMethod, double> radial_error;
  std::map<CylMethod, double> axial_error;
  bool passed = false;
};

/// Radial case at nr = resolution (nz = 4) and axial case at nz = resolution
/// (nr = 4), for every method.
VerificationReport run_verification(int resolution = 32);

}  // namespace rfem::verify
