#pragma once

#include <array>
#include <optional>

#include "rfem/mesh.hpp"

namespace rfem {

using Triangle = std::array<Node, 3>;

/// Linear shape functions N_i(r, z) = a[i] + b[i] r + c[i] z on one triangle.
struct ShapeCoeffs {
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<double, 3> c{};
  double area = 0.0;

  double value(int i, double r, double z) const { return a[i] + b[i] * r + c[i] * z; }
};

/// Throws Error(Geometry) for clockwise or degenerate (area < 1e-14) input.
ShapeCoeffs shape_coefficients(const Triangle& tri);

struct LocalMatrix {
  std::array<std::array<double, 3>, 3> k{};

  double& operator()(int i, int j) { return k[i][j]; }
  double operator()(int i, int j) const { return k[i][j]; }
  bool is_symmetric(double tol = 0.0) const;
  LocalMatrix& operator+=(const LocalMatrix& o);
  LocalMatrix& operator-=(const LocalMatrix& o);
};

enum class CylMethod { ExactIntegral, MassCenter, ModifiedConductivity };

const char* to_string(CylMethod method) noexcept;
std::optional<CylMethod> method_from_string(const char* name) noexcept;

/// lambda * S * (b_i b_j + c_i c_j). Throws Error(Material) for lambda <= 0.
LocalMatrix planar_stiffness(const ShapeCoeffs& coeffs, double conductivity);

/// A triangle whose legs are parallel to the r and z axes: right angle at
/// `corner`, the other vertices at corner + (leg_r, 0) and corner + (0, leg_z).
/// Legs may point either way.
struct AxisRightTriangle {
  Node corner;
  double leg_r = 0.0;
  double leg_z = 0.0;
};

/// Leg direction cosines must be within 1e-9 of the axes.
std::optional<AxisRightTriangle> as_axis_right_triangle(const Triangle& tri);

/// Closed-form area integrals over an axis-aligned right triangle with r > 0.
double integral_inv_r(const AxisRightTriangle& tri);
double integral_z_over_r(const AxisRightTriangle& tri);

/// Closed-form integrals of N_i / r over the triangle for i = 0, 1, 2.
/// Throws Error(UnsupportedElement) unless the triangle is axis-aligned
/// right, and Error(Geometry) when it reaches r <= 0.
std::array<double, 3> integral_shape_over_r(const Triangle& tri, const ShapeCoeffs& coeffs);

/// Entry (i, j) = lambda * b_j * integral(N_i / r), integrated exactly.
LocalMatrix cyl_correction_exact(const ShapeCoeffs& coeffs, const Triangle& tri,
                                 double conductivity);

/// Entry (i, j) = lambda * b_j * S * (a_i + b_i r_m + c_i z_m) / r_m with the
/// centroid (r_m, z_m). Every shape function equals 1/3 there, so all rows
/// are the same.
LocalMatrix cyl_correction_masscenter(const ShapeCoeffs& coeffs, const Triangle& tri,
                                      double conductivity);

/// Planar stiffness with conductivity lambda * r_m.
LocalMatrix modified_stiffness(const ShapeCoeffs& coeffs, const Triangle& tri,
                               double conductivity);

/// Element matrix of the weak form for the chosen treatment of the 1/r term.
/// Integrating (lambda / r) dT/dr * N_i by parts leaves it on the right-hand
/// side, so the correction is subtracted from the planar stiffness.
LocalMatrix element_matrix(CylMethod method, const Triangle& tri, double conductivity);

struct EdgeContribution {
  std::array<std::array<double, 2>, 2> g{};
  std::array<double, 2> f{};
};

/// Robin contribution of one boundary edge, integrated along its length:
/// g_ii = h L / 3, g_ij = h L / 6, f_i = C L / 2. Throws Error(Configuration)
/// for h < 0.
EdgeContribution edge_robin_contrib(const BoundaryEdge& edge, double h, double c);

/// Same integrals with the extra weight r (linear along the edge), used with
/// the modified-conductivity formulation where the whole equation carries r.
EdgeContribution edge_robin_contrib_weighted(const Node& a, const Node& b, double h,
                                             double c);

}  // namespace rfem
