#include "rfem/elements.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "rfem/error.hpp"

namespace rfem {

namespace {

constexpr double kMinArea = 1e-14;
constexpr double kAxisCosineTol = 1e-9;

void require_conductivity(double conductivity) {
  if (!(conductivity > 0.0)) {
    std::ostringstream os;
    os << "conductivity must be positive (got " << conductivity << ")";
    throw Error(ErrorKind::Material, os.str());
  }
}

Node centroid(const Triangle& t) {
  return {(t[0].r + t[1].r + t[2].r) / 3.0, (t[0].z + t[1].z + t[2].z) / 3.0};
}

void require_positive_centroid(const Triangle& t) {
  if (!(centroid(t).r > 0.0)) {
    throw Error(ErrorKind::Geometry, "element centroid must have r > 0");
  }
}

// g_k(x) = integral over [0, 1] of u^k / (1 + x u) du, k = 0..2.
// The power series is used for small x where the recurrence
// g_k = (1/k - g_{k-1}) / x cancels badly.
std::array<double, 3> inverse_linear_moments(double x) {
  std::array<double, 3> g{};
  if (x < 0.5) {
    for (int k = 0; k < 3; ++k) {
      double sum = 0.0;
      double power = 1.0;
      for (int n = 0; n < 200; ++n) {
        const double term = power / (k + n + 1);
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        power *= -x;
      }
      g[k] = sum;
    }
    return g;
  }
  g[0] = std::log1p(x) / x;
  g[1] = (1.0 - g[0]) / x;
  g[2] = (0.5 - g[1]) / x;
  return g;
}

struct RightCorner {
  int index = 0;
  AxisRightTriangle tri;
};

std::optional<RightCorner> find_right_corner(const Triangle& t) {
  auto is_radial = [](const Node& from, const Node& to) {
    const double len = std::hypot(to.r - from.r, to.z - from.z);
    return len > 0.0 && std::abs(to.z - from.z) <= kAxisCosineTol * len;
  };
  auto is_axial = [](const Node& from, const Node& to) {
    const double len = std::hypot(to.r - from.r, to.z - from.z);
    return len > 0.0 && std::abs(to.r - from.r) <= kAxisCosineTol * len;
  };
  for (int v = 0; v < 3; ++v) {
    const Node& c = t[v];
    const Node& u = t[(v + 1) % 3];
    const Node& w = t[(v + 2) % 3];
    if (is_radial(c, u) && is_axial(c, w)) return RightCorner{v, {c, u.r - c.r, w.z - c.z}};
    if (is_radial(c, w) && is_axial(c, u)) return RightCorner{v, {c, w.r - c.r, u.z - c.z}};
  }
  return std::nullopt;
}

// Integrals of 1/r, (r - r_c)/r and (z - z_c)/r over the triangle, with
// (r_c, z_c) the right-angle corner. Substituting r = r_lo (1 + x u) turns
// each into a combination of g_k(x).
struct CornerMoments {
  double inv_r = 0.0;
  double dr_over_r = 0.0;
  double dz_over_r = 0.0;
};

CornerMoments corner_moments(const AxisRightTriangle& t) {
  const double p = t.leg_r;
  const double q = t.leg_z;
  const double span = std::abs(p);
  const double r_lo = p > 0.0 ? t.corner.r : t.corner.r + p;
  if (!(r_lo > 0.0)) {
    throw Error(ErrorKind::Geometry, "triangle reaches r <= 0; 1/r is not integrable there");
  }
  const auto g = inverse_linear_moments(span / r_lo);
  const double pref = std::abs(q) * span / r_lo;

  CornerMoments m;
  if (p > 0.0) {  // z-extent shrinks as r grows: t = 1 - u
    m.inv_r = pref * (g[0] - g[1]);
    m.dz_over_r = pref * 0.5 * q * (g[0] - 2.0 * g[1] + g[2]);
    m.dr_over_r = pref * span * (g[1] - g[2]);
  } else {  // t = u
    m.inv_r = pref * g[1];
    m.dz_over_r = pref * 0.5 * q * g[2];
    m.dr_over_r = -pref * span * (g[1] - g[2]);
  }
  return m;
}

}  // namespace

const char* to_string(CylMethod method) noexcept {
  switch (method) {
    case CylMethod::ExactIntegral: return "exact";
    case CylMethod::MassCenter: return "masscenter";
    case CylMethod::ModifiedConductivity: return "modified";
  }
  return "?";
}

std::optional<CylMethod> method_from_string(const char* name) noexcept {
  if (name == nullptr) return std::nullopt;
  if (std::strcmp(name, "exact") == 0) return CylMethod::ExactIntegral;
  if (std::strcmp(name, "masscenter") == 0) return CylMethod::MassCenter;
  if (std::strcmp(name, "modified") == 0) return CylMethod::ModifiedConductivity;
  return std::nullopt;
}

bool LocalMatrix::is_symmetric(double tol) const {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(k[i][j] - k[j][i]) > tol) return false;
  return true;
}

LocalMatrix& LocalMatrix::operator+=(const LocalMatrix& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[i][j] += o.k[i][j];
  return *this;
}

LocalMatrix& LocalMatrix::operator-=(const LocalMatrix& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[i][j] -= o.k[i][j];
  return *this;
}

ShapeCoeffs shape_coefficients(const Triangle& t) {
  const double area = signed_area(t[0], t[1], t[2]);
  if (!(area > kMinArea)) {
    std::ostringstream os;
    os << "triangle is degenerate or clockwise (signed area " << area << ")";
    throw Error(ErrorKind::Geometry, os.str());
  }
  ShapeCoeffs s;
  s.area = area;
  const double two_s = 2.0 * area;
  for (int i = 0; i < 3; ++i) {
    const Node& pj = t[(i + 1) % 3];
    const Node& pk = t[(i + 2) % 3];
    s.a[i] = (pj.r * pk.z - pk.r * pj.z) / two_s;
    s.b[i] = (pj.z - pk.z) / two_s;
    s.c[i] = (pk.r - pj.r) / two_s;
  }
  return s;
}

LocalMatrix planar_stiffness(const ShapeCoeffs& s, double conductivity) {
  require_conductivity(conductivity);
  LocalMatrix m;
  const double scale = conductivity * s.area;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = scale * (s.b[i] * s.b[j] + s.c[i] * s.c[j]);
  return m;
}

std::optional<AxisRightTriangle> as_axis_right_triangle(const Triangle& tri) {
  if (auto rc = find_right_corner(tri)) return rc->tri;
  return std::nullopt;
}

double integral_inv_r(const AxisRightTriangle& tri) { return corner_moments(tri).inv_r; }

double integral_z_over_r(const AxisRightTriangle& tri) {
  const auto m = corner_moments(tri);
  return tri.corner.z * m.inv_r + m.dz_over_r;
}

std::array<double, 3> integral_shape_over_r(const Triangle& tri, const ShapeCoeffs& s) {
  const auto rc = find_right_corner(tri);
  if (!rc) {
    throw Error(ErrorKind::UnsupportedElement,
                "exact 1/r integration needs an axis-aligned right triangle; "
                "use the masscenter method for general triangles");
  }
  const auto m = corner_moments(rc->tri);
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double at_corner = i == rc->index ? 1.0 : 0.0;
    out[i] = at_corner * m.inv_r + s.b[i] * m.dr_over_r + s.c[i] * m.dz_over_r;
  }
  return out;
}

LocalMatrix cyl_correction_exact(const ShapeCoeffs& s, const Triangle& tri,
                                 double conductivity) {
  require_conductivity(conductivity);
  const auto shape_over_r = integral_shape_over_r(tri, s);
  LocalMatrix m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = conductivity * s.b[j] * shape_over_r[i];
  return m;
}

LocalMatrix cyl_correction_masscenter(const ShapeCoeffs& s, const Triangle& tri,
                                      double conductivity) {
  require_conductivity(conductivity);
  require_positive_centroid(tri);
  const double r_m = centroid(tri).r;
  LocalMatrix m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = conductivity * s.b[j] * s.area / (3.0 * r_m);
  return m;
}

LocalMatrix modified_stiffness(const ShapeCoeffs& s, const Triangle& tri,
                               double conductivity) {
  require_conductivity(conductivity);
  require_positive_centroid(tri);
  return planar_stiffness(s, conductivity * centroid(tri).r);
}

LocalMatrix element_matrix(CylMethod method, const Triangle& tri, double conductivity) {
  const auto s = shape_coefficients(tri);
  switch (method) {
    case CylMethod::ExactIntegral: {
      auto k = planar_stiffness(s, conductivity);
      k -= cyl_correction_exact(s, tri, conductivity);
      return k;
    }
    case CylMethod::MassCenter: {
      auto k = planar_stiffness(s, conductivity);
      k -= cyl_correction_masscenter(s, tri, conductivity);
      return k;
    }
    case CylMethod::ModifiedConductivity:
      return modified_stiffness(s, tri, conductivity);
  }
  throw Error(ErrorKind::Configuration, "unknown cylindrical method");
}

EdgeContribution edge_robin_contrib(const BoundaryEdge& edge, double h, double c) {
  if (h < 0.0) {
    throw Error(ErrorKind::Configuration, "Robin coefficient h must be non-negative");
  }
  if (!(edge.length > 0.0)) {
    throw Error(ErrorKind::Geometry, "boundary edge has zero length");
  }
  EdgeContribution out;
  const double diag = h * edge.length / 3.0;
  const double off = h * edge.length / 6.0;
  out.g = {{{diag, off}, {off, diag}}};
  out.f = {0.5 * c * edge.length, 0.5 * c * edge.length};
  return out;
}

EdgeContribution edge_robin_contrib_weighted(const Node& a, const Node& b, double h,
                                             double c) {
  if (h < 0.0) {
    throw Error(ErrorKind::Configuration, "Robin coefficient h must be non-negative");
  }
  const double len = std::hypot(b.r - a.r, b.z - a.z);
  if (!(len > 0.0)) throw Error(ErrorKind::Geometry, "boundary edge has zero length");
  EdgeContribution out;
  const double w = h * len / 12.0;
  out.g = {{{w * (3.0 * a.r + b.r), w * (a.r + b.r)},
            {w * (a.r + b.r), w * (a.r + 3.0 * b.r)}}};
  out.f = {c * len * (2.0 * a.r + b.r) / 6.0, c * len * (a.r + 2.0 * b.r) / 6.0};
  return out;
}

}  // namespace rfem
