#include "rfem/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "rfem/error.hpp"

namespace rfem::verify {

namespace {

constexpr CylMethod kMethods[] = {CylMethod::ExactIntegral, CylMethod::MassCenter,
                                  CylMethod::ModifiedConductivity};

// Degree-5 seven-point rule in barycentric coordinates, weights relative to area.
struct BaryPoint {
  double l0, l1, l2, w;
};

const std::array<BaryPoint, 7>& seven_point_rule() {
  static const std::array<BaryPoint, 7> rule = [] {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
    const double b1 = 1.0 - 2.0 * a1, b2 = 1.0 - 2.0 * a2;
    return std::array<BaryPoint, 7>{{{1.0 / 3, 1.0 / 3, 1.0 / 3, 9.0 / 40},
                                     {a1, a1, b1, w1},
                                     {a1, b1, a1, w1},
                                     {b1, a1, a1, w1},
                                     {a2, a2, b2, w2},
                                     {a2, b2, a2, w2},
                                     {b2, a2, a2, w2}}};
  }();
  return rule;
}

double apply_rule(const std::function<double(double, double)>& f, const Triangle& t) {
  const double area = std::abs(signed_area(t[0], t[1], t[2]));
  double sum = 0.0;
  for (const auto& p : seven_point_rule()) {
    const double r = p.l0 * t[0].r + p.l1 * t[1].r + p.l2 * t[2].r;
    const double z = p.l0 * t[0].z + p.l1 * t[1].z + p.l2 * t[2].z;
    sum += p.w * f(r, z);
  }
  return area * sum;
}

Node midpoint(const Node& a, const Node& b) { return {0.5 * (a.r + b.r), 0.5 * (a.z + b.z)}; }

std::array<Triangle, 4> split(const Triangle& t) {
  const Node m01 = midpoint(t[0], t[1]), m12 = midpoint(t[1], t[2]), m20 = midpoint(t[2], t[0]);
  return {{{t[0], m01, m20}, {m01, t[1], m12}, {m20, m12, t[2]}, {m01, m12, m20}}};
}

QuadratureResult adapt_triangle(const std::function<double(double, double)>& f,
                                const Triangle& t, double whole, double tol, int depth,
                                int max_depth) {
  const auto kids = split(t);
  std::array<double, 4> parts{};
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += parts[k] = apply_rule(f, kids[k]);
  const double err = std::abs(sum - whole);
  if (err <= tol) return {sum, err};
  if (depth >= max_depth) {
    throw Error(ErrorKind::OracleNonconvergence,
                "triangle quadrature exceeded maximum subdivision depth");
  }
  QuadratureResult out;
  for (int k = 0; k < 4; ++k) {
    const auto r = adapt_triangle(f, kids[k], parts[k], tol / 4.0, depth + 1, max_depth);
    out.value += r.value;
    out.error_estimate += r.error_estimate;
  }
  return out;
}

constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665,
                                                 0.5688888888888889, 0.4786286704993665,
                                                 0.2369268850561891};

double gauss5(const std::function<double(double)>& f, double t0, double t1) {
  const double half = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
  double sum = 0.0;
  for (int k = 0; k < 5; ++k) sum += kGaussWeights[k] * f(mid + half * kGaussNodes[k]);
  return half * sum;
}

QuadratureResult adapt_edge(const std::function<double(double)>& f, double t0, double t1,
                            double whole, double tol, int depth, int max_depth) {
  const double tm = 0.5 * (t0 + t1);
  const double left = gauss5(f, t0, tm), right = gauss5(f, tm, t1);
  const double err = std::abs(left + right - whole);
  if (err <= tol) return {left + right, err};
  if (depth >= max_depth) {
    throw Error(ErrorKind::OracleNonconvergence, "edge quadrature exceeded maximum depth");
  }
  const auto a = adapt_edge(f, t0, tm, left, tol / 2.0, depth + 1, max_depth);
  const auto b = adapt_edge(f, tm, t1, right, tol / 2.0, depth + 1, max_depth);
  return {a.value + b.value, a.error_estimate + b.error_estimate};
}

void check_spec(const QuadratureSpec& spec) {
  if (!(spec.relative_tolerance >= 1e-13)) {
    throw Error(ErrorKind::Domain, "quadrature tolerance must be at least 1e-13");
  }
}

// Shape-function coefficients from the inverse of the nodal interpolation
// matrix [1 r z]; row i of the inverse's transpose gives N_i.
Eigen::Matrix3d interpolation_inverse(const Triangle& t) {
  Eigen::Matrix3d v;
  for (int k = 0; k < 3; ++k) v.row(k) << 1.0, t[k].r, t[k].z;
  return v.inverse();
}

}  // namespace

double radial_temperature(double r1, double r2, double t1, double t2, double r) {
  if (!(r1 > 0.0) || !(r1 < r2) || r < r1 || r > r2) {
    std::ostringstream os;
    os << "radial profile needs 0 < r1 <= r <= r2 (got r1=" << r1 << ", r=" << r
       << ", r2=" << r2 << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  if (r == r1) return t1;
  return t1 + (t2 - t1) * std::log(r / r1) / std::log(r2 / r1);
}

QuadratureResult integrate_triangle(const std::function<double(double, double)>& f,
                                    const Triangle& tri, QuadratureSpec spec) {
  check_spec(spec);
  // Subdivide in coordinates relative to the first vertex; midpoints of a
  // thin triangle far from the origin otherwise lose digits at every level.
  const Node o = tri[0];
  const Triangle local{{{0.0, 0.0}, {tri[1].r - o.r, tri[1].z - o.z}, {tri[2].r - o.r, tri[2].z - o.z}}};
  const auto g = [&](double r, double z) { return f(o.r + r, o.z + z); };
  const double whole = apply_rule(g, local);
  const double scale = std::abs(whole) > 0.0 ? std::abs(whole) : 1.0;
  return adapt_triangle(g, local, whole, spec.relative_tolerance * scale, 0, spec.max_depth);
}

QuadratureResult integrate_edge(const std::function<double(double)>& f, const Node& a,
                                const Node& b, QuadratureSpec spec) {
  check_spec(spec);
  const double length = std::hypot(b.r - a.r, b.z - a.z);
  const double whole = gauss5(f, 0.0, 1.0);
  const double scale = std::abs(whole) > 0.0 ? std::abs(whole) : 1.0;
  auto r = adapt_edge(f, 0.0, 1.0, whole, spec.relative_tolerance * scale, 0, spec.max_depth);
  return {r.value * length, r.error_estimate * length};
}

QuadratureResult quadrature_oracle(Integrand integrand, const Triangle& tri, QuadratureSpec spec,
                                   int i, int j) {
  switch (integrand) {
    case Integrand::InvR:
      return integrate_triangle([](double r, double) { return 1.0 / r; }, tri, spec);
    case Integrand::ZOverR:
      return integrate_triangle([](double r, double z) { return z / r; }, tri, spec);
    case Integrand::GradientProduct: {
      const Eigen::Matrix3d inv = interpolation_inverse(tri);
      const double grad = inv(1, i) * inv(1, j) + inv(2, i) * inv(2, j);
      return integrate_triangle([grad](double, double) { return grad; }, tri, spec);
    }
  }
  throw Error(ErrorKind::Domain, "unknown integrand");
}

QuadratureResult edge_shape_product(const Node& a, const Node& b, int i, int j, double h,
                                    QuadratureSpec spec) {
  auto shape = [](int k, double t) { return k == 0 ? 1.0 - t : t; };
  return integrate_edge([&](double t) { return h * shape(i, t) * shape(j, t); }, a, b, spec);
}

double compare_fields(const TemperatureField& field,
                      const std::function<double(const Node&)>& oracle) {
  double worst = 0.0;
  const auto& nodes = field.mesh->nodes;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const double expect = oracle(nodes[n]);
    worst = std::max(worst, std::abs(field.temperature[n] - expect) / std::abs(expect));
  }
  return worst;
}

double AxialCase::exact(double z) const {
  // Linear profile whose end values sit flux / penalty off the driving
  // temperatures.
  const double slope = (t_top - t_bottom) / (height + 2.0 * conductivity / penalty);
  const double at_bottom = t_bottom + conductivity * slope / penalty;
  return at_bottom + slope * z;
}

SurfaceConditions radial_conditions(const RadialCase& c) {
  return {{SurfaceTag::A, {kPenalty, c.t1, 0.0}},
          {SurfaceTag::D, {kPenalty, c.t2, 0.0}},
          {SurfaceTag::B, {0.0, c.t2, 0.0}},
          {SurfaceTag::E, {0.0, c.t2, 0.0}}};
}

SurfaceConditions axial_conditions(const AxialCase& c) {
  return {{SurfaceTag::E, {c.penalty, c.t_bottom, 0.0}},
          {SurfaceTag::B, {c.penalty, c.t_top, 0.0}},
          {SurfaceTag::A, {0.0, c.t_top, 0.0}},
          {SurfaceTag::D, {0.0, c.t_top, 0.0}}};
}

CaseResult run_radial_case(const RadialCase& c, CylMethod method) {
  CaseResult out;
  out.run = solve_on_mesh(generate_rectangle_mesh(c.r1, c.r2, 0.0, c.height, c.nr, c.nz),
                          {c.conductivity}, radial_conditions(c), method);
  out.max_relative_error = compare_fields(out.run.field, [&](const Node& p) {
    return radial_temperature(c.r1, c.r2, c.t1, c.t2, p.r);
  });
  return out;
}

CaseResult run_axial_case(const AxialCase& c, CylMethod method) {
  CaseResult out;
  out.run = solve_on_mesh(generate_rectangle_mesh(c.r1, c.r2, 0.0, c.height, c.nr, c.nz),
                          {c.conductivity}, axial_conditions(c), method);
  out.max_relative_error =
      compare_fields(out.run.field, [&](const Node& p) { return c.exact(p.z); });
  return out;
}

VerificationReport run_verification(int resolution) {
  VerificationReport report;
  report.passed = true;
  RadialCase radial;
  radial.nr = resolution;
  AxialCase axial;
  axial.nz = resolution;
  for (CylMethod m : kMethods) {
    report.radial_error[m] = run_radial_case(radial, m).max_relative_error;
    report.axial_error[m] = run_axial_case(axial, m).max_relative_error;
    report.passed = report.passed && report.radial_error[m] < kRadialThreshold &&
                    report.axial_error[m] < kAxialThreshold;
  }
  return report;
}

}  // namespace rfem::verify
