#include "rfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "rfem/error.hpp"

namespace rfem {

namespace {

constexpr double kDegenerateArea = 1e-14;

std::vector<double> linspace_segment(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[i] = a + (b - a) * (static_cast<double>(i) / n);
  v.front() = a;
  v.back() = b;
  return v;
}

// Concatenates two grid-line segments sharing their breakpoint exactly.
std::vector<double> join_lines(double a, double mid, double b, int n1, int n2) {
  auto first = linspace_segment(a, mid, n1);
  auto second = linspace_segment(mid, b, n2);
  first.insert(first.end(), second.begin() + 1, second.end());
  return first;
}

std::pair<int, int> split_cells(int total, double len1, double len2) {
  int n1 = static_cast<int>(std::lround(total * len1 / (len1 + len2)));
  n1 = std::clamp(n1, 1, total - 1);
  return {n1, total - n1};
}

using CellPredicate = std::function<bool(int, int)>;
using CellMaterial = std::function<int(int, int)>;
using EdgeTagger = std::function<SurfaceTag(EdgeOrientation, double)>;

Mesh build_structured(std::vector<double> r_lines, std::vector<double> z_lines,
                      const CellPredicate& inside, const CellMaterial& material,
                      const EdgeTagger& tagger) {
  const int nr = static_cast<int>(r_lines.size()) - 1;
  const int nz = static_cast<int>(z_lines.size()) - 1;
  auto in = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nr && j < nz && inside(i, j);
  };

  Mesh mesh;
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> grid_id(static_cast<std::size_t>((nr + 1) * (nz + 1)), kNone);
  auto gid = [&](int i, int j) -> NodeId& { return grid_id[i * (nz + 1) + j]; };

  // Column-major: z runs fastest.
  for (int i = 0; i <= nr; ++i) {
    for (int j = 0; j <= nz; ++j) {
      if (in(i, j) || in(i - 1, j) || in(i, j - 1) || in(i - 1, j - 1)) {
        gid(i, j) = mesh.nodes.size();
        mesh.nodes.push_back({r_lines[i], z_lines[j]});
      }
    }
  }

  auto add_edge = [&](NodeId a, NodeId b, EdgeOrientation o, double coord) {
    const auto& pa = mesh.nodes[a];
    const auto& pb = mesh.nodes[b];
    mesh.boundary.push_back(
        {{a, b}, tagger(o, coord), std::hypot(pb.r - pa.r, pb.z - pa.z), o});
  };

  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) {
      if (!in(i, j)) continue;
      const NodeId ll = gid(i, j), lr = gid(i + 1, j);
      const NodeId ur = gid(i + 1, j + 1), ul = gid(i, j + 1);
      const int mat = material(i, j);
      mesh.elements.push_back({{ll, lr, ur}, mat});
      mesh.elements.push_back({{ll, ur, ul}, mat});
    }
  }
  // Boundary edges, counterclockwise around each cell.
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nr; ++i) {
      if (!in(i, j)) continue;
      const NodeId ll = gid(i, j), lr = gid(i + 1, j);
      const NodeId ur = gid(i + 1, j + 1), ul = gid(i, j + 1);
      if (!in(i, j - 1)) add_edge(ll, lr, EdgeOrientation::Radial, z_lines[j]);
      if (!in(i + 1, j)) add_edge(lr, ur, EdgeOrientation::Axial, r_lines[i + 1]);
      if (!in(i, j + 1)) add_edge(ur, ul, EdgeOrientation::Radial, z_lines[j + 1]);
      if (!in(i - 1, j)) add_edge(ul, ll, EdgeOrientation::Axial, r_lines[i]);
    }
  }

  mesh.original_id.resize(mesh.nodes.size());
  std::iota(mesh.original_id.begin(), mesh.original_id.end(), NodeId{0});
  mesh.r_lines = std::move(r_lines);
  mesh.z_lines = std::move(z_lines);
  mesh.half_bandwidth = compute_half_bandwidth(mesh);
  return mesh;
}

void check_counts(int nr, int nz) {
  if (nr < 1 || nz < 1) {
    std::ostringstream os;
    os << "mesh resolution must be at least 1 x 1 cells (got nr=" << nr
       << ", nz=" << nz << ")";
    throw Error(ErrorKind::Configuration, os.str());
  }
}

}  // namespace

double ReceiverGeometry::area() const {
  return (r_outer - r_min) * bottom_thickness + (r_outer - r_inner) * wall_height;
}

double ReceiverGeometry::perimeter() const {
  return 2.0 * (r_outer - r_min) + 2.0 * top();
}

void ReceiverGeometry::validate() const {
  std::ostringstream os;
  if (!(r_min > 0.0)) {
    os << "r_min must be positive (got " << r_min
       << "); axis-touching domains make the 1/r term singular";
  } else if (!(r_min < r_inner && r_inner < r_outer)) {
    os << "radii must satisfy r_min < r_inner < r_outer (got " << r_min << ", "
       << r_inner << ", " << r_outer << ")";
  } else if (!(bottom_thickness > 0.0) || !(wall_height > 0.0)) {
    os << "bottom_thickness and wall_height must be positive";
  } else {
    return;
  }
  throw Error(ErrorKind::Configuration, os.str());
}

char tag_letter(SurfaceTag tag) noexcept {
  switch (tag) {
    case SurfaceTag::A: return 'A';
    case SurfaceTag::B: return 'B';
    case SurfaceTag::C: return 'C';
    case SurfaceTag::D: return 'D';
    case SurfaceTag::E: return 'E';
    case SurfaceTag::Untagged: break;
  }
  return '?';
}

std::optional<SurfaceTag> tag_from_letter(char c) noexcept {
  switch (c) {
    case 'A': case 'a': return SurfaceTag::A;
    case 'B': case 'b': return SurfaceTag::B;
    case 'C': case 'c': return SurfaceTag::C;
    case 'D': case 'd': return SurfaceTag::D;
    case 'E': case 'e': return SurfaceTag::E;
    default: return std::nullopt;
  }
}

double signed_area(const Node& a, const Node& b, const Node& c) {
  return 0.5 * ((b.r - a.r) * (c.z - a.z) - (c.r - a.r) * (b.z - a.z));
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (const auto& e : elements) {
    const auto p = corners(e);
    sum += signed_area(p[0], p[1], p[2]);
  }
  return sum;
}

double Mesh::boundary_length() const {
  double sum = 0.0;
  for (const auto& e : boundary) sum += e.length;
  return sum;
}

std::size_t compute_half_bandwidth(const Mesh& mesh) {
  std::size_t bw = 0;
  for (const auto& e : mesh.elements) {
    const auto [lo, hi] = std::minmax({e.nodes[0], e.nodes[1], e.nodes[2]});
    bw = std::max(bw, hi - lo);
  }
  return bw;
}

Mesh generate_mesh(const ReceiverGeometry& g, int nr, int nz) {
  g.validate();
  check_counts(nr, nz);
  if (nr < 2 || nz < 2) {
    std::ostringstream os;
    os << "the receiver mesh needs at least 2 x 2 cells to resolve the plate/wall "
          "interface (got nr=" << nr << ", nz=" << nz << ")";
    throw Error(ErrorKind::Configuration, os.str());
  }

  const auto [nr_cavity, nr_wall] =
      split_cells(nr, g.r_inner - g.r_min, g.r_outer - g.r_inner);
  const auto [nz_plate, nz_wall] = split_cells(nz, g.bottom_thickness, g.wall_height);

  auto r_lines = join_lines(g.r_min, g.r_inner, g.r_outer, nr_cavity, nr_wall);
  auto z_lines = join_lines(0.0, g.bottom_thickness, g.top(), nz_plate, nz_wall);

  const int ic = nr_cavity;
  const int jp = nz_plate;
  auto inside = [=](int i, int j) { return j < jp || i >= ic; };
  auto material = [=](int, int j) { return j < jp ? 0 : 1; };
  auto tagger = [g](EdgeOrientation o, double coord) {
    if (o == EdgeOrientation::Radial) {
      if (coord == 0.0) return SurfaceTag::E;
      if (coord == g.bottom_thickness) return SurfaceTag::C;
      if (coord == g.top()) return SurfaceTag::B;
    } else {
      if (coord == g.r_min) return SurfaceTag::B;
      if (coord == g.r_inner) return SurfaceTag::A;
      if (coord == g.r_outer) return SurfaceTag::D;
    }
    return SurfaceTag::Untagged;
  };
  return build_structured(std::move(r_lines), std::move(z_lines), inside,
                          material, tagger);
}

Mesh generate_rectangle_mesh(double r0, double r1, double z0, double z1, int nr,
                             int nz) {
  check_counts(nr, nz);
  if (!(r0 > 0.0) || !(r0 < r1) || !(z0 < z1)) {
    throw Error(ErrorKind::Configuration,
                "rectangle requires 0 < r0 < r1 and z0 < z1");
  }
  auto tagger = [=](EdgeOrientation o, double coord) {
    if (o == EdgeOrientation::Radial) return coord == z0 ? SurfaceTag::E : SurfaceTag::B;
    return coord == r0 ? SurfaceTag::A : SurfaceTag::D;
  };
  return build_structured(
      linspace_segment(r0, r1, nr), linspace_segment(z0, z1, nz),
      [](int, int) { return true; }, [](int, int) { return 0; }, tagger);
}

Mesh renumber_bandwidth(const Mesh& mesh) {
  auto distinct = [&](auto coord) {
    std::vector<double> v;
    v.reserve(mesh.nodes.size());
    for (const auto& n : mesh.nodes) v.push_back(coord(n));
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  const bool r_fastest = distinct([](const Node& n) { return n.r; }) <=
                         distinct([](const Node& n) { return n.z; });

  std::vector<NodeId> order(mesh.nodes.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const auto& p = mesh.nodes[a];
    const auto& q = mesh.nodes[b];
    if (r_fastest) return p.z != q.z ? p.z < q.z : p.r < q.r;
    return p.r != q.r ? p.r < q.r : p.z < q.z;
  });

  std::vector<NodeId> new_id(order.size());
  for (NodeId k = 0; k < order.size(); ++k) new_id[order[k]] = k;

  Mesh out;
  out.nodes.reserve(order.size());
  out.original_id.reserve(order.size());
  for (NodeId old : order) {
    out.nodes.push_back(mesh.nodes[old]);
    out.original_id.push_back(mesh.original_id.empty() ? old : mesh.original_id[old]);
  }
  out.elements = mesh.elements;
  for (auto& e : out.elements)
    for (auto& n : e.nodes) n = new_id[n];
  out.boundary = mesh.boundary;
  for (auto& b : out.boundary)
    for (auto& n : b.nodes) n = new_id[n];
  out.r_lines = mesh.r_lines;
  out.z_lines = mesh.z_lines;
  out.half_bandwidth = compute_half_bandwidth(out);
  return out;
}

MeshDiagnostics validate_mesh(const Mesh& mesh) {
  MeshDiagnostics report;
  auto note = [&](std::size_t& counter, const std::string& msg) {
    ++counter;
    report.messages.push_back(msg);
  };

  using EdgeKey = std::pair<NodeId, NodeId>;
  auto key = [](NodeId a, NodeId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; };
  std::map<EdgeKey, int> use_count;

  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& el = mesh.elements[e];
    bool bad_index = false;
    for (auto n : el.nodes) bad_index |= n >= mesh.nodes.size();
    if (bad_index) {
      note(report.nonconforming_edges,
           "element " + std::to_string(e) + " references a missing node");
      continue;
    }
    const auto p = mesh.corners(el);
    const double area = signed_area(p[0], p[1], p[2]);
    if (std::abs(area) < kDegenerateArea) {
      note(report.degenerate_elements, "element " + std::to_string(e) + " is degenerate");
    } else if (area < 0.0) {
      note(report.orientation_violations,
           "element " + std::to_string(e) + " is clockwise");
    }
    for (int k = 0; k < 3; ++k) ++use_count[key(el.nodes[k], el.nodes[(k + 1) % 3])];
  }

  std::map<EdgeKey, SurfaceTag> listed;
  for (const auto& b : mesh.boundary) listed[key(b.nodes[0], b.nodes[1])] = b.tag;

  for (const auto& [edge, count] : use_count) {
    const std::string name =
        "edge (" + std::to_string(edge.first) + ", " + std::to_string(edge.second) + ")";
    if (count > 2) {
      note(report.nonconforming_edges, name + " is shared by more than two elements");
      continue;
    }
    if (count != 1) continue;

    const auto& a = mesh.nodes[edge.first];
    const auto& b = mesh.nodes[edge.second];
    const double len2 = (b.r - a.r) * (b.r - a.r) + (b.z - a.z) * (b.z - a.z);
    for (NodeId n = 0; n < mesh.nodes.size(); ++n) {
      if (n == edge.first || n == edge.second) continue;
      const auto& p = mesh.nodes[n];
      const double cross = (b.r - a.r) * (p.z - a.z) - (b.z - a.z) * (p.r - a.r);
      const double t = ((p.r - a.r) * (b.r - a.r) + (p.z - a.z) * (b.z - a.z)) / len2;
      if (std::abs(cross) <= 1e-12 * len2 && t > 1e-12 && t < 1.0 - 1e-12) {
        note(report.nonconforming_edges,
             name + " has hanging node " + std::to_string(n));
        break;
      }
    }

    auto it = listed.find(edge);
    if (it == listed.end() || it->second == SurfaceTag::Untagged) {
      note(report.untagged_edges, "boundary " + name + " has no surface tag");
    }
  }
  for (const auto& [edge, tag] : listed) {
    auto it = use_count.find(edge);
    if (it == use_count.end() || it->second != 1) {
      note(report.nonconforming_edges,
           "listed boundary edge (" + std::to_string(edge.first) + ", " +
               std::to_string(edge.second) + ") is not on the mesh boundary");
    }
  }
  return report;
}

}  // namespace rfem
