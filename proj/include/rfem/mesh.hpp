#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rfem {

using NodeId = std::size_t;

/// Cross-section of a cylindrical cavity receiver in the (r, z) half plane:
/// a bottom plate [r_min, r_outer] x [0, t_b] carrying a cylindrical wall
/// [r_inner, r_outer] x [t_b, t_b + H].
struct ReceiverGeometry {
  double r_min = 0.0;
  double r_inner = 0.0;
  double r_outer = 0.0;
  double bottom_thickness = 0.0;
  double wall_height = 0.0;

  double top() const { return bottom_thickness + wall_height; }
  double area() const;
  double perimeter() const;
  /// Throws Error(Configuration) when the ordering or sizes are invalid.
  void validate() const;
};

struct Node {
  double r = 0.0;
  double z = 0.0;
};

struct TriElement {
  std::array<NodeId, 3> nodes{};  // counterclockwise
  int material = 0;
};

/// Boundary faces of the receiver:
///   A  cavity side of the wall (r = r_inner)
///   B  aperture-adjacent faces (wall top, bottom-plate inner rim r = r_min)
///   C  cavity side of the bottom plate (z = t_b, r < r_inner)
///   D  insulated exterior (r = r_outer)
///   E  heat-exchanger face (z = 0)
enum class SurfaceTag : std::uint8_t { A = 0, B, C, D, E, Untagged };

inline constexpr std::array<SurfaceTag, 5> kSurfaceTags = {
    SurfaceTag::A, SurfaceTag::B, SurfaceTag::C, SurfaceTag::D, SurfaceTag::E};

char tag_letter(SurfaceTag tag) noexcept;
std::optional<SurfaceTag> tag_from_letter(char c) noexcept;

enum class EdgeOrientation : std::uint8_t { Radial, Axial, Oblique };

struct BoundaryEdge {
  std::array<NodeId, 2> nodes{};  // domain lies to the left of nodes[0] -> nodes[1]
  SurfaceTag tag = SurfaceTag::Untagged;
  double length = 0.0;
  EdgeOrientation orientation = EdgeOrientation::Oblique;
};

struct Mesh {
  std::vector<Node> nodes;
  std::vector<TriElement> elements;
  std::vector<BoundaryEdge> boundary;
  std::size_t half_bandwidth = 0;
  /// original_id[i] is the id node i had in the mesh as generated.
  std::vector<NodeId> original_id;
  /// Structured grid lines; empty for meshes not produced by a generator.
  std::vector<double> r_lines;
  std::vector<double> z_lines;

  std::array<Node, 3> corners(const TriElement& e) const {
    return {nodes[e.nodes[0]], nodes[e.nodes[1]], nodes[e.nodes[2]]};
  }
  double total_area() const;
  double boundary_length() const;
};

double signed_area(const Node& a, const Node& b, const Node& c);
std::size_t compute_half_bandwidth(const Mesh& mesh);

/// Structured L-shaped receiver mesh. `nr` and `nz` are the total cell counts
/// across [r_min, r_outer] and [0, t_b + H]; they are split between the two
/// sub-ranges in proportion to length (at least one cell each) so that the
/// plate/wall interface lies on a grid line. Every cell is cut lower-left to
/// upper-right into two right triangles. Plate cells get material 0, wall
/// cells material 1.
Mesh generate_mesh(const ReceiverGeometry& geometry, int nr, int nz);

/// Structured rectangle [r0, r1] x [z0, z1] (a hollow cylinder in the
/// axisymmetric setting). Tags: A at r = r0, D at r = r1, E at z = z0,
/// B at z = z1. All cells get material 0.
Mesh generate_rectangle_mesh(double r0, double r1, double z0, double z1, int nr,
                             int nz);

/// Sweeps node ids along the grid direction with fewer distinct coordinates
/// first. Coordinates are untouched; `original_id` is composed.
Mesh renumber_bandwidth(const Mesh& mesh);

struct MeshDiagnostics {
  std::size_t orientation_violations = 0;
  std::size_t degenerate_elements = 0;
  std::size_t untagged_edges = 0;
  std::size_t nonconforming_edges = 0;
  std::vector<std::string> messages;

  bool ok() const {
    return orientation_violations == 0 && degenerate_elements == 0 &&
           untagged_edges == 0 && nonconforming_edges == 0;
  }
};

MeshDiagnostics validate_mesh(const Mesh& mesh);

}  // namespace rfem
