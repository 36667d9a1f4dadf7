#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "deltaideal/errors.hpp"

namespace deltaideal {

/// Closed triangle surface mesh. Vertices are geometric 3-space points; an
/// optional identification assigns each geometric vertex to an equivalence
/// class, in which case the mesh models the quotient surface: operators are
/// assembled from the geometric faces and then merged per class, so the
/// quotient never needs its own embedding.
struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
  /// Per-vertex class index in [0, class_count); empty when no identification.
  std::vector<int> identification;

  bool has_identification() const { return !identification.empty(); }
  int geometric_vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }

  /// Logical vertex count: identification classes when present, geometric
  /// vertices otherwise.
  int vertex_count() const;

  /// Class of a geometric vertex (identity when no identification).
  int class_of(int v) const { return identification.empty() ? v : identification[v]; }
};

/// Structural validation: indices in range, faces with distinct classes,
/// positive face areas, and closedness. Without identification every edge
/// must bound exactly two faces; with identification every class edge must
/// collect an even number (>= 2) of face incidences, which covers both sheet
/// quotients and seam gluings.
void validate_mesh(const TriMesh& m, double area_tol = 1e-12);

double face_area(const TriMesh& m, int f);
double total_area(const TriMesh& m);

TriMesh make_tetrahedron();
TriMesh make_octahedron();
TriMesh make_icosahedron();

/// Icosahedron subdivided `level` times with vertices projected to the unit
/// sphere; level 4 has 2562 vertices. Central symmetry of the icosahedron is
/// preserved exactly at every level.
TriMesh make_icosphere(int level);

/// Uniform right-triangle grid of the [0,w] x [0,h] rectangle with opposite
/// sides glued through the identification map: a flat torus with correct edge
/// geometry everywhere, including the seam.
TriMesh make_flat_torus_grid(int nx, int ny, double width = 6.283185307179586,
                             double height = 6.283185307179586);

/// Identifies antipodal vertex pairs of a centrally symmetric mesh. The
/// returned mesh keeps the cover's geometry and records the identification;
/// its logical vertex count is exactly half the cover's. Throws
/// NotCentrallySymmetric when a vertex has no antipode within tol or the face
/// set is not invariant under the pairing.
TriMesh antipodal_quotient(const TriMesh& m, double tol = 1e-8);

/// OFF reader/writer ("OFF" header, counts line, vertex lines, "3 i j k"
/// face lines). The identification map is not part of the OFF format.
TriMesh read_off(std::istream& in);
TriMesh read_off_file(const std::string& path);
void write_off(const TriMesh& m, std::ostream& out);
void write_off_file(const TriMesh& m, const std::string& path);

}  // namespace deltaideal
