#include "deltaideal/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace deltaideal {

int TriMesh::vertex_count() const {
  if (identification.empty()) return geometric_vertex_count();
  int classes = 0;
  for (int c : identification) classes = std::max(classes, c + 1);
  return classes;
}

double face_area(const TriMesh& m, int f) {
  const auto& [a, b, c] = m.faces[f];
  const Eigen::Vector3d u = m.vertices[b] - m.vertices[a];
  const Eigen::Vector3d v = m.vertices[c] - m.vertices[a];
  return 0.5 * u.cross(v).norm();
}

double total_area(const TriMesh& m) {
  double area = 0.0;
  for (int f = 0; f < m.face_count(); ++f) area += face_area(m, f);
  return area;
}

void validate_mesh(const TriMesh& m, double area_tol) {
  const int nv = m.geometric_vertex_count();
  if (nv < 3 || m.faces.empty()) throw DimensionError("mesh needs at least 3 vertices and 1 face");
  if (m.has_identification()) {
    if (static_cast<int>(m.identification.size()) != nv) {
      throw DimensionError("identification map must cover every vertex");
    }
    const int classes = m.vertex_count();
    std::vector<char> seen(classes, 0);
    for (int c : m.identification) {
      if (c < 0 || c >= classes) throw DimensionError("identification class out of range");
      seen[c] = 1;
    }
    for (int c = 0; c < classes; ++c) {
      if (!seen[c]) throw DimensionError("identification classes must be contiguous");
    }
  }

  std::map<std::pair<int, int>, int> geometric_edges;
  std::map<std::pair<int, int>, int> class_edges;
  for (int f = 0; f < m.face_count(); ++f) {
    const auto& tri = m.faces[f];
    for (int v : tri) {
      if (v < 0 || v >= nv) {
        throw DimensionError("face " + std::to_string(f) + " references vertex " +
                             std::to_string(v));
      }
    }
    const int ca = m.class_of(tri[0]);
    const int cb = m.class_of(tri[1]);
    const int cc = m.class_of(tri[2]);
    if (ca == cb || cb == cc || ca == cc) throw DegenerateFace(f, 0.0);
    if (face_area(m, f) <= area_tol) throw DegenerateFace(f, face_area(m, f));
    for (int e = 0; e < 3; ++e) {
      const int a = tri[e], b = tri[(e + 1) % 3];
      geometric_edges[{std::min(a, b), std::max(a, b)}] += 1;
      const int qa = m.class_of(a), qb = m.class_of(b);
      class_edges[{std::min(qa, qb), std::max(qa, qb)}] += 1;
    }
  }
  for (const auto& [edge, count] : geometric_edges) {
    if (count > 2) throw NonManifoldEdge(edge.first, edge.second, count);
  }
  for (const auto& [edge, count] : class_edges) {
    if (count < 2 || count % 2 != 0) {
      throw NonManifoldEdge(edge.first, edge.second, count);
    }
  }
}

TriMesh make_tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  TriMesh m;
  m.vertices = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return m;
}

TriMesh make_octahedron() {
  TriMesh m;
  m.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  m.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
             {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return m;
}

TriMesh make_icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double len = std::sqrt(1.0 + phi * phi);
  const double a = 1.0 / len;
  const double b = phi / len;
  TriMesh m;
  // Exact antipodal partners: (0,3) (1,2) (4,7) (5,6) (8,11) (9,10).
  m.vertices = {{-a, b, 0}, {a, b, 0},   {-a, -b, 0}, {a, -b, 0},
                {0, -a, b}, {0, a, b},   {0, -a, -b}, {0, a, -b},
                {b, 0, -a}, {b, 0, a},   {-b, 0, -a}, {-b, 0, a}};
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return m;
}

TriMesh make_icosphere(int level) {
  if (level < 0) throw DimensionError("subdivision level must be >= 0");
  TriMesh m = make_icosahedron();
  for (int step = 0; step < level; ++step) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d p = (m.vertices[key.first] + m.vertices[key.second]) / 2.0;
      p /= p.norm();
      const int idx = static_cast<int>(m.vertices.size());
      m.vertices.push_back(p);
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(m.faces.size() * 4);
    for (const auto& [a, b, c] : m.faces) {
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      refined.push_back({a, ab, ca});
      refined.push_back({b, bc, ab});
      refined.push_back({c, ca, bc});
      refined.push_back({ab, bc, ca});
    }
    m.faces = std::move(refined);
  }
  return m;
}

TriMesh make_flat_torus_grid(int nx, int ny, double width, double height) {
  if (nx < 3 || ny < 3) throw DimensionError("torus grid needs nx, ny >= 3");
  TriMesh m;
  const int vx = nx + 1, vy = ny + 1;
  auto vid = [vx](int i, int j) { return j * vx + i; };
  for (int j = 0; j < vy; ++j)
    for (int i = 0; i < vx; ++i) {
      m.vertices.push_back({width * i / nx, height * j / ny, 0.0});
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      m.faces.push_back({v00, v10, v11});
      m.faces.push_back({v00, v11, v01});
    }
  // Glue the right column onto the left and the top row onto the bottom.
  m.identification.resize(m.vertices.size());
  for (int j = 0; j < vy; ++j)
    for (int i = 0; i < vx; ++i) {
      const int ci = i % nx, cj = j % ny;
      m.identification[vid(i, j)] = cj * nx + ci;
    }
  return m;
}

TriMesh antipodal_quotient(const TriMesh& m, double tol) {
  if (m.has_identification()) {
    throw MismatchedPair("antipodal quotient expects a plain (unidentified) mesh");
  }
  const int nv = m.geometric_vertex_count();
  std::vector<int> antipode(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (antipode[v] >= 0) continue;
    int partner = -1;
    for (int w = 0; w < nv; ++w) {
      if (w == v) continue;
      if ((m.vertices[v] + m.vertices[w]).norm() <= tol) {
        partner = w;
        break;
      }
    }
    if (partner < 0 || antipode[partner] >= 0) throw NotCentrallySymmetric(v);
    antipode[v] = partner;
    antipode[partner] = v;
  }

  // The face set must be carried onto itself by the pairing.
  std::set<std::array<int, 3>> face_set;
  for (auto tri : m.faces) {
    std::sort(tri.begin(), tri.end());
    face_set.insert(tri);
  }
  for (const auto& tri : m.faces) {
    std::array<int, 3> mapped = {antipode[tri[0]], antipode[tri[1]], antipode[tri[2]]};
    std::sort(mapped.begin(), mapped.end());
    if (!face_set.count(mapped)) {
      throw NotCentrallySymmetric(tri[0], "face set is not invariant under the antipodal map");
    }
  }

  TriMesh q = m;
  q.identification.assign(nv, -1);
  int next_class = 0;
  for (int v = 0; v < nv; ++v) {
    if (v < antipode[v]) {
      q.identification[v] = next_class;
      q.identification[antipode[v]] = next_class;
      ++next_class;
    }
  }
  return q;
}

TriMesh read_off(std::istream& in) {
  auto next_line = [&in](std::string& line) {
    while (std::getline(in, line)) {
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      return true;
    }
    return false;
  };
  std::string line;
  if (!next_line(line)) throw ParseError("empty OFF stream");
  {
    std::istringstream hdr(line);
    std::string magic;
    hdr >> magic;
    if (magic != "OFF") throw ParseError("missing OFF header, got '" + magic + "'");
  }
  if (!next_line(line)) throw ParseError("missing OFF counts line");
  long nv = 0, nf = 0, ne = 0;
  {
    std::istringstream counts(line);
    if (!(counts >> nv >> nf >> ne)) throw ParseError("bad OFF counts line");
  }
  TriMesh m;
  m.vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!next_line(line)) throw ParseError("unexpected end of OFF vertex list");
    std::istringstream v(line);
    double x, y, z;
    if (!(v >> x >> y >> z)) throw ParseError("bad OFF vertex line: " + line);
    m.vertices.push_back({x, y, z});
  }
  m.faces.reserve(nf);
  for (long f = 0; f < nf; ++f) {
    if (!next_line(line)) throw ParseError("unexpected end of OFF face list");
    std::istringstream fs(line);
    int arity, a, b, c;
    if (!(fs >> arity >> a >> b >> c) || arity != 3) {
      throw ParseError("only triangle faces are supported: " + line);
    }
    m.faces.push_back({a, b, c});
  }
  return m;
}

TriMesh read_off_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_off(in);
}

void write_off(const TriMesh& m, std::ostream& out) {
  out << "OFF\n" << m.geometric_vertex_count() << " " << m.face_count() << " 0\n";
  out.precision(17);
  for (const auto& v : m.vertices) {
    out << v.x() << " " << v.y() << " " << v.z() << "\n";
  }
  for (const auto& [a, b, c] : m.faces) {
    out << "3 " << a << " " << b << " " << c << "\n";
  }
}

void write_off_file(const TriMesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_off(m, out);
}

}  // namespace deltaideal
