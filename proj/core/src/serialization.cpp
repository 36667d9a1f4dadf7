#include "deltaideal/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace deltaideal {

namespace {

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace

CurvatureTensor tensor_from_json(const nlohmann::json& j, double tol) {
  const int n = j.at("n").get<int>();
  if (j.contains("model")) {
    if (j["model"].get<std::string>() != "constant") {
      throw ParseError("unsupported curvature model '" + j["model"].get<std::string>() + "'");
    }
    return constant_curvature_tensor(n, j.at("c0").get<double>());
  }
  const auto& comp = j.at("components");
  if (n < 2) throw DimensionError("tensor dimension must be >= 2");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n * n * n);
  try {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int s = 0; s < n; ++s)
            flat.push_back(comp.at(i).at(k).at(l).at(s).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("components array is not [n][n][n][n]: ") + e.what());
  }
  return validate_curvature_tensor(flat, n, tol);
}

CurvatureTensor tensor_from_file(const std::string& path, double tol) {
  return tensor_from_json(parse_file(path), tol);
}

Json tensor_to_json(const CurvatureTensor& R) {
  const int n = R.dimension();
  Json j;
  j["n"] = n;
  Json rows = Json::array();
  for (int i = 0; i < n; ++i) {
    Json a = Json::array();
    for (int k = 0; k < n; ++k) {
      Json b = Json::array();
      for (int l = 0; l < n; ++l) {
        Json c = Json::array();
        for (int s = 0; s < n; ++s) c.push_back(R(i, k, l, s));
        b.push_back(std::move(c));
      }
      a.push_back(std::move(b));
    }
    rows.push_back(std::move(a));
  }
  j["components"] = std::move(rows);
  return j;
}

Json partition_to_json(const Partition& p) {
  Json arr = Json::array();
  for (int part : p.parts()) arr.push_back(part);
  return arr;
}

Partition partition_from_json(int n, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("partition must be a JSON array of parts");
  std::vector<int> parts;
  for (const auto& v : j) parts.push_back(v.get<int>());
  return Partition(n, std::move(parts));
}

Json delta_result_to_json(const DeltaResult& r, bool include_frame) {
  Json j;
  j["value"] = r.value;
  j["objective"] = r.objective;
  j["partition"] = partition_to_json(r.minimizer.blocks());
  j["converged"] = r.converged;
  j["restarts_used"] = r.restarts_used;
  if (include_frame) {
    const auto& F = r.minimizer.frame();
    Json rows = Json::array();
    for (int i = 0; i < F.rows(); ++i) {
      Json row = Json::array();
      for (int c = 0; c < F.cols(); ++c) row.push_back(F(i, c));
      rows.push_back(std::move(row));
    }
    j["frame"] = std::move(rows);
  }
  return j;
}

Json max_normalized_to_json(const MaxNormalizedDelta& r) {
  Json j;
  j["value"] = r.value;
  j["argmax"] = partition_to_json(r.argmax);
  j["all_converged"] = r.all_converged;
  Json table = Json::array();
  for (const auto& row : r.table) {
    Json e;
    e["partition"] = partition_to_json(row.partition);
    e["delta"] = row.delta;
    e["coefficient"] = row.coefficient;
    e["normalized"] = row.normalized;
    e["converged"] = row.converged;
    table.push_back(std::move(e));
  }
  j["table"] = std::move(table);
  return j;
}

Json spectral_result_to_json(const SpectralResult& r, bool include_eigenvector) {
  Json j;
  j["lambda1"] = r.lambda1;
  j["solver_iterations"] = r.solver_iterations;
  j["vertices"] = r.mesh_size.first;
  j["faces"] = r.mesh_size.second;
  if (include_eigenvector) {
    Json v = Json::array();
    for (int i = 0; i < r.eigenvector.size(); ++i) v.push_back(r.eigenvector[i]);
    j["eigenvector"] = std::move(v);
  }
  return j;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["subject"] = v.subject;
  j["outcome"] = to_string(v.outcome);
  Json e;
  e["lambda1"] = v.evidence.lambda1;
  e["n_delta0"] = v.evidence.n_delta0;
  e["delta0"] = v.evidence.delta0;
  if (v.evidence.partner) {
    e["partner"] = *v.evidence.partner;
    if (v.evidence.partner_lambda1) e["partner_lambda1"] = *v.evidence.partner_lambda1;
  }
  Json chain = Json::array();
  for (const auto& step : v.evidence.chain) chain.push_back(step);
  e["chain"] = std::move(chain);
  if (!v.evidence.reason.empty()) e["reason"] = v.evidence.reason;
  j["evidence"] = std::move(e);
  return j;
}

Json inequality_report_to_json(const InequalityReport& r, bool include_records) {
  Json j;
  j["points"] = static_cast<int>(r.points.size());
  j["min_slack"] = r.min_slack;
  j["max_abs_slack_at_equality"] = r.max_abs_slack_at_equality;
  j["violations"] = r.violations;
  j["all_converged"] = r.all_converged;
  j["equality_tol"] = r.equality_tol;
  j["violation_tol"] = r.violation_tol;
  if (include_records) {
    Json recs = Json::array();
    for (const auto& rec : r.records) {
      Json e;
      e["point_index"] = rec.point_index;
      e["partition"] = partition_to_json(rec.partition);
      e["delta"] = rec.delta;
      e["bound"] = rec.bound;
      e["slack"] = rec.slack;
      recs.push_back(std::move(e));
    }
    j["records"] = std::move(recs);
  }
  return j;
}

std::string inequality_report_to_csv(const InequalityReport& r) {
  std::ostringstream out;
  out.precision(17);
  const int n = r.points.empty() ? 0 : static_cast<int>(r.points.front().size());
  out << "point_index";
  for (int i = 0; i < n; ++i) out << ",u" << i;
  out << ",partition,delta,bound,slack\n";
  for (const auto& rec : r.records) {
    out << rec.point_index;
    const auto& u = r.points[rec.point_index];
    for (int i = 0; i < n; ++i) out << "," << u[i];
    out << ",\"" << rec.partition.to_string() << "\"," << rec.delta << ","
        << rec.bound << "," << rec.slack << "\n";
  }
  return out.str();
}

Json ideality_report_to_json(const IdealityReport& r, bool include_residuals) {
  Json j;
  j["points"] = static_cast<int>(r.points.size());
  j["ideal"] = r.ideal;
  j["max_abs_residual"] = r.max_abs_residual;
  j["min_residual"] = r.min_residual;
  j["violations"] = r.violations;
  j["all_converged"] = r.all_converged;
  j["tolerance"] = r.tolerance;
  if (include_residuals) {
    Json res = Json::array();
    for (double v : r.residuals) res.push_back(v);
    j["residuals"] = std::move(res);
  }
  return j;
}

std::string ideality_report_to_csv(const IdealityReport& r) {
  std::ostringstream out;
  out.precision(17);
  const int n = r.points.empty() ? 0 : static_cast<int>(r.points.front().size());
  out << "point_index";
  for (int i = 0; i < n; ++i) out << ",u" << i;
  out << ",residual\n";
  for (std::size_t idx = 0; idx < r.residuals.size(); ++idx) {
    out << idx;
    for (int i = 0; i < n; ++i) out << "," << r.points[idx][i];
    out << "," << r.residuals[idx] << "\n";
  }
  return out.str();
}

TriMesh mesh_from_json(const nlohmann::json& j) {
  TriMesh m;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 3) throw ParseError("vertices must be [x,y,z] triples");
    m.vertices.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
  }
  for (const auto& f : j.at("faces")) {
    if (!f.is_array() || f.size() != 3) throw ParseError("faces must be [i,j,k] triples");
    m.faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
  }
  if (j.contains("identification")) {
    m.identification.assign(m.vertices.size(), -1);
    for (const auto& pair : j["identification"]) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError("identification entries must be [vertex, class] pairs");
      }
      const int v = pair[0].get<int>();
      if (v < 0 || v >= m.geometric_vertex_count()) {
        throw ParseError("identification references vertex " + std::to_string(v));
      }
      m.identification[v] = pair[1].get<int>();
    }
    for (std::size_t v = 0; v < m.identification.size(); ++v) {
      if (m.identification[v] < 0) {
        throw ParseError("identification map must cover every vertex (missing " +
                         std::to_string(v) + ")");
      }
    }
  }
  return m;
}

Json mesh_to_json(const TriMesh& m) {
  Json j;
  Json verts = Json::array();
  for (const auto& v : m.vertices) {
    verts.push_back(Json::array({v.x(), v.y(), v.z()}));
  }
  j["vertices"] = std::move(verts);
  Json faces = Json::array();
  for (const auto& f : m.faces) {
    faces.push_back(Json::array({f[0], f[1], f[2]}));
  }
  j["faces"] = std::move(faces);
  if (m.has_identification()) {
    Json ident = Json::array();
    for (int v = 0; v < m.geometric_vertex_count(); ++v) {
      ident.push_back(Json::array({v, m.identification[v]}));
    }
    j["identification"] = std::move(ident);
  }
  return j;
}

TriMesh mesh_from_file(const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".off" || ext == ".OFF") return read_off_file(path);
  if (ext == ".json") return mesh_from_json(parse_file(path));
  throw ParseError("unrecognized mesh file extension on '" + path + "'");
}

namespace {

struct GridData {
  int n = 0, m = 0;
  std::vector<std::vector<double>> axes;  // per-axis sorted coordinates
  std::vector<double> spacing;            // per-axis uniform spacing
  std::vector<Eigen::VectorXd> values;    // row-major over the lattice
  std::vector<long> strides;

  long flat_index(const std::vector<int>& idx) const {
    long f = 0;
    for (int a = 0; a < n; ++a) f += idx[a] * strides[a];
    return f;
  }

  std::vector<int> locate(const Eigen::VectorXd& u) const {
    std::vector<int> idx(n);
    for (int a = 0; a < n; ++a) {
      const auto& coords = axes[a];
      const auto it = std::lower_bound(coords.begin(), coords.end(), u[a]);
      int best = static_cast<int>(std::min<std::ptrdiff_t>(
          it - coords.begin(), static_cast<std::ptrdiff_t>(coords.size()) - 1));
      if (best > 0 &&
          std::abs(coords[best - 1] - u[a]) < std::abs(coords[best] - u[a])) {
        --best;
      }
      if (std::abs(coords[best] - u[a]) > 1e-6 * std::max(1.0, std::abs(u[a]))) {
        throw DomainError("sampled-grid immersions evaluate at lattice nodes only");
      }
      idx[a] = best;
    }
    return idx;
  }
};

}  // namespace

GridImmersion grid_immersion_from_json(const nlohmann::json& j) {
  auto data = std::make_shared<GridData>();
  data->n = j.at("n").get<int>();
  data->m = j.at("m").get<int>();
  if (data->n < 1 || data->m < data->n) throw ParseError("grid immersion needs 1 <= n <= m");

  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> entries;
  for (const auto& e : j.at("grid")) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("grid entries must be [point, position] pairs");
    }
    Eigen::VectorXd u(data->n), x(data->m);
    if (static_cast<int>(e[0].size()) != data->n || static_cast<int>(e[1].size()) != data->m) {
      throw ParseError("grid entry has wrong point or position size");
    }
    for (int a = 0; a < data->n; ++a) u[a] = e[0][a].get<double>();
    for (int a = 0; a < data->m; ++a) x[a] = e[1][a].get<double>();
    entries.emplace_back(std::move(u), std::move(x));
  }
  if (entries.empty()) throw ParseError("grid immersion has no samples");

  // Reconstruct per-axis coordinates.
  data->axes.assign(data->n, {});
  for (int a = 0; a < data->n; ++a) {
    std::vector<double> coords;
    for (const auto& [u, x] : entries) coords.push_back(u[a]);
    std::sort(coords.begin(), coords.end());
    for (double c : coords) {
      if (data->axes[a].empty() ||
          c - data->axes[a].back() > 1e-9 * std::max(1.0, std::abs(c))) {
        data->axes[a].push_back(c);
      }
    }
    if (data->axes[a].size() < 3) {
      throw ParseError("grid axis " + std::to_string(a) + " needs at least 3 distinct values");
    }
    const double h = data->axes[a][1] - data->axes[a][0];
    for (std::size_t i = 1; i + 1 < data->axes[a].size(); ++i) {
      const double step = data->axes[a][i + 1] - data->axes[a][i];
      if (std::abs(step - h) > 1e-6 * std::abs(h)) {
        throw ParseError("grid axis " + std::to_string(a) + " is not uniformly spaced");
      }
    }
    data->spacing.push_back(h);
  }

  long total = 1;
  data->strides.assign(data->n, 0);
  for (int a = data->n - 1; a >= 0; --a) {
    data->strides[a] = total;
    total *= static_cast<long>(data->axes[a].size());
  }
  if (static_cast<long>(entries.size()) != total) {
    throw ParseError("grid is not a full lattice: " + std::to_string(entries.size()) +
                     " samples for " + std::to_string(total) + " nodes");
  }
  data->values.assign(total, Eigen::VectorXd());
  for (const auto& [u, x] : entries) {
    const long f = data->flat_index(data->locate(u));
    if (data->values[f].size() != 0) throw ParseError("duplicate grid node");
    data->values[f] = x;
  }

  const int n = data->n, m = data->m;
  auto position = [data](const Eigen::VectorXd& u) {
    return data->values[data->flat_index(data->locate(u))];
  };
  auto jet = [data, n, m](const Eigen::VectorXd& u) {
    std::vector<int> idx = data->locate(u);
    for (int a = 0; a < n; ++a) {
      if (idx[a] < 1 || idx[a] + 1 >= static_cast<int>(data->axes[a].size())) {
        throw DomainError("grid jets are available at interior lattice nodes only");
      }
    }
    auto at = [&](std::vector<int> shifted) {
      return data->values[data->flat_index(shifted)];
    };
    ImmersionJet out;
    out.position = at(idx);
    out.first.resize(m, n);
    out.second.assign(static_cast<std::size_t>(n) * n, Eigen::VectorXd::Zero(m));
    for (int a = 0; a < n; ++a) {
      const double h = data->spacing[a];
      std::vector<int> up = idx, dn = idx;
      ++up[a];
      --dn[a];
      out.first.col(a) = (at(up) - at(dn)) / (2.0 * h);
      out.second[static_cast<std::size_t>(a) * n + a] =
          (at(up) - 2.0 * out.position + at(dn)) / (h * h);
      for (int b = a + 1; b < n; ++b) {
        const double hb = data->spacing[b];
        std::vector<int> pp = up, pm = up, mp = dn, mm = dn;
        ++pp[b];
        --pm[b];
        ++mp[b];
        --mm[b];
        const Eigen::VectorXd mixed =
            (at(pp) - at(pm) - at(mp) + at(mm)) / (4.0 * h * hb);
        out.second[static_cast<std::size_t>(a) * n + b] = mixed;
        out.second[static_cast<std::size_t>(b) * n + a] = mixed;
      }
    }
    return out;
  };

  std::vector<ChartAxis> domain;
  for (int a = 0; a < n; ++a) {
    domain.push_back({data->axes[a].front(), data->axes[a].back(),
                      data->spacing[a], data->spacing[a]});
  }

  GridImmersion g{ParametricImmersion(n, m, std::move(domain), position, jet), {}};

  // Interior nodes: one step away from every lattice boundary.
  std::vector<int> idx(n, 1);
  for (;;) {
    Eigen::VectorXd u(n);
    for (int a = 0; a < n; ++a) u[a] = data->axes[a][idx[a]];
    g.interior_points.push_back(std::move(u));
    int a = n - 1;
    while (a >= 0) {
      if (++idx[a] + 1 < static_cast<int>(data->axes[a].size())) break;
      idx[a] = 1;
      --a;
    }
    if (a < 0) break;
  }
  return g;
}

GridImmersion grid_immersion_from_file(const std::string& path) {
  return grid_immersion_from_json(parse_file(path));
}

}  // namespace deltaideal
