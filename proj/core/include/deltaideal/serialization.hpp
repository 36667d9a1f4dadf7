#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "deltaideal/curvature.hpp"
#include "deltaideal/delta.hpp"
#include "deltaideal/immersion.hpp"
#include "deltaideal/mesh.hpp"
#include "deltaideal/partitions.hpp"
#include "deltaideal/spectral.hpp"
#include "deltaideal/verdict.hpp"

namespace deltaideal {

/// Output documents use ordered JSON so identical inputs produce
/// byte-identical bytes.
using Json = nlohmann::ordered_json;

// --- curvature tensors ---------------------------------------------------

/// Accepts { "n": int, "components": [n][n][n][n] } or
/// { "n": int, "model": "constant", "c0": real }.
CurvatureTensor tensor_from_json(const nlohmann::json& j, double tol = kSymmetryTol);
CurvatureTensor tensor_from_file(const std::string& path, double tol = kSymmetryTol);
Json tensor_to_json(const CurvatureTensor& R);

// --- partitions ----------------------------------------------------------

Json partition_to_json(const Partition& p);  // [2,2]; [] for the empty tuple
Partition partition_from_json(int n, const nlohmann::json& j);

// --- delta results -------------------------------------------------------

Json delta_result_to_json(const DeltaResult& r, bool include_frame = false);
Json max_normalized_to_json(const MaxNormalizedDelta& r);

// --- spectra -------------------------------------------------------------

Json spectral_result_to_json(const SpectralResult& r, bool include_eigenvector = false);

// --- verdicts ------------------------------------------------------------

Json verdict_to_json(const Verdict& v);

// --- immersion reports ---------------------------------------------------

Json inequality_report_to_json(const InequalityReport& r, bool include_records = true);
std::string inequality_report_to_csv(const InequalityReport& r);
Json ideality_report_to_json(const IdealityReport& r, bool include_residuals = true);
std::string ideality_report_to_csv(const IdealityReport& r);

// --- meshes --------------------------------------------------------------

/// { "vertices": [[x,y,z],...], "faces": [[i,j,k],...],
///   "identification": [[vertex,class],...] (optional) }
TriMesh mesh_from_json(const nlohmann::json& j);
Json mesh_to_json(const TriMesh& m);

/// Reads .off or .json by extension.
TriMesh mesh_from_file(const std::string& path);

// --- sampled-grid immersions ----------------------------------------------

/// { "n": int, "m": int, "grid": [[point, position], ...] } on a full,
/// uniformly spaced lattice. Derivatives come from lattice central
/// differences; jets are available at interior lattice nodes.
struct GridImmersion {
  ParametricImmersion immersion;
  std::vector<Eigen::VectorXd> interior_points;
};
GridImmersion grid_immersion_from_json(const nlohmann::json& j);
GridImmersion grid_immersion_from_file(const std::string& path);

}  // namespace deltaideal
