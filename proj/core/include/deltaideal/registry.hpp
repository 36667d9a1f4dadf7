#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltaideal/curvature.hpp"

namespace deltaideal {

struct CoveringRelation {
  std::string base;
  int sheets = 2;
};

/// A registered compact homogeneous space: dimension, pointwise curvature
/// model, first Laplace eigenvalue (when known), irreducibility of the
/// isotropy action, and an optional covering relation.
struct SpaceDescriptor {
  std::string name;
  int dimension = 0;
  double model_c0 = 0.0;  ///< constant-curvature model parameter
  std::optional<double> lambda1;
  bool irreducible = false;
  std::optional<CoveringRelation> covers;

  CurvatureTensor curvature_model() const {
    return constant_curvature_tensor(dimension, model_c0);
  }
};

/// Returns the registered first eigenvalue; throws UnknownSpectrum when the
/// registry has no value for this space.
double lambda1_closed_form(const SpaceDescriptor& s);

/// Pullback inequality on registry values for a registered covering pair:
/// lambda1(base) >= lambda1(cover) - tol. Throws MismatchedPair when no
/// covering relation links the spaces, UnknownSpectrum when an eigenvalue is
/// missing.
bool verify_pullback(const SpaceDescriptor& cover, const SpaceDescriptor& base,
                     double tol);

/// Lookup table of space descriptors, loaded from JSON.
class SpaceRegistry {
 public:
  /// The registry shipped with the library: round spheres and real
  /// projective spaces up to dimension 16, plus flat square tori.
  static const SpaceRegistry& builtin();

  static SpaceRegistry from_json_text(const std::string& text);
  static SpaceRegistry from_file(const std::string& path);

  const SpaceDescriptor* find(const std::string& name) const;
  /// Throws UnknownSpectrum-flavored Error when the name is absent.
  const SpaceDescriptor& at(const std::string& name) const;
  const std::vector<SpaceDescriptor>& spaces() const { return spaces_; }

 private:
  std::vector<SpaceDescriptor> spaces_;
};

}  // namespace deltaideal
