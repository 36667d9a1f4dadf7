#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltaideal/delta.hpp"
#include "deltaideal/registry.hpp"

namespace deltaideal {

enum class Outcome {
  IdealCapable,      ///< the eigenvalue criterion is satisfied
  NoIdealEmbedding,  ///< obstructed in every Euclidean codimension
  Inconclusive,
};

std::string to_string(Outcome o);

/// Numbers and named argument steps backing a verdict. All values are
/// recomputed at decision time, never cached.
struct VerdictEvidence {
  double lambda1 = 0.0;   ///< subject's first positive eigenvalue
  double delta0 = 0.0;    ///< subject's normalized maximum invariant
  double n_delta0 = 0.0;  ///< dimension times delta0: the ideality threshold
  std::optional<std::string> partner;       ///< covering partner, if any
  std::optional<double> partner_lambda1;
  std::vector<std::string> chain;  ///< argument steps, in order
  std::string reason;              ///< set for Inconclusive outcomes
};

struct Verdict {
  std::string subject;
  Outcome outcome = Outcome::Inconclusive;
  VerdictEvidence evidence;
};

/// The normalized maximum invariant of a registered space, computed from its
/// curvature model along the optimizer path.
double space_delta0(const SpaceDescriptor& s, const OptimizerOptions& opts = {});

/// Eigenvalue criterion for irreducible compact homogeneous spaces: ideal
/// embeddings exist exactly when lambda1 equals n * delta0. Returns
/// Inconclusive (not an error) when the space is not flagged irreducible.
/// Throws UnknownSpectrum without a registered eigenvalue, and
/// ConsistencyViolation if the data contradicts lambda1 >= n * delta0.
///
/// When lambda1 is a discrete estimate rather than a closed form, pass its
/// error bar: the verdict is Inconclusive whenever the equality question
/// falls inside the bar, so discretization error can never manufacture a
/// verdict.
Verdict ideality_criterion(const SpaceDescriptor& s, double delta0,
                           double lambda1_error_bar = 0.0);

/// Covering obstruction: for a registered covering cover -> base between
/// irreducible compact homogeneous spaces with distinct first eigenvalues,
/// the base admits no ideal embedding in any Euclidean space. Equal
/// eigenvalues leave the question open (Inconclusive). Throws
/// PullbackViolation when lambda1(base) < lambda1(cover), MismatchedPair
/// without a registered relation, and ConsistencyViolation when the two
/// curvature models disagree on delta0.
Verdict covering_obstruction(const SpaceDescriptor& cover, const SpaceDescriptor& base,
                             const OptimizerOptions& opts = {});

}  // namespace deltaideal
