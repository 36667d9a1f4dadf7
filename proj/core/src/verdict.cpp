#include "deltaideal/verdict.hpp"

#include <cmath>

namespace deltaideal {

namespace {
constexpr double kRelTol = 1e-9;

double tolerance_scale(double a, double b = 0.0) {
  return kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::IdealCapable: return "IDEAL_CAPABLE";
    case Outcome::NoIdealEmbedding: return "NO_IDEAL_EMBEDDING";
    case Outcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

double space_delta0(const SpaceDescriptor& s, const OptimizerOptions& opts) {
  return max_normalized_delta(s.curvature_model(), opts).value;
}

Verdict ideality_criterion(const SpaceDescriptor& s, double delta0,
                           double lambda1_error_bar) {
  Verdict v;
  v.subject = s.name;
  v.evidence.delta0 = delta0;
  v.evidence.n_delta0 = s.dimension * delta0;

  if (!s.irreducible) {
    v.outcome = Outcome::Inconclusive;
    v.evidence.reason = "NotIrreducible: the eigenvalue criterion applies only to "
                        "irreducible isotropy actions";
    if (s.lambda1) v.evidence.lambda1 = *s.lambda1;
    return v;
  }
  const double lambda1 = lambda1_closed_form(s);
  v.evidence.lambda1 = lambda1;

  // For discrete eigenvalue estimates the decision band widens to the error
  // bar, and anything inside the band stays undecided.
  const double tol = std::max(lambda1_error_bar,
                              tolerance_scale(lambda1, v.evidence.n_delta0));
  if (lambda1 < v.evidence.n_delta0 - tol) {
    throw ConsistencyViolation(
        "space '" + s.name + "' violates the eigenvalue lower bound: lambda1 = " +
        std::to_string(lambda1) + " < n*delta0 = " + std::to_string(v.evidence.n_delta0));
  }
  if (std::abs(lambda1 - v.evidence.n_delta0) <= tol) {
    if (lambda1_error_bar > 0.0) {
      v.outcome = Outcome::Inconclusive;
      v.evidence.reason = "equality question falls inside the eigenvalue estimate's "
                          "error bar";
    } else {
      v.outcome = Outcome::IdealCapable;
      v.evidence.chain = {"lambda1-meets-ideality-threshold"};
    }
  } else {
    v.outcome = Outcome::NoIdealEmbedding;
    v.evidence.chain = {"lambda1-exceeds-ideality-threshold"};
  }
  return v;
}

Verdict covering_obstruction(const SpaceDescriptor& cover, const SpaceDescriptor& base,
                             const OptimizerOptions& opts) {
  if (!cover.covers || cover.covers->base != base.name) {
    throw MismatchedPair("no covering relation registered from '" + cover.name +
                         "' onto '" + base.name + "'");
  }
  Verdict v;
  v.subject = base.name;
  v.evidence.partner = cover.name;

  if (!cover.irreducible || !base.irreducible) {
    v.outcome = Outcome::Inconclusive;
    v.evidence.reason = "NotIrreducible: the obstruction needs irreducible isotropy "
                        "actions on both spaces";
    return v;
  }
  const double lambda_cover = lambda1_closed_form(cover);
  const double lambda_base = lambda1_closed_form(base);
  v.evidence.lambda1 = lambda_base;
  v.evidence.partner_lambda1 = lambda_cover;

  const double tol = tolerance_scale(lambda_cover, lambda_base);
  if (lambda_base < lambda_cover - tol) {
    throw PullbackViolation(
        "lambda1(base) = " + std::to_string(lambda_base) +
        " is below lambda1(cover) = " + std::to_string(lambda_cover) +
        ": eigenfunction pullback makes this impossible for a covering pair");
  }

  // A covering is a local isometry, so the two curvature models must agree
  // on the normalized maximum invariant. Recomputed here, never cached.
  const double delta0_cover = space_delta0(cover, opts);
  const double delta0_base = space_delta0(base, opts);
  if (std::abs(delta0_cover - delta0_base) > kRelTol) {
    throw ConsistencyViolation("delta0 differs across the covering pair: " +
                               std::to_string(delta0_cover) + " vs " +
                               std::to_string(delta0_base));
  }
  v.evidence.delta0 = delta0_base;
  v.evidence.n_delta0 = base.dimension * delta0_base;

  if (std::abs(lambda_base - lambda_cover) <= tol) {
    v.outcome = Outcome::Inconclusive;
    v.evidence.reason = "equal first eigenvalues: the obstruction hypothesis fails";
    return v;
  }

  // lambda1(base) > lambda1(cover) >= n*delta0(cover) = n*delta0(base),
  // so the base misses the ideality threshold strictly.
  v.outcome = Outcome::NoIdealEmbedding;
  v.evidence.chain = {"lambda1-pullback", "strict-spectral-gap",
                      "ideality-threshold-exceeded"};
  return v;
}

}  // namespace deltaideal
