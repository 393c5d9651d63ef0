#pragma once

#include <map>
#include <string>
#include <vector>

#include "jewelbox/jewel.hpp"
#include "jewelbox/rng.hpp"

namespace jewelbox::bordmap {

using graphs::EdgeMask;
using jewel::FaceChain;
using jewel::JewelPolytope;

/// The rank-indexed smoothing functions g_r: [c_r, 1] -> [0, 1]: cubic
/// smoothstep rising on [c_r, c_{r+1}], constantly 1 beyond. C^1; exact on
/// rational inputs.
struct SmoothingFamily {
  jewel::TruncationSchedule schedule;

  Rat eval_exact(int r, const Rat& t) const;             // throws out_of_domain
  std::pair<double, double> eval(int r, double t) const;  // (value, derivative)
};

/// pi_A(x)_i = x_i * prod g_S(x_S) over proper cores S containing i but not
/// all of A; indexed over all of Delta with zeros off A.
std::vector<Rat> pi_A_exact(const JewelPolytope& p, EdgeMask a, const std::vector<Rat>& x);
std::vector<double> pi_A(const JewelPolytope& p, EdgeMask a, const std::vector<double>& x);

/// Projective normalization of pi_A: coordinates over A summing to 1.
struct ProjectivePoint {
  EdgeMask support = 0;
  std::vector<Rat> coords;  // over Delta, zero off the support
};

ProjectivePoint p_A(const JewelPolytope& p, EdgeMask a, const std::vector<Rat>& x);

/// p_A for every core subset A (Delta included), keyed by core mask.
std::map<EdgeMask, ProjectivePoint> p_C(const JewelPolytope& p, const std::vector<Rat>& x);

/// Zero-pattern of pi_A per core subset: constant on open faces.
struct StratumSignature {
  std::vector<std::pair<EdgeMask, EdgeMask>> zero_patterns;  // (core, zero coords)
  auto operator<=>(const StratumSignature&) const = default;
};

StratumSignature stratum_signature(const JewelPolytope& p, const std::vector<Rat>& x);

/// Rational point strictly inside the face spanned by the given vertices.
std::vector<Rat> sample_relint(const JewelPolytope& p, const std::vector<int>& vertex_ids,
                               Rng& rng);

struct CommuteReport {
  int samples = 0;
  int cores_checked = 0;
  double max_discrepancy = 0.0;  // exact evaluation: 0 on success
  bool pass = false;
};

/// Collapse compatibility: points of J(G') evaluated through p_{A'} agree with
/// the same points pushed into J(G) and evaluated through p_A,
/// A = core(A' u Phi).
CommuteReport check_commute(const graphs::ForestCollapse& c, const JewelPolytope& p_big,
                            const JewelPolytope& p_small, int samples, Rng& rng);

struct JacobianReport {
  int chart_dim = 0;
  double min_singular = 0.0;
  double max_singular = 0.0;
  bool pass = false;  // min > 1e-8 * max(1, max)
};

/// Finite-difference Jacobian of the per-block affine-chart map at a point
/// strictly interior to the face of the chain. Throws degenerate_sample when
/// the point sits too close to the boundary for the step size.
JacobianReport jacobian_check(const JewelPolytope& p, const FaceChain& chain,
                              const std::vector<Rat>& x);

/// Per-face constancy / cross-face distinctness data for the signatures.
struct StrataReport {
  int faces_checked = 0;
  bool constant_on_faces = false;
  bool distinct_across_faces = false;
  bool vertex_patterns_match_chains = false;
  bool pass = false;
};

StrataReport check_strata(const JewelPolytope& p, int samples_per_face, Rng& rng);

/// Nonvanishing sweep: pi_A nonzero at every vertex for every core A.
bool check_nonzero_at_vertices(const JewelPolytope& p);

}  // namespace jewelbox::bordmap
