#ifndef NKPDE_CERTIFY_HPP
#define NKPDE_CERTIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nkpde/approx_inverse.hpp"
#include "nkpde/problems.hpp"

// Rigorous a posteriori certification: given a numerical state ū and the
// floating-point operator data, compute interval bounds
//   Y  >= ||A F(ū)||,  Z1 >= ||I - A DF(ū)||,  Z2 >= ||A D²F||
// in the weighted-l1 operator norm, check the contraction conditions
//   Z1 < 1  and  2 Y Z2 < (1 - Z1)^2
// plus the reciprocal hypothesis on w̄, and derive the radius range
//   r_min = (1 - Z1 - sqrt((1-Z1)^2 - 2 Y Z2)) / Z2 <= r < (1 - Z1) / Z2
// inside which a genuine zero of F exists and is unique.
namespace nkpde {

struct Certificate {
  std::string family;  // "scalar" | "skt" | "dae"
  std::size_t dim = 1;
  std::size_t N = 0;
  double nu = 0.0;
  std::uint64_t solution_hash = 0;
  std::vector<std::pair<std::string, Interval>> params;

  Interval Y, Z1_finite, Z1_tail, Z1, Z2;
  Interval hyp_w;  // reciprocal defect; must be < 1
  bool hyp_w_ok = false;
  Interval r_min, r_max;  // enclosures; certified range is [r_min.hi, r_max.lo)
  double r = 0.0;         // selected radius (midpoint policy, see nk_radius)
  double c0_bound = 0.0;  // per-component sup-norm error bound implied by r
  bool conditions_ok = false;
  bool tainted = false;
  std::map<std::string, double> diagnostics;
};

// cert carries whatever bounds were computed before the failure.
struct ConditionsFailed : std::runtime_error {
  Certificate cert;
  explicit ConditionsFailed(const std::string& msg, Certificate c = {})
      : std::runtime_error(msg), cert(std::move(c)) {}
};

Interval bound_Y(const Problem& p, const Vec& ubar, const ApproxInverse& a, const Weight& w,
                 Exec ex = Exec::par);

struct Z1Parts {
  Interval finite, tail, total;
};

// finite: max over columns n <= 2N-2 (all components) of the column norms of
// I - A DF(ū); tail: the family tail estimate, decaying like 1/(N pi)^2.
Z1Parts bound_Z1(const Problem& p, const Vec& ubar, const ApproxInverse& a, const Weight& w,
                 Exec ex = Exec::par);

// Valid for every u since the nonlinearities are quadratic (constant D²F).
Interval bound_Z2(const Problem& p, const ApproxInverse& a, const Weight& w,
                  Exec ex = Exec::par);

struct RadiusRange {
  Interval r_min, r_max;
};

// Throws ConditionsFailed naming the violated inequality; the checks are
// strict on the pessimistic interval ends.
RadiusRange nk_radius(const Interval& Y, const Interval& Z1, const Interval& Z2);

// Selected radius: midpoint of [r_min.hi, min(r_max.lo, 2 r_min.hi)]; the
// range itself stays in the certificate.
double select_radius(const RadiusRange& rr);

struct HypWResult {
  Interval value;
  bool ok = false;
};

// || 1 - w̄ * Phi'(ū) || < 1 (blockwise column-sum norm for systems); implied
// by Z1 < 1 through the tail formulas but checked independently.
HypWResult check_hyp_w(const Problem& p, const Vec& ubar, const ApproxInverse& a,
                       const Weight& w);

// Full pipeline.  sigma is required for the saturating-diffusion family.
// Throws ConditionsFailed carrying the partial certificate if any condition
// (including taint-freedom) fails.
Certificate certify(const Problem& p, const RealVec& ubar,
                    const std::vector<std::vector<RealSeq>>& wbar, const RealSeq* sigma,
                    const FiniteOpMatrix& Abar, double nu, Exec ex = Exec::par);

}  // namespace nkpde

#endif
