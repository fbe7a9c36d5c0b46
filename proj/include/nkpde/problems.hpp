#ifndef NKPDE_PROBLEMS_HPP
#define NKPDE_PROBLEMS_HPP

#include <stdexcept>
#include <variant>
#include <vector>

#include "nkpde/opmatrix.hpp"
#include "nkpde/seq.hpp"

namespace nkpde {

// Components of a (possibly vector-valued) solution; size 1 or 2.
using Vec = std::vector<CosSeq>;
using RealVec = std::vector<RealSeq>;

enum class Family { scalar, skt, dae };
enum class Regime { weak, strong, case3, degenerate };

struct DegenerateCompetition : std::runtime_error {
  DegenerateCompetition() : std::runtime_error("a1 a2 = b1 b2: no coexistence state") {}
};

// Lap(u^2) + alpha u - beta u^2 + g = 0.
struct ScalarQuadraticProblem {
  Interval alpha{1.0};
  Interval beta{1.0};
  CosSeq g;
};

// Cross-diffusion system: Lap(Phi(u)) + R(u) = 0 with
//   Phi_i = (d_i + d_{i1} u1 + d_{i2} u2) u_i,
//   R_i   = (r_i - <competition row i, u>) u_i.
struct SKTProblem {
  Interval d1, d2, d11, d12, d21, d22;
  Interval r1, r2, a1, a2, b1, b2;
};

// Saturating diffusion Phi(u) = u/(gamma+u), handled as the first-order system
//   u - gamma v - u*v = 0,
//   Lap v + alpha u - beta u^2 + g = 0,
// whose second component is v = Phi(u).
struct RationalDiffusionProblem {
  Interval gamma{1.0};
  Interval alpha{1.0};
  Interval beta{1.0};
  CosSeq g;
};

using Problem =
    std::variant<ScalarQuadraticProblem, SKTProblem, RationalDiffusionProblem>;

Family family_of(const Problem& p);
std::size_t dim_of(const Problem& p);

// The forcing used by the demo scalar problem:
// 1/2 + 3cos(pi x) + 2cos(2 pi x) - cos(3 pi x) + 6cos(4 pi x).
CosSeq default_forcing();

Vec residual_F(const Problem& p, const Vec& u, Exec ex = Exec::par);

// Everything the Jacobian action at a fixed base point needs.  For the
// scalar/skt families DF(u) v = Lap(dphi ** v) + dr ** v blockwise; for the
// dae family dphi holds {{1 - u2, -(gamma + u1)}, {alpha - 2 beta u1, unused}}
// and the action is (dphi00*v1 + dphi01*v2, Lap v2 + dphi10*v1).
struct Linearization {
  Family family = Family::scalar;
  std::size_t dim = 1;
  std::vector<std::vector<CosSeq>> dphi;
  std::vector<std::vector<CosSeq>> dr;
};

Linearization linearize(const Problem& p, const Vec& u);

Vec jacobian_apply(const Linearization& lin, const Vec& v, Exec ex = Exec::par);

// Pi_M DF(u) Pi_M as a dense (dim M) x (dim M) interval matrix, assembled from
// multiplication-operator blocks (independent of the columnwise action path).
FiniteOpMatrix jacobian_matrix(const Problem& p, const Vec& u, std::size_t m);

struct HomogeneousStates {
  Interval coexistence[2];
  Interval extinction1[2];
  Interval extinction2[2];
};

HomogeneousStates homogeneous_states(const SKTProblem& p);

Regime regime_classify(const SKTProblem& p);

}  // namespace nkpde

#endif
