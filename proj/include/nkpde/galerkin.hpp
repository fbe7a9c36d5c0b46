#ifndef NKPDE_GALERKIN_HPP
#define NKPDE_GALERKIN_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "nkpde/problems.hpp"

// Non-rigorous floating-point numerics that manufacture the certificate's
// inputs: the approximate solution (Newton on the Galerkin projection), the
// approximate reciprocal of the diffusion derivative, and the
// padded-then-projected approximate inverse block.  Everything produced here
// is re-audited with interval arithmetic by the certificate, so plain doubles
// and partial-pivot factorizations are enough.
namespace nkpde {

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};
struct SingularJacobian : std::runtime_error {
  SingularJacobian() : std::runtime_error("projected Jacobian is numerically singular") {}
};
struct SingularMultiplication : std::runtime_error {
  SingularMultiplication()
      : std::runtime_error("finite multiplication matrix is numerically singular") {}
};

struct NewtonConfig {
  std::size_t max_iters = 60;
  double residual_tol = 1e-13;  // plain l1 norm of the projected residual
  double damping = 1.0;         // initial step scale in (0, 1]
};

struct NewtonLog {
  std::vector<double> residuals;  // accepted-iterate history, initial first
  // Max of r_{k+1} / r_k^2 over accepted steps with r_k in [1e-10, 1e-4):
  // finite iff the run entered that window.
  double quad_fit_c = 0.0;
  bool quad_window_seen = false;
};

double projected_residual_norm(const Problem& p, const RealVec& u, std::size_t n);

RealVec solve_newton(const Problem& p, std::size_t n, const RealVec& guess,
                     const NewtonConfig& cfg = {}, NewtonLog* log = nullptr);

// Approximate reciprocal of the diffusion derivative.  Scalar family: wbar[0][0]
// with wbar * Phi'(u) ~ 1.  SKT: 2x2 matrix of sequences with wbar ** DPhi(u) ~ I.
// Saturating-diffusion system: wbar[0][0] with wbar * (1 - u2) ~ 1.
struct WbarResult {
  std::vector<std::vector<RealSeq>> wbar;
  Interval defect;  // rigorous enclosure of the reciprocal defect norm
  bool warn = false;
};

WbarResult compute_wbar(const Problem& p, const RealVec& u, std::size_t n, const Weight& w);

// sigma ~ Pi_N(wbar * (gamma + u1)) for the saturating-diffusion family;
// trunc_defect encloses the norm of the discarded modes N..2N-2.
struct SigmaResult {
  RealSeq sigma;
  Interval trunc_defect;
};

SigmaResult compute_sigma(const RealSeq& wbar, const RealSeq& u1, double gamma, std::size_t n,
                          const Weight& w);

// N-block of the inverse of the padded projected Jacobian:
//   Abar ~ Pi_N (Pi_P DF(u) Pi_P)^{-1} Pi_N,  P = round(pad_factor * N).
// Entries are point intervals around the computed floats; quality is judged a
// posteriori by the certificate, never here.
FiniteOpMatrix compute_Abar(const Problem& p, const RealVec& u, std::size_t n,
                            double pad_factor = 2.0);

enum class BaseState { zero, constant, coexistence, extinction1, extinction2 };

// Initial-guess recipe: a homogeneous base state plus cosine perturbations
// (component, mode index, amplitude).  For the saturating-diffusion family the
// constant base fills the second component consistently with v = u/(gamma+u).
struct GuessRecipe {
  BaseState base = BaseState::zero;
  double constant1 = 0.0;
  double constant2 = 0.0;
  std::vector<std::tuple<std::size_t, std::size_t, double>> modes;
};

RealVec make_guess(const Problem& p, const GuessRecipe& r, std::size_t n);

struct ParamPath {
  std::string name;  // one of d1,d2,d11,d12,d21,d22,r1,r2,a1,a2,b1,b2,alpha,beta,gamma
  double start = 0.0;
  double end = 0.0;
  std::size_t steps = 1;  // number of solves along the path, endpoints included
};

Problem set_param(const Problem& p, const std::string& name, double value);

struct ContinuationResult {
  std::vector<double> values;     // parameter value per completed step
  std::vector<RealVec> states;    // solution per completed step
  bool completed = false;
  std::string message;
};

ContinuationResult continuation_run(const Problem& p, const ParamPath& path, std::size_t n,
                                    const RealVec& guess, const NewtonConfig& cfg = {});

}  // namespace nkpde

#endif
