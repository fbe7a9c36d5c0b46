#ifndef NKPDE_APPROX_INVERSE_HPP
#define NKPDE_APPROX_INVERSE_HPP

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "nkpde/opmatrix.hpp"
#include "nkpde/problems.hpp"

namespace nkpde {

// Tail data of the approximate inverse, per family.  The tail operator T is
//   scalar:             T = M(w̄) InvLap
//   cross-diffusion:    T_ij = M(w̄_ij) InvLap (2x2 blockwise)
//   saturating family:  T = [[M(w̄), M(σ̄) InvLap], [0, InvLap]]
// and the full operator is A = Ābar + T - Pi_N T Pi_N.
struct ScalarTail {
  CosSeq wbar;
};
struct SKTTail {
  std::array<std::array<CosSeq, 2>, 2> wbar;
};
struct DAETail {
  CosSeq wbar;
  CosSeq sigma;
};

struct ApproxInverse {
  FiniteOpMatrix Abar;  // dim*N square, interval entries
  std::variant<ScalarTail, SKTTail, DAETail> tail;
  std::size_t N = 0;
  std::size_t dim = 1;
};

// Bundle the floating-point Galerkin outputs into the operator.  sigma is
// required for the saturating-diffusion family and ignored otherwise.
ApproxInverse assemble_approx_inverse(const Problem& p, const FiniteOpMatrix& Abar,
                                      const std::vector<std::vector<RealSeq>>& wbar,
                                      const RealSeq* sigma, std::size_t n);

// T v, exact on finite supports.
Vec tail_apply(const ApproxInverse& a, const Vec& v, Exec ex = Exec::par);

// A v = Ābar Pi_N v + T v - Pi_N T Pi_N v, exact on finite supports.  On
// inputs supported above mode N-1 only the tail acts; on Pi_N inputs the tail
// contributes only above mode N-1.
Vec apply_A(const ApproxInverse& a, const Vec& v, Exec ex = Exec::par);

}  // namespace nkpde

#endif
