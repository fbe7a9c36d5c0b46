#ifndef NKPDE_OPMATRIX_HPP
#define NKPDE_OPMATRIX_HPP

#include <cstddef>
#include <vector>

#include "nkpde/seq.hpp"

namespace nkpde {

// Dense interval matrix acting on truncated coefficient vectors; row-major.
struct FiniteOpMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Interval> a;

  FiniteOpMatrix() = default;
  FiniteOpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Interval& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Interval& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Truncation of the multiplication operator M(u), (M(u)v) = u*v:
//   M(u)_{k,0} = u_k,   M(u)_{k,n} = u_{|k-n|} + u_{k+n}  (n >= 1).
FiniteOpMatrix mult_op_matrix(const CosSeq& u, std::size_t rows, std::size_t cols);

// r_k = sum_j M_{k,j} v_j with v zero-extended/truncated to the column count.
CosSeq matvec(const FiniteOpMatrix& m, const CosSeq& v, Exec ex = Exec::par);
CosSeq matvec_serial(const FiniteOpMatrix& m, const CosSeq& v);

// sum_k |M_{k,j}| xi_k for one column.
Interval colnorm(const FiniteOpMatrix& m, std::size_t j, const std::vector<Interval>& xi);

// Upper bound for the l1_nu operator norm of the finite block extended by
// zero: max_j colnorm(j) / xi_j.
Interval opnorm_columns(const FiniteOpMatrix& m, const Weight& w, Exec ex = Exec::par);

bool any_tainted(const FiniteOpMatrix& m);

}  // namespace nkpde

#endif
