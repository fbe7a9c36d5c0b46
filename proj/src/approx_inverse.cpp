#include "nkpde/approx_inverse.hpp"

#include <stdexcept>

namespace nkpde {

ApproxInverse assemble_approx_inverse(const Problem& p, const FiniteOpMatrix& Abar,
                                      const std::vector<std::vector<RealSeq>>& wbar,
                                      const RealSeq* sigma, std::size_t n) {
  if (n < 1) throw std::invalid_argument("assemble_approx_inverse: N must be positive");
  const std::size_t d = dim_of(p);
  if (Abar.rows != d * n || Abar.cols != d * n)
    throw std::invalid_argument("assemble_approx_inverse: Abar shape mismatch");

  ApproxInverse a;
  a.Abar = Abar;
  a.N = n;
  a.dim = d;
  switch (family_of(p)) {
    case Family::scalar: {
      if (wbar.size() != 1 || wbar[0].size() != 1)
        throw std::invalid_argument("assemble_approx_inverse: wbar shape mismatch");
      a.tail = ScalarTail{to_interval(wbar[0][0])};
      break;
    }
    case Family::skt: {
      if (wbar.size() != 2 || wbar[0].size() != 2 || wbar[1].size() != 2)
        throw std::invalid_argument("assemble_approx_inverse: wbar shape mismatch");
      SKTTail t;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) t.wbar[i][j] = to_interval(wbar[i][j]);
      a.tail = std::move(t);
      break;
    }
    case Family::dae: {
      if (wbar.size() != 1 || wbar[0].size() != 1)
        throw std::invalid_argument("assemble_approx_inverse: wbar shape mismatch");
      if (!sigma) throw std::invalid_argument("assemble_approx_inverse: sigma required");
      a.tail = DAETail{to_interval(wbar[0][0]), to_interval(*sigma)};
      break;
    }
  }
  return a;
}

Vec tail_apply(const ApproxInverse& a, const Vec& v, Exec ex) {
  if (v.size() != a.dim) throw std::invalid_argument("tail_apply: dimension mismatch");
  Vec out(a.dim);
  if (const auto* s = std::get_if<ScalarTail>(&a.tail)) {
    out[0] = conv(s->wbar, inv_laplacian(v[0]), ex);
  } else if (const auto* s2 = std::get_if<SKTTail>(&a.tail)) {
    for (std::size_t i = 0; i < 2; ++i) {
      CosSeq acc;
      for (std::size_t j = 0; j < 2; ++j)
        acc = add(acc, conv(s2->wbar[i][j], inv_laplacian(v[j]), ex));
      out[i] = std::move(acc);
    }
  } else {
    const auto& t = std::get<DAETail>(a.tail);
    CosSeq lap2 = inv_laplacian(v[1]);
    out[0] = add(conv(t.wbar, v[0], ex), conv(t.sigma, lap2, ex));
    out[1] = std::move(lap2);
  }
  return out;
}

// Split v = vf + vt at mode N; then A v = Ābar vf + (I-Pi_N)(T vf) + T vt
// exactly, with no cancelling subtraction to widen enclosures.
Vec apply_A(const ApproxInverse& a, const Vec& v, Exec ex) {
  if (v.size() != a.dim) throw std::invalid_argument("apply_A: dimension mismatch");
  const std::size_t n = a.N;

  Vec vf(a.dim), vt(a.dim);
  bool has_tail = false;
  for (std::size_t i = 0; i < a.dim; ++i) {
    vf[i] = project(v[i], n);
    vt[i] = tail_part(v[i], n);
    for (const Interval& x : vt[i].c)
      if (x.lo != 0.0 || x.hi != 0.0 || x.tainted) has_tail = true;
  }

  CosSeq stacked = CosSeq::zeros(a.dim * n);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t k = 0; k < n; ++k) stacked.c[i * n + k] = vf[i].c[k];
  CosSeq fin = matvec(a.Abar, stacked, ex);

  Vec tvf = tail_apply(a, vf, ex);

  Vec out(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    CosSeq block = CosSeq::zeros(n);
    for (std::size_t k = 0; k < n; ++k) block.c[k] = fin.c[i * n + k];
    out[i] = add(block, tail_part(tvf[i], n));
  }
  if (has_tail) {
    Vec tvt = tail_apply(a, vt, ex);
    for (std::size_t i = 0; i < a.dim; ++i) out[i] = add(out[i], tvt[i]);
  }
  return out;
}

}  // namespace nkpde
