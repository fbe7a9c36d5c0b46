#include "nkpde/certify.hpp"

#include <cmath>
#include <sstream>

#include "nkpde/cert_io.hpp"

namespace nkpde {

namespace {

Interval pi_sq() { return pow_u(pi_interval(), 2); }

// (n pi)^2; n^2 is exact in double for every feasible truncation size.
Interval npi_sq(std::size_t n) {
  const Interval nd(static_cast<double>(n));
  return nd * nd * pi_sq();
}

Vec to_ivec(const RealVec& u) {
  Vec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = to_interval(u[i]);
  return r;
}

Interval vec_norm(const Vec& v, const Weight& w) {
  Interval s;
  for (const CosSeq& c : v) s += norm_l1nu(c, w);
  return s;
}

Vec basis_vec(std::size_t dim, std::size_t j, std::size_t n) {
  Vec e(dim);
  for (auto& c : e) c = CosSeq::zeros(1);
  e[j] = CosSeq::basis(n);
  return e;
}

std::string family_name(const Problem& p) {
  switch (family_of(p)) {
    case Family::scalar: return "scalar";
    case Family::skt: return "skt";
    case Family::dae: return "dae";
  }
  return "scalar";
}

std::vector<std::pair<std::string, Interval>> param_list(const Problem& p) {
  std::vector<std::pair<std::string, Interval>> out;
  auto push_forcing = [&](const CosSeq& g) {
    for (std::size_t k = 0; k < g.len(); ++k)
      out.emplace_back("g" + std::to_string(k), g.c[k]);
  };
  if (const auto* q = std::get_if<ScalarQuadraticProblem>(&p)) {
    out.emplace_back("alpha", q->alpha);
    out.emplace_back("beta", q->beta);
    push_forcing(q->g);
  } else if (const auto* s = std::get_if<SKTProblem>(&p)) {
    out.emplace_back("d1", s->d1);
    out.emplace_back("d2", s->d2);
    out.emplace_back("d11", s->d11);
    out.emplace_back("d12", s->d12);
    out.emplace_back("d21", s->d21);
    out.emplace_back("d22", s->d22);
    out.emplace_back("r1", s->r1);
    out.emplace_back("r2", s->r2);
    out.emplace_back("a1", s->a1);
    out.emplace_back("a2", s->a2);
    out.emplace_back("b1", s->b1);
    out.emplace_back("b2", s->b2);
  } else {
    const auto& q = std::get<RationalDiffusionProblem>(p);
    out.emplace_back("gamma", q.gamma);
    out.emplace_back("alpha", q.alpha);
    out.emplace_back("beta", q.beta);
    push_forcing(q.g);
  }
  return out;
}

// Entrywise norms used by the system tail estimates:
//   E_ij = ||(I - wbar ** DPhi(u))_ij||,  W_ij = ||wbar_ij||,  R_ij = ||DR(u)_ij||.
struct SKTNorms {
  Interval E[2][2], W[2][2], R[2][2];
};

SKTNorms skt_norms(const Linearization& lin, const SKTTail& t, const Weight& w) {
  SKTNorms s;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CosSeq acc;
      for (std::size_t k = 0; k < 2; ++k) acc = add(acc, conv(t.wbar[i][k], lin.dphi[k][j]));
      CosSeq entry = i == j ? sub(CosSeq::unit(), acc) : acc;
      s.E[i][j] = norm_l1nu(entry, w);
      s.W[i][j] = norm_l1nu(t.wbar[i][j], w);
      s.R[i][j] = norm_l1nu(lin.dr[i][j], w);
    }
  return s;
}

Interval max_colsum2(const Interval m[2][2]) {
  return max(m[0][0] + m[1][0], m[0][1] + m[1][1]);
}

}  // namespace

Interval bound_Y(const Problem& p, const Vec& ubar, const ApproxInverse& a, const Weight& w,
                 Exec ex) {
  Vec f = residual_F(p, ubar, ex);
  Vec af = apply_A(a, f, ex);
  return vec_norm(af, w);
}

Z1Parts bound_Z1(const Problem& p, const Vec& ubar, const ApproxInverse& a, const Weight& w,
                 Exec ex) {
  const std::size_t n = a.N;
  const std::size_t d = a.dim;
  const Linearization lin = linearize(p, ubar);

  const std::size_t ncols = 2 * n - 1;
  std::vector<Interval> colnorms(d * ncols);
  auto column = [&](std::size_t idx) {
    const std::size_t j = idx / ncols;
    const std::size_t m = idx % ncols;
    Vec e = basis_vec(d, j, m);
    Vec dfcol = jacobian_apply(lin, e, Exec::serial);
    Vec b = apply_A(a, dfcol, Exec::serial);
    Interval s;
    for (std::size_t i = 0; i < d; ++i) s += norm_l1nu(sub(e[i], b[i]), w);
    return s / w.xi(m);
  };
  const long total = static_cast<long>(d * ncols);
  if (ex == Exec::par) {
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < total; ++idx)
      colnorms[static_cast<std::size_t>(idx)] = column(static_cast<std::size_t>(idx));
  } else {
    for (long idx = 0; idx < total; ++idx)
      colnorms[static_cast<std::size_t>(idx)] = column(static_cast<std::size_t>(idx));
  }

  Z1Parts out;
  for (const Interval& c : colnorms) out.finite = max(out.finite, c);

  const Interval np2 = npi_sq(n);
  if (const auto* st = std::get_if<ScalarTail>(&a.tail)) {
    Interval t1 = norm_l1nu(sub(CosSeq::unit(), conv(st->wbar, lin.dphi[0][0])), w);
    Interval t2 = norm_l1nu(conv(st->wbar, lin.dr[0][0]), w) / np2;
    out.tail = t1 + t2;
  } else if (const auto* s2 = std::get_if<SKTTail>(&a.tail)) {
    SKTNorms s = skt_norms(lin, *s2, w);
    Interval t[2][2];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        Interval wr = s.W[i][0] * s.R[0][j] + s.W[i][1] * s.R[1][j];
        t[i][j] = s.E[i][j] + wr / np2;
      }
    out.tail = max_colsum2(t);
  } else {
    const auto& t = std::get<DAETail>(a.tail);
    Interval t1 = norm_l1nu(sub(CosSeq::unit(), conv(t.wbar, lin.dphi[0][0])), w);
    Interval rp = norm_l1nu(lin.dphi[1][0], w);
    Interval term1 = t1 + (Interval(1.0) + norm_l1nu(t.sigma, w)) * rp / np2;
    CosSeq shifted = scale(lin.dphi[0][1], Interval(-1.0));  // gamma + u1
    Interval term2 = norm_l1nu(sub(t.sigma, conv(t.wbar, shifted)), w);
    out.tail = max(term1, term2);
  }

  out.total = max(out.finite, out.tail);
  return out;
}

Interval bound_Z2(const Problem& p, const ApproxInverse& a, const Weight& w, Exec ex) {
  const std::size_t n = a.N;
  const std::size_t d = a.dim;

  // Per-block finite column norms of A and A Lap (columns 0..N-1).
  std::vector<Interval> an(d * d * n), adn(d * d * n);
  auto column = [&](std::size_t idx) {
    const std::size_t j = idx / n;
    const std::size_t m = idx % n;
    Vec col = apply_A(a, basis_vec(d, j, m), Exec::serial);
    for (std::size_t i = 0; i < d; ++i) {
      Interval q = norm_l1nu(col[i], w) / w.xi(m);
      an[(i * d + j) * n + m] = q;
      adn[(i * d + j) * n + m] = q * npi_sq(m);
    }
  };
  const long total = static_cast<long>(d * n);
  if (ex == Exec::par) {
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < total; ++idx) column(static_cast<std::size_t>(idx));
  } else {
    for (long idx = 0; idx < total; ++idx) column(static_cast<std::size_t>(idx));
  }

  Interval A[2][2], AD[2][2];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        A[i][j] = max(A[i][j], an[(i * d + j) * n + m]);
        AD[i][j] = max(AD[i][j], adn[(i * d + j) * n + m]);
      }

  const Interval np2 = npi_sq(n);
  if (const auto* st = std::get_if<ScalarTail>(&a.tail)) {
    const Interval wn = norm_l1nu(st->wbar, w);
    A[0][0] = max(A[0][0], wn / np2);
    AD[0][0] = max(AD[0][0], wn);
    const auto& q = std::get<ScalarQuadraticProblem>(p);
    return Interval(2.0) * AD[0][0] + Interval(2.0) * abs(q.beta) * A[0][0];
  }
  if (const auto* s2 = std::get_if<SKTTail>(&a.tail)) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const Interval wn = norm_l1nu(s2->wbar[i][j], w);
        A[i][j] = max(A[i][j], wn / np2);
        AD[i][j] = max(AD[i][j], wn);
      }
    const auto& s = std::get<SKTProblem>(p);
    Interval col1A = A[0][0] + A[1][0], col1AD = AD[0][0] + AD[1][0];
    Interval col2A = A[0][1] + A[1][1], col2AD = AD[0][1] + AD[1][1];
    Interval two(2.0);
    Interval t1 = two * abs(s.d11) * col1AD + two * abs(s.a1) * col1A;
    Interval t2 = two * abs(s.d22) * col2AD + two * abs(s.a2) * col2A;
    Interval t3 = abs(s.d12) * col1AD + abs(s.b1) * col1A +
                  abs(s.d21) * col2AD + abs(s.b2) * col2A;
    return max(max(t1, t2), t3);
  }
  const auto& t = std::get<DAETail>(a.tail);
  A[0][0] = max(A[0][0], norm_l1nu(t.wbar, w));
  A[0][1] = max(A[0][1], norm_l1nu(t.sigma, w) / np2);
  A[1][1] = max(A[1][1], Interval(1.0) / np2);
  const auto& q = std::get<RationalDiffusionProblem>(p);
  return max(A[0][0] + A[1][0], Interval(2.0) * abs(q.beta) * (A[0][1] + A[1][1]));
}

RadiusRange nk_radius(const Interval& Y, const Interval& Z1, const Interval& Z2) {
  if (!(Z1.hi < 1.0)) throw ConditionsFailed("contraction condition failed: Z1 >= 1");
  if (!(Z2.lo > 0.0))
    throw ConditionsFailed("radius formula needs Z2 > 0 (no quadratic term?)");
  const Interval omz = Interval(1.0) - Z1;
  const Interval lhs = omz * omz;
  const Interval q = Interval(2.0) * Y * Z2;
  if (!(q.hi < lhs.lo))
    throw ConditionsFailed("contraction condition failed: 2 Y Z2 >= (1 - Z1)^2");
  Interval disc = lhs - q;
  if (disc.lo < 0.0) disc.lo = 0.0;
  const Interval sq = sqrt(disc);
  // (1 - Z1 - sqrt(disc)) / Z2 with the numerator rationalized: the direct
  // form cancels catastrophically when Y is tiny, inflating the enclosure.
  Interval rmin = Interval(2.0) * Y / (omz + sq);
  if (rmin.lo < 0.0) rmin.lo = 0.0;
  if (rmin.hi < 0.0) rmin.hi = 0.0;
  const Interval rmax = omz / Z2;
  if (!(rmin.hi <= rmax.lo))
    throw ConditionsFailed("radius range collapsed under rounding");
  return RadiusRange{rmin, rmax};
}

double select_radius(const RadiusRange& rr) {
  const double lo = rr.r_min.hi;
  const double hi = std::min(rr.r_max.lo, 2.0 * lo);
  return lo + 0.5 * (hi - lo);
}

HypWResult check_hyp_w(const Problem& p, const Vec& ubar, const ApproxInverse& a,
                       const Weight& w) {
  const Linearization lin = linearize(p, ubar);
  HypWResult out;
  if (const auto* st = std::get_if<ScalarTail>(&a.tail)) {
    out.value = norm_l1nu(sub(CosSeq::unit(), conv(st->wbar, lin.dphi[0][0])), w);
  } else if (const auto* s2 = std::get_if<SKTTail>(&a.tail)) {
    SKTNorms s = skt_norms(lin, *s2, w);
    out.value = max_colsum2(s.E);
  } else {
    const auto& t = std::get<DAETail>(a.tail);
    out.value = norm_l1nu(sub(CosSeq::unit(), conv(t.wbar, lin.dphi[0][0])), w);
  }
  out.ok = out.value.hi < 1.0 && !out.value.tainted;
  return out;
}

Certificate certify(const Problem& p, const RealVec& ubar,
                    const std::vector<std::vector<RealSeq>>& wbar, const RealSeq* sigma,
                    const FiniteOpMatrix& Abar, double nu, Exec ex) {
  if (!(nu >= 1.0)) throw std::invalid_argument("certify: nu must be >= 1");
  const std::size_t d = dim_of(p);
  if (Abar.rows == 0 || Abar.rows != Abar.cols || Abar.rows % d != 0)
    throw std::invalid_argument("certify: Abar shape mismatch");
  const std::size_t n = Abar.rows / d;
  if (ubar.size() != d) throw std::invalid_argument("certify: ubar dimension mismatch");
  RealVec upad(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = n; k < ubar[i].len(); ++k)
      if (ubar[i].c[k] != 0.0)
        throw std::invalid_argument("certify: ubar has modes >= N");
    upad[i] = pad(project(ubar[i], n), n);
  }

  const Weight w{nu};
  const ApproxInverse a = assemble_approx_inverse(p, Abar, wbar, sigma, n);
  const Vec iu = to_ivec(upad);

  Certificate cert;
  cert.family = family_name(p);
  cert.dim = d;
  cert.N = n;
  cert.nu = nu;
  cert.solution_hash = solution_hash(upad);
  cert.params = param_list(p);

  cert.Y = bound_Y(p, iu, a, w, ex);
  Z1Parts z1 = bound_Z1(p, iu, a, w, ex);
  cert.Z1_finite = z1.finite;
  cert.Z1_tail = z1.tail;
  cert.Z1 = z1.total;
  cert.Z2 = bound_Z2(p, a, w, ex);
  HypWResult hw = check_hyp_w(p, iu, a, w);
  cert.hyp_w = hw.value;
  cert.hyp_w_ok = hw.ok;

  const Linearization lin = linearize(p, iu);
  const Interval npi = Interval(static_cast<double>(n)) * pi_interval();
  if (const auto* s2 = std::get_if<SKTTail>(&a.tail)) {
    SKTNorms s = skt_norms(lin, *s2, w);
    Interval wr[2][2];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        wr[i][j] = s.W[i][0] * s.R[0][j] + s.W[i][1] * s.R[1][j];
    // Older tail estimate decaying like 1/N; diagnostic only, never certifies.
    cert.diagnostics["z1tail_legacy_linear"] = (max_colsum2(wr) / npi).hi;
  }
  if (const auto* t = std::get_if<DAETail>(&a.tail)) {
    // Product bound without the high-mode 1/(N pi)^2 gain; diagnostic only.
    Interval naive = norm_l1nu(t->sigma, w) * norm_l1nu(lin.dphi[1][0], w);
    cert.diagnostics["z1tail_naive_product"] = naive.hi;
  }
  cert.diagnostics["wbar_defect"] = cert.hyp_w.hi;

  cert.tainted = cert.Y.tainted || cert.Z1_finite.tainted || cert.Z1_tail.tainted ||
                 cert.Z2.tainted || cert.hyp_w.tainted;

  if (cert.tainted) throw ConditionsFailed("tainted arithmetic poisons the certificate", cert);
  if (!cert.hyp_w_ok)
    throw ConditionsFailed("reciprocal hypothesis failed: ||1 - wbar conv DPhi|| >= 1", cert);
  RadiusRange rr;
  try {
    rr = nk_radius(cert.Y, cert.Z1, cert.Z2);
  } catch (const ConditionsFailed& e) {
    throw ConditionsFailed(e.what(), cert);
  }
  cert.r_min = rr.r_min;
  cert.r_max = rr.r_max;
  cert.r = select_radius(rr);
  cert.c0_bound = cert.r;
  cert.conditions_ok = true;
  return cert;
}

}  // namespace nkpde
