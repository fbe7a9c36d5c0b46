#include "nkpde/seq.hpp"

#include <cmath>

#include "nkpde/opmatrix.hpp"

namespace nkpde {

Interval Weight::xi(std::size_t n) const {
  if (n == 0) return Interval::one();
  return Interval(2.0) * pow_u(nu, static_cast<unsigned>(n));
}

std::vector<Interval> Weight::table(std::size_t len) const {
  std::vector<Interval> t(len);
  if (len == 0) return t;
  t[0] = Interval::one();
  Interval p = Interval::one();
  for (std::size_t n = 1; n < len; ++n) {
    p = p * nu;
    t[n] = Interval(2.0) * p;
  }
  return t;
}

Interval norm_l1nu(const CosSeq& u, const Weight& w) {
  std::vector<Interval> xi = w.table(u.len());
  Interval s;
  for (std::size_t n = 0; n < u.len(); ++n) s += abs(u.c[n]) * xi[n];
  return s;
}

double norm_l1nu(const RealSeq& u, double nu) {
  double s = 0.0, p = 1.0;
  for (std::size_t n = 0; n < u.len(); ++n) {
    s += std::fabs(u.c[n]) * (n == 0 ? 1.0 : 2.0 * p);
    p *= nu;
  }
  return s;
}

Interval c0_bound(const CosSeq& u, const Weight& w) { return norm_l1nu(u, w); }

CosSeq laplacian(const CosSeq& u) {
  CosSeq r = u;
  if (r.len() == 0) return r;
  Interval pi2 = pi_interval() * pi_interval();
  r.c[0] = Interval::zero();
  for (std::size_t n = 1; n < r.len(); ++n)
    r.c[n] = -(Interval(static_cast<double>(n) * static_cast<double>(n)) * pi2) * u.c[n];
  return r;
}

RealSeq laplacian(const RealSeq& u) {
  RealSeq r = u;
  if (r.len() == 0) return r;
  r.c[0] = 0.0;
  for (std::size_t n = 1; n < r.len(); ++n) {
    double np = static_cast<double>(n) * M_PI;
    r.c[n] = -(np * np) * u.c[n];
  }
  return r;
}

CosSeq inv_laplacian(const CosSeq& u) {
  CosSeq r = u;
  if (r.len() == 0) return r;
  Interval pi2 = pi_interval() * pi_interval();
  r.c[0] = Interval::zero();
  for (std::size_t n = 1; n < r.len(); ++n)
    r.c[n] = -u.c[n] / (Interval(static_cast<double>(n) * static_cast<double>(n)) * pi2);
  return r;
}

RealSeq inv_laplacian(const RealSeq& u) {
  RealSeq r = u;
  if (r.len() == 0) return r;
  r.c[0] = 0.0;
  for (std::size_t n = 1; n < r.len(); ++n) {
    double np = static_cast<double>(n) * M_PI;
    r.c[n] = -u.c[n] / (np * np);
  }
  return r;
}

double eval_at(const RealSeq& u, double x) {
  double s = u.len() ? u.c[0] : 0.0;
  for (std::size_t n = 1; n < u.len(); ++n)
    s += 2.0 * u.c[n] * std::cos(static_cast<double>(n) * M_PI * x);
  return s;
}

double eval_at(const CosSeq& u, double x) { return eval_at(midpoints(u), x); }

CosSeq to_interval(const RealSeq& u) {
  CosSeq r = CosSeq::zeros(u.len());
  for (std::size_t n = 0; n < u.len(); ++n) r.c[n] = Interval(u.c[n]);
  return r;
}

RealSeq midpoints(const CosSeq& u) {
  RealSeq r = RealSeq::zeros(u.len());
  for (std::size_t n = 0; n < u.len(); ++n) r.c[n] = u.c[n].mid();
  return r;
}

bool any_tainted(const CosSeq& u) {
  for (const auto& x : u.c)
    if (x.tainted) return true;
  return false;
}

FiniteOpMatrix mult_op_matrix(const CosSeq& u, std::size_t rows, std::size_t cols) {
  FiniteOpMatrix m(rows, cols);
  for (std::size_t k = 0; k < rows; ++k) {
    m.at(k, 0) = u.get(k);
    for (std::size_t n = 1; n < cols; ++n) {
      std::size_t d = k > n ? k - n : n - k;
      m.at(k, n) = u.get(d) + u.get(k + n);
    }
  }
  return m;
}

namespace {

inline Interval matvec_row(const FiniteOpMatrix& m, const CosSeq& v, std::size_t k) {
  Interval s;
  const std::size_t jmax = std::min(m.cols, v.len());
  const Interval* row = &m.a[k * m.cols];
  for (std::size_t j = 0; j < jmax; ++j) {
    if (detail::is_zero(v.c[j])) continue;
    if (detail::is_zero(row[j])) continue;
    s += row[j] * v.c[j];
  }
  return s;
}

}  // namespace

CosSeq matvec(const FiniteOpMatrix& m, const CosSeq& v, Exec ex) {
  CosSeq r = CosSeq::zeros(m.rows);
  const long rows = static_cast<long>(m.rows);
  if (ex == Exec::par) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < rows; ++k)
      r.c[static_cast<std::size_t>(k)] = matvec_row(m, v, static_cast<std::size_t>(k));
  } else {
    for (long k = 0; k < rows; ++k)
      r.c[static_cast<std::size_t>(k)] = matvec_row(m, v, static_cast<std::size_t>(k));
  }
  return r;
}

CosSeq matvec_serial(const FiniteOpMatrix& m, const CosSeq& v) {
  return matvec(m, v, Exec::serial);
}

Interval colnorm(const FiniteOpMatrix& m, std::size_t j, const std::vector<Interval>& xi) {
  Interval s;
  for (std::size_t k = 0; k < m.rows; ++k) s += abs(m.at(k, j)) * xi[k];
  return s;
}

Interval opnorm_columns(const FiniteOpMatrix& m, const Weight& w, Exec ex) {
  if (m.cols == 0 || m.rows == 0) return Interval::zero();
  std::vector<Interval> xi = w.table(std::max(m.rows, m.cols));
  std::vector<Interval> vals(m.cols);
  const long cols = static_cast<long>(m.cols);
  if (ex == Exec::par) {
#pragma omp parallel for schedule(static)
    for (long j = 0; j < cols; ++j) {
      std::size_t jj = static_cast<std::size_t>(j);
      vals[jj] = colnorm(m, jj, xi) / xi[jj];
    }
  } else {
    for (long j = 0; j < cols; ++j) {
      std::size_t jj = static_cast<std::size_t>(j);
      vals[jj] = colnorm(m, jj, xi) / xi[jj];
    }
  }
  Interval best = vals[0];
  for (std::size_t j = 1; j < m.cols; ++j) best = max(best, vals[j]);
  return best;
}

bool any_tainted(const FiniteOpMatrix& m) {
  for (const auto& x : m.a)
    if (x.tainted) return true;
  return false;
}

}  // namespace nkpde
