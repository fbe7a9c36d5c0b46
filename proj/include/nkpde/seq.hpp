#ifndef NKPDE_SEQ_HPP
#define NKPDE_SEQ_HPP

#include <cstddef>
#include <vector>

#include "nkpde/interval.hpp"

namespace nkpde {

enum class Exec { serial, par };

// Cosine coefficient sequence in the two-sided convention
//   u(x) = u_0 + 2 sum_{n>=1} u_n cos(n pi x),
// stored as the one-sided half (u_0, u_1, ..., u_{L-1}); entries beyond the
// stored support are zero.
template <typename T>
struct Seq {
  std::vector<T> c;

  Seq() = default;
  explicit Seq(std::vector<T> v) : c(std::move(v)) {}

  static Seq zeros(std::size_t n) { return Seq(std::vector<T>(n, T{})); }

  // Unit of the convolution algebra: (1, 0, 0, ...).
  static Seq unit(std::size_t len = 1) {
    Seq s = zeros(len ? len : 1);
    s.c[0] = T{1.0};
    return s;
  }

  static Seq basis(std::size_t n, T amp = T{1.0}) {
    Seq s = zeros(n + 1);
    s.c[n] = amp;
    return s;
  }

  std::size_t len() const { return c.size(); }

  T get(std::size_t n) const { return n < c.size() ? c[n] : T{}; }
};

using CosSeq = Seq<Interval>;
using RealSeq = Seq<double>;

namespace detail {
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Interval& x) { return x.lo == 0.0 && x.hi == 0.0 && !x.tainted; }
}  // namespace detail

template <typename T>
Seq<T> add(const Seq<T>& u, const Seq<T>& v) {
  Seq<T> r = Seq<T>::zeros(std::max(u.len(), v.len()));
  for (std::size_t n = 0; n < r.len(); ++n) r.c[n] = u.get(n) + v.get(n);
  return r;
}

template <typename T>
Seq<T> sub(const Seq<T>& u, const Seq<T>& v) {
  Seq<T> r = Seq<T>::zeros(std::max(u.len(), v.len()));
  for (std::size_t n = 0; n < r.len(); ++n) r.c[n] = u.get(n) - v.get(n);
  return r;
}

template <typename T, typename S>
Seq<T> scale(const Seq<T>& u, const S& a) {
  Seq<T> r = u;
  for (auto& x : r.c) x = x * a;
  return r;
}

// Truncation Pi_N: keep modes 0..N-1.
template <typename T>
Seq<T> project(const Seq<T>& u, std::size_t n) {
  Seq<T> r = u;
  r.c.resize(n, T{});
  return r;
}

template <typename T>
Seq<T> pad(const Seq<T>& u, std::size_t n) {
  Seq<T> r = u;
  if (r.c.size() < n) r.c.resize(n, T{});
  return r;
}

// Complement (I - Pi_N): zero the modes below N, keep the rest.
template <typename T>
Seq<T> tail_part(const Seq<T>& u, std::size_t n) {
  Seq<T> r = u;
  for (std::size_t k = 0; k < std::min(n, r.len()); ++k) r.c[k] = T{};
  return r;
}

namespace detail {

// One output coefficient of the two-sided convolution
//   (u*v)_n = sum_{k in Z} u_{|k|} v_{|n-k|},
// accumulated in a fixed k order so serial and parallel sweeps agree bitwise.
template <typename T>
T conv_entry(const Seq<T>& u, const Seq<T>& v, std::size_t n) {
  T s{};
  const long ln = static_cast<long>(n);
  const long lu = static_cast<long>(u.len());
  const long lv = static_cast<long>(v.len());
  for (long k = -(lu - 1); k <= lu - 1; ++k) {
    long j = ln - k;
    if (j < 0) j = -j;
    if (j >= lv) continue;
    const T& a = u.c[static_cast<std::size_t>(k < 0 ? -k : k)];
    if (is_zero(a)) continue;
    const T& b = v.c[static_cast<std::size_t>(j)];
    if (is_zero(b)) continue;
    s += a * b;
  }
  return s;
}

}  // namespace detail

// Finite support: len(u*v) = len(u) + len(v) - 1.
template <typename T>
Seq<T> conv(const Seq<T>& u, const Seq<T>& v, Exec ex = Exec::par) {
  if (u.len() == 0 || v.len() == 0) return Seq<T>();
  Seq<T> r = Seq<T>::zeros(u.len() + v.len() - 1);
  const long out = static_cast<long>(r.len());
  if (ex == Exec::par) {
#pragma omp parallel for schedule(static)
    for (long n = 0; n < out; ++n)
      r.c[static_cast<std::size_t>(n)] = detail::conv_entry(u, v, static_cast<std::size_t>(n));
  } else {
    for (long n = 0; n < out; ++n)
      r.c[static_cast<std::size_t>(n)] = detail::conv_entry(u, v, static_cast<std::size_t>(n));
  }
  return r;
}

// Plain reference implementation used to validate the parallel kernel.
template <typename T>
Seq<T> conv_serial(const Seq<T>& u, const Seq<T>& v) {
  return conv(u, v, Exec::serial);
}

// nu-geometric weight xi_0 = 1, xi_n = 2 nu^n.
struct Weight {
  Interval nu;
  explicit Weight(const Interval& v) : nu(v) {}
  explicit Weight(double v) : nu(v) {}
  Interval xi(std::size_t n) const;
  // xi_0 .. xi_{len-1}
  std::vector<Interval> table(std::size_t len) const;
};

Interval norm_l1nu(const CosSeq& u, const Weight& w);
double norm_l1nu(const RealSeq& u, double nu);

// |u(x)| <= ||u||_nu for every x; returns the norm enclosure.
Interval c0_bound(const CosSeq& u, const Weight& w);

// (Lap u)_n = -(n pi)^2 u_n.
CosSeq laplacian(const CosSeq& u);
RealSeq laplacian(const RealSeq& u);

// (InvLap u)_0 = 0, (InvLap u)_n = -u_n / (n pi)^2.
CosSeq inv_laplacian(const CosSeq& u);
RealSeq inv_laplacian(const RealSeq& u);

double eval_at(const RealSeq& u, double x);
double eval_at(const CosSeq& u, double x);  // midpoints; not rigorous

CosSeq to_interval(const RealSeq& u);
RealSeq midpoints(const CosSeq& u);

bool any_tainted(const CosSeq& u);

}  // namespace nkpde

#endif
