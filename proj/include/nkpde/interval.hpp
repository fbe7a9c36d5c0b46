#ifndef NKPDE_INTERVAL_HPP
#define NKPDE_INTERVAL_HPP

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace nkpde {

struct DomainError : std::runtime_error {
  explicit DomainError(const char* msg) : std::runtime_error(msg) {}
};

namespace detail {

// One outward step.  Stepping off the finite range clamps and taints.
inline double widen_down(double x, bool& taint) {
  double r = std::nextafter(x, -HUGE_VAL);
  if (r == -HUGE_VAL) { taint = true; return -DBL_MAX; }
  return r;
}
inline double widen_up(double x, bool& taint) {
  double r = std::nextafter(x, HUGE_VAL);
  if (r == HUGE_VAL) { taint = true; return DBL_MAX; }
  return r;
}

// Residual of s = fl(a + b); exact for finite s (Knuth TwoSum).
inline double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

// One rounded product with its exact residual.  `known` is false when the
// residual from fma cannot be trusted (overflow, or underflow past DBL_MIN).
struct Cand {
  double p;
  double e;
  bool known;
};

inline Cand make_prod(double x, double y) {
  Cand c;
  c.p = x * y;
  c.known = std::isfinite(c.p) && (std::fabs(c.p) >= DBL_MIN || x == 0.0 || y == 0.0);
  c.e = c.known ? std::fma(x, y, -c.p) : 0.0;
  return c;
}

// Rounded quotient; residual sign is adjusted so that sign(e) = sign(x/y - q).
inline Cand make_quot(double x, double y) {
  Cand c;
  c.p = x / y;
  c.known = std::isfinite(c.p) &&
            (std::fabs(c.p) >= DBL_MIN || x == 0.0) &&
            (std::fabs(x) >= DBL_MIN || x == 0.0);
  if (c.known) {
    double r = std::fma(c.p, y, -x);  // q*y - x, exact under the guards above
    c.e = (y > 0.0) ? -r : r;
  } else {
    c.e = 0.0;
  }
  return c;
}

// Lower endpoint from rounded candidates.  Round-to-nearest returns an
// adjacent representable, so ordering by p is faithful; ties fall back to the
// exact residual.  Widening is skipped only when provably unnecessary.
inline double pick_lo(const Cand* c, int n, bool& taint) {
  double pm = c[0].p;
  for (int i = 1; i < n; ++i)
    if (c[i].p < pm) pm = c[i].p;
  if (pm == -HUGE_VAL) { taint = true; return -DBL_MAX; }
  if (pm == HUGE_VAL) { taint = true; return DBL_MAX; }
  bool widen = false;
  for (int i = 0; i < n; ++i)
    if (c[i].p == pm && (!c[i].known || c[i].e < 0.0)) widen = true;
  return widen ? widen_down(pm, taint) : pm;
}

inline double pick_hi(const Cand* c, int n, bool& taint) {
  double pm = c[0].p;
  for (int i = 1; i < n; ++i)
    if (c[i].p > pm) pm = c[i].p;
  if (pm == HUGE_VAL) { taint = true; return DBL_MAX; }
  if (pm == -HUGE_VAL) { taint = true; return -DBL_MAX; }
  bool widen = false;
  for (int i = 0; i < n; ++i)
    if (c[i].p == pm && (!c[i].known || c[i].e > 0.0)) widen = true;
  return widen ? widen_up(pm, taint) : pm;
}

}  // namespace detail

// Closed interval [lo, hi], endpoints always finite.  `tainted` means some
// endpoint overflowed and was clamped to +/-DBL_MAX, so the enclosure can no
// longer be trusted; the flag propagates through every operation and any
// downstream certificate must refuse to certify.
struct Interval {
  double lo;
  double hi;
  bool tainted;

  Interval() : lo(0.0), hi(0.0), tainted(false) {}

  explicit Interval(double x) : lo(x), hi(x), tainted(false) { normalize(); }

  Interval(double l, double h, bool t = false) : lo(l), hi(h), tainted(t) { normalize(); }

  static Interval point(double x) { return Interval(x); }
  static Interval zero() { return Interval(); }
  static Interval one() { return Interval(1.0); }

  bool is_point() const { return lo == hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool encloses(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  double mid() const { return 0.5 * lo + 0.5 * hi; }
  double width() const { return hi - lo; }
  double mag() const { return std::fmax(std::fabs(lo), std::fabs(hi)); }

 private:
  void normalize() {
    if (std::isnan(lo) || std::isnan(hi)) {
      lo = -DBL_MAX; hi = DBL_MAX; tainted = true;
      return;
    }
    if (lo == -HUGE_VAL) { lo = -DBL_MAX; tainted = true; }
    if (lo == HUGE_VAL) { lo = DBL_MAX; tainted = true; }
    if (hi == HUGE_VAL) { hi = DBL_MAX; tainted = true; }
    if (hi == -HUGE_VAL) { hi = -DBL_MAX; tainted = true; }
    if (lo > hi) throw DomainError("interval endpoints out of order");
    if (lo == 0.0) lo = 0.0;  // drop negative zero
    if (hi == 0.0) hi = 0.0;
  }
};

// Endpoint equality; taint is compared separately where it matters.
inline bool operator==(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}
inline bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }

inline Interval operator-(const Interval& a) {
  Interval r;
  r.lo = -a.hi;
  r.hi = -a.lo;
  if (r.lo == 0.0) r.lo = 0.0;
  if (r.hi == 0.0) r.hi = 0.0;
  r.tainted = a.tainted;
  return r;
}

inline Interval operator+(const Interval& a, const Interval& b) {
  bool taint = a.tainted || b.tainted;
  double sl = a.lo + b.lo;
  double sh = a.hi + b.hi;
  double lo, hi;
  if (sl == -HUGE_VAL) { taint = true; lo = -DBL_MAX; }
  else if (sl == HUGE_VAL) { taint = true; lo = DBL_MAX; }
  else lo = detail::two_sum_err(a.lo, b.lo, sl) < 0.0 ? detail::widen_down(sl, taint) : sl;
  if (sh == HUGE_VAL) { taint = true; hi = DBL_MAX; }
  else if (sh == -HUGE_VAL) { taint = true; hi = -DBL_MAX; }
  else hi = detail::two_sum_err(a.hi, b.hi, sh) > 0.0 ? detail::widen_up(sh, taint) : sh;
  return Interval(lo, hi, taint);
}

inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) {
  bool taint = a.tainted || b.tainted;
  if ((a.lo == 0.0 && a.hi == 0.0) || (b.lo == 0.0 && b.hi == 0.0))
    return Interval(0.0, 0.0, taint);
  detail::Cand c[4];
  int n;
  if (a.lo == a.hi) {
    c[0] = detail::make_prod(a.lo, b.lo);
    c[1] = detail::make_prod(a.lo, b.hi);
    n = 2;
  } else if (b.lo == b.hi) {
    c[0] = detail::make_prod(a.lo, b.lo);
    c[1] = detail::make_prod(a.hi, b.lo);
    n = 2;
  } else {
    c[0] = detail::make_prod(a.lo, b.lo);
    c[1] = detail::make_prod(a.lo, b.hi);
    c[2] = detail::make_prod(a.hi, b.lo);
    c[3] = detail::make_prod(a.hi, b.hi);
    n = 4;
  }
  double lo = detail::pick_lo(c, n, taint);
  double hi = detail::pick_hi(c, n, taint);
  return Interval(lo, hi, taint);
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0)
    throw DomainError("interval division: divisor contains zero");
  bool taint = a.tainted || b.tainted;
  if (a.lo == 0.0 && a.hi == 0.0) return Interval(0.0, 0.0, taint);
  detail::Cand c[4];
  c[0] = detail::make_quot(a.lo, b.lo);
  c[1] = detail::make_quot(a.lo, b.hi);
  c[2] = detail::make_quot(a.hi, b.lo);
  c[3] = detail::make_quot(a.hi, b.hi);
  double lo = detail::pick_lo(c, 4, taint);
  double hi = detail::pick_hi(c, 4, taint);
  return Interval(lo, hi, taint);
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval& operator+=(Interval& a, const Interval& b) { a = a + b; return a; }
inline Interval& operator-=(Interval& a, const Interval& b) { a = a - b; return a; }
inline Interval& operator*=(Interval& a, const Interval& b) { a = a * b; return a; }

inline Interval abs(const Interval& a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return -a;
  return Interval(0.0, std::fmax(-a.lo, a.hi), a.tainted);
}

inline Interval max(const Interval& a, const Interval& b) {
  return Interval(std::fmax(a.lo, b.lo), std::fmax(a.hi, b.hi), a.tainted || b.tainted);
}

inline Interval min(const Interval& a, const Interval& b) {
  return Interval(std::fmin(a.lo, b.lo), std::fmin(a.hi, b.hi), a.tainted || b.tainted);
}

inline Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) throw DomainError("interval sqrt: interval reaches below zero");
  bool taint = a.tainted;
  double rl = std::sqrt(a.lo);
  double rh = std::sqrt(a.hi);
  double lo, hi;
  if (a.lo > 0.0 && a.lo < DBL_MIN) {
    lo = detail::widen_down(rl, taint);
    if (lo < 0.0) lo = 0.0;
  } else {
    lo = std::fma(rl, rl, -a.lo) > 0.0 ? detail::widen_down(rl, taint) : rl;
  }
  if (a.hi > 0.0 && a.hi < DBL_MIN) {
    hi = detail::widen_up(rh, taint);
  } else {
    hi = std::fma(rh, rh, -a.hi) < 0.0 ? detail::widen_up(rh, taint) : rh;
  }
  return Interval(lo, hi, taint);
}

// Iterated multiplication; exactness detection keeps small integer powers exact.
inline Interval pow_u(const Interval& a, unsigned n) {
  Interval r = Interval::one();
  for (unsigned i = 0; i < n; ++i) r = r * a;
  return r;
}

// Integers up to 2^53 convert exactly; beyond that, enclose the rounded value.
inline Interval enclose_ll(long long v) {
  double d = static_cast<double>(v);
  const long long lim = 1ll << 53;
  if (v >= -lim && v <= lim) return Interval(d);
  bool t = false;
  return Interval(detail::widen_down(d, t), detail::widen_up(d, t), t);
}

// p/q as an enclosure (exact when the quotient is representable).
inline Interval from_ratio(long long num, long long den) {
  return enclose_ll(num) / enclose_ll(den);
}

inline double midpoint(const Interval& a) {
  double m = 0.5 * (a.lo + a.hi);
  if (!std::isfinite(m)) m = 0.5 * a.lo + 0.5 * a.hi;
  return m;
}

// M_PI is the nearest double below pi, so one upward step encloses pi.
inline Interval pi_interval() {
  bool t = false;
  return Interval(M_PI, detail::widen_up(M_PI, t));
}

}  // namespace nkpde

#endif
