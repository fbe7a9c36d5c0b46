#include "nkpde/problems.hpp"

namespace nkpde {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// c*1 + s*u as a sequence.
CosSeq affine(const Interval& c, const Interval& s, const CosSeq& u) {
  CosSeq r = scale(pad(u, 1), s);
  r.c[0] = r.c[0] + c;
  return r;
}

CosSeq neg(const CosSeq& u) { return scale(u, Interval(-1.0)); }

}  // namespace

Family family_of(const Problem& p) {
  return std::visit(overloaded{[](const ScalarQuadraticProblem&) { return Family::scalar; },
                               [](const SKTProblem&) { return Family::skt; },
                               [](const RationalDiffusionProblem&) { return Family::dae; }},
                    p);
}

std::size_t dim_of(const Problem& p) {
  return family_of(p) == Family::scalar ? 1u : 2u;
}

CosSeq default_forcing() {
  CosSeq g = CosSeq::zeros(5);
  g.c[0] = Interval(0.5);
  g.c[1] = Interval(1.5);
  g.c[2] = Interval(1.0);
  g.c[3] = Interval(-0.5);
  g.c[4] = Interval(3.0);
  return g;
}

Vec residual_F(const Problem& p, const Vec& u, Exec ex) {
  return std::visit(
      overloaded{
          [&](const ScalarQuadraticProblem& q) -> Vec {
            CosSeq uu = conv(u[0], u[0], ex);
            CosSeq f = add(laplacian(uu), add(scale(u[0], q.alpha), neg(scale(uu, q.beta))));
            return {add(f, q.g)};
          },
          [&](const SKTProblem& q) -> Vec {
            const CosSeq& u1 = u[0];
            const CosSeq& u2 = u[1];
            CosSeq phi1 = conv(affine(q.d1, q.d11, u1), u1, ex);
            phi1 = add(phi1, scale(conv(u2, u1, ex), q.d12));
            CosSeq phi2 = conv(affine(q.d2, q.d22, u2), u2, ex);
            phi2 = add(phi2, scale(conv(u1, u2, ex), q.d21));
            CosSeq r1 = conv(affine(q.r1, -q.a1, u1), u1, ex);
            r1 = add(r1, scale(conv(u2, u1, ex), -q.b1));
            CosSeq r2 = conv(affine(q.r2, -q.a2, u2), u2, ex);
            r2 = add(r2, scale(conv(u1, u2, ex), -q.b2));
            return {add(laplacian(phi1), r1), add(laplacian(phi2), r2)};
          },
          [&](const RationalDiffusionProblem& q) -> Vec {
            const CosSeq& u1 = u[0];
            const CosSeq& u2 = u[1];
            CosSeq f1 = add(u1, neg(scale(u2, q.gamma)));
            f1 = add(f1, neg(conv(u1, u2, ex)));
            CosSeq f2 = add(laplacian(u2), scale(u1, q.alpha));
            f2 = add(f2, neg(scale(conv(u1, u1, ex), q.beta)));
            f2 = add(f2, q.g);
            return {f1, f2};
          }},
      p);
}

Linearization linearize(const Problem& p, const Vec& u) {
  Linearization lin;
  lin.family = family_of(p);
  lin.dim = dim_of(p);
  std::visit(
      overloaded{
          [&](const ScalarQuadraticProblem& q) {
            lin.dphi = {{scale(u[0], Interval(2.0))}};
            lin.dr = {{affine(q.alpha, Interval(-2.0) * q.beta, u[0])}};
          },
          [&](const SKTProblem& q) {
            const CosSeq& u1 = u[0];
            const CosSeq& u2 = u[1];
            lin.dphi = {{add(affine(q.d1, Interval(2.0) * q.d11, u1), scale(u2, q.d12)),
                         scale(u1, q.d12)},
                        {scale(u2, q.d21),
                         add(affine(q.d2, q.d21, u1), scale(u2, Interval(2.0) * q.d22))}};
            lin.dr = {{add(affine(q.r1, Interval(-2.0) * q.a1, u1), scale(u2, -q.b1)),
                       scale(u1, -q.b1)},
                      {scale(u2, -q.b2),
                       add(affine(q.r2, -q.b2, u1), scale(u2, Interval(-2.0) * q.a2))}};
          },
          [&](const RationalDiffusionProblem& q) {
            lin.dphi = {{affine(Interval(1.0), Interval(-1.0), u[1]),
                         neg(affine(q.gamma, Interval(1.0), u[0]))},
                        {affine(q.alpha, Interval(-2.0) * q.beta, u[0]), CosSeq()}};
            lin.dr.clear();
          }},
      p);
  return lin;
}

Vec jacobian_apply(const Linearization& lin, const Vec& v, Exec ex) {
  if (lin.family == Family::dae) {
    CosSeq r1 = add(conv(lin.dphi[0][0], v[0], ex), conv(lin.dphi[0][1], v[1], ex));
    CosSeq r2 = add(laplacian(v[1]), conv(lin.dphi[1][0], v[0], ex));
    return {r1, r2};
  }
  Vec out(lin.dim);
  for (std::size_t i = 0; i < lin.dim; ++i) {
    CosSeq dphi_v, dr_v;
    for (std::size_t j = 0; j < lin.dim; ++j) {
      dphi_v = add(dphi_v, conv(lin.dphi[i][j], v[j], ex));
      dr_v = add(dr_v, conv(lin.dr[i][j], v[j], ex));
    }
    out[i] = add(laplacian(dphi_v), dr_v);
  }
  return out;
}

namespace {

// dest block at (ro, co) += src, optionally with rows scaled by -(k pi)^2.
void add_block(FiniteOpMatrix& dest, const FiniteOpMatrix& src, std::size_t ro, std::size_t co,
               bool lap_rows) {
  const Interval pi2 = pi_interval() * pi_interval();
  for (std::size_t i = 0; i < src.rows; ++i) {
    Interval rs(1.0);
    if (lap_rows) rs = Interval(-(static_cast<double>(i) * static_cast<double>(i))) * pi2;
    for (std::size_t j = 0; j < src.cols; ++j) {
      Interval v = src.at(i, j);
      if (lap_rows) v = rs * v;
      dest.at(ro + i, co + j) = dest.at(ro + i, co + j) + v;
    }
  }
}

}  // namespace

FiniteOpMatrix jacobian_matrix(const Problem& p, const Vec& u, std::size_t m) {
  const std::size_t d = dim_of(p);
  Linearization lin = linearize(p, u);
  FiniteOpMatrix out(d * m, d * m);
  if (lin.family == Family::dae) {
    add_block(out, mult_op_matrix(lin.dphi[0][0], m, m), 0, 0, false);
    add_block(out, mult_op_matrix(lin.dphi[0][1], m, m), 0, m, false);
    add_block(out, mult_op_matrix(lin.dphi[1][0], m, m), m, 0, false);
    const Interval pi2 = pi_interval() * pi_interval();
    for (std::size_t k = 0; k < m; ++k)
      out.at(m + k, m + k) = Interval(-(static_cast<double>(k) * static_cast<double>(k))) * pi2;
    return out;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      add_block(out, mult_op_matrix(lin.dphi[i][j], m, m), i * m, j * m, true);
      add_block(out, mult_op_matrix(lin.dr[i][j], m, m), i * m, j * m, false);
    }
  return out;
}

HomogeneousStates homogeneous_states(const SKTProblem& p) {
  Interval det = p.a1 * p.a2 - p.b1 * p.b2;
  if (det.lo <= 0.0 && det.hi >= 0.0) throw DegenerateCompetition();
  HomogeneousStates h;
  h.coexistence[0] = (p.r1 * p.a2 - p.r2 * p.b1) / det;
  h.coexistence[1] = (p.r2 * p.a1 - p.r1 * p.b2) / det;
  h.extinction1[0] = p.r1 / p.a1;
  h.extinction1[1] = Interval(0.0);
  h.extinction2[0] = Interval(0.0);
  h.extinction2[1] = p.r2 / p.a2;
  return h;
}

Regime regime_classify(const SKTProblem& p) {
  Interval q = p.r1 / p.r2;
  Interval lo = p.b1 / p.a2;
  Interval hi = p.a1 / p.b2;
  auto lt = [](const Interval& x, const Interval& y) { return x.hi < y.lo; };
  auto point_eq = [](const Interval& x, const Interval& y) {
    return x.lo == x.hi && y.lo == y.hi && x.lo == y.lo;
  };
  if (lt(lo, q) && lt(q, hi)) return Regime::weak;
  if (lt(hi, q) && lt(q, lo)) return Regime::strong;
  if (point_eq(lo, q) && point_eq(q, hi)) return Regime::degenerate;
  return Regime::case3;
}

}  // namespace nkpde
