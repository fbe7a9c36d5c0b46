#include "nkpde/presets.hpp"

#include <cmath>

namespace nkpde {
namespace {

Problem scalar_demo() {
  ScalarQuadraticProblem p;
  p.alpha = Interval(1.0);
  p.beta = Interval(1.0);
  p.g = default_forcing();
  return Problem(p);
}

Problem skt_row(int row) {
  SKTProblem p;
  switch (row) {
    case 1:
      p.d1 = from_ratio(5, 1000); p.d2 = from_ratio(5, 1000);
      p.d11 = Interval(0.0); p.d12 = Interval(3.0);
      p.d21 = Interval(0.0); p.d22 = Interval(0.0);
      p.r1 = Interval(5.0); p.r2 = Interval(2.0);
      p.a1 = Interval(3.0); p.a2 = Interval(3.0);
      p.b1 = Interval(1.0); p.b2 = Interval(1.0);
      break;
    case 2:
      p.d1 = from_ratio(5, 1000); p.d2 = from_ratio(5, 1000);
      p.d11 = Interval(0.0); p.d12 = Interval(100.0);
      p.d21 = Interval(100.0); p.d22 = Interval(0.0);
      p.r1 = from_ratio(15, 2); p.r2 = from_ratio(16, 7);
      p.a1 = Interval(4.0); p.a2 = Interval(2.0);
      p.b1 = Interval(6.0); p.b2 = Interval(1.0);
      break;
    case 3:
      p.d1 = from_ratio(5, 100); p.d2 = from_ratio(5, 100);
      p.d11 = Interval(0.0); p.d12 = Interval(3.0);
      p.d21 = Interval(0.0); p.d22 = Interval(0.0);
      p.r1 = Interval(15.0); p.r2 = Interval(5.0);
      p.a1 = Interval(1.0); p.a2 = Interval(1.0);
      p.b1 = from_ratio(1, 2); p.b2 = Interval(3.0);
      break;
    default:
      p.d1 = from_ratio(-7, 1000); p.d2 = from_ratio(-7, 1000);
      p.d11 = from_ratio(5, 100); p.d12 = Interval(3.0);
      p.d21 = from_ratio(2, 1000); p.d22 = from_ratio(5, 100);
      p.r1 = Interval(5.0); p.r2 = Interval(2.0);
      p.a1 = Interval(3.0); p.a2 = Interval(3.0);
      p.b1 = Interval(1.0); p.b2 = Interval(1.0);
      break;
  }
  return Problem(p);
}

Problem rational_demo(long long gamma_num, long long gamma_den) {
  RationalDiffusionProblem p;
  p.gamma = from_ratio(gamma_num, gamma_den);
  p.alpha = Interval(1.0);
  p.beta = Interval(1.0);
  p.g = default_forcing();
  return Problem(p);
}

GuessRecipe constant_plus(double c, std::vector<std::tuple<std::size_t, std::size_t, double>> m) {
  GuessRecipe r;
  r.base = BaseState::constant;
  r.constant1 = c;
  r.modes = std::move(m);
  return r;
}

GuessRecipe coexistence_plus(std::vector<std::tuple<std::size_t, std::size_t, double>> m) {
  GuessRecipe r;
  r.base = BaseState::coexistence;
  r.modes = std::move(m);
  return r;
}

std::vector<Preset> build() {
  std::vector<Preset> v;
  NewtonConfig tight;
  tight.residual_tol = 1e-13;
  NewtonConfig medium;
  medium.residual_tol = 1e-11;
  medium.max_iters = 120;

  v.push_back({"pm", "scalar quadratic demo", scalar_demo(), {20}, 1.1, 2.0, tight,
               constant_plus((1.0 + std::sqrt(3.0)) / 2.0, {{0, 1, 0.1}}), 2e-10});

  v.push_back({"skt1", "cross-diffusion, triangular", skt_row(1), {50}, 1.01, 2.0,
               medium, coexistence_plus({{0, 3, 0.2}, {1, 3, -0.06}}), 4e-7});

  v.push_back({"skt2", "cross-diffusion, strong coupling", skt_row(2), {50}, 1.01, 2.0,
               medium, coexistence_plus({{0, 1, 0.2}, {1, 1, -0.2}}), 8e-12});

  // Segregated branch: Newton only converges from a large-amplitude seed
  // (truncated step profiles), and padding straight to 500 stalls the line
  // search, hence the graded stages.
  v.push_back({"skt3", "cross-diffusion, segregated", skt_row(3), {50, 120, 250, 500},
               1.005, 2.0, medium,
               constant_plus(8.5, {{0, 1, -4.775},
                                   {1, 1, 1.592},
                                   {0, 3, 1.592},
                                   {1, 3, -0.531},
                                   {0, 5, -0.955},
                                   {1, 5, 0.318},
                                   {0, 7, 0.682},
                                   {1, 7, -0.227},
                                   {0, 9, -0.531},
                                   {1, 9, 0.177}}),
               9e-11});
  v.back().guess.constant2 = 3.0;

  v.push_back({"skt4", "cross-diffusion, self-diffusion dominant", skt_row(4), {100},
               1.01, 2.0, medium, coexistence_plus({{0, 3, 0.05}, {1, 3, 0.015}}), 1e-9});

  v.push_back({"np-gamma3", "saturating diffusion, gamma = 3", rational_demo(3, 1),
               {50}, 1.1, 2.0, tight,
               constant_plus((1.0 + std::sqrt(3.0)) / 2.0, {{0, 1, 0.1}}), 1e-13});

  v.push_back({"np-gamma01", "saturating diffusion, gamma = 1/10", rational_demo(1, 10),
               {50}, 1.1, 2.0, tight,
               constant_plus((1.0 + std::sqrt(3.0)) / 2.0, {{0, 1, 0.1}}), 8e-6});

  return v;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> v = build();
  return v;
}

const Preset* find_preset(std::string_view id) {
  for (const Preset& p : presets())
    if (p.id == id) return &p;
  return nullptr;
}

RealVec preset_solve(const Preset& ps, NewtonLog* log) {
  const std::size_t d = dim_of(ps.problem);
  RealVec u = make_guess(ps.problem, ps.guess, ps.stages.front());
  for (std::size_t si = 0; si < ps.stages.size(); ++si) {
    std::size_t n = ps.stages[si];
    RealVec padded(d, RealSeq::zeros(n));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < u[i].c.size() && k < n; ++k) padded[i].c[k] = u[i].c[k];
    u = solve_newton(ps.problem, n, padded, ps.newton, si + 1 == ps.stages.size() ? log : nullptr);
  }
  return u;
}

}  // namespace nkpde
