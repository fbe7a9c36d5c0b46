// Timing table for the OpenMP kernels against their serial reference paths.
// The two paths share summation order per entry, so outputs must match bitwise;
// the harness checks that while timing.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "nkpde/opmatrix.hpp"
#include "nkpde/pipeline.hpp"
#include "nkpde/presets.hpp"

using namespace nkpde;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
  auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double par, bool match) {
  std::printf("%-28s %10.4fs %10.4fs %8.2fx   %s\n", name, serial, par,
              par > 0 ? serial / par : 0.0, match ? "outputs match" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dv(-1.0, 1.0);

  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    const std::size_t n = 1500;
    CosSeq a = CosSeq::zeros(n), b = CosSeq::zeros(n);
    for (auto& x : a.c) x = Interval(dv(rng));
    for (auto& x : b.c) x = Interval(dv(rng));
    CosSeq rs, rp;
    double ts = time_of([&] { rs = conv(a, b, Exec::serial); }, 3);
    double tp = time_of([&] { rp = conv(a, b, Exec::par); }, 3);
    bool match = rs.len() == rp.len();
    for (std::size_t k = 0; match && k < rs.len(); ++k)
      match = rs.c[k].lo == rp.c[k].lo && rs.c[k].hi == rp.c[k].hi;
    row("interval conv (n=1500)", ts, tp, match);
  }

  {
    const std::size_t n = 1200;
    FiniteOpMatrix m(n, n);
    for (auto& x : m.a) x = Interval(dv(rng));
    CosSeq v = CosSeq::zeros(n);
    for (auto& x : v.c) x = Interval(dv(rng));
    CosSeq rs, rp;
    double ts = time_of([&] { rs = matvec_serial(m, v); }, 5);
    double tp = time_of([&] { rp = matvec(m, v, Exec::par); }, 5);
    bool match = rs.len() == rp.len();
    for (std::size_t k = 0; match && k < rs.len(); ++k)
      match = rs.c[k].lo == rp.c[k].lo && rs.c[k].hi == rp.c[k].hi;
    row("interval matvec (1200^2)", ts, tp, match);
  }

  {
    const Preset* ps = find_preset("skt1");
    RealVec u = preset_solve(*ps);
    CertifyOutcome os, op;
    double ts = time_of([&] { os = certify_state(ps->problem, u, ps->nu, 2.0, Exec::serial); }, 1);
    double tp = time_of([&] { op = certify_state(ps->problem, u, ps->nu, 2.0, Exec::par); }, 1);
    bool match = os.ok == op.ok && os.cert.Z1.hi == op.cert.Z1.hi &&
                 os.cert.Z2.hi == op.cert.Z2.hi && os.cert.Y.hi == op.cert.Y.hi &&
                 os.cert.r == op.cert.r;
    row("certify skt row 1 (N=50)", ts, tp, match);
  }

  return 0;
}
