#include "nkpde/pipeline.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <variant>

#include "nkpde/seq_io.hpp"

namespace nkpde {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string ival(const Interval& a) {
  return "[" + format_double(a.lo) + ", " + format_double(a.hi) + "]";
}

const char* okstr(bool b) { return b ? "ok" : "FAILED"; }

}  // namespace

CertifyOutcome certify_state(const Problem& p, const RealVec& u, double nu,
                             double pad_factor, Exec ex) {
  const std::size_t n = u.at(0).c.size();
  const Weight w(nu);
  WbarResult wb = compute_wbar(p, u, n, w);
  RealSeq sigma = RealSeq::zeros(1);
  const RealSeq* sigma_ptr = nullptr;
  if (family_of(p) == Family::dae) {
    const auto& rp = std::get<RationalDiffusionProblem>(p);
    SigmaResult sr = compute_sigma(wb.wbar[0][0], u[0], midpoint(rp.gamma), n, w);
    sigma = sr.sigma;
    sigma_ptr = &sigma;
  }
  FiniteOpMatrix Abar = compute_Abar(p, u, n, pad_factor);

  CertifyOutcome out;
  try {
    out.cert = certify(p, u, wb.wbar, sigma_ptr, Abar, nu, ex);
    out.ok = true;
  } catch (const ConditionsFailed& e) {
    out.cert = e.cert;
    out.ok = false;
    out.failure = e.what();
  }
  return out;
}

std::string render_report(const CertifyOutcome& oc, double reference_radius) {
  const Certificate& c = oc.cert;
  std::ostringstream os;
  os << "certification report\n";
  os << "====================\n";
  os << "family            " << c.family << "\n";
  os << "components        " << c.dim << "\n";
  os << "N                 " << c.N << "\n";
  os << "nu                " << format_double(c.nu) << "\n";
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", (unsigned long long)c.solution_hash);
  os << "solution hash     " << hash << "\n";
  for (const auto& [name, v] : c.params)
    os << "param " << name << std::string(name.size() < 12 ? 12 - name.size() : 1, ' ')
       << ival(v) << "\n";
  os << "\n";

  os << "bounds (enclosure upper ends)\n";
  os << "  Y               " << num(c.Y.hi) << "\n";
  os << "  Z1 finite       " << num(c.Z1_finite.hi) << "\n";
  os << "  Z1 tail         " << num(c.Z1_tail.hi) << "\n";
  os << "  Z1              " << num(c.Z1.hi) << "\n";
  os << "  Z2              " << num(c.Z2.hi) << "\n";
  os << "\n";

  // Mirrors the rigorous checks: pessimistic interval ends, strict.
  const bool z1_ok = c.Z1.hi < 1.0;
  const Interval omz = Interval(1.0) - c.Z1;
  const bool contraction_ok = (Interval(2.0) * c.Y * c.Z2).hi < (omz * omz).lo;
  os << "radius\n";
  if (oc.ok) {
    os << "  certified range [" << num(c.r_min.hi) << ", " << num(c.r_max.lo) << ")\n";
    os << "  selected r      " << format_double(c.r) << "  (midpoint policy)\n";
    os << "  C0 conversion   |u - ubar|_C0 <= |u - ubar|_l1nu <= r  (nu >= 1)\n";
    os << "  c0 bound        " << format_double(c.c0_bound) << "\n";
  } else {
    os << "  not available: " << oc.failure << "\n";
  }
  if (reference_radius > 0)
    os << "  reference (paper \xC5\xAB differs)  " << num(reference_radius) << "\n";
  os << "\n";

  os << "conditions\n";
  os << "  Z1 < 1                   " << okstr(z1_ok) << "\n";
  os << "  2 Y Z2 < (1 - Z1)^2      " << okstr(contraction_ok) << "\n";
  os << "  reciprocal hypothesis    " << okstr(c.hyp_w_ok) << "  (|1 - wbar*DPhi| = "
     << num(c.hyp_w.hi) << ")\n";
  os << "  taint-free               " << okstr(!c.tainted) << "\n";
  os << "  result                   " << (oc.ok ? "CERTIFIED" : "NOT CERTIFIED") << "\n";
  os << "\n";

  os << "diagnostics\n";
  for (const auto& [key, v] : c.diagnostics)
    os << "  " << key << std::string(key.size() < 22 ? 22 - key.size() : 1, ' ')
       << num(v) << "\n";
  return os.str();
}

void write_profile_csv(std::ostream& os, const RealVec& u, std::size_t grid) {
  os << "x";
  for (std::size_t i = 0; i < u.size(); ++i) os << ",u" << i + 1;
  os << "\n";
  for (std::size_t j = 0; j < grid; ++j) {
    const double x = (double)j / (double)(grid - 1);
    os << format_double(x);
    for (const RealSeq& comp : u) os << "," << format_double(eval_at(comp, x));
    os << "\n";
  }
}

void write_newton_log(std::ostream& os, const NewtonLog& log, bool converged,
                      double tol) {
  os << "# newton residual history (projected l1 norm)\n";
  for (std::size_t k = 0; k < log.residuals.size(); ++k)
    os << k << " " << format_double(log.residuals[k]) << "\n";
  os << "# converged: " << (converged ? "yes" : "no") << " (tol " << format_double(tol)
     << ")\n";
}

}  // namespace nkpde
