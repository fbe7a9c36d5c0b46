#ifndef NKPDE_PIPELINE_HPP
#define NKPDE_PIPELINE_HPP

#include <iosfwd>
#include <string>

#include "nkpde/certify.hpp"
#include "nkpde/galerkin.hpp"
#include "nkpde/problems.hpp"

namespace nkpde {

struct CertifyOutcome {
  Certificate cert;
  bool ok = false;
  std::string failure;  // ConditionsFailed message when !ok
};

// Prepare wbar (and sigma for the saturating-diffusion family), assemble the
// approximate inverse, and run the certification.  A ConditionsFailed is
// captured into the outcome so callers can still write the partial
// certificate and report.  Other exceptions (singular data) propagate.
CertifyOutcome certify_state(const Problem& p, const RealVec& u, double nu,
                             double pad_factor = 2.0, Exec ex = Exec::par);

// Human-readable report: bound table, radius and C0 conversion, hypothesis
// checks, diagnostics.  reference_radius > 0 adds the published-value line
// for the reproduce presets.
std::string render_report(const CertifyOutcome& oc, double reference_radius = 0.0);

// CSV "x,u1[,u2]" sampled on a uniform grid (endpoints included).
void write_profile_csv(std::ostream& os, const RealVec& u, std::size_t grid);

void write_newton_log(std::ostream& os, const NewtonLog& log, bool converged,
                      double tol);

}  // namespace nkpde

#endif
