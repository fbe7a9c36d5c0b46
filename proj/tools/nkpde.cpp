#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nkpde/cert_io.hpp"
#include "nkpde/config.hpp"
#include "nkpde/pipeline.hpp"
#include "nkpde/presets.hpp"
#include "nkpde/seq_io.hpp"

namespace fs = std::filesystem;
using namespace nkpde;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCertification = 4;

bool write_text_file(const fs::path& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  os << body;
  os.flush();
  if (!os) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

int prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << dir.string() << ": "
              << ec.message() << "\n";
    return 1;
  }
  return 0;
}

struct SolveArgs {
  std::string config;
  std::string out;
  unsigned long long seed = 0;
};

int cmd_solve(const SolveArgs& a) {
  RunConfig cfg;
  try {
    cfg = parse_config_file(a.config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (cfg.nu_is_one)
    std::cerr << "warning: nu = 1 gives no smoothness margin; C0 claims are weakened\n";

  const fs::path dir = a.out.empty() ? fs::path(cfg.output.dir) : fs::path(a.out);
  if (prepare_dir(dir)) return 1;

  RealVec guess;
  try {
    if (cfg.solver.guess_from_file) {
      guess = read_cosseq_file(cfg.solver.initial_path);
      if (guess.size() != dim_of(cfg.problem) || guess.at(0).c.size() != cfg.N) {
        std::cerr << "config error: initial solution " << cfg.solver.initial_path
                  << " has " << guess.size() << " components of length "
                  << guess.at(0).c.size() << ", config wants " << dim_of(cfg.problem)
                  << " of length " << cfg.N << "\n";
        return kExitConfig;
      }
    } else {
      guess = make_guess(cfg.problem, cfg.solver.guess, cfg.N);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (cfg.solver.perturb > 0) {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> d(-cfg.solver.perturb, cfg.solver.perturb);
    for (RealSeq& comp : guess)
      for (double& c : comp.c) c += d(rng);
  }

  NewtonLog log;
  bool converged = true;
  std::string failure;
  RealVec u;
  try {
    u = solve_newton(cfg.problem, cfg.N, guess, cfg.solver.newton, &log);
  } catch (const std::exception& e) {
    converged = false;
    failure = e.what();
  }

  std::ostringstream logbody;
  write_newton_log(logbody, log, converged, cfg.solver.newton.residual_tol);
  if (!write_text_file(dir / "newton.log", logbody.str())) return 1;

  if (!converged) {
    std::cerr << "solver failure: " << failure << "\n";
    std::cerr << "residual history in " << (dir / "newton.log").string() << "\n";
    return kExitSolver;
  }

  std::ostringstream sol;
  write_cosseq(sol, u);
  if (!write_text_file(dir / "solution.cosseq", sol.str())) return 1;
  std::cout << "solution: " << (dir / "solution.cosseq").string() << "\n";
  std::cout << "log:      " << (dir / "newton.log").string() << "\n";
  return 0;
}

struct CertifyArgs {
  std::string config;
  std::string solution;
  std::string out;
  double pad = 0.0;
};

int cmd_certify(const CertifyArgs& a) {
  RunConfig cfg;
  try {
    cfg = parse_config_file(a.config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!cfg.validation.enabled) {
    std::cerr << "config error: [validation] enabled = off; certify needs it on\n";
    return kExitConfig;
  }
  if (cfg.nu_is_one)
    std::cerr << "warning: nu = 1 gives no smoothness margin; C0 claims are weakened\n";

  RealVec u;
  try {
    u = read_cosseq_file(a.solution);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (u.size() != dim_of(cfg.problem) || u.at(0).c.size() != cfg.N) {
    std::cerr << "config error: solution shape mismatch: file has " << u.size()
              << " components of length " << u.at(0).c.size() << ", config wants "
              << dim_of(cfg.problem) << " of length " << cfg.N << "\n";
    return kExitConfig;
  }

  const fs::path dir = a.out.empty() ? fs::path(cfg.output.dir) : fs::path(a.out);
  if (prepare_dir(dir)) return 1;
  const double pad = a.pad > 0 ? a.pad : cfg.pad_factor;

  CertifyOutcome oc;
  try {
    oc = certify_state(cfg.problem, u, cfg.nu_mid, pad);
  } catch (const std::exception& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kExitCertification;
  }

  if (cfg.output.certificate) {
    std::ostringstream body;
    write_certificate(body, oc.cert);
    if (!write_text_file(dir / "certificate.nkcert", body.str())) return 1;
  }
  if (cfg.output.report) {
    if (!write_text_file(dir / "report.txt", render_report(oc))) return 1;
  }
  if (oc.ok) {
    std::cout << "certified: r = " << format_double(oc.cert.r)
              << " (C0 error bound " << format_double(oc.cert.c0_bound) << ")\n";
    return 0;
  }
  std::cout << "NOT CERTIFIED: " << oc.failure << "\n";
  return kExitCertification;
}

struct ProfileArgs {
  std::string solution;
  std::string out;
  std::size_t grid = 201;
};

int cmd_profile(const ProfileArgs& a) {
  if (a.grid < 2) {
    std::cerr << "config error: --grid must be >= 2\n";
    return kExitConfig;
  }
  RealVec u;
  try {
    u = read_cosseq_file(a.solution);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (a.out.empty()) {
    write_profile_csv(std::cout, u, a.grid);
    return 0;
  }
  if (prepare_dir(a.out)) return 1;
  std::ostringstream body;
  write_profile_csv(body, u, a.grid);
  const fs::path path = fs::path(a.out) / "profile.csv";
  if (!write_text_file(path, body.str())) return 1;
  std::cout << "profile: " << path.string() << "\n";
  return 0;
}

struct ReproduceArgs {
  std::vector<std::string> ids;
  std::string out = ".";
  unsigned jobs = 1;
  double pad = 0.0;
};

struct CaseResult {
  const Preset* preset = nullptr;
  bool solved = false;
  bool certified = false;
  Certificate cert;
  std::string failure;
};

void run_case(const Preset& ps, double pad, const fs::path& dir, CaseResult* out) {
  out->preset = &ps;
  RealVec u;
  try {
    u = preset_solve(ps);
    out->solved = true;
  } catch (const std::exception& e) {
    out->failure = e.what();
    return;
  }
  std::ostringstream sol;
  write_cosseq(sol, u);
  write_text_file(dir / (ps.id + "_solution.cosseq"), sol.str());

  CertifyOutcome oc;
  try {
    oc = certify_state(ps.problem, u, ps.nu, pad > 0 ? pad : ps.pad_factor);
  } catch (const std::exception& e) {
    out->failure = e.what();
    return;
  }
  out->cert = oc.cert;
  out->certified = oc.ok;
  if (!oc.ok) out->failure = oc.failure;

  std::ostringstream body;
  write_certificate(body, oc.cert);
  write_text_file(dir / (ps.id + "_certificate.nkcert"), body.str());
  write_text_file(dir / (ps.id + "_report.txt"), render_report(oc, ps.reference_radius));
}

std::string summary_table(const std::vector<CaseResult>& results) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %-8s %5s %-7s %-15s %-12s %s\n", "id", "family",
                "N", "nu", "status", "radius", "reference (paper \xC5\xAB differs)");
  os << line;
  for (const CaseResult& r : results) {
    const Preset& ps = *r.preset;
    std::string status = !r.solved      ? "solver-failed"
                         : r.certified ? "certified"
                                       : "not-certified";
    char radius[32] = "-";
    if (r.certified) std::snprintf(radius, sizeof radius, "%.3g", r.cert.r);
    char ref[32];
    std::snprintf(ref, sizeof ref, "%.3g", ps.reference_radius);
    std::snprintf(line, sizeof line, "%-12s %-8s %5zu %-7g %-15s %-12s %s\n",
                  ps.id.c_str(), family_of(ps.problem) == Family::scalar ? "scalar"
                                 : family_of(ps.problem) == Family::skt ? "skt"
                                                                        : "dae",
                  ps.stages.back(), ps.nu, status.c_str(), radius, ref);
    os << line;
    if (!r.failure.empty()) os << "    " << ps.id << ": " << r.failure << "\n";
  }
  return os.str();
}

int cmd_reproduce(const ReproduceArgs& a) {
  std::vector<const Preset*> cases;
  if (a.ids.empty()) {
    for (const Preset& p : presets()) cases.push_back(&p);
  } else {
    for (const std::string& id : a.ids) {
      const Preset* p = find_preset(id);
      if (!p) {
        std::cerr << "usage error: unknown case id '" << id << "'; known ids:";
        for (const Preset& q : presets()) std::cerr << " " << q.id;
        std::cerr << "\n";
        return kExitConfig;
      }
      cases.push_back(p);
    }
  }
  const fs::path dir(a.out);
  if (prepare_dir(dir)) return 1;

  std::vector<CaseResult> results(cases.size());
  std::atomic<std::size_t> next{0};
  const unsigned jobs = std::max(1u, a.jobs);
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      run_case(*cases[i], a.pad, dir, &results[i]);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::min<std::size_t>(jobs, cases.size()); ++j)
      pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  const std::string table = summary_table(results);
  std::cout << table;
  write_text_file(dir / "summary.txt", table);

  bool any_solver = false, any_cert = false;
  for (const CaseResult& r : results) {
    if (!r.solved) any_solver = true;
    else if (!r.certified) any_cert = true;
  }
  if (any_solver) return kExitSolver;
  if (any_cert) return kExitCertification;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigorously certified steady states of nonlinear-diffusion PDEs"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "run Newton on a config's problem");
  solve->add_option("--config", sa.config, "problem config file")->required();
  solve->add_option("--out", sa.out, "output directory (overrides [output] dir)");
  solve->add_option("--seed", sa.seed, "seed for the optional guess perturbation");

  CertifyArgs ca;
  CLI::App* certify = app.add_subcommand("certify", "certify a solution file");
  certify->add_option("--config", ca.config, "problem config file")->required();
  certify->add_option("--solution", ca.solution, "cosseq solution file")->required();
  certify->add_option("--out", ca.out, "output directory (overrides [output] dir)");
  certify->add_option("--pad", ca.pad, "override pad_factor for the approximate inverse");

  ProfileArgs pa;
  CLI::App* profile = app.add_subcommand("profile", "sample a solution file to CSV");
  profile->add_option("--solution", pa.solution, "cosseq solution file")->required();
  profile->add_option("--grid", pa.grid, "number of sample points (>= 2)");
  profile->add_option("--out", pa.out, "directory for profile.csv (default: stdout)");

  ReproduceArgs ra;
  CLI::App* repro = app.add_subcommand("reproduce", "run the canned experiments");
  repro->add_option("ids", ra.ids, "case ids (default: all)");
  repro->add_option("--out", ra.out, "output directory");
  repro->add_option("--jobs", ra.jobs, "concurrent cases");
  repro->add_option("--pad", ra.pad, "override pad_factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (solve->parsed()) return cmd_solve(sa);
  if (certify->parsed()) return cmd_certify(ca);
  if (profile->parsed()) return cmd_profile(pa);
  return cmd_reproduce(ra);
}
