#ifndef NKPDE_CONFIG_HPP
#define NKPDE_CONFIG_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nkpde/galerkin.hpp"
#include "nkpde/problems.hpp"

namespace nkpde {

// Parse failure; the message carries "<name>:<line>: ..." when a specific
// line is to blame and "<name>: ..." for whole-file problems (missing keys).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  NewtonConfig newton;
  GuessRecipe guess;
  bool guess_from_file = false;
  std::string initial_path;
  double perturb = 0.0;
};

struct ValidationOptions {
  bool enabled = true;
  std::string policy = "midpoint";
};

struct OutputOptions {
  std::string dir = ".";
  bool report = true;
  bool certificate = true;
};

struct RunConfig {
  Problem problem;
  std::size_t N = 0;
  Interval nu;
  double nu_mid = 0.0;
  bool nu_is_one = false;  // caller should warn: no smoothness gain at nu = 1
  double pad_factor = 2.0;
  SolverOptions solver;
  ValidationOptions validation;
  OutputOptions output;
};

// "key = value" lines under [problem] / [discretization] / [solver] /
// [validation] / [output] headers; '#' and ';' start comments.  Problem
// coefficients and nu are parsed as exact decimals or "p/q" rationals and
// enclosed.  Throws ConfigError.
RunConfig parse_config(std::istream& is, const std::string& name);
RunConfig parse_config_file(const std::string& path);

// Exposed for tests: enclosure of a decimal or rational literal.
Interval parse_exact(const std::string& text);

}  // namespace nkpde

#endif
