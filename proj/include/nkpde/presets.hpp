#ifndef NKPDE_PRESETS_HPP
#define NKPDE_PRESETS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nkpde/galerkin.hpp"
#include "nkpde/problems.hpp"

namespace nkpde {

// A canned experiment: problem, discretization, and a seed recipe whose Newton
// iteration lands on the intended branch.  `stages` are the solve sizes run in
// order (padding the previous state); the last entry is the certification N.
struct Preset {
  std::string id;
  std::string label;
  Problem problem;
  std::vector<std::size_t> stages;
  double nu;
  double pad_factor;
  NewtonConfig newton;
  GuessRecipe guess;
  double reference_radius;  // published radius for the same parameters
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view id);

// Runs the staged Newton solve for a preset; the result has the final stage's
// length.  Throws NonConvergence/SingularJacobian like solve_newton.
RealVec preset_solve(const Preset& ps, NewtonLog* log = nullptr);

}  // namespace nkpde

#endif
