#pragma once
// Particular and general solutions of P u = f on x-simple pieces, and
// solvability of P u = f for every continuous f on a region.

#include <optional>
#include <string>
#include <vector>

#include "paramode/fundamental.hpp"

namespace paramode {

struct ParticularSolution {
  ParamSolution psi;  // companion state with zero data at theta(t)
  // Variation of constants evaluated literally on coarse samples.
  std::vector<std::size_t> rows;
  std::vector<std::vector<double>> x, literal, integrated;
  std::vector<std::vector<std::vector<double>>> integrand;  // [row][node][s]
  double quad_error = 0;
  double cross_check_dev = 0;
};

/// psi^s = (-1)^(p-s) (f / g^p) W_s / W, W_s the Wronskian minor without
/// column s and without the last row (s = 1..p).
double variation_integrand(const FundamentalSet& set, std::size_t i, double x, int s);

ParticularSolution particular(const ScalarOperator& op, const FundamentalSet& set, const InhomOptions& opt = {});

/// u = psi + sum zeta^s phi^s at nx nodes per slice (component 0).
SampledField general(const FundamentalSet& set, const ParticularSolution& psi, const Zeta& zeta, std::size_t nx);

struct ComponentSolvability {
  int component = 0;
  bool x_simple = true;
  std::optional<Witness> witness;
  std::optional<ScalarOperator> instance;  // u_x = r^-2 around the witness
  std::string note;
};

struct Solvability {
  bool solvable = true;
  std::vector<ComponentSolvability> components;
  std::string explanation;
};

Solvability solvability(const Region& region);

}  // namespace paramode
