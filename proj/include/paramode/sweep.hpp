#pragma once
// Families of slice solutions along a section t -> theta(t).

#include <functional>
#include <string>
#include <vector>

#include "paramode/ode.hpp"
#include "paramode/operators.hpp"
#include "paramode/topology.hpp"

namespace paramode {

using InitFn = std::function<std::vector<double>(double t)>;
using SectionFn = std::function<double(double t)>;

struct ParamSolution {
  int p = 1;
  int piece = -1;
  std::vector<double> t;
  std::vector<SliceSolution> slices;

  std::size_t size() const { return t.size(); }
  bool all_ok() const;
  std::size_t count(SliceStatus s) const;
  /// Component `comp` at (t[i], x); NaN outside the covered range.
  double value(std::size_t i, double x, int comp = 0) const { return slices[i].value(x, comp); }
  bool eval(std::size_t i, double x, double* out) const { return slices[i].eval(x, out); }
};

struct SweepRequest {
  const LinearSystem* sys = nullptr;
  SectionFn theta;
  InitFn init;
  std::vector<double> t;
  SolverOptions opt;
  int piece = -1;
};

namespace kernels {
/// Reference implementation, one slice after another.
ParamSolution sweep_serial(const SweepRequest& req);
/// Slices distributed over OpenMP threads; output order matches the serial one.
ParamSolution sweep_omp(const SweepRequest& req);
}  // namespace kernels

ParamSolution sweep(const LinearSystem& sys, const SectionFn& theta, const InitFn& init,
                    const std::vector<double>& t_samples, const SolverOptions& opt = {}, int piece = -1);

/// nt interior t values spread over the piece's sampled columns.
std::vector<double> piece_t_samples(const Piece& piece, std::size_t nt);

/// nx evenly spaced nodes across the range covered by every solution in
/// `family` at slice i (the intersection), endpoints included.
std::vector<double> common_nodes(const std::vector<const ParamSolution*>& family, std::size_t i, std::size_t nx);

/// Samples component `comp` on per-slice node rows.
SampledField sample(const ParamSolution& u, const std::vector<std::vector<double>>& x, int comp = 0);
SampledField sample(const ParamSolution& u, std::size_t nx, int comp = 0);

/// Section function wrapper.
inline SectionFn section_fn(const Section& s) {
  return [s](double t) { return s(t); };
}
inline SectionFn constant_fn(double c) {
  return [c](double) { return c; };
}

}  // namespace paramode
