#include "paramode/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paramode {

bool ParamSolution::all_ok() const {
  return std::all_of(slices.begin(), slices.end(),
                     [](const SliceSolution& s) { return s.error.empty() && s.status() != SliceStatus::blowup; });
}

std::size_t ParamSolution::count(SliceStatus st) const {
  return static_cast<std::size_t>(
      std::count_if(slices.begin(), slices.end(), [st](const SliceSolution& s) { return s.status() == st; }));
}

namespace {

SliceSolution one_slice(const SweepRequest& req, const SystemEvaluator& ev, double t) {
  double x0 = req.theta(t);
  Slice sl = req.sys->region.slice(t);
  auto k = sl.find(x0);
  if (!k) {
    SliceSolution s;
    s.t = t;
    s.x0 = x0;
    s.p = req.sys->p;
    s.error = "section point is not inside the region";
    return s;
  }
  try {
    return solve_on_interval(ev, t, x0, req.init(t), sl.intervals[*k], req.opt);
  } catch (const std::exception& e) {
    SliceSolution s;
    s.t = t;
    s.x0 = x0;
    s.p = req.sys->p;
    s.error = e.what();
    return s;
  }
}

ParamSolution prepare(const SweepRequest& req) {
  if (!req.sys || !req.theta || !req.init) throw std::invalid_argument("incomplete sweep request");
  ParamSolution out;
  out.p = req.sys->p;
  out.piece = req.piece;
  out.t = req.t;
  out.slices.resize(req.t.size());
  return out;
}

}  // namespace

namespace kernels {

ParamSolution sweep_serial(const SweepRequest& req) {
  ParamSolution out = prepare(req);
  SystemEvaluator ev(*req.sys);
  for (std::size_t i = 0; i < req.t.size(); ++i) out.slices[i] = one_slice(req, ev, req.t[i]);
  return out;
}

ParamSolution sweep_omp(const SweepRequest& req) {
  ParamSolution out = prepare(req);
  SystemEvaluator ev(*req.sys);
  const long n = static_cast<long>(req.t.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    auto ui = static_cast<std::size_t>(i);
    out.slices[ui] = one_slice(req, ev, req.t[ui]);
  }
  return out;
}

}  // namespace kernels

ParamSolution sweep(const LinearSystem& sys, const SectionFn& theta, const InitFn& init,
                    const std::vector<double>& t_samples, const SolverOptions& opt, int piece) {
  SweepRequest req;
  req.sys = &sys;
  req.theta = theta;
  req.init = init;
  req.t = t_samples;
  req.opt = opt;
  req.piece = piece;
  return kernels::sweep_omp(req);
}

std::vector<double> piece_t_samples(const Piece& piece, std::size_t nt) {
  if (piece.t.empty() || nt == 0) return {};
  double a = piece.t.front(), b = piece.t.back();
  std::vector<double> out(nt);
  for (std::size_t i = 0; i < nt; ++i)
    out[i] = nt == 1 ? 0.5 * (a + b) : a + (b - a) * static_cast<double>(i) / static_cast<double>(nt - 1);
  return out;
}

std::vector<double> common_nodes(const std::vector<const ParamSolution*>& family, std::size_t i, std::size_t nx) {
  double lo = -INFINITY, hi = INFINITY;
  for (const ParamSolution* u : family) {
    const SliceSolution& s = u->slices[i];
    if (!s.error.empty()) return {};
    lo = std::max(lo, s.x_min());
    hi = std::min(hi, s.x_max());
  }
  if (!(lo < hi) || nx < 2) return {};
  return numeric::linspace(lo, hi, nx);
}

SampledField sample(const ParamSolution& u, const std::vector<std::vector<double>>& x, int comp) {
  if (x.size() != u.size()) throw std::invalid_argument("node rows do not match the sweep");
  SampledField f;
  f.t = u.t;
  f.x = x;
  f.u.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    f.u[i].reserve(x[i].size());
    for (double xx : x[i]) f.u[i].push_back(u.value(i, xx, comp));
  }
  return f;
}

SampledField sample(const ParamSolution& u, std::size_t nx, int comp) {
  std::vector<std::vector<double>> rows(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) rows[i] = common_nodes({&u}, i, nx);
  return sample(u, rows, comp);
}

}  // namespace paramode
