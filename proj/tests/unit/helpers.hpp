#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "paramode/fundamental.hpp"
#include "paramode/inhomog.hpp"

namespace th {

inline paramode::ScalarOperator op(const paramode::Region& r, std::vector<std::string> g,
                                   std::optional<std::string> f = {}) {
  return paramode::ScalarOperator::parse(r, g, f);
}

inline paramode::LinearSystem sys(const paramode::Region& r, std::vector<std::vector<std::string>> A,
                                  std::vector<std::string> F = {}) {
  std::vector<std::vector<paramode::expr::Expr>> a;
  for (auto& row : A) {
    a.emplace_back();
    for (auto& s : row) a.back().push_back(paramode::expr::Expr::parse(s));
  }
  std::vector<paramode::expr::Expr> f;
  for (auto& s : F) f.push_back(paramode::expr::Expr::parse(s));
  return paramode::LinearSystem::make(r, a, f);
}

// sup over nodes of |u(t_i, x) - exact(t_i, x)|
template <class F>
double sup_error(const paramode::ParamSolution& u, std::size_t nx, F exact, int comp = 0) {
  double e = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (double x : paramode::common_nodes({&u}, i, nx)) e = std::max(e, std::fabs(u.value(i, x, comp) - exact(u.t[i], x)));
  return e;
}

}  // namespace th
