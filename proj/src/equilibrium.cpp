#include "repligame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "repligame/csv_export.hpp"

namespace repligame {

namespace {

constexpr double kValueAgreementTol = 1e-9;

// Gaussian elimination with partial pivoting; m is (n x n) row-major, rhs length n.
std::vector<double> solve_linear(std::vector<double> m, std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  auto a = [&](int i, int j) -> double& { return m[static_cast<size_t>(i) * n + j]; };
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) < 1e-13) {
      throw std::runtime_error("no unique interior equilibrium: indifference system is singular");
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(pivot)]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[static_cast<size_t>(r)];
    for (int j = r + 1; j < n; ++j) s -= a(r, j) * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(r)] = s / a(r, r);
  }
  return x;
}

// Solves [M s = v 1, 1^T s = 1] for (s, v), where M is the given payoff matrix.
std::pair<std::vector<double>, double> indifference_solve(const PayoffMatrix& mat) {
  const int n = mat.size();
  const int dim = n + 1;
  std::vector<double> sys(static_cast<size_t>(dim) * dim, 0.0);
  std::vector<double> rhs(static_cast<size_t>(dim), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sys[static_cast<size_t>(i) * dim + j] = mat.at(i, j);
    }
    sys[static_cast<size_t>(i) * dim + n] = -1.0;  // -v
    sys[static_cast<size_t>(n) * dim + i] = 1.0;   // sum constraint
  }
  rhs[static_cast<size_t>(n)] = 1.0;
  std::vector<double> sol = solve_linear(std::move(sys), std::move(rhs));
  const double v = sol[static_cast<size_t>(n)];
  sol.resize(static_cast<size_t>(n));
  return {std::move(sol), v};
}

}  // namespace

NashPoint solve_interior_nash(const ZeroSumGame& game) {
  auto [y_raw, v_row] = indifference_solve(game.a());
  auto [x_raw, v_col] = indifference_solve(game.a().transposed());

  for (double c : y_raw) {
    if (c <= 0.0) throw std::runtime_error("equilibrium not interior: column-player component <= 0");
  }
  for (double c : x_raw) {
    if (c <= 0.0) throw std::runtime_error("equilibrium not interior: row-player component <= 0");
  }
  if (std::abs(v_row - v_col) > kValueAgreementTol) {
    throw std::runtime_error("interior Nash solve: value mismatch between the two systems");
  }
  return NashPoint{MixedStrategy(std::move(x_raw)), MixedStrategy(std::move(y_raw)), v_row};
}

IndifferenceReport verify_nash(const ZeroSumGame& game, const NashPoint& candidate, double tol) {
  const MixedStrategy& x = candidate.x_star;
  const MixedStrategy& y = candidate.y_star;
  IndifferenceReport rep;
  rep.row_payoffs = payoff_vector(game.a(), y);
  rep.col_payoffs = payoff_vector(game.b(), x);
  const double row_avg = expected_payoff(x, game.a(), y);
  const double col_avg = expected_payoff(y, game.b(), x);
  rep.max_abs_delta = 0.0;
  for (double p : rep.row_payoffs) {
    rep.row_deltas.push_back(p - row_avg);
    rep.max_abs_delta = std::max(rep.max_abs_delta, std::abs(rep.row_deltas.back()));
  }
  for (double p : rep.col_payoffs) {
    rep.col_deltas.push_back(p - col_avg);
    rep.max_abs_delta = std::max(rep.max_abs_delta, std::abs(rep.col_deltas.back()));
  }
  rep.passed = rep.max_abs_delta <= tol;
  return rep;
}

std::string indifference_csv(const IndifferenceReport& report) {
  std::ostringstream out;
  out << "strategy_index,side,pure_payoff,mixed_payoff,delta\n";
  const size_t n = report.row_payoffs.size();
  for (size_t i = 0; i < n; ++i) {
    out << (i + 1) << ",row," << format_sig17(report.row_payoffs[i]) << ","
        << format_sig17(report.row_payoffs[i] - report.row_deltas[i]) << ","
        << format_sig17(report.row_deltas[i]) << "\n";
  }
  for (size_t j = 0; j < report.col_payoffs.size(); ++j) {
    out << (j + 1) << ",col," << format_sig17(report.col_payoffs[j]) << ","
        << format_sig17(report.col_payoffs[j] - report.col_deltas[j]) << ","
        << format_sig17(report.col_deltas[j]) << "\n";
  }
  return out.str();
}

}  // namespace repligame
