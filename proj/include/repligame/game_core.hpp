#pragma once

#include <string>
#include <vector>

namespace repligame {

/// Square payoff matrix for the row player, stored row-major.
class PayoffMatrix {
 public:
  PayoffMatrix(int n, std::vector<double> entries, bool probabilistic_payoffs = false);

  int size() const { return n_; }
  double at(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

  PayoffMatrix transposed() const;
  PayoffMatrix negated() const;
  PayoffMatrix scaled(double c) const;
  double trace() const;
  double max_asymmetry() const;  // max |a_ij - a_ji|

  /// Plain-text format: first line n, then n rows of n numbers.
  static PayoffMatrix load_file(const std::string& path, bool probabilistic_payoffs = false);

 private:
  int n_;
  std::vector<double> entries_;
};

/// Point on the probability simplex. Construction normalizes inputs whose
/// sum deviates from 1 by at most 1e-6 and rejects anything further off.
class MixedStrategy {
 public:
  MixedStrategy() = default;  // empty placeholder, only useful as an assignment target
  explicit MixedStrategy(std::vector<double> probs);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<size_t>(i)]; }
  const std::vector<double>& probs() const { return probs_; }

  static MixedStrategy uniform(int n);

 private:
  std::vector<double> probs_;
};

/// Paired payoff matrices with b = -a^T, entrywise exact.
class ZeroSumGame {
 public:
  explicit ZeroSumGame(PayoffMatrix a);

  int size() const { return a_.size(); }
  const PayoffMatrix& a() const { return a_; }
  const PayoffMatrix& b() const { return b_; }

 private:
  PayoffMatrix a_;
  PayoffMatrix b_;
};

enum class Definiteness {
  kPositiveDefinite,
  kPositiveSemidefinite,
  kNegativeDefinite,
  kNegativeSemidefinite,
  kIndefinite,
};

std::string to_string(Definiteness d);

struct SpectralReport {
  PayoffMatrix symmetrized;
  std::vector<double> eigenvalues;  // sorted descending
  Definiteness definiteness;
};

ZeroSumGame build_zero_sum(const PayoffMatrix& a);

std::vector<double> payoff_vector(const PayoffMatrix& a, const MixedStrategy& y);

double expected_payoff(const MixedStrategy& x, const PayoffMatrix& a, const MixedStrategy& y);

double zero_sum_residual(const ZeroSumGame& game, const MixedStrategy& x, const MixedStrategy& y);

PayoffMatrix symmetrize(const PayoffMatrix& a);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// descending. Sweeps until the off-diagonal Frobenius norm is <= 1e-12.
std::vector<double> symmetric_eigenvalues(const PayoffMatrix& s);

Definiteness classify_definiteness(const std::vector<double>& eigenvalues);

SpectralReport spectral_report(const PayoffMatrix& a);

/// The bundled striker/goalkeeper game instance.
PayoffMatrix penalty_shootout_matrix();

}  // namespace repligame
