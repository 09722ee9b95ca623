#include "repligame/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace repligame {

namespace {

constexpr double kSimplexSumTol = 1e-6;
constexpr double kSymmetryTol = 1e-12;
constexpr double kJacobiOffDiagTol = 1e-12;
constexpr double kDefinitenessZeroTol = 1e-10;

void check_dims(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(int n, std::vector<double> entries, bool probabilistic_payoffs)
    : n_(n), entries_(std::move(entries)) {
  if (n_ < 2) {
    throw std::invalid_argument("PayoffMatrix: need at least 2 strategies");
  }
  if (entries_.size() != static_cast<size_t>(n_) * n_) {
    throw std::invalid_argument("PayoffMatrix: entry count does not match n*n");
  }
  for (double e : entries_) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("PayoffMatrix: non-finite entry");
    }
  }
  if (probabilistic_payoffs) {
    for (int i = 0; i < n_; ++i) {
      if (at(i, i) != 0.0) {
        throw std::invalid_argument("PayoffMatrix: probabilistic payoffs require a zero diagonal");
      }
      for (int j = 0; j < n_; ++j) {
        if (at(i, j) < 0.0 || at(i, j) > 1.0) {
          throw std::invalid_argument("PayoffMatrix: probabilistic payoffs must lie in [0,1]");
        }
      }
    }
  }
}

PayoffMatrix PayoffMatrix::transposed() const {
  std::vector<double> t(entries_.size());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      t[static_cast<size_t>(j) * n_ + i] = at(i, j);
    }
  }
  return PayoffMatrix(n_, std::move(t));
}

PayoffMatrix PayoffMatrix::negated() const {
  std::vector<double> t(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    t[i] = -entries_[i];
  }
  return PayoffMatrix(n_, std::move(t));
}

PayoffMatrix PayoffMatrix::scaled(double c) const {
  std::vector<double> t(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    t[i] = c * entries_[i];
  }
  return PayoffMatrix(n_, std::move(t));
}

double PayoffMatrix::trace() const {
  double tr = 0.0;
  for (int i = 0; i < n_; ++i) {
    tr += at(i, i);
  }
  return tr;
}

double PayoffMatrix::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      m = std::max(m, std::abs(at(i, j) - at(j, i)));
    }
  }
  return m;
}

PayoffMatrix PayoffMatrix::load_file(const std::string& path, bool probabilistic_payoffs) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open matrix file: " + path);
  }
  int n = 0;
  if (!(in >> n) || n < 2) {
    throw std::runtime_error("matrix file " + path + ": bad strategy count");
  }
  std::vector<double> entries(static_cast<size_t>(n) * n);
  for (double& e : entries) {
    if (!(in >> e)) {
      throw std::runtime_error("matrix file " + path + ": expected " +
                               std::to_string(n * n) + " entries");
    }
  }
  return PayoffMatrix(n, std::move(entries), probabilistic_payoffs);
}

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw std::invalid_argument("MixedStrategy: need at least 2 components");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("MixedStrategy: components must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexSumTol) {
    throw std::invalid_argument("MixedStrategy: components sum to " + std::to_string(sum) +
                                ", too far from 1");
  }
  for (double& p : probs_) {
    p /= sum;
  }
}

MixedStrategy MixedStrategy::uniform(int n) {
  return MixedStrategy(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
}

ZeroSumGame::ZeroSumGame(PayoffMatrix a) : a_(std::move(a)), b_(a_.transposed().negated()) {}

ZeroSumGame build_zero_sum(const PayoffMatrix& a) { return ZeroSumGame(a); }

std::vector<double> payoff_vector(const PayoffMatrix& a, const MixedStrategy& y) {
  check_dims(a.size(), y.size(), "payoff_vector");
  const int n = a.size();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      s += a.at(i, j) * y[j];
    }
    out[static_cast<size_t>(i)] = s;
  }
  return out;
}

double expected_payoff(const MixedStrategy& x, const PayoffMatrix& a, const MixedStrategy& y) {
  check_dims(a.size(), x.size(), "expected_payoff");
  const std::vector<double> ay = payoff_vector(a, y);
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    s += x[i] * ay[static_cast<size_t>(i)];
  }
  return s;
}

double zero_sum_residual(const ZeroSumGame& game, const MixedStrategy& x, const MixedStrategy& y) {
  return expected_payoff(x, game.a(), y) + expected_payoff(y, game.b(), x);
}

PayoffMatrix symmetrize(const PayoffMatrix& a) {
  const int n = a.size();
  std::vector<double> s(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s[static_cast<size_t>(i) * n + j] = 0.5 * (a.at(i, j) + a.at(j, i));
    }
  }
  return PayoffMatrix(n, std::move(s));
}

std::vector<double> symmetric_eigenvalues(const PayoffMatrix& s) {
  if (s.max_asymmetry() > kSymmetryTol) {
    throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");
  }
  const int n = s.size();
  std::vector<double> m = s.entries();
  auto a = [&](int i, int j) -> double& { return m[static_cast<size_t>(i) * n + j]; };

  auto off_norm = [&]() {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) sum += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(sum);
  };

  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > kJacobiOffDiagTol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  if (off_norm() > kJacobiOffDiagTol) {
    throw std::runtime_error("symmetric_eigenvalues: Jacobi sweep did not converge");
  }

  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    eig[static_cast<size_t>(i)] = a(i, i);
  }
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

Definiteness classify_definiteness(const std::vector<double>& eigenvalues) {
  if (eigenvalues.empty()) {
    throw std::invalid_argument("classify_definiteness: empty eigenvalue list");
  }
  bool pos = false, neg = false, zero = false;
  for (double e : eigenvalues) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("classify_definiteness: non-finite eigenvalue");
    }
    if (e > kDefinitenessZeroTol) {
      pos = true;
    } else if (e < -kDefinitenessZeroTol) {
      neg = true;
    } else {
      zero = true;
    }
  }
  if (pos && neg) return Definiteness::kIndefinite;
  if (pos) return zero ? Definiteness::kPositiveSemidefinite : Definiteness::kPositiveDefinite;
  if (neg) return zero ? Definiteness::kNegativeSemidefinite : Definiteness::kNegativeDefinite;
  return Definiteness::kPositiveSemidefinite;  // all zero
}

SpectralReport spectral_report(const PayoffMatrix& a) {
  PayoffMatrix s = symmetrize(a);
  std::vector<double> eig = symmetric_eigenvalues(s);
  Definiteness d = classify_definiteness(eig);
  return SpectralReport{std::move(s), std::move(eig), d};
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::kPositiveDefinite: return "positive-definite";
    case Definiteness::kPositiveSemidefinite: return "positive-semidefinite";
    case Definiteness::kNegativeDefinite: return "negative-definite";
    case Definiteness::kNegativeSemidefinite: return "negative-semidefinite";
    case Definiteness::kIndefinite: return "indefinite";
  }
  return "unknown";
}

PayoffMatrix penalty_shootout_matrix() {
  return PayoffMatrix(3,
                      {0.0, 0.8, 0.7,
                       0.9, 0.0, 0.2,
                       0.75, 0.45, 0.0},
                      /*probabilistic_payoffs=*/true);
}

}  // namespace repligame
