#include "tempofilt/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "tempofilt/errors.hpp"
#include "tempofilt/rng.hpp"

namespace tempofilt {

namespace {

constexpr double kTau = 1e-12;

// smallest eigenvalue estimate: power iteration on (s*I - K)
double min_eigenvalue_estimate(const GramMatrix& k) {
  const std::size_t n = k.size();
  if (n == 0) return 0.0;
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(k.at(i, j));
    shift = std::max(shift, row);
  }
  std::vector<double> x(n);
  std::vector<double> y(n);
  // a skewed start vector; the uniform one can be orthogonal to the dominant
  // eigenvector (e.g. for hollow symmetric matrices) and stall the iteration
  auto reseed = [&](std::uint64_t salt) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(splitmix64(i + salt) >> 11) * 0x1.0p-53 - 0.5;
      norm += x[i] * x[i];
    }
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
  };
  reseed(0);
  double lambda = 0.0;
  std::uint64_t salt = 1;
  for (int iter = 0; iter < 100; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = shift * x[i];
      for (std::size_t j = 0; j < n; ++j) s -= k.at(i, j) * x[j];
      y[i] = s;
    }
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) {  // landed in the null space, restart elsewhere
      reseed(salt++);
      continue;
    }
    lambda = norm;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  return shift - lambda;  // dominant of (shift*I - K) maps back to min of K
}

struct BinaryProblem {
  std::vector<std::size_t> index;  // into the full training set
  std::vector<double> y;           // +1 for class_a, -1 for class_b
};

// working-set SMO, maximal violating pair selection
void solve_binary(const GramMatrix& kernel, const BinaryProblem& prob,
                  double c, double tol, std::vector<double>& alpha,
                  double& rho) {
  const std::size_t l = prob.index.size();
  alpha.assign(l, 0.0);
  std::vector<double> grad(l, -1.0);  // gradient of the dual objective

  auto q = [&](std::size_t i, std::size_t j) {
    return prob.y[i] * prob.y[j] *
           kernel.at(prob.index[i], prob.index[j]);
  };

  const std::size_t max_iter =
      std::max<std::size_t>(10'000'000, 100 * l * l);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // i: max -y*grad over the upward-movable set, j: min over downward
    std::size_t i = l, j = l;
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < l; ++t) {
      const bool up = (prob.y[t] > 0 && alpha[t] < c) ||
                      (prob.y[t] < 0 && alpha[t] > 0);
      const bool down = (prob.y[t] > 0 && alpha[t] > 0) ||
                        (prob.y[t] < 0 && alpha[t] < c);
      const double v = -prob.y[t] * grad[t];
      if (up && v > g_max) {
        g_max = v;
        i = t;
      }
      if (down && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    if (i == l || j == l || g_max - g_min < tol) break;

    // solve the two-variable subproblem
    double quad = q(i, i) + q(j, j) - 2.0 * prob.y[i] * prob.y[j] * q(i, j);
    if (quad <= 0.0) quad = kTau;
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];

    if (prob.y[i] != prob.y[j]) {
      double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else {
        if (alpha[i] < 0) {
          alpha[i] = 0;
          alpha[j] = -diff;
        }
      }
      if (diff > 0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = c + diff;
        }
      }
    } else {
      double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = sum;
        }
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else {
        if (alpha[i] < 0) {
          alpha[i] = 0;
          alpha[j] = sum;
        }
      }
    }

    const double d_ai = alpha[i] - old_ai;
    const double d_aj = alpha[j] - old_aj;
    if (d_ai == 0.0 && d_aj == 0.0) break;
    for (std::size_t t = 0; t < l; ++t)
      grad[t] += q(t, i) * d_ai + q(t, j) * d_aj;
  }

  // rho such that decision = sum coef*K - rho; average over the free SVs
  double sum = 0.0;
  std::size_t n_free = 0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < l; ++t) {
    const double yg = prob.y[t] * grad[t];
    if (alpha[t] > 0 && alpha[t] < c) {
      sum += yg;
      ++n_free;
    } else {
      const bool at_upper = alpha[t] >= c;
      if ((prob.y[t] > 0) == at_upper)
        lb = std::max(lb, yg);
      else
        ub = std::min(ub, yg);
    }
  }
  rho = n_free > 0 ? sum / static_cast<double>(n_free) : (ub + lb) / 2.0;
}

}  // namespace

SvmModel svm_train(const GramMatrix& kernel, const std::vector<int>& labels,
                   double c, double tol,
                   const std::function<void(const std::string&)>& warn) {
  if (kernel.size() != labels.size())
    throw ValueError("kernel size and label count differ");
  if (kernel.size() == 0) throw ValueError("empty training set");
  if (!(c > 0.0)) throw ValueError("C must be positive");

  if (warn) {
    const double min_eig = min_eigenvalue_estimate(kernel);
    const double trace = kernel.trace();
    if (min_eig < -1e-6 * std::max(trace, 1.0))
      warn("kernel matrix is not positive semidefinite (min eigenvalue ~ " +
           std::to_string(min_eig) + ")");
  }

  SvmModel model;
  for (int lab : labels)
    if (!std::count(model.classes.begin(), model.classes.end(), lab))
      model.classes.push_back(lab);
  std::sort(model.classes.begin(), model.classes.end());
  if (model.classes.size() < 2)
    throw ValueError("training set needs at least two classes");

  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      BinaryProblem prob;
      for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t] == model.classes[a]) {
          prob.index.push_back(t);
          prob.y.push_back(1.0);
        } else if (labels[t] == model.classes[b]) {
          prob.index.push_back(t);
          prob.y.push_back(-1.0);
        }
      }
      std::vector<double> alpha;
      double rho = 0.0;
      solve_binary(kernel, prob, c, tol, alpha, rho);

      SvmModel::Binary bin;
      bin.class_a = model.classes[a];
      bin.class_b = model.classes[b];
      bin.rho = rho;
      for (std::size_t t = 0; t < alpha.size(); ++t) {
        if (alpha[t] > 0.0) {
          bin.sv_indices.push_back(prob.index[t]);
          bin.coef.push_back(alpha[t] * prob.y[t]);
        }
      }
      model.machines.push_back(std::move(bin));
    }
  }
  return model;
}

std::vector<int> svm_predict(const SvmModel& model,
                             const std::vector<std::vector<double>>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::map<int, int> votes;
    for (const auto& bin : model.machines) {
      double dec = -bin.rho;
      for (std::size_t s = 0; s < bin.sv_indices.size(); ++s) {
        if (bin.sv_indices[s] >= row.size())
          throw ValueError("prediction row shorter than the training set");
        dec += bin.coef[s] * row[bin.sv_indices[s]];
      }
      ++votes[dec > 0 ? bin.class_a : bin.class_b];
    }
    int best_class = model.classes.front();
    int best_votes = -1;
    for (int cls : model.classes) {  // ascending scan keeps ties at the lowest
      const int v = votes.count(cls) ? votes[cls] : 0;
      if (v > best_votes) {
        best_votes = v;
        best_class = cls;
      }
    }
    out.push_back(best_class);
  }
  return out;
}

}  // namespace tempofilt
