#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tempofilt/gram.hpp"

namespace tempofilt {

// one-vs-one C-SVM trained on a precomputed kernel
struct SvmModel {
  struct Binary {
    int class_a = 0;  // decision > 0 votes for class_a
    int class_b = 0;
    std::vector<std::size_t> sv_indices;  // indices into the training set
    std::vector<double> coef;             // alpha_i * y_i
    double rho = 0.0;
  };
  std::vector<Binary> machines;
  std::vector<int> classes;  // ascending
};

SvmModel svm_train(const GramMatrix& kernel, const std::vector<int>& labels,
                   double c,
                   double tol = 1e-3,
                   const std::function<void(const std::string&)>& warn = nullptr);

// rows[i][j] = K(test_i, train_j), columns in training order
std::vector<int> svm_predict(const SvmModel& model,
                             const std::vector<std::vector<double>>& rows);

}  // namespace tempofilt
