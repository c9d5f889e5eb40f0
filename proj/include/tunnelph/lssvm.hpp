#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace tunnelph {

enum class KernelKind { Linear, Rbf };

struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double sigma = 1.0;  // rbf width, unused for linear

  static KernelSpec linear() { return {KernelKind::Linear, 1.0}; }
  static KernelSpec rbf(double sigma) { return {KernelKind::Rbf, sigma}; }

  void validate() const;
  /// linear: <a,b>;  rbf: exp(-|a-b|^2 / (2 sigma^2))
  double operator()(std::span<const double> a, std::span<const double> b) const;

  bool operator==(const KernelSpec&) const = default;
};

std::string_view to_string(KernelKind k);
KernelKind kernel_kind_from_string(std::string_view s);

struct TrainingSet {
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;

  std::size_t size() const noexcept { return targets.size(); }
  std::size_t dimension() const { return inputs.empty() ? 0 : inputs.front().size(); }
  /// At least 2 samples, equal input dimension >= 1, finite values.
  void validate() const;
};

/// Per-dimension affine map x -> (x - mean) / scale.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer identity(std::size_t dim);
  /// Population mean and standard deviation per dimension; zero spread maps to scale 1.
  static Standardizer fit(const std::vector<std::vector<double>>& inputs);

  std::vector<double> apply(std::span<const double> x) const;

  bool operator==(const Standardizer&) const = default;
};

enum class Task { Classification, Regression };

std::string_view to_string(Task t);
Task task_from_string(std::string_view s);

struct TrainOptions {
  bool standardize = false;
  /// Training fails with NumericalError when the KKT matrix condition estimate exceeds this.
  double max_condition = 1e12;
};

/// Trained least-squares SVM. `inputs` are stored already standardized.
struct LssvmModel {
  Task task = Task::Regression;
  KernelSpec kernel;
  double gamma = 1.0;
  Standardizer scaling;
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
  std::vector<double> alphas;
  double bias = 0.0;
  double condition_estimate = 1.0;

  /// Slack e_i = alpha_i / gamma.
  std::vector<double> slacks() const;

  bool operator==(const LssvmModel&) const = default;
};

/// Targets must be -1 or +1. Solves
///   [ 0   y^T           ] [b]   [0]
///   [ y   Omega + I/gam ] [a] = [1],   Omega_ij = y_i y_j k(x_i, x_j).
LssvmModel train_classifier(const TrainingSet& ts, double gamma, const KernelSpec& kernel,
                            TrainOptions opts = {});

/// Solves
///   [ 0   1^T       ] [b]   [0]
///   [ 1   K + I/gam ] [a] = [y].
LssvmModel train_regressor(const TrainingSet& ts, double gamma, const KernelSpec& kernel,
                           TrainOptions opts = {});

/// Decision value: sum a_i y_i k(x_i, x) + b (classification), sum a_i k(x_i, x) + b (regression).
double predict(const LssvmModel& model, std::span<const double> x);

/// Max-norm residual of the model's KKT system rebuilt from `ts`, relative to max(1, |rhs|_inf).
double kkt_residual(const LssvmModel& model, const TrainingSet& ts);

struct GridCell {
  double sigma = 0.0;
  double gamma = 0.0;
  double loo_mse = 0.0;  // +inf when some fold could not be solved
};

struct GridSearchResult {
  double sigma = 0.0;
  double gamma = 0.0;
  double loo_mse = 0.0;
  std::vector<GridCell> cells;  // sigma-major, in grid order
};

inline const std::vector<double> kDefaultSigmaGrid = {0.25, 0.5, 1.0, 2.0, 4.0};
inline const std::vector<double> kDefaultGammaGrid = {1.0, 10.0, 100.0, 1000.0};

/// Leave-one-out mean squared error of an RBF regressor for every (sigma, gamma) cell.
/// The first cell with the smallest error wins. Inputs are standardized once on the full
/// set when opts.standardize is set, so sigma is in standardized units.
GridSearchResult loo_grid_search(const TrainingSet& ts, std::span<const double> sigmas,
                                 std::span<const double> gammas, TrainOptions opts = {});

}  // namespace tunnelph
