#include "tunnelph/lssvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "tunnelph/errors.hpp"

namespace tunnelph {

void KernelSpec::validate() const {
  if (kind == KernelKind::Rbf && !(sigma > 0.0 && std::isfinite(sigma))) {
    throw InputError("rbf kernel width must be positive");
  }
}

double KernelSpec::operator()(std::span<const double> a, std::span<const double> b) const {
  double acc = 0.0;
  if (kind == KernelKind::Linear) {
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  }
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::exp(-acc / (2.0 * sigma * sigma));
}

std::string_view to_string(KernelKind k) { return k == KernelKind::Linear ? "linear" : "rbf"; }

KernelKind kernel_kind_from_string(std::string_view s) {
  if (s == "linear") return KernelKind::Linear;
  if (s == "rbf") return KernelKind::Rbf;
  throw InputError("unknown kernel kind '" + std::string(s) + "'");
}

std::string_view to_string(Task t) {
  return t == Task::Classification ? "classification" : "regression";
}

Task task_from_string(std::string_view s) {
  if (s == "classification") return Task::Classification;
  if (s == "regression") return Task::Regression;
  throw InputError("unknown task '" + std::string(s) + "'");
}

void TrainingSet::validate() const {
  if (inputs.size() != targets.size()) {
    throw InputError("training set has " + std::to_string(inputs.size()) + " inputs but " +
                     std::to_string(targets.size()) + " targets");
  }
  if (size() < 2) throw InputError("training set needs at least 2 samples");
  const std::size_t dim = dimension();
  if (dim == 0) throw InputError("training inputs must have dimension >= 1");
  for (std::size_t i = 0; i < size(); ++i) {
    if (inputs[i].size() != dim) throw InputError("training inputs differ in dimension");
    if (!std::isfinite(targets[i])) throw InputError("non-finite training target");
    for (double v : inputs[i]) {
      if (!std::isfinite(v)) throw InputError("non-finite training input");
    }
  }
}

Standardizer Standardizer::identity(std::size_t dim) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& inputs) {
  if (inputs.empty()) throw InputError("cannot standardize an empty input set");
  const std::size_t dim = inputs.front().size();
  const auto n = static_cast<double>(inputs.size());
  Standardizer s = identity(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    double sum = 0.0;
    for (const auto& x : inputs) sum += x[d];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& x : inputs) ss += (x[d] - mean) * (x[d] - mean);
    const double sd = std::sqrt(ss / n);
    s.mean[d] = mean;
    s.scale[d] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  if (x.size() != mean.size()) {
    throw InputError("input dimension " + std::to_string(x.size()) + " does not match model dimension " +
                     std::to_string(mean.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean[i]) / scale[i];
  return out;
}

std::vector<double> LssvmModel::slacks() const {
  std::vector<double> e(alphas.size());
  std::transform(alphas.begin(), alphas.end(), e.begin(), [this](double a) { return a / gamma; });
  return e;
}

namespace {

struct KktSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
};

KktSystem assemble(Task task, const KernelSpec& kernel, double gamma,
                   const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
  const auto m = static_cast<Eigen::Index>(y.size());
  KktSystem sys{Eigen::MatrixXd::Zero(m + 1, m + 1), Eigen::VectorXd::Zero(m + 1)};
  const bool cls = task == Task::Classification;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double border = cls ? y[i] : 1.0;
    sys.matrix(0, i + 1) = border;
    sys.matrix(i + 1, 0) = border;
    for (Eigen::Index j = 0; j <= i; ++j) {
      double k = kernel(x[i], x[j]);
      if (cls) k *= y[i] * y[j];
      sys.matrix(i + 1, j + 1) = k;
      sys.matrix(j + 1, i + 1) = k;
    }
    sys.matrix(i + 1, i + 1) += 1.0 / gamma;
    sys.rhs(i + 1) = cls ? 1.0 : y[i];
  }
  return sys;
}

LssvmModel train(Task task, const TrainingSet& ts, double gamma, const KernelSpec& kernel,
                 const TrainOptions& opts) {
  ts.validate();
  kernel.validate();
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InputError("gamma must be positive and finite");
  if (task == Task::Classification) {
    for (double t : ts.targets) {
      if (t != 1.0 && t != -1.0) throw InputError("classification targets must be -1 or +1");
    }
  }

  LssvmModel model;
  model.task = task;
  model.kernel = kernel;
  model.gamma = gamma;
  model.scaling = opts.standardize ? Standardizer::fit(ts.inputs) : Standardizer::identity(ts.dimension());
  model.targets = ts.targets;
  model.inputs.reserve(ts.size());
  for (const auto& x : ts.inputs) model.inputs.push_back(model.scaling.apply(x));

  const KktSystem sys = assemble(task, kernel, gamma, model.inputs, model.targets);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  const double rcond = lu.rcond();
  model.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  const Eigen::VectorXd z = lu.solve(sys.rhs);
  if (!(model.condition_estimate <= opts.max_condition) || !z.allFinite()) {
    std::ostringstream msg;
    msg << "LS-SVM system is ill-conditioned (condition estimate " << model.condition_estimate
        << " > " << opts.max_condition << ", m = " << ts.size() << ", gamma = " << gamma
        << "); check for duplicate inputs with conflicting targets";
    throw NumericalError(msg.str());
  }
  model.bias = z(0);
  model.alphas.assign(z.data() + 1, z.data() + z.size());
  return model;
}

}  // namespace

LssvmModel train_classifier(const TrainingSet& ts, double gamma, const KernelSpec& kernel,
                            TrainOptions opts) {
  return train(Task::Classification, ts, gamma, kernel, opts);
}

LssvmModel train_regressor(const TrainingSet& ts, double gamma, const KernelSpec& kernel,
                           TrainOptions opts) {
  return train(Task::Regression, ts, gamma, kernel, opts);
}

double predict(const LssvmModel& model, std::span<const double> x) {
  const std::vector<double> xs = model.scaling.apply(x);
  double acc = model.bias;
  for (std::size_t i = 0; i < model.alphas.size(); ++i) {
    double w = model.alphas[i];
    if (model.task == Task::Classification) w *= model.targets[i];
    acc += w * model.kernel(model.inputs[i], xs);
  }
  return acc;
}

double kkt_residual(const LssvmModel& model, const TrainingSet& ts) {
  ts.validate();
  if (ts.size() != model.alphas.size()) {
    throw InputError("training set size does not match the model");
  }
  std::vector<std::vector<double>> x;
  x.reserve(ts.size());
  for (const auto& xi : ts.inputs) x.push_back(model.scaling.apply(xi));
  const KktSystem sys = assemble(model.task, model.kernel, model.gamma, x, ts.targets);
  Eigen::VectorXd z(static_cast<Eigen::Index>(model.alphas.size()) + 1);
  z(0) = model.bias;
  for (std::size_t i = 0; i < model.alphas.size(); ++i) {
    z(static_cast<Eigen::Index>(i) + 1) = model.alphas[i];
  }
  const double residual = (sys.matrix * z - sys.rhs).lpNorm<Eigen::Infinity>();
  return residual / std::max(1.0, sys.rhs.lpNorm<Eigen::Infinity>());
}

GridSearchResult loo_grid_search(const TrainingSet& ts, std::span<const double> sigmas,
                                 std::span<const double> gammas, TrainOptions opts) {
  ts.validate();
  if (ts.size() < 3) throw InputError("leave-one-out search needs at least 3 samples");
  if (sigmas.empty() || gammas.empty()) throw InputError("hyperparameter grids must be nonempty");

  TrainingSet scaled;
  const Standardizer scaling =
      opts.standardize ? Standardizer::fit(ts.inputs) : Standardizer::identity(ts.dimension());
  for (const auto& x : ts.inputs) scaled.inputs.push_back(scaling.apply(x));
  scaled.targets = ts.targets;
  TrainOptions fold_opts = opts;
  fold_opts.standardize = false;

  GridSearchResult result;
  result.loo_mse = std::numeric_limits<double>::infinity();
  const std::size_t m = ts.size();
  for (double sigma : sigmas) {
    for (double gamma : gammas) {
      GridCell cell{sigma, gamma, 0.0};
      try {
        double sse = 0.0;
        for (std::size_t left_out = 0; left_out < m; ++left_out) {
          TrainingSet fold;
          for (std::size_t i = 0; i < m; ++i) {
            if (i == left_out) continue;
            fold.inputs.push_back(scaled.inputs[i]);
            fold.targets.push_back(scaled.targets[i]);
          }
          const LssvmModel model = train_regressor(fold, gamma, KernelSpec::rbf(sigma), fold_opts);
          const double r = predict(model, scaled.inputs[left_out]) - scaled.targets[left_out];
          sse += r * r;
        }
        cell.loo_mse = sse / static_cast<double>(m);
      } catch (const NumericalError&) {
        cell.loo_mse = std::numeric_limits<double>::infinity();
      }
      result.cells.push_back(cell);
      if (cell.loo_mse < result.loo_mse) {
        result.sigma = sigma;
        result.gamma = gamma;
        result.loo_mse = cell.loo_mse;
      }
    }
  }
  if (!std::isfinite(result.loo_mse)) {
    throw NumericalError("no hyperparameter cell produced a solvable leave-one-out fit");
  }
  return result;
}

}  // namespace tunnelph
