// Copyright 2026 The dasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dasim/evolve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dasim/parallel.hpp"

namespace dasim {
namespace {

bool is_diagonal(const ComplexMatrix& m) {
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (r != c && m(r, c) != cplx(0.0, 0.0)) return false;
    }
  }
  return true;
}

// a <- V diag(exp(-i t lambda)) V^dagger a
void apply_spectral_exp(const SpectralDecomposition& spec, double t, ComplexMatrix& a) {
  ComplexMatrix tmp = spec.eigenvectors.adjoint() * a;
  for (Index i = 0; i < spec.dim(); ++i) {
    tmp.row(i) *= std::exp(cplx(0.0, -t * spec.eigenvalues(i)));
  }
  a.noalias() = spec.eigenvectors * tmp;
}

double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return operator_norm(a - b); }

UnitaryOperator make_operator(ComplexMatrix m, Method method, const EvolutionSpec& spec) {
  UnitaryOperator out;
  out.matrix = std::move(m);
  out.method = method;
  out.total_time = spec.total_time();
  out.steps = spec.steps();
  out.grid = spec.grid();
  return out;
}

ComplexMatrix midpoint_product(const AdiabaticPath& path, double total_time, int substeps) {
  const Index dim = path.dim();
  ComplexMatrix a = ComplexMatrix::Identity(dim, dim);
  const double h = 1.0 / substeps;
  for (int m = 0; m < substeps; ++m) {
    const SpectralDecomposition spec = hermitian_eig(path.matrix_at((m + 0.5) * h));
    apply_spectral_exp(spec, total_time * h, a);
  }
  return a;
}

// Fourth-order commutator-free Magnus coefficients (Gauss nodes).
struct Magnus4 {
  double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  double a1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
  double a2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;
};

ComplexMatrix magnus4_product(const AdiabaticPath& path, double total_time, int substeps) {
  const Magnus4 k;
  const Index dim = path.dim();
  const ComplexMatrix& hi = path.initial().matrix();
  const ComplexMatrix& hf = path.final().matrix();
  const Schedule& sched = path.schedule();
  ComplexMatrix a = ComplexMatrix::Identity(dim, dim);
  const double h = 1.0 / substeps;
  for (int m = 0; m < substeps; ++m) {
    const double p1 = sched.value(m * h + k.c1 * h);
    const double p2 = sched.value(m * h + k.c2 * h);
    const double weights[2][2] = {{k.a2, k.a1}, {k.a1, k.a2}};
    for (const auto& w : weights) {
      const double ci = w[0] * (1.0 - p1) + w[1] * (1.0 - p2);
      const double cf = w[0] * p1 + w[1] * p2;
      apply_spectral_exp(hermitian_eig(ci * hi + cf * hf), total_time * h, a);
    }
  }
  return a;
}

ComplexMatrix exact_product(const AdiabaticPath& path, double total_time, int substeps, ExactScheme scheme) {
  return scheme == ExactScheme::kMagnus4 ? magnus4_product(path, total_time, substeps)
                                         : midpoint_product(path, total_time, substeps);
}

// a * A + b * B on the union sparsity pattern of A and B, refilled in place.
class SparsePencil {
 public:
  SparsePencil(const SparseMatrix& a, const SparseMatrix& b) {
    std::vector<Eigen::Triplet<double>> marks;
    for (const SparseMatrix* m : {&a, &b}) {
      for (Index c = 0; c < m->outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(*m, c); it; ++it) marks.emplace_back(it.row(), it.col(), 1.0);
      }
    }
    Eigen::SparseMatrix<double> pattern(a.rows(), a.cols());
    pattern.setFromTriplets(marks.begin(), marks.end());
    pattern.makeCompressed();
    const Index nnz = pattern.nonZeros();
    va_ = ComplexVector::Zero(nnz);
    vb_ = ComplexVector::Zero(nnz);
    auto scatter = [&](const SparseMatrix& m, ComplexVector& dst) {
      for (Index c = 0; c < m.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
          dst(&pattern.coeffRef(it.row(), it.col()) - pattern.valuePtr()) += it.value();
        }
      }
    };
    scatter(a, va_);
    scatter(b, vb_);
    real_ = va_.imag().isZero(0.0) && vb_.imag().isZero(0.0);
    if (real_) {
      real_matrix_ = pattern;
    } else {
      complex_matrix_ = pattern.cast<cplx>();
    }
  }

  void set(double ca, double cb) {
    const Index nnz = va_.size();
    if (real_) {
      double* v = real_matrix_.valuePtr();
      for (Index k = 0; k < nnz; ++k) v[k] = ca * va_(k).real() + cb * vb_(k).real();
    } else {
      cplx* v = complex_matrix_.valuePtr();
      for (Index k = 0; k < nnz; ++k) v[k] = ca * va_(k) + cb * vb_(k);
    }
  }

  void apply(const ComplexVector& x, ComplexVector& y) const {
    if (real_) {
      y.noalias() = real_matrix_ * x;
    } else {
      y.noalias() = complex_matrix_ * x;
    }
  }

 private:
  ComplexVector va_;
  ComplexVector vb_;
  bool real_ = false;
  Eigen::SparseMatrix<double> real_matrix_;
  SparseMatrix complex_matrix_;
};

ComplexVector cf4_propagate(const AdiabaticPath& path, double total_time, const ComplexVector& psi, int substeps) {
  const Magnus4 k;
  SparsePencil pencil(path.initial_sparse(), path.final_sparse());
  const double ni = one_norm(path.initial_sparse());
  const double nf = one_norm(path.final_sparse());
  const Schedule& sched = path.schedule();
  const double h = 1.0 / substeps;
  const double tau = total_time * h;
  ComplexVector state = psi;
  ComplexVector term(psi.size());
  ComplexVector image(psi.size());
  ComplexVector sum(psi.size());
  for (int m = 0; m < substeps; ++m) {
    const double p1 = sched.value(m * h + k.c1 * h);
    const double p2 = sched.value(m * h + k.c2 * h);
    // First factor weights the earlier node more heavily.
    const double weights[2][2] = {{k.a2, k.a1}, {k.a1, k.a2}};
    for (const auto& w : weights) {
      const double ci = w[0] * (1.0 - p1) + w[1] * (1.0 - p2);
      const double cf = w[0] * p1 + w[1] * p2;
      pencil.set(ci, cf);
      // Truncated Taylor series of exp(-i tau H) applied to the state.
      const int pieces = std::max(1, static_cast<int>(std::ceil(tau * (std::abs(ci) * ni + std::abs(cf) * nf))));
      const cplx factor(0.0, -tau / pieces);
      for (int piece = 0; piece < pieces; ++piece) {
        const double base = state.norm();
        term = state;
        sum = state;
        for (int n = 1; n < 80; ++n) {
          pencil.apply(term, image);
          term.noalias() = image * (factor / static_cast<double>(n));
          sum += term;
          if (term.norm() <= std::numeric_limits<double>::epsilon() * 0.25 * base) break;
        }
        state.swap(sum);
      }
    }
  }
  return state;
}

}  // namespace

std::string_view to_string(GridPolicy policy) {
  switch (policy) {
    case GridPolicy::kEndpoints: return "endpoints";
    case GridPolicy::kLeft: return "left";
    case GridPolicy::kMidpoint: return "midpoint";
  }
  return "?";
}

GridPolicy parse_grid_policy(std::string_view name) {
  if (name == "endpoints") return GridPolicy::kEndpoints;
  if (name == "left") return GridPolicy::kLeft;
  if (name == "midpoint") return GridPolicy::kMidpoint;
  throw std::invalid_argument("unknown grid policy '" + std::string(name) + "'");
}

std::vector<double> grid_points(GridPolicy policy, int steps) {
  if (steps < 1) throw NumericalError(ErrorCode::kInvalidArgument, "need at least one step");
  std::vector<double> s(static_cast<std::size_t>(steps));
  for (int j = 0; j < steps; ++j) {
    switch (policy) {
      case GridPolicy::kEndpoints:
        s[j] = steps == 1 ? 0.0 : static_cast<double>(j) / (steps - 1);
        break;
      case GridPolicy::kLeft:
        s[j] = static_cast<double>(j) / steps;
        break;
      case GridPolicy::kMidpoint:
        s[j] = (j + 0.5) / steps;
        break;
    }
  }
  return s;
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kExact: return "exact";
    case Method::kDiscrete: return "discrete";
    case Method::kTrotter: return "trotter";
    case Method::kStep: return "step";
  }
  return "?";
}

TrotterLayer::TrotterLayer(std::string label, const HermitianOperator& op, std::function<double(double)> weight) {
  auto cache = std::make_shared<Cache>();
  cache->label = std::move(label);
  cache->op = op;
  cache->weight = std::move(weight);
  cache->diagonal = is_diagonal(op.matrix());
  if (cache->diagonal) {
    cache->diag = op.matrix().diagonal().real();
  } else {
    cache->spectrum = hermitian_eig(op.matrix());
  }
  cache_ = std::move(cache);
}

void TrotterLayer::apply_left(double s, double dt, ComplexMatrix& a) const {
  const double t = cache_->weight(s) * dt;
  if (t == 0.0) return;
  if (cache_->diagonal) {
    for (Index i = 0; i < a.rows(); ++i) a.row(i) *= std::exp(cplx(0.0, -t * cache_->diag(i)));
  } else {
    apply_spectral_exp(cache_->spectrum, t, a);
  }
}

ComplexMatrix TrotterLayer::exponential(double s, double dt) const {
  const Index dim = cache_->op.dim();
  ComplexMatrix a = ComplexMatrix::Identity(dim, dim);
  apply_left(s, dt, a);
  return a;
}

std::vector<TrotterLayer> default_layers(const AdiabaticPath& path) {
  const Schedule sched = path.schedule();
  return {TrotterLayer("initial", path.initial(), [sched](double s) { return 1.0 - sched.value(s); }),
          TrotterLayer("final", path.final(), [sched](double s) { return sched.value(s); })};
}

EvolutionSpec::EvolutionSpec(std::shared_ptr<const AdiabaticPath> path, double total_time, int steps,
                             GridPolicy grid)
    : EvolutionSpec(path, total_time, steps, grid, path ? default_layers(*path) : std::vector<TrotterLayer>{}) {}

EvolutionSpec::EvolutionSpec(std::shared_ptr<const AdiabaticPath> path, double total_time, int steps,
                             GridPolicy grid, std::vector<TrotterLayer> layers)
    : path_(std::move(path)), total_time_(total_time), steps_(steps), grid_(grid), layers_(std::move(layers)) {
  if (!path_) throw NumericalError(ErrorCode::kInvalidArgument, "EvolutionSpec needs a path");
  if (!(total_time_ > 0.0) || !std::isfinite(total_time_)) {
    throw NumericalError(ErrorCode::kInvalidArgument, "total time must be positive and finite");
  }
  if (steps_ < 1) throw NumericalError(ErrorCode::kInvalidArgument, "step count must be at least 1");
  if (layers_.empty()) throw NumericalError(ErrorCode::kInvalidArgument, "Trotter layers must be nonempty");
  for (const auto& layer : layers_) {
    if (layer.op().dim() != path_->dim()) {
      throw NumericalError(ErrorCode::kDimensionMismatch, "layer '" + layer.label() + "' dimension mismatch");
    }
  }
  samples_ = grid_points(grid_, steps_);
}

UnitaryOperator exact_evolution(const EvolutionSpec& spec, const ExactOptions& options) {
  if (!(options.tol >= 1e-12)) throw NumericalError(ErrorCode::kInvalidArgument, "exact_evolution: tol < 1e-12");
  int r = std::max(1, options.initial_substeps);
  ComplexMatrix previous = exact_product(spec.path(), spec.total_time(), r, options.scheme);
  double change = 0.0;
  while (2 * r <= options.max_substeps) {
    r *= 2;
    ComplexMatrix next = exact_product(spec.path(), spec.total_time(), r, options.scheme);
    change = max_norm_diff(next, previous);
    previous = std::move(next);
    if (change < options.tol) {
      UnitaryOperator out = make_operator(std::move(previous), Method::kExact, spec);
      out.substeps = r;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "exact_evolution: no convergence up to " << r << " substeps (last change " << change << ")";
  throw NumericalError(ErrorCode::kNoConvergence, msg.str());
}

StateEvolution exact_state_evolution(const AdiabaticPath& path, double total_time, const ComplexVector& psi,
                                     const ExactOptions& options) {
  if (psi.size() != path.dim()) throw NumericalError(ErrorCode::kDimensionMismatch, "state dimension mismatch");
  if (!(total_time > 0.0)) throw NumericalError(ErrorCode::kInvalidArgument, "total time must be positive");
  int r = std::max(1, options.initial_substeps);
  ComplexVector previous = cf4_propagate(path, total_time, psi, r);
  double change = 0.0;
  while (2 * r <= options.max_substeps) {
    r *= 2;
    ComplexVector next = cf4_propagate(path, total_time, psi, r);
    change = (next - previous).norm();
    previous = std::move(next);
    if (change < options.tol) return {std::move(previous), r, change};
  }
  std::ostringstream msg;
  msg << "exact_state_evolution: no convergence up to " << r << " substeps (last change " << change << ")";
  throw NumericalError(ErrorCode::kNoConvergence, msg.str());
}

std::vector<SpectralDecomposition> grid_spectra(const EvolutionSpec& spec, int threads) {
  const auto& s = spec.samples();
  std::vector<SpectralDecomposition> out(s.size());
  parallel_for(s.size(), threads, [&](std::size_t j) { out[j] = hermitian_eig(spec.path().matrix_at(s[j])); });
  return out;
}

UnitaryOperator discrete_evolution(const EvolutionSpec& spec) { return discrete_evolution(spec, grid_spectra(spec)); }

UnitaryOperator discrete_evolution(const EvolutionSpec& spec, const std::vector<SpectralDecomposition>& spectra) {
  if (spectra.size() != spec.samples().size()) {
    throw NumericalError(ErrorCode::kDimensionMismatch, "one spectrum per grid point required");
  }
  const Index dim = spec.path().dim();
  ComplexMatrix a = ComplexMatrix::Identity(dim, dim);
  for (const auto& sd : spectra) apply_spectral_exp(sd, spec.dt(), a);
  return make_operator(std::move(a), Method::kDiscrete, spec);
}

UnitaryOperator trotter_evolution(const EvolutionSpec& spec) {
  const Index dim = spec.path().dim();
  ComplexMatrix a = ComplexMatrix::Identity(dim, dim);
  for (double s : spec.samples()) {
    for (const auto& layer : spec.layers()) layer.apply_left(s, spec.dt(), a);
  }
  return make_operator(std::move(a), Method::kTrotter, spec);
}

UnitaryOperator trotter_step_unitary(const EvolutionSpec& spec, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw NumericalError(ErrorCode::kOutOfRange, "trotter_step_unitary: s outside [0, 1]");
  const Index dim = spec.path().dim();
  ComplexMatrix a = ComplexMatrix::Identity(dim, dim);
  for (const auto& layer : spec.layers()) layer.apply_left(s, spec.dt(), a);
  UnitaryOperator out = make_operator(std::move(a), Method::kStep, spec);
  out.steps = 1;
  return out;
}

EffectiveHamiltonian effective_hamiltonian(const EvolutionSpec& spec, double s) {
  const UnitaryOperator step = trotter_step_unitary(spec, s);
  LogResult log = principal_log_hamiltonian(step.matrix, spec.dt());
  return {HermitianOperator(std::move(log.hamiltonian), "H_eff"), log.branch_ambiguous, log.distance_to_cut};
}

}  // namespace dasim
