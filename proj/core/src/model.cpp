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

#include "dasim/model.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dasim {
namespace {

void require_unit_interval(double s, const char* what) {
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": s = " << s << " outside [0, 1]";
    throw NumericalError(ErrorCode::kOutOfRange, msg.str());
  }
}

PauliAxis parse_axis(const std::string& name) {
  if (name == "X" || name == "x") return PauliAxis::kX;
  if (name == "Y" || name == "y") return PauliAxis::kY;
  if (name == "Z" || name == "z") return PauliAxis::kZ;
  throw std::invalid_argument("unknown Pauli axis '" + name + "'");
}

std::vector<PauliTerm> parse_terms(const nlohmann::json& list, const char* key) {
  if (!list.is_array()) throw std::invalid_argument(std::string(key) + " must be an array of terms");
  std::vector<PauliTerm> terms;
  for (const auto& item : list) {
    PauliTerm term;
    term.coefficient = item.at("coeff").get<double>();
    for (const auto& factor : item.at("ops")) {
      if (!factor.is_array() || factor.size() != 2) {
        throw std::invalid_argument(std::string(key) + ": each op must be [site, axis]");
      }
      term.factors.push_back({factor[0].get<int>(), parse_axis(factor[1].get<std::string>())});
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace

ComplexMatrix pauli_sum_matrix(int n_sites, std::span<const PauliTerm> terms) {
  if (n_sites < 1) throw NumericalError(ErrorCode::kInvalidArgument, "need at least one site");
  if (n_sites > kMaxSites) {
    throw NumericalError(ErrorCode::kDimensionTooLarge,
                         "n_sites = " + std::to_string(n_sites) + " exceeds " + std::to_string(kMaxSites));
  }
  const Index dim = Index{1} << n_sites;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const PauliTerm& term : terms) {
    std::uint64_t flip = 0;
    std::uint64_t zmask = 0;
    std::uint64_t ymask = 0;
    std::set<int> seen;
    for (const PauliFactor& f : term.factors) {
      if (f.site < 0 || f.site >= n_sites) {
        throw NumericalError(ErrorCode::kOutOfRange, "Pauli site " + std::to_string(f.site) + " out of range");
      }
      if (!seen.insert(f.site).second) {
        throw NumericalError(ErrorCode::kInvalidArgument,
                             "two factors on site " + std::to_string(f.site) + " in one term");
      }
      const std::uint64_t bit = std::uint64_t{1} << (n_sites - 1 - f.site);
      switch (f.axis) {
        case PauliAxis::kX: flip |= bit; break;
        case PauliAxis::kY: flip |= bit; ymask |= bit; break;
        case PauliAxis::kZ: zmask |= bit; break;
      }
    }
    const int y_count = std::popcount(ymask);
    // Y = i X Z acting on |b>: Y|b> = i (-1)^b |~b>.
    const cplx y_phase = std::pow(cplx(0.0, 1.0), y_count);
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
      const int sign_bits = std::popcount(col & (zmask | ymask));
      const double sign = (sign_bits % 2 == 0) ? 1.0 : -1.0;
      const std::uint64_t row = col ^ flip;
      out(static_cast<Index>(row), static_cast<Index>(col)) += term.coefficient * sign * y_phase;
    }
  }
  return out;
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix, std::string label, double tol)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  require_hermitian(matrix_, tol, label_.empty() ? "HermitianOperator" : label_.c_str());
}

Schedule Schedule::linear() {
  return Schedule{"linear", [](double s) { return s; }, [](double) { return 1.0; },
                  [](double) { return 0.0; }};
}

Schedule Schedule::polynomial(std::vector<double> c) {
  if (c.empty()) throw NumericalError(ErrorCode::kInvalidArgument, "empty polynomial schedule");
  double at_one = 0.0;
  for (double v : c) at_one += v;
  if (std::abs(c[0]) > 1e-12 || std::abs(at_one - 1.0) > 1e-12) {
    throw NumericalError(ErrorCode::kInvalidArgument, "polynomial schedule must satisfy p(0)=0 and p(1)=1");
  }
  auto horner = [](std::vector<double> coeffs) {
    return [coeffs = std::move(coeffs)](double s) {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
      return acc;
    };
  };
  std::vector<double> d1;
  for (std::size_t k = 1; k < c.size(); ++k) d1.push_back(static_cast<double>(k) * c[k]);
  std::vector<double> d2;
  for (std::size_t k = 1; k < d1.size(); ++k) d2.push_back(static_cast<double>(k) * d1[k]);
  if (d1.empty()) d1.push_back(0.0);
  if (d2.empty()) d2.push_back(0.0);
  return Schedule{"custom-polynomial", horner(c), horner(d1), horner(d2)};
}

AdiabaticPath::AdiabaticPath(HermitianOperator initial, HermitianOperator final_op, Schedule schedule)
    : initial_(std::move(initial)), final_(std::move(final_op)), schedule_(std::move(schedule)) {
  if (initial_.dim() != final_.dim() || initial_.dim() == 0) {
    throw NumericalError(ErrorCode::kDimensionMismatch, "H_i and H_f must have the same nonzero dimension");
  }
  if (!schedule_.value || !schedule_.first || !schedule_.second) {
    throw NumericalError(ErrorCode::kInvalidArgument, "schedule must provide p, p', p''");
  }
  if (std::abs(schedule_.value(0.0)) > 1e-12 || std::abs(schedule_.value(1.0) - 1.0) > 1e-12) {
    throw NumericalError(ErrorCode::kInvalidArgument, "schedule must satisfy p(0)=0 and p(1)=1");
  }
  difference_ = final_.matrix() - initial_.matrix();
  initial_sparse_ = to_sparse(initial_.matrix());
  final_sparse_ = to_sparse(final_.matrix());
}

ComplexMatrix AdiabaticPath::matrix_at(double s) const {
  const double p = schedule_.value(s);
  return (1.0 - p) * initial_.matrix() + p * final_.matrix();
}

HermitianOperator AdiabaticPath::at(double s, int order) const {
  require_unit_interval(s, "AdiabaticPath::at");
  switch (order) {
    case 0: return HermitianOperator(matrix_at(s), "H(s)");
    case 1: return HermitianOperator(schedule_.first(s) * difference_, "H'(s)");
    case 2: return HermitianOperator(schedule_.second(s) * difference_, "H''(s)");
    default:
      throw NumericalError(ErrorCode::kInvalidArgument, "derivative order must be 0, 1 or 2");
  }
}

HermitianOperator path_at(const AdiabaticPath& path, double s, int order) { return path.at(s, order); }

TfimHamiltonians build_tfim(int n_sites, bool periodic) {
  if (n_sites < 2) throw NumericalError(ErrorCode::kInvalidArgument, "TFIM needs at least 2 sites");
  if (n_sites > kMaxSites) {
    throw NumericalError(ErrorCode::kDimensionTooLarge,
                         "n_sites = " + std::to_string(n_sites) + " exceeds " + std::to_string(kMaxSites));
  }
  std::vector<PauliTerm> x_terms;
  std::vector<PauliTerm> z_terms;
  for (int j = 0; j < n_sites; ++j) {
    x_terms.push_back({-1.0, {{j, PauliAxis::kX}}});
    z_terms.push_back({-1.0, {{j, PauliAxis::kZ}}});
  }
  // A periodic two-site ring has a single distinct bond.
  const int bonds = (periodic && n_sites > 2) ? n_sites : n_sites - 1;
  for (int j = 0; j < bonds; ++j) {
    z_terms.push_back({-1.0, {{j, PauliAxis::kZ}, {(j + 1) % n_sites, PauliAxis::kZ}}});
  }
  return {HermitianOperator(pauli_sum_matrix(n_sites, x_terms), "H_X"),
          HermitianOperator(pauli_sum_matrix(n_sites, z_terms), "H_Z")};
}

AdiabaticPath tfim_path(int n_sites, bool periodic, Schedule schedule) {
  auto tfim = build_tfim(n_sites, periodic);
  return AdiabaticPath(std::move(tfim.h_x), std::move(tfim.h_z), std::move(schedule));
}

double spectral_gap(const AdiabaticPath& path, double s, int level) {
  require_unit_interval(s, "spectral_gap");
  if (level < 1 || level >= path.dim()) {
    throw NumericalError(ErrorCode::kOutOfRange, "gap level " + std::to_string(level) + " out of range");
  }
  const SpectralDecomposition spec = hermitian_eig(path.matrix_at(s));
  return std::max(0.0, spec.eigenvalues(level) - spec.eigenvalues(0));
}

AdiabaticPath parse_path_definition(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("path definition is not valid JSON: ") + e.what());
  }
  try {
    const int n = doc.at("n_sites").get<int>();
    const auto initial = parse_terms(doc.at("H_i"), "H_i");
    const auto final_terms = parse_terms(doc.at("H_f"), "H_f");
    Schedule schedule = Schedule::linear();
    if (doc.contains("schedule")) {
      const auto& sched = doc.at("schedule");
      const std::string name = sched.is_string() ? sched.get<std::string>() : sched.at("name").get<std::string>();
      if (name == "custom-polynomial") {
        schedule = Schedule::polynomial(sched.at("coefficients").get<std::vector<double>>());
      } else if (name != "linear") {
        throw std::invalid_argument("unknown schedule '" + name + "'");
      }
    }
    return AdiabaticPath(HermitianOperator(pauli_sum_matrix(n, initial), "H_i"),
                         HermitianOperator(pauli_sum_matrix(n, final_terms), "H_f"), std::move(schedule));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("path definition schema error: ") + e.what());
  }
}

AdiabaticPath load_path_definition(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open path definition " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_path_definition(buffer.str());
}

}  // namespace dasim
