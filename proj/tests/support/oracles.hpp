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

#pragma once

// Independent reference implementations used as test oracles. None of these
// call into the library code they check.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char axis) {
  Mat m(2, 2);
  switch (axis) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Tensor product with `axes[j]` on site j; 'I' for identity. Site 0 leftmost.
inline Mat pauli_string(const std::vector<char>& axes) {
  Mat out = Mat::Identity(1, 1);
  for (char a : axes) out = kron(out, pauli(a));
  return out;
}

inline Mat single(int n, int site, char axis) {
  std::vector<char> axes(static_cast<std::size_t>(n), 'I');
  axes[static_cast<std::size_t>(site)] = axis;
  return pauli_string(axes);
}

inline Mat tfim_x(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat h = Mat::Zero(d, d);
  for (int j = 0; j < n; ++j) h -= single(n, j, 'X');
  return h;
}

inline Mat tfim_z(int n, bool periodic = false) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat h = Mat::Zero(d, d);
  for (int j = 0; j < n; ++j) h -= single(n, j, 'Z');
  const int bonds = (periodic && n > 2) ? n : n - 1;
  for (int j = 0; j < bonds; ++j) h -= single(n, j, 'Z') * single(n, (j + 1) % n, 'Z');
  return h;
}

/// exp(-i t H) by scaling and squaring of a truncated Taylor series.
inline Mat taylor_exp(const Mat& h, double t) {
  const Mat a = cplx(0.0, -t) * h;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Mat scaled = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(h.rows(), h.cols());
  Mat sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline double spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

inline Mat random_hermitian(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  return scale * 0.5 * (a + a.adjoint());
}

inline Mat random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Mat> qr(a);
  return qr.householderQ() * Mat::Identity(n, n);
}

/// Hermitian matrix with prescribed spectrum in a random basis.
inline Mat with_spectrum(std::mt19937_64& rng, const Eigen::VectorXd& spectrum) {
  const Mat q = random_unitary(rng, spectrum.size());
  return q * spectrum.cast<cplx>().asDiagonal() * q.adjoint();
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace oracle
