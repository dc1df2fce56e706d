// Copyright 2026 The rangearith Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "ra/field.hpp"

namespace ra {

// Multilinear extensions over the boolean hypercube. A table of length 2^v
// holds f on {0,1}^v; index bits are big-endian, so variable x_1 is the most
// significant bit of the index.

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

constexpr std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// log2(n) for a power of two; throws otherwise.
inline std::size_t log2_exact(std::size_t n) {
  if (!is_pow2(n)) throw DimensionError("expected a power of two, got " + std::to_string(n));
  std::size_t v = 0;
  while ((std::size_t(1) << v) < n) ++v;
  return v;
}

/// chi_i(z) = prod_j (z_j i_j + (1 - z_j)(1 - i_j)) for every i < 2^v.
template <class F>
Vector<F> chi_vector(std::span<const F> z) {
  Vector<F> out(Eigen::Index(1) << z.size());
  out[0] = F::one();
  Eigen::Index len = 1;
  for (const F& zj : z) {
    // Appending one variable as the new least significant bit.
    for (Eigen::Index i = len; i-- > 0;) {
      const F hi = out[i] * zj;
      out[2 * i + 1] = hi;
      out[2 * i] = out[i] - hi;
    }
    len *= 2;
  }
  return out;
}

template <class F>
Vector<F> chi_vector(const Vector<F>& z) {
  return chi_vector<F>(std::span<const F>(z.data(), std::size_t(z.size())));
}

/// f~(z) for the table `evals`.
template <class F>
F mle_eval(const Vector<F>& evals, std::span<const F> z) {
  if (evals.size() != (Eigen::Index(1) << z.size())) {
    throw DimensionError("mle_eval: table has " + std::to_string(evals.size()) + " entries for " +
                         std::to_string(z.size()) + " variables");
  }
  return inner_product(evals, chi_vector<F>(z));
}

template <class F>
F mle_eval(const Vector<F>& evals, const Vector<F>& z) {
  return mle_eval<F>(evals, std::span<const F>(z.data(), std::size_t(z.size())));
}

/// prod_i (a_i b_i + (1 - a_i)(1 - b_i)): the MLE of the identity matrix.
template <class F>
F eq_eval(std::span<const F> a, std::span<const F> b) {
  if (a.size() != b.size()) throw DimensionError("eq_eval: length mismatch");
  F acc = F::one();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const F ab = a[i] * b[i];
    acc *= ab + ab + F::one() - a[i] - b[i];
  }
  return acc;
}

template <class F>
F eq_eval(const Vector<F>& a, const Vector<F>& b) {
  return eq_eval<F>(std::span<const F>(a.data(), std::size_t(a.size())),
                    std::span<const F>(b.data(), std::size_t(b.size())));
}

/// Row-major flatten: index = (row bits || column bits). Both dimensions must
/// be powers of two.
template <class F>
Vector<F> matrix_to_mle(const Matrix<F>& m) {
  if (!is_pow2(std::size_t(m.rows())) || !is_pow2(std::size_t(m.cols()))) {
    throw DimensionError("matrix_to_mle: dims " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " are not powers of two");
  }
  return Eigen::Map<const Vector<F>>(m.data(), m.size());
}

/// Zero-pads to `rows` x `cols`.
template <class F>
Matrix<F> pad_matrix(const Matrix<F>& m, Eigen::Index rows, Eigen::Index cols) {
  if (rows < m.rows() || cols < m.cols()) throw DimensionError("pad_matrix: target smaller than input");
  Matrix<F> out = Matrix<F>::Constant(rows, cols, F::zero());
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

template <class F>
Matrix<F> pad_to_pow2(const Matrix<F>& m) {
  return pad_matrix(m, Eigen::Index(next_pow2(std::size_t(m.rows()))), Eigen::Index(next_pow2(std::size_t(m.cols()))));
}

/// Binds the leading variable to r in place: t'[j] = (1 - r) t[j] + r t[j + half].
template <class F>
void fold_first_variable(Vector<F>& table, const F& r) {
  const Eigen::Index half = table.size() / 2;
  for (Eigen::Index j = 0; j < half; ++j) table[j] += r * (table[j + half] - table[j]);
  table.conservativeResize(half);
}

/// The table of f~(prefix, .) over the remaining variables.
template <class F>
Vector<F> bind_prefix(Vector<F> table, std::span<const F> prefix) {
  if ((Eigen::Index(1) << prefix.size()) > table.size()) throw DimensionError("bind_prefix: too many variables");
  for (const F& r : prefix) fold_first_variable(table, r);
  return table;
}

/// The table of f~(., suffix) over the leading variables.
template <class F>
Vector<F> bind_suffix(const Vector<F>& table, std::span<const F> suffix) {
  const Eigen::Index inner = Eigen::Index(1) << suffix.size();
  if (inner > table.size() || table.size() % inner != 0) throw DimensionError("bind_suffix: too many variables");
  const Vector<F> chi = chi_vector<F>(suffix);
  const Eigen::Index outer = table.size() / inner;
  Vector<F> out(outer);
  for (Eigen::Index i = 0; i < outer; ++i) {
    F acc{};
    for (Eigen::Index j = 0; j < inner; ++j) acc += table[i * inner + j] * chi[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace ra
