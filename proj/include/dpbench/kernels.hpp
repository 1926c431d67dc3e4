// Copyright 2026 The dpbench Authors
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
#include <string_view>

namespace dpbench::kernels {

/// Vector kernels used by the arithmetic inner loops (policy matvec,
/// criteria reductions, sysid error, evolution-strategy updates).
///
/// A scalar reference backend is always available; an AVX2 backend is
/// selected at startup when the CPU supports it. Elementwise kernels are
/// bit-identical across backends; reduction kernels may differ by rounding
/// from re-association, so they are equivalence-tested against the scalar
/// reference within a tight relative tolerance. The backend is fixed for the
/// lifetime of the process, which keeps repeated runs byte-identical.
enum class Backend { scalar, avx2 };

/// Backend selected for this process (AVX2 when the CPU supports it).
Backend active();

/// Overrides the backend; throws std::runtime_error if unsupported here.
/// Intended for the equivalence tests.
void force(Backend backend);

bool avx2_supported();
std::string_view backend_name(Backend backend);

/// Sum of a[i] * b[i].
double dot(const double* a, const double* b, std::size_t n);

/// Sum of a[i]^2.
double sum_sq(const double* a, std::size_t n);

/// Sum of |a[i] * b[i]|.
double sum_abs_prod(const double* a, const double* b, std::size_t n);

/// Sum of w[i] * (a[i] - b[i])^2.
double weighted_sq_err(const double* w, const double* a, const double* b,
                       std::size_t n);

/// y[i] += a[i] * b[i], elementwise.
void mul_add(double* y, const double* a, const double* b, std::size_t n);

/// y[i] += alpha * x[i].
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// y = W x + bias, W row-major (rows x cols). bias may be null.
void matvec(const double* w, const double* x, const double* bias, double* y,
            std::size_t rows, std::size_t cols);

namespace detail {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*sum_abs_prod)(const double*, const double*, std::size_t);
  double (*weighted_sq_err)(const double*, const double*, const double*,
                            std::size_t);
  void (*mul_add)(double*, const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
};

const Ops& scalar_ops();
#if defined(DPBENCH_HAVE_AVX2)
const Ops& avx2_ops();
#endif

}  // namespace detail

}  // namespace dpbench::kernels
