// dwpe/hermitian-solve.cc

// Copyright 2026 The dwpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dwpe/hermitian-solve.h"

#include <cmath>
#include <sstream>

#include "dwpe/error.h"

namespace dwpe {

namespace {

// Column-oriented (Crout) Cholesky of the lower triangle, in place.
// Returns false when a pivot is not strictly positive.
bool Factor(CMatrix &a, OpTally *tally, double *cond) {
  const Eigen::Index d = a.rows();
  double max_piv = 0.0, min_piv = INFINITY;
  for (Eigen::Index j = 0; j < d; ++j) {
    // Apply the updates from columns k < j to column j, rows j..d-1.
    for (Eigen::Index k = 0; k < j; ++k) {
      const Complex c = std::conj(a(j, k));
      a(j, j) -= Complex(std::norm(a(j, k)), 0.0);
      for (Eigen::Index i = j + 1; i < d; ++i) a(i, j) -= a(i, k) * c;
    }
    if (tally) {
      tally->mul += j * (d - j);
      tally->add += j * (d - j);
    }
    const double piv2 = a(j, j).real();
    if (!(piv2 > 0.0) || !std::isfinite(piv2)) {
      *cond = INFINITY;
      return false;
    }
    const double piv = std::sqrt(piv2);
    a(j, j) = piv;
    for (Eigen::Index i = j + 1; i < d; ++i) a(i, j) /= piv;
    if (tally) {
      tally->sqrt += 1;
      tally->div += d - 1 - j;
    }
    max_piv = std::max(max_piv, piv);
    min_piv = std::min(min_piv, piv);
  }
  *cond = d == 0 ? 1.0 : (max_piv / min_piv) * (max_piv / min_piv);
  return true;
}

// Solves L L^H x = b given the factor in the lower triangle of `l`.
CVector Substitute(const CMatrix &l, const CVector &b, OpTally *tally) {
  const Eigen::Index d = l.rows();
  CVector y = b;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = 0; k < i; ++k) y(i) -= l(i, k) * y(k);
    y(i) /= l(i, i).real();
  }
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    for (Eigen::Index k = i + 1; k < d; ++k) y(i) -= std::conj(l(k, i)) * y(k);
    y(i) /= l(i, i).real();
  }
  if (tally) {
    tally->mul += d * (d - 1);
    tally->add += d * (d - 1);
    tally->div += 2 * d;
  }
  return y;
}

}  // namespace

double DefaultRidge(const CMatrix &z, double scale) {
  if (z.rows() == 0) return 0.0;
  return scale * z.diagonal().real().sum() / static_cast<double>(z.rows());
}

CVector SolveWeights(const CMatrix &z, const CVector &q, double ridge,
                     SolveInfo *info, OpTally *tally) {
  const Eigen::Index d = z.rows();
  if (z.cols() != d || q.size() != d) {
    std::ostringstream os;
    os << "solve dimension mismatch: Z is " << z.rows() << "x" << z.cols()
       << ", q has " << q.size() << " entries";
    Fail(ErrorKind::kInvalidInput, os.str());
  }
  Require(ridge >= 0.0, ErrorKind::kInvalidInput, "ridge must be >= 0");

  CMatrix a = z.triangularView<Eigen::Lower>();
  a.diagonal().array() += ridge;
  // Solving against an all-zero system is well defined when q is also zero.
  if (q.squaredNorm() == 0.0 && a.diagonal().real().sum() == 0.0) {
    if (info) *info = SolveInfo{};
    return CVector::Zero(d);
  }

  double cond = 1.0;
  if (!Factor(a, tally, &cond)) {
    std::ostringstream os;
    os << "Hermitian system of dimension " << d
       << " is not positive definite after ridge " << ridge
       << " (condition estimate " << cond << ")";
    Fail(ErrorKind::kSolver, os.str());
  }
  CVector w = Substitute(a, q, tally);

  // Residual against the regularized Hermitian matrix, rebuilt from the
  // lower triangle so an unsymmetric upper half in `z` is ignored.
  CMatrix full = z.selfadjointView<Eigen::Lower>();
  full.diagonal().array() += ridge;
  const double qnorm = q.norm();
  double rel = 0.0;
  if (qnorm > 0.0) {
    for (int step = 0; step < 3; ++step) {
      CVector r = q - full * w;
      rel = r.norm() / qnorm;
      if (rel <= 1e-14 || step == 2) break;
      w += Substitute(a, r, nullptr);
    }
  }
  if (!w.allFinite())
    Fail(ErrorKind::kNumerical, "non-finite solution in Hermitian solve");
  if (info) *info = SolveInfo{cond, rel};
  return w;
}

}  // namespace dwpe
