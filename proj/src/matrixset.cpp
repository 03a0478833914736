#include "sumprod/matrixset.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <string>

#include "sumprod/detail/pairwise.hpp"
#include "sumprod/errors.hpp"

namespace sumprod {
namespace {

void require_binary(const MatrixSet& a, const MatrixSet& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  if (a.empty() || b.empty()) throw EmptyInput(what);
}

}  // namespace

MatrixSet::MatrixSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DomainError("matrix dimension must be at least 1");
}

MatrixSet MatrixSet::from_matrices(std::size_t dim, std::vector<Matrix> mats) {
  MatrixSet out(dim);
  for (const auto& m : mats) {
    if (m.dim() != dim) throw DimensionMismatch(dim, m.dim());
  }
  std::sort(mats.begin(), mats.end());
  mats.erase(std::unique(mats.begin(), mats.end()), mats.end());
  out.mats_ = std::move(mats);
  return out;
}

MatrixSet MatrixSet::from_sorted_unique(std::size_t dim, std::vector<Matrix> mats) {
  MatrixSet out(dim);
  out.mats_ = std::move(mats);
  return out;
}

MatrixSet mat_sumset(const MatrixSet& a, const MatrixSet& b, const SetOpOptions& options) {
  require_binary(a, b, "mat_sumset");
  auto mats = detail::pairwise_image<Matrix, MatrixHash>(
      a.matrices(), b.matrices(), [](const Matrix& x, const Matrix& y) { return x + y; },
      options);
  return MatrixSet::from_sorted_unique(a.dim(), std::move(mats));
}

MatrixSet mat_productset(const MatrixSet& a, const MatrixSet& b, const SetOpOptions& options) {
  require_binary(a, b, "mat_productset");
  auto mats = detail::pairwise_image<Matrix, MatrixHash>(
      a.matrices(), b.matrices(), [](const Matrix& x, const Matrix& y) { return x * y; },
      options);
  return MatrixSet::from_sorted_unique(a.dim(), std::move(mats));
}

Growth mat_growth(const MatrixSet& a, const SetOpOptions& options) {
  if (a.empty()) throw EmptyInput("mat_growth");
  return {mat_sumset(a, a, options).size(), mat_productset(a, a, options).size()};
}

MatrixSet diag_embed(const PointSet& a) {
  if (a.empty()) throw EmptyInput("diag_embed");
  std::vector<Matrix> mats;
  mats.reserve(a.size());
  for (const auto& p : a) mats.push_back(Matrix::diagonal(p.coords()));
  // Diagonal embedding is not order-preserving in general, so re-sort.
  return MatrixSet::from_matrices(a.dim(), std::move(mats));
}

PointSet diag_project(const MatrixSet& b) {
  std::vector<Point> pts;
  pts.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!b[i].is_diagonal()) {
      throw DomainError("matrix at index " + std::to_string(i) + " is not diagonal");
    }
    pts.push_back(Point(b[i].diagonal_entries()));
  }
  return PointSet::from_points(b.dim(), std::move(pts));
}

MatrixSet dn_family(std::size_t n) {
  if (n == 0) throw DomainError("D_N requires N >= 1");
  std::vector<Matrix> mats;
  mats.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    Matrix m = Matrix::identity(2);
    m(0, 1) = Rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n));
    mats.push_back(std::move(m));
  }
  return MatrixSet::from_sorted_unique(2, std::move(mats));
}

InvertibilityCheck pairwise_diff_invertible(const MatrixSet& a) {
  if (a.empty()) throw EmptyInput("pairwise_diff_invertible");
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (determinant(a[i] - a[j]).is_zero()) return {false, PairWitness{i, j}};
    }
  }
  return {};
}

ConditionNumber condition_number(const Matrix& m, ConditionMode mode) {
  if (m.is_zero()) throw DomainError("condition number of the zero matrix");
  if (mode == ConditionMode::exact_diagonal) {
    if (!m.is_diagonal()) throw DomainError("exact condition number needs a diagonal matrix");
    Rational lo;
    Rational hi;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      const Rational v = m(i, i).abs();
      if (v.is_zero()) throw DomainError("zero diagonal entry: matrix is singular");
      if (i == 0 || v < lo) lo = v;
      if (i == 0 || v > hi) hi = v;
    }
    Rational kappa = hi / lo;
    const double approx = kappa.to_double();
    return {std::move(kappa), approx};
  }
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dense(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_double();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(n - 1);
  if (!(smin >= 1e-12 * smax)) throw DomainError("matrix is numerically singular");
  return {std::nullopt, smax / smin};
}

ConditionNumber condition_number(const Matrix& m) {
  return condition_number(m, m.is_diagonal() ? ConditionMode::exact_diagonal
                                             : ConditionMode::numeric);
}

ConditioningCheck is_well_conditioned(const MatrixSet& a, const Rational& kappa) {
  if (kappa < Rational(1)) throw DomainError("kappa must be at least 1");
  if (a.empty()) throw EmptyInput("is_well_conditioned");
  ConditioningCheck out;
  const double kappa_d = kappa.to_double();
  for (std::size_t i = 0; i < a.size(); ++i) {
    ConditionNumber c;
    try {
      c = condition_number(a[i]);
    } catch (const DomainError& e) {
      throw DomainError("element " + std::to_string(i) + ": " + e.what());
    }
    const bool worse = i == 0 || (c.exact && out.worst.exact ? *c.exact > *out.worst.exact
                                                              : c.value > out.worst.value);
    if (worse) {
      out.worst_index = i;
      out.worst = c;
    }
    const bool ok = c.exact ? *c.exact <= kappa : c.value <= kappa_d * (1.0 + kConditionRelTol);
    if (!ok) out.holds = false;
  }
  return out;
}

}  // namespace sumprod
