#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sumprod/matrix.hpp"
#include "sumprod/pointset.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {

/// Finite set of d x d rational matrices in canonical (row-major
/// lexicographic) order.
class MatrixSet {
 public:
  explicit MatrixSet(std::size_t dim = 1);

  /// Sorts and deduplicates. Throws DimensionMismatch.
  static MatrixSet from_matrices(std::size_t dim, std::vector<Matrix> mats);
  static MatrixSet from_sorted_unique(std::size_t dim, std::vector<Matrix> mats);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return mats_.size(); }
  bool empty() const noexcept { return mats_.empty(); }
  std::span<const Matrix> matrices() const noexcept { return mats_; }
  const Matrix& operator[](std::size_t i) const { return mats_[i]; }
  auto begin() const noexcept { return mats_.begin(); }
  auto end() const noexcept { return mats_.end(); }

  friend bool operator==(const MatrixSet&, const MatrixSet&) = default;

 private:
  std::size_t dim_;
  std::vector<Matrix> mats_;
};

MatrixSet mat_sumset(const MatrixSet& a, const MatrixSet& b, const SetOpOptions& options = {});
/// Products use ordinary matrix multiplication, a * b with a from `a`.
MatrixSet mat_productset(const MatrixSet& a, const MatrixSet& b,
                         const SetOpOptions& options = {});
Growth mat_growth(const MatrixSet& a, const SetOpOptions& options = {});

/// (a_1, ..., a_d) -> diag(a_1, ..., a_d).
MatrixSet diag_embed(const PointSet& a);
/// Inverse of diag_embed. Throws DomainError naming the first non-diagonal
/// element.
PointSet diag_project(const MatrixSet& b);

/// The unipotent family {[[1, i/N], [0, 1]] : 1 <= i <= N}.
MatrixSet dn_family(std::size_t n);

struct PairWitness {
  std::size_t first;
  std::size_t second;
};

struct InvertibilityCheck {
  bool holds = true;
  std::optional<PairWitness> witness;  ///< a pair with det(a - a') = 0
};

/// det(a - a') != 0 for all distinct a, a' in the set.
InvertibilityCheck pairwise_diff_invertible(const MatrixSet& a);

enum class ConditionMode { exact_diagonal, numeric };

struct ConditionNumber {
  std::optional<Rational> exact;  ///< set in exact-diagonal mode
  double value = 0.0;
};

/// sigma_max / sigma_min. Exact mode requires a diagonal matrix with no zero
/// on the diagonal; numeric mode rejects sigma_min < 1e-12 sigma_max.
/// Both throw DomainError.
ConditionNumber condition_number(const Matrix& m, ConditionMode mode);
/// Exact for diagonal matrices, numeric otherwise.
ConditionNumber condition_number(const Matrix& m);

/// Relative tolerance applied when comparing a numeric condition number.
inline constexpr double kConditionRelTol = 1e-9;

struct ConditioningCheck {
  bool holds = true;
  std::size_t worst_index = 0;
  ConditionNumber worst;
};

/// kappa(a) <= kappa for all a. Throws DomainError if kappa < 1 or an element
/// is singular.
ConditioningCheck is_well_conditioned(const MatrixSet& a, const Rational& kappa);

}  // namespace sumprod
