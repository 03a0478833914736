#pragma once

// Instance-level growth exponents, family sweeps and the exhaustive
// extremal-search oracle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/pointset.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

/// log(max(|A+A|, |A.A|)) / log|A| - 1, the instance surrogate for the
/// theorem's exponent. Throws DomainError unless size >= 2.
double exponent_of(const Growth& g, std::uint64_t size);
/// Same with |A+A| + |A.A| in place of the maximum.
double exponent_total_of(const Growth& g, std::uint64_t size);
double exponent(const PointSet& a, const SetOpOptions& options = {});

struct GrowthRow {
  std::int64_t n = 0;
  std::uint64_t size = 0;
  Growth growth;
  std::optional<double> exponent;        ///< absent when size < 2
  std::optional<double> exponent_total;  ///< absent when size < 2
  std::optional<bool> within_ceiling;    ///< C_N rows only
};

struct GrowthReport {
  std::string family;
  std::size_t dim = 1;
  bool matrices = false;
  std::vector<GrowthRow> rows;
  double theorem_line = 0;             ///< delta1 / d, compared against the exponent
  std::optional<double> d2_ceiling;    ///< 1/2 for d = 2 (|A|^{3/2} growth)
  nlohmann::json provenance;

  nlohmann::json to_json() const;
  std::string to_text() const;
  std::string to_csv() const;
};

/// C_N ceiling: 8 |C+C| <= 9 N^3 and |C.C| <= 2 N^3, exact.
bool cn_within_ceiling(std::int64_t n, const Growth& g);

struct SweepOptions {
  Rational delta1 = Rational(1, 3) + Rational(5, 5277);
  unsigned threads = 1;  ///< 0: hardware concurrency
};

/// One row per n in [n_lo, n_hi], with `spec.n` replaced by each n.
GrowthReport sweep(const FamilySpec& spec, std::int64_t n_lo, std::int64_t n_hi,
                   const SweepOptions& options = {});
/// D_N matrix family rows; the theorem line uses d = 2.
GrowthReport sweep_dn(std::int64_t n_lo, std::int64_t n_hi, const SweepOptions& options = {});

class BudgetExceeded : public DomainError {
 public:
  BudgetExceeded(const std::string& count, std::uint64_t budget);
  const std::string& count() const noexcept { return count_; }

 private:
  std::string count_;
};

inline constexpr std::uint64_t kSearchBudget = 10'000'000;

struct SearchResult {
  std::uint64_t value = 0;  ///< minimal |A+A| + |A.A|
  std::vector<PointSet> minimizers;  ///< canonical order
  std::uint64_t examined = 0;

  nlohmann::json to_json() const;
};

/// Every integer point of [lo, hi]^dim.
std::vector<Point> integer_box(std::size_t dim, std::int64_t lo, std::int64_t hi);

/// Exhaustive minimisation of |A+A| + |A.A| over the k-subsets of the
/// universe (deduplicated first). Throws BudgetExceeded when C(|U|, k)
/// exceeds the budget and DomainError when k < 2 or k > |U|.
SearchResult extremal_search(std::vector<Point> universe, std::size_t k, unsigned threads = 1,
                             std::uint64_t budget = kSearchBudget);

}  // namespace sumprod
