#pragma once

// Instance-level run of the dimension-induction argument for
// |A+A| + |A.A| on a finite A in Q^d: sign refinement, rich axis-aligned
// fibers, the structured / unstructured split, dyadic pigeonholing and
// recursion on lower-dimensional pieces. Every step records the inequality
// it relies on, instantiated with exact cardinalities.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/pointset.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

struct Constants {
  Rational delta1 = default_delta1();
  int structure_base = 10;   ///< structured case when rich mass >= |A| / base^d
  int pigeonhole_base = 20;  ///< selected direction carries >= |A| / base^d
  int sign_class_base = 3;   ///< largest sign class has >= |A| / base^d

  /// 1/3 + 5/5277.
  static Rational default_delta1();
  /// delta1 / u.
  Rational delta(std::size_t u) const;
  /// Throws DomainError unless 0 < delta1 < 1 and all bases are >= 1.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Sign classes

/// Ordered Zero < Negative < Positive (used for tie-breaking).
enum class SignTag : std::uint8_t { zero, negative, positive };
using SignPattern = std::vector<SignTag>;

SignPattern sign_pattern(const Point& p);
char sign_symbol(SignTag tag);
SignTag parse_sign_symbol(char c);

struct SignRefinement {
  PointSet refined;
  SignPattern pattern;
};

/// Largest class of points sharing a sign pattern; ties go to the smallest
/// pattern. Any two points of the class satisfy a_i b_i > 0 or a_i = b_i = 0
/// in every coordinate. Throws EmptyInput.
SignRefinement sign_refine(const PointSet& a);

// ---------------------------------------------------------------------------
// Axis-aligned subspaces

/// Which coordinates an axis-aligned subspace fixes. Masks are ordered by
/// their list of fixed indices, so {0} < {0,1} < {1}.
class Mask {
 public:
  explicit Mask(std::vector<bool> fixed);
  static Mask from_fixed_indices(std::size_t dim, const std::vector<std::size_t>& fixed);

  /// All masks with 1 <= free coordinates <= d - 1, in canonical order.
  static std::vector<Mask> proper_masks(std::size_t dim);

  std::size_t dim() const noexcept { return fixed_.size(); }
  bool is_fixed(std::size_t i) const { return fixed_[i]; }
  std::size_t free_count() const noexcept;
  std::vector<std::size_t> fixed_indices() const;
  std::vector<std::size_t> free_indices() const;

  friend bool operator==(const Mask&, const Mask&) = default;
  friend std::strong_ordering operator<=>(const Mask& a, const Mask& b);

 private:
  std::vector<bool> fixed_;
};

struct AxisAlignedSubspace {
  Mask mask;
  std::vector<Rational> fixed_values;  ///< one per fixed coordinate, in index order

  bool contains(const Point& p) const;
};

/// H together with H intersect A.
struct Fiber {
  AxisAlignedSubspace subspace;
  PointSet points;
};

/// Parallel rich fibers sharing one mask.
struct RichFamily {
  Mask mask;
  std::vector<Fiber> members;  ///< ordered by fixed values
  std::size_t threshold = 1;

  /// Sum of fiber sizes.
  std::uint64_t mass() const;
};

/// One family per proper mask (canonical mask order), each keeping the
/// fibers with at least `m` points. Throws DomainError when d = 1 or m = 0.
std::vector<RichFamily> enumerate_rich(const PointSet& a, std::size_t m);

/// Multiplicity-counted mass over all families.
std::uint64_t rich_mass(const std::vector<RichFamily>& families);

/// rich mass >= |A| / structure_base^d, compared exactly.
bool structure_case(const PointSet& a, std::size_t m, const Constants& constants = {});

struct DirectionSelection {
  RichFamily family;
  std::vector<std::uint64_t> masses;  ///< per input family, same order
};

/// The family of maximal mass (ties: smallest mask). Throws DomainError if
/// every family is empty.
DirectionSelection select_direction(const std::vector<RichFamily>& families);

struct DyadicSelection {
  RichFamily family;
  int level = 0;                  ///< I: every kept fiber has 2^I <= size < 2^(I+1)
  std::uint64_t bucket_mass = 0;  ///< mass of the kept fibers
};

/// Buckets fibers by floor(log2 size) and keeps the heaviest bucket (ties:
/// smaller level). Throws DomainError on an empty family.
DyadicSelection dyadic_select(const RichFamily& family);

/// ceil(log2 n), with ceil_log2(1) = 0.
int ceil_log2(std::uint64_t n);
/// 2 (ceil(log2 n) + 1): the dyadic selection keeps at least 1/this of the mass.
std::uint64_t dyadic_divisor(std::uint64_t n);

/// Drops the fixed coordinates. Throws DomainError if the points disagree on
/// a fixed coordinate.
PointSet project_fiber(const PointSet& fiber, const Mask& mask);

/// The fixed-value tuples of the fibers, as a set in dimension d - r.
PointSet base_points(const RichFamily& family);

enum class DisjointnessMode { sums, products };

struct DisjointnessReport {
  bool disjoint = true;        ///< pairwise and cross checks all passed
  std::uint64_t union_size = 0;
  std::uint64_t total_size = 0;
  std::vector<std::uint64_t> fiber_image_sizes;  ///< |B_i + B_i| or |B_i . B_i|
  std::vector<std::array<std::size_t, 4>> quadruples;
  std::size_t cross_applicable = 0;
  std::size_t cross_disjoint = 0;
};

/// Quadruples (i, j, k, l) of fiber indices used for the cross checks:
/// every quadruple when m^4 <= 16, otherwise 16 drawn with mt19937_64 seeded
/// by derive_seed(m).
std::vector<std::array<std::size_t, 4>> cross_check_quadruples(std::size_t m);

/// Checks that the fiber images B_i + B_i (or B_i . B_i) are pairwise
/// disjoint, and that B_i + B_j, B_k + B_l are disjoint whenever the fixed
/// parts satisfy a_i + a_j != a_k + a_l (products analogously).
DisjointnessReport verify_disjointness(const RichFamily& family, DisjointnessMode mode,
                                       const SetOpOptions& options = {});

struct PropositionBounds {
  std::uint64_t fiber_sum = 0;  ///< (a): sum over fibers of |B_i+B_i| + |B_i.B_i|
  std::uint64_t base_term = 0;  ///< (b): 2^I (|B'+B'| + |B'.B'|)
  Growth base_growth;
};

PropositionBounds proposition_bounds(const DisjointnessReport& sums,
                                     const DisjointnessReport& products, int level,
                                     const PointSet& base, const SetOpOptions& options = {});

struct UnstructuredExtraction {
  PointSet remaining;  ///< A' = A minus every rich fiber
  PointSet line;       ///< distinct values of `coordinate` over A'
  std::size_t coordinate = 0;
  std::uint64_t covered = 0;  ///< |A| - |A'|
};

/// Throws DomainError when d = 1 or A' would be empty.
UnstructuredExtraction unstructured_extract(const PointSet& a, std::size_t m,
                                            std::size_t coordinate = 0);

/// 1 / (1/delta_r + 1/delta_dr).
Rational combined_exponent(const Rational& delta_r, const Rational& delta_dr);

struct OptimizedBound {
  double x_star = 0;     ///< minimiser of f over [1, 2n]
  double min_value = 0;  ///< f(x_star)
  double target = 0;     ///< n^{combined exponent}
};

/// Minimises f(x) = x^dr + n^ddr x^-ddr over [1, 2n] through its stationary
/// point. Throws DomainError on out-of-range parameters or if
/// min_value < target (1 - 1e-9).
OptimizedBound optimize_bound(const Rational& delta_r, const Rational& delta_dr,
                              std::uint64_t n);
/// f(x) for the same parameters.
double optimize_objective(double x, double delta_r, double delta_dr, double n);

// ---------------------------------------------------------------------------
// Certificates

enum class Relation { ge, eq };

struct Inequality {
  std::string id;
  Rational lhs;
  Relation relation = Relation::ge;
  Rational rhs;
  bool verified = false;
};

enum class Branch { base, structure, unstructured };
std::string_view to_string(Branch b);

struct FiberRecord {
  std::vector<Rational> fixed;
  std::uint64_t size = 0;
  Growth growth;
};

struct StructureRecord {
  Mask mask{std::vector<bool>{true, false}};
  std::vector<std::uint64_t> mask_masses;  ///< in Mask::proper_masks order
  std::uint64_t selected_mass = 0;
  int level = 0;
  std::uint64_t bucket_mass = 0;
  std::vector<FiberRecord> fibers;
  std::size_t representative = 0;
  PointSet base{1};
  Growth base_growth;
  std::vector<std::array<std::size_t, 4>> quadruples;
  std::uint64_t bound_a = 0;
  std::uint64_t bound_b = 0;
  Rational delta_r;
  Rational delta_complement;
  // Floating-point reference values; never part of the verification.
  double proposition_rhs = 0;
  double optimizer_x = 0;
  double optimizer_min = 0;
  double optimizer_target = 0;
};

struct UnstructuredRecord {
  std::size_t coordinate = 0;
  std::uint64_t covered = 0;
  std::uint64_t remaining_size = 0;
  PointSet line{1};
  Growth line_growth;
};

struct CertificateNode {
  std::string role = "root";
  PointSet input{1};
  Growth growth;
  Branch branch = Branch::base;

  SignPattern pattern;  ///< empty for base nodes
  std::uint64_t refined_size = 0;
  Growth refined_growth;
  std::uint64_t rich_mass = 0;

  std::optional<StructureRecord> structure;
  std::optional<UnstructuredRecord> unstructured;

  std::vector<Inequality> inequalities;
  std::vector<CertificateNode> children;

  std::uint64_t lower_bound = 0;
  bool valid = true;
  std::string failure;  ///< first failed step, empty when valid
};

struct DecomposeOptions {
  std::size_t m = 0;  ///< 0 selects the default 2d + 2
  Constants constants;
  bool exhaustive = false;       ///< recurse on every fiber, not just the largest
  bool all_coordinates = false;  ///< unstructured case: best coordinate line
  SetOpOptions setops;

  std::size_t resolved_m(std::size_t dim) const { return m == 0 ? 2 * dim + 2 : m; }
};

struct DecompositionCertificate {
  Constants constants;
  std::size_t m = 2;
  bool exhaustive = false;
  bool all_coordinates = false;
  CertificateNode root;

  bool valid() const { return root.valid; }
  /// The certified L with L <= |A+A| + |A.A|.
  std::uint64_t lower_bound() const { return root.lower_bound; }
  std::size_t depth() const;
};

/// Runs the full pipeline. Throws EmptyInput, or DomainError when M < 2;
/// every other failure is reported through an invalid certificate.
DecompositionCertificate decompose(const PointSet& a, const DecomposeOptions& options = {});

}  // namespace sumprod
