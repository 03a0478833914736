#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sumprod/pointset.hpp"

namespace sumprod {

enum class FamilyKind { interval, geometric, cn_product, random_box, random_product, custom };

std::string_view to_string(FamilyKind kind);
/// Accepts the names printed by to_string plus the short aliases "cn" and
/// "box". Throws DomainError.
FamilyKind parse_family_kind(std::string_view name);

/// Parameters of a point-set family. `n` is N for the named families and the
/// point count for the random ones (per factor for random_product).
struct FamilySpec {
  FamilyKind kind = FamilyKind::interval;
  std::int64_t n = 1;
  std::size_t dim = 1;    ///< random families: ambient dimension
  std::size_t split = 1;  ///< random_product: dimension of the first factor
  std::uint64_t seed = 0;
  std::int64_t lo = -8;
  std::int64_t hi = 8;
  std::string path;  ///< custom: point-set file

  /// Throws DomainError.
  void validate() const;
  std::size_t output_dim() const;

  nlohmann::json to_json() const;
  static FamilySpec from_json(const nlohmann::json& j);
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// {1, ..., N}
PointSet interval_family(std::int64_t n);
/// {2, 4, ..., 2^N}, exact for any N.
PointSet geometric_family(std::int64_t n);
/// interval_family(N) x geometric_family(N)
PointSet cn_family(std::int64_t n);

/// `count` distinct integer points of [lo, hi]^dim drawn with mt19937_64.
/// Throws DomainError when count exceeds the box cardinality.
PointSet random_box(std::size_t count, std::size_t dim, std::int64_t lo, std::int64_t hi,
                    std::uint64_t seed);

PointSet generate(const FamilySpec& spec);

/// splitmix64 step, used to derive independent sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed);

/// Uniform draw from [0, bound) by rejection; identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace sumprod
