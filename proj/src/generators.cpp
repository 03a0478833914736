#include "sumprod/generators.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "sumprod/errors.hpp"
#include "sumprod/io.hpp"

namespace sumprod {
namespace {

struct KindName {
  FamilyKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {FamilyKind::interval, "interval"},         {FamilyKind::geometric, "geometric"},
    {FamilyKind::cn_product, "cn_product"},     {FamilyKind::random_box, "random_box"},
    {FamilyKind::random_product, "random_product"}, {FamilyKind::custom, "custom"},
};

// Box cardinality, saturated at 2^64 - 1.
std::uint64_t box_cardinality(std::size_t dim, std::int64_t lo, std::int64_t hi) {
  const unsigned __int128 side = static_cast<unsigned __int128>(
      static_cast<__int128>(hi) - static_cast<__int128>(lo) + 1);
  unsigned __int128 total = 1;
  const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < dim; ++i) {
    total *= side;
    if (total > cap) return static_cast<std::uint64_t>(cap);
  }
  return static_cast<std::uint64_t>(total);
}

Point box_point(std::uint64_t index, std::size_t dim, std::int64_t lo, std::uint64_t side) {
  std::vector<Rational> coords(dim);
  for (std::size_t i = dim; i-- > 0;) {
    coords[i] = Rational(lo + static_cast<std::int64_t>(index % side));
    index /= side;
  }
  return Point(std::move(coords));
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "cn") return FamilyKind::cn_product;
  if (name == "box") return FamilyKind::random_box;
  for (const auto& k : kKindNames) {
    if (k.name == name) return k.kind;
  }
  throw DomainError("unknown family '" + std::string(name) + "'");
}

void FamilySpec::validate() const {
  if (n < 1) throw DomainError("family parameter n must be at least 1");
  switch (kind) {
    case FamilyKind::interval:
    case FamilyKind::geometric:
    case FamilyKind::cn_product:
      return;
    case FamilyKind::random_box:
    case FamilyKind::random_product:
      if (dim < 1) throw DomainError("dimension must be at least 1");
      if (lo > hi) throw DomainError("empty range: lo > hi");
      if (kind == FamilyKind::random_product && (split < 1 || split >= dim)) {
        throw DomainError("random_product needs 1 <= split < dim");
      }
      return;
    case FamilyKind::custom:
      if (path.empty()) throw DomainError("custom family needs a path");
      return;
  }
}

std::size_t FamilySpec::output_dim() const {
  switch (kind) {
    case FamilyKind::interval:
    case FamilyKind::geometric:
      return 1;
    case FamilyKind::cn_product:
      return 2;
    default:
      return dim;
  }
}

nlohmann::json FamilySpec::to_json() const {
  nlohmann::json j;
  j["kind"] = std::string(to_string(kind));
  j["n"] = n;
  switch (kind) {
    case FamilyKind::random_product:
      j["split"] = split;
      [[fallthrough]];
    case FamilyKind::random_box:
      j["dim"] = dim;
      j["seed"] = seed;
      j["lo"] = lo;
      j["hi"] = hi;
      break;
    case FamilyKind::custom:
      j["path"] = path;
      break;
    default:
      break;
  }
  return j;
}

FamilySpec FamilySpec::from_json(const nlohmann::json& j) {
  FamilySpec spec;
  try {
    spec.kind = parse_family_kind(j.at("kind").get<std::string>());
    spec.n = j.at("n").get<std::int64_t>();
    spec.dim = j.value("dim", spec.output_dim());
    spec.split = j.value("split", std::size_t{1});
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.lo = j.value("lo", spec.lo);
    spec.hi = j.value("hi", spec.hi);
    spec.path = j.value("path", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid family spec: ") + e.what());
  }
  return spec;
}

PointSet interval_family(std::int64_t n) {
  if (n < 1) throw DomainError("interval family requires N >= 1");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) pts.push_back(Point({Rational(i)}));
  return PointSet::from_sorted_unique(1, std::move(pts));
}

PointSet geometric_family(std::int64_t n) {
  if (n < 1) throw DomainError("geometric family requires N >= 1");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  Rational power(1);
  for (std::int64_t i = 1; i <= n; ++i) {
    power *= 2;
    pts.push_back(Point({power}));
  }
  return PointSet::from_sorted_unique(1, std::move(pts));
}

PointSet cn_family(std::int64_t n) { return cartesian(interval_family(n), geometric_family(n)); }

std::uint64_t derive_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw DomainError("uniform_below needs a positive bound");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

PointSet random_box(std::size_t count, std::size_t dim, std::int64_t lo, std::int64_t hi,
                    std::uint64_t seed) {
  if (dim == 0) throw DomainError("dimension must be at least 1");
  if (lo > hi) throw DomainError("empty range: lo > hi");
  if (count == 0) throw DomainError("point count must be at least 1");
  if (static_cast<__int128>(hi) - lo >= (static_cast<__int128>(1) << 62)) {
    throw DomainError("coordinate range too wide");
  }
  const std::uint64_t card = box_cardinality(dim, lo, hi);
  if (count > card) {
    throw DomainError("requested " + std::to_string(count) + " points but the box has only " +
                      std::to_string(card));
  }
  const auto side = static_cast<std::uint64_t>(hi - lo) + 1;  // < 2^62
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);

  if (card <= 4 * static_cast<std::uint64_t>(count) && card <= 10'000'000) {
    // Dense request: partial Fisher-Yates over all box indices.
    std::vector<std::uint64_t> indices(card);
    for (std::uint64_t i = 0; i < card; ++i) indices[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t j = i + uniform_below(rng, card - i);
      std::swap(indices[i], indices[j]);
      pts.push_back(box_point(indices[i], dim, lo, side));
    }
  } else {
    std::set<Point> seen;
    while (seen.size() < count) {
      std::vector<Rational> coords;
      coords.reserve(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        coords.emplace_back(lo + static_cast<std::int64_t>(uniform_below(rng, side)));
      }
      seen.insert(Point(std::move(coords)));
    }
    pts.assign(seen.begin(), seen.end());
  }
  return PointSet::from_points(dim, std::move(pts));
}

PointSet generate(const FamilySpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case FamilyKind::interval:
      return interval_family(spec.n);
    case FamilyKind::geometric:
      return geometric_family(spec.n);
    case FamilyKind::cn_product:
      return cn_family(spec.n);
    case FamilyKind::random_box:
      return random_box(static_cast<std::size_t>(spec.n), spec.dim, spec.lo, spec.hi, spec.seed);
    case FamilyKind::random_product: {
      const auto count = static_cast<std::size_t>(spec.n);
      PointSet first = random_box(count, spec.split, spec.lo, spec.hi, spec.seed);
      PointSet second =
          random_box(count, spec.dim - spec.split, spec.lo, spec.hi, derive_seed(spec.seed));
      return cartesian(first, second);
    }
    case FamilyKind::custom:
      return parse_pointset(read_text_file(spec.path));
  }
  throw DomainError("unknown family kind");
}

}  // namespace sumprod
