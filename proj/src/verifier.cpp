#include "sumprod/verifier.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "sumprod/detail/pairwise.hpp"
#include "sumprod/matrixset.hpp"

namespace sumprod {

using nlohmann::json;

namespace {

void require_exponent_domain(std::uint64_t size) {
  if (size < 2) throw DomainError("exponent needs |A| >= 2");
}

json optional_json(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

GrowthRow make_row(std::int64_t n, std::uint64_t size, const Growth& g) {
  GrowthRow row{n, size, g, std::nullopt, std::nullopt, std::nullopt};
  if (size >= 2) {
    row.exponent = exponent_of(g, size);
    row.exponent_total = exponent_total_of(g, size);
  }
  return row;
}

void check_range(std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi < lo) throw DomainError("sweep range must satisfy 1 <= lo <= hi");
}

}  // namespace

double exponent_of(const Growth& g, std::uint64_t size) {
  require_exponent_domain(size);
  return std::log(static_cast<double>(g.max())) / std::log(static_cast<double>(size)) - 1.0;
}

double exponent_total_of(const Growth& g, std::uint64_t size) {
  require_exponent_domain(size);
  return std::log(static_cast<double>(g.total())) / std::log(static_cast<double>(size)) - 1.0;
}

double exponent(const PointSet& a, const SetOpOptions& options) {
  require_exponent_domain(a.size());
  return exponent_of(growth(a, options), a.size());
}

bool cn_within_ceiling(std::int64_t n, const Growth& g) {
  const mpz_class cube = mpz_class(static_cast<long>(n)) * n * n;
  return 8 * mpz_class(static_cast<unsigned long>(g.sum_size)) <= 9 * cube &&
         mpz_class(static_cast<unsigned long>(g.prod_size)) <= 2 * cube;
}

GrowthReport sweep(const FamilySpec& spec, std::int64_t n_lo, std::int64_t n_hi,
                   const SweepOptions& options) {
  check_range(n_lo, n_hi);
  spec.validate();
  GrowthReport report;
  report.family = std::string(to_string(spec.kind));
  report.dim = spec.output_dim();
  report.theorem_line = (options.delta1 / Rational(report.dim)).to_double();
  if (report.dim == 2) report.d2_ceiling = 0.5;
  report.rows.resize(static_cast<std::size_t>(n_hi - n_lo + 1));
  const unsigned threads = detail::resolve_threads(options.threads);
  detail::run_parallel(report.rows.size(), threads, [&](std::size_t i) {
    FamilySpec s = spec;
    s.n = n_lo + static_cast<std::int64_t>(i);
    const PointSet a = generate(s);
    GrowthRow row = make_row(s.n, a.size(), growth(a));
    if (spec.kind == FamilyKind::cn_product) row.within_ceiling = cn_within_ceiling(s.n, row.growth);
    report.rows[i] = std::move(row);
  });
  return report;
}

GrowthReport sweep_dn(std::int64_t n_lo, std::int64_t n_hi, const SweepOptions& options) {
  check_range(n_lo, n_hi);
  GrowthReport report;
  report.family = "dn";
  report.dim = 2;
  report.matrices = true;
  report.theorem_line = (options.delta1 / Rational(2)).to_double();
  report.rows.resize(static_cast<std::size_t>(n_hi - n_lo + 1));
  const unsigned threads = detail::resolve_threads(options.threads);
  detail::run_parallel(report.rows.size(), threads, [&](std::size_t i) {
    const std::int64_t n = n_lo + static_cast<std::int64_t>(i);
    const MatrixSet a = dn_family(static_cast<std::size_t>(n));
    report.rows[i] = make_row(n, a.size(), mat_growth(a));
  });
  return report;
}

json GrowthReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"n", r.n},
                         {"size", r.size},
                         {"sum", r.growth.sum_size},
                         {"product", r.growth.prod_size},
                         {"max", r.growth.max()},
                         {"total", r.growth.total()},
                         {"exponent", optional_json(r.exponent)},
                         {"exponent_total", optional_json(r.exponent_total)},
                         {"within_ceiling", r.within_ceiling ? json(*r.within_ceiling) : json(nullptr)}});
  }
  json j = {{"family", family},
            {"dim", dim},
            {"matrices", matrices},
            {"exponent_definition", "log(max(|A+A|,|A.A|))/log|A| - 1 (instance surrogate)"},
            {"rows", rows_json},
            {"reference",
             {{"theorem_line", theorem_line}, {"d2_ceiling", optional_json(d2_ceiling)}}}};
  if (!provenance.is_null()) j["run_config"] = provenance;
  return j;
}

std::string GrowthReport::to_text() const {
  std::ostringstream os;
  os << "family " << family << " (d = " << dim << (matrices ? ", matrices" : "") << ")\n";
  os << "delta_hat = log(max(|A+A|,|A.A|))/log|A| - 1 (instance surrogate)\n";
  os << std::setw(6) << "N" << std::setw(10) << "|A|" << std::setw(12) << "|A+A|"
     << std::setw(12) << "|A.A|" << std::setw(12) << "delta_hat" << std::setw(12) << "via_total"
     << std::setw(9) << "ceiling" << '\n';
  for (const auto& r : rows) {
    os << std::setw(6) << r.n << std::setw(10) << r.size << std::setw(12) << r.growth.sum_size
       << std::setw(12) << r.growth.prod_size << std::setw(12)
       << (r.exponent ? fixed(*r.exponent, 6) : "-") << std::setw(12)
       << (r.exponent_total ? fixed(*r.exponent_total, 6) : "-") << std::setw(9)
       << (r.within_ceiling ? (*r.within_ceiling ? "ok" : "FAIL") : "-") << '\n';
  }
  os << "reference: theorem exponent delta1/d = " << fixed(theorem_line, 6);
  if (d2_ceiling) os << ", d = 2 ceiling 3/2 - 1 = " << fixed(*d2_ceiling, 6);
  os << '\n';
  return os.str();
}

std::string GrowthReport::to_csv() const {
  std::ostringstream os;
  os << "n,size,sum,product,max,total,exponent,exponent_total,within_ceiling\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.n << ',' << r.size << ',' << r.growth.sum_size << ',' << r.growth.prod_size << ','
       << r.growth.max() << ',' << r.growth.total() << ',';
    if (r.exponent) os << *r.exponent;
    os << ',';
    if (r.exponent_total) os << *r.exponent_total;
    os << ',';
    if (r.within_ceiling) os << (*r.within_ceiling ? "true" : "false");
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

BudgetExceeded::BudgetExceeded(const std::string& count, std::uint64_t budget)
    : DomainError("search needs " + count + " subsets, budget is " + std::to_string(budget)),
      count_(count) {}

std::vector<Point> integer_box(std::size_t dim, std::int64_t lo, std::int64_t hi) {
  if (dim == 0 || hi < lo) throw DomainError("empty integer box");
  const auto side = static_cast<std::uint64_t>(hi - lo + 1);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (count > kSearchBudget / side) throw DomainError("integer box too large");
    count *= side;
  }
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t index = 0; index < count; ++index) {
    std::vector<Rational> coords(dim);
    std::uint64_t rest = index;
    for (std::size_t i = dim; i-- > 0;) {
      coords[i] = Rational(lo + static_cast<std::int64_t>(rest % side));
      rest /= side;
    }
    out.emplace_back(std::move(coords));
  }
  return out;
}

json SearchResult::to_json() const {
  json sets = json::array();
  for (const auto& s : minimizers) {
    json pts = json::array();
    for (const auto& p : s) {
      json c = json::array();
      for (const auto& x : p.coords()) c.push_back(x.str());
      pts.push_back(c);
    }
    sets.push_back(pts);
  }
  return {{"value", value}, {"examined", examined}, {"minimizers", sets}};
}

SearchResult extremal_search(std::vector<Point> universe, std::size_t k, unsigned threads,
                             std::uint64_t budget) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.empty()) throw EmptyInput("search universe");
  const std::size_t dim = universe.front().dim();
  for (const auto& p : universe) {
    if (p.dim() != dim) throw DimensionMismatch(dim, p.dim());
  }
  const std::size_t n = universe.size();
  if (k < 2 || k > n) throw DomainError("search needs 2 <= k <= |universe|");
  mpz_class count;
  mpz_bin_uiui(count.get_mpz_t(), n, k);
  if (count > mpz_class(static_cast<unsigned long>(budget))) throw BudgetExceeded(count.get_str(), budget);

  // Partition by the first chosen index; each part enumerates its tails.
  const std::size_t parts = n - k + 1;
  struct Part {
    std::uint64_t value = UINT64_MAX;
    std::vector<PointSet> sets;
    std::uint64_t examined = 0;
  };
  std::vector<Part> results(parts);
  detail::run_parallel(parts, detail::resolve_threads(threads), [&](std::size_t first) {
    Part& part = results[first];
    std::vector<std::size_t> idx(k);
    idx[0] = first;
    for (std::size_t i = 1; i < k; ++i) idx[i] = first + i;
    std::vector<Point> chosen(k, universe[0]);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) chosen[i] = universe[idx[i]];
      const PointSet a = PointSet::from_sorted_unique(dim, chosen);
      const std::uint64_t total = growth(a).total();
      ++part.examined;
      if (total < part.value) {
        part.value = total;
        part.sets.clear();
      }
      if (total == part.value) part.sets.push_back(a);
      // Advance the tail idx[1..k-1] to the next combination.
      std::size_t i = k;
      while (i > 1 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 1) break;
      ++idx[i - 1];
      for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  });

  SearchResult out;
  out.value = UINT64_MAX;
  for (const auto& part : results) {
    out.examined += part.examined;
    out.value = std::min(out.value, part.value);
  }
  for (auto& part : results) {
    if (part.value != out.value) continue;
    for (auto& s : part.sets) out.minimizers.push_back(std::move(s));
  }
  // Parts are visited in first-index order and enumerate lexicographically.
  return out;
}

}  // namespace sumprod
