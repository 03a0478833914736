#include "sumprod/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "sumprod/errors.hpp"
#include "sumprod/generators.hpp"

namespace sumprod {
namespace {

Rational fraction_of(std::uint64_t size, int base, std::size_t dim) {
  return Rational(size) / Rational::pow(Rational(base), static_cast<int>(dim));
}

bool intersects(const PointSet& x, const PointSet& y) {
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

Rational Constants::default_delta1() { return Rational(1, 3) + Rational(5, 5277); }

Rational Constants::delta(std::size_t u) const {
  if (u == 0) throw DomainError("delta_u needs u >= 1");
  return delta1 / Rational(u);
}

void Constants::validate() const {
  if (delta1 <= Rational(0) || delta1 >= Rational(1)) {
    throw DomainError("delta1 must lie strictly between 0 and 1");
  }
  if (structure_base < 1 || pigeonhole_base < 1 || sign_class_base < 1) {
    throw DomainError("threshold bases must be positive");
  }
}

SignPattern sign_pattern(const Point& p) {
  SignPattern out;
  out.reserve(p.dim());
  for (const auto& c : p.coords()) {
    const int s = c.sign();
    out.push_back(s > 0 ? SignTag::positive : s < 0 ? SignTag::negative : SignTag::zero);
  }
  return out;
}

char sign_symbol(SignTag tag) {
  switch (tag) {
    case SignTag::zero:
      return '0';
    case SignTag::negative:
      return '-';
    case SignTag::positive:
      return '+';
  }
  return '?';
}

SignTag parse_sign_symbol(char c) {
  switch (c) {
    case '0':
      return SignTag::zero;
    case '-':
      return SignTag::negative;
    case '+':
      return SignTag::positive;
    default:
      throw ParseError(std::string("invalid sign symbol '") + c + "'");
  }
}

SignRefinement sign_refine(const PointSet& a) {
  if (a.empty()) throw EmptyInput("sign_refine");
  std::map<SignPattern, std::vector<Point>> classes;
  for (const auto& p : a) classes[sign_pattern(p)].push_back(p);
  auto best = classes.begin();
  for (auto it = classes.begin(); it != classes.end(); ++it) {
    if (it->second.size() > best->second.size()) best = it;
  }
  return {PointSet::from_sorted_unique(a.dim(), std::move(best->second)), best->first};
}

// ---------------------------------------------------------------------------

Mask::Mask(std::vector<bool> fixed) : fixed_(std::move(fixed)) {}

Mask Mask::from_fixed_indices(std::size_t dim, const std::vector<std::size_t>& fixed) {
  std::vector<bool> bits(dim, false);
  for (std::size_t i : fixed) {
    if (i >= dim) throw DomainError("fixed coordinate index out of range");
    bits[i] = true;
  }
  return Mask(std::move(bits));
}

std::vector<Mask> Mask::proper_masks(std::size_t dim) {
  if (dim < 2 || dim > 30) throw DomainError("proper masks need 2 <= d <= 30");
  std::vector<Mask> out;
  const std::uint32_t full = (std::uint32_t{1} << dim) - 1;
  for (std::uint32_t bits = 1; bits < full; ++bits) {
    std::vector<bool> fixed(dim);
    for (std::size_t i = 0; i < dim; ++i) fixed[i] = ((bits >> i) & 1U) != 0;
    out.emplace_back(std::move(fixed));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Mask::free_count() const noexcept {
  return static_cast<std::size_t>(std::count(fixed_.begin(), fixed_.end(), false));
}

std::vector<std::size_t> Mask::fixed_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fixed_.size(); ++i) {
    if (fixed_[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Mask::free_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fixed_.size(); ++i) {
    if (!fixed_[i]) out.push_back(i);
  }
  return out;
}

std::strong_ordering operator<=>(const Mask& a, const Mask& b) {
  if (a.dim() != b.dim()) return a.dim() <=> b.dim();
  const auto x = a.fixed_indices();
  const auto y = b.fixed_indices();
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

bool AxisAlignedSubspace::contains(const Point& p) const {
  if (p.dim() != mask.dim()) return false;
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (mask.is_fixed(i) && p[i] != fixed_values[k++]) return false;
  }
  return true;
}

std::uint64_t RichFamily::mass() const {
  std::uint64_t total = 0;
  for (const auto& f : members) total += f.points.size();
  return total;
}

std::vector<RichFamily> enumerate_rich(const PointSet& a, std::size_t m) {
  if (a.dim() < 2) throw DomainError("rich subspaces need d >= 2");
  if (m == 0) throw DomainError("richness threshold must be at least 1");
  std::vector<RichFamily> out;
  for (auto& mask : Mask::proper_masks(a.dim())) {
    const auto fixed = mask.fixed_indices();
    std::map<Point, std::vector<Point>> groups;
    for (const auto& p : a) groups[p.select(fixed)].push_back(p);
    RichFamily family{mask, {}, m};
    for (auto& [key, pts] : groups) {
      if (pts.size() < m) continue;
      std::vector<Rational> values(key.coords().begin(), key.coords().end());
      family.members.push_back(
          Fiber{AxisAlignedSubspace{mask, std::move(values)},
                PointSet::from_sorted_unique(a.dim(), std::move(pts))});
    }
    out.push_back(std::move(family));
  }
  return out;
}

std::uint64_t rich_mass(const std::vector<RichFamily>& families) {
  std::uint64_t total = 0;
  for (const auto& f : families) total += f.mass();
  return total;
}

bool structure_case(const PointSet& a, std::size_t m, const Constants& constants) {
  const std::uint64_t mass = rich_mass(enumerate_rich(a, m));
  return Rational(mass) >= fraction_of(a.size(), constants.structure_base, a.dim());
}

DirectionSelection select_direction(const std::vector<RichFamily>& families) {
  DirectionSelection out{RichFamily{Mask({true, false}), {}, 1}, {}};
  std::size_t best = families.size();
  std::uint64_t best_mass = 0;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const std::uint64_t mass = families[i].mass();
    out.masses.push_back(mass);
    if (mass > best_mass) {
      best = i;
      best_mass = mass;
    }
  }
  if (best == families.size()) throw DomainError("no rich fibers to select from");
  out.family = families[best];
  return out;
}

DyadicSelection dyadic_select(const RichFamily& family) {
  if (family.members.empty()) throw DomainError("dyadic selection on an empty family");
  std::map<int, std::uint64_t> buckets;
  auto level_of = [](std::size_t size) { return static_cast<int>(std::bit_width(size)) - 1; };
  for (const auto& f : family.members) buckets[level_of(f.points.size())] += f.points.size();
  auto best = buckets.begin();
  for (auto it = buckets.begin(); it != buckets.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  DyadicSelection out{RichFamily{family.mask, {}, family.threshold}, best->first, best->second};
  for (const auto& f : family.members) {
    if (level_of(f.points.size()) == best->first) out.family.members.push_back(f);
  }
  return out;
}

int ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

std::uint64_t dyadic_divisor(std::uint64_t n) {
  return 2 * (static_cast<std::uint64_t>(ceil_log2(n)) + 1);
}

PointSet project_fiber(const PointSet& fiber, const Mask& mask) {
  if (fiber.dim() != mask.dim()) throw DimensionMismatch(fiber.dim(), mask.dim());
  if (fiber.empty()) return PointSet(std::max<std::size_t>(1, mask.free_count()));
  const auto fixed = mask.fixed_indices();
  const Point reference = fiber[0].select(fixed);
  for (const auto& p : fiber) {
    if (p.select(fixed) != reference) {
      throw DomainError("fiber points disagree on a fixed coordinate");
    }
  }
  return project(fiber, mask.free_indices());
}

PointSet base_points(const RichFamily& family) {
  std::vector<Point> pts;
  pts.reserve(family.members.size());
  for (const auto& f : family.members) pts.push_back(Point(f.subspace.fixed_values));
  const std::size_t dim = family.mask.dim() - family.mask.free_count();
  return PointSet::from_points(dim, std::move(pts));
}

std::vector<std::array<std::size_t, 4>> cross_check_quadruples(std::size_t m) {
  std::vector<std::array<std::size_t, 4>> out;
  if (m == 0) return out;
  if (m <= 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t l = 0; l < m; ++l) out.push_back({i, j, k, l});
    return out;
  }
  std::mt19937_64 rng(derive_seed(m));
  for (int s = 0; s < 16; ++s) {
    std::array<std::size_t, 4> q{};
    for (auto& x : q) x = static_cast<std::size_t>(uniform_below(rng, m));
    out.push_back(q);
  }
  return out;
}

DisjointnessReport verify_disjointness(const RichFamily& family, DisjointnessMode mode,
                                       const SetOpOptions& options) {
  auto combine = [&](const PointSet& x, const PointSet& y) {
    return mode == DisjointnessMode::sums ? sumset(x, y, options) : productset(x, y, options);
  };
  auto combine_point = [&](const Point& x, const Point& y) {
    return mode == DisjointnessMode::sums ? x + y : x * y;
  };

  DisjointnessReport report;
  std::vector<Point> all;
  for (const auto& f : family.members) {
    PointSet image = combine(f.points, f.points);
    report.fiber_image_sizes.push_back(image.size());
    report.total_size += image.size();
    all.insert(all.end(), image.begin(), image.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  report.union_size = all.size();

  report.quadruples = cross_check_quadruples(family.members.size());
  for (const auto& [i, j, k, l] : report.quadruples) {
    const auto& mi = family.members[i];
    const auto& mj = family.members[j];
    const auto& mk = family.members[k];
    const auto& ml = family.members[l];
    const Point left = combine_point(Point(mi.subspace.fixed_values), Point(mj.subspace.fixed_values));
    const Point right = combine_point(Point(mk.subspace.fixed_values), Point(ml.subspace.fixed_values));
    if (left == right) continue;
    ++report.cross_applicable;
    if (!intersects(combine(mi.points, mj.points), combine(mk.points, ml.points))) {
      ++report.cross_disjoint;
    }
  }
  report.disjoint = report.union_size == report.total_size &&
                    report.cross_disjoint == report.cross_applicable;
  return report;
}

PropositionBounds proposition_bounds(const DisjointnessReport& sums,
                                     const DisjointnessReport& products, int level,
                                     const PointSet& base, const SetOpOptions& options) {
  if (sums.fiber_image_sizes.size() != products.fiber_image_sizes.size()) {
    throw DomainError("sum and product reports cover different fibers");
  }
  PropositionBounds out;
  for (std::size_t i = 0; i < sums.fiber_image_sizes.size(); ++i) {
    out.fiber_sum += sums.fiber_image_sizes[i] + products.fiber_image_sizes[i];
  }
  out.base_growth = growth(base, options);
  out.base_term = (std::uint64_t{1} << level) * out.base_growth.total();
  return out;
}

UnstructuredExtraction unstructured_extract(const PointSet& a, std::size_t m,
                                            std::size_t coordinate) {
  if (coordinate >= a.dim()) throw DomainError("line coordinate out of range");
  const auto families = enumerate_rich(a, m);
  std::set<Point> covered;
  for (const auto& family : families) {
    for (const auto& f : family.members) covered.insert(f.points.begin(), f.points.end());
  }
  std::vector<Point> rest;
  for (const auto& p : a) {
    if (!covered.contains(p)) rest.push_back(p);
  }
  if (rest.empty()) throw DomainError("every point lies on a rich subspace");
  UnstructuredExtraction out{PointSet::from_sorted_unique(a.dim(), std::move(rest)), PointSet(1),
                             coordinate, covered.size()};
  const std::size_t coords[] = {coordinate};
  out.line = project(out.remaining, coords);
  return out;
}

Rational combined_exponent(const Rational& delta_r, const Rational& delta_dr) {
  return Rational(1) / (Rational(1) / delta_r + Rational(1) / delta_dr);
}

double optimize_objective(double x, double delta_r, double delta_dr, double n) {
  return std::pow(x, delta_r) + std::pow(n, delta_dr) * std::pow(x, -delta_dr);
}

OptimizedBound optimize_bound(const Rational& delta_r, const Rational& delta_dr,
                              std::uint64_t n) {
  const Rational zero(0);
  const Rational one(1);
  if (delta_r <= zero || delta_r >= one || delta_dr <= zero || delta_dr >= one) {
    throw DomainError("exponents must lie strictly between 0 and 1");
  }
  if (n < 2) throw DomainError("optimisation needs n >= 2");
  const double a = delta_r.to_double();
  const double b = delta_dr.to_double();
  const double nn = static_cast<double>(n);
  // f'(x) = 0  <=>  x^(a+b) = (b/a) n^b; f decreases before and increases after.
  double x = std::pow((b / a) * std::pow(nn, b), 1.0 / (a + b));
  x = std::clamp(x, 1.0, 2.0 * nn);
  OptimizedBound out{x, optimize_objective(x, a, b, nn),
                     std::pow(nn, combined_exponent(delta_r, delta_dr).to_double())};
  if (out.min_value < out.target - 1e-9 * out.target) {
    throw DomainError("optimisation lower bound violated");
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::base:
      return "base";
    case Branch::structure:
      return "structure";
    case Branch::unstructured:
      return "unstructured";
  }
  return "unknown";
}

namespace {

std::size_t node_depth(const CertificateNode& node) {
  std::size_t depth = 0;
  for (const auto& c : node.children) depth = std::max(depth, 1 + node_depth(c));
  return depth;
}

class Decomposer {
 public:
  Decomposer(const DecomposeOptions& options, std::size_t m) : opts_(options), m_(m) {}

  CertificateNode run(const PointSet& a, std::string role) {
    CertificateNode node;
    node.role = std::move(role);
    node.input = a;
    node.growth = growth(a, opts_.setops);
    const std::size_t d = a.dim();
    const Rational total(node.growth.total());

    if (d == 1) {
      node.branch = Branch::base;
      node.lower_bound = node.growth.total();
      require(node, "certified_bound", total, Relation::ge, Rational(node.lower_bound));
      return node;
    }

    SignRefinement refinement = sign_refine(a);
    const PointSet& refined = refinement.refined;
    node.pattern = refinement.pattern;
    node.refined_size = refined.size();
    require(node, "sign_class_bound", Rational(refined.size()), Relation::ge,
            fraction_of(a.size(), opts_.constants.sign_class_base, d));
    node.refined_growth =
        refined.size() == a.size() ? node.growth : growth(refined, opts_.setops);
    require(node, "sign_class_monotone", total, Relation::ge,
            Rational(node.refined_growth.total()));

    try {
      const auto families = enumerate_rich(refined, m_);
      node.rich_mass = rich_mass(families);
      const Rational structure_threshold =
          fraction_of(refined.size(), opts_.constants.structure_base, d);
      if (Rational(node.rich_mass) >= structure_threshold) {
        structure_step(node, refined, families);
      } else {
        unstructured_step(node, refined);
      }
    } catch (const Error& e) {
      fail(node, std::string(to_string(node.branch)) + ": " + e.what());
      node.lower_bound = 0;
    }

    require(node, "certified_bound", total, Relation::ge, Rational(node.lower_bound));
    for (const auto& child : node.children) {
      if (!child.valid) fail(node, "child " + child.role);
    }
    return node;
  }

 private:
  void require(CertificateNode& node, std::string id, Rational lhs, Relation rel, Rational rhs) {
    const bool ok = rel == Relation::ge ? lhs >= rhs : lhs == rhs;
    if (!ok) fail(node, id);
    node.inequalities.push_back({std::move(id), std::move(lhs), rel, std::move(rhs), ok});
  }

  static void fail(CertificateNode& node, const std::string& step) {
    node.valid = false;
    if (node.failure.empty()) node.failure = step;
  }

  void structure_step(CertificateNode& node, const PointSet& refined,
                      const std::vector<RichFamily>& families) {
    const std::size_t d = refined.dim();
    node.branch = Branch::structure;
    StructureRecord rec;
    require(node, "structure_mass", Rational(node.rich_mass), Relation::ge,
            fraction_of(refined.size(), opts_.constants.structure_base, d));

    DirectionSelection direction = select_direction(families);
    rec.mask = direction.family.mask;
    rec.mask_masses = direction.masses;
    rec.selected_mass = direction.family.mass();
    require(node, "direction_mass", Rational(rec.selected_mass), Relation::ge,
            fraction_of(refined.size(), opts_.constants.pigeonhole_base, d));

    DyadicSelection dyadic = dyadic_select(direction.family);
    const RichFamily& f3 = dyadic.family;
    rec.level = dyadic.level;
    rec.bucket_mass = dyadic.bucket_mass;
    const std::uint64_t scale = std::uint64_t{1} << dyadic.level;
    const Rational dyadic_floor =
        Rational(rec.selected_mass) / Rational(dyadic_divisor(refined.size()));
    require(node, "dyadic_bucket_mass", Rational(rec.bucket_mass), Relation::ge, dyadic_floor);
    require(node, "dyadic_count", Rational(f3.members.size() * scale), Relation::ge,
            dyadic_floor);

    const auto sums = verify_disjointness(f3, DisjointnessMode::sums, opts_.setops);
    const auto products = verify_disjointness(f3, DisjointnessMode::products, opts_.setops);
    require(node, "fiber_sums_disjoint", Rational(sums.union_size), Relation::eq,
            Rational(sums.total_size));
    require(node, "fiber_products_disjoint", Rational(products.union_size), Relation::eq,
            Rational(products.total_size));
    require(node, "cross_sums_disjoint", Rational(sums.cross_disjoint), Relation::eq,
            Rational(sums.cross_applicable));
    require(node, "cross_products_disjoint", Rational(products.cross_disjoint), Relation::eq,
            Rational(products.cross_applicable));
    rec.quadruples = sums.quadruples;

    for (std::size_t i = 0; i < f3.members.size(); ++i) {
      rec.fibers.push_back({f3.members[i].subspace.fixed_values, f3.members[i].points.size(),
                            Growth{sums.fiber_image_sizes[i], products.fiber_image_sizes[i]}});
    }

    rec.base = base_points(f3);
    require(node, "base_points_count", Rational(rec.base.size()), Relation::eq,
            Rational(f3.members.size()));
    const PropositionBounds bounds = proposition_bounds(sums, products, rec.level, rec.base,
                                                        opts_.setops);
    rec.base_growth = bounds.base_growth;
    rec.bound_a = bounds.fiber_sum;
    rec.bound_b = bounds.base_term;
    const Rational refined_total(node.refined_growth.total());
    require(node, "bound_a", refined_total, Relation::ge, Rational(rec.bound_a));
    require(node, "bound_b", refined_total, Relation::ge, Rational(rec.bound_b));

    for (std::size_t i = 1; i < rec.fibers.size(); ++i) {
      if (rec.fibers[i].size > rec.fibers[rec.representative].size) rec.representative = i;
    }
    for (std::size_t i = 0; i < f3.members.size(); ++i) {
      if (!opts_.exhaustive && i != rec.representative) continue;
      const std::string tag = "[" + std::to_string(i) + "]";
      PointSet projected = project_fiber(f3.members[i].points, rec.mask);
      require(node, "projection_preserves_size" + tag, Rational(projected.size()), Relation::eq,
              Rational(f3.members[i].points.size()));
      CertificateNode child = run(projected, "fiber" + tag);
      require(node, "projection_growth" + tag, Rational(child.growth.total()), Relation::eq,
              Rational(rec.fibers[i].growth.total()));
      require(node, "fiber_child_bound" + tag, Rational(rec.fibers[i].growth.total()),
              Relation::ge, Rational(child.lower_bound));
      node.children.push_back(std::move(child));
    }
    CertificateNode base_child = run(rec.base, "base");
    require(node, "base_child_bound", Rational(rec.bound_b), Relation::ge,
            Rational(scale) * Rational(base_child.lower_bound));
    node.children.push_back(std::move(base_child));

    const std::size_t r = rec.mask.free_count();
    rec.delta_r = opts_.constants.delta(r);
    rec.delta_complement = opts_.constants.delta(d - r);
    const double n = static_cast<double>(refined.size());
    rec.proposition_rhs =
        n * (std::pow(2.0, rec.level * rec.delta_r.to_double()) +
             std::pow(static_cast<double>(f3.members.size()), rec.delta_complement.to_double()));
    if (refined.size() >= 2) {
      const OptimizedBound opt = optimize_bound(rec.delta_r, rec.delta_complement, refined.size());
      rec.optimizer_x = opt.x_star;
      rec.optimizer_min = opt.min_value;
      rec.optimizer_target = opt.target;
    }
    node.lower_bound = std::max(rec.bound_a, rec.bound_b);
    node.structure = std::move(rec);
  }

  void unstructured_step(CertificateNode& node, const PointSet& refined) {
    node.branch = Branch::unstructured;
    const std::size_t last = opts_.all_coordinates ? refined.dim() : 1;
    std::optional<UnstructuredRecord> best;
    std::uint64_t best_remaining = 0;
    for (std::size_t c = 0; c < last; ++c) {
      UnstructuredExtraction ex = unstructured_extract(refined, m_, c);
      const Growth g = growth(ex.line, opts_.setops);
      if (!best || g.total() > best->line_growth.total()) {
        best = UnstructuredRecord{c, ex.covered, ex.remaining.size(), std::move(ex.line), g};
        best_remaining = ex.remaining.size();
      }
    }
    UnstructuredRecord& rec = *best;
    require(node, "unstructured_remaining", Rational(best_remaining), Relation::ge,
            Rational(refined.size()) - Rational(node.rich_mass));
    require(node, "line_size", Rational(rec.line.size()), Relation::ge,
            Rational(best_remaining) / Rational(m_));
    CertificateNode child = run(rec.line, "line");
    require(node, "line_bound", Rational(node.refined_growth.total()), Relation::ge,
            Rational(child.lower_bound));
    node.lower_bound = child.lower_bound;
    node.children.push_back(std::move(child));
    node.unstructured = std::move(rec);
  }

  const DecomposeOptions& opts_;
  std::size_t m_;
};

}  // namespace

std::size_t DecompositionCertificate::depth() const { return node_depth(root); }

DecompositionCertificate decompose(const PointSet& a, const DecomposeOptions& options) {
  if (a.empty()) throw EmptyInput("decompose");
  options.constants.validate();
  const std::size_t m = options.resolved_m(a.dim());
  if (m < 2) throw DomainError("decompose needs M >= 2");

  DecompositionCertificate cert;
  cert.constants = options.constants;
  cert.m = m;
  cert.exhaustive = options.exhaustive;
  cert.all_coordinates = options.all_coordinates;
  cert.root = Decomposer(options, m).run(a, "root");

  const std::size_t depth = cert.depth();
  const bool ok = depth + 1 <= a.dim();
  cert.root.inequalities.push_back({"recursion_depth", Rational(a.dim() - 1), Relation::ge,
                                    Rational(depth), ok});
  if (!ok) {
    cert.root.valid = false;
    if (cert.root.failure.empty()) cert.root.failure = "recursion_depth";
  }
  return cert;
}

}  // namespace sumprod
