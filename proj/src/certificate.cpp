#include "sumprod/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <utility>

#include "sumprod/errors.hpp"

namespace sumprod {

using nlohmann::json;

namespace {

json rationals_json(std::span<const Rational> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

json points_json(const PointSet& set) {
  json out = json::array();
  for (const auto& p : set) out.push_back(rationals_json(p.coords()));
  return out;
}

json growth_json(const Growth& g) {
  return {{"sum", g.sum_size}, {"product", g.prod_size}, {"total", g.total()}};
}

std::string relation_symbol(Relation r) { return r == Relation::ge ? ">=" : "=="; }

std::string pattern_symbols(const SignPattern& pattern) {
  std::string out;
  for (SignTag t : pattern) out.push_back(sign_symbol(t));
  return out;
}

json node_json(const CertificateNode& node) {
  json j;
  j["role"] = node.role;
  j["dim"] = node.input.dim();
  j["size"] = node.input.size();
  j["input"] = points_json(node.input);
  j["growth"] = growth_json(node.growth);
  j["branch"] = std::string(to_string(node.branch));
  if (!node.pattern.empty()) {
    j["sign_refinement"] = {{"pattern", pattern_symbols(node.pattern)},
                            {"size", node.refined_size},
                            {"growth", growth_json(node.refined_growth)}};
    j["rich_mass"] = node.rich_mass;
  }
  if (node.structure) {
    const StructureRecord& s = *node.structure;
    json fibers = json::array();
    for (const auto& f : s.fibers) {
      fibers.push_back({{"fixed", rationals_json(f.fixed)},
                        {"size", f.size},
                        {"growth", growth_json(f.growth)}});
    }
    json quads = json::array();
    for (const auto& q : s.quadruples) quads.push_back(q);
    j["structure"] = {
        {"mask", {{"fixed", s.mask.fixed_indices()}, {"free", s.mask.free_indices()}}},
        {"mask_masses", s.mask_masses},
        {"selected_mass", s.selected_mass},
        {"level", s.level},
        {"bucket_mass", s.bucket_mass},
        {"fibers", fibers},
        {"representative", s.representative},
        {"base", points_json(s.base)},
        {"base_growth", growth_json(s.base_growth)},
        {"quadruples", quads},
        {"bound_a", s.bound_a},
        {"bound_b", s.bound_b},
        {"delta_r", s.delta_r.str()},
        {"delta_complement", s.delta_complement.str()},
        {"reference",
         {{"proposition_rhs", s.proposition_rhs},
          {"optimizer_x", s.optimizer_x},
          {"optimizer_min", s.optimizer_min},
          {"optimizer_target", s.optimizer_target}}}};
  }
  if (node.unstructured) {
    const UnstructuredRecord& u = *node.unstructured;
    j["unstructured"] = {{"coordinate", u.coordinate},
                         {"covered", u.covered},
                         {"remaining_size", u.remaining_size},
                         {"line", points_json(u.line)},
                         {"line_growth", growth_json(u.line_growth)}};
  }
  json ineqs = json::array();
  for (const auto& q : node.inequalities) {
    ineqs.push_back({{"id", q.id},
                     {"lhs", q.lhs.str()},
                     {"relation", relation_symbol(q.relation)},
                     {"rhs", q.rhs.str()},
                     {"verified", q.verified}});
  }
  j["inequalities"] = ineqs;
  json children = json::array();
  for (const auto& c : node.children) children.push_back(node_json(c));
  j["children"] = children;
  j["lower_bound"] = node.lower_bound;
  const std::size_t n = node.input.size();
  if (n >= 2 && node.lower_bound > 0) {
    j["achieved_exponent"] =
        std::log(static_cast<double>(node.lower_bound)) / std::log(static_cast<double>(n));
  } else {
    j["achieved_exponent"] = nullptr;
  }
  j["valid"] = node.valid;
  j["failure"] = node.failure;
  return j;
}

// ---------------------------------------------------------------------------
// Re-checker. Works on plain coordinate vectors with std::set so that it
// shares nothing with the sorted-run set engine it audits.

using Vec = std::vector<Rational>;
using VecSet = std::set<Vec>;

struct Expected {
  std::string id;
  Rational lhs;
  Relation relation;
  Rational rhs;
  bool holds() const { return relation == Relation::ge ? lhs >= rhs : lhs == rhs; }
};

struct NodeResult {
  bool valid = false;
  std::uint64_t lower_bound = 0;
  std::uint64_t growth = 0;
};

Vec combine(const Vec& x, const Vec& y, bool sum) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sum ? x[i] + y[i] : x[i] * y[i];
  return out;
}

VecSet image(const std::vector<Vec>& a, const std::vector<Vec>& b, bool sum) {
  VecSet out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(combine(x, y, sum));
  return out;
}

std::pair<std::uint64_t, std::uint64_t> naive_growth(const std::vector<Vec>& a) {
  VecSet sums;
  VecSet prods;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) {
      sums.insert(combine(a[i], a[j], true));
      prods.insert(combine(a[i], a[j], false));
    }
  }
  return {sums.size(), prods.size()};
}

Vec pick(const Vec& p, const std::vector<std::size_t>& idx) {
  Vec out;
  for (std::size_t i : idx) out.push_back(p[i]);
  return out;
}

Rational power(int base, std::size_t exp) {
  Rational out(1);
  for (std::size_t i = 0; i < exp; ++i) out *= Rational(base);
  return out;
}

int floor_log2(std::uint64_t n) {
  int k = 0;
  while ((n >> 1) > 0) {
    n >>= 1;
    ++k;
  }
  return k;
}

std::uint64_t smallest_covering_power(std::uint64_t n) {
  std::uint64_t k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

int sign_rank(const Rational& x) { return x.is_zero() ? 0 : x.sign() < 0 ? 1 : 2; }

std::size_t tree_depth(const json& node) {
  std::size_t depth = 0;
  for (const auto& c : node.at("children")) depth = std::max(depth, 1 + tree_depth(c));
  return depth;
}

/// Proper masks as sorted lists of fixed indices.
std::vector<std::vector<std::size_t>> masks_for(std::size_t dim) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t bits = 1; bits + 1 < (std::uint64_t{1} << dim); ++bits) {
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((bits >> i) & 1U) fixed.push_back(i);
    }
    out.push_back(fixed);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& fixed, std::size_t dim) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!std::binary_search(fixed.begin(), fixed.end(), i)) out.push_back(i);
  }
  return out;
}

using Groups = std::map<Vec, std::vector<Vec>>;

Groups group_by(const VecSet& a, const std::vector<std::size_t>& fixed) {
  Groups groups;
  for (const auto& p : a) groups[pick(p, fixed)].push_back(p);
  return groups;
}

class Checker {
 public:
  Checker(Constants constants, std::size_t m, bool exhaustive, bool all_coordinates)
      : c_(std::move(constants)), m_(m), exhaustive_(exhaustive), all_coordinates_(all_coordinates) {}

  std::vector<std::string> problems;

  NodeResult check(const json& j, const std::string& path, const VecSet* expected_input,
                   bool is_root) {
    NodeResult result;
    std::vector<Expected> exp;
    try {
      result = check_node(j, path, expected_input, is_root, exp);
    } catch (const std::exception& e) {
      problem(path, std::string("malformed or inconsistent node: ") + e.what());
      result.valid = false;
    }
    return result;
  }

 private:
  void problem(const std::string& path, const std::string& what) {
    problems.push_back(path + ": " + what);
  }

  template <class T>
  void same(const std::string& path, const std::string& what, const json& recorded,
            const T& expected) {
    if (recorded != json(expected)) {
      problem(path, what + " recorded " + recorded.dump() + ", recomputed " + json(expected).dump());
    }
  }

  void same_growth(const std::string& path, const std::string& what, const json& recorded,
                   std::uint64_t sum, std::uint64_t prod) {
    same(path, what + ".sum", recorded.at("sum"), sum);
    same(path, what + ".product", recorded.at("product"), prod);
    same(path, what + ".total", recorded.at("total"), sum + prod);
  }

  static std::vector<Vec> parse_points(const json& arr) {
    std::vector<Vec> out;
    for (const auto& p : arr) {
      Vec v;
      for (const auto& c : p) v.push_back(Rational::parse(c.get<std::string>()));
      if (v.empty() || (!out.empty() && v.size() != out.front().size())) {
        throw ParseError("points of inconsistent dimension");
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  static json points_of(const VecSet& s) {
    json out = json::array();
    for (const auto& p : s) out.push_back(rationals_json(p));
    return out;
  }

  NodeResult check_node(const json& j, const std::string& path, const VecSet* expected_input,
                        bool is_root, std::vector<Expected>& exp) {
    const std::vector<Vec> input = parse_points(j.at("input"));
    if (input.empty()) throw ParseError("empty input");
    const VecSet a(input.begin(), input.end());
    if (a.size() != input.size()) problem(path, "input has duplicate points");
    if (expected_input != nullptr && *expected_input != a) {
      problem(path, "input differs from the set derived by the parent");
    }
    const std::size_t d = input.front().size();
    same(path, "dim", j.at("dim"), d);
    same(path, "size", j.at("size"), a.size());
    const std::vector<Vec> pts(a.begin(), a.end());
    const auto [s, p] = naive_growth(pts);
    same_growth(path, "growth", j.at("growth"), s, p);
    const Rational g(s + p);

    const json& children = j.at("children");
    const std::string branch = j.at("branch").get<std::string>();
    std::uint64_t lower = 0;
    bool children_valid = true;

    auto child_result = [&](std::size_t index, const std::string& role, const VecSet& in) {
      if (index >= children.size()) {
        problem(path, "missing child " + role);
        return NodeResult{};
      }
      const json& c = children[index];
      if (c.at("role") != role) problem(path, "child " + std::to_string(index) + " should be " + role);
      NodeResult r = check(c, path + "/" + role, &in, false);
      children_valid = children_valid && r.valid;
      return r;
    };

    if (d == 1) {
      if (branch != "base") problem(path, "1-D node must take the base branch");
      if (!children.empty()) problem(path, "base node has children");
      lower = s + p;
    } else {
      // Sign classes.
      std::map<std::vector<int>, VecSet> classes;
      for (const auto& q : a) {
        std::vector<int> key;
        for (const auto& x : q) key.push_back(sign_rank(x));
        classes[key].insert(q);
      }
      auto best_class = classes.begin();
      for (auto it = classes.begin(); it != classes.end(); ++it) {
        if (it->second.size() > best_class->second.size()) best_class = it;
      }
      const VecSet& a1 = best_class->second;
      std::string symbols;
      for (int r : best_class->first) symbols.push_back("0-+"[r]);
      const json& sr = j.at("sign_refinement");
      same(path, "sign_refinement.pattern", sr.at("pattern"), symbols);
      same(path, "sign_refinement.size", sr.at("size"), a1.size());
      const auto [s1, p1] = naive_growth(std::vector<Vec>(a1.begin(), a1.end()));
      same_growth(path, "sign_refinement.growth", sr.at("growth"), s1, p1);
      const Rational n1(a1.size());
      const Rational g1(s1 + p1);
      exp.push_back({"sign_class_bound", n1, Relation::ge,
                     Rational(a.size()) / power(c_.sign_class_base, d)});
      exp.push_back({"sign_class_monotone", g, Relation::ge, g1});

      // Rich fibers per mask.
      const auto masks = masks_for(d);
      std::vector<Groups> rich(masks.size());
      std::vector<std::uint64_t> masses(masks.size(), 0);
      std::uint64_t mass = 0;
      for (std::size_t k = 0; k < masks.size(); ++k) {
        for (auto& [key, members] : group_by(a1, masks[k])) {
          if (members.size() < m_) continue;
          masses[k] += members.size();
          rich[k].emplace(key, std::move(members));
        }
        mass += masses[k];
      }
      same(path, "rich_mass", j.at("rich_mass"), mass);
      const bool structured = Rational(mass) >= n1 / power(c_.structure_base, d);

      if (structured) {
        if (branch != "structure") problem(path, "rich mass forces the structure branch");
        const json& st = j.at("structure");
        exp.push_back({"structure_mass", Rational(mass), Relation::ge,
                       n1 / power(c_.structure_base, d)});
        same(path, "mask_masses", st.at("mask_masses"), masses);
        std::size_t best = 0;
        for (std::size_t k = 1; k < masks.size(); ++k) {
          if (masses[k] > masses[best]) best = k;
        }
        if (masses[best] == 0) throw DomainError("structure branch without rich fibers");
        const auto& fixed = masks[best];
        const auto free = complement(fixed, d);
        same(path, "mask.fixed", st.at("mask").at("fixed"), fixed);
        same(path, "mask.free", st.at("mask").at("free"), free);
        same(path, "selected_mass", st.at("selected_mass"), masses[best]);
        exp.push_back({"direction_mass", Rational(masses[best]), Relation::ge,
                       n1 / power(c_.pigeonhole_base, d)});

        std::map<int, std::uint64_t> buckets;
        for (const auto& [key, members] : rich[best]) buckets[floor_log2(members.size())] += members.size();
        auto top = buckets.begin();
        for (auto it = buckets.begin(); it != buckets.end(); ++it) {
          if (it->second > top->second) top = it;
        }
        const int level = top->first;
        std::vector<std::pair<Vec, std::vector<Vec>>> kept;
        for (const auto& [key, members] : rich[best]) {
          if (floor_log2(members.size()) == level) kept.emplace_back(key, members);
        }
        same(path, "level", st.at("level"), level);
        same(path, "bucket_mass", st.at("bucket_mass"), top->second);
        const Rational scale = power(2, static_cast<std::size_t>(level));
        const Rational floor_mass =
            Rational(masses[best]) / Rational(2 * (smallest_covering_power(a1.size()) + 1));
        exp.push_back({"dyadic_bucket_mass", Rational(top->second), Relation::ge, floor_mass});
        exp.push_back({"dyadic_count", Rational(kept.size()) * scale, Relation::ge, floor_mass});

        // Fiber images and disjointness.
        const json& fibers = st.at("fibers");
        if (fibers.size() != kept.size()) problem(path, "fiber count differs");
        std::uint64_t union_sum = 0;
        std::uint64_t union_prod = 0;
        std::uint64_t total_sum = 0;
        std::uint64_t total_prod = 0;
        std::uint64_t bound_a = 0;
        std::vector<std::uint64_t> fiber_totals;
        {
          VecSet all_sums;
          VecSet all_prods;
          for (std::size_t i = 0; i < kept.size(); ++i) {
            const auto& members = kept[i].second;
            const VecSet si = image(members, members, true);
            const VecSet pi = image(members, members, false);
            total_sum += si.size();
            total_prod += pi.size();
            all_sums.insert(si.begin(), si.end());
            all_prods.insert(pi.begin(), pi.end());
            fiber_totals.push_back(si.size() + pi.size());
            bound_a += si.size() + pi.size();
            if (i < fibers.size()) {
              const std::string fp = "fibers[" + std::to_string(i) + "]";
              same(path, fp + ".fixed", fibers[i].at("fixed"), rationals_json(kept[i].first));
              same(path, fp + ".size", fibers[i].at("size"), members.size());
              same_growth(path, fp + ".growth", fibers[i].at("growth"), si.size(), pi.size());
            }
          }
          union_sum = all_sums.size();
          union_prod = all_prods.size();
        }
        exp.push_back({"fiber_sums_disjoint", Rational(union_sum), Relation::eq, Rational(total_sum)});
        exp.push_back({"fiber_products_disjoint", Rational(union_prod), Relation::eq,
                       Rational(total_prod)});

        const auto quads = cross_check_quadruples(kept.size());
        json quads_json = json::array();
        for (const auto& q : quads) quads_json.push_back(q);
        same(path, "quadruples", st.at("quadruples"), quads_json);
        for (bool sum : {true, false}) {
          std::uint64_t applicable = 0;
          std::uint64_t disjoint = 0;
          for (const auto& [i, jj, k, l] : quads) {
            if (combine(kept[i].first, kept[jj].first, sum) ==
                combine(kept[k].first, kept[l].first, sum)) {
              continue;
            }
            ++applicable;
            const VecSet x = image(kept[i].second, kept[jj].second, sum);
            const VecSet y = image(kept[k].second, kept[l].second, sum);
            const bool meet = std::any_of(x.begin(), x.end(),
                                          [&](const Vec& v) { return y.contains(v); });
            if (!meet) ++disjoint;
          }
          exp.push_back({sum ? "cross_sums_disjoint" : "cross_products_disjoint",
                         Rational(disjoint), Relation::eq, Rational(applicable)});
        }

        VecSet base;
        for (const auto& f : kept) base.insert(f.first);
        same(path, "base", st.at("base"), points_of(base));
        exp.push_back({"base_points_count", Rational(base.size()), Relation::eq,
                       Rational(kept.size())});
        const auto [bs, bp] = naive_growth(std::vector<Vec>(base.begin(), base.end()));
        same_growth(path, "base_growth", st.at("base_growth"), bs, bp);
        const std::uint64_t bound_b_value = (std::uint64_t{1} << level) * (bs + bp);
        const Rational bound_b(bound_b_value);
        same(path, "bound_a", st.at("bound_a"), bound_a);
        same(path, "bound_b", st.at("bound_b"), bound_b_value);
        exp.push_back({"bound_a", g1, Relation::ge, Rational(bound_a)});
        exp.push_back({"bound_b", g1, Relation::ge, bound_b});

        std::size_t rep = 0;
        for (std::size_t i = 1; i < kept.size(); ++i) {
          if (kept[i].second.size() > kept[rep].second.size()) rep = i;
        }
        same(path, "representative", st.at("representative"), rep);

        std::size_t index = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
          if (!exhaustive_ && i != rep) continue;
          const std::string tag = "[" + std::to_string(i) + "]";
          VecSet projected;
          for (const auto& q : kept[i].second) projected.insert(pick(q, free));
          exp.push_back({"projection_preserves_size" + tag, Rational(projected.size()),
                         Relation::eq, Rational(kept[i].second.size())});
          const NodeResult r = child_result(index++, "fiber" + tag, projected);
          exp.push_back({"projection_growth" + tag, Rational(r.growth), Relation::eq,
                         Rational(fiber_totals[i])});
          exp.push_back({"fiber_child_bound" + tag, Rational(fiber_totals[i]), Relation::ge,
                         Rational(r.lower_bound)});
        }
        const NodeResult rb = child_result(index++, "base", base);
        exp.push_back({"base_child_bound", bound_b, Relation::ge, scale * Rational(rb.lower_bound)});
        if (children.size() != index) problem(path, "unexpected extra children");

        same(path, "delta_r", st.at("delta_r"), c_.delta(free.size()).str());
        same(path, "delta_complement", st.at("delta_complement"), c_.delta(fixed.size()).str());
        lower = std::max(bound_a, bound_b_value);
      } else {
        if (branch != "unstructured") problem(path, "rich mass forces the unstructured branch");
        const json& un = j.at("unstructured");
        VecSet covered;
        for (const auto& groups : rich) {
          for (const auto& [key, members] : groups) covered.insert(members.begin(), members.end());
        }
        std::vector<Vec> rest;
        for (const auto& q : a1) {
          if (!covered.contains(q)) rest.push_back(q);
        }
        if (rest.empty()) throw DomainError("every point lies on a rich subspace");
        const std::size_t tries = all_coordinates_ ? d : 1;
        std::size_t coord = 0;
        VecSet line;
        std::uint64_t ls = 0;
        std::uint64_t lp = 0;
        for (std::size_t c = 0; c < tries; ++c) {
          VecSet candidate;
          for (const auto& q : rest) candidate.insert(Vec{q[c]});
          const auto [cs, cp] = naive_growth(std::vector<Vec>(candidate.begin(), candidate.end()));
          if (c == 0 || cs + cp > ls + lp) {
            coord = c;
            line = std::move(candidate);
            ls = cs;
            lp = cp;
          }
        }
        same(path, "coordinate", un.at("coordinate"), coord);
        same(path, "covered", un.at("covered"), covered.size());
        same(path, "remaining_size", un.at("remaining_size"), rest.size());
        same(path, "line", un.at("line"), points_of(line));
        same_growth(path, "line_growth", un.at("line_growth"), ls, lp);
        exp.push_back({"unstructured_remaining", Rational(rest.size()), Relation::ge,
                       n1 - Rational(mass)});
        exp.push_back({"line_size", Rational(line.size()), Relation::ge,
                       Rational(rest.size()) / Rational(m_)});
        const NodeResult r = child_result(0, "line", line);
        exp.push_back({"line_bound", g1, Relation::ge, Rational(r.lower_bound)});
        if (children.size() != 1) problem(path, "unstructured node must have one child");
        lower = ls + lp;
      }
    }

    exp.push_back({"certified_bound", g, Relation::ge, Rational(lower)});
    if (is_root) {
      exp.push_back({"recursion_depth", Rational(d - 1), Relation::ge, Rational(tree_depth(j))});
    }
    same(path, "lower_bound", j.at("lower_bound"), lower);

    const json& ineqs = j.at("inequalities");
    bool all_hold = true;
    if (ineqs.size() != exp.size()) {
      problem(path, "expected " + std::to_string(exp.size()) + " inequalities, found " +
                        std::to_string(ineqs.size()));
    }
    for (std::size_t i = 0; i < exp.size(); ++i) {
      const Expected& e = exp[i];
      const bool holds = e.holds();
      all_hold = all_hold && holds;
      if (i >= ineqs.size()) continue;
      const json& q = ineqs[i];
      const std::string where = "inequality " + e.id;
      same(path, where + ".id", q.at("id"), e.id);
      same(path, where + ".lhs", q.at("lhs"), e.lhs.str());
      same(path, where + ".relation", q.at("relation"), relation_symbol(e.relation));
      same(path, where + ".rhs", q.at("rhs"), e.rhs.str());
      same(path, where + ".verified", q.at("verified"), holds);
    }
    const bool valid = all_hold && children_valid;
    same(path, "valid", j.at("valid"), valid);
    return {valid, lower, s + p};
  }

  Constants c_;
  std::size_t m_;
  bool exhaustive_;
  bool all_coordinates_;
};

}  // namespace

json to_json(const DecompositionCertificate& cert) {
  json j;
  j["format"] = kCertificateFormat;
  j["version"] = kCertificateVersion;
  j["constants"] = {{"delta1", cert.constants.delta1.str()},
                    {"structure_base", cert.constants.structure_base},
                    {"pigeonhole_base", cert.constants.pigeonhole_base},
                    {"sign_class_base", cert.constants.sign_class_base}};
  j["parameters"] = {{"m", cert.m},
                     {"exhaustive", cert.exhaustive},
                     {"all_coordinates", cert.all_coordinates}};
  j["theorem_exponent"] = cert.constants.delta(cert.root.input.dim()).str();
  j["lower_bound"] = cert.lower_bound();
  j["depth"] = cert.depth();
  j["valid"] = cert.valid();
  j["root"] = node_json(cert.root);
  return j;
}

CheckReport check_certificate(const json& doc) {
  CheckReport report;
  try {
    if (doc.at("format") != kCertificateFormat) report.problems.push_back("unknown format");
    if (doc.at("version") != kCertificateVersion) report.problems.push_back("unsupported version");
    const json& cj = doc.at("constants");
    Constants constants;
    constants.delta1 = Rational::parse(cj.at("delta1").get<std::string>());
    constants.structure_base = cj.at("structure_base").get<int>();
    constants.pigeonhole_base = cj.at("pigeonhole_base").get<int>();
    constants.sign_class_base = cj.at("sign_class_base").get<int>();
    constants.validate();
    const json& pj = doc.at("parameters");
    const auto m = pj.at("m").get<std::size_t>();
    if (m < 2) throw DomainError("M must be at least 2");
    Checker checker(constants, m, pj.at("exhaustive").get<bool>(),
                    pj.at("all_coordinates").get<bool>());
    const json& root = doc.at("root");
    const NodeResult r = checker.check(root, "root", nullptr, true);
    report.problems.insert(report.problems.end(), checker.problems.begin(), checker.problems.end());
    report.valid = r.valid;
    report.lower_bound = r.lower_bound;
    const std::size_t dim = root.at("dim").get<std::size_t>();
    if (doc.at("theorem_exponent") != constants.delta(dim).str()) {
      report.problems.push_back("theorem_exponent differs from delta1 / d");
    }
    if (doc.at("lower_bound") != r.lower_bound) report.problems.push_back("lower_bound differs");
    if (doc.at("depth") != tree_depth(root)) report.problems.push_back("depth differs");
    if (doc.at("valid") != r.valid) report.problems.push_back("valid flag differs");
  } catch (const std::exception& e) {
    report.problems.push_back(std::string("malformed certificate: ") + e.what());
    report.valid = false;
  }
  report.consistent = report.problems.empty();
  return report;
}

}  // namespace sumprod
