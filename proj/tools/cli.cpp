#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumprod/certificate.hpp"
#include "sumprod/decomposition.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/io.hpp"
#include "sumprod/matrixset.hpp"
#include "sumprod/verifier.hpp"

namespace sumprod::cli {
namespace {

using nlohmann::json;

/// Raised for flag values CLI11 cannot validate on its own.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// "a..b" or a single integer.
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& part) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size()) throw UsageError("invalid range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::int64_t v = to_int(text);
    return {v, v};
  }
  const auto lo = to_int(text.substr(0, dots));
  const auto hi = to_int(text.substr(dots + 2));
  if (hi < lo) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string with_config(json doc, const json& config) {
  doc["run_config"] = config;
  return doc.dump(2) + "\n";
}

struct FamilyFlags {
  std::string family = "interval";
  std::int64_t n = 1;
  std::size_t dim = 2;
  std::size_t split = 1;
  std::uint64_t seed = 0;
  std::int64_t lo = -8;
  std::int64_t hi = 8;
  std::string path;

  bool matrices() const { return family == "dn"; }

  FamilySpec spec() const {
    FamilySpec s;
    s.kind = parse_family_kind(family);
    s.n = n;
    s.dim = (s.kind == FamilyKind::random_box || s.kind == FamilyKind::random_product) ? dim
                                                                                       : s.output_dim();
    s.split = split;
    s.seed = seed;
    s.lo = lo;
    s.hi = hi;
    s.path = path;
    s.validate();
    return s;
  }

  json config() const {
    if (matrices()) return {{"kind", "dn"}, {"n", n}};
    return spec().to_json();
  }

  void add(CLI::App* app, bool with_n) {
    app->add_option("--family", family,
                    "interval | geometric | cn | box | random_product | custom | dn")
        ->required();
    if (with_n) app->add_option("--n", n, "N, or the point count of a random family");
    app->add_option("--dim", dim, "dimension of random families");
    app->add_option("--split", split, "random_product: dimension of the first factor");
    app->add_option("--seed", seed, "mt19937_64 seed of random families");
    app->add_option("--lo", lo, "smallest coordinate of random families");
    app->add_option("--hi", hi, "largest coordinate of random families");
    app->add_option("--path", path, "custom: point-set file");
  }
};

struct ConstantFlags {
  std::string delta1;
  std::string overrides;

  /// `overrides` is a comma-separated list of key=value with keys delta1,
  /// structure_base, pigeonhole_base and sign_class_base.
  Constants build() const {
    Constants c;
    if (!delta1.empty()) c.delta1 = Rational::parse(delta1);
    std::stringstream list(overrides);
    std::string item;
    while (std::getline(list, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("constant override '" + item + "' needs key=value");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      auto as_int = [&] {
        const Rational r = Rational::parse(value);
        if (!r.is_integer() || r < Rational(1) || r > Rational(1000)) {
          throw UsageError(key + " must be an integer in [1, 1000]");
        }
        return static_cast<int>(r.numerator().get_si());
      };
      if (key == "delta1") {
        c.delta1 = Rational::parse(value);
      } else if (key == "structure_base") {
        c.structure_base = as_int();
      } else if (key == "pigeonhole_base") {
        c.pigeonhole_base = as_int();
      } else if (key == "sign_class_base") {
        c.sign_class_base = as_int();
      } else {
        throw UsageError("unknown constant '" + key + "'");
      }
    }
    c.validate();
    return c;
  }
};

json constants_json(const Constants& c) {
  return {{"delta1", c.delta1.str()},
          {"structure_base", c.structure_base},
          {"pigeonhole_base", c.pigeonhole_base},
          {"sign_class_base", c.sign_class_base}};
}

json config_base(const std::string& subcommand, unsigned threads) {
  return {{"subcommand", subcommand}, {"threads", threads}};
}

std::string growth_text(std::uint64_t size, const Growth& g) {
  std::ostringstream os;
  os << "|A| = " << size << "\n|A+A| = " << g.sum_size << "\n|A.A| = " << g.prod_size
     << "\n|A+A| + |A.A| = " << g.total() << '\n';
  if (size >= 2) {
    os << "delta_hat = " << exponent_of(g, size) << " (max convention), "
       << exponent_total_of(g, size) << " (sum convention)\n";
  }
  return os.str();
}

json growth_json(std::uint64_t size, const Growth& g, bool matrices) {
  json j = {{"kind", matrices ? "matset" : "pointset"},
            {"size", size},
            {"sum", g.sum_size},
            {"product", g.prod_size},
            {"total", g.total()},
            {"max", g.max()}};
  j["exponent"] = size >= 2 ? json(exponent_of(g, size)) : json(nullptr);
  j["exponent_total"] = size >= 2 ? json(exponent_total_of(g, size)) : json(nullptr);
  return j;
}

std::string certificate_summary(const DecompositionCertificate& cert) {
  std::ostringstream os;
  os << "certificate: " << (cert.valid() ? "valid" : "INVALID") << '\n'
     << "branch: " << to_string(cert.root.branch) << '\n'
     << "M: " << cert.m << '\n'
     << "certified lower bound L = " << cert.lower_bound() << '\n'
     << "|A+A| + |A.A| = " << cert.root.growth.total() << '\n'
     << "depth: " << cert.depth() << '\n';
  if (!cert.valid()) os << "failed step: " << cert.root.failure << '\n';
  return os.str();
}

int report_check(const CheckReport& report, std::ostream& out) {
  for (const auto& p : report.problems) out << "problem: " << p << '\n';
  out << "consistent: " << (report.consistent ? "yes" : "no") << '\n'
      << "valid: " << (report.valid ? "yes" : "no") << '\n';
  if (report.ok()) out << "certified lower bound L = " << report.lower_bound << '\n';
  return report.ok() ? kExitOk : kExitNegative;
}

int verify_certificate_file(const std::string& path, std::ostream& out) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("certificate is not JSON: ") + e.what());
  }
  return report_check(check_certificate(doc), out);
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

}  // namespace

static SetOpOptions setops_for(unsigned threads) {
  SetOpOptions o;
  o.threads = threads;
  return o;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sum-product laboratory over Q^d and rational matrices"};
  app.name("sumprod");
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0: all cores); results do not depend on it");
  std::function<int()> action;

  // gen
  FamilyFlags gen_flags;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen", "write a family as a point-set or matrix-set file");
  gen_flags.add(gen, true);
  gen->add_option("-o,--output", gen_output, "output file (default: stdout)");
  gen->callback([&] {
    action = [&] {
      json config = config_base("gen", threads);
      config["family"] = gen_flags.config();
      config["output"] = gen_output;
      const std::string provenance = config.dump();
      if (gen_flags.matrices()) {
        if (gen_flags.n < 1) throw DomainError("dn family requires N >= 1");
        const MatrixSet d = dn_family(static_cast<std::size_t>(gen_flags.n));
        emit(gen_output, format_matrixset(d, provenance), out);
      } else {
        emit(gen_output, format_pointset(generate(gen_flags.spec()), provenance), out);
      }
      return kExitOk;
    };
  });

  // growth
  std::string growth_input;
  bool growth_json_flag = false;
  auto* growth_cmd = app.add_subcommand("growth", "exact |A+A| and |A.A| of a set file");
  growth_cmd->add_option("-i,--input", growth_input, "point-set or matrix-set file")->required();
  growth_cmd->add_flag("--json", growth_json_flag, "JSON output");
  growth_cmd->callback([&] {
    action = [&] {
      const std::string text = read_text_file(growth_input);
      const bool matrices = detect_kind(text) == SetFileKind::matrixset;
      std::uint64_t size = 0;
      Growth g;
      if (matrices) {
        const MatrixSet a = parse_matrixset(text);
        if (a.empty()) throw EmptyInput("growth");
        size = a.size();
        g = mat_growth(a, setops_for(threads));
      } else {
        const PointSet a = parse_pointset(text);
        if (a.empty()) throw EmptyInput("growth");
        size = a.size();
        g = growth(a, setops_for(threads));
      }
      if (growth_json_flag) {
        json config = config_base("growth", threads);
        config["input"] = growth_input;
        out << with_config(growth_json(size, g, matrices), config);
      } else {
        out << growth_text(size, g);
      }
      return kExitOk;
    };
  });

  // sumset / prodset
  struct PairFlags {
    std::string input;
    std::string other;
    std::string output;
  };
  PairFlags sum_flags;
  PairFlags prod_flags;
  auto add_pair = [&](const std::string& name, const std::string& help, PairFlags& f,
                      bool sums) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("-i,--input", f.input, "left operand file")->required();
    cmd->add_option("--with", f.other, "right operand file (default: the left operand)");
    cmd->add_option("-o,--output", f.output, "output file (default: stdout)");
    cmd->callback([&, name, sums] {
      action = [&, name, sums] {
        json config = config_base(name, threads);
        config["input"] = f.input;
        config["with"] = f.other;
        config["output"] = f.output;
        const std::string provenance = config.dump();
        const std::string left = read_text_file(f.input);
        const std::string right = f.other.empty() ? left : read_text_file(f.other);
        const SetFileKind kind = detect_kind(left);
        if (detect_kind(right) != kind) throw UsageError("operands are of different kinds");
        const SetOpOptions o = setops_for(threads);
        if (kind == SetFileKind::matrixset) {
          const MatrixSet a = parse_matrixset(left);
          const MatrixSet b = parse_matrixset(right);
          const MatrixSet r = sums ? mat_sumset(a, b, o) : mat_productset(a, b, o);
          emit(f.output, format_matrixset(r, provenance), out);
        } else {
          const PointSet a = parse_pointset(left);
          const PointSet b = parse_pointset(right);
          const PointSet r = sums ? sumset(a, b, o) : productset(a, b, o);
          emit(f.output, format_pointset(r, provenance), out);
        }
        return kExitOk;
      };
    });
  };
  add_pair("sumset", "write A+B", sum_flags, true);
  add_pair("prodset", "write A.B (componentwise, or matrix products)", prod_flags, false);

  // decompose
  std::string dec_input;
  std::string dec_output;
  std::string dec_verify;
  std::size_t dec_m = 0;
  bool dec_exhaustive = false;
  bool dec_all_coords = false;
  ConstantFlags dec_constants;
  auto* dec = app.add_subcommand("decompose", "run the dimension-induction pipeline and emit a certificate");
  dec->add_option("-i,--input", dec_input, "point-set file");
  dec->add_option("--m", dec_m, "richness threshold M (default 2d + 2)");
  dec->add_option("--delta1", dec_constants.delta1, "exact rational delta1 (default 1/3 + 5/5277)");
  dec->add_option("--constants", dec_constants.overrides,
                  "overrides: delta1=..,structure_base=..,pigeonhole_base=..,sign_class_base=..");
  dec->add_flag("--exhaustive", dec_exhaustive, "recurse on every selected fiber");
  dec->add_flag("--all-coordinates", dec_all_coords, "unstructured case: best coordinate line");
  dec->add_option("-o,--output", dec_output, "certificate file (default: stdout)");
  dec->add_option("--verify-cert", dec_verify, "re-check an existing certificate instead");
  dec->callback([&] {
    action = [&] {
      if (!dec_verify.empty()) return verify_certificate_file(dec_verify, out);
      if (dec_input.empty()) throw UsageError("decompose needs --input or --verify-cert");
      DecomposeOptions opts;
      opts.m = dec_m;
      opts.constants = dec_constants.build();
      opts.exhaustive = dec_exhaustive;
      opts.all_coordinates = dec_all_coords;
      opts.setops = setops_for(1);
      const PointSet a = parse_pointset(read_text_file(dec_input));
      const DecompositionCertificate cert = decompose(a, opts);
      json config = config_base("decompose", threads);
      config["input"] = dec_input;
      config["output"] = dec_output;
      config["m"] = dec_m;
      config["constants"] = constants_json(opts.constants);
      config["exhaustive"] = dec_exhaustive;
      config["all_coordinates"] = dec_all_coords;
      emit(dec_output, with_config(to_json(cert), config), out);
      if (!dec_output.empty()) out << certificate_summary(cert);
      if (!cert.valid()) err << "certificate invalid: " << cert.root.failure << '\n';
      return cert.valid() ? kExitOk : kExitNegative;
    };
  });

  // verify-cert
  std::string vc_input;
  auto* vc = app.add_subcommand("verify-cert", "independently re-check a certificate");
  vc->add_option("-i,--input", vc_input, "certificate JSON file")->required();
  vc->callback([&] { action = [&] { return verify_certificate_file(vc_input, out); }; });

  // sweep
  FamilyFlags sweep_flags;
  std::string sweep_range;
  bool sweep_json = false;
  bool sweep_csv = false;
  std::string sweep_delta1;
  std::string sweep_output;
  auto* sw = app.add_subcommand("sweep", "exact growth and exponent over a range of N");
  sweep_flags.add(sw, false);
  sw->add_option("--n", sweep_range, "range a..b")->required();
  sw->add_option("--delta1", sweep_delta1, "exact rational delta1 for the reference line");
  auto* json_flag = sw->add_flag("--json", sweep_json, "JSON output");
  sw->add_flag("--csv", sweep_csv, "CSV output")->excludes(json_flag);
  sw->add_option("-o,--output", sweep_output, "output file (default: stdout)");
  sw->callback([&] {
    action = [&] {
      const auto [lo, hi] = parse_range(sweep_range);
      SweepOptions opts;
      opts.threads = threads;
      if (!sweep_delta1.empty()) opts.delta1 = Rational::parse(sweep_delta1);
      GrowthReport report = sweep_flags.matrices() ? sweep_dn(lo, hi, opts)
                                                   : sweep(sweep_flags.spec(), lo, hi, opts);
      json config = config_base("sweep", threads);
      config["family"] = sweep_flags.config();
      config["family"].erase("n");
      config["n"] = sweep_range;
      config["delta1"] = opts.delta1.str();
      config["format"] = sweep_json ? "json" : sweep_csv ? "csv" : "text";
      report.provenance = config;
      std::string text;
      if (sweep_json) {
        text = report.to_json().dump(2) + "\n";
      } else if (sweep_csv) {
        text = "# " + config.dump() + "\n" + report.to_csv();
      } else {
        text = "# " + config.dump() + "\n" + report.to_text();
      }
      emit(sweep_output, text, out);
      bool ok = true;
      for (const auto& r : report.rows) ok = ok && r.within_ceiling.value_or(true);
      return ok ? kExitOk : kExitNegative;
    };
  });

  // search
  std::size_t search_dim = 1;
  std::size_t search_k = 2;
  std::string search_universe;
  bool search_json = false;
  auto* se = app.add_subcommand("search", "exhaustive minimum of |A+A| + |A.A| over k-subsets of a box");
  se->add_option("--dim", search_dim, "dimension of the universe box");
  se->add_option("--k", search_k, "subset size")->required();
  se->add_option("--universe", search_universe, "coordinate range lo..hi")->required();
  se->add_flag("--json", search_json, "JSON output");
  se->callback([&] {
    action = [&] {
      const auto [lo, hi] = parse_range(search_universe);
      const SearchResult r = extremal_search(integer_box(search_dim, lo, hi), search_k, threads);
      json config = config_base("search", threads);
      config["dim"] = search_dim;
      config["k"] = search_k;
      config["universe"] = search_universe;
      if (search_json) {
        out << with_config(r.to_json(), config);
      } else {
        out << "# " << config.dump() << '\n'
            << "subsets examined: " << r.examined << '\n'
            << "minimum |A+A| + |A.A| = " << r.value << '\n'
            << "minimizers: " << r.minimizers.size() << '\n';
        for (const auto& s : r.minimizers) {
          out << "  {";
          for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << s[i];
          out << "}\n";
        }
      }
      return kExitOk;
    };
  });

  // check-conditions
  std::string cc_input;
  std::string cc_kappa;
  auto* cc = app.add_subcommand("check-conditions",
                                "pairwise-difference invertibility and kappa-well-conditioning");
  cc->add_option("-i,--input", cc_input, "matrix-set file (point sets are embedded diagonally)")
      ->required();
  cc->add_option("--kappa", cc_kappa, "exact rational kappa >= 1")->required();
  cc->callback([&] {
    action = [&] {
      const Rational kappa = Rational::parse(cc_kappa);
      if (kappa < Rational(1)) throw UsageError("kappa must be at least 1");
      const std::string text = read_text_file(cc_input);
      const MatrixSet a = detect_kind(text) == SetFileKind::matrixset
                              ? parse_matrixset(text)
                              : diag_embed(parse_pointset(text));
      if (a.empty()) throw EmptyInput("check-conditions");
      json config = config_base("check-conditions", threads);
      config["input"] = cc_input;
      config["kappa"] = kappa.str();
      out << "# " << config.dump() << '\n';

      const InvertibilityCheck inv = pairwise_diff_invertible(a);
      out << "condition1 (det(a - b) != 0 for distinct a, b): " << (inv.holds ? "PASS" : "FAIL");
      if (inv.witness) {
        out << ", witness #" << inv.witness->first << " and #" << inv.witness->second << '\n'
            << "  a = " << matrix_text(a[inv.witness->first]) << '\n'
            << "  b = " << matrix_text(a[inv.witness->second]) << '\n';
      } else {
        out << '\n';
      }

      bool cond2 = false;
      out << "condition2 (kappa(a) <= " << kappa << " for all a): ";
      try {
        const ConditioningCheck wc = is_well_conditioned(a, kappa);
        cond2 = wc.holds;
        out << (wc.holds ? "PASS" : "FAIL") << ", worst #" << wc.worst_index << " kappa = ";
        if (wc.worst.exact) {
          out << *wc.worst.exact;
        } else {
          out << wc.worst.value << " (numeric)";
        }
        out << '\n';
      } catch (const DomainError& e) {
        out << "FAIL, " << e.what() << '\n';
      }
      out << "reference lines (cited, not certified): under both conditions |A+A| + |A.A| >> |A|^(5/4);\n"
          << "  for invertible well-conditioned sets with the quotient condition, >> |A|^(4/3) (log|A|)^(-1/3)\n";
      return inv.holds && cond2 ? kExitOk : kExitNegative;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace sumprod::cli
