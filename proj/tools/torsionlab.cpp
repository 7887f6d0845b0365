#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torsionlab/asymptotics.hpp"
#include "torsionlab/precision_tiers.hpp"
#include "torsionlab/serialize.hpp"
#include "torsionlab/torsion_formulas.hpp"
#include "torsionlab/verify.hpp"

namespace tl = torsionlab;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInvalidInput = 2;

/// Invalid-configuration errors exit with code 2 and a diagnostic naming the
/// violated precondition.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 0;
  std::string n_list;  // verify accepts a comma-separated list
  std::optional<int> j, k;
  std::int64_t N = 0;
  std::int64_t N_max = 0;
  std::string format = "table";
  int precision_bits = 53;
  bool oracle = false;
  std::uint64_t seed = 0;
  std::string presentation_file;
};

int default_precision_bits() {
  if (const char* env = std::getenv("TORSIONLAB_PRECISION_BITS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw InvalidInput("TORSIONLAB_PRECISION_BITS is not an integer");
    }
  }
  return 53;
}

void validate_n(int n) {
  if (n == 0 || n == -1)
    throw InvalidInput("precondition violated: twist parameter n must not be 0 or -1");
  if (n > 10000 || n < -10000)
    throw InvalidInput("precondition violated: |n| is capped at 10^4");
}

int validated_tier(int bits) {
  if (bits < 53)
    throw InvalidInput("precondition violated: precision-bits must be at least 53");
  try {
    return tl::precision_tier(bits);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string("precondition violated: ") + e.what());
  }
}

template <class F>
int dispatch_tier(int bits, F&& run) {
  switch (validated_tier(bits)) {
    case 53:
      return run(std::type_identity<tl::Cplx>{});
    case 64:
      return run(std::type_identity<std::complex<long double>>{});
    case 128:
      return run(std::type_identity<tl::Cplx128>{});
    default:
      return run(std::type_identity<tl::Cplx256>{});
  }
}

// ---- reps -------------------------------------------------------------------

template <class C>
std::array<double, 8> image_entries(const tl::Matrix<C>& m) {
  using T = tl::scalar_traits<C>;
  std::array<double, 8> e{};
  int idx = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      e[size_t(idx++)] = T::to_double(m(i, j).real());
      e[size_t(idx++)] = T::to_double(m(i, j).imag());
    }
  return e;
}

template <class C>
int run_reps(const RunConfig& cfg) {
  using T = tl::scalar_traits<C>;
  validate_n(cfg.n);
  const int count = tl::metabelian_class_count(cfg.n);
  if (cfg.k && (*cfg.k < 1 || *cfg.k > count))
    throw InvalidInput("precondition violated: k out of range 1..(|4n+1|-1)/2");
  if (cfg.j && (*cfg.j < 1 || *cfg.j > count))
    throw InvalidInput("precondition violated: j out of range 1..(|4n+1|-1)/2");

  std::optional<tl::Presentation> extra;
  if (!cfg.presentation_file.empty()) {
    std::ifstream in(cfg.presentation_file);
    if (!in) throw InvalidInput("cannot open presentation file " + cfg.presentation_file);
    try {
      extra = tl::Presentation::parse(in);
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("presentation file: ") + e.what());
    }
  }

  // extra relators from a user presentation apply to reps whose generator
  // names cover the file's generators (by name)
  auto extra_residual = [&](const tl::Rep<C>& rep) -> std::optional<double> {
    if (!extra) return std::nullopt;
    std::vector<int> map;
    for (const auto& g : extra->generators()) {
      int idx = rep.pres.generator_index(g);
      if (idx < 0) return std::nullopt;
      map.push_back(idx);
    }
    double worst = 0.0;
    for (const tl::Word& r : extra->relators()) {
      std::vector<tl::Letter> renamed;
      for (const tl::Letter& l : r.letters())
        renamed.push_back(tl::Letter{map[size_t(l.gen)], l.exp});
      worst = std::max(worst, T::to_double(tl::evaluate_word(rep, tl::Word(renamed))
                                               .residual_vs_identity()));
    }
    return worst;
  };

  // --k restricts to one metabelian class, --j to one surgery representation;
  // asking for one family alone hides the other
  const bool show_metabelian = !cfg.j || cfg.k.has_value();
  const bool show_surgery = !cfg.k || cfg.j.has_value();

  std::vector<tl::RepRecord> records;
  std::vector<std::string> extra_lines;
  bool extra_applied = false;
  for (int k = 1; show_metabelian && k <= count; ++k) {
    if (cfg.k && k != *cfg.k) continue;
    const tl::Rep<C> rep = tl::metabelian_rep<C>(cfg.n, k);
    tl::RepRecord rec;
    rec.kind = "metabelian";
    rec.n = cfg.n;
    rec.k = k;
    rec.u = rep.meta.u;
    rec.max_residual = T::to_double(tl::verify_relations(rep).max_residual);
    rec.irreducible = tl::is_irreducible(rep);
    rec.metabelian_tag = tl::is_metabelian(rep);
    rec.images.push_back(tl::RepImageRecord{"a", image_entries(rep.image(0))});
    rec.images.push_back(tl::RepImageRecord{"b", image_entries(rep.image(1))});
    records.push_back(rec);
    if (auto res = extra_residual(rep)) {
      extra_applied = true;
      extra_lines.push_back("extra relators (metabelian k=" + std::to_string(k) +
                            "): residual " + tl::format_sig12(*res));
    }
  }
  for (int j = 1; show_surgery && j <= count; ++j) {
    if (cfg.j && j != *cfg.j) continue;
    const tl::Rep<C> rep = tl::graph_manifold_rep<C>(cfg.n, j);
    tl::RepRecord rec;
    rec.kind = "surgery";
    rec.n = cfg.n;
    rec.j = j;
    rec.xi = std::make_pair(rep.meta.xi->numer(), rep.meta.xi->denom());
    rec.p_k = tl::order_pk(cfg.n, j);
    rec.max_residual = T::to_double(tl::verify_relations(rep).max_residual);
    rec.irreducible = tl::is_irreducible(rep);
    rec.metabelian_tag = false;
    const char* names[] = {"a", "b", "x", "y"};
    for (int g = 0; g < 4; ++g)
      rec.images.push_back(tl::RepImageRecord{names[g], image_entries(rep.image(g))});
    records.push_back(rec);
    if (auto res = extra_residual(rep)) {
      extra_applied = true;
      extra_lines.push_back("extra relators (surgery j=" + std::to_string(j) +
                            "): residual " + tl::format_sig12(*res));
    }
  }
  if (extra && !extra_applied)
    throw InvalidInput(
        "presentation file generators match none of the constructed representations");

  if (cfg.format == "json") {
    std::cout << tl::to_json(records) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "kind,index,u_or_xi,p_k,max_residual,irreducible\n";
    for (const auto& r : records) {
      if (r.kind == "metabelian")
        std::cout << "metabelian," << *r.k << "," << tl::format_full(*r.u) << ",,"
                  << tl::format_full(r.max_residual) << ","
                  << (r.irreducible ? 1 : 0) << "\n";
      else
        std::cout << "surgery," << *r.j << ",exp(i*pi*" << r.xi->first << "/"
                  << r.xi->second << ")," << *r.p_k << ","
                  << tl::format_full(r.max_residual) << ","
                  << (r.irreducible ? 1 : 0) << "\n";
    }
  } else {
    std::cout << "twist parameter n=" << cfg.n << "  (|4n+1| = "
              << tl::twist_knot_determinant(cfg.n) << ", classes: " << count << ")\n";
    std::cout << tl::to_table(records);
  }
  for (const auto& line : extra_lines) std::cout << line << "\n";
  return kExitOk;
}

// ---- torsion ----------------------------------------------------------------

struct OracleRow {
  std::string name;
  std::optional<double> delta;  // absent = skipped
  std::string note;
};

template <class C>
std::vector<OracleRow> run_oracles(int n, int j, int N) {
  using T = tl::scalar_traits<C>;
  using std::abs;
  std::vector<OracleRow> rows;
  const tl::EigenvalueIndex ev = tl::eigenvalue_index(n, j);
  const tl::Rep<C> surgery = tl::graph_manifold_rep<C>(n, j);
  const int dim = 2 * N;

  // generic chain-complex engine against the Klein-bottle closed form
  if (N >= 1 && 4 * dim <= 512) {
    const tl::Rep<C> kb = tl::restrict_to_klein(surgery);
    const auto closed = tl::klein_bottle_torsion(kb, N);
    const auto engine = tl::generic_torsion_product(tl::klein_bottle_complex(kb, N));
    double delta = std::abs(T::to_double(engine.log_magnitude - closed.log_magnitude));
    delta = std::max(delta, std::abs(T::to_double(closed.log_magnitude)));
    rows.push_back(OracleRow{"klein-engine-vs-closed", delta, "both sides vs 1"});
  } else {
    rows.push_back(OracleRow{"klein-engine-vs-closed", std::nullopt, "dimension cap"});
  }

  // Fox-calculus presentation-complex oracle against the abelian closed form
  if (N >= 1 && dim <= 64) {
    const auto fox = tl::fox_oracle_torsion(tl::torus_knot_presentation(n),
                                            tl::restrict_to_torus_knot(surgery, n), N);
    const auto closed = tl::abelian_knot_torsion<C>(tl::alexander_torus(n), ev.xi, N);
    rows.push_back(OracleRow{
        "fox-vs-abelian",
        std::abs(T::to_double(fox.log_magnitude - closed.log_magnitude)),
        "log-magnitude delta"});
  } else if (N >= 1) {
    rows.push_back(OracleRow{"fox-vs-abelian", std::nullopt, "dimension cap"});
  }

  // splitting-torus torsion must be 1
  if (N >= 1 && 4 * dim <= 512) {
    const auto tv =
        tl::torus_torsion_check(tl::restrict_to_splitting_torus(surgery, n), N);
    rows.push_back(
        OracleRow{"splitting-torus", std::abs(T::to_double(tv.log_magnitude)),
                  "log-magnitude vs 0"});
  } else {
    rows.push_back(OracleRow{"splitting-torus", std::nullopt, "dimension cap"});
  }
  return rows;
}

template <class C>
int run_torsion(const RunConfig& cfg) {
  using T = tl::scalar_traits<C>;
  validate_n(cfg.n);
  if (cfg.k)
    throw InvalidInput(
        "torsion is parameterized by the eigenvalue index --j; the metabelian "
        "class label --k carries no declared correspondence to an eigenvalue");
  if (!cfg.j) throw InvalidInput("precondition violated: torsion requires --j");
  const int count = tl::metabelian_class_count(cfg.n);
  if (*cfg.j < 1 || *cfg.j > count)
    throw InvalidInput("precondition violated: j out of range 1..(|4n+1|-1)/2");
  if (cfg.N < 0) throw InvalidInput("precondition violated: N must be >= 0");
  if (cfg.N > 1000000000)
    throw InvalidInput("precondition violated: N is capped at 10^9");

  const auto tv = tl::graph_manifold_torsion<C>(cfg.n, *cfg.j, int(cfg.N));
  tl::TorsionRecord rec;
  rec.n = cfg.n;
  rec.j = *cfg.j;
  rec.N = cfg.N;
  rec.log_magnitude = T::to_double(tv.log_magnitude);
  if (tv.value) {
    rec.value_re = T::to_double(tv.value->real());
    rec.value_im = T::to_double(tv.value->imag());
  }
  rec.provenance = tl::provenance_name(tv.provenance);

  std::vector<OracleRow> oracles;
  bool oracle_failed = false;
  if (cfg.oracle) {
    oracles = run_oracles<C>(cfg.n, *cfg.j, int(cfg.N));
    for (const auto& o : oracles)
      if (o.delta && *o.delta > 1e-9) oracle_failed = true;
  }

  if (cfg.format == "json") {
    ordered_json o = ordered_json::parse(tl::to_json(rec));
    if (cfg.oracle) {
      ordered_json arr = ordered_json::array();
      for (const auto& orow : oracles) {
        ordered_json e;
        e["name"] = orow.name;
        if (orow.delta)
          e["delta"] = *orow.delta;
        else
          e["skipped"] = orow.note;
        arr.push_back(e);
      }
      o["oracles"] = arr;
    }
    std::cout << o.dump() << "\n";
  } else if (cfg.format == "csv") {
    std::cout << tl::to_csv(rec);
    for (const auto& o : oracles) {
      std::cout << "# oracle," << o.name << ",";
      if (o.delta)
        std::cout << tl::format_full(*o.delta) << ",ok\n";
      else
        std::cout << ",skipped (" << o.note << ")\n";
    }
  } else {
    std::cout << tl::to_table(rec);
    for (const auto& o : oracles) {
      std::cout << "oracle " << o.name << "  ";
      if (o.delta)
        std::cout << "delta " << tl::format_sig12(*o.delta)
                  << (*o.delta > 1e-9 ? "  DISAGREE" : "  ok") << "\n";
      else
        std::cout << "skipped (" << o.note << ")\n";
    }
  }
  return oracle_failed ? kExitVerificationFailure : kExitOk;
}

// ---- asymptotics / limits ----------------------------------------------------

template <class C>
int run_asymptotics(const RunConfig& cfg) {
  validate_n(cfg.n);
  if (cfg.N_max < 1) throw InvalidInput("precondition violated: Nmax must be >= 1");
  if (cfg.N_max > 10000000)
    throw InvalidInput("precondition violated: Nmax is capped at 10^7");
  const int count = tl::metabelian_class_count(cfg.n);
  if (cfg.j && (*cfg.j < 1 || *cfg.j > count))
    throw InvalidInput("precondition violated: j out of range 1..(|4n+1|-1)/2");

  std::vector<tl::AsymptoticsReport> reports;
  if (cfg.j) {
    reports.push_back(tl::leading_coefficient_sequence_at<C>(cfg.n, *cfg.j, cfg.N_max));
  } else {
    reports.resize(size_t(count));
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (int j = 1; j <= count; ++j)
      reports[size_t(j - 1)] =
          tl::leading_coefficient_sequence_at<C>(cfg.n, j, cfg.N_max);
  }

  if (cfg.format == "json")
    std::cout << (reports.size() == 1 ? tl::to_json(reports.front())
                                      : tl::to_json(reports))
              << "\n";
  else if (cfg.format == "csv")
    std::cout << tl::to_csv(reports);
  else
    std::cout << tl::to_table(reports);
  return kExitOk;
}

int run_limits(const RunConfig& cfg) {
  validate_n(cfg.n);
  const tl::LimitSet ls = tl::limit_set(cfg.n);
  if (cfg.format == "json") {
    std::cout << tl::to_json(ls, cfg.n) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "p_k,exact,value\n";
    for (const auto& l : ls.limits)
      std::cout << l.p_k << "," << l.to_string() << "," << tl::format_full(l.value())
                << "\n";
    std::cout << "# minimum," << ls.minimum.to_string() << ","
              << tl::format_full(ls.minimum.value()) << "\n";
  } else {
    std::cout << tl::to_table(ls, cfg.n);
  }
  return kExitOk;
}

// ---- verify -------------------------------------------------------------------

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidInput("precondition violated: --n expects integers, got '" + tok + "'");
    }
  }
  if (out.empty()) throw InvalidInput("precondition violated: empty n list");
  return out;
}

int run_verify(const RunConfig& cfg) {
  tl::VerifyOptions opt;
  opt.n_values = parse_n_list(cfg.n_list);
  for (int n : opt.n_values) validate_n(n);
  opt.seed = cfg.seed;
  opt.precision_bits = validated_tier(cfg.precision_bits);
  const auto rows = tl::run_verify_suite(opt);
  if (cfg.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json e;
      e["module"] = r.module;
      e["check"] = r.name;
      e["scope"] = r.scope;
      e["pass"] = r.pass;
      e["detail"] = r.detail;
      arr.push_back(e);
    }
    std::cout << arr.dump() << "\n";
  } else {
    std::cout << tl::render_check_table(rows);
  }
  int failures = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failures;
  if (failures > 0) {
    std::cout << failures << " check(s) failed\n";
    return kExitVerificationFailure;
  }
  std::cout << "all " << rows.size() << " checks passed\n";
  return kExitOk;
}

void check_format(const std::string& f) {
  if (f != "table" && f != "json" && f != "csv")
    throw InvalidInput("precondition violated: format must be one of json, csv, table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"representations and higher-dimensional Reidemeister torsion for "
               "4-surgeries along twist knots"};
  app.require_subcommand(1);

  RunConfig cfg;
  try {
    cfg.precision_bits = default_precision_bits();
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  auto add_common = [&](CLI::App* sub, bool with_format = true) {
    if (with_format)
      sub->add_option("--format", cfg.format, "output format: json, csv or table");
    sub->add_option("--precision-bits", cfg.precision_bits,
                    "mantissa width; computations run at the smallest supported "
                    "tier >= the request (53, 64, 128, 256)");
  };

  CLI::App* reps = app.add_subcommand(
      "reps", "enumerate the metabelian classes and surgery representations");
  reps->add_option("--n", cfg.n, "twist parameter")->required();
  reps->add_option("--k", cfg.k, "restrict to one metabelian class");
  reps->add_option("--j", cfg.j, "restrict to one surgery representation");
  reps->add_option("--presentation-file", cfg.presentation_file,
                   "certify the representations against extra relators from a file");
  add_common(reps);

  CLI::App* torsion = app.add_subcommand(
      "torsion", "torsion of the surgered manifold at dimension 2N");
  torsion->add_option("--n", cfg.n, "twist parameter")->required();
  torsion->add_option("--j", cfg.j, "eigenvalue index");
  torsion->add_option("--k", cfg.k,
                      "not a torsion parameter (metabelian class labels carry no "
                      "declared eigenvalue index); use --j");
  torsion->add_option("--N", cfg.N, "half-dimension N (2N-dimensional lift)");
  torsion->add_flag("--oracle", cfg.oracle,
                    "cross-check with the generic engine and the Fox oracle");
  add_common(torsion);

  CLI::App* asym = app.add_subcommand(
      "asymptotics", "growth-rate sequence log|torsion|/(2N) and its limit");
  asym->add_option("--n", cfg.n, "twist parameter")->required();
  asym->add_option("--j", cfg.j, "eigenvalue index (absent: every j)");
  asym->add_option("--Nmax", cfg.N_max, "largest N in the sequence")->required();
  add_common(asym);

  CLI::App* limits = app.add_subcommand(
      "limits", "the set of growth-rate limits in exact and float form");
  limits->add_option("--n", cfg.n, "twist parameter")->required();
  add_common(limits, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "run every module invariant suite and print a check matrix");
  verify->add_option("--n", cfg.n_list, "comma-separated twist parameters")->required();
  verify->add_option("--seed", cfg.seed, "seed for the randomized property checks");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    check_format(cfg.format);
    if (reps->parsed())
      return dispatch_tier(cfg.precision_bits, [&](auto tag) {
        using C = typename decltype(tag)::type;
        return run_reps<C>(cfg);
      });
    if (torsion->parsed())
      return dispatch_tier(cfg.precision_bits, [&](auto tag) {
        using C = typename decltype(tag)::type;
        return run_torsion<C>(cfg);
      });
    if (asym->parsed())
      return dispatch_tier(cfg.precision_bits, [&](auto tag) {
        using C = typename decltype(tag)::type;
        return run_asymptotics<C>(cfg);
      });
    if (limits->parsed()) return run_limits(cfg);
    if (verify->parsed()) return run_verify(cfg);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitInvalidInput;
}
