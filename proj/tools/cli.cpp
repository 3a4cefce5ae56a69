#include "cli.hpp"

#include "json_support.hpp"

#include "qfp/arcs.hpp"
#include "qfp/counting.hpp"
#include "qfp/error.hpp"
#include "qfp/generators.hpp"
#include "qfp/io.hpp"
#include "qfp/linalg.hpp"
#include "qfp/offdiag.hpp"
#include "qfp/structure.hpp"
#include "qfp/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>

namespace qfp::tools {

namespace {

struct Config {
  std::uint64_t budget = 0;
  unsigned threads = 0;

  std::string matrix_path;
  std::string c_path;
  std::string h_path;
  std::int64_t t = 0;
  std::uint64_t X = 0;
  std::uint64_t Q = 1;
  bool Q_given = false;
  double K = 1.0;
  std::vector<std::uint64_t> primes{2, 3, 5};
  unsigned max_exponent = 3;
  bool paper_normalization = false;
  Box box = Box::Positive;
  Weights weights = Weights::Lambda;
  std::string format = "json";
  bool use_oracle = false;

  std::string d = "1";
  std::size_t grid = 10000;

  std::string op = "bilinear";
  std::vector<std::uint64_t> xs{50, 100, 200, 400};
  std::string kind = "rank1";
  std::size_t n = 6;
  std::uint64_t seed = 20240611;
  bool no_permute = false;
  bool weighted = false;

  std::string scope = "all";
  bool trends = false;
};

Limits limits_of(const Config& cfg) {
  Limits l = default_limits();
  if (cfg.budget) l.budget = cfg.budget;
  if (cfg.threads) l.threads = cfg.threads;
  return l;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

RationalMatrix optional_h(const Config& cfg, std::size_t rows) {
  if (cfg.h_path.empty()) return RationalMatrix(rows, 0);
  auto h = load_rational_matrix(cfg.h_path);
  if (h.rows() != rows) fail(ErrorCode::DimensionMismatch, "H must have as many rows as C");
  return h;
}

RepresentationHistogram histogram_for(const SymmetricIntMatrix& a, std::uint64_t X, Weights w, const Limits& limits) {
  if (const auto split = find_block_split(a)) return representation_histogram_split(a, *split, X, w, limits);
  return representation_histogram(a, X, w, limits);
}

int cmd_offdiag(const Config& cfg, std::ostream& out) {
  const auto a = load_symmetric_matrix(cfg.matrix_path);
  const auto rep = cfg.use_oracle ? offdiag_rank_oracle(a) : offdiag_rank(a);
  Json j = to_json(rep);
  j["n"] = a.n();
  j["matrix_rank"] = rank(a);
  j["method"] = cfg.use_oracle ? "oracle" : "fast";
  emit(out, j);
  return 0;
}

int cmd_decompose(const Config& cfg, std::ostream& out) {
  const auto a = load_symmetric_matrix(cfg.matrix_path);
  const auto form = decompose(a);
  const std::size_t r = rank(a);
  Json j{{"n", a.n()}, {"offdiag_rank", form.index() == 0 ? 1 : 2}, {"matrix_rank", r}};
  merge(j, form_to_json(form));
  j["quintuple"] = quintuple_to_json(form, r);
  emit(out, j);
  return 0;
}

int cmd_classify(const Config& cfg, std::ostream& out) {
  const auto a = load_symmetric_matrix(cfg.matrix_path);
  Json j{{"n", a.n()}};
  merge(j, to_json(classify_rank2(a)));
  emit(out, j);
  return 0;
}

int cmd_series(const Config& cfg, std::ostream& out) {
  const ProblemInstance inst{load_symmetric_matrix(cfg.matrix_path), Integer(static_cast<long>(cfg.t))};
  SeriesOptions so;
  so.primes = cfg.primes;
  so.max_exponent = cfg.max_exponent;
  so.normalization = cfg.paper_normalization ? SeriesNormalization::PhiOnce : SeriesNormalization::PhiPowerN;
  so.limits = limits_of(cfg);
  Json j{{"n", inst.n()}};
  merge(j, to_json(singular_series_truncated(inst, cfg.Q, so), inst.t));
  emit(out, j);
  return 0;
}

int cmd_count(const Config& cfg, std::ostream& out) {
  const ProblemInstance inst{load_symmetric_matrix(cfg.matrix_path), Integer(static_cast<long>(cfg.t))};
  Json j{{"n", inst.n()}};
  merge(j, to_json(count_solutions(inst, cfg.X, limits_of(cfg)), inst.t));
  emit(out, j);
  return 0;
}

int cmd_bilinear(const Config& cfg, std::ostream& out) {
  const auto c = load_rational_matrix(cfg.c_path);
  const BilinearSystem sys{c, optional_h(cfg, c.rows()), cfg.box};
  emit(out, Json{{"n", c.rows()},
                 {"k", c.cols()},
                 {"constraints", sys.h.cols()},
                 {"X", cfg.X},
                 {"box", std::string(to_string(cfg.box))},
                 {"count", count_bilinear(sys, cfg.X, limits_of(cfg))}});
  return 0;
}

int cmd_arcs(const Config& cfg, std::ostream& out) {
  const auto a = load_symmetric_matrix(cfg.matrix_path);
  const auto limits = limits_of(cfg);
  const auto arcs = build_arcs(cfg.X, cfg.K);
  const auto hist = histogram_for(a, cfg.X, cfg.weights, limits);
  const auto rep = major_arc_integral(hist, cfg.t, arcs);
  if (cfg.format == "csv") {
    out << "q,arcs,re,im\n" << std::setprecision(17);
    for (const auto& c : rep.per_q) out << c.q << ',' << c.arcs << ',' << c.integral.real() << ',' << c.integral.imag() << '\n';
    return 0;
  }
  std::optional<double> main_term;
  if (cfg.Q_given) {
    SeriesOptions so;
    so.limits = limits;
    const auto series = singular_series_truncated(ProblemInstance{a, Integer(static_cast<long>(cfg.t))}, cfg.Q, so);
    main_term = predicted_main_term(series, cfg.X, a.n());
  }
  Json j{{"n", a.n()}, {"weights", std::string(to_string(cfg.weights))}};
  merge(j, to_json(rep, arcs, main_term));
  emit(out, j);
  return 0;
}

int cmd_weyl(const Config& cfg, std::ostream& out) {
  const auto d = parse_rational(cfg.d);
  if (!d || *d == 0) fail(ErrorCode::ParseError, "--d must be a nonzero rational p/q, got '" + cfg.d + "'");
  const auto scan = minor_arc_scan(*d, build_arcs(cfg.X, cfg.K), cfg.grid, limits_of(cfg));
  out << "alpha,abs\n" << std::setprecision(17);
  for (const auto& p : scan.points) out << p.alpha << ',' << p.abs << '\n';
  return 0;
}

int cmd_growth(const Config& cfg, std::ostream& out) {
  if (cfg.op != "bilinear") fail(ErrorCode::InvalidArgument, "unsupported growth op: " + cfg.op);
  RationalMatrix c = cfg.c_path.empty() ? RationalMatrix{{1, 0}, {0, -1}} : load_rational_matrix(cfg.c_path);
  const BilinearSystem sys{c, optional_h(cfg, c.rows()), cfg.box};
  const auto limits = limits_of(cfg);
  out << "X,count,logX,logCount\n" << std::setprecision(17);
  for (const auto X : cfg.xs) {
    const auto count = count_bilinear(sys, X, limits);
    out << X << ',' << count << ',' << std::log(double(X)) << ',' << std::log(double(count)) << '\n';
  }
  return 0;
}

int cmd_generate(const Config& cfg, std::ostream& out) {
  static const std::map<std::string, FormKind> kinds{{"rank1", FormKind::Rank1},
                                                     {"case11", FormKind::Case11},
                                                     {"case21", FormKind::Case21},
                                                     {"case22", FormKind::Case22}};
  const auto inst = generate_instance(kinds.at(cfg.kind), cfg.n, cfg.seed, !cfg.no_permute);
  Json j{{"kind", cfg.kind}, {"n", cfg.n}, {"seed", cfg.seed}, {"attempts", inst.attempts},
         {"matrix", to_json(inst.matrix)}};
  j["form"] = form_to_json(inst.form);
  emit(out, j);
  return 0;
}

int cmd_injection(const Config& cfg, std::ostream& out) {
  const auto c = load_rational_matrix(cfg.c_path);
  Json j{{"n", c.rows()}, {"X", cfg.X}};
  merge(j, to_json(verify_sum_difference_injection(c, optional_h(cfg, c.rows()), cfg.X, limits_of(cfg))));
  emit(out, j);
  return 0;
}

int cmd_paired(const Config& cfg, std::ostream& out) {
  const auto c = load_rational_matrix(cfg.c_path);
  const auto rep = count_paired_system(c, optional_h(cfg, c.rows()), cfg.X, cfg.weighted, limits_of(cfg));
  emit(out, Json{{"n", c.rows()},
                 {"X", cfg.X},
                 {"weighted", rep.weighted},
                 {"unit", rep.weighted ? Json(nullptr) : Json(rep.unit)},
                 {"value", rep.value}});
  return 0;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  VerifyOptions vo;
  vo.scope = cfg.scope;
  vo.limits = limits_of(cfg);
  vo.seed = cfg.seed;
  const auto rep = run_verify(vo);
  Json j = to_json(rep);
  j["scope"] = cfg.scope;
  j["seed"] = cfg.seed;
  j["soft_trends"] = cfg.trends ? to_json(run_soft_trends(vo.limits)) : Json(nullptr);
  emit(out, j);
  return rep.overall() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"qfp: quadratic forms in prime variables, exact and enumerative tools"};
  app.name("qfp");
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  app.add_option("--budget", cfg.budget, "Enumeration budget (default: QFP_BUDGET or 1e9)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads (default: available cores)")->check(CLI::PositiveNumber);

  const std::map<std::string, Box> boxes{{"positive", Box::Positive}, {"symmetric", Box::Symmetric}};
  const std::map<std::string, Weights> weights{{"unit", Weights::Unit}, {"lambda", Weights::Lambda}};

  auto* offdiag = app.add_subcommand("offdiag-rank", "Off-diagonal rank with a witness (I, J)");
  offdiag->add_option("matrix", cfg.matrix_path, "Symmetric integer matrix file")->required();
  offdiag->add_flag("--oracle", cfg.use_oracle, "Use the exhaustive oracle");

  auto* decomp = app.add_subcommand("decompose", "Canonical block form, permutation and quintuple");
  decomp->add_option("matrix", cfg.matrix_path, "Symmetric integer matrix file")->required();

  auto* classify = app.add_subcommand("classify", "Case tag of a rank_off = 2 matrix");
  classify->add_option("matrix", cfg.matrix_path, "Symmetric integer matrix file")->required();

  auto* series = app.add_subcommand("singular-series", "Truncated singular series and local densities");
  series->add_option("matrix", cfg.matrix_path, "Symmetric integer matrix file")->required();
  series->add_option("--t", cfg.t, "Target value")->required();
  series->add_option("--Q", cfg.Q, "Truncation bound")->check(CLI::PositiveNumber);
  series->add_option("--primes", cfg.primes, "Primes for local densities")->delimiter(',');
  series->add_option("--max-exponent", cfg.max_exponent, "Largest k for p^k")->check(CLI::Range(1u, 12u));
  series->add_flag("--paper-normalization", cfg.paper_normalization, "Use 1/phi(q) instead of phi(q)^-n");

  auto* count = app.add_subcommand("count", "Weighted prime-power solutions of x^T A x = t");
  count->add_option("matrix", cfg.matrix_path, "Symmetric integer matrix file")->required();
  count->add_option("--t", cfg.t, "Target value")->required();
  count->add_option("--X", cfg.X, "Box size")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32));

  auto* bilinear = app.add_subcommand("bilinear-count", "#{(x, y) : x^T C y = 0, x^T H = 0} in a box");
  bilinear->add_option("--C", cfg.c_path, "Rational matrix C (n x k)")->required();
  bilinear->add_option("--H", cfg.h_path, "Rational matrix H (n x m)");
  bilinear->add_option("--X", cfg.X, "Box size")->required()->check(CLI::PositiveNumber);
  bilinear->add_option("--box", cfg.box, "positive or symmetric")->transform(CLI::CheckedTransformer(boxes));

  auto* arcs = app.add_subcommand("arcs-report", "Major/minor arc decomposition of r(t)");
  arcs->add_option("matrix", cfg.matrix_path, "Symmetric integer matrix file")->required();
  arcs->add_option("--t", cfg.t, "Target value")->required();
  arcs->add_option("--X", cfg.X, "Box size")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32));
  arcs->add_option("--K", cfg.K, "Arc parameter, P = (log X)^K")->check(CLI::NonNegativeNumber);
  arcs->add_option("--weights", cfg.weights, "unit or lambda")->transform(CLI::CheckedTransformer(weights));
  arcs->add_option("--format", cfg.format, "json or csv (per-q contributions)")->check(CLI::IsMember({"json", "csv"}));
  arcs->add_option_function<std::uint64_t>(
          "--Q", [&](const std::uint64_t& q) { cfg.Q = q, cfg.Q_given = true; },
          "Also report the predicted main term with this series truncation")
      ->check(CLI::PositiveNumber);

  auto* weyl = app.add_subcommand("weyl-scan", "Weyl probe over the minor arcs, CSV alpha,abs");
  weyl->add_option("--d", cfg.d, "Nonzero rational p/q");
  weyl->add_option("--X", cfg.X, "Box size")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32));
  weyl->add_option("--K", cfg.K, "Arc parameter")->check(CLI::NonNegativeNumber);
  weyl->add_option("--grid", cfg.grid, "Grid points on [1/X, 1 + 1/X)")->check(CLI::PositiveNumber);

  auto* experiment = app.add_subcommand("experiment", "Growth ladders, generated instances, paired counts");
  experiment->require_subcommand(1);
  auto* growth = experiment->add_subcommand("growth", "CSV X,count,logX,logCount");
  growth->add_option("--op", cfg.op, "Counted quantity")->check(CLI::IsMember({"bilinear"}));
  growth->add_option("--Xs", cfg.xs, "Box sizes")->delimiter(',');
  growth->add_option("--C", cfg.c_path, "Rational matrix C (default diag(1, -1))");
  growth->add_option("--H", cfg.h_path, "Rational matrix H");
  growth->add_option("--box", cfg.box, "positive or symmetric")->transform(CLI::CheckedTransformer(boxes));
  auto* generate = experiment->add_subcommand("generate", "Seeded instance of a structure form");
  generate->add_option("--kind", cfg.kind, "rank1, case11, case21 or case22")
      ->required()
      ->check(CLI::IsMember({"rank1", "case11", "case21", "case22"}));
  generate->add_option("--n", cfg.n, "Dimension")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  generate->add_option("--seed", cfg.seed, "Seed");
  generate->add_flag("--no-permute", cfg.no_permute, "Keep the canonical index order");
  auto* inject = experiment->add_subcommand("injection", "Sum/difference injection check");
  inject->add_option("--C", cfg.c_path, "Symmetric rational matrix C")->required();
  inject->add_option("--H", cfg.h_path, "Rational matrix H");
  inject->add_option("--X", cfg.X, "Box size")->required()->check(CLI::PositiveNumber);
  auto* paired = experiment->add_subcommand("paired", "Pairs with x^T C x = y^T C y and x^T H = y^T H");
  paired->add_option("--C", cfg.c_path, "Symmetric rational matrix C")->required();
  paired->add_option("--H", cfg.h_path, "Rational matrix H");
  paired->add_option("--X", cfg.X, "Box size")->required()->check(CLI::PositiveNumber);
  paired->add_flag("--weighted", cfg.weighted, "Prime-power coordinates weighted by Lambda");

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("scope", cfg.scope, "all or a module name")
      ->check(CLI::IsMember([] {
        std::vector<std::string> s{"all"};
        for (const auto& m : verify_modules()) s.push_back(m);
        return s;
      }()));
  verify->add_option("--seed", cfg.seed, "Seed");
  verify->add_flag("--trends", cfg.trends, "Also compute the soft trend checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (offdiag->parsed()) return cmd_offdiag(cfg, out);
    if (decomp->parsed()) return cmd_decompose(cfg, out);
    if (classify->parsed()) return cmd_classify(cfg, out);
    if (series->parsed()) return cmd_series(cfg, out);
    if (count->parsed()) return cmd_count(cfg, out);
    if (bilinear->parsed()) return cmd_bilinear(cfg, out);
    if (arcs->parsed()) return cmd_arcs(cfg, out);
    if (weyl->parsed()) return cmd_weyl(cfg, out);
    if (growth->parsed()) return cmd_growth(cfg, out);
    if (generate->parsed()) return cmd_generate(cfg, out);
    if (inject->parsed()) return cmd_injection(cfg, out);
    if (paired->parsed()) return cmd_paired(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << Json{{"error", "internal error"}, {"code", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qfp::tools
