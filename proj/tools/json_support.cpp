#include "json_support.hpp"

#include <cctype>

namespace qfp::tools {

Json to_json(const Rational& r) { return qfp::to_string(r); }

Json to_json(const Integer& z) {
  if (const auto v = to_int64(z)) return *v;
  return qfp::to_string(z);
}

Json to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

namespace {

template <typename M>
Json rows_of(const M& m, std::size_t rows, std::size_t cols) {
  Json out = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <typename T>
Json list_of(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json index_list(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

}  // namespace

Json to_json(const SymmetricIntMatrix& a) { return rows_of(a, a.n(), a.n()); }
Json to_json(const IntegerMatrix& m) { return rows_of(m, m.rows(), m.cols()); }
Json to_json(const RationalMatrix& m) { return rows_of(m, m.rows(), m.cols()); }
Json to_json(const IndexPermutation& p) { return index_list(p.image()); }

Json to_json(const OffDiagReport& r) {
  return Json{{"value", r.value}, {"witness_rows", index_list(r.witness_rows)}, {"witness_cols", index_list(r.witness_cols)}};
}

Json to_json(const Rank1Form& f) {
  return Json{{"perm", to_json(f.perm)}, {"a", to_json(f.a)}, {"xi", list_of(f.xi)}, {"d", list_of(f.d)},
              {"h", to_json(f.h)}};
}

Json to_json(const Rank2Form11& f) {
  return Json{{"perm", to_json(f.perm)}, {"A1", to_json(f.a1)}, {"B", to_json(f.b)},
              {"A2", to_json(f.a2)},     {"C", to_json(f.c)},   {"d", list_of(f.d)}};
}

Json to_json(const Rank2Form21& f) {
  return Json{{"perm", to_json(f.perm)},       {"A1", to_json(f.a1)},        {"gamma1", list_of(f.gamma1)},
              {"gamma2", list_of(f.gamma2)},   {"xi", list_of(f.xi)},        {"a", to_json(f.a)},
              {"v", list_of(f.v)},             {"h", to_json(f.h)},          {"d", list_of(f.d)}};
}

Json to_json(const Rank2Form22& f) {
  return Json{{"perm", to_json(f.perm)}, {"A1", to_json(f.a1)}, {"Gamma", to_json(f.gamma)},
              {"C", to_json(f.c)},       {"H", to_json(f.h)},   {"d", list_of(f.d)},
              {"h_underdetermined", f.h_underdetermined}};
}

Json to_json(const Rank2CaseTag& tag) {
  return Json{{"case", std::string(qfp::to_string(tag.kind))},
              {"perm", to_json(tag.perm)},
              {"rank_b", tag.rank_b},
              {"rank_b1", tag.rank_b1},
              {"rank_b2", tag.rank_b2}};
}

Json form_to_json(const StructureForm& form) {
  static const char* kinds[] = {"rank1", "case11", "case21", "case22"};
  Json out{{"kind", kinds[form.index()]}, {"rank1", nullptr}, {"case11", nullptr}, {"case21", nullptr},
           {"case22", nullptr}};
  std::visit([&](const auto& f) { out[kinds[form.index()]] = to_json(f); }, form);
  return out;
}

Json quintuple_to_json(const StructureForm& form, std::size_t rank_a) {
  Json out{{"applicable", false}, {"found", false}, {"indices", nullptr}, {"reason", nullptr}};
  std::optional<QuintupleSelection> q;
  try {
    if (const auto* f1 = std::get_if<Rank1Form>(&form)) {
      out["applicable"] = true;
      q = find_quintuple_rank1(*f1, rank_a);
    } else if (const auto* f22 = std::get_if<Rank2Form22>(&form)) {
      out["applicable"] = true;
      q = find_quintuple_case22(*f22, rank_a);
    } else {
      out["reason"] = "only defined for rank-1 and case-22 forms";
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoQuintuple) throw;
    out["reason"] = e.what();
  }
  if (q) {
    out["found"] = true;
    Json idx = Json::array();
    for (auto b : q->one_based()) idx.push_back(b);
    out["indices"] = idx;
  }
  return out;
}

Json to_json(const SingularSeriesReport& r, const Integer& t) {
  Json terms = Json::array();
  for (const auto& term : r.terms)
    terms.push_back(Json{{"q", term.q}, {"T", to_json(term.value)}, {"partial_sum", to_json(term.partial_sum)}});
  Json dens = Json::array();
  for (const auto& d : r.local_densities)
    dens.push_back(Json{{"p", d.p}, {"k", d.k}, {"modulus", d.modulus}, {"count", d.count}, {"value", d.value}});
  Json sigma = Json::array();
  for (const auto& s : r.sigma) sigma.push_back(Json{{"p", s.p}, {"k", s.k}, {"sigma", s.sigma}});
  return Json{{"t", to_json(t)},
              {"Q", r.Q},
              {"normalization", r.normalization == SeriesNormalization::PhiPowerN ? "phi_power_n" : "phi_once"},
              {"terms", terms},
              {"partial_sum", to_json(r.partial_sum)},
              {"local_densities", dens},
              {"sigma", sigma},
              {"product_estimate", r.product_estimate}};
}

Json to_json(const CountResult& r, const Integer& t) {
  return Json{{"t", to_json(t)},
              {"X", r.X},
              {"unit_count", r.unit_count},
              {"lambda_weighted", r.lambda_weighted},
              {"prime_only_count", r.prime_only_count}};
}

Json to_json(const InjectionReport& r) { return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}}; }

Json to_json(const MajorArcReport& r, const ArcFamily& arcs, std::optional<double> predicted_main_term) {
  Json per_q = Json::array();
  for (const auto& c : r.per_q) per_q.push_back(Json{{"q", c.q}, {"arcs", c.arcs}, {"integral", to_json(c.integral)}});
  return Json{{"t", r.t},
              {"X", arcs.X},
              {"K", arcs.K},
              {"P", arcs.P},
              {"arc_count", arcs.arcs.size()},
              {"major_measure", to_json(arcs.measure())},
              {"I_major", to_json(r.I_major)},
              {"I_minor", to_json(r.I_minor)},
              {"I_total", r.I_total},
              {"major_share", r.major_share ? Json(*r.major_share) : Json(nullptr)},
              {"residual", r.residual},
              {"gap_measure", r.gap_measure},
              {"predicted_main_term", predicted_main_term ? Json(*predicted_main_term) : Json(nullptr)},
              {"per_q", per_q}};
}

Json to_json(const VerifyReport& r) {
  Json suites = Json::array();
  for (const auto& s : r.suites)
    suites.push_back(Json{{"name", s.name},
                          {"module", s.module},
                          {"passed", s.passed},
                          {"failed", s.failed},
                          {"details", s.details},
                          {"seconds", s.seconds}});
  return Json{{"suites", suites}, {"overall", r.overall() ? "pass" : "fail"}, {"seconds", r.seconds}};
}

Json to_json(const SoftTrendReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"major_share", {{"X_small", r.share_x_small},
                               {"X_large", r.share_x_large},
                               {"share_small", opt(r.share_small)},
                               {"share_large", opt(r.share_large)},
                               {"increases", r.share_increases}}},
              {"weyl_ratio", {{"X_small", r.weyl_x_small},
                              {"X_large", r.weyl_x_large},
                              {"ratio_small", r.weyl_ratio_small},
                              {"ratio_large", r.weyl_ratio_large},
                              {"decreases", r.weyl_decreases}}}};
}

std::string error_phrase(ErrorCode code) {
  std::string out;
  for (char c : qfp::to_string(code)) {
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (!out.empty()) out += ' ';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      out += c;
    }
  }
  return out;
}

Json error_json(const Error& e) {
  return Json{{"error", error_phrase(e.code())}, {"code", std::string(qfp::to_string(e.code()))}, {"message", e.what()}};
}

std::string_view to_string(Box box) { return box == Box::Positive ? "positive" : "symmetric"; }
std::string_view to_string(Weights w) { return w == Weights::Unit ? "unit" : "lambda"; }

}  // namespace qfp::tools
