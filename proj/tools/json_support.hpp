#pragma once

// JSON views of core results. Exact values go out as "p/q" strings, complex
// values as {"re", "im"}; keys depend only on the result type.

#include "qfp/arcs.hpp"
#include "qfp/arith.hpp"
#include "qfp/counting.hpp"
#include "qfp/error.hpp"
#include "qfp/offdiag.hpp"
#include "qfp/structure.hpp"
#include "qfp/verify.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qfp::tools {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const Integer& z);
Json to_json(Complex c);
Json to_json(const SymmetricIntMatrix& a);
Json to_json(const IntegerMatrix& m);
Json to_json(const RationalMatrix& m);
Json to_json(const IndexPermutation& p);

Json to_json(const OffDiagReport& r);
Json to_json(const Rank1Form& f);
Json to_json(const Rank2Form11& f);
Json to_json(const Rank2Form21& f);
Json to_json(const Rank2Form22& f);
Json to_json(const Rank2CaseTag& tag);

/// {"kind", "rank1", "case11", "case21", "case22"}; the unused slots are null.
Json form_to_json(const StructureForm& form);

/// Quintuple search on a decomposed form: {"applicable", "found", "indices",
/// "reason"} with 1-based indices.
Json quintuple_to_json(const StructureForm& form, std::size_t rank_a);

Json to_json(const SingularSeriesReport& r, const Integer& t);
Json to_json(const CountResult& r, const Integer& t);
Json to_json(const InjectionReport& r);
Json to_json(const MajorArcReport& r, const ArcFamily& arcs, std::optional<double> predicted_main_term);
Json to_json(const VerifyReport& r);
Json to_json(const SoftTrendReport& r);

/// "FileNotFound" -> "file not found".
std::string error_phrase(ErrorCode code);
Json error_json(const Error& e);

std::string_view to_string(Box box);
std::string_view to_string(Weights w);

}  // namespace qfp::tools
