// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/catalog.hpp"
#include "ancl/classify.hpp"
#include "ancl/operators.hpp"
#include "ancl/truncate.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace ancl::io {

using Json = nlohmann::json;

// Readers raise ParseError (or CertificationError for tails that fail to
// certify) with the JSON pointer of the offending value in the message.
Tail tail_from_json(const Json& j, const std::string& at = "");
SpectralProfile profile_from_json(const Json& j, const std::string& at = "");
IndexMap map_from_json(const Json& j, const std::string& at = "");
WeightSeq weights_from_json(const Json& j, const std::string& at = "");
ShiftedDiagonal operator_from_json(const Json& j, const std::string& at = "");

using Input = std::variant<ShiftedDiagonal, SpectralProfile>;
/// Operator when the document has a "map" member, profile otherwise.
Input input_from_json(const Json& j);
/// Parses text; syntax errors become ParseError.
Json parse_text(const std::string& text);

Json to_json(Complex z);
Json to_json(const Multiplicity& m);
Json to_json(const Tail& t);
Json to_json(const SpectralProfile& p);
Json to_json(const IndexMap& m);
Json to_json(const WeightSeq& w);
Json to_json(const ShiftedDiagonal& t);

Json to_json(const SpectrumReport& r);
Json to_json(const Certificate& c);
Json to_json(const MembershipReport& r);
Json to_json(const PositiveDecomposition& d);
Json to_json(const Triple& t);
Json to_json(const AlphaWK& s);
Json to_json(const FredholmReport& f);
Json to_json(const TwoOfThree& t);
Json to_json(const NormalStructure& s);
Json to_json(const ConvergenceStudy& s);

} // namespace ancl::io
