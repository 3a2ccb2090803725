// JSON encodings of the library's inputs and reports. Rationals travel as "p/q" strings.
#pragma once

#include "ucoh/decomposition.hpp"

#include <json.hpp>

namespace ucoh::io {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const Quantity& q);
Json to_json(const Vertex& v);
Json to_json(const MatrixQ& m);
Json to_json(const Configuration& eta, const StateSpace& states);
Json to_json(const LocalFunction& f);
Json to_json(const Form& form, bool skip_zero = true);
Json to_json(const PathSeq& path, const StateSpace& states);
Json to_json(const ProbePlan& plan);
Json to_json(const PairingTable& table);
Json to_json(const CocycleReport& report);
Json to_json(const SplittingResult& result);
Json to_json(const TransferReport& report);

Rational rational_from(const Json& j);
Vertex vertex_from(const Json& j);
std::vector<Vertex> vertices_from(const Json& j);
MatrixQ matrix_from(const Json& j);
LocaleSpec locale_spec_from(const Json& j);
/// A catalog name, or {"name", "states", "base", "table": [[s1, s2, t1, t2], ...]} in state labels.
Interaction interaction_from(const Json& j);
/// Rows of rationals indexed by state index.
ConsvBasis basis_from(const Json& j, const Interaction& phi);
/// {"shape": "box", "lo", "hi"} | {"shape": "ball", "center", "radius"} | {"shape": "vertices", "vertices"}.
Window window_from(const Json& j, const LocalePtr& locale);
/// {"support": [...], "table": [...]} with the table in lexicographic order of state indices.
LocalFunction local_function_from(const Json& j, int num_states, int base);
/// {"radius": R, "edges": [{"o", "t", "function"}]}; unlisted window edges are zero.
Form form_from(const Json& j, const WindowPtr& window, int num_states, int base);
ProbePlan probe_plan_from(const Json& j);
PairingTable pairing_table_from(const Json& j);
GroupAction action_from(const Json& j, const Locale& locale);

}  // namespace ucoh::io
