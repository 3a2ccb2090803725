#include "ucoh/json_io.hpp"

#include <algorithm>

namespace ucoh::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Quantity& q) {
  Json out = Json::array();
  for (const auto& x : q) out.push_back(to_json(x));
  return out;
}

Json to_json(const Vertex& v) { return Json(v); }

Json to_json(const MatrixQ& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(Rational(m(i, j))));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Configuration& eta, const StateSpace& states) {
  Json out = Json::array();
  for (const auto& [x, s] : eta.sites()) out.push_back({{"site", x}, {"state", states.label(s)}});
  return out;
}

Json to_json(const LocalFunction& f) {
  Json table = Json::array();
  for (const auto& q : f.table()) table.push_back(to_json(q));
  return {{"support", f.support()}, {"table", std::move(table)}};
}

Json to_json(const Form& form, bool skip_zero) {
  Json edges = Json::array();
  const auto& w = form.window();
  for (int e = 0; e < static_cast<int>(form.num_edges()); ++e) {
    if (skip_zero && form.at(e).is_zero()) continue;
    const auto& ed = w.edges()[static_cast<std::size_t>(e)];
    edges.push_back({{"o", w.vertex(ed.o)}, {"t", w.vertex(ed.t)}, {"function", to_json(form.at(e))}});
  }
  return {{"radius", form.radius()}, {"edges", std::move(edges)}};
}

Json to_json(const PathSeq& path, const StateSpace& states) {
  Json out = Json::array();
  for (const auto& step : path)
    out.push_back({{"source", to_json(step.source, states)}, {"o", step.o}, {"t", step.t}});
  return out;
}

Json to_json(const ProbePlan& plan) {
  Json out = Json::array();
  for (const auto& p : plan) out.push_back({{"first", p.first}, {"second", p.second}, {"orientation", p.orientation}});
  return out;
}

Json to_json(const PairingTable& table) {
  Json cells = Json::array();
  for (const auto& [key, cell] : table.cells)
    cells.push_back({{"a", to_json(key.first)}, {"b", to_json(key.second)}, {"v", to_json(cell.value)}, {"samples", cell.samples}});
  return {{"cells", std::move(cells)}, {"probes", to_json(table.probes)}};
}

Json to_json(const CocycleReport& r) {
  Json cv = Json::array(), sv = Json::array();
  for (const auto& t : r.cocycle_violations) cv.push_back({to_json(t[0]), to_json(t[1]), to_json(t[2])});
  for (const auto& p : r.symmetry_violations) sv.push_back({to_json(p.first), to_json(p.second)});
  return {{"cocycle", r.cocycle},
          {"symmetric", r.symmetric},
          {"triples_checked", r.triples_checked},
          {"pairs_checked", r.pairs_checked},
          {"cocycle_violations", std::move(cv)},
          {"symmetry_violations", std::move(sv)}};
}

Json to_json(const SplittingResult& r) {
  Json out{{"feasible", r.feasible}, {"method", r.method}};
  if (r.feasible) {
    Json h = Json::array();
    for (const auto& [q, v] : r.h) h.push_back({{"a", to_json(q)}, {"h", to_json(v)}});
    out["h"] = std::move(h);
  } else {
    Json cert = Json::array();
    for (const auto& [key, coeff] : r.certificate)
      cert.push_back({{"a", to_json(key.first)}, {"b", to_json(key.second)}, {"coefficient", to_json(coeff)}});
    out["certificate"] = {{"combination", std::move(cert)}, {"value", to_json(r.certificate_value)}};
  }
  return out;
}

Json to_json(const TransferReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes)
    probes.push_back({{"center", p.center},
                      {"radius", p.radius},
                      {"boundary_components", p.boundary_components},
                      {"finite_components", p.finite_components},
                      {"stable", p.stable}});
  return {{"result", std::string(transferability_name(r.result))},
          {"source", r.source},
          {"reason", r.reason},
          {"probes", std::move(probes)}};
}

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("rational values must be integers or \"p/q\" strings");
}

Vertex vertex_from(const Json& j) {
  if (!j.is_array()) bad("vertex must be an array of integers");
  Vertex v;
  for (const auto& c : j) v.push_back(int_from(c, "vertex coordinate"));
  return v;
}

std::vector<Vertex> vertices_from(const Json& j) {
  if (!j.is_array()) bad("vertex list must be an array");
  std::vector<Vertex> out;
  for (const auto& v : j) out.push_back(vertex_from(v));
  return out;
}

MatrixQ matrix_from(const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.front().size()) : 0;
  MatrixQ m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rational_from(row.at(static_cast<std::size_t>(c)));
  }
  return m;
}

LocaleSpec locale_spec_from(const Json& j) {
  if (j.is_string()) return locale_spec_from(Json{{"kind", j}});
  LocaleSpec s;
  s.kind = field(j, "kind").get<std::string>();
  if (j.contains("d")) s.d = int_from(j["d"], "d");
  if (j.contains("n")) s.n = int_from(j["n"], "n");
  if (j.contains("cell")) s.cell = int_from(j["cell"], "cell");
  if (j.contains("edges"))
    for (const auto& e : j["edges"])
      s.edges.push_back({int_from(field(e, "from"), "from"), int_from(field(e, "to"), "to"), vertex_from(field(e, "offset"))});
  if (j.contains("factors"))
    for (const auto& f : j["factors"]) s.factors.push_back(locale_spec_from(f));
  if (j.contains("ambient")) s.ambient.push_back(locale_spec_from(j["ambient"]));
  if (j.contains("region")) s.region = j["region"].get<std::string>();
  if (j.contains("vertices")) s.vertices = vertices_from(j["vertices"]);
  return s;
}

Interaction interaction_from(const Json& j) {
  if (j.is_string()) return catalog_interaction(j.get<std::string>());
  std::vector<int> labels;
  for (const auto& l : field(j, "states")) labels.push_back(int_from(l, "state label"));
  StateSpace states(labels, int_from(field(j, "base"), "base"));
  std::vector<std::array<int, 4>> entries;
  for (const auto& row : field(j, "table")) {
    if (!row.is_array() || row.size() != 4) bad("interaction table rows are [s1, s2, t1, t2]");
    std::array<int, 4> e{};
    for (std::size_t k = 0; k < 4; ++k) e[k] = states.index_of(int_from(row[k], "state label"));
    entries.push_back(e);
  }
  return Interaction(states, entries, j.value("name", std::string("custom")));
}

ConsvBasis basis_from(const Json& j, const Interaction& phi) {
  MatrixQ rows = matrix_from(j);
  if (rows.rows() > 0 && rows.cols() != phi.num_states()) bad("basis rows must have one entry per state");
  if (rows.rows() == 0) rows = MatrixQ(0, phi.num_states());
  return ConsvBasis{rows};
}

Window window_from(const Json& j, const LocalePtr& locale) {
  const auto shape = field(j, "shape").get<std::string>();
  if (shape == "box") return box(locale, vertex_from(field(j, "lo")), vertex_from(field(j, "hi")));
  if (shape == "ball") return ball(locale, vertex_from(field(j, "center")), int_from(field(j, "radius"), "radius"));
  if (shape == "vertices") return Window(locale, vertices_from(field(j, "vertices")));
  bad("unknown window shape '" + shape + "'");
}

LocalFunction local_function_from(const Json& j, int num_states, int base) {
  const auto support = vertices_from(field(j, "support"));
  std::vector<Rational> table;
  for (const auto& q : field(j, "table")) table.push_back(rational_from(q));
  std::size_t expected = 1;
  for (std::size_t i = 0; i < support.size(); ++i) expected *= static_cast<std::size_t>(num_states);
  if (table.size() != expected) bad("function table has the wrong length");
  // The support may be listed in any order; the table follows that order.
  std::vector<Vertex> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) bad("function support repeats a vertex");
  std::vector<std::size_t> position(support.size());
  for (std::size_t i = 0; i < support.size(); ++i)
    position[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), support[i]) - sorted.begin());
  return LocalFunction::tabulate(sorted, num_states, base, [&](std::span<const int> s) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < support.size(); ++i)
      idx = idx * static_cast<std::size_t>(num_states) + static_cast<std::size_t>(s[position[i]]);
    return table[idx];
  });
}

Form form_from(const Json& j, const WindowPtr& window, int num_states, int base) {
  Form form(window, num_states, base, j.value("radius", 0L));
  for (const auto& e : field(j, "edges")) {
    const auto o = window->index_of(vertex_from(field(e, "o")));
    const auto t = window->index_of(vertex_from(field(e, "t")));
    if (!o || !t) bad("form edge endpoint outside the window");
    const auto idx = window->edge_index(*o, *t);
    if (!idx) bad("form edge is not a window edge");
    form.at(*idx) = local_function_from(field(e, "function"), num_states, base);
  }
  if (!j.contains("radius")) form.set_radius(effective_radius(form));
  return form;
}

ProbePlan probe_plan_from(const Json& j) {
  ProbePlan plan;
  for (const auto& p : j)
    plan.push_back({vertices_from(field(p, "first")), vertices_from(field(p, "second")), p.value("orientation", std::string("unique"))});
  return plan;
}

PairingTable pairing_table_from(const Json& j) {
  PairingTable table;
  for (const auto& c : field(j, "cells")) {
    Quantity a, b;
    for (const auto& x : field(c, "a")) a.push_back(rational_from(x));
    for (const auto& x : field(c, "b")) b.push_back(rational_from(x));
    const std::size_t samples = c.contains("samples") ? c["samples"].get<std::size_t>() : 1;
    table.cells[{a, b}] = PairingCell{rational_from(field(c, "v")), samples};
  }
  if (j.contains("probes")) table.probes = probe_plan_from(j["probes"]);
  return table;
}

GroupAction action_from(const Json& j, const Locale& locale) {
  if (j.is_null()) {
    auto a = locale.default_action();
    if (!a) bad("locale has no default group action; give \"action\"");
    return *a;
  }
  if (j.contains("free_group")) return GroupAction::free_group(int_from(j["free_group"], "free_group"));
  return GroupAction::translations(vertices_from(field(j, "displacements")));
}

}  // namespace ucoh::io
