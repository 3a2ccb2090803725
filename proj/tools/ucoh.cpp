// Batch front-end: one command, one manifest, one JSON report.
#include "ucoh/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace ucoh;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

bool is_property_violation(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_exchangeable:
    case ErrorKind::no_path:
    case ErrorKind::not_closed:
    case ErrorKind::ill_defined_pairing:
    case ErrorKind::cocycle_violated:
    case ErrorKind::splitting_infeasible:
    case ErrorKind::not_invariant:
    case ErrorKind::inconsistent_cocycle:
    case ErrorKind::decomposition_residual:
      return true;
    default:
      return false;
  }
}

struct Report {
  Json body;
  bool ok = true;
};

class Context {
 public:
  Context(Json manifest, std::uint64_t seed, std::optional<std::size_t> budget)
      : m_(std::move(manifest)), seed_(seed) {
    options_.budget = budget ? *budget : m_.value("budget", std::size_t{2'000'000});
    if (options_.budget == 0) throw Error(ErrorKind::invalid_input, "budget must be positive");
    if (m_.contains("max_support")) options_.max_support = m_["max_support"].get<int>();
  }

  const Json& manifest() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  const GraphOptions& options() const { return options_; }

  const LocalePtr& locale() {
    if (!locale_) locale_ = make_locale(io::locale_spec_from(require("locale")));
    return locale_;
  }
  const Interaction& interaction() {
    if (!phi_) phi_ = io::interaction_from(require("interaction"));
    return *phi_;
  }
  const ConsvBasis& basis() {
    if (!basis_) {
      if (m_.contains("basis")) {
        basis_ = io::basis_from(m_["basis"], interaction());
        if (!is_conserved_basis(interaction(), basis_->rows))
          throw Error(ErrorKind::invalid_input, "manifest basis is not conserved by the interaction");
      } else {
        basis_ = solve_conserved_quantities(interaction());
      }
    }
    return *basis_;
  }
  const WindowPtr& window() {
    if (!window_) window_ = std::make_shared<const Window>(io::window_from(require("window"), locale()));
    return window_;
  }
  GroupAction action() { return io::action_from(m_.contains("action") ? m_["action"] : Json(), *locale()); }
  std::vector<Vertex> domain() {
    if (m_.contains("domain")) return io::vertices_from(m_["domain"]);
    return {locale()->origin()};
  }
  LocalFunction function() {
    return io::local_function_from(require("function"), interaction().num_states(), interaction().base());
  }
  Form form() {
    if (m_.contains("form")) return io::form_from(m_["form"], window(), interaction().num_states(), interaction().base());
    if (m_.contains("cocycle"))
      return build_omega_rho(cocycle(), action(), domain(), window(), basis(), interaction());
    throw Error(ErrorKind::invalid_input, "manifest needs \"form\" or \"cocycle\"");
  }
  Cocycle cocycle() { return io::matrix_from(require("cocycle")); }

  const Json& require(const char* key) const {
    if (!m_.contains(key)) throw Error(ErrorKind::invalid_input, std::string("manifest is missing \"") + key + "\"");
    return m_.at(key);
  }

 private:
  Json m_;
  std::uint64_t seed_;
  GraphOptions options_;
  LocalePtr locale_;
  std::optional<Interaction> phi_;
  std::optional<ConsvBasis> basis_;
  WindowPtr window_;
};

/// Function under study for pairing-type commands: a local function, or the potential of a form.
struct Subject {
  ConfigFunction f;
  long radius = 0;
  std::string source;
};

Subject subject(Context& ctx) {
  const auto& phi = ctx.interaction();
  if (ctx.manifest().contains("function")) {
    auto f = std::make_shared<const LocalFunction>(ctx.function());
    const long r = ctx.manifest().value("radius", effective_radius(differential(*f, ctx.window(), phi)));
    return {[f](const Configuration& eta) { return (*f)(eta); }, r, "function"};
  }
  const Form form = ctx.form();
  auto potential = std::make_shared<FiberPotential>(form, phi, ctx.basis(), ctx.window(), ctx.options().budget);
  const long r = ctx.manifest().value("radius", std::max(form.radius(), effective_radius(form)));
  return {[potential](const Configuration& eta) { return (*potential)(eta); }, r, "potential of form"};
}

ProbePlan probe_plan(Context& ctx, long radius) {
  if (ctx.manifest().contains("probes")) return io::probe_plan_from(ctx.manifest()["probes"]);
  return default_probe_plan(*ctx.window(), radius, ctx.manifest().value("ball_radius", 0),
                            ctx.manifest().value("max_pairs", std::size_t{32}));
}

Report cmd_consv(Context& ctx) {
  const auto& phi = ctx.interaction();
  const auto basis = ctx.basis();
  const auto exch = is_exchangeable(phi);
  Report r;
  r.body = {{"interaction", phi.name()},
            {"c_phi", basis.dim()},
            {"basis", io::to_json(basis.rows)},
            {"exchangeable", exch.exchangeable},
            {"simple", is_simple(phi, basis)},
            {"notes", phi.notes()}};
  if (auto cat = catalog_basis(phi.name())) {
    r.body["catalog_basis"] = io::to_json(*cat);
    r.body["catalog_basis_conserved"] = is_conserved_basis(phi, *cat);
    r.ok = is_conserved_basis(phi, *cat);
  }
  return r;
}

Report cmd_validate(Context& ctx) {
  const auto& phi = ctx.interaction();
  const auto v = validate_interaction(phi);
  Report r;
  r.body = {{"strict", v.strict}, {"relaxed", v.relaxed}};
  if (v.strict_witness) r.body["strict_witness"] = {phi.states().label(v.strict_witness->first), phi.states().label(v.strict_witness->second)};
  if (v.relaxed_witness)
    r.body["relaxed_witness"] = {{"pair", {phi.states().label(v.relaxed_witness->first.first), phi.states().label(v.relaxed_witness->first.second)}},
                                 {"reversed_edge", v.relaxed_witness->second}};
  r.ok = v.relaxed;
  if (ctx.manifest().contains("form")) {
    const auto check = validate_form(ctx.form(), phi);
    r.body["form"] = {{"ok", check.ok}, {"violation", check.violation}, {"edge", check.edge}};
    if (check.eta) r.body["form"]["eta"] = io::to_json(*check.eta, phi.states());
    r.ok = r.ok && check.ok;
  }
  return r;
}

Report cmd_irreducible(Context& ctx) {
  const auto& phi = ctx.interaction();
  const auto rep = check_irreducible_quantification(phi, ctx.basis(), ctx.window(), ctx.options());
  Report r;
  r.body = {{"fibers_connected", rep.fibers_connected},
            {"configurations", rep.num_configurations},
            {"components", rep.num_components},
            {"quantity_values", rep.num_quantities},
            {"scope", rep.scope}};
  if (rep.witness)
    r.body["witness"] = {io::to_json(rep.witness->first, phi.states()), io::to_json(rep.witness->second, phi.states())};
  r.ok = rep.fibers_connected;
  return r;
}

Report cmd_expand(Context& ctx) {
  const auto f = ctx.function();
  const auto rec = expand(f, ExpansionMethod::recursion);
  const auto mob = expand(f, ExpansionMethod::mobius);
  bool agree = true, exact = true;
  Json terms = Json::array();
  for (const auto& [mask, term] : rec.terms) {
    agree = agree && term.equals(mob.terms.at(mask));
    exact = exact && term.has_exact_support();
    if (!term.is_zero()) terms.push_back({{"support", rec.subset(mask)}, {"function", io::to_json(term)}});
  }
  const bool reconstructs = rec.reconstruct().equals(f);
  Report r;
  r.body = {{"terms", std::move(terms)}, {"methods_agree", agree}, {"exact_supports", exact}, {"reconstructs", reconstructs}};
  if (ctx.manifest().contains("radius")) {
    const auto cert = uniformity(rec, *ctx.locale(), ctx.manifest()["radius"].get<long>());
    r.body["uniformity"] = {{"radius", cert.radius}, {"max_diameter", cert.max_diameter}, {"passes", cert.passes}, {"scope", cert.scope}};
  }
  r.ok = agree && exact && reconstructs;
  return r;
}

Report cmd_diff(Context& ctx) {
  const auto form = differential(ctx.function(), ctx.window(), ctx.interaction());
  return {{{"form", io::to_json(form)}}, true};
}

Report cmd_closed(Context& ctx) {
  const auto& phi = ctx.interaction();
  const auto rep = is_closed(ctx.form(), phi, ctx.options());
  Report r;
  r.body = {{"closed", rep.closed}, {"configurations", rep.num_configurations}, {"components", rep.num_components}};
  if (!rep.closed)
    r.body["witness"] = {{"path", io::to_json(rep.witness, phi.states())}, {"integral", io::to_json(rep.witness_integral)}};
  r.ok = rep.closed;
  return r;
}

Report cmd_integrate(Context& ctx) {
  const auto& phi = ctx.interaction();
  const auto pot = integrate(ctx.form(), phi, ctx.options());
  Report r;
  r.body = {{"configurations", pot.values.size()}, {"pins", "base configuration for its component, least configuration elsewhere"}};
  constexpr std::size_t kListed = 4096;
  if (pot.values.size() <= kListed) {
    Json values = Json::array();
    for (std::size_t i = 0; i < pot.values.size(); ++i)
      values.push_back({{"configuration", io::to_json(pot.space->to_configuration(i), phi.states())},
                        {"component", pot.component[i]},
                        {"value", io::to_json(pot.values[i])}});
    r.body["values"] = std::move(values);
  }
  return r;
}

Report cmd_pairing(Context& ctx) {
  const auto s = subject(ctx);
  const auto table = compute_pairing(s.f, *ctx.window(), ctx.interaction(), ctx.basis(), s.radius, probe_plan(ctx, s.radius));
  const auto laws = check_cocycle_and_symmetry(table);
  Report r;
  r.body = {{"subject", s.source}, {"form_radius", s.radius}, {"table", io::to_json(table)}, {"laws", io::to_json(laws)}};
  r.ok = laws.cocycle;
  return r;
}

Report cmd_split(Context& ctx) {
  PairingTable table;
  long radius = 0;
  if (ctx.manifest().contains("table")) {
    table = io::pairing_table_from(ctx.manifest()["table"]);
  } else {
    const auto s = subject(ctx);
    radius = s.radius;
    table = compute_pairing(s.f, *ctx.window(), ctx.interaction(), ctx.basis(), s.radius, probe_plan(ctx, s.radius));
  }
  const auto split = solve_splitting(table);
  Report r;
  r.body = {{"table", io::to_json(table)}, {"form_radius", radius}, {"splitting", io::to_json(split)}};
  r.ok = split.feasible;
  return r;
}

Report cmd_uniformize(Context& ctx) {
  const auto s = subject(ctx);
  const auto u = uniformize(s.f, *ctx.window(), ctx.interaction(), ctx.basis(), s.radius, probe_plan(ctx, s.radius));
  Report r;
  r.body = {{"subject", s.source},
            {"form_radius", s.radius},
            {"table", io::to_json(u.table)},
            {"splitting", io::to_json(u.splitting)},
            {"criterion", {{"holds", u.criterion.holds}, {"sets_checked", u.criterion.sets_checked},
                           {"evaluations", u.criterion.evaluations}, {"scope", u.criterion.scope}}},
            {"certificate", {{"radius", u.certificate.radius}, {"max_diameter", u.certificate.max_diameter},
                             {"passes", u.certificate.passes}, {"scope", u.certificate.scope}}}};
  if (u.criterion.witness) r.body["criterion"]["witness"] = io::to_json(*u.criterion.witness, ctx.interaction().states());
  r.ok = u.criterion.holds && u.certificate.passes;
  return r;
}

Report cmd_h0(Context& ctx) {
  const auto& phi = ctx.interaction();
  const auto rep = h0_report(ctx.window(), phi, ctx.basis(), ctx.options());
  Json values = Json::array();
  for (const auto& q : rep.values) values.push_back(io::to_json(q));
  Report r;
  r.body = {{"components", rep.num_components},
            {"configurations", rep.num_configurations},
            {"quantity_values", std::move(values)},
            {"constant_on_components", rep.constant_on_components},
            {"separates_components", rep.separates}};
  if (rep.witness)
    r.body["witness"] = {io::to_json(rep.witness->first, phi.states()), io::to_json(rep.witness->second, phi.states())};
  r.ok = rep.constant_on_components;
  return r;
}

Report cmd_omega_rho(Context& ctx) {
  const auto action = ctx.action();
  const auto domain = ctx.domain();
  const auto form = build_omega_rho(ctx.cocycle(), action, domain, ctx.window(), ctx.basis(), ctx.interaction());
  const long margin = interior_margin(form, action, domain);
  const auto inv = is_shift_invariant(form, action, margin);
  Report r;
  r.body = {{"form", io::to_json(form)}, {"invariant", inv.invariant}, {"margin", margin}, {"edges_checked", inv.edges_checked}};
  r.ok = inv.invariant;
  return r;
}

Report cmd_delta(Context& ctx) {
  const auto res = extract_cocycle(ctx.form(), ctx.interaction(), ctx.basis(), ctx.action());
  Report r;
  r.body = {{"cocycle", io::to_json(res.a)},
            {"center", res.center},
            {"cross_checks", res.cross_checks},
            {"cross_checks_skipped", res.cross_checks_skipped}};
  if (!ctx.manifest().contains("form") && ctx.manifest().contains("cocycle")) {
    r.ok = res.a == ctx.cocycle();
    r.body["matches_input"] = r.ok;
  }
  return r;
}

/// Random local function on {origin, origin + first generator} vanishing at the base configuration.
LocalFunction random_term(std::mt19937_64& rng, const Locale& locale, const GroupAction& action, int n, int base) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  const Vertex o = locale.origin();
  std::vector<Vertex> support{o, action.apply(action.generator(0), o)};
  std::sort(support.begin(), support.end());
  auto f = LocalFunction::tabulate(support, n, base, [&](std::span<const int>) { return Rational(coeff(rng)); });
  f.table()[0] = 0;
  return f;
}

Report cmd_decompose(Context& ctx) {
  const auto& phi = ctx.interaction();
  const auto action = ctx.action();
  const auto domain = ctx.domain();
  std::optional<Cocycle> planted;
  Form form(ctx.window(), phi.num_states(), phi.base(), 0);
  Json synthesis;
  if (ctx.manifest().contains("synthesize")) {
    const auto& syn = ctx.manifest()["synthesize"];
    std::vector<LocalFunction> terms;
    Cocycle a;
    if (syn.value("random", false)) {
      std::mt19937_64 rng(ctx.seed());
      terms.push_back(random_term(rng, *ctx.locale(), action, phi.num_states(), phi.base()));
      std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
      a = Cocycle(ctx.basis().dim(), action.rank());
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = Rational(num(rng), den(rng));
    } else {
      for (const auto& t : syn.at("terms")) terms.push_back(io::local_function_from(t, phi.num_states(), phi.base()));
      a = io::matrix_from(syn.at("cocycle"));
    }
    form = orbit_sum_differential(terms, action, ctx.window(), phi);
    form += build_omega_rho(a, action, domain, ctx.window(), ctx.basis(), phi);
    form.set_radius(effective_radius(form));
    planted = a;
    Json t = Json::array();
    for (const auto& term : terms) t.push_back(io::to_json(term));
    synthesis = {{"terms", std::move(t)}, {"cocycle", io::to_json(a)}, {"seed", ctx.seed()}};
  } else {
    form = ctx.form();
  }
  const auto res = varadhan_decompose(form, phi, ctx.basis(), action, domain);
  Json terms = Json::array();
  for (const auto& t : res.terms) terms.push_back(io::to_json(t));
  Report r;
  r.body = {{"cocycle", io::to_json(res.a)},
            {"terms", std::move(terms)},
            {"residual", io::to_json(res.residual)},
            {"form_radius", res.form_radius},
            {"averaging_diameter", res.averaging_diameter},
            {"margin", res.margin},
            {"edges_checked", res.edges_checked},
            {"center", res.center},
            {"table", io::to_json(res.table)},
            {"splitting", io::to_json(res.splitting)},
            {"averaging", "uniform over translates meeting the fundamental domain"}};
  r.ok = res.residual == 0;
  if (planted) {
    r.body["synthesis"] = synthesis;
    r.body["recovers_cocycle"] = res.a == *planted;
    r.ok = r.ok && res.a == *planted;
  }
  return r;
}

Report cmd_counterexample(Context& ctx) {
  const auto rep = counterexample_z_multispecies(ctx.manifest().value("half_width", 4L));
  Report r;
  r.body = {{"half_width", rep.half_width},
            {"closed", rep.closed},
            {"potential_matches", rep.potential_matches},
            {"pairing_formula_matches", rep.formula_matches},
            {"h_10_01", io::to_json(rep.h_left_right)},
            {"h_01_10", io::to_json(rep.h_right_left)},
            {"h_10_01_swapped_probes", io::to_json(rep.swapped_value)},
            {"asymmetric", rep.asymmetric},
            {"cocycle", rep.cocycle},
            {"splitting_infeasible", rep.splitting_infeasible},
            {"splitting", io::to_json(rep.splitting)},
            {"table", io::to_json(rep.table)}};
  r.ok = rep.closed && rep.potential_matches && rep.formula_matches && rep.asymmetric && rep.cocycle &&
         rep.splitting_infeasible;
  return r;
}

Report cmd_transfer(Context& ctx) {
  ProbeOptions opts;
  const auto& m = ctx.manifest();
  if (m.contains("probe")) {
    opts.r_max = m["probe"].value("r_max", opts.r_max);
    opts.margin = m["probe"].value("margin", opts.margin);
    opts.center_radius = m["probe"].value("center_radius", opts.center_radius);
  }
  const auto rep = classify_transferability(*ctx.locale(), opts, m.value("force_probe", false));
  return {io::to_json(rep), true};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact conserved-quantity cohomology on finite windows"};
  std::string command, manifest_path, out_path;
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;
  const std::map<std::string, Report (*)(Context&)> commands{
      {"consv", cmd_consv},       {"validate", cmd_validate},     {"irreducible", cmd_irreducible},
      {"expand", cmd_expand},     {"diff", cmd_diff},             {"closed", cmd_closed},
      {"integrate", cmd_integrate}, {"pairing", cmd_pairing},     {"split", cmd_split},
      {"uniformize", cmd_uniformize}, {"h0", cmd_h0},             {"omega-rho", cmd_omega_rho},
      {"delta", cmd_delta},       {"decompose", cmd_decompose},   {"counterexample", cmd_counterexample},
      {"transfer", cmd_transfer}};
  std::vector<std::string> names;
  for (const auto& [name, fn] : commands) names.push_back(name);
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("--manifest", manifest_path, "Manifest JSON file");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--seed", seed, "Seed for randomized synthesis");
  app.add_option("--budget", budget, "Configuration budget");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  Json report{{"command", command}};
  int code = kExitOk;
  try {
    Json manifest = Json::object();
    if (!manifest_path.empty()) {
      std::ifstream in(manifest_path);
      if (!in) throw Error(ErrorKind::invalid_input, "cannot read manifest " + manifest_path);
      manifest = Json::parse(in);
      if (!manifest.is_object()) throw Error(ErrorKind::invalid_input, "manifest must be a JSON object");
    } else if (command != "counterexample") {
      throw Error(ErrorKind::invalid_input, "--manifest is required for " + command);
    }
    Context ctx(std::move(manifest), seed, budget);
    const auto result = commands.at(command)(ctx);
    report["result"] = result.body;
    report["ok"] = result.ok;
    code = result.ok ? kExitOk : kExitViolation;
  } catch (const Error& e) {
    report["ok"] = false;
    report["error"] = {{"kind", std::string(kind_name(e.kind()))}, {"message", e.what()}};
    code = is_property_violation(e.kind()) ? kExitViolation : kExitInput;
  } catch (const Json::exception& e) {
    report["ok"] = false;
    report["error"] = {{"kind", "invalid-input"}, {"message", e.what()}};
    code = kExitInput;
  } catch (const std::exception& e) {
    report["ok"] = false;
    report["error"] = {{"kind", "invalid-input"}, {"message", e.what()}};
    code = kExitInput;
  }
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitInput;
    }
    out << text;
  }
  return code;
}
