#include "odycon/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include <json.hpp>

namespace odycon {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Structural problem in the document; stops ingestion.
struct SchemaError {
  std::string where;
  std::string message;
};

[[noreturn]] void fail(std::string where, std::string message) { throw SchemaError{std::move(where), std::move(message)}; }

std::string join(std::string_view base, std::string_view key) {
  if (base.empty()) return std::string(key);
  return std::string(base) + "." + std::string(key);
}

std::string index(std::string_view base, std::size_t i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

const json& required(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(join(where, key), "missing");
  return *it;
}

const json* optional_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& array_of(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list");
  return v;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<long long>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where, "expected true or false");
  return v.get<bool>();
}

double number_or(const json& obj, const char* key, const std::string& where, double fallback) {
  const json* v = optional_field(obj, key, where);
  return v ? number(*v, join(where, key)) : fallback;
}

std::string text_or(const json& obj, const char* key, const std::string& where, std::string fallback) {
  const json* v = optional_field(obj, key, where);
  return v ? text(*v, join(where, key)) : fallback;
}

/// Currency amount stored as integer minor units.
double currency(const json& v, const std::string& where) {
  return static_cast<double>(integer(v, where)) / kMinorUnits;
}

/// {"a", "m", "b"} object or [a, m, b] list.
ThreePointEstimate triple(const json& v, const std::string& where, Unit unit) {
  auto value = [&](const json& x, const std::string& at) {
    return unit == Unit::currency ? currency(x, at) : number(x, at);
  };
  ThreePointEstimate est;
  est.unit = unit;
  if (v.is_array()) {
    if (v.size() != 3) fail(where, "expected three values [a, m, b]");
    est.a = value(v[0], index(where, 0));
    est.m = value(v[1], index(where, 1));
    est.b = value(v[2], index(where, 2));
  } else if (v.is_object()) {
    est.a = value(required(v, "a", where), join(where, "a"));
    est.m = value(required(v, "m", where), join(where, "m"));
    est.b = value(required(v, "b", where), join(where, "b"));
  } else {
    fail(where, "expected a three-point estimate");
  }
  return est;
}

std::vector<int> int_list(const json& v, const std::string& where) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array_of(v, where).size(); ++i) out.push_back(static_cast<int>(integer(v[i], index(where, i))));
  return out;
}

ObjectiveId objective(const json& v, const std::string& where) {
  const auto name = text(v, where);
  const auto id = parse_objective(name);
  if (!id) fail(where, "unknown objective '" + name + "'");
  return *id;
}

ConstraintKind constraint_kind(const json& v, const std::string& where) {
  const auto k = text(v, where);
  if (k == "<=") return ConstraintKind::less_equal;
  if (k == ">=") return ConstraintKind::greater_equal;
  if (k == "==") return ConstraintKind::equal;
  fail(where, "expected one of <=, ==, >=");
}

/// Objective values of the cost criterion are currency in files.
double objective_value(ObjectiveId id, const json& v, const std::string& where) {
  return id == ObjectiveId::cost ? currency(v, where) : number(v, where);
}

NetworkSpec read_network(const json& doc) {
  NetworkSpec spec;
  const auto& acts = array_of(required(doc, "activities", ""), "activities");
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const std::string at = index("activities", i);
    Activity a;
    a.id = static_cast<ActivityId>(integer(required(acts[i], "id", at), join(at, "id")));
    a.description = text_or(acts[i], "description", at, "");
    a.duration = triple(required(acts[i], "duration", at), join(at, "duration"), Unit::days);
    if (const json* p = optional_field(acts[i], "predecessors", at)) a.predecessors = int_list(*p, join(at, "predecessors"));
    spec.activities.push_back(std::move(a));
  }
  if (const json* risks = optional_field(doc, "risks", "")) {
    for (std::size_t i = 0; i < array_of(*risks, "risks").size(); ++i) {
      const auto& r = (*risks)[i];
      const std::string at = index("risks", i);
      RiskEvent e;
      e.id = static_cast<int>(integer(required(r, "id", at), join(at, "id")));
      e.description = text_or(r, "description", at, "");
      e.impact = triple(required(r, "impact", at), join(at, "impact"), Unit::days);
      e.affected = int_list(required(r, "activities", at), join(at, "activities"));
      e.probability = number(required(r, "probability", at), join(at, "probability"));
      spec.risks.push_back(std::move(e));
    }
  }
  if (const json* factors = optional_field(doc, "shared_factors", "")) {
    for (std::size_t i = 0; i < array_of(*factors, "shared_factors").size(); ++i) {
      const auto& f = (*factors)[i];
      const std::string at = index("shared_factors", i);
      SharedUncertaintyFactor s;
      s.id = static_cast<int>(integer(required(f, "id", at), join(at, "id")));
      s.description = text_or(f, "description", at, "");
      s.deviation = triple(required(f, "deviation", at), join(at, "deviation"), Unit::days);
      s.related = int_list(required(f, "activities", at), join(at, "activities"));
      spec.shared_factors.push_back(std::move(s));
    }
  }
  if (const json* edges = optional_field(doc, "edges", "")) {
    for (std::size_t i = 0; i < array_of(*edges, "edges").size(); ++i) {
      const auto& e = (*edges)[i];
      const std::string at = index("edges", i);
      spec.edge_attributes.push_back({static_cast<ActivityId>(integer(required(e, "from", at), join(at, "from"))),
                                      static_cast<ActivityId>(integer(required(e, "to", at), join(at, "to"))),
                                      number_or(e, "weight", at, 0.0), number_or(e, "capacity", at, 0.0)});
    }
  }
  return spec;
}

std::vector<ControlMeasure> read_measures(const json& doc) {
  std::vector<ControlMeasure> out;
  const auto& list = array_of(required(doc, "measures", ""), "measures");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& m = list[i];
    const std::string at = index("measures", i);
    ControlMeasure c;
    c.id = text(required(m, "id", at), join(at, "id"));
    c.description = text_or(m, "description", at, "");
    c.activity = static_cast<ActivityId>(integer(required(m, "activity", at), join(at, "activity")));
    c.capacity = triple(required(m, "capacity", at), join(at, "capacity"), Unit::days);
    c.cost = triple(required(m, "cost_minor", at), join(at, "cost_minor"), Unit::currency);
    c.nuisance = triple(required(m, "nuisance", at), join(at, "nuisance"), Unit::points);
    c.eta = number_or(m, "eta", at, 0.0);
    out.push_back(std::move(c));
  }
  return out;
}

ControlObjectiveParams read_control_objectives(const json& doc, bool& adaptive) {
  const std::string at = "objectives";
  const json& o = required(doc, "objectives", "");
  ControlObjectiveParams p;
  p.target_duration = number(required(o, "target_duration", at), join(at, "target_duration"));
  if (const json* v = optional_field(o, "penalty_per_day_minor", at)) p.penalty_per_day = currency(*v, join(at, "penalty_per_day_minor"));
  if (const json* v = optional_field(o, "reward_per_day_minor", at)) p.reward_per_day = currency(*v, join(at, "reward_per_day_minor"));
  p.nuisance_penalty_per_day = number_or(o, "nuisance_penalty_per_day", at, 0.0);
  p.nuisance_reward_per_day = number_or(o, "nuisance_reward_per_day", at, 0.0);
  p.nuisance_scale = number_or(o, "nuisance_scale", at, 10.0);
  if (const json* v = optional_field(o, "adaptive_duration_curve", at)) adaptive = boolean(*v, join(at, "adaptive_duration_curve"));
  return p;
}

PlanningCase read_planning(const json& doc) {
  PlanningCase pc;
  const auto& vessels = array_of(required(doc, "vessels", ""), "vessels");
  for (std::size_t i = 0; i < vessels.size(); ++i) {
    const auto& v = vessels[i];
    const std::string at = index("vessels", i);
    VesselSpec s;
    s.name = text(required(v, "name", at), join(at, "name"));
    s.lower = static_cast<int>(integer(required(v, "lower", at), join(at, "lower")));
    s.upper = static_cast<int>(integer(required(v, "upper", at), join(at, "upper")));
    s.deck_space = static_cast<int>(integer(required(v, "deck_space", at), join(at, "deck_space")));
    s.day_rate = currency(required(v, "day_rate_minor", at), join(at, "day_rate_minor"));
    s.utilisation_probability = number(required(v, "utilisation_probability", at), join(at, "utilisation_probability"));
    s.emissions_per_day = number(required(v, "emissions_per_day", at), join(at, "emissions_per_day"));
    s.bunkering = triple(required(v, "bunkering", at), join(at, "bunkering"), Unit::days);
    pc.vessels.push_back(std::move(s));
  }
  const std::string at = "offshore";
  const json& o = required(doc, "offshore", "");
  pc.params.total_anchors = static_cast<int>(integer(required(o, "total_anchors", at), join(at, "total_anchors")));
  pc.params.anchors_per_turbine = static_cast<int>(integer(required(o, "anchors_per_turbine", at), join(at, "anchors_per_turbine")));
  pc.params.anchor_mass = number(required(o, "anchor_mass", at), join(at, "anchor_mass"));
  pc.params.installation = triple(required(o, "installation", at), join(at, "installation"), Unit::days);
  if (const json* risks = optional_field(o, "risks", at)) {
    for (std::size_t i = 0; i < array_of(*risks, join(at, "risks")).size(); ++i) {
      const auto& r = (*risks)[i];
      const std::string rat = index(join(at, "risks"), i);
      OffshoreRisk risk;
      risk.description = text_or(r, "description", rat, "");
      risk.impact = triple(required(r, "impact", rat), join(rat, "impact"), Unit::days);
      const auto op = text(required(r, "operation", rat), join(rat, "operation"));
      if (op == "installation") risk.operation = OffshoreOperation::installation;
      else if (op == "bunkering") risk.operation = OffshoreOperation::bunkering;
      else fail(join(rat, "operation"), "expected installation or bunkering");
      risk.probability = number(required(r, "probability", rat), join(rat, "probability"));
      pc.params.risks.push_back(std::move(risk));
    }
  }
  return pc;
}

WeightScheme read_weights(const json& doc) {
  WeightScheme w;
  const json& section = required(doc, "weights", "");
  const auto& list = array_of(required(section, "stakeholders", "weights"), "weights.stakeholders");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = index("weights.stakeholders", i);
    WeightScheme::Stakeholder s;
    s.name = text(required(list[i], "name", at), join(at, "name"));
    s.weight = number(required(list[i], "weight", at), join(at, "weight"));
    const json& local = required(list[i], "objectives", at);
    if (!local.is_object()) fail(join(at, "objectives"), "expected an object of objective weights");
    for (const auto& [key, value] : local.items()) {
      const auto id = parse_objective(key);
      if (!id) fail(join(at, "objectives"), "unknown objective '" + key + "'");
      s.local.emplace_back(*id, number(value, join(join(at, "objectives"), key)));
    }
    w.stakeholders.push_back(std::move(s));
  }
  return w;
}

void read_curves(const json& doc, PreferenceModel& model, ValidationReport& report) {
  const auto& list = array_of(required(doc, "preference_curves", ""), "preference_curves");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& c = list[i];
    const std::string at = index("preference_curves", i);
    const ObjectiveId id = objective(required(c, "objective", at), join(at, "objective"));
    const auto shape = text(required(c, "shape", at), join(at, "shape"));
    for (const auto& [obj, curve] : model.curves) {
      if (obj == id) fail(join(at, "objective"), "duplicate curve for '" + std::string(objective_key(id)) + "'");
    }
    try {
      if (shape == "beta_pert") {
        const double lo = objective_value(id, required(c, "min", at), join(at, "min"));
        const double mode = objective_value(id, required(c, "mode", at), join(at, "mode"));
        const double hi = objective_value(id, required(c, "max", at), join(at, "max"));
        std::size_t knots = kPertCurveKnots;
        if (const json* k = optional_field(c, "knots", at)) knots = static_cast<std::size_t>(integer(*k, join(at, "knots")));
        model.curves.emplace_back(id, PreferenceCurve::beta_pert(lo, mode, hi, knots));
      } else if (shape == "piecewise_linear") {
        const auto& knots = array_of(required(c, "knots", at), join(at, "knots"));
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < knots.size(); ++k) {
          const std::string kat = index(join(at, "knots"), k);
          if (!knots[k].is_array() || knots[k].size() != 2) fail(kat, "expected [objective value, preference]");
          pts.emplace_back(objective_value(id, knots[k][0], index(kat, 0)), number(knots[k][1], index(kat, 1)));
        }
        model.curves.emplace_back(id, PreferenceCurve::piecewise_linear(std::move(pts)));
      } else {
        fail(join(at, "shape"), "expected beta_pert or piecewise_linear");
      }
    } catch (const ValidationError& e) {
      report.error(at, e.what());
    }
  }
}

void read_constraints(const json& doc, DecisionSpace& space) {
  const json* section = optional_field(doc, "constraints", "");
  if (!section) return;
  const std::string at = "constraints";
  if (const json* v = optional_field(*section, "min_total", at)) space.min_total = static_cast<int>(integer(*v, join(at, "min_total")));
  if (const json* list = optional_field(*section, "linear", at)) {
    for (std::size_t i = 0; i < array_of(*list, join(at, "linear")).size(); ++i) {
      const auto& c = (*list)[i];
      const std::string cat = index(join(at, "linear"), i);
      LinearConstraint lc;
      lc.name = text_or(c, "name", cat, "");
      lc.kind = constraint_kind(required(c, "kind", cat), join(cat, "kind"));
      const auto& coeffs = array_of(required(c, "coefficients", cat), join(cat, "coefficients"));
      for (std::size_t k = 0; k < coeffs.size(); ++k) lc.coefficients.push_back(number(coeffs[k], index(join(cat, "coefficients"), k)));
      lc.rhs = number(required(c, "rhs", cat), join(cat, "rhs"));
      space.linear.push_back(std::move(lc));
    }
  }
  if (const json* list = optional_field(*section, "objective_bounds", at)) {
    for (std::size_t i = 0; i < array_of(*list, join(at, "objective_bounds")).size(); ++i) {
      const auto& c = (*list)[i];
      const std::string cat = index(join(at, "objective_bounds"), i);
      ObjectiveBound b;
      b.name = text_or(c, "name", cat, "");
      b.objective = objective(required(c, "objective", cat), join(cat, "objective"));
      b.kind = constraint_kind(required(c, "kind", cat), join(cat, "kind"));
      b.value = objective_value(b.objective, required(c, "value", cat), join(cat, "value"));
      space.objective_bounds.push_back(std::move(b));
    }
  }
}

GaConfig read_ga(const json& doc) {
  GaConfig ga;
  const json* section = optional_field(doc, "ga", "");
  if (!section) return ga;
  const std::string at = "ga";
  auto count = [&](const char* key, std::size_t& out) {
    if (const json* v = optional_field(*section, key, at)) {
      const long long n = integer(*v, join(at, key));
      if (n < 0) fail(join(at, key), "must be non-negative");
      out = static_cast<std::size_t>(n);
    }
  };
  count("population", ga.population);
  count("generations", ga.generations);
  count("tournament", ga.tournament);
  count("elitism", ga.elitism);
  count("stall_generations", ga.stall_generations);
  count("init_retries", ga.init_retries);
  ga.crossover = number_or(*section, "crossover", at, ga.crossover);
  if (const json* v = optional_field(*section, "mutation", at)) {
    if (v->is_string() && v->get<std::string>() == "auto") {
      ga.mutation = -1.0;
    } else {
      ga.mutation = number(*v, join(at, "mutation"));
      if (!(ga.mutation >= 0.0 && ga.mutation <= 1.0)) fail(join(at, "mutation"), "outside [0, 1]");
    }
  }
  if (const json* v = optional_field(*section, "polish", at)) ga.polish = boolean(*v, join(at, "polish"));
  return ga;
}

std::vector<OptimizationMode> read_soo_modes(const json& doc) {
  std::vector<OptimizationMode> out;
  const json* list = optional_field(doc, "soo_modes", "");
  if (!list) return out;
  for (std::size_t i = 0; i < array_of(*list, "soo_modes").size(); ++i) {
    const auto& m = (*list)[i];
    const std::string at = index("soo_modes", i);
    auto mode = OptimizationMode::soo(objective(required(m, "objective", at), join(at, "objective")));
    const auto dir = text_or(m, "direction", at, "minimize");
    if (dir == "maximize") mode.direction = OptimizationMode::Direction::maximize;
    else if (dir != "minimize") fail(join(at, "direction"), "expected minimize or maximize");
    if (const json* p = optional_field(m, "penalties", at)) {
      if (!p->is_object()) fail(join(at, "penalties"), "expected an object");
      for (const auto& [key, value] : p->items()) {
        const std::string pat = join(join(at, "penalties"), key);
        if (key.ends_with("_minor")) mode.penalties.emplace_back(key.substr(0, key.size() - 6), currency(value, pat));
        else mode.penalties.emplace_back(key, number(value, pat));
      }
    }
    out.push_back(std::move(mode));
  }
  return out;
}

void read_mcs(const json& doc, Scenario& s) {
  const json* section = optional_field(doc, "mcs", "");
  if (!section) return;
  const std::string at = "mcs";
  if (const json* v = optional_field(*section, "iterations", at)) {
    const long long n = integer(*v, join(at, "iterations"));
    if (n < 1) fail(join(at, "iterations"), "must be at least 1");
    s.iterations = static_cast<std::size_t>(n);
  }
  if (const json* v = optional_field(*section, "seed", at)) {
    if (!v->is_number_unsigned()) fail(join(at, "seed"), "expected a non-negative integer");
    s.seed = v->get<std::uint64_t>();
  }
  if (const json* v = optional_field(*section, "percentiles", at)) {
    s.percentiles.clear();
    for (std::size_t i = 0; i < array_of(*v, join(at, "percentiles")).size(); ++i) {
      s.percentiles.push_back(number((*v)[i], index(join(at, "percentiles"), i)));
    }
  }
}

const std::set<std::string> kTopLevelKeys = {
    "schema_version", "meta",      "activities",  "risks",          "shared_factors", "edges",
    "measures",       "objectives", "vessels",    "offshore",       "preference_curves", "weights",
    "constraints",    "ga",        "soo_modes",   "mcs"};

std::optional<Scenario> build(const json& doc, ValidationReport& report) {
  if (!doc.is_object()) fail("", "scenario document must be an object");
  const json& version = required(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kScenarioSchemaVersion) {
    fail("schema_version", "unsupported schema version, expected " + std::to_string(kScenarioSchemaVersion));
  }
  for (const auto& [key, value] : doc.items()) {
    if (!kTopLevelKeys.count(key)) report.warning(key, "unknown section ignored");
  }
  const json& meta = required(doc, "meta", "");
  const auto kind = text(required(meta, "kind", "meta"), "meta.kind");
  if (kind != "control" && kind != "planning") fail("meta.kind", "expected control or planning");

  bool usable = true;
  std::optional<ProjectNetwork> net;
  std::vector<ControlMeasure> measures;
  ControlObjectiveParams control_params;
  bool adaptive = true;
  PlanningCase planning;

  if (kind == "control") {
    NetworkSpec spec = read_network(doc);
    measures = read_measures(doc);
    control_params = read_control_objectives(doc, adaptive);
    const auto net_report = validate_network(spec);
    report.merge(net_report);
    if (net_report.ok()) {
      net = ProjectNetwork::compile(std::move(spec));
      report.merge(validate_measures(*net, measures));
    } else {
      usable = false;
    }
  } else {
    planning = read_planning(doc);
    report.merge(validate_offshore(planning.params, planning.vessels));
  }

  Scenario s;
  s.name = text_or(meta, "name", "meta", "");
  s.weights = read_weights(doc);
  s.preferences.criteria = effective_criteria(s.weights);
  read_curves(doc, s.preferences, report);

  if (kind == "control") {
    std::vector<std::string> ids;
    for (const auto& m : measures) ids.push_back(m.id);
    s.space = DecisionSpace::binary_space(std::move(ids));
  } else {
    for (const auto& v : planning.vessels) {
      s.space.names.push_back(v.name);
      s.space.lower.push_back(v.lower);
      s.space.upper.push_back(v.upper);
    }
    s.space.min_total = 1;
  }
  read_constraints(doc, s.space);
  s.ga = read_ga(doc);
  s.soo_modes = read_soo_modes(doc);
  read_mcs(doc, s);

  if (!usable) return std::nullopt;
  if (kind == "control") {
    s.payload = ControlCase{std::move(*net), std::move(measures), control_params, adaptive};
  } else {
    s.payload = std::move(planning);
  }
  // Weight and curve problems are already in the report from ingestion.
  ValidationReport cross = validate_scenario(s);
  for (auto& issue : cross.issues) {
    const bool seen = std::any_of(report.issues.begin(), report.issues.end(), [&](const ValidationIssue& r) {
      return r.where == issue.where && r.message == issue.message;
    });
    if (!seen) report.issues.push_back(std::move(issue));
  }
  for (const auto& issue : report.issues) {
    if (issue.severity == ValidationIssue::Severity::warning) s.warnings.push_back(issue.where + ": " + issue.message);
  }
  if (!report.ok()) return std::nullopt;
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_double(std::string_view field, std::size_t line, std::string_view column) {
  if (field.empty()) return NAN;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ValidationError("records line " + std::to_string(line) + ", column " + std::string(column) +
                          ": not a number '" + std::string(field) + "'");
  }
  return v;
}

long long parse_integer(std::string_view field, std::size_t line, std::string_view column) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ValidationError("records line " + std::to_string(line) + ", column " + std::string(column) +
                          ": not an integer '" + std::string(field) + "'");
  }
  return v;
}

double to_minor(double major) { return std::isnan(major) ? major : std::round(major * kMinorUnits); }

bool is_currency(ObjectiveId id) { return id == ObjectiveId::cost; }

}  // namespace

ScenarioLoad parse_scenario(std::string_view text) {
  ScenarioLoad out;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    out.report.error("document", std::string("parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
    return out;
  }
  try {
    out.scenario = build(doc, out.report);
  } catch (const SchemaError& e) {
    out.report.error(e.where.empty() ? "document" : e.where, e.message);
    out.scenario.reset();
  } catch (const ValidationError& e) {
    out.report.error("document", e.what());
    out.scenario.reset();
  }
  return out;
}

ScenarioLoad load_scenario(const std::filesystem::path& path) {
  std::string content;
  try {
    content = read_text_file(path);
  } catch (const std::exception& e) {
    ScenarioLoad out;
    out.report.error(path.string(), e.what());
    return out;
  }
  return parse_scenario(content);
}

Scenario load_scenario_or_throw(const std::filesystem::path& path) {
  auto load = load_scenario(path);
  if (!load.scenario) throw ValidationError("invalid scenario " + path.string() + ":\n" + load.report.to_string());
  return std::move(*load.scenario);
}

std::string format_number(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

RecordsTable make_records_table(const Scenario& scenario, const OptimizationMode& mode,
                                const std::vector<SimulationRecord>& records) {
  RecordsTable table;
  table.objectives = scenario.objectives();
  for (std::size_t i = 0; i < scenario.space.size(); ++i) table.variables.push_back("x" + std::to_string(i + 1));
  const bool score_is_currency = mode.kind == OptimizationMode::Kind::single && is_currency(mode.objective);
  table.records.reserve(records.size());
  for (const auto& r : records) {
    SimulationRecord f = r;
    if (score_is_currency) f.score = to_minor(r.score);
    f.objectives = ObjectiveVector{};
    for (ObjectiveId id : table.objectives) {
      f.objectives.set(id, is_currency(id) ? to_minor(r.objectives[id]) : r.objectives[id]);
    }
    f.vessel_cost = to_minor(r.vessel_cost);
    table.records.push_back(std::move(f));
  }
  return table;
}

std::string format_records_table(const RecordsTable& table) {
  const std::size_t n = table.variables.size();
  bool has_reductions = false;
  for (const auto& r : table.records) has_reductions |= !r.applied_reductions.empty();

  std::string out = "iteration,optimized,score";
  for (ObjectiveId id : table.objectives) (out += ',') += objective_label(id);
  out += ",unmitigated_duration,vessel_cost";
  for (std::size_t i = 0; i < n; ++i) out += ",x" + std::to_string(i + 1);
  if (has_reductions) {
    for (std::size_t i = 0; i < n; ++i) out += ",r" + std::to_string(i + 1);
  }
  out += ",critical_path\n";

  for (const auto& r : table.records) {
    out += std::to_string(r.iteration);
    out += r.optimized ? ",1," : ",0,";
    out += format_number(r.score);
    for (ObjectiveId id : table.objectives) (out += ',') += format_number(r.objectives[id]);
    (out += ',') += format_number(r.unmitigated_duration);
    (out += ',') += format_number(r.vessel_cost);
    for (std::size_t i = 0; i < n; ++i) (out += ',') += std::to_string(r.decision[i]);
    if (has_reductions) {
      for (std::size_t i = 0; i < n; ++i) {
        (out += ',') += i < r.applied_reductions.size() ? format_number(r.applied_reductions[i]) : "";
      }
    }
    out += ',';
    for (std::size_t k = 0; k < r.critical_path.size(); ++k) {
      if (k) out += ';';
      out += std::to_string(r.critical_path[k]);
    }
    out += '\n';
  }
  return out;
}

RecordsTable parse_records_table(std::string_view text) {
  RecordsTable table;
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  if (lines.empty()) throw ValidationError("records table is empty");

  const auto header = split(lines[0], ',');
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t c = 0; c < header.size(); ++c) column.emplace(std::string(header[c]), c);
  for (const char* name : {"iteration", "optimized", "score", "unmitigated_duration", "vessel_cost", "critical_path"}) {
    if (!column.count(name)) throw ValidationError(std::string("records header lacks column '") + name + "'");
  }
  std::vector<std::pair<ObjectiveId, std::size_t>> objective_columns;
  std::vector<std::size_t> x_columns, r_columns;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string_view h = header[c];
    if (h.starts_with("O_")) {
      const auto id = parse_objective(h);
      if (!id) throw ValidationError("records header has unknown objective column '" + std::string(h) + "'");
      objective_columns.emplace_back(*id, c);
      table.objectives.push_back(*id);
    }
  }
  for (std::size_t i = 1;; ++i) {
    const auto it = column.find("x" + std::to_string(i));
    if (it == column.end()) break;
    x_columns.push_back(it->second);
    table.variables.push_back("x" + std::to_string(i));
  }
  for (std::size_t i = 1; i <= x_columns.size(); ++i) {
    const auto it = column.find("r" + std::to_string(i));
    if (it == column.end()) break;
    r_columns.push_back(it->second);
  }
  if (!r_columns.empty() && r_columns.size() != x_columns.size()) throw ValidationError("records header has incomplete r columns");

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const auto f = split(lines[li], ',');
    if (f.size() != header.size()) {
      throw ValidationError("records line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(f.size()));
    }
    SimulationRecord r;
    r.iteration = static_cast<std::size_t>(parse_integer(f[column["iteration"]], line_no, "iteration"));
    const auto opt = parse_integer(f[column["optimized"]], line_no, "optimized");
    if (opt != 0 && opt != 1) throw ValidationError("records line " + std::to_string(line_no) + ": optimized must be 0 or 1");
    r.optimized = opt == 1;
    r.score = parse_double(f[column["score"]], line_no, "score");
    for (const auto& [id, c] : objective_columns) {
      const double v = parse_double(f[c], line_no, header[c]);
      if (std::isnan(v)) throw ValidationError("records line " + std::to_string(line_no) + ": missing " + std::string(header[c]));
      r.objectives.set(id, v);
    }
    r.unmitigated_duration = parse_double(f[column["unmitigated_duration"]], line_no, "unmitigated_duration");
    r.vessel_cost = parse_double(f[column["vessel_cost"]], line_no, "vessel_cost");
    for (std::size_t c : x_columns) r.decision.values.push_back(static_cast<int>(parse_integer(f[c], line_no, header[c])));
    for (std::size_t c : r_columns) r.applied_reductions.push_back(parse_double(f[c], line_no, header[c]));
    const auto cp = f[column["critical_path"]];
    if (!cp.empty()) {
      for (auto id : split(cp, ';')) r.critical_path.push_back(static_cast<ActivityId>(parse_integer(id, line_no, "critical_path")));
    }
    table.records.push_back(std::move(r));
  }
  if (table.records.empty()) throw ValidationError("records table has no rows");
  return table;
}

RecordsTable read_records_table(const std::filesystem::path& path) { return parse_records_table(read_text_file(path)); }

PercentileSummary table_percentiles(const RecordsTable& table, const std::vector<double>& levels) {
  return percentiles(table.records, levels, table.objectives);
}

std::vector<std::pair<std::string, double>> penalties_in_file_units(const OptimizationMode& mode) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [name, value] : mode.penalties) {
    if (name == "penalty_per_day" || name == "reward_per_day") out.emplace_back(name + "_minor", to_minor(value));
    else out.emplace_back(name, value);
  }
  return out;
}

std::string format_summary(const RecordsTable& table, const SummaryInfo& info) {
  ordered_json doc;
  doc["schema_version"] = kSummarySchemaVersion;
  doc["scenario"] = info.scenario;
  doc["kind"] = info.kind;
  doc["mode"] = info.mode;
  doc["seed"] = info.seed;
  doc["iterations"] = table.records.size();

  std::size_t optimized = 0;
  for (const auto& r : table.records) optimized += r.optimized;
  doc["optimized_iterations"] = optimized;
  if (info.kind == "control") doc["no_delay_iterations"] = table.records.size() - optimized;

  ordered_json penalties = ordered_json::object();
  for (const auto& [name, value] : info.penalties) penalties[name] = value;
  doc["penalties"] = penalties;

  ordered_json units = ordered_json::object();
  for (ObjectiveId id : table.objectives) {
    units[std::string(objective_label(id))] = is_currency(id) ? "minor currency units" : std::string(objective_unit(id));
  }
  doc["units"] = units;

  const auto pct = table_percentiles(table, info.levels);
  ordered_json p;
  p["levels"] = info.levels;
  for (const auto& [id, values] : pct.values) p[std::string(objective_label(id))] = values;
  doc["percentiles"] = p;

  const auto crit = criticality(table.records, table.variables);
  ordered_json vars = ordered_json::array();
  for (std::size_t i = 0; i < crit.names.size(); ++i) {
    ordered_json v;
    v["column"] = crit.names[i];
    if (i < info.variable_names.size()) v["name"] = info.variable_names[i];
    ordered_json freq = ordered_json::object();
    for (const auto& [value, fraction] : crit.marginals[i]) freq[std::to_string(value)] = fraction;
    v["frequencies"] = freq;
    vars.push_back(v);
  }
  ordered_json combos = ordered_json::array();
  for (const auto& [x, fraction] : crit.top(info.top_k)) {
    ordered_json c;
    c["vector"] = x.to_string();
    c["fraction"] = fraction;
    combos.push_back(c);
  }
  doc["criticality"] = {{"variables", vars}, {"distinct_combinations", crit.combinations.size()}, {"top", combos}};
  doc["warnings"] = info.warnings;
  return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace odycon
