#pragma once

// Mamdani fuzzy inference over piecewise-linear membership functions.
//
// An InferenceEngine is immutable once constructed; every query is a pure
// function of (engine, inputs), so one engine may be shared across threads.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fgdm/error.hpp"

namespace fgdm::fuzzy {

inline constexpr double kDomainTolerance = 1e-9;

enum class Shape { triangular, trapezoidal };

class MembershipFunction {
 public:
  static MembershipFunction triangular(double a, double b, double c) {
    return MembershipFunction(Shape::triangular, {a, b, b, c});
  }

  static MembershipFunction trapezoidal(double a, double b, double c, double d) {
    return MembershipFunction(Shape::trapezoidal, {a, b, c, d});
  }

  double operator()(double x) const {
    const auto [a, b, c, d] = corners_;
    if (x >= b && x <= c) return 1.0;
    if (x > a && x < b) return (x - a) / (b - a);
    if (x > c && x < d) return (d - x) / (d - c);
    return 0.0;
  }

  Shape shape() const { return shape_; }

  // 3 abscissas for a triangle, 4 for a trapezoid.
  std::vector<double> points() const {
    if (shape_ == Shape::triangular) return {corners_[0], corners_[1], corners_[3]};
    return {corners_.begin(), corners_.end()};
  }

  double support_lo() const { return corners_[0]; }
  double support_hi() const { return corners_[3]; }
  const std::array<double, 4>& corners() const { return corners_; }

  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

 private:
  MembershipFunction(Shape shape, std::array<double, 4> corners)
      : shape_(shape), corners_(corners) {
    for (double p : corners_) {
      if (!std::isfinite(p)) fail(ErrorCode::validation, "membership breakpoint is not finite");
    }
    if (!std::is_sorted(corners_.begin(), corners_.end())) {
      fail(ErrorCode::validation, "membership breakpoints must be non-decreasing");
    }
  }

  Shape shape_;
  std::array<double, 4> corners_;
};

struct Term {
  std::string label;
  MembershipFunction mf;
};

class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms)
      : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
    validate();
  }

  const std::string& name() const { return name_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<Term>& terms() const { return terms_; }

  std::optional<std::size_t> term_index(std::string_view label) const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].label == label) return i;
    }
    return std::nullopt;
  }

  double clamp(double x) const { return std::min(hi_, std::max(lo_, x)); }

 private:
  void validate() const {
    if (name_.empty()) fail(ErrorCode::validation, "variable name is empty");
    if (!(lo_ < hi_)) fail(ErrorCode::validation, "variable '" + name_ + "' has an empty domain");
    if (terms_.empty()) fail(ErrorCode::validation, "variable '" + name_ + "' has no terms");
    std::set<std::string> seen;
    std::vector<double> probes{lo_, hi_};
    for (const auto& t : terms_) {
      if (!seen.insert(t.label).second) {
        fail(ErrorCode::validation, "variable '" + name_ + "' repeats term '" + t.label + "'");
      }
      if (t.mf.support_lo() < lo_ - kDomainTolerance || t.mf.support_hi() > hi_ + kDomainTolerance) {
        fail(ErrorCode::validation,
             "term '" + t.label + "' of variable '" + name_ + "' leaves the domain");
      }
      for (double p : t.mf.corners()) probes.push_back(p);
    }
    // Every membership function is linear between consecutive breakpoints, so
    // checking the breakpoints and the midpoints between them is exhaustive.
    // The domain ends may be left uncovered here; see require_covered.
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    const std::size_t n = probes.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (probes[i] > lo_ && probes[i] < hi_) require_covered(probes[i]);
      if (i + 1 < n) require_covered(0.5 * (probes[i] + probes[i + 1]));
    }
  }

 public:
  bool covers(double x) const {
    return std::any_of(terms_.begin(), terms_.end(), [x](const Term& t) { return t.mf(x) > 0.0; });
  }

  void require_covered(double x) const {
    if (x < lo_ || x > hi_ || covers(x)) return;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    fail(ErrorCode::validation, "variable '" + name_ + "' has no term covering x=" + buf);
  }

 private:
  std::string name_;
  double lo_;
  double hi_;
  std::vector<Term> terms_;
};

using Degrees = std::map<std::string, double>;

/// Clamps x into the variable's domain.
inline double clamp_input(const LinguisticVariable& var, double x) { return var.clamp(x); }

/// Membership degree of x in every term of the variable.
inline Degrees fuzzify(const LinguisticVariable& var, double x) {
  if (!(x >= var.lo() - kDomainTolerance && x <= var.hi() + kDomainTolerance)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%g outside [%g, %g]", x, var.lo(), var.hi());
    fail(ErrorCode::domain, "variable '" + var.name() + "': " + buf);
  }
  x = var.clamp(x);
  Degrees out;
  for (const auto& t : var.terms()) out[t.label] = t.mf(x);
  return out;
}

struct FuzzyRule {
  std::vector<std::pair<std::string, std::string>> antecedents;  // (variable, term)
  std::pair<std::string, std::string> consequent;
};

enum class Conjunction { min, product };
enum class Accumulation { max, bounded_sum };
enum class Implication { clip, scale };
enum class Defuzzifier { centroid, mean_of_maximum };

// Defaults are the classical Mamdani configuration.
struct Operators {
  Conjunction conjunction = Conjunction::min;
  Accumulation accumulation = Accumulation::max;
  Implication implication = Implication::clip;
  Defuzzifier defuzzifier = Defuzzifier::centroid;
  int resolution = 2001;
};

class InferenceEngine {
 public:
  InferenceEngine(std::vector<LinguisticVariable> inputs, LinguisticVariable output,
                  std::vector<FuzzyRule> rules, Operators ops = {})
      : inputs_(std::move(inputs)), output_(std::move(output)), rules_(std::move(rules)), ops_(ops) {
    compile();
  }

  const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
  const LinguisticVariable& output() const { return output_; }
  const std::vector<FuzzyRule>& rules() const { return rules_; }
  const Operators& operators() const { return ops_; }

  const LinguisticVariable& input(std::string_view name) const {
    return inputs_[input_index(name)];
  }

  // Copy of this engine with a different defuzzifier.
  InferenceEngine with_defuzzifier(Defuzzifier d) const {
    InferenceEngine copy = *this;
    copy.ops_.defuzzifier = d;
    return copy;
  }

  /// Firing degree per output term; terms no rule reaches are reported as 0.
  Degrees evaluate_rules(const std::map<std::string, double>& crisp) const {
    std::vector<std::vector<double>> mu(inputs_.size());
    std::vector<bool> seen(inputs_.size(), false);
    for (const auto& [name, value] : crisp) {
      const std::size_t v = input_index(name);
      seen[v] = true;
      const auto& var = inputs_[v];
      const double x = var.clamp(value);
      mu[v].reserve(var.terms().size());
      for (const auto& t : var.terms()) mu[v].push_back(t.mf(x));
    }
    for (std::size_t v = 0; v < inputs_.size(); ++v) {
      if (!seen[v]) fail(ErrorCode::validation, "missing crisp value for '" + inputs_[v].name() + "'");
    }

    std::vector<double> degree(output_.terms().size(), 0.0);
    for (const auto& rule : compiled_) {
      double w = 1.0;
      for (std::size_t v = 0; v < rule.terms.size(); ++v) {
        const double m = mu[v][rule.terms[v]];
        w = (ops_.conjunction == Conjunction::min) ? std::min(w, m) : w * m;
      }
      double& d = degree[rule.consequent];
      d = (ops_.accumulation == Accumulation::max) ? std::max(d, w) : std::min(1.0, d + w);
    }

    Degrees out;
    for (std::size_t k = 0; k < degree.size(); ++k) out[output_.terms()[k].label] = degree[k];
    return out;
  }

  /// Aggregate membership of the implied output set at x.
  double aggregate(const std::vector<double>& degree, double x) const {
    double m = 0.0;
    const auto& terms = output_.terms();
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (degree[k] <= 0.0) continue;
      const double t = terms[k].mf(x);
      const double implied =
          (ops_.implication == Implication::clip) ? std::min(degree[k], t) : degree[k] * t;
      m = std::max(m, implied);
    }
    return m;
  }

  double defuzzify(const Degrees& activations) const {
    std::vector<double> degree(output_.terms().size(), 0.0);
    bool any = false;
    for (const auto& [label, value] : activations) {
      const auto k = output_.term_index(label);
      if (!k) fail(ErrorCode::validation, "unknown output term '" + label + "'");
      if (!(value >= 0.0 && value <= 1.0)) {
        fail(ErrorCode::domain, "activation of '" + label + "' outside [0, 1]");
      }
      degree[*k] = value;
      any = any || value > 0.0;
    }
    if (!any) fail(ErrorCode::no_rule_fired, "no rule fired");

    const int n = ops_.resolution;
    const double lo = output_.lo();
    const double step = (output_.hi() - lo) / n;

    if (ops_.defuzzifier == Defuzzifier::centroid) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = lo + (i + 0.5) * step;
        const double m = aggregate(degree, x);
        num += x * m;
        den += m;
      }
      if (den <= 0.0) fail(ErrorCode::no_rule_fired, "no rule fired");
      return output_.clamp(num / den);
    }

    std::vector<double> samples(static_cast<std::size_t>(n));
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
      samples[i] = aggregate(degree, lo + (i + 0.5) * step);
      peak = std::max(peak, samples[i]);
    }
    if (peak <= 0.0) fail(ErrorCode::no_rule_fired, "no rule fired");
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i) {
      if (samples[i] >= peak - 1e-12) {
        sum += lo + (i + 0.5) * step;
        ++count;
      }
    }
    return output_.clamp(sum / count);
  }

  double infer(const std::map<std::string, double>& crisp) const {
    return defuzzify(evaluate_rules(crisp));
  }

 private:
  struct CompiledRule {
    std::vector<std::size_t> terms;  // term index per input variable
    std::size_t consequent;
  };

  std::size_t input_index(std::string_view name) const {
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      if (inputs_[i].name() == name) return i;
    }
    fail(ErrorCode::validation, "unknown input variable '" + std::string(name) + "'");
  }

  void compile() {
    if (inputs_.empty()) fail(ErrorCode::validation, "engine has no input variables");
    if (rules_.empty()) fail(ErrorCode::validation, "engine has no rules");
    if (ops_.resolution < 1) fail(ErrorCode::validation, "integration resolution must be positive");
    std::set<std::string> names;
    for (const auto& v : inputs_) {
      if (!names.insert(v.name()).second) fail(ErrorCode::validation, "duplicate variable '" + v.name() + "'");
      // Clamped inputs land on the domain ends, so those must fire something.
      v.require_covered(v.lo());
      v.require_covered(v.hi());
    }
    if (names.count(output_.name())) {
      fail(ErrorCode::validation, "output variable '" + output_.name() + "' is also an input");
    }

    std::map<std::vector<std::size_t>, std::size_t> by_antecedent;
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const auto& rule = rules_[r];
      const std::string where = "rule " + std::to_string(r + 1);
      CompiledRule c{std::vector<std::size_t>(inputs_.size()), 0};
      std::vector<bool> bound(inputs_.size(), false);
      for (const auto& [var, term] : rule.antecedents) {
        const std::size_t v = input_index(var);
        if (bound[v]) fail(ErrorCode::validation, where + " names '" + var + "' twice");
        const auto t = inputs_[v].term_index(term);
        if (!t) fail(ErrorCode::validation, where + ": variable '" + var + "' has no term '" + term + "'");
        c.terms[v] = *t;
        bound[v] = true;
      }
      for (std::size_t v = 0; v < inputs_.size(); ++v) {
        if (!bound[v]) fail(ErrorCode::validation, where + " does not constrain '" + inputs_[v].name() + "'");
      }
      if (rule.consequent.first != output_.name()) {
        fail(ErrorCode::validation, where + " concludes on unknown variable '" + rule.consequent.first + "'");
      }
      const auto k = output_.term_index(rule.consequent.second);
      if (!k) fail(ErrorCode::validation, where + ": output has no term '" + rule.consequent.second + "'");
      c.consequent = *k;

      const auto [it, fresh] = by_antecedent.emplace(c.terms, c.consequent);
      if (!fresh && it->second != c.consequent) {
        fail(ErrorCode::validation, where + " contradicts an earlier rule with the same antecedents");
      }
      compiled_.push_back(std::move(c));
    }
  }

  std::vector<LinguisticVariable> inputs_;
  LinguisticVariable output_;
  std::vector<FuzzyRule> rules_;
  Operators ops_;
  std::vector<CompiledRule> compiled_;
};

// ---------------------------------------------------------------------------
// Declarative JSON documents
// ---------------------------------------------------------------------------

namespace detail {

template <typename Enum, std::size_t N>
Enum parse_enum(const nlohmann::json& j, const char* field,
                const std::array<std::pair<const char*, Enum>, N>& table) {
  if (!j.is_string()) fail(ErrorCode::validation, std::string("'") + field + "' must be a string");
  const auto s = j.get<std::string>();
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  fail(ErrorCode::validation, std::string("unsupported ") + field + " '" + s + "'");
}

template <typename Enum, std::size_t N>
const char* enum_name(Enum e, const std::array<std::pair<const char*, Enum>, N>& table) {
  for (const auto& [name, value] : table) {
    if (value == e) return name;
  }
  return "?";
}

inline constexpr std::array<std::pair<const char*, Conjunction>, 2> kConjunctions{
    {{"min", Conjunction::min}, {"product", Conjunction::product}}};
inline constexpr std::array<std::pair<const char*, Accumulation>, 2> kAccumulations{
    {{"max", Accumulation::max}, {"sum", Accumulation::bounded_sum}}};
inline constexpr std::array<std::pair<const char*, Implication>, 2> kImplications{
    {{"min", Implication::clip}, {"product", Implication::scale}}};
inline constexpr std::array<std::pair<const char*, Defuzzifier>, 3> kDefuzzifiers{
    {{"centroid", Defuzzifier::centroid},
     {"mom", Defuzzifier::mean_of_maximum},
     {"mean_of_maximum", Defuzzifier::mean_of_maximum}}};

inline LinguisticVariable parse_variable(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::validation, "variable entry must be an object");
  const auto name = j.value("name", std::string{});
  const auto& domain = j.at("domain");
  if (!domain.is_array() || domain.size() != 2) {
    fail(ErrorCode::validation, "variable '" + name + "': domain must be [lo, hi]");
  }
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    const auto label = t.at("label").get<std::string>();
    const auto shape = t.at("shape").get<std::string>();
    const auto pts = t.at("points").get<std::vector<double>>();
    if (shape == "tri" && pts.size() == 3) {
      terms.push_back({label, MembershipFunction::triangular(pts[0], pts[1], pts[2])});
    } else if (shape == "trap" && pts.size() == 4) {
      terms.push_back({label, MembershipFunction::trapezoidal(pts[0], pts[1], pts[2], pts[3])});
    } else {
      fail(ErrorCode::validation, "term '" + label + "': shape '" + shape + "' with " +
                                      std::to_string(pts.size()) + " points is not supported");
    }
  }
  return LinguisticVariable(name, domain[0].get<double>(), domain[1].get<double>(), std::move(terms));
}

}  // namespace detail

inline Defuzzifier parse_defuzzifier(std::string_view name) {
  return detail::parse_enum(nlohmann::json(std::string(name)), "defuzzifier", detail::kDefuzzifiers);
}

inline InferenceEngine engine_from_json(const nlohmann::json& doc) {
  try {
    std::vector<LinguisticVariable> vars;
    for (const auto& v : doc.at("variables")) vars.push_back(detail::parse_variable(v));

    std::vector<FuzzyRule> rules;
    std::optional<std::string> output_name;
    for (const auto& r : doc.at("rules")) {
      FuzzyRule rule;
      for (const auto& [var, term] : r.at("if").items()) rule.antecedents.emplace_back(var, term.get<std::string>());
      const auto& then = r.at("then");
      if (!then.is_object() || then.size() != 1) {
        fail(ErrorCode::validation, "every rule needs exactly one consequent");
      }
      rule.consequent = {then.begin().key(), then.begin().value().get<std::string>()};
      if (output_name && *output_name != rule.consequent.first) {
        fail(ErrorCode::validation, "rules conclude on more than one output variable");
      }
      output_name = rule.consequent.first;
      rules.push_back(std::move(rule));
    }
    if (!output_name) fail(ErrorCode::validation, "engine document has no rules");

    std::vector<LinguisticVariable> inputs;
    std::optional<LinguisticVariable> output;
    for (auto& v : vars) {
      if (v.name() == *output_name) {
        output = std::move(v);
      } else {
        inputs.push_back(std::move(v));
      }
    }
    if (!output) fail(ErrorCode::validation, "output variable '" + *output_name + "' is not declared");

    Operators ops;
    if (doc.contains("defuzzifier")) {
      ops.defuzzifier = detail::parse_enum(doc["defuzzifier"], "defuzzifier", detail::kDefuzzifiers);
    }
    if (doc.contains("resolution")) ops.resolution = doc["resolution"].get<int>();
    if (doc.contains("operators")) {
      const auto& o = doc["operators"];
      if (o.contains("and")) ops.conjunction = detail::parse_enum(o["and"], "and", detail::kConjunctions);
      if (o.contains("accumulate")) {
        ops.accumulation = detail::parse_enum(o["accumulate"], "accumulate", detail::kAccumulations);
      }
      if (o.contains("implication")) {
        ops.implication = detail::parse_enum(o["implication"], "implication", detail::kImplications);
      }
    }
    return InferenceEngine(std::move(inputs), std::move(*output), std::move(rules), ops);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::validation, std::string("engine document: ") + e.what());
  }
}

inline InferenceEngine engine_from_string(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::validation, std::string("engine document: ") + e.what());
  }
  return engine_from_json(doc);
}

inline nlohmann::json to_json(const LinguisticVariable& var) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : var.terms()) {
    terms.push_back({{"label", t.label},
                     {"shape", t.mf.shape() == Shape::triangular ? "tri" : "trap"},
                     {"points", t.mf.points()}});
  }
  return {{"name", var.name()}, {"domain", {var.lo(), var.hi()}}, {"terms", terms}};
}

/// Canonical document for an engine; round-trips through engine_from_json.
inline nlohmann::json to_json(const InferenceEngine& engine) {
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& v : engine.inputs()) vars.push_back(to_json(v));
  vars.push_back(to_json(engine.output()));
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : engine.rules()) {
    nlohmann::json cond = nlohmann::json::object();
    for (const auto& [var, term] : r.antecedents) cond[var] = term;
    rules.push_back({{"if", cond}, {"then", {{r.consequent.first, r.consequent.second}}}});
  }
  const auto& ops = engine.operators();
  return {{"variables", vars},
          {"rules", rules},
          {"defuzzifier", ops.defuzzifier == Defuzzifier::centroid ? "centroid" : "mom"},
          {"resolution", ops.resolution},
          {"operators",
           {{"and", detail::enum_name(ops.conjunction, detail::kConjunctions)},
            {"accumulate", detail::enum_name(ops.accumulation, detail::kAccumulations)},
            {"implication", detail::enum_name(ops.implication, detail::kImplications)}}}};
}

/// FNV-1a 64 of the canonical document, as 16 hex digits.
inline std::string fingerprint(const InferenceEngine& engine) {
  const std::string text = to_json(engine).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fgdm::fuzzy
