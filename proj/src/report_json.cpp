#include "dworklab/report_json.hpp"

#include "dworklab/error.hpp"
#include "dworklab/text_format.hpp"

namespace dworklab {

using nlohmann::json;

json to_json(const Integer& v) { return v.get_str(); }

json to_json(const Rational& v) { return v.get_str(); }

json to_json(const ExponentVector& v) { return v.values(); }

json to_json(const CoefficientRing& ring) {
  if (ring.is_exact()) return {{"kind", "exact"}};
  return {{"kind", "modular"}, {"p", ring.prime()}, {"s", ring.exponent()},
          {"modulus", to_json(ring.modulus())}};
}

json to_json(const ExponentMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.m(); ++j) row.push_back(a.entry(i, j));
    rows.push_back(row);
  }
  return {{"n", a.n()}, {"m", a.m()}, {"rows", rows}};
}

json to_json(const InteriorCertificate& c) {
  json pts = json::array();
  for (const auto& v : c.interior_lattice_points) pts.push_back(to_json(v));
  return {{"origin_interior", c.origin_interior},
          {"rank_full", c.rank_full},
          {"margin", c.margin ? to_json(*c.margin) : json(nullptr)},
          {"interior_lattice_points", pts},
          {"unique", c.unique}};
}

json to_json(const KernelLattice& k) {
  json basis = json::array();
  for (const auto& v : k.basis) {
    json col = json::array();
    for (const auto& x : v) col.push_back(to_json(x));
    basis.push_back(col);
  }
  return {{"basis", basis}, {"k", to_json(k.covering_index)}};
}

json to_json(const KernelGcdReport& r) {
  json out = {{"outcome", to_string(r.outcome)},
              {"search_size", to_json(r.search_size)},
              {"tuples_examined", to_json(r.tuples_examined)}};
  if (r.outcome == CheckOutcome::violated) {
    out["witness"] = r.witness;
    out["witness_gcd"] = to_json(r.witness_gcd);
  }
  return out;
}

json to_json(const PeriodSequence& a) {
  json vals = json::array();
  for (const auto& v : a.values) vals.push_back(to_json(v));
  return {{"method", to_string(a.method)}, {"ring", to_json(a.ring)}, {"source", a.source},
          {"max_n", a.values.empty() ? json(nullptr) : json(a.max_index())}, {"values", vals}};
}

json to_json(const ThetaOperator& op) {
  json terms = json::array();
  for (const auto& [j, q] : op.terms) {
    json coeffs = json::array();
    for (const auto& c : q) coeffs.push_back(to_json(c));
    terms.push_back({{"t_power", j}, {"theta_coefficients", coeffs}});
  }
  return {{"text", op.text}, {"verifiable", op.verifiable}, {"terms", terms}};
}

json to_json(const Witness& w) {
  json params = json::object();
  for (const auto& [k, v] : w.parameters) params[k] = v;
  return {{"n", w.n},
          {"parameters", params},
          {"left_indices", w.left_indices},
          {"right_indices", w.right_indices},
          {"left", to_json(w.left)},
          {"right", to_json(w.right)},
          {"modulus", to_json(w.modulus)}};
}

json to_json(const DworkReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  json out = {{"kind", to_string(r.kind)},
              {"p", r.p},
              {"status", to_string(r.status)},
              {"instances", r.instances},
              {"violations", r.violations},
              {"witnesses", witnesses},
              {"max_n", r.max_n}};
  switch (r.kind) {
  case CongruenceKind::d1:
    out["undefined_cases"] = r.undefined_cases;
    break;
  case CongruenceKind::d3:
    out["s"] = r.s;
    break;
  case CongruenceKind::digit: break;
  case CongruenceKind::covering:
    out["k"] = r.k;
    [[fallthrough]];
  case CongruenceKind::theorem41:
    out["s"] = r.s;
    out["digit_bound"] = r.digit_bound;
    break;
  }
  out["skipped_levels"] = r.skipped_levels;
  out["notes"] = r.notes;
  return out;
}

json to_json(const Decomposition& d) {
  json layers = json::array();
  for (std::size_t k = 0; k < d.layers.size(); ++k)
    layers.push_back({{"k", k}, {"terms", d.layers[k].size()}, {"polynomial", polynomial_to_json(d.layers[k])}});
  return {{"f", format_polynomial(d.f)}, {"n", d.n}, {"p", d.p}, {"s", d.s}, {"layers", layers}};
}

json to_json(const ExchangeSweep& s) {
  json out = {{"instances", s.instances}, {"failures", s.failures}};
  if (s.first_failure) out["first_failure"] = {{"I", s.first_failure->first}, {"J", s.first_failure->second}};
  return out;
}

json to_json(const LemmaReport& r) {
  json examples = json::array();
  for (const auto& e : r.examples)
    examples.push_back({{"I", e.i}, {"J", e.j}, {"a", e.a}, {"b", e.b}});
  return {{"lemma", to_string(r.lemma)},
          {"trials", r.trials},
          {"rejected", r.rejected},
          {"counterexamples", r.counterexamples},
          {"examples", examples}};
}

json to_json(const PadicNumber& x) {
  return {{"p", x.prime()}, {"precision", x.precision()}, {"residue", to_json(x.residue())}};
}

json to_json(const UnitRootApproximation& u) {
  json steps = json::array();
  for (const auto& s : u.steps) {
    json step = {{"s", s.s}, {"ratio", to_json(s.ratio)}};
    if (s.s >= 1) {
      step["agreement"] = s.agreement;
      step["consistent"] = s.consistent;
    }
    steps.push_back(step);
  }
  return {{"value", to_json(u.value)}, {"steps", steps}, {"consistent", u.consistent},
          {"findings", u.findings}};
}

json to_json(const CatalogEntry& e) {
  json expected = json::array();
  for (const auto& v : e.expected) expected.push_back({{"n", v.n}, {"value", to_json(v.value)}});
  json out = {{"name", e.name},
              {"description", e.description},
              {"text", e.text},
              {"polynomial", polynomial_to_json(e.polynomial())},
              {"expected", expected},
              {"expected_source", e.expected_source}};
  out["covering_index"] = e.covering_index ? json(*e.covering_index) : json(nullptr);
  out["closed_form"] = e.closed_form_text.empty() ? json(nullptr) : json(e.closed_form_text);
  out["operator"] = e.theta_operator ? to_json(*e.theta_operator) : json(nullptr);
  return out;
}

PeriodSequence sequence_from_json(const json& j) {
  try {
    PeriodSequence a;
    const auto& ring = j.at("ring");
    if (ring.at("kind").get<std::string>() == "modular")
      a.ring = CoefficientRing::modular(ring.at("p").get<unsigned long>(), ring.at("s").get<unsigned>());
    const std::string method = j.value("method", "pruned");
    if (method == "multinomial")
      a.method = PeriodMethod::multinomial;
    else if (method == "closed-form")
      a.method = PeriodMethod::closed_form;
    a.source = j.value("source", "");
    for (const auto& v : j.at("values")) a.values.emplace_back(v.get<std::string>());
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sequence JSON: ") + e.what(), 0);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed integer in sequence JSON", 0);
  }
}

} // namespace dworklab
