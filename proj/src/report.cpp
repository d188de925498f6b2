#include "logcap/report.hpp"

#include <algorithm>
#include <exception>
#include <set>

#include "logcap/arith.hpp"
#include "logcap/poly.hpp"

namespace logcap {

using nlohmann::json;

namespace {

// "r + O(ell^k)" with r the residue mod ell^k; values of negative valuation keep the long form
std::string padic_text(const PadicScalar& x) {
  if (!x.is_zero() && x.valuation() < 0) return x.to_string();
  const long k = x.abs_prec();
  const mpz_class r = x.is_zero() ? mpz_class(0) : x.residue(k);
  return r.get_str() + " + O(" + std::to_string(x.ell()) + "^" + std::to_string(k) + ")";
}

json strings(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.get_str());
  return a;
}

json ref_json(const PrimeRef& r) { return {{"p", r.p}, {"index", r.index}}; }

std::vector<std::string> sorted_strings(const json& a) {
  std::vector<std::string> out;
  for (auto& x : a) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  std::sort(out.begin(), out.end());
  return out;
}

std::string list_text(const std::vector<std::string>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s + "]";
}

void compare_multiset(std::vector<std::string>& diffs, const std::string& label, const std::string& key,
                      const json& entry, const json& got) {
  if (!entry.contains(key)) return;
  auto a = sorted_strings(entry.at(key)), b = sorted_strings(got);
  if (a != b) diffs.push_back(label + " " + key + ": expected " + list_text(a) + ", got " + list_text(b));
}

void compare_value(std::vector<std::string>& diffs, const std::string& label, const std::string& key,
                   const json& entry, const json& got) {
  if (!entry.contains(key)) return;
  if (entry.at(key) != got)
    diffs.push_back(label + " " + key + ": expected " + entry.at(key).dump() + ", got " + got.dump());
}

json orders_int(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
  return a;
}

}  // namespace

json field_json(const NumberField& K) {
  return {{"polynomial", K.name()},
          {"degree", K.degree()},
          {"signature", {K.r1(), K.r2()}},
          {"discriminant", K.discriminant().get_str()},
          {"index", K.index().get_str()}};
}

json place_json(const LogPlace& p) {
  json j = {{"prime", ref_json(p.ref)}, {"e", p.e}, {"f", p.f}, {"above_ell", p.above_ell},
            {"degree", padic_text(p.degree)}};
  if (p.above_ell) {
    j["degree_valuation"] = p.c;
    j["e_tilde"] = p.e_tilde.get_str();
    j["f_tilde"] = p.f_tilde.get_str();
  }
  return j;
}

json log_class_group_json(const LogClassGroup& G, bool with_relations) {
  json T = json::array();
  for (auto& p : G.T) T.push_back(place_json(p));
  json j;
  j["field"] = field_json(G.K);
  j["ell"] = G.ell;
  j["precision"] = G.precision;
  j["T"] = T;
  if (with_relations) {
    j["relations"] = G.relations.to_json();
    j["pending_columns"] = G.pending_columns;
  }
  j["class_group"] = {{"h", G.h.get_str()}, {"invariants", strings(G.class_group)}};
  j["full"] = G.full.to_json();
  json dz = G.degree_zero.to_json();
  dz["dropped_generator"] = G.t0;
  j["degree_zero"] = dz;
  j["ctilde_torsion"] = strings(G.torsion_orders());
  j["epsilon_tilde"] = G.epsilon_tilde;
  j["gross_kuzmin_report"] = {
      {"free_rank_degree_zero", G.gross_kuzmin_candidates},
      {"status", G.gross_kuzmin_candidates == 0 ? "finite at precision" : "free summand at precision (candidate)"},
      {"split_consistent", G.split_consistent}};
  j["certification"] = {{"class_group", G.class_group_certified ? "certified" : "uncertified"},
                        {"saturation", G.saturated ? "certified" : "probabilistic"}};
  return j;
}

json capitulation_json(const CapitulationReport& R) {
  const ExtensionData& E = *R.extension;
  json j;
  j["base"] = field_json(E.base());
  j["ext"] = field_json(E.ext());
  j["ell"] = E.ell();
  j["precision"] = E.precision();
  j["relative_degree"] = E.degree();
  j["embedding"] = poly_to_string(E.image().to_power_basis());

  json table = json::array();
  std::set<PrimeRef> lower;
  for (auto& u : R.unramified.places) lower.insert(u.lower);
  for (auto& p : lower) {
    const PlaceMatch& m = E.match(p);
    for (size_t i = 0; i < m.upper.size(); ++i)
      table.push_back({{"lower", ref_json(p)},
                       {"upper", ref_json(m.upper[i])},
                       {"e", m.e[i]},
                       {"f", m.f[i]},
                       {"e_tilde", padic_text(m.e_tilde[i])},
                       {"f_tilde", padic_text(m.f_tilde[i])},
                       {"witness_checked", static_cast<bool>(m.witness_checked[i])}});
  }
  j["e_tilde"] = table;

  json places = json::array();
  for (auto& u : R.unramified.places)
    places.push_back({{"lower", ref_json(u.lower)}, {"upper", ref_json(u.upper)}, {"unramified", u.unramified}});
  j["log_unramified"] = {{"verdict", R.unramified.unramified},
                         {"places", places},
                         {"real_places", R.unramified.real_places_unchecked ? "unchecked" : "not applicable"}};

  auto summary = [](const LogClassGroup& G) {
    return json{{"ctilde_torsion", strings(G.torsion_orders())},
                {"epsilon_tilde", G.epsilon_tilde},
                {"h", G.h.get_str()},
                {"generators", G.T.size()},
                {"certified", G.class_group_certified},
                {"saturated", G.saturated}};
  };
  j["base_group"] = summary(R.base);
  j["ext_group"] = summary(R.ext);

  json classes = json::array();
  for (auto& c : R.classes) {
    json g = json::array(), im = json::array();
    for (auto& x : c.generator) g.push_back(x.get_str());
    for (auto& x : c.image) im.push_back(x.get_str());
    classes.push_back({{"generator", g},
                       {"order", ell_pow(E.ell(), c.exponent).get_str()},
                       {"image", im},
                       {"verdict", verdict_name(c.verdict)}});
  }
  j["classes"] = classes;
  std::vector<mpz_class> kern;
  for (int a : R.kernel) kern.push_back(ell_pow(E.ell(), a));
  j["kernel"] = {{"invariants", strings(kern)}, {"exact", R.kernel_exact}};
  j["inputs_certified"] = R.inputs_certified;
  return j;
}

json error_json(int code, const std::string& kind, const std::string& message) {
  return {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
}

std::pair<int, json> current_error() {
  try {
    throw;
  } catch (const InvalidInput& e) {
    return {kExitInvalid, error_json(kExitInvalid, "invalid_input", e.what())};
  } catch (const PolyParseError& e) {
    return {kExitInvalid, error_json(kExitInvalid, "invalid_input", e.what())};
  } catch (const CapsExceeded& e) {
    return {kExitCaps, error_json(kExitCaps, "caps_exceeded", e.what())};
  } catch (const Unsupported& e) {
    return {kExitCaps, error_json(kExitCaps, "unsupported", e.what())};
  } catch (const PadicError& e) {
    return {kExitCaps, error_json(kExitCaps, "precision", e.what())};
  } catch (const std::exception& e) {
    return {kExitCaps, error_json(kExitCaps, "internal", e.what())};
  }
}

std::vector<long> squarefree_range(long lo, long hi) {
  std::vector<long> out;
  for (long d = lo; d <= hi; ++d)
    if (d != 0 && d != 1 && is_squarefree(mpz_class(d))) out.push_back(d);
  return out;
}

json scan_row(long d, unsigned long ell, int prec, const Caps& caps) {
  json row = {{"d", d}};
  try {
    std::string f = "x^2" + (d > 0 ? std::string("-") + std::to_string(d) : "+" + std::to_string(-d));
    row["field"] = f;
    auto K = NumberField::build(f, caps);
    auto G = log_class_group(K, ell, prec, caps);
    row["h"] = G.h.get_str();
    row["ell_divides_h"] = mpz_divisible_ui_p(G.h.get_mpz_t(), ell) != 0;
    row["ctilde_torsion"] = strings(G.torsion_orders());
    row["epsilon_tilde"] = G.epsilon_tilde;
    row["certified"] = G.class_group_certified && G.saturated;
  } catch (...) {
    row["error"] = current_error().second.at("error");
  }
  return row;
}

std::vector<std::string> compare_entry(const json& entry, int prec, const Caps& caps) {
  std::vector<std::string> diffs;
  const unsigned long ell = entry.at("ell").get<unsigned long>();
  if (entry.contains("base")) {
    const std::string label = entry.at("base").get<std::string>() + " < " + entry.at("ext").get<std::string>() +
                              " (ell=" + std::to_string(ell) + ")";
    auto K = NumberField::build(entry.at("base").get<std::string>(), caps);
    auto L = NumberField::build(entry.at("ext").get<std::string>(), caps);
    std::optional<QPoly> hint;
    if (entry.contains("embedding")) {
      QPoly h;
      for (auto& c : entry.at("embedding")) h.push_back(mpq_class(c.get<std::string>()));
      hint = h;
    }
    auto R = capitulation_kernel(K, L, ell, prec, caps, hint);
    compare_multiset(diffs, label, "ctilde_base", entry, orders_int(R.base.torsion_orders()));
    compare_multiset(diffs, label, "ctilde_ext", entry, orders_int(R.ext.torsion_orders()));
    json verdicts = json::array();
    for (auto& c : R.classes) verdicts.push_back(verdict_name(c.verdict));
    compare_multiset(diffs, label, "verdicts", entry, verdicts);
    std::vector<mpz_class> kern;
    for (int a : R.kernel) kern.push_back(ell_pow(ell, a));
    compare_multiset(diffs, label, "kernel", entry, orders_int(kern));
    compare_value(diffs, label, "log_unramified", entry, R.unramified.unramified);
    return diffs;
  }
  const std::string label = entry.at("field").get<std::string>() + " (ell=" + std::to_string(ell) + ")";
  auto K = NumberField::build(entry.at("field").get<std::string>(), caps);
  auto G = log_class_group(K, ell, prec, caps);
  compare_multiset(diffs, label, "ctilde", entry, orders_int(G.torsion_orders()));
  compare_value(diffs, label, "epsilon_tilde", entry, G.epsilon_tilde);
  compare_multiset(diffs, label, "class_group", entry, orders_int(G.class_group));
  if (entry.contains("h")) {
    const json& h = entry.at("h");
    std::string want = h.is_string() ? h.get<std::string>() : h.dump();
    if (want != G.h.get_str()) diffs.push_back(label + " h: expected " + want + ", got " + G.h.get_str());
  }
  return diffs;
}

}  // namespace logcap
