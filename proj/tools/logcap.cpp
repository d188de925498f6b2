// logcap: command-line front end (compute, capitulate, scan, selftest, compare)
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logcap/arith.hpp"
#include "logcap/poly.hpp"
#include "logcap/report.hpp"
#include "logcap/selftest.hpp"

using namespace logcap;
using nlohmann::json;

namespace {

constexpr int kExitSelftest = 3;  // a suite failed, or compare found mismatches

struct Options {
  std::string field, base, ext, embedding, range, fixtures, out;
  unsigned long ell = 3;
  int prec = kDefaultPrecision;
  std::uint64_t seed = 1;
  bool compact = false;
  long limit = 0;
  // caps
  int degree = Caps{}.max_degree;
  std::string disc = Caps{}.max_disc.get_str();
  int box = Caps{}.box;
  long elements = Caps{}.max_elements;
  int witnesses = Caps{}.witness_samples;
  long max_range = Caps{}.max_range;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--ell", o.ell, "prime ell");
  cmd->add_option("--prec", o.prec, "ell-adic precision N (>= 16)");
  cmd->add_option("--seed", o.seed, "seed for randomized suites");
  cmd->add_option("--out", o.out, "write the JSON here instead of stdout");
  cmd->add_flag("--json", o.compact, "single-line JSON");
  cmd->add_option("--caps.degree", o.degree, "largest field degree");
  cmd->add_option("--caps.disc", o.disc, "largest |disc|");
  cmd->add_option("--caps.box", o.box, "coordinate box of the relation search (0: automatic)");
  cmd->add_option("--caps.elements", o.elements, "elements examined per relation search");
  cmd->add_option("--caps.witnesses", o.witnesses, "sampled witnesses per place");
  cmd->add_option("--caps.range", o.max_range, "widest scan range");
}

Caps make_caps(const Options& o) {
  Caps c;
  if (o.degree <= 0 || o.elements <= 0 || o.witnesses <= 0 || o.max_range <= 0 || o.box < 0)
    throw InvalidInput("caps must be positive");
  c.max_degree = o.degree;
  try {
    c.max_disc = mpz_class(o.disc);
  } catch (const std::invalid_argument&) {
    throw InvalidInput("--caps.disc is not an integer");
  }
  if (c.max_disc <= 0) throw InvalidInput("caps must be positive");
  c.box = o.box;
  c.max_elements = o.elements;
  c.witness_samples = o.witnesses;
  c.max_range = o.max_range;
  return c;
}

void check_ell_prec(const Options& o) {
  if (!is_prime_u64(o.ell)) throw InvalidInput("ell must be prime");
  if (o.prec < 16) throw InvalidInput("precision must be at least 16");
  if (o.prec > 4096) throw CapsExceeded("precision above 4096 digits");
}

std::pair<long, long> parse_range(const std::string& s) {
  for (const char* sep : {"..", ":", ","}) {
    // the separator may not be the sign of the first bound
    auto k = s.find(sep, 1);
    if (k == std::string::npos) continue;
    try {
      size_t used1 = 0, used2 = 0;
      std::string a = s.substr(0, k), b = s.substr(k + std::string(sep).size());
      long lo = std::stol(a, &used1), hi = std::stol(b, &used2);
      if (used1 == a.size() && used2 == b.size()) return {lo, hi};
    } catch (const std::exception&) {
    }
    break;
  }
  throw InvalidInput("range must look like lo:hi");
}

QPoly parse_embedding(const std::string& s) {
  QPoly h;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      mpq_class q(tok);
      q.canonicalize();
      h.push_back(q);
    } catch (const std::invalid_argument&) {
      throw InvalidInput("embedding coordinate \"" + tok + "\" is not a rational number");
    }
  }
  if (h.empty()) throw InvalidInput("empty embedding");
  return h;
}

NumberField field_arg(const std::string& f, const char* flag, const Caps& caps) {
  if (f.empty()) throw InvalidInput(std::string(flag) + " is required");
  return NumberField::build(f, caps);
}

json run_compute(const Options& o) {
  check_ell_prec(o);
  Caps caps = make_caps(o);
  auto K = field_arg(o.field, "--field", caps);
  return log_class_group_json(log_class_group(K, o.ell, o.prec, caps));
}

json run_capitulate(const Options& o) {
  check_ell_prec(o);
  Caps caps = make_caps(o);
  auto K = field_arg(o.base, "--base", caps), L = field_arg(o.ext, "--ext", caps);
  std::optional<QPoly> hint;
  if (!o.embedding.empty()) hint = parse_embedding(o.embedding);
  return capitulation_json(capitulation_kernel(K, L, o.ell, o.prec, caps, hint));
}

json run_scan(const Options& o) {
  check_ell_prec(o);
  Caps caps = make_caps(o);
  if (o.range.empty()) throw InvalidInput("--range is required");
  auto [lo, hi] = parse_range(o.range);
  if (hi >= lo && hi - lo + 1 > caps.max_range) throw CapsExceeded("scan range wider than --caps.range");
  json rows = json::array();
  for (long d : squarefree_range(lo, hi)) rows.push_back(scan_row(d, o.ell, o.prec, caps));
  return {{"ell", o.ell}, {"precision", o.prec}, {"range", {lo, hi}}, {"rows", rows}};
}

json run_selftest(const Options& o, int& code) {
  if (o.prec < 16) throw InvalidInput("precision must be at least 16");
  json suites = json::array();
  bool ok = true;
  for (auto& s : logcap::run_selftest(o.seed, o.prec)) {
    ok = ok && s.passed();
    suites.push_back({{"name", s.name}, {"checks", s.checks}, {"passed", s.passed()}, {"failures", s.failures}});
  }
  code = ok ? kExitOk : kExitSelftest;
  return {{"seed", o.seed}, {"precision", o.prec}, {"suites", suites}, {"passed", ok}};
}

json run_compare(const Options& o, bool ell_given, int& code) {
  if (o.prec < 16) throw InvalidInput("precision must be at least 16");
  Caps caps = make_caps(o);
  if (o.fixtures.empty()) throw InvalidInput("--fixtures is required");
  std::ifstream in(o.fixtures);
  if (!in) throw InvalidInput("cannot read fixture file " + o.fixtures);
  json fx;
  try {
    in >> fx;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("fixture is not valid JSON: ") + e.what());
  }
  const json* entries = &fx;
  if (fx.is_object()) {
    if (!fx.contains("entries")) throw InvalidInput("fixture has no entries");
    entries = &fx.at("entries");
  }
  if (!entries->is_array()) throw InvalidInput("fixture entries must be an array");
  json diffs = json::array(), errors = json::array();
  long compared = 0;
  for (auto& e : *entries) {
    if (!e.is_object() || !e.contains("ell") || !(e.contains("field") || (e.contains("base") && e.contains("ext"))))
      throw InvalidInput("fixture entry lacks ell and field (or base and ext)");
    if (ell_given && e.at("ell").get<unsigned long>() != o.ell) continue;
    if (o.limit > 0 && compared >= o.limit) break;
    ++compared;
    try {
      for (auto& d : compare_entry(e, o.prec, caps)) diffs.push_back(d);
    } catch (const json::exception& ex) {
      throw InvalidInput(std::string("malformed fixture entry: ") + ex.what());
    } catch (...) {
      json err = current_error().second.at("error");
      err["entry"] = e;
      errors.push_back(err);
    }
  }
  code = diffs.empty() && errors.empty() ? kExitOk : kExitSelftest;
  return {{"fixture", o.fixtures}, {"compared", compared}, {"diff", diffs}, {"errors", errors}};
}

// the whole document or nothing: write to a temporary file, then rename
void emit(const json& j, const Options& o) {
  const std::string text = o.compact ? j.dump() : j.dump(2);
  if (o.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  const std::string tmp = o.out + ".partial";
  {
    std::ofstream f(tmp);
    if (!f) throw InvalidInput("cannot write " + o.out);
    f << text << "\n";
    if (!f) throw InvalidInput("cannot write " + o.out);
  }
  std::filesystem::rename(tmp, o.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logarithmic class groups and capitulation"};
  app.require_subcommand(1);
  Options o;
  auto* compute = app.add_subcommand("compute", "logarithmic class group of one field");
  compute->add_option("--field", o.field, "defining polynomial");
  add_common(compute, o);
  auto* capitulate = app.add_subcommand("capitulate", "capitulation of C~_K^tor in L");
  capitulate->add_option("--base", o.base, "polynomial of K");
  capitulate->add_option("--ext", o.ext, "polynomial of L");
  capitulate->add_option("--embedding", o.embedding, "image of K's generator in L, comma-separated power-basis coordinates");
  add_common(capitulate, o);
  auto* scan = app.add_subcommand("scan", "quadratic fields Q(sqrt d) over a range of squarefree d");
  scan->add_option("--range", o.range, "lo:hi");
  add_common(scan, o);
  auto* selftest = app.add_subcommand("selftest", "invariant suites");
  add_common(selftest, o);
  auto* compare = app.add_subcommand("compare", "compare group invariants with a fixture file");
  compare->add_option("--fixtures", o.fixtures, "fixture JSON");
  compare->add_option("--limit", o.limit, "compare at most this many entries");
  add_common(compare, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json(kExitInvalid, "invalid_input", e.what()).dump() << "\n";
    return kExitInvalid;
  }

  int code = kExitOk;
  try {
    json result;
    if (*compute)
      result = run_compute(o);
    else if (*capitulate)
      result = run_capitulate(o);
    else if (*scan)
      result = run_scan(o);
    else if (*selftest)
      result = run_selftest(o, code);
    else
      result = run_compare(o, compare->count("--ell") > 0, code);
    emit(result, o);
  } catch (...) {
    auto [c, err] = current_error();
    std::cout << err.dump() << "\n";
    return c;
  }
  return code;
}
