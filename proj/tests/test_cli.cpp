#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "support.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LOGCAP_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_file(const std::string& name, const nlohmann::json& content) {
  auto path = std::filesystem::temp_directory_path() / ("logcap_test_" + std::to_string(getpid()) + "_" + name);
  std::ofstream(path) << content.dump();
  return path;
}

nlohmann::json entry_for(const std::string& field, unsigned long ell) {
  for (auto& e : testing::fixture("logclass.json"))
    if (e.at("field") == field && e.at("ell") == ell) return e;
  FAIL("no fixture entry for " << field);
  return {};
}

}  // namespace

TEST_CASE("cli compute") {
  auto r = run("compute --field 'x^2+23' --ell 3 --json");
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j.at("class_group").at("h") == "3");
  CHECK(j.at("ell") == 3);
  CHECK(j.at("field").at("discriminant") == "-23");
  CHECK(j.at("ctilde_torsion").empty());
  CHECK(j.at("certification").at("class_group") == "certified");

  auto q = run("compute --field x --ell 2 --json");
  REQUIRE(q.code == 0);
  CHECK(q.json().at("ctilde_torsion").empty());
  CHECK(q.json().at("epsilon_tilde") == 0);
}

TEST_CASE("cli errors and exit codes") {
  auto bad = run("compute --field 'x^2+' --json");
  CHECK(bad.code == 1);
  CHECK(bad.json().at("error").at("kind") == "invalid_input");
  CHECK(run("compute --field 'x^2-4'").code == 1);
  CHECK(run("compute --field 'x^2+1' --ell 4").code == 1);
  CHECK(run("compute --field 'x^2+1' --prec 8").code == 1);
  CHECK(run("compute --field 'x^9+2'").code == 2);
  CHECK(run("scan --range -5000:-2 --caps.range 100").code == 2);
  CHECK(run("nonsense").code == 1);
}

TEST_CASE("cli scan flags fields with ell dividing h") {
  auto r = run("scan --range -50:-2 --ell 3 --json");
  REQUIRE(r.code == 0);
  auto rows = r.json().at("rows");
  int squarefree = 0;
  for (long d = -50; d <= -2; ++d) squarefree += logcap::is_squarefree(mpz_class(d));
  CHECK(rows.size() == static_cast<size_t>(squarefree));
  for (auto& row : rows) {
    const long d = row.at("d");
    const mpz_class h = testing::reduced_form_count(testing::field_discriminant_quadratic(d));
    INFO("d=" << d);
    CHECK(row.at("h") == h.get_str());
    CHECK(row.at("ell_divides_h") == (h % 3 == 0));
  }
  auto empty = run("scan --range -2:-5 --json");
  CHECK(empty.code == 0);
  CHECK(empty.json().at("rows").empty());
}

TEST_CASE("cli selftest is deterministic") {
  auto a = run("selftest --seed 11 --prec 16 --json"), b = run("selftest --seed 11 --prec 16 --json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.json().at("passed") == true);
  CHECK(a.json().at("seed") == 11);
}

TEST_CASE("cli compare") {
  auto e23 = entry_for("x^2+23", 3), e14 = entry_for("x^2+14", 3);
  auto good = temp_file("good.json", {{"entries", {e23, e14}}});
  auto r = run("compare --fixtures " + good.string() + " --json");
  CHECK(r.code == 0);
  CHECK(r.json().at("diff").empty());
  CHECK(r.json().at("compared") == 2);

  // invariants listed in another order describe the same group
  auto e186 = entry_for("x^2+186", 2);
  std::reverse(e186["class_group"].begin(), e186["class_group"].end());
  auto perm = temp_file("perm.json", nlohmann::json::array({e186}));
  auto rp = run("compare --fixtures " + perm.string() + " --json");
  CHECK(rp.code == 0);
  CHECK(rp.json().at("diff").empty());

  auto corrupted = e23;
  corrupted["h"] = 5;
  auto bad = temp_file("bad.json", nlohmann::json::array({corrupted}));
  auto rb = run("compare --fixtures " + bad.string() + " --json");
  CHECK(rb.code == 3);
  CHECK(rb.json().at("diff").size() == 1);

  CHECK(run("compare --fixtures /nonexistent.json").code == 1);
  for (auto& p : {good, perm, bad}) std::filesystem::remove(p);
}

TEST_CASE("cli capitulate and atomic output") {
  auto out = std::filesystem::temp_directory_path() / ("logcap_test_" + std::to_string(getpid()) + "_cap.json");
  auto r = run("capitulate --base 'x^2+31' --ext 'x^2+31' --ell 3 --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  nlohmann::json j;
  std::ifstream(out) >> j;
  CHECK(j.at("kernel").at("invariants").empty());
  CHECK(j.at("classes").at(0).at("verdict") == "survives");
  CHECK(j.at("log_unramified").at("verdict") == true);
  CHECK_FALSE(std::filesystem::exists(out.string() + ".partial"));
  std::filesystem::remove(out);
}
