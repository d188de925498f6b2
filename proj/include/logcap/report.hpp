#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "logcap/capitulation.hpp"
#include "logcap/logclass.hpp"

namespace logcap {

// nlohmann::json keeps object keys sorted, which gives the stable key order of every report

nlohmann::json field_json(const NumberField& K);
nlohmann::json place_json(const LogPlace& p);
nlohmann::json log_class_group_json(const LogClassGroup& G, bool with_relations = true);
nlohmann::json capitulation_json(const CapitulationReport& R);

// exit codes shared by every command
enum ExitCode { kExitOk = 0, kExitInvalid = 1, kExitCaps = 2 };
nlohmann::json error_json(int code, const std::string& kind, const std::string& message);
// classify the exception being handled; call inside a catch block
std::pair<int, nlohmann::json> current_error();

// one squarefree d of a scan: the field x^2 - d
nlohmann::json scan_row(long d, unsigned long ell, int prec, const Caps& caps);
std::vector<long> squarefree_range(long lo, long hi);

// Invariant comparison against a fixture entry (logclass or capitulation shape). Keys missing
// from the entry are not compared; group invariants compare as multisets. One line per mismatch.
std::vector<std::string> compare_entry(const nlohmann::json& entry, int prec, const Caps& caps);

}  // namespace logcap
