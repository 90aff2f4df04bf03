#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bstar {

/// One verified instance, as a report line. Negative controls are expected
/// to fail and never affect exit status.
struct CheckRecord {
  std::string suite;
  std::string check;
  std::string instance;
  std::string verdict;  // "pass" | "fail" | "undecided"
  std::string witness;
  std::string bounds;
  bool negative_control = false;

  bool counts_as_failure() const { return verdict == "fail" && !negative_control; }
};

struct SuiteResult {
  std::vector<CheckRecord> records;
  int failures() const {
    int n = 0;
    for (const auto& r : records)
      if (r.counts_as_failure()) ++n;
    return n;
  }

  void add(CheckRecord r) { records.push_back(std::move(r)); }

  /// Canonical serialization: records sorted by (suite, check, instance),
  /// keys in fixed order, one object per line.
  std::string to_jsonl() const {
    std::vector<const CheckRecord*> ordered;
    for (const auto& r : records) ordered.push_back(&r);
    std::stable_sort(ordered.begin(), ordered.end(), [](const CheckRecord* a, const CheckRecord* b) {
      if (a->suite != b->suite) return a->suite < b->suite;
      if (a->check != b->check) return a->check < b->check;
      return a->instance < b->instance;
    });
    std::string out;
    for (const CheckRecord* r : ordered) {
      nlohmann::json j;
      j["bounds"] = r->bounds;
      j["check"] = r->check;
      j["instance"] = r->instance;
      j["negative_control"] = r->negative_control;
      j["suite"] = r->suite;
      j["verdict"] = r->verdict;
      j["witness"] = r->witness;
      out += j.dump();
      out += "\n";
    }
    return out;
  }

  void merge(SuiteResult other) {
    for (auto& r : other.records) records.push_back(std::move(r));
  }
};

inline void write_report(const SuiteResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file: " + path);
  out << result.to_jsonl();
}

}  // namespace bstar
