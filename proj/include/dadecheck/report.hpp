#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dc {

enum class Status { Pass, Fail, Skip };

inline const char* status_name(Status s) {
  return s == Status::Pass ? "pass" : s == Status::Fail ? "fail" : "skip";
}

struct Record {
  std::string check;
  std::string subject;  // set id, row id, defect id, ...
  unsigned n = 0;
  std::string key;  // "t", "u" or "d" when the record is indexed by one
  std::optional<long> key_value;
  std::string expected;
  std::string actual;
  Status status = Status::Pass;
  double millis = 0;
  std::string note;
};

struct Report {
  std::vector<Record> records;

  void add(Record r) { records.push_back(std::move(r)); }
  void append(const Report& o) { records.insert(records.end(), o.records.begin(), o.records.end()); }

  size_t count(Status s) const {
    size_t c = 0;
    for (const auto& r : records) c += r.status == s;
    return c;
  }
  bool ok() const { return count(Status::Fail) == 0; }
};

inline Record make_record(std::string check, std::string subject, unsigned n, std::string expected,
                          std::string actual, std::string note = {}) {
  Record r;
  r.check = std::move(check);
  r.subject = std::move(subject);
  r.n = n;
  r.status = expected == actual ? Status::Pass : Status::Fail;
  r.expected = std::move(expected);
  r.actual = std::move(actual);
  r.note = std::move(note);
  return r;
}

inline nlohmann::json to_json(const Record& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["check"] = r.check;
  if (!r.subject.empty()) j["subject"] = r.subject;
  j["n"] = r.n;
  if (!r.key.empty() && r.key_value) j[r.key] = *r.key_value;
  j["expected"] = r.expected;
  j["actual"] = r.actual;
  j["status"] = status_name(r.status);
  j["millis"] = r.millis;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline nlohmann::json to_json(const Report& rep) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rep.records) arr.push_back(to_json(r));
  return arr;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace dc
