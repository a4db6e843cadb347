#include "cotwist/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace cotwist {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

bool is_exhaustive(const ReportEntry& e) {
  const auto& s = e.sample_spec;
  return s.find("exhaustive") != std::string::npos && s.find("exhaustive core") == std::string::npos;
}

void Report::merge(const Report& r, const std::string& prefix) {
  for (auto e : r.entries_) {
    if (!prefix.empty()) e.check_id = prefix + "." + e.check_id;
    entries_.push_back(std::move(e));
  }
}

void Report::sort() {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const ReportEntry& a, const ReportEntry& b) { return a.check_id < b.check_id; });
}

bool Report::ok() const { return failures() == 0; }

size_t Report::failures() const {
  return static_cast<size_t>(std::count_if(entries_.begin(), entries_.end(),
                                           [](const ReportEntry& e) { return e.status == Status::fail; }));
}

const ReportEntry* Report::find(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.check_id == id) return &e;
  return nullptr;
}

const ReportEntry* Report::first_failure(const std::string& prefix) const {
  for (const auto& e : entries_)
    if (e.status == Status::fail && e.check_id.compare(0, prefix.size(), prefix) == 0) return &e;
  return nullptr;
}

std::string Report::to_json(bool timings) const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["ok"] = ok();
  j["failures"] = failures();
  j["exhaustive"] = std::all_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) {
    return e.status == Status::skipped || is_exhaustive(e);
  });
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    nlohmann::ordered_json x;
    x["anchor"] = e.anchor;
    x["check_id"] = e.check_id;
    if (timings) x["duration_ms"] = e.duration_ms;
    x["sample_spec"] = e.sample_spec;
    x["exhaustive"] = is_exhaustive(e);
    x["status"] = status_name(e.status);
    if (!e.witness.empty()) x["witness"] = e.witness;
    arr.push_back(std::move(x));
  }
  j["entries"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string Report::to_text(bool timings) const {
  std::ostringstream os;
  for (const auto& e : entries_) {
    os << "[" << status_name(e.status) << "] " << e.check_id;
    if (timings) os << " (" << e.duration_ms << " ms)";
    os << "  {" << e.anchor << "}";
    if (!e.sample_spec.empty()) os << "  " << e.sample_spec;
    os << "\n";
    if (!e.witness.empty()) os << "    witness: " << e.witness << "\n";
  }
  os << (ok() ? "OK" : "FAILED") << ": " << entries_.size() << " checks, " << failures()
     << " failed\n";
  return os.str();
}

void run_check(Report& r, const std::string& id, const std::string& anchor,
               const std::string& spec, const CheckFn& fn) {
  ReportEntry e;
  e.check_id = id;
  e.anchor = anchor;
  e.sample_spec = spec;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto w = fn();
    if (w) {
      e.status = Status::fail;
      e.witness = w->empty() ? "(no witness text)" : *w;
    }
  } catch (const std::exception& ex) {
    e.status = Status::fail;
    e.witness = std::string("exception: ") + ex.what();
  }
  e.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  r.add(std::move(e));
}

void add_skipped(Report& r, const std::string& id, const std::string& anchor,
                 const std::string& reason) {
  ReportEntry e;
  e.check_id = id;
  e.anchor = anchor;
  e.status = Status::skipped;
  e.witness = reason;
  r.add(std::move(e));
}

}  // namespace cotwist
