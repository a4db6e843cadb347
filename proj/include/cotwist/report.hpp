#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cotwist {

enum class Status { pass, fail, skipped };

const char* status_name(Status s);

struct SampleSpec {
  int box = 4;
  int samples = 100;
  uint64_t seed = 42;
};

struct ReportEntry {
  std::string check_id;
  std::string anchor;  // statement the check realizes, or "plumbing"
  Status status = Status::pass;
  std::string witness;
  std::string sample_spec;
  long duration_ms = 0;
};

// True when the sample spec records a sweep over every tuple of the domain.
bool is_exhaustive(const ReportEntry& e);

class Report {
 public:
  void add(ReportEntry e) { entries_.push_back(std::move(e)); }
  // Append every entry of r, prefixing check ids with "prefix.".
  void merge(const Report& r, const std::string& prefix = "");
  void sort();

  bool ok() const;
  size_t failures() const;
  const std::vector<ReportEntry>& entries() const { return entries_; }
  const ReportEntry* find(const std::string& id) const;
  // First failing entry whose id starts with prefix, if any.
  const ReportEntry* first_failure(const std::string& prefix = "") const;

  std::string to_json(bool timings) const;
  std::string to_text(bool timings) const;

 private:
  std::vector<ReportEntry> entries_;
};

using CheckFn = std::function<std::optional<std::string>()>;

// Runs fn, timing it; a returned string is a failure witness, an exception
// also counts as failure.
void run_check(Report& r, const std::string& id, const std::string& anchor,
               const std::string& spec, const CheckFn& fn);

void add_skipped(Report& r, const std::string& id, const std::string& anchor,
                 const std::string& reason);

}  // namespace cotwist
