#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace avrank {

struct Detection {
  std::string vendor;
  std::string raw_label;  // may be empty: vendor gave no verdict

  bool operator==(const Detection&) const = default;
};

// One sample's per-vendor raw label strings. Vendor order is preserved as
// given in the input file; vendor names are unique within a report.
struct AvReport {
  std::string sample_id;
  std::vector<Detection> detections;
  std::optional<std::string> first_seen;

  bool operator==(const AvReport&) const = default;
};

// Parses one NDJSON line:
//   {"sample_id": string, "first_seen": optional string,
//    "detections": {vendor: label, ...}}
// Malformed JSON raises a Parse error with the byte offset; schema
// violations (missing/ill-typed fields, duplicate vendors, empty sample id)
// raise Schema errors naming the offender.
AvReport parse_report(std::string_view raw);

// Inverse of parse_report; emits a single NDJSON line without newline.
std::string serialize_report(const AvReport& report);

// Append-only sample collection. Copy the object for a stable snapshot;
// existing reports are never mutated by an add.
class Corpus {
 public:
  enum class DuplicatePolicy { Reject, Skip };

  Corpus() = default;

  // Appends reports. Returns the number actually added and bumps the
  // version by one if that number is nonzero. Under Reject, any sample_id
  // already present (or repeated inside the batch) raises a Data error
  // listing the offending ids.
  std::size_t add_reports(std::vector<AvReport> reports,
                          DuplicatePolicy policy = DuplicatePolicy::Reject);

  const std::vector<AvReport>& reports() const { return reports_; }
  std::uint64_t version() const { return version_; }
  std::size_t size() const { return reports_.size(); }
  bool contains(const std::string& sample_id) const {
    return ids_.count(sample_id) != 0;
  }

  // Rebuilds a corpus from persisted parts, restoring its version counter.
  static Corpus restore(std::vector<AvReport> reports, std::uint64_t version);

 private:
  std::vector<AvReport> reports_;
  std::unordered_set<std::string> ids_;
  std::uint64_t version_ = 0;
};

// NDJSON file IO. Errors are reported with 1-based line numbers.
std::vector<AvReport> load_reports_file(const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace avrank
