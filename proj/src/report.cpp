#include "avrank/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "avrank/errors.hpp"

namespace avrank {
namespace {

using json = nlohmann::json;

bool looks_like_iso_date(const std::string& s) {
  // YYYY-MM-DD, optionally followed by a time suffix.
  if (s.size() < 10) return false;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return s[4] == '-' && s[7] == '-';
}

bool has_control_chars(const std::string& s) {
  for (unsigned char c : s) {
    if (c < 0x20) return true;
  }
  return false;
}

// SAX handler for the report schema. A DOM parse cannot see duplicate
// vendor keys (later values silently win), so the object is consumed
// event by event.
class ReportSax {
 public:
  AvReport report;
  bool saw_sample_id = false;
  bool saw_detections = false;

  bool null() {
    if (state_ == State::Top && pending_ == Field::FirstSeen) {
      pending_ = Field::None;
      return true;  // "first_seen": null behaves like an absent field
    }
    return fail("null is not a valid value here");
  }
  bool boolean(bool) { return fail_value("boolean"); }
  bool number_integer(json::number_integer_t) { return fail_value("number"); }
  bool number_unsigned(json::number_unsigned_t) { return fail_value("number"); }
  bool number_float(json::number_float_t, const std::string&) {
    return fail_value("number");
  }
  bool binary(json::binary_t&) { return fail_value("binary"); }
  bool start_array(std::size_t) { return fail_value("array"); }
  bool end_array() { return fail("unexpected array"); }

  bool start_object(std::size_t) {
    switch (state_) {
      case State::Root:
        state_ = State::Top;
        return true;
      case State::Top:
        if (pending_ == Field::Detections) {
          state_ = State::Detections;
          saw_detections = true;
          pending_ = Field::None;
          return true;
        }
        return fail_value("object");
      default:
        return fail_value("object");
    }
  }

  bool key(json::string_t& k) {
    if (state_ == State::Top) {
      if (k == "sample_id") {
        pending_ = Field::SampleId;
      } else if (k == "first_seen") {
        pending_ = Field::FirstSeen;
      } else if (k == "detections") {
        pending_ = Field::Detections;
      } else {
        return fail("unknown field \"" + k + "\"");
      }
      if (!top_keys_.insert(k).second) {
        return fail("duplicate field \"" + k + "\"");
      }
      return true;
    }
    if (state_ == State::Detections) {
      if (!vendors_.insert(k).second) {
        return fail("duplicate vendor \"" + k + "\"");
      }
      vendor_ = k;
      return true;
    }
    return fail("unexpected key");
  }

  bool string(json::string_t& v) {
    if (state_ == State::Detections) {
      report.detections.push_back({vendor_, v});
      return true;
    }
    if (state_ == State::Top) {
      switch (pending_) {
        case Field::SampleId:
          report.sample_id = v;
          saw_sample_id = true;
          pending_ = Field::None;
          return true;
        case Field::FirstSeen:
          report.first_seen = v;
          pending_ = Field::None;
          return true;
        case Field::Detections:
          return fail("field \"detections\" must be an object");
        default:
          return fail("unexpected string");
      }
    }
    return fail("unexpected string");
  }

  bool end_object() {
    if (state_ == State::Detections) {
      state_ = State::Top;
      return true;
    }
    if (state_ == State::Top) {
      state_ = State::Done;
      return true;
    }
    return fail("unexpected end of object");
  }

  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) {
    throw Error(ErrorKind::Parse, "malformed JSON at byte " +
                                      std::to_string(position) + ": " +
                                      ex.what());
  }

 private:
  enum class State { Root, Top, Detections, Done };
  enum class Field { None, SampleId, FirstSeen, Detections };

  [[noreturn]] bool fail(const std::string& msg) {
    throw Error(ErrorKind::Schema, msg);
  }
  [[noreturn]] bool fail_value(const std::string& got) {
    if (state_ == State::Detections) {
      throw Error(ErrorKind::Schema,
                  "label of vendor \"" + vendor_ + "\" must be a string, got " + got);
    }
    throw Error(ErrorKind::Schema, "unexpected " + got + " in report object");
  }

  State state_ = State::Root;
  Field pending_ = Field::None;
  std::string vendor_;
  std::unordered_set<std::string> top_keys_;
  std::unordered_set<std::string> vendors_;
};

}  // namespace

AvReport parse_report(std::string_view raw) {
  ReportSax sax;
  json::sax_parse(raw, &sax);
  if (!sax.saw_sample_id) {
    throw Error(ErrorKind::Schema, "missing field \"sample_id\"");
  }
  if (!sax.saw_detections) {
    throw Error(ErrorKind::Schema, "missing field \"detections\"");
  }
  if (sax.report.sample_id.empty()) {
    throw Error(ErrorKind::Schema, "empty sample_id");
  }
  if (has_control_chars(sax.report.sample_id)) {
    throw Error(ErrorKind::Schema, "sample_id contains control characters");
  }
  if (sax.report.first_seen && !looks_like_iso_date(*sax.report.first_seen)) {
    throw Error(ErrorKind::Schema,
                "field \"first_seen\" is not an ISO-8601 date: \"" +
                    *sax.report.first_seen + "\"");
  }
  return std::move(sax.report);
}

std::string serialize_report(const AvReport& report) {
  nlohmann::ordered_json j;
  j["sample_id"] = report.sample_id;
  if (report.first_seen) j["first_seen"] = *report.first_seen;
  auto det = nlohmann::ordered_json::object();
  for (const auto& d : report.detections) det[d.vendor] = d.raw_label;
  j["detections"] = std::move(det);
  return j.dump();
}

std::size_t Corpus::add_reports(std::vector<AvReport> reports,
                                DuplicatePolicy policy) {
  std::vector<std::string> dupes;
  std::unordered_set<std::string> batch_ids;
  if (policy == DuplicatePolicy::Reject) {
    for (const auto& r : reports) {
      if (ids_.count(r.sample_id) || !batch_ids.insert(r.sample_id).second) {
        dupes.push_back(r.sample_id);
      }
    }
    if (!dupes.empty()) {
      std::string msg = "duplicate sample ids:";
      for (const auto& id : dupes) msg += " " + id;
      throw Error(ErrorKind::Data, msg);
    }
  }
  std::size_t added = 0;
  for (auto& r : reports) {
    if (ids_.count(r.sample_id)) continue;  // Skip policy
    ids_.insert(r.sample_id);
    reports_.push_back(std::move(r));
    ++added;
  }
  if (added > 0) ++version_;
  return added;
}

Corpus Corpus::restore(std::vector<AvReport> reports, std::uint64_t version) {
  Corpus c;
  c.add_reports(std::move(reports));
  c.version_ = version;
  return c;
}

std::vector<AvReport> load_reports_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Data, "cannot open reports file " + path.string());
  }
  std::vector<AvReport> reports;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      reports.push_back(parse_report(line));
    } catch (const Error& e) {
      throw Error(ErrorKind::Data, path.filename().string() + " line " +
                                       std::to_string(line_no) + ": " +
                                       e.what());
    }
  }
  return reports;
}

Corpus load_corpus(const std::filesystem::path& path) {
  Corpus corpus;
  corpus.add_reports(load_reports_file(path));
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Data, "cannot write corpus file " + path.string());
  }
  for (const auto& r : corpus.reports()) {
    out << serialize_report(r) << '\n';
  }
}

}  // namespace avrank
