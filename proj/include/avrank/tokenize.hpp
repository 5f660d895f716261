#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "avrank/report.hpp"

namespace avrank {

using Token = std::string;

// Splits a raw AV label on every character outside [A-Za-z0-9] and
// lowercases the fragments. Alphanumeric runs ("win32", "flystudio") stay
// whole; empty fragments are dropped.
std::vector<Token> tokenize_label(std::string_view raw);

enum class ScanDirection { Forward, Reverse };

// Per-vendor column statistics. Column i (1-based) holds the i-th token of
// every label counted from the left (forward) or from the right (reverse);
// labels shorter than i simply do not contribute, no padding is inserted.
class VendorPositionTable {
 public:
  void add_label(const std::vector<Token>& tokens);

  // Fraction of tokens occurring exactly once in the addressed column.
  // Raises a Domain error when the column is empty (never silently 0).
  double unique_index(std::size_t position, ScanDirection direction) const;

  std::size_t max_len() const { return fwd_.size(); }
  std::size_t label_count() const { return label_count_; }
  std::size_t total_tokens() const { return total_tokens_; }

  const std::map<Token, int>& column(std::size_t position,
                                     ScanDirection direction) const;

 private:
  std::vector<std::map<Token, int>> fwd_;
  std::vector<std::map<Token, int>> rev_;
  std::size_t label_count_ = 0;
  std::size_t total_tokens_ = 0;
};

struct FilterParams {
  double sigma_threshold = 0.3;
  // Vendors with fewer labels than this skip filtering entirely: sigma on a
  // handful of rows is all-or-nothing noise.
  std::size_t min_vendor_labels = 5;
};

struct VendorTokens {
  std::string vendor;
  std::vector<Token> tokens;  // left-to-right label order

  bool operator==(const VendorTokens&) const = default;
};

struct FilteredSample {
  std::string sample_id;
  std::vector<VendorTokens> vendors;  // report detection order
};

struct KeptPositions {
  std::set<std::size_t> forward;  // 1-based positions kept by the forward scan
  std::set<std::size_t> reverse;  // 1-based positions kept by the reverse scan
  bool unfiltered = false;        // vendor below min_vendor_labels, all kept
};

struct FilteredCorpus {
  // Samples sorted by sample_id. Every downstream stage walks this order,
  // which makes the pipeline independent of report order in the corpus.
  std::vector<FilteredSample> samples;
  std::map<std::string, KeptPositions> kept;
  std::map<std::string, VendorPositionTable> tables;
};

// Runs the unique-tokens-fade-away filter: per vendor, one scan from the
// left and one from the right. Each scan keeps marking columns while the
// column's unique index stays below the threshold and stops at the first
// column at or above it. A token survives when either scan kept its
// position. Labels fully filtered away stay as empty token lists.
FilteredCorpus filter_tokens(const Corpus& corpus,
                             const FilterParams& params = {});

}  // namespace avrank
