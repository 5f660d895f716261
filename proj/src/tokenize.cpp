#include "avrank/tokenize.hpp"

#include <algorithm>

#include "avrank/errors.hpp"

namespace avrank {

std::vector<Token> tokenize_label(std::string_view raw) {
  std::vector<Token> tokens;
  Token current;
  for (char ch : raw) {
    if (ch >= 'a' && ch <= 'z') {
      current.push_back(ch);
    } else if (ch >= 'A' && ch <= 'Z') {
      current.push_back(static_cast<char>(ch - 'A' + 'a'));
    } else if (ch >= '0' && ch <= '9') {
      current.push_back(ch);
    } else {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

void VendorPositionTable::add_label(const std::vector<Token>& tokens) {
  if (tokens.empty()) return;
  if (tokens.size() > fwd_.size()) {
    fwd_.resize(tokens.size());
    rev_.resize(tokens.size());
  }
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    fwd_[k][tokens[k]] += 1;
    rev_[tokens.size() - 1 - k][tokens[k]] += 1;
  }
  ++label_count_;
  total_tokens_ += tokens.size();
}

const std::map<Token, int>& VendorPositionTable::column(
    std::size_t position, ScanDirection direction) const {
  const auto& cols = direction == ScanDirection::Forward ? fwd_ : rev_;
  if (position < 1 || position > cols.size() || cols[position - 1].empty()) {
    throw Error(ErrorKind::Domain,
                "empty column at position " + std::to_string(position));
  }
  return cols[position - 1];
}

double VendorPositionTable::unique_index(std::size_t position,
                                         ScanDirection direction) const {
  const auto& col = column(position, direction);
  long total = 0;
  long unique = 0;
  for (const auto& [token, count] : col) {
    total += count;
    if (count == 1) ++unique;
  }
  return static_cast<double>(unique) / static_cast<double>(total);
}

namespace {

KeptPositions scan_vendor(const VendorPositionTable& table,
                          const FilterParams& params) {
  KeptPositions kept;
  if (table.label_count() < params.min_vendor_labels) {
    kept.unfiltered = true;
    return kept;
  }
  for (ScanDirection dir : {ScanDirection::Forward, ScanDirection::Reverse}) {
    auto& positions =
        dir == ScanDirection::Forward ? kept.forward : kept.reverse;
    for (std::size_t pos = 1; pos <= table.max_len(); ++pos) {
      if (table.unique_index(pos, dir) >= params.sigma_threshold) break;
      positions.insert(pos);
    }
  }
  return kept;
}

}  // namespace

FilteredCorpus filter_tokens(const Corpus& corpus, const FilterParams& params) {
  if (!(params.sigma_threshold > 0.0 && params.sigma_threshold <= 1.0)) {
    throw Error(ErrorKind::Config, "sigma_threshold must be in (0, 1]");
  }

  FilteredCorpus fc;
  fc.samples.reserve(corpus.size());
  for (const auto& report : corpus.reports()) {
    FilteredSample sample;
    sample.sample_id = report.sample_id;
    for (const auto& det : report.detections) {
      sample.vendors.push_back({det.vendor, tokenize_label(det.raw_label)});
    }
    fc.samples.push_back(std::move(sample));
  }
  std::sort(fc.samples.begin(), fc.samples.end(),
            [](const FilteredSample& a, const FilteredSample& b) {
              return a.sample_id < b.sample_id;
            });

  for (const auto& sample : fc.samples) {
    for (const auto& vt : sample.vendors) {
      fc.tables[vt.vendor].add_label(vt.tokens);
    }
  }

  for (const auto& [vendor, table] : fc.tables) {
    fc.kept[vendor] = scan_vendor(table, params);
  }

  for (auto& sample : fc.samples) {
    for (auto& vt : sample.vendors) {
      const KeptPositions& kept = fc.kept.at(vt.vendor);
      if (kept.unfiltered) continue;
      std::vector<Token> surviving;
      const std::size_t len = vt.tokens.size();
      for (std::size_t k = 0; k < len; ++k) {
        if (kept.forward.count(k + 1) || kept.reverse.count(len - k)) {
          surviving.push_back(std::move(vt.tokens[k]));
        }
      }
      vt.tokens = std::move(surviving);
    }
  }
  return fc;
}

}  // namespace avrank
