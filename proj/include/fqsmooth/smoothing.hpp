#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqsmooth/clustering.hpp"
#include "fqsmooth/ebwt_index.hpp"
#include "fqsmooth/fastq.hpp"

namespace fqsmooth {

/// How the replacement quality Q of a cluster is chosen.
enum class QualityStrategy {
  constant,    // a fixed byte
  mean_error,  // Phred value of the mean error probability
  max,         // highest quality in the cluster
  average,     // rounded arithmetic mean of the quality bytes
};

struct SmoothingConfig {
  std::uint32_t min_context = 30;  // k_m
  QualityStrategy strategy = QualityStrategy::constant;
  char constant_quality = '@';
  double freq_threshold = 0.40;     // strict: count/total > threshold
  std::size_t context_length = 1;   // left context used to pick between two frequent bases
  char noise_quality_threshold = '5';  // Phred 20; "low" means strictly below
  bool binning = false;
  bool base_edits = true;
  HeaderPolicy header_policy = HeaderPolicy::strip;

  /// Throws Error(usage) when a field is out of range.
  void validate() const;
};

/// Base and quality statistics of one cluster; end-markers are not counted.
struct ClusterProfile {
  static constexpr std::array<char, 5> kBases = {'A', 'C', 'G', 'N', 'T'};

  Interval interval;
  std::array<std::size_t, 5> base_counts{};  // indexed like kBases
  std::size_t total_bases = 0;
  std::string frequent;  // frequent symbols in A<C<G<N<T order
  std::array<std::size_t, 128> quality_histogram{};

  bool empty() const noexcept { return total_bases == 0; }
  std::size_t count(char base) const;
  bool is_frequent(char base) const noexcept {
    return frequent.find(base) != std::string::npos;
  }
};

/// Edits keyed by ebwt row, kept sorted by row.
class RowEdits {
 public:
  using Entry = std::pair<Row, char>;

  void set(Row row, char value);
  std::optional<char> find(Row row) const;
  char value_or(Row row, char fallback) const {
    auto v = find(row);
    return v ? *v : fallback;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Append another edit set whose rows all lie after ours (or overwrite).
  void merge(const RowEdits& other);

  friend bool operator==(const RowEdits&, const RowEdits&) = default;

 private:
  std::vector<Entry> entries_;
};

struct EditOverlay {
  RowEdits bases;
  RowEdits qualities;

  bool empty() const noexcept { return bases.empty() && qualities.empty(); }
  friend bool operator==(const EditOverlay&, const EditOverlay&) = default;
};

struct SmoothingStats {
  std::size_t clusters = 0;
  std::size_t clusters_with_bases = 0;   // non-empty profiles
  std::size_t clusters_skipped_edits = 0;  // more than two frequent symbols
  std::size_t bases_in_clusters = 0;
  std::size_t bases_edited = 0;
  std::size_t qualities_smoothed = 0;
};

ClusterProfile profile_cluster(const EbwtIndex& index, Interval interval,
                               const SmoothingConfig& cfg);

/// Non-frequent symbols present in the cluster whose every occurrence has a
/// quality below cfg.noise_quality_threshold.
std::string detect_noisy(const ClusterProfile& profile, const EbwtIndex& index,
                         const SmoothingConfig& cfg);

/**
 * Replacement for the noisy base at `row`. With one frequent symbol that
 * symbol is returned. With two, the left contexts of every occurrence of each
 * are collected; if both sets agree nothing is returned, otherwise the symbol
 * whose context set is exactly {context of row} wins. Returns nothing with
 * zero or more than two frequent symbols, or when the context of `row` is cut
 * short by the read start.
 */
std::optional<char> predict_replacement(const EbwtIndex& index, const ClusterProfile& profile,
                                        Row row, const SmoothingConfig& cfg);

/// Throws std::invalid_argument on an empty profile.
char compute_q(const ClusterProfile& profile, const SmoothingConfig& cfg);

/// Edits for one cluster: quality -> Q where the base is frequent or the
/// quality exceeds Q; noisy bases replaced when base edits are enabled.
EditOverlay smooth_cluster(const EbwtIndex& index, const ClusterProfile& profile, char q,
                           const SmoothingConfig& cfg);

/// Illumina 8-level binning on a Phred+33 byte.
char apply_binning(char quality);

EditOverlay run_smoothing(const EbwtIndex& index, const ClusterSet& clusters,
                          const SmoothingConfig& cfg, SmoothingStats* stats = nullptr);

}  // namespace fqsmooth
