#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fqsmooth/fastq.hpp"

namespace fqsmooth {

/// EBWT rows are 0-based: row r holds the symbol circularly preceding the
/// r-th smallest context. Rows 0..m-1 are the end-marker contexts $_1..$_m.
using Row = std::size_t;

inline constexpr char kEndMarker = '$';
inline constexpr char kEndMarkerQuality = '!';

/// Symbol ranks in the order $ < A < C < G < N < T.
inline constexpr std::size_t kSigma = 6;
inline constexpr std::array<char, kSigma> kSymbols = {'$', 'A', 'C', 'G', 'N', 'T'};

constexpr int symbol_code(char c) {
  switch (c) {
    case '$': return 0;
    case 'A': return 1;
    case 'C': return 2;
    case 'G': return 3;
    case 'N': return 4;
    case 'T': return 5;
    default: return -1;
  }
}

struct BuildOptions {
  /// Refuse collections whose total length (bases + end-markers) exceeds this.
  std::size_t max_symbols = std::size_t{1} << 31;
  /// Occurrence checkpoints are stored every 2^rank_sample_log2 rows.
  unsigned rank_sample_log2 = 9;
};

/**
 * Extended BWT of a read collection together with the BWT-permuted quality
 * string, the LCP array and rank support for LF navigation.
 *
 * lcp(r) is the longest common prefix of the contexts at rows r-1 and r;
 * lcp(0) == 0 and the virtual lcp(size()) == 0. End-markers are pairwise
 * distinct, so they never contribute to a common prefix.
 *
 * Immutable once built; safe to share across threads.
 */
class EbwtIndex {
 public:
  /// Assemble an index from raw columns, validating lengths, symbols and the
  /// end-marker quality placeholder. `dollar_reads` may be empty when unknown.
  static EbwtIndex from_columns(std::string ebwt, std::string qs,
                                std::vector<std::uint32_t> lcp,
                                std::vector<std::uint32_t> dollar_reads,
                                unsigned rank_sample_log2 = 9);

  std::size_t size() const noexcept { return ebwt_.size(); }
  std::size_t read_count() const noexcept { return counts_[0]; }

  std::string_view ebwt() const noexcept { return ebwt_; }
  std::string_view qs() const noexcept { return qs_; }
  /// N values for rows 0..N-1; the trailing virtual zero is not stored.
  std::span<const std::uint32_t> lcp() const noexcept { return lcp_; }

  char symbol(Row r) const { return ebwt_[r]; }
  char quality(Row r) const { return qs_[r]; }
  std::uint32_t lcp_at(Row r) const { return r < lcp_.size() ? lcp_[r] : 0; }

  /// Occurrences of `c` in ebwt[0, r).
  std::size_t rank(char c, Row r) const;
  /// C-table: number of symbols in ebwt smaller than `c`.
  std::size_t first_row(char c) const { return cumulative_[code_or_throw(c)]; }
  std::size_t count(char c) const { return counts_[code_or_throw(c)]; }

  /// LF mapping. Throws std::out_of_range for a bad row and
  /// std::invalid_argument when the row holds an end-marker.
  Row lf(Row r) const;

  /// Up to `ell` bases preceding ebwt[r] in its read, in read order. The walk
  /// stops early at the read start.
  std::string left_context(Row r, std::size_t ell) const;

  /// Read index (0-based) terminated by each end-marker, in the order the
  /// end-markers occur in ebwt. Empty when imported without a docmap.
  const std::vector<std::uint32_t>& dollar_reads() const noexcept { return dollar_reads_; }
  bool has_read_map() const noexcept { return !dollar_reads_.empty() || read_count() == 0; }

 private:
  static std::size_t code_or_throw(char c);
  void build_rank_support(unsigned sample_log2);

  std::string ebwt_;
  std::string qs_;
  std::vector<std::uint32_t> lcp_;
  std::vector<std::uint32_t> dollar_reads_;

  std::array<std::size_t, kSigma> counts_{};
  std::array<std::size_t, kSigma> cumulative_{};
  unsigned sample_log2_ = 9;
  std::vector<std::array<std::uint32_t, kSigma>> checkpoints_;
};

/// Sorts every read suffix (each ending in its own end-marker, with
/// $_i < $_j for i < j) and derives ebwt, qs and lcp.
EbwtIndex build_index(const ReadCollection& reads, const BuildOptions& options = {});

/// Integer width of values in the `.lcp` file.
enum class LcpWidth : std::uint8_t { one = 1, four = 4 };

/**
 * Write `<prefix>.ebwt`, `<prefix>.ebwt.qs`, `<prefix>.lcp` and, when the read
 * map is known, `<prefix>.docmap`. Without an explicit width the narrowest one
 * holding every value is used. Throws Error(format) on width overflow.
 */
void export_index(const EbwtIndex& index, const std::filesystem::path& prefix,
                  std::optional<LcpWidth> width = std::nullopt);

/// Inverse of export_index. A missing `.docmap` yields an index usable for
/// clustering and smoothing but without a read map.
EbwtIndex import_index(const std::filesystem::path& prefix);

}  // namespace fqsmooth
