#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fqsmooth {

/// Phred+33 bounds for quality bytes.
inline constexpr char kMinQuality = 33;
inline constexpr char kMaxQuality = 126;

inline constexpr bool is_quality_byte(char q) {
  return q >= kMinQuality && q <= kMaxQuality;
}

inline constexpr bool is_base(char b) {
  return b == 'A' || b == 'C' || b == 'G' || b == 'T' || b == 'N';
}

struct FastqRecord {
  std::string header;     // header text without the leading '@'
  std::string bases;      // over {A,C,G,T,N}
  std::string qualities;  // Phred+33, same length as bases

  friend bool operator==(const FastqRecord&, const FastqRecord&) = default;
};

/**
 * An ordered set of reads. Every record added is validated: non-empty, equal
 * base and quality lengths, bases in {A,C,G,T,N} and qualities in [33,126].
 */
class ReadCollection {
 public:
  ReadCollection() = default;

  /// Throws FastqError (record index = size() + 1) on an invalid record.
  void add(FastqRecord record);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const FastqRecord& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<FastqRecord>& records() const noexcept { return records_; }

  auto begin() const noexcept { return records_.begin(); }
  auto end() const noexcept { return records_.end(); }

  /// Total length counting one end-marker per read.
  std::size_t total_length() const noexcept { return total_length_; }

  friend bool operator==(const ReadCollection& a, const ReadCollection& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<FastqRecord> records_;
  std::size_t total_length_ = 0;
};

struct ParseStats {
  std::size_t records = 0;
  std::size_t normalized_bases = 0;  // bases outside ACGTN rewritten to N
};

/**
 * Parse 4-line FASTQ records. Lowercase bases are uppercased, other non-ACGTN
 * symbols become 'N'. The text after '+' is discarded. A trailing '\r' on any
 * line is dropped.
 *
 * Throws FastqError carrying the 1-based record index on truncated records,
 * missing '@'/'+' sentinels, empty reads and length mismatches.
 */
ReadCollection parse_fastq(std::string_view text, ParseStats* stats = nullptr);

enum class HeaderPolicy { keep, strip };

/// Serialize as 4-line records; `strip` writes every header as a bare "@".
std::string write_fastq(const ReadCollection& reads, HeaderPolicy policy);

}  // namespace fqsmooth
