#include "fqsmooth/fastq.hpp"

#include <cctype>

#include "fqsmooth/error.hpp"

namespace fqsmooth {

void ReadCollection::add(FastqRecord record) {
  const std::size_t index = records_.size() + 1;
  if (record.bases.empty()) throw FastqError(index, "empty read");
  if (record.bases.size() != record.qualities.size()) {
    throw FastqError(index, "bases/quality length mismatch (" +
                                std::to_string(record.bases.size()) + " vs " +
                                std::to_string(record.qualities.size()) + ")");
  }
  for (char b : record.bases) {
    if (!is_base(b)) throw FastqError(index, std::string("invalid base '") + b + "'");
  }
  for (char q : record.qualities) {
    if (!is_quality_byte(q)) {
      throw FastqError(index, "quality byte " +
                                  std::to_string(static_cast<unsigned char>(q)) +
                                  " outside [33,126]");
    }
  }
  total_length_ += record.bases.size() + 1;
  records_.push_back(std::move(record));
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t eol = text_.find('\n', pos_);
    if (eol == std::string_view::npos) eol = text_.size();
    line = text_.substr(pos_, eol - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = eol + 1;
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

char normalize_base(char c, std::size_t& normalized) {
  char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (is_base(u)) return u;
  ++normalized;
  return 'N';
}

}  // namespace

ReadCollection parse_fastq(std::string_view text, ParseStats* stats) {
  ReadCollection out;
  ParseStats local;
  LineReader lines(text);
  std::string_view line;

  while (lines.next(line)) {
    if (line.empty()) continue;  // blank lines between/after records
    const std::size_t index = out.size() + 1;
    if (line.front() != '@') throw FastqError(index, "header line does not start with '@'");

    FastqRecord rec;
    rec.header.assign(line.substr(1));

    std::string_view bases, sep, quals;
    if (!lines.next(bases)) throw FastqError(index, "truncated record (missing bases)");
    if (!lines.next(sep)) throw FastqError(index, "truncated record (missing separator)");
    if (sep.empty() || sep.front() != '+') {
      throw FastqError(index, "separator line does not start with '+'");
    }
    if (!lines.next(quals)) throw FastqError(index, "truncated record (missing qualities)");

    rec.bases.reserve(bases.size());
    for (char c : bases) rec.bases.push_back(normalize_base(c, local.normalized_bases));
    rec.qualities.assign(quals);
    out.add(std::move(rec));
  }

  local.records = out.size();
  if (stats) *stats = local;
  return out;
}

std::string write_fastq(const ReadCollection& reads, HeaderPolicy policy) {
  std::string out;
  std::size_t bytes = 0;
  for (const auto& r : reads) {
    bytes += 2 * r.bases.size() + 6 + (policy == HeaderPolicy::keep ? r.header.size() : 0);
  }
  out.reserve(bytes);
  for (const auto& r : reads) {
    out.push_back('@');
    if (policy == HeaderPolicy::keep) out += r.header;
    out.push_back('\n');
    out += r.bases;
    out += "\n+\n";
    out += r.qualities;
    out.push_back('\n');
  }
  return out;
}

}  // namespace fqsmooth
