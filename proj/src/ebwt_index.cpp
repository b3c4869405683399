#include "fqsmooth/ebwt_index.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "fqsmooth/error.hpp"
#include "file_io.hpp"

namespace fqsmooth {

namespace {

using u32 = std::uint32_t;

// Suffix array of an integer text by prefix doubling with radix passes.
// Symbols are in [1, alphabet]; 0 is reserved for "past the end".
// Every end-marker is a distinct symbol, so the number of doubling rounds is
// bounded by log2 of the longest read.
std::vector<u32> suffix_array(const std::vector<u32>& text, u32 alphabet) {
  const std::size_t n = text.size();
  std::vector<u32> sa(n), rank(text), tmp(n), counts(std::max<std::size_t>(alphabet, n) + 2);

  for (u32 v : text) ++counts[v];
  for (std::size_t v = 1; v < counts.size(); ++v) counts[v] += counts[v - 1];
  for (std::size_t i = n; i-- > 0;) sa[--counts[text[i]]] = static_cast<u32>(i);

  auto assign_ranks = [&](std::size_t h) {
    auto second = [&](u32 p) -> u32 { return p + h < n ? rank[p + h] : 0; };
    tmp[sa[0]] = 1;
    for (std::size_t k = 1; k < n; ++k) {
      const u32 a = sa[k - 1], b = sa[k];
      const bool differs = rank[a] != rank[b] || (h > 0 && second(a) != second(b));
      tmp[b] = tmp[a] + (differs ? 1 : 0);
    }
    std::swap(rank, tmp);
    return rank[sa[n - 1]];
  };

  if (n == 0) return sa;
  u32 distinct = assign_ranks(0);

  std::vector<u32> by_second(n);
  for (std::size_t h = 1; distinct < n; h <<= 1) {
    // Order by the rank of the suffix starting h positions later.
    std::size_t k = 0;
    for (std::size_t i = n - std::min(h, n); i < n; ++i) by_second[k++] = static_cast<u32>(i);
    for (u32 p : sa) {
      if (p >= h) by_second[k++] = static_cast<u32>(p - h);
    }
    // Stable counting sort by the leading rank.
    std::fill(counts.begin(), counts.begin() + distinct + 2, 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[rank[i]];
    for (std::size_t v = 1; v <= distinct + 1; ++v) counts[v] += counts[v - 1];
    for (std::size_t i = n; i-- > 0;) {
      const u32 p = by_second[i];
      sa[--counts[rank[p]]] = p;
    }
    distinct = assign_ranks(h);
  }
  return sa;
}

}  // namespace

std::size_t EbwtIndex::code_or_throw(char c) {
  const int code = symbol_code(c);
  if (code < 0) throw std::invalid_argument(std::string("not an ebwt symbol: '") + c + "'");
  return static_cast<std::size_t>(code);
}

void EbwtIndex::build_rank_support(unsigned sample_log2) {
  sample_log2_ = sample_log2;
  counts_.fill(0);
  const std::size_t step = std::size_t{1} << sample_log2_;
  checkpoints_.assign((ebwt_.size() >> sample_log2_) + 1, {});
  std::array<std::uint32_t, kSigma> running{};
  for (std::size_t r = 0; r < ebwt_.size(); ++r) {
    if ((r & (step - 1)) == 0) checkpoints_[r >> sample_log2_] = running;
    ++running[static_cast<std::size_t>(symbol_code(ebwt_[r]))];
  }
  if ((ebwt_.size() & (step - 1)) == 0) checkpoints_[ebwt_.size() >> sample_log2_] = running;
  std::size_t acc = 0;
  for (std::size_t c = 0; c < kSigma; ++c) {
    counts_[c] = running[c];
    cumulative_[c] = acc;
    acc += running[c];
  }
}

EbwtIndex EbwtIndex::from_columns(std::string ebwt, std::string qs, std::vector<std::uint32_t> lcp,
                                  std::vector<std::uint32_t> dollar_reads,
                                  unsigned rank_sample_log2) {
  if (qs.size() != ebwt.size() || lcp.size() != ebwt.size()) {
    throw Error(ErrorKind::format, "ebwt/qs/lcp length mismatch (" + std::to_string(ebwt.size()) +
                                       ", " + std::to_string(qs.size()) + ", " +
                                       std::to_string(lcp.size()) + ")");
  }
  std::size_t markers = 0;
  for (std::size_t r = 0; r < ebwt.size(); ++r) {
    if (symbol_code(ebwt[r]) < 0) {
      throw Error(ErrorKind::format, "invalid ebwt symbol at row " + std::to_string(r));
    }
    if (ebwt[r] == kEndMarker) {
      ++markers;
      if (qs[r] != kEndMarkerQuality) {
        throw Error(ErrorKind::format, "end-marker row " + std::to_string(r) +
                                           " lacks the '!' quality placeholder");
      }
    } else if (!is_quality_byte(qs[r])) {
      throw Error(ErrorKind::format, "quality byte out of range at row " + std::to_string(r));
    }
  }
  if (!lcp.empty() && lcp[0] != 0) throw Error(ErrorKind::format, "lcp[0] must be 0");
  if (!dollar_reads.empty()) {
    if (dollar_reads.size() != markers) {
      throw Error(ErrorKind::format, "docmap has " + std::to_string(dollar_reads.size()) +
                                         " entries for " + std::to_string(markers) +
                                         " end-markers");
    }
    std::vector<bool> seen(markers, false);
    for (std::uint32_t j : dollar_reads) {
      if (j >= markers || seen[j]) throw Error(ErrorKind::format, "docmap is not a permutation");
      seen[j] = true;
    }
  }

  EbwtIndex index;
  index.ebwt_ = std::move(ebwt);
  index.qs_ = std::move(qs);
  index.lcp_ = std::move(lcp);
  index.dollar_reads_ = std::move(dollar_reads);
  index.build_rank_support(rank_sample_log2);
  return index;
}

std::size_t EbwtIndex::rank(char c, Row r) const {
  if (r > ebwt_.size()) throw std::out_of_range("rank: row " + std::to_string(r) + " out of range");
  const std::size_t code = code_or_throw(c);
  const std::size_t block = r >> sample_log2_;
  std::size_t n = checkpoints_[block][code];
  for (std::size_t i = block << sample_log2_; i < r; ++i) n += (ebwt_[i] == c);
  return n;
}

Row EbwtIndex::lf(Row r) const {
  if (r >= ebwt_.size()) throw std::out_of_range("lf: row " + std::to_string(r) + " out of range");
  const char c = ebwt_[r];
  if (c == kEndMarker) throw std::invalid_argument("lf: row " + std::to_string(r) + " holds '$'");
  return cumulative_[code_or_throw(c)] + rank(c, r);
}

std::string EbwtIndex::left_context(Row r, std::size_t ell) const {
  if (r >= ebwt_.size()) {
    throw std::out_of_range("left_context: row " + std::to_string(r) + " out of range");
  }
  std::string ctx;
  Row p = r;
  while (ctx.size() < ell && ebwt_[p] != kEndMarker) {
    p = lf(p);
    if (ebwt_[p] == kEndMarker) break;
    ctx.push_back(ebwt_[p]);
  }
  std::reverse(ctx.begin(), ctx.end());
  return ctx;
}

EbwtIndex build_index(const ReadCollection& reads, const BuildOptions& options) {
  const std::size_t n = reads.total_length();
  if (n > options.max_symbols || n >= std::numeric_limits<u32>::max()) {
    throw Error(ErrorKind::usage, "collection of " + std::to_string(n) +
                                      " symbols exceeds the index size budget of " +
                                      std::to_string(options.max_symbols));
  }
  const u32 m = static_cast<u32>(reads.size());

  // End-marker of read j is symbol j+1; bases follow in the order A<C<G<N<T.
  std::vector<u32> text;
  std::string text_quals;
  std::vector<u32> read_starts;
  text.reserve(n);
  text_quals.reserve(n);
  read_starts.reserve(m);
  for (u32 j = 0; j < m; ++j) {
    const auto& rec = reads[j];
    read_starts.push_back(static_cast<u32>(text.size()));
    for (char b : rec.bases) text.push_back(m + static_cast<u32>(symbol_code(b)));
    text.push_back(j + 1);
    text_quals += rec.qualities;
    text_quals.push_back(kEndMarkerQuality);
  }

  const std::vector<u32> sa = suffix_array(text, m + static_cast<u32>(kSigma));

  std::string ebwt(n, kEndMarker);
  std::string qs(n, kEndMarkerQuality);
  std::vector<u32> dollar_reads;
  dollar_reads.reserve(m);
  for (std::size_t r = 0; r < n; ++r) {
    const u32 p = sa[r];
    if (p == 0 || text[p - 1] <= m) {
      // p starts a read: the circular predecessor is that read's end-marker.
      auto it = std::upper_bound(read_starts.begin(), read_starts.end(), p);
      dollar_reads.push_back(static_cast<u32>(it - read_starts.begin() - 1));
    } else {
      ebwt[r] = kSymbols[text[p - 1] - m];
      qs[r] = text_quals[p - 1];
    }
  }

  // Kasai et al.; distinct end-markers stop every comparison at read ends.
  std::vector<u32> lcp(n, 0);
  {
    std::vector<u32> inverse(n);
    for (std::size_t r = 0; r < n; ++r) inverse[sa[r]] = static_cast<u32>(r);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const u32 r = inverse[i];
      if (r == 0) {
        h = 0;
        continue;
      }
      const std::size_t j = sa[r - 1];
      while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
      lcp[r] = static_cast<u32>(h);
      if (h > 0) --h;
    }
  }

  return EbwtIndex::from_columns(std::move(ebwt), std::move(qs), std::move(lcp),
                                 std::move(dollar_reads), options.rank_sample_log2);
}

namespace {

void put_le(std::string& out, std::uint32_t v, std::size_t width) {
  for (std::size_t b = 0; b < width; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint32_t get_le(std::string_view in, std::size_t offset, std::size_t width) {
  std::uint32_t v = 0;
  for (std::size_t b = 0; b < width; ++b) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + b])) << (8 * b);
  }
  return v;
}

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return std::filesystem::path(prefix.string() + suffix);
}

}  // namespace

void export_index(const EbwtIndex& index, const std::filesystem::path& prefix,
                  std::optional<LcpWidth> width) {
  const auto lcp = index.lcp();
  const std::uint32_t max_lcp = lcp.empty() ? 0 : *std::max_element(lcp.begin(), lcp.end());
  const LcpWidth w = width.value_or(max_lcp <= 0xFF ? LcpWidth::one : LcpWidth::four);
  const std::size_t bytes = static_cast<std::size_t>(w);
  if (w == LcpWidth::one && max_lcp > 0xFF) {
    throw Error(ErrorKind::format, "lcp value " + std::to_string(max_lcp) +
                                       " overflows the 1-byte lcp width");
  }

  std::string lcp_file;
  lcp_file.reserve(1 + lcp.size() * bytes);
  lcp_file.push_back(static_cast<char>(bytes));
  for (std::uint32_t v : lcp) put_le(lcp_file, v, bytes);

  detail::write_file(with_suffix(prefix, ".ebwt"), index.ebwt());
  detail::write_file(with_suffix(prefix, ".ebwt.qs"), index.qs());
  detail::write_file(with_suffix(prefix, ".lcp"), lcp_file);
  if (!index.dollar_reads().empty()) {
    std::string docmap;
    docmap.reserve(index.dollar_reads().size() * 4);
    for (std::uint32_t j : index.dollar_reads()) put_le(docmap, j, 4);
    detail::write_file(with_suffix(prefix, ".docmap"), docmap);
  }
}

EbwtIndex import_index(const std::filesystem::path& prefix) {
  std::string ebwt = detail::read_file(with_suffix(prefix, ".ebwt"));
  std::string qs = detail::read_file(with_suffix(prefix, ".ebwt.qs"));
  const std::string lcp_file = detail::read_file(with_suffix(prefix, ".lcp"));

  if (lcp_file.empty()) throw Error(ErrorKind::format, "lcp file is missing its width header");
  const std::size_t width = static_cast<unsigned char>(lcp_file[0]);
  if (width != 1 && width != 4) {
    throw Error(ErrorKind::format, "unsupported lcp width " + std::to_string(width));
  }
  if (lcp_file.size() != 1 + ebwt.size() * width) {
    throw Error(ErrorKind::format, "lcp file length does not match ebwt length " +
                                       std::to_string(ebwt.size()));
  }
  std::vector<std::uint32_t> lcp(ebwt.size());
  for (std::size_t r = 0; r < lcp.size(); ++r) lcp[r] = get_le(lcp_file, 1 + r * width, width);

  std::vector<std::uint32_t> dollar_reads;
  const auto docmap_path = with_suffix(prefix, ".docmap");
  if (std::filesystem::exists(docmap_path)) {
    const std::string docmap = detail::read_file(docmap_path);
    if (docmap.size() % 4 != 0) throw Error(ErrorKind::format, "docmap length is not a multiple of 4");
    dollar_reads.resize(docmap.size() / 4);
    for (std::size_t k = 0; k < dollar_reads.size(); ++k) dollar_reads[k] = get_le(docmap, 4 * k, 4);
    if (dollar_reads.empty() && std::count(ebwt.begin(), ebwt.end(), kEndMarker) > 0) {
      throw Error(ErrorKind::format, "empty docmap for a non-empty index");
    }
  }
  return EbwtIndex::from_columns(std::move(ebwt), std::move(qs), std::move(lcp),
                                 std::move(dollar_reads));
}

}  // namespace fqsmooth
