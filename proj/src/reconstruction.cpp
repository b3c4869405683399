#include "fqsmooth/reconstruction.hpp"

#include <algorithm>

#include "fqsmooth/error.hpp"

namespace fqsmooth {

namespace {

// LF for every row in one pass; end-marker rows map to themselves.
std::vector<std::uint32_t> lf_table(const EbwtIndex& index) {
  std::array<std::size_t, kSigma> next{};
  for (std::size_t c = 0; c < kSigma; ++c) next[c] = index.first_row(kSymbols[c]);
  std::vector<std::uint32_t> lf(index.size());
  for (Row r = 0; r < index.size(); ++r) {
    const char s = index.symbol(r);
    lf[r] = s == kEndMarker ? static_cast<std::uint32_t>(r)
                            : static_cast<std::uint32_t>(next[static_cast<std::size_t>(symbol_code(s))]++);
  }
  return lf;
}

}  // namespace

ReadCollection invert(const ReconstructionPlan& plan) {
  const EbwtIndex& index = plan.index;
  const std::size_t m = index.read_count();
  if (!index.has_read_map()) {
    throw Error(ErrorKind::format,
                "index has no read map (.docmap); per-read reconstruction is unavailable");
  }
  if (plan.headers && plan.headers->size() != m) {
    throw Error(ErrorKind::format, "header source has " + std::to_string(plan.headers->size()) +
                                       " reads, index has " + std::to_string(m));
  }

  // Read index of each end-marker row, to verify where each walk ends.
  std::vector<std::uint32_t> marker_read(index.size(), 0);
  {
    std::size_t k = 0;
    for (Row r = 0; r < index.size(); ++r) {
      if (index.symbol(r) == kEndMarker) marker_read[r] = index.dollar_reads()[k++];
    }
  }

  const std::vector<std::uint32_t> lf = lf_table(index);
  std::string symbols(index.ebwt());
  std::string quals(index.qs());
  for (const auto& [row, base] : plan.overlay.bases) symbols.at(row) = base;
  for (const auto& [row, q] : plan.overlay.qualities) quals.at(row) = q;

  ReadCollection out;
  std::size_t visited = 0;
  for (std::size_t j = 0; j < m; ++j) {
    FastqRecord rec;
    if (plan.headers) rec.header = (*plan.headers)[j].header;
    Row p = j;
    while (index.symbol(p) != kEndMarker) {
      rec.bases.push_back(symbols[p]);
      rec.qualities.push_back(quals[p]);
      p = lf[p];
      if (rec.bases.size() > index.size()) break;
    }
    if (index.symbol(p) != kEndMarker || marker_read[p] != j) {
      throw Error(ErrorKind::format, "inconsistent index: walk from row " + std::to_string(j) +
                                         " does not end at the end-marker of read " +
                                         std::to_string(j + 1));
    }
    if (plan.headers && (*plan.headers)[j].bases.size() != rec.bases.size()) {
      throw Error(ErrorKind::format, "inconsistent index: read " + std::to_string(j + 1) +
                                         " reconstructed with wrong length");
    }
    visited += rec.bases.size() + 1;
    std::reverse(rec.bases.begin(), rec.bases.end());
    std::reverse(rec.qualities.begin(), rec.qualities.end());
    out.add(std::move(rec));
  }
  if (visited != index.size()) {
    throw Error(ErrorKind::format, "inconsistent index: walks cover " + std::to_string(visited) +
                                       " of " + std::to_string(index.size()) + " rows");
  }
  return out;
}

}  // namespace fqsmooth
