#include "fqsmooth/clustering.hpp"

namespace fqsmooth {

ClusterBitvectors compute_bitvectors(std::span<const std::uint32_t> lcp, std::uint32_t min_context) {
  const std::size_t n = lcp.size();
  ClusterBitvectors bits;
  bits.above_threshold.assign(n, false);
  bits.local_minimum.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    bits.above_threshold[i] = lcp[i] >= min_context;
    if (i > 0) {
      const std::uint32_t next = i + 1 < n ? lcp[i + 1] : 0;
      bits.local_minimum[i] = lcp[i - 1] > lcp[i] && lcp[i] <= next;
    }
  }
  return bits;
}

ClusterSet enumerate_clusters(const ClusterBitvectors& bits, std::uint32_t min_context) {
  ClusterSet out;
  out.min_context = min_context;
  const std::size_t n = bits.above_threshold.size();
  std::size_t r = 1;
  while (r < n) {
    if (!(bits.above_threshold[r] && !bits.local_minimum[r])) {
      ++r;
      continue;
    }
    const std::size_t run_start = r;
    while (r < n && bits.above_threshold[r] && !bits.local_minimum[r]) ++r;
    out.clusters.push_back({run_start - 1, r - 1});
  }
  return out;
}

void ClusterScanner::decide(std::uint32_t next) {
  const std::size_t r = seen_ - 1;  // row of cur_
  const bool minimum = r > 0 && prev_ > cur_ && cur_ <= next;
  const bool qualifies = r > 0 && cur_ >= min_context_ && !minimum;
  if (qualifies && !run_open_) {
    run_open_ = true;
    run_start_ = r;
  } else if (!qualifies && run_open_) {
    run_open_ = false;
    out_.clusters.push_back({run_start_ - 1, r - 1});
  }
}

void ClusterScanner::push(std::uint32_t lcp_value) {
  if (seen_ > 0) {
    decide(lcp_value);
    prev_ = cur_;
  }
  cur_ = lcp_value;
  ++seen_;
}

ClusterSet ClusterScanner::finish() {
  if (seen_ > 0) decide(0);
  if (run_open_) {
    run_open_ = false;
    out_.clusters.push_back({run_start_ - 1, seen_ - 1});
  }
  out_.min_context = min_context_;
  ClusterSet result = std::move(out_);
  out_ = {};
  seen_ = 0;
  prev_ = cur_ = 0;
  return result;
}

ClusterSet detect_clusters(std::span<const std::uint32_t> lcp, std::uint32_t min_context) {
  ClusterScanner scanner(min_context);
  for (std::uint32_t v : lcp) scanner.push(v);
  return scanner.finish();
}

}  // namespace fqsmooth
