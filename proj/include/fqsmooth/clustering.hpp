#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fqsmooth {

/// Closed interval of ebwt rows [start, end], 0-based, with start < end.
struct Interval {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start + 1; }
  bool contains(std::size_t r) const noexcept { return r >= start && r <= end; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ClusterSet {
  std::vector<Interval> clusters;  // disjoint, sorted by start
  std::uint32_t min_context = 0;   // k_m used to detect them
};

struct ClusterBitvectors {
  std::vector<bool> above_threshold;  // lcp[i] >= k_m
  std::vector<bool> local_minimum;    // lcp[i-1] > lcp[i] <= lcp[i+1], never at i = 0
};

/// `lcp` holds rows 0..N-1; the value past the end is taken as 0.
ClusterBitvectors compute_bitvectors(std::span<const std::uint32_t> lcp, std::uint32_t min_context);

/**
 * A positional cluster is a maximal row interval [i, j] such that every
 * r in (i, j] is above threshold and not a local minimum. Each maximal run of
 * qualifying rows [s, e] yields the cluster [s-1, e]; singletons never arise.
 */
ClusterSet enumerate_clusters(const ClusterBitvectors& bits, std::uint32_t min_context = 0);

/**
 * Single left-to-right pass over lcp values, e.g. straight from a `.lcp` file.
 * Holds one value of lookahead: the decision for row r is taken when lcp[r+1]
 * arrives (or at finish()).
 */
class ClusterScanner {
 public:
  explicit ClusterScanner(std::uint32_t min_context) : min_context_(min_context) {}

  void push(std::uint32_t lcp_value);
  ClusterSet finish();

 private:
  void decide(std::uint32_t next);

  std::uint32_t min_context_;
  std::size_t seen_ = 0;
  std::uint32_t prev_ = 0;
  std::uint32_t cur_ = 0;
  bool run_open_ = false;
  std::size_t run_start_ = 0;
  ClusterSet out_;
};

/// compute_bitvectors followed by enumerate_clusters, in one streaming pass.
ClusterSet detect_clusters(std::span<const std::uint32_t> lcp, std::uint32_t min_context);

}  // namespace fqsmooth
