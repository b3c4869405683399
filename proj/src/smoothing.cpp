#include "fqsmooth/smoothing.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "fqsmooth/error.hpp"

namespace fqsmooth {

void SmoothingConfig::validate() const {
  if (min_context < 1) throw Error(ErrorKind::usage, "minimum context length must be >= 1");
  if (!(freq_threshold > 0.0 && freq_threshold < 1.0)) {
    throw Error(ErrorKind::usage, "frequency threshold must lie strictly between 0 and 1");
  }
  if (context_length < 1) throw Error(ErrorKind::usage, "left context length must be >= 1");
  if (!is_quality_byte(constant_quality)) {
    throw Error(ErrorKind::usage, "constant quality must be a byte in [33,126]");
  }
  if (!is_quality_byte(noise_quality_threshold)) {
    throw Error(ErrorKind::usage, "noise quality threshold must be a byte in [33,126]");
  }
}

namespace {

int base_slot(char b) {
  switch (b) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'N': return 3;
    case 'T': return 4;
    default: return -1;
  }
}

struct FrequentContexts {
  std::set<std::string> first, second;
};

FrequentContexts collect_contexts(const EbwtIndex& index, const ClusterProfile& profile,
                                  std::size_t ell) {
  FrequentContexts ctx;
  const char c = profile.frequent[0];
  const char d = profile.frequent[1];
  for (Row r = profile.interval.start; r <= profile.interval.end; ++r) {
    const char s = index.symbol(r);
    if (s != c && s != d) continue;
    std::string left = index.left_context(r, ell);
    if (left.size() < ell) continue;  // occurrence at a read start
    (s == c ? ctx.first : ctx.second).insert(std::move(left));
  }
  return ctx;
}

std::optional<char> predict_with(const EbwtIndex& index, const ClusterProfile& profile, Row row,
                                 std::size_t ell, const FrequentContexts* contexts) {
  if (profile.frequent.size() == 1) return profile.frequent[0];
  if (profile.frequent.size() != 2) return std::nullopt;

  const std::string own = index.left_context(row, ell);
  if (own.size() < ell) return std::nullopt;
  if (contexts->first == contexts->second) return std::nullopt;
  if (contexts->first.size() == 1 && *contexts->first.begin() == own) return profile.frequent[0];
  if (contexts->second.size() == 1 && *contexts->second.begin() == own) return profile.frequent[1];
  return std::nullopt;
}

}  // namespace

std::size_t ClusterProfile::count(char base) const {
  const int slot = base_slot(base);
  return slot < 0 ? 0 : base_counts[static_cast<std::size_t>(slot)];
}

void RowEdits::set(Row row, char value) {
  if (entries_.empty() || entries_.back().first < row) {
    entries_.emplace_back(row, value);
    return;
  }
  auto it = std::lower_bound(entries_.begin(), entries_.end(), row,
                             [](const Entry& e, Row r) { return e.first < r; });
  if (it != entries_.end() && it->first == row) {
    it->second = value;
  } else {
    entries_.insert(it, {row, value});
  }
}

std::optional<char> RowEdits::find(Row row) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), row,
                             [](const Entry& e, Row r) { return e.first < r; });
  if (it != entries_.end() && it->first == row) return it->second;
  return std::nullopt;
}

void RowEdits::merge(const RowEdits& other) {
  for (const auto& [row, value] : other) set(row, value);
}

ClusterProfile profile_cluster(const EbwtIndex& index, Interval interval,
                               const SmoothingConfig& cfg) {
  ClusterProfile p;
  p.interval = interval;
  for (Row r = interval.start; r <= interval.end; ++r) {
    const char s = index.symbol(r);
    if (s == kEndMarker) continue;
    ++p.base_counts[static_cast<std::size_t>(base_slot(s))];
    ++p.quality_histogram[static_cast<unsigned char>(index.quality(r))];
    ++p.total_bases;
  }
  if (p.total_bases == 0) return p;
  for (std::size_t k = 0; k < p.base_counts.size(); ++k) {
    const double share = static_cast<double>(p.base_counts[k]) / static_cast<double>(p.total_bases);
    if (share > cfg.freq_threshold) p.frequent.push_back(ClusterProfile::kBases[k]);
  }
  return p;
}

std::string detect_noisy(const ClusterProfile& profile, const EbwtIndex& index,
                         const SmoothingConfig& cfg) {
  std::array<bool, 5> has_high{};
  for (Row r = profile.interval.start; r <= profile.interval.end; ++r) {
    const char s = index.symbol(r);
    if (s == kEndMarker) continue;
    if (index.quality(r) >= cfg.noise_quality_threshold) {
      has_high[static_cast<std::size_t>(base_slot(s))] = true;
    }
  }
  std::string noisy;
  for (std::size_t k = 0; k < ClusterProfile::kBases.size(); ++k) {
    const char b = ClusterProfile::kBases[k];
    if (profile.base_counts[k] > 0 && !has_high[k] && !profile.is_frequent(b)) noisy.push_back(b);
  }
  return noisy;
}

std::optional<char> predict_replacement(const EbwtIndex& index, const ClusterProfile& profile,
                                        Row row, const SmoothingConfig& cfg) {
  if (profile.frequent.size() == 2) {
    const FrequentContexts contexts = collect_contexts(index, profile, cfg.context_length);
    return predict_with(index, profile, row, cfg.context_length, &contexts);
  }
  return predict_with(index, profile, row, cfg.context_length, nullptr);
}

char compute_q(const ClusterProfile& profile, const SmoothingConfig& cfg) {
  if (profile.empty()) throw std::invalid_argument("compute_q: cluster has no bases");
  const auto& hist = profile.quality_histogram;
  switch (cfg.strategy) {
    case QualityStrategy::constant:
      return cfg.constant_quality;
    case QualityStrategy::max: {
      for (std::size_t q = hist.size(); q-- > 0;) {
        if (hist[q] > 0) return static_cast<char>(q);
      }
      break;
    }
    case QualityStrategy::average: {
      double sum = 0;
      for (std::size_t q = 0; q < hist.size(); ++q) sum += static_cast<double>(q * hist[q]);
      return static_cast<char>(std::lround(sum / static_cast<double>(profile.total_bases)));
    }
    case QualityStrategy::mean_error: {
      double err = 0;
      for (std::size_t q = 0; q < hist.size(); ++q) {
        if (hist[q] == 0) continue;
        err += static_cast<double>(hist[q]) * std::pow(10.0, -(static_cast<double>(q) - 33.0) / 10.0);
      }
      err /= static_cast<double>(profile.total_bases);
      const long phred = std::lround(-10.0 * std::log10(err));
      return static_cast<char>(std::clamp<long>(33 + phred, kMinQuality, kMaxQuality));
    }
  }
  throw std::logic_error("compute_q: unreachable");
}

EditOverlay smooth_cluster(const EbwtIndex& index, const ClusterProfile& profile, char q,
                           const SmoothingConfig& cfg) {
  EditOverlay out;
  if (profile.empty()) return out;

  std::string noisy;
  std::optional<FrequentContexts> contexts;
  const bool edit_bases = cfg.base_edits && !profile.frequent.empty() && profile.frequent.size() <= 2;
  if (edit_bases) {
    noisy = detect_noisy(profile, index, cfg);
    if (!noisy.empty() && profile.frequent.size() == 2) {
      contexts = collect_contexts(index, profile, cfg.context_length);
    }
  }

  for (Row r = profile.interval.start; r <= profile.interval.end; ++r) {
    const char s = index.symbol(r);
    if (s == kEndMarker) continue;
    if (profile.is_frequent(s) || index.quality(r) > q) out.qualities.set(r, q);
    if (!noisy.empty() && noisy.find(s) != std::string::npos) {
      auto replacement = predict_with(index, profile, r, cfg.context_length,
                                      contexts ? &*contexts : nullptr);
      if (replacement) out.bases.set(r, *replacement);
    }
  }
  return out;
}

char apply_binning(char quality) {
  const int phred = quality - 33;
  int binned;
  if (phred < 2) binned = phred;
  else if (phred < 10) binned = 6;
  else if (phred < 20) binned = 15;
  else if (phred < 25) binned = 22;
  else if (phred < 30) binned = 27;
  else if (phred < 35) binned = 33;
  else if (phred < 40) binned = 37;
  else binned = 40;
  return static_cast<char>(binned + 33);
}

EditOverlay run_smoothing(const EbwtIndex& index, const ClusterSet& clusters,
                          const SmoothingConfig& cfg, SmoothingStats* stats) {
  SmoothingStats local;
  EditOverlay overlay;
  for (const Interval& interval : clusters.clusters) {
    ++local.clusters;
    const ClusterProfile profile = profile_cluster(index, interval, cfg);
    if (profile.empty()) continue;
    ++local.clusters_with_bases;
    local.bases_in_clusters += profile.total_bases;
    if (profile.frequent.size() > 2) ++local.clusters_skipped_edits;

    const EditOverlay fragment = smooth_cluster(index, profile, compute_q(profile, cfg), cfg);
    overlay.bases.merge(fragment.bases);
    overlay.qualities.merge(fragment.qualities);
  }
  local.bases_edited = overlay.bases.size();
  local.qualities_smoothed = overlay.qualities.size();

  if (cfg.binning) {
    RowEdits binned;
    auto edit = overlay.qualities.begin();
    for (Row r = 0; r < index.size(); ++r) {
      if (index.symbol(r) == kEndMarker) continue;
      while (edit != overlay.qualities.end() && edit->first < r) ++edit;
      if (edit != overlay.qualities.end() && edit->first == r) {
        binned.set(r, apply_binning(edit->second));
      } else if (const char b = apply_binning(index.quality(r)); b != index.quality(r)) {
        binned.set(r, b);
      }
    }
    overlay.qualities = std::move(binned);
  }

  if (stats) *stats = local;
  return overlay;
}

}  // namespace fqsmooth
