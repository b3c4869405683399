// One line per acceptance criterion; exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fqsmooth/clustering.hpp"
#include "fqsmooth/ebwt_index.hpp"
#include "fqsmooth/pipeline.hpp"
#include "fqsmooth/reconstruction.hpp"
#include "fqsmooth/smoothing.hpp"
#include "fqsmooth/stream_codec.hpp"
#include "fqsmooth/varcall_metrics.hpp"
#include "support/naive_oracle.hpp"
#include "support/random_reads.hpp"
#include "support/example_reads.hpp"

using namespace fqsmooth;

namespace {

// Thrown by expect() to abort a criterion with a reason.
struct Failure {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds,
               const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string why;
  try {
    body();
  } catch (const Failure& f) {
    why = f.why;
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (why.empty() && limit_seconds > 0 && secs > limit_seconds) {
    std::ostringstream os;
    os << "took " << secs << " s, limit " << limit_seconds << " s";
    why = os.str();
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.3fs", secs);
  std::cout << (why.empty() ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << timing
            << ")";
  if (!why.empty()) {
    std::cout << ": " << why;
    ++failures;
  }
  std::cout << std::endl;
}

ReadCollection strip_headers(const ReadCollection& rc) {
  ReadCollection out;
  for (const auto& r : rc) out.add({"", r.bases, r.qualities});
  return out;
}

ReadCollection smooth(const ReadCollection& rc, const SmoothingConfig& cfg,
                      EditOverlay* overlay_out = nullptr) {
  const EbwtIndex index = build_index(rc);
  const ClusterSet clusters = detect_clusters(index.lcp(), cfg.min_context);
  EditOverlay overlay = run_smoothing(index, clusters, cfg);
  if (overlay_out) *overlay_out = overlay;
  return invert({index, overlay, &rc});
}

std::string quality_stream(const ReadCollection& rc) {
  std::string q;
  for (const auto& r : rc) q += r.qualities;
  return q;
}

bool have_gzip() { return std::system("gzip --version >/dev/null 2>&1") == 0; }

// Illumina representative levels for Phred >= 2.
const std::set<int> kBinLevels = {6, 15, 22, 27, 33, 37, 40};

}  // namespace

int main() {
  criterion(1, "example ebwt, lcp and bitvectors", 1.0, [] {
    const EbwtIndex index = build_index(example_reads::collection());
    expect(index.ebwt() == example_reads::kEbwt, "ebwt " + std::string(index.ebwt()));
    const auto lcp = index.lcp();
    expect(std::equal(lcp.begin(), lcp.end(), example_reads::kLcp.begin(), example_reads::kLcp.end()),
           "lcp column differs");
    // Printed rows are 1-based.
    expect(index.lcp_at(7) == 4 && index.lcp_at(22) == 6 && index.lcp_at(23) == 2,
           "spot lcp values");
    const auto bits = compute_bitvectors(lcp, example_reads::kMinContext);
    for (std::size_t r = 0; r < lcp.size(); ++r) {
      expect(bits.above_threshold[r] == (example_reads::kThr[r] == 1), "B_thr row " + std::to_string(r + 1));
      expect(bits.local_minimum[r] == (example_reads::kMin[r] == 1), "B_min row " + std::to_string(r + 1));
    }
  });

  criterion(2, "example cluster enumeration", 1.0, [] {
    const auto bits = compute_bitvectors(example_reads::kLcp, example_reads::kMinContext);
    const ClusterSet set = enumerate_clusters(bits, example_reads::kMinContext);
    expect(set.clusters.size() == example_reads::kClusters.size(), "cluster count");
    for (std::size_t i = 0; i < set.clusters.size(); ++i) {
      const auto [s, e] = example_reads::kClusters[i];
      expect(set.clusters[i] == Interval{s - 1, e - 1}, "cluster " + std::to_string(i));
    }
  });

  criterion(3, "ebwt/lcp match the naive oracle on 200 random collections", 30.0, [] {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
      const ReadCollection rc = gen::uniform_collection(rng, 50, 60);
      const EbwtIndex index = build_index(rc);
      const oracle::NaiveEbwt ref = oracle::naive_ebwt(rc);
      expect(index.ebwt() == ref.ebwt, "ebwt, case " + std::to_string(t));
      expect(index.qs() == ref.qs, "qs, case " + std::to_string(t));
      const auto lcp = index.lcp();
      expect(std::equal(lcp.begin(), lcp.end(), ref.lcp.begin(), ref.lcp.end()),
             "lcp, case " + std::to_string(t));
    }
  });

  criterion(4, "invert(build) roundtrip on 200 random collections", 60.0, [] {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
      const ReadCollection rc = gen::uniform_collection(rng, 500, 150);
      const EbwtIndex index = build_index(rc);
      const EditOverlay none;
      expect(invert({index, none, &rc}) == rc, "case " + std::to_string(t));
    }
  });

  criterion(5, "noise reduction golden example", 0, [] {
    const ReadCollection rc = example_reads::collection('#');
    SmoothingConfig cfg;
    cfg.min_context = example_reads::kMinContext;
    const ReadCollection out = smooth(rc, cfg);
    expect(out[2].bases == "ACGAGTACGAC", "read 3 is " + out[2].bases);
    expect(out[0].bases == rc[0].bases && out[1].bases == rc[1].bases, "other reads changed");
  });

  criterion(6, "smoothing invariants on 200 random cases", 0, [] {
    std::mt19937_64 rng(6);
    const QualityStrategy strategies[] = {QualityStrategy::constant, QualityStrategy::max,
                                          QualityStrategy::average};
    for (int t = 0; t < 200; ++t) {
      const std::string tag = "case " + std::to_string(t);
      gen::SimulationParams p;
      p.genome_length = std::uniform_int_distribution<std::size_t>(50, 300)(rng);
      p.reads = std::uniform_int_distribution<std::size_t>(10, 80)(rng);
      p.read_length = std::uniform_int_distribution<std::size_t>(10, 50)(rng);
      p.error_rate = 0.03;
      const ReadCollection rc = gen::simulated_collection(rng, p);

      SmoothingConfig cfg;
      cfg.min_context = std::uniform_int_distribution<std::uint32_t>(3, 12)(rng);
      cfg.strategy = strategies[t % 3];
      cfg.context_length = 1 + t % 3;

      const EbwtIndex index = build_index(rc);
      const ClusterSet clusters = detect_clusters(index.lcp(), cfg.min_context);
      const EditOverlay overlay = run_smoothing(index, clusters, cfg);
      expect(run_smoothing(index, clusters, cfg) == overlay, "nondeterministic, " + tag);

      // Locate the cluster of every edit and recount its contents directly.
      auto owner = [&](Row r) -> const Interval* {
        for (const auto& c : clusters.clusters)
          if (c.contains(r)) return &c;
        return nullptr;
      };
      const auto ebwt = index.ebwt();
      const auto qs = index.qs();
      for (const auto& [row, q] : overlay.qualities) {
        expect(ebwt[row] != '$', "quality edit on $, " + tag);
        const Interval* c = owner(row);
        expect(c != nullptr, "quality edit outside clusters, " + tag);
        int expected = 0;
        long sum = 0, n = 0;
        for (Row r = c->start; r <= c->end; ++r) {
          if (ebwt[r] == '$') continue;
          expected = std::max(expected, int(qs[r]));
          sum += qs[r];
          ++n;
        }
        if (cfg.strategy == QualityStrategy::constant) expected = cfg.constant_quality;
        if (cfg.strategy == QualityStrategy::average)
          expected = int(std::lround(double(sum) / double(n)));
        expect(q == expected, "quality is not the cluster Q, " + tag);
      }
      for (const auto& [row, b] : overlay.bases) {
        expect(ebwt[row] != '$', "base edit on $, " + tag);
        const Interval* c = owner(row);
        expect(c != nullptr, "base edit outside clusters, " + tag);
        std::map<char, int> count;
        int total = 0;
        bool all_low = true;
        for (Row r = c->start; r <= c->end; ++r) {
          if (ebwt[r] == '$') continue;
          ++count[ebwt[r]];
          ++total;
          if (ebwt[r] == ebwt[row] && qs[r] >= cfg.noise_quality_threshold) all_low = false;
        }
        auto frequent = [&](char s) { return double(count[s]) / total > cfg.freq_threshold; };
        expect(!frequent(ebwt[row]) && all_low, "edited base was not noisy, " + tag);
        expect(frequent(b), "replacement not frequent, " + tag);
      }

      const ReadCollection out = invert({index, overlay, &rc});
      expect(out.size() == rc.size(), "read count, " + tag);
      for (std::size_t j = 0; j < rc.size(); ++j) {
        expect(out[j].bases.size() == rc[j].bases.size() &&
                   out[j].qualities.size() == rc[j].qualities.size(),
               "read length, " + tag);
      }
    }
  });

  criterion(7, "quality entropy does not grow under constant Q with binning", 0, [] {
    SmoothingConfig cfg;
    cfg.binning = true;
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      gen::SimulationParams p;
      p.genome_length = std::uniform_int_distribution<std::size_t>(50, 300)(rng);
      p.reads = std::uniform_int_distribution<std::size_t>(10, 80)(rng);
      p.read_length = std::uniform_int_distribution<std::size_t>(10, 50)(rng);
      cfg.min_context = std::uniform_int_distribution<std::uint32_t>(3, 12)(rng);
      const ReadCollection rc = gen::simulated_collection(rng, p);
      const ReadCollection out = smooth(rc, cfg);
      const double before = entropy0(quality_stream(rc));
      const double after = entropy0(quality_stream(out));
      std::ostringstream os;
      os << "case " << t << ": " << before << " -> " << after;
      expect(after <= before, os.str());
    }

    const ReadCollection sample = load_fastq(FQSMOOTH_TEST_DATA "/sample_10k.fastq.gz");
    cfg.min_context = 30;
    const ReadCollection out = smooth(sample, cfg);
    const double before = entropy0(quality_stream(sample));
    const double after = entropy0(quality_stream(out));
    std::ostringstream os;
    os << "sample: " << before << " -> " << after;
    expect(after <= before, os.str());

    if (have_gzip()) {
      const BackendSpec gzip = BackendSpec::parse("gzip");
      const auto original = compress(write_fastq(strip_headers(sample), HeaderPolicy::strip), gzip);
      const auto smoothed = compress(write_fastq(out, HeaderPolicy::strip), gzip);
      std::ostringstream sz;
      sz << "gzip size " << original.size() << " -> " << smoothed.size();
      expect(smoothed.size() <= original.size(), sz.str());
    }
  });

  criterion(8, "variant metrics identities on 100 random set pairs", 0, [] {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> pos(1, 60);
    const std::string bases = "ACGT";
    auto random_set = [&] {
      VariantSet s;
      const int n = std::uniform_int_distribution<int>(0, 40)(rng);
      for (int i = 0; i < n; ++i) {
        s.insert({"chr" + std::to_string(1 + rng() % 2), std::uint64_t(pos(rng)),
                  std::string(1, bases[rng() % 4]), std::string(1, bases[rng() % 4])});
      }
      return s;
    };
    for (int t = 0; t < 100; ++t) {
      const std::string tag = "pair " + std::to_string(t);
      const VariantSet a = random_set(), b = random_set();
      std::size_t tp = 0;
      for (const auto& v : b) tp += a.count(v);
      const std::size_t fp = b.size() - tp, fn = a.size() - tp;
      const VariantComparison m = compare(a, b);
      expect(m.true_positives == tp && m.false_positives == fp && m.false_negatives == fn,
             "counts, " + tag);
      const double prec = b.empty() ? 1.0 : double(tp) / double(tp + fp);
      const double sen = a.empty() ? 1.0 : double(tp) / double(tp + fn);
      const double f = prec + sen == 0 ? 0.0 : 2 * prec * sen / (prec + sen);
      expect(std::abs(m.precision - prec) < 1e-12, "precision, " + tag);
      expect(std::abs(m.sensitivity - sen) < 1e-12, "sensitivity, " + tag);
      expect(std::abs(m.f_measure - f) < 1e-12, "F, " + tag);

      const VariantComparison s = compare(b, a);
      expect(s.true_positives == m.true_positives && s.false_positives == m.false_negatives &&
                 s.false_negatives == m.false_positives,
             "swap counts, " + tag);
      expect(std::abs(s.precision - m.sensitivity) < 1e-12 &&
                 std::abs(s.sensitivity - m.precision) < 1e-12 &&
                 std::abs(s.f_measure - m.f_measure) < 1e-12,
             "swap metrics, " + tag);

      const VariantComparison id = compare(a, a);
      expect(id.true_positives == a.size() && id.false_positives == 0 &&
                 id.false_negatives == 0 && id.precision == 1.0 && id.sensitivity == 1.0 &&
                 id.f_measure == 1.0,
             "identity, " + tag);
    }
  });

  criterion(9, "binned output has at most 8 bins plus sub-2 passthroughs", 0, [] {
    const auto dir = std::filesystem::temp_directory_path() / "fqsmooth_acceptance";
    std::filesystem::create_directories(dir);
    PipelineConfig cfg;
    cfg.input = FQSMOOTH_TEST_DATA "/sample_10k.fastq.gz";
    cfg.output = dir / "binned.fastq";
    cfg.smoothing.binning = true;
    run_pipeline(cfg);

    std::set<int> input_values;
    for (char q : quality_stream(load_fastq(*cfg.input))) input_values.insert(q - 33);
    std::set<int> bins, passthrough;
    for (char q : quality_stream(load_fastq(cfg.output))) {
      const int phred = q - 33;
      if (phred < 2) {
        expect(input_values.count(phred) == 1, "sub-2 value not in input");
        passthrough.insert(phred);
      } else {
        expect(kBinLevels.count(phred) == 1, "value " + std::to_string(phred) + " is not a bin");
        bins.insert(phred);
      }
    }
    expect(bins.size() <= 8, std::to_string(bins.size()) + " bins");
    std::filesystem::remove_all(dir);
  });

  return failures == 0 ? 0 : 1;
}
