#pragma once

#include "fqsmooth/ebwt_index.hpp"
#include "fqsmooth/fastq.hpp"
#include "fqsmooth/smoothing.hpp"

namespace fqsmooth {

struct ReconstructionPlan {
  const EbwtIndex& index;          // the original, unedited transform
  const EditOverlay& overlay;
  const ReadCollection* headers = nullptr;  // source of headers; null means "@" only
};

/**
 * Rebuild every read by walking LF from its end-marker row over the original
 * ebwt, emitting edited symbols and qualities where the overlay has them.
 * Reads come out in input order. Throws Error(format) if the index has no read
 * map or a walk disagrees with it.
 */
ReadCollection invert(const ReconstructionPlan& plan);

}  // namespace fqsmooth
