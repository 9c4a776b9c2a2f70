#ifndef VIDSCHED_BASELINES_HPP
#define VIDSCHED_BASELINES_HPP

#include <optional>
#include <string>

#include "vidsched/link.hpp"
#include "vidsched/universal.hpp"

namespace vidsched {

enum class BaselineKind { Edf, Doedf, Pbedf };

const char* to_string(BaselineKind k);

struct BaselineResult {
    BaselineKind name = BaselineKind::Edf;
    Quality reward = 0;
    TransmissionSequence sequence;
    std::optional<int> pbedf_block_size;  // chosen M, PBEDF only
};

/// Best-effort earliest-deadline-first: frames are scanned in display order
/// and transmitted back-to-back; a frame is skipped when it can no longer
/// finish by its deadline or when a parent was already skipped. A parent that
/// is still ahead in the scan keeps the frame eligible.
BaselineResult edf(const DependencyDag& dag, const LinkConfig& link);

/// EDF over decoding order (the universal sequence), so every parent's fate
/// is known when a frame is considered.
BaselineResult doedf(const DependencyDag& dag, const LinkConfig& link,
                     const UniversalSequence& universal);

/// Priority-based EDF: display order is cut into consecutive blocks of size
/// M; inside each block I-frames go first, then P-frames, then B-frames,
/// each group in display order, with the same skip rule.
BaselineResult pbedf(const DependencyDag& dag, const LinkConfig& link, int block_size);

/// PBEDF with the block size chosen by exhaustive search over 1..N
/// (smallest M wins ties).
BaselineResult pbedf_best(const DependencyDag& dag, const LinkConfig& link);

}  // namespace vidsched

#endif
