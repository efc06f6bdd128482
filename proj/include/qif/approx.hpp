#ifndef QIF_APPROX_HPP
#define QIF_APPROX_HPP

#include <span>
#include <string>
#include <vector>

#include "qif/bounds.hpp"
#include "qif/channel.hpp"
#include "qif/dist.hpp"

namespace qif {

/// The result of zeroing low-mass secrets out of a prior. The removed mass
/// totals `epsilon_actual` (never more than requested), the largest mass is
/// always kept, and removal follows ascending mass with label-order
/// tie-breaks.
struct Truncation {
    std::vector<std::string> removed;
    double epsilon_actual;
    Dist sub_prior;
    bool trivial;
};

/// Joint variant: whole marginal labels are dropped (all cells touching
/// them), alternating axes in ascending marginal mass, under the mass budget.
/// `support_warning` is set when no achievable truncation yields a jointly
/// supported result.
struct JointTruncation {
    std::vector<std::vector<std::string>> removed_axis_labels;
    double epsilon_actual;
    JointDist sub_prior;
    bool trivial;
    bool support_warning;
};

Truncation truncate_prior(const Dist& prior, double epsilon);
JointTruncation truncate_joint_prior(const JointDist& prior, double epsilon);

/// Single-channel min-entropy sandwich: the truncated leakage bounds the true
/// one from below, and adding the epsilon error term bounds it from above.
BoundReport sandwich_single(const Dist& prior, const Channel& channel, double epsilon);

/// White-box shared-input pipeline: truncate the prior, bound the truncated
/// composition leakage by component leakages, then add the truncation error
/// term. Identity-gain (min-entropy) setting.
BoundReport whitebox_shared_bound(const Dist& prior, std::span<const Channel> channels,
                                  double epsilon);

/// Black-box bounds: only the component leakages and posterior
/// vulnerabilities are known, not the channel matrices.
BoundReport blackbox_distinct_bounds(const JointDist& prior, std::span<const double> leakages,
                                     std::span<const double> vulnerabilities, double epsilon);
BoundReport blackbox_shared_bound(const Dist& prior, std::span<const double> leakages,
                                  std::span<const double> vulnerabilities, double epsilon);

} // namespace qif

#endif
