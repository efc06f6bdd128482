#ifndef QIF_BOUNDS_HPP
#define QIF_BOUNDS_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qif/channel.hpp"
#include "qif/dist.hpp"
#include "qif/gain.hpp"

namespace qif {

enum class Quantity { prior_entropy, posterior_entropy, leakage };

/// An interval on a leakage quantity together with its provenance: which
/// result produced it and the intermediates that went into it. A missing
/// upper (or lower) bound is +inf (-inf) with an explanatory note, never a
/// large finite float.
struct BoundReport {
    Quantity quantity;
    double lo;
    double hi;
    std::string theorem;
    std::map<std::string, double> parts;
    std::vector<std::string> notes;
};

const char* quantity_name(Quantity q);

/// The guess tuple's support: flat secret-tuple indices where both the joint
/// prior and the joint gain are nonzero.
std::vector<std::size_t> support_set(const JointDist& prior, const JointGainFn& gain,
                                     std::span<const std::size_t> guess);

/// Extremal ratios between the product of marginal prior-gain masses and the
/// joint ones, over all guess tuples and their supports. Never touches any
/// channel.
double m_min(const JointDist& prior, const JointGainFn& gain);
double m_max(const JointDist& prior, const JointGainFn& gain);
std::pair<double, double> m_extremes(const JointDist& prior, const JointGainFn& gain);

/// Min-entropy instantiation of the extremal ratios: the gain drops out and
/// the ratio runs over the nonzero cells of the joint prior.
std::pair<double, double> m_extremes_min_entropy(const JointDist& prior);

/// -log of the least nonzero prior-times-gain mass; at least the prior
/// g-entropy.
double h_g_min(const Dist& prior, const GainFn& gain);
/// Identity-gain case: -log of the least nonzero prior mass.
double h_min(const Dist& prior);

/// Prior g-entropy of a joint prior, sandwiched by marginal entropies plus
/// the log-extremal ratios. The upper half needs a jointly supported prior.
BoundReport bound_prior_entropy(const JointDist& prior, const JointGainFn& gain);

/// Posterior g-entropy of a distinct-input composition, bounded by component
/// posterior entropies without materializing the composed channel.
BoundReport bound_posterior_distinct(const JointDist& prior, std::span<const Channel> channels,
                                     const JointGainFn& gain);

/// g-leakage of a distinct-input composition; requires a jointly supported
/// prior. Collapses to an equality under independent priors and gains.
BoundReport bound_leakage_distinct(const JointDist& prior, std::span<const Channel> channels,
                                   const JointGainFn& gain);

/// Posterior g-entropy of a shared-input composition (lower bound; the upper
/// bound exists for the identity gain only).
BoundReport bound_posterior_shared(const Dist& prior, std::span<const Channel> channels,
                                   const GainFn& gain);

/// g-leakage of a shared-input composition: upper bound for any gain, lower
/// bound for the identity gain.
BoundReport bound_leakage_shared(const Dist& prior, std::span<const Channel> channels,
                                 const GainFn& gain);

enum class RefineMode { distinct, shared };

/// Leakage bounds computed from refinement approximations of the true
/// channels: `lower_approx[i]` must refine channel i, which must refine
/// `upper_approx[i]` (verifiable through find/verify_refinement).
BoundReport bound_leakage_via_refinement(const JointDist& prior,
                                         std::span<const Channel> lower_approx,
                                         std::span<const Channel> upper_approx,
                                         const JointGainFn& gain);
BoundReport bound_leakage_via_refinement_shared(const Dist& prior,
                                                std::span<const Channel> lower_approx,
                                                std::span<const Channel> upper_approx,
                                                const GainFn& gain);

} // namespace qif

#endif
