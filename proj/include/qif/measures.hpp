#ifndef QIF_MEASURES_HPP
#define QIF_MEASURES_HPP

#include <cstdint>

#include "qif/channel.hpp"
#include "qif/dist.hpp"
#include "qif/gain.hpp"

namespace qif {

/// All entropies and leakages are reported in bits by default. Switching to
/// natural log rescales every logarithmic quantity; the numeric fixtures in
/// the test suite pin base 2.
enum class LogBase { two, natural };
void set_log_base(LogBase base);
LogBase log_base();

namespace detail {
/// log in the configured base.
double log_q(double v);
} // namespace detail

/// An entropy value; +infinity encodes a vanished vulnerability.
struct Entropy {
    double bits;
    bool is_finite() const;
};

enum class MeasureTag { min_entropy, g_leak, shannon };

struct Leakage {
    double bits;
    MeasureTag tag;
};

// Vulnerabilities. Sub-priors are accepted everywhere; the posterior variants
// then compute the sub-prior posterior vulnerability used by input
// approximation.
double prior_vuln(const Dist& prior);
double post_vuln(const Dist& prior, const Channel& channel);
double prior_vuln_g(const Dist& prior, const GainFn& gain);
double post_vuln_g(const Dist& prior, const Channel& channel, const GainFn& gain);

Entropy entropy_g(const Dist& prior, const GainFn& gain);
Entropy cond_entropy_g(const Dist& prior, const Channel& channel, const GainFn& gain);
Leakage leakage_g(const Dist& prior, const Channel& channel, const GainFn& gain);

Entropy min_entropy(const Dist& prior);
Entropy cond_min_entropy(const Dist& prior, const Channel& channel);
Leakage min_entropy_leakage(const Dist& prior, const Channel& channel);

/// Min-capacity: the min-entropy leakage at the uniform prior,
/// log of the sum of column maxima.
double min_capacity(const Channel& channel);

/// Certified lower bound on the g-capacity: the best g-leakage found over the
/// uniform prior, all feasible point-mass priors and `restarts` random priors.
/// Monotone in `restarts` for a fixed seed.
double g_capacity_lower(const Channel& channel, const GainFn& gain, int restarts,
                        std::uint64_t seed);

/// Shannon mutual information I(pi, C). Requires a full probability prior.
double mutual_information(const Dist& prior, const Channel& channel);

} // namespace qif

#endif
