#ifndef QIF_COMPOSE_HPP
#define QIF_COMPOSE_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "qif/channel.hpp"
#include "qif/dist.hpp"

namespace qif {

struct ComposeOptions {
    /// Cells allowed in a materialized composition. Exceeding it raises
    /// size_overflow instead of exhausting memory.
    std::size_t max_cells = 100'000'000;
    std::string sep = kLabelSep;
};

/// Parallel composition with distinct inputs: inputs X1 x X2, outputs
/// Y1 x Y2, entry C1[x1,y1] * C2[x2,y2].
Channel par_distinct(const Channel& c1, const Channel& c2, const ComposeOptions& opts = {});
Channel par_distinct_n(std::span<const Channel> channels, const ComposeOptions& opts = {});

/// Parallel composition with shared input: both channels read the same
/// secret; outputs Y1 x Y2.
Channel par_shared(const Channel& c1, const Channel& c2, const ComposeOptions& opts = {});
Channel par_shared_n(std::span<const Channel> channels, const ComposeOptions& opts = {});

/// Splits a channel with pair outputs into its two output restrictions,
/// summing out the other component. Output labels must form a row-major
/// grid of tuples; the factorization uses the leftmost consistent split.
std::pair<Channel, Channel> decompose(const Channel& channel, const std::string& sep = kLabelSep);

/// Channel cascade (matrix product): first.out must equal second.in.
Channel cascade(const Channel& first, const Channel& second);

/// A post-processing channel exhibiting a cascade refinement.
struct RefinementWitness {
    Channel post_channel;
};

/// True iff refined == cascade(refining, witness) within `tol` (max-abs).
bool verify_refinement(const Channel& refined, const Channel& refining,
                       const RefinementWitness& witness, double tol = 1e-9);

/// Searches for a row-stochastic post-processing channel turning `refining`
/// into `refined`. Absence of a witness is reported as nullopt, not an error.
std::optional<RefinementWitness> find_refinement(const Channel& refined,
                                                 const Channel& refining);

} // namespace qif

#endif
