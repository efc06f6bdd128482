#ifndef QIF_GENERATORS_HPP
#define QIF_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qif/channel.hpp"
#include "qif/dist.hpp"
#include "qif/gain.hpp"

namespace qif {

/// An undirected communication graph over crowd members, with corruption
/// marks and the forwarding probability of the protocol.
struct Topology {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // index pairs, i < j
    std::vector<bool> corrupt;                              // parallel to nodes
    double pf = 0.0;
};

/// Receiver name used for direct deliveries in crowds observables.
inline constexpr const char* kServerName = "server";

/// Channel whose rows sit at controlled L1 distance from uniform: each row is
/// a convex mix of the uniform row and a random simplex point, scaled so the
/// maximum row distance equals `noise`. Deterministic in `seed`.
Channel random_channel(std::size_t n_in, std::size_t n_out, double noise, std::uint64_t seed);

/// Maximum over rows of the L1 distance from the uniform output distribution.
double measured_noise(const Channel& channel);

/// Random prior over n labeled secrets (flat Dirichlet). Deterministic in
/// `seed`; entries below 1e-15 are rounded to exact zeros.
Dist random_dist(std::size_t n, std::uint64_t seed);

/// Erdos-Renyi style topology: every unordered pair becomes an edge with
/// probability `edge_prob`, deterministically in `seed`. Nodes are named
/// u1..un; corruption marks and pf start empty for the caller to fill.
Topology random_topology(std::size_t n, double edge_prob, std::uint64_t seed);

/// The crowds protocol on the given topology, as a channel from honest
/// initiators to first-interception observables "<forwarder>-><receiver>".
/// Rows come from the absorbing chain over honest message holders.
Channel crowds_channel(const Topology& topology);

/// Bit-exact canonical instances used across the test-suite and docs.
struct Fixtures {
    Channel ch_a;       // 2x2, 0.9 on the diagonal
    Channel ch_b;       // 3x3 with column maxima summing to 1.33
    Channel xor_gate;   // 2x4: a uniform bit and its XOR with the secret
    Dist pi_a;          // (0.1, 0.9)
    Dist pi_b;          // (0.01, 0.49, 0.50)
    Dist uniform2;
    Dist uniform3;
};
Fixtures fixtures();

} // namespace qif

#endif
