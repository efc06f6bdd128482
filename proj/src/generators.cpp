#include "qif/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qif/errors.hpp"
#include "qif/rng.hpp"

namespace qif {

namespace {

constexpr double kZeroSnap = 1e-15;

std::vector<std::string> numbered_labels(const std::string& stem, std::size_t n,
                                         std::size_t base = 0) {
    std::vector<std::string> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = stem + std::to_string(base + i);
    return out;
}

std::vector<double> random_simplex_point(Rng& rng, std::size_t n) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) sum += (v = rng.exponential());
    for (double& v : p) v /= sum;
    return p;
}

void snap_zeros(std::vector<double>& values) {
    for (double& v : values)
        if (std::abs(v) < kZeroSnap) v = 0.0;
}

/// Dense Gaussian elimination with partial pivoting; solves in place for
/// multiple right-hand sides (column-major list).
void solve_linear(std::vector<double> a, std::size_t n, std::vector<std::vector<double>>& rhs) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[perm[r] * n + col]) > std::abs(a[perm[pivot] * n + col])) pivot = r;
        std::swap(perm[col], perm[pivot]);
        double p = a[perm[col] * n + col];
        if (std::abs(p) < 1e-13)
            fail(Errc::bad_input, "absorbing chain is singular; the protocol does not terminate");
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[perm[r] * n + col] / p;
            if (f == 0.0) continue;
            a[perm[r] * n + col] = f;
            for (std::size_t c = col + 1; c < n; ++c) a[perm[r] * n + c] -= f * a[perm[col] * n + c];
        }
    }
    for (auto& b : rhs) {
        std::vector<double> y(n);
        for (std::size_t r = 0; r < n; ++r) {
            double v = b[perm[r]];
            for (std::size_t c = 0; c < r; ++c) v -= a[perm[r] * n + c] * y[c];
            y[r] = v;
        }
        for (std::size_t r = n; r-- > 0;) {
            double v = y[r];
            for (std::size_t c = r + 1; c < n; ++c) v -= a[perm[r] * n + c] * b[c];
            b[r] = v / a[perm[r] * n + r];
        }
    }
}

} // namespace

Channel random_channel(std::size_t n_in, std::size_t n_out, double noise, std::uint64_t seed) {
    if (n_in == 0 || n_out == 0) fail(Errc::bad_input, "channel dimensions must be positive");
    double noise_cap = 2.0 * static_cast<double>(n_out - 1) / static_cast<double>(n_out);
    if (!(noise >= 0.0) || noise > noise_cap + 1e-12)
        fail(Errc::noise_out_of_range,
             "noise level must lie in [0, " + std::to_string(noise_cap) + "]");

    const double u = 1.0 / static_cast<double>(n_out);
    Rng rng(seed);
    std::vector<std::vector<double>> directions(n_in);
    for (auto& d : directions) d = random_simplex_point(rng, n_out);

    // Per-row distance of the sampled point from uniform and the largest
    // scale that keeps the mixed row inside the simplex.
    auto row_geometry = [&](const std::vector<double>& d) {
        double dist = 0.0, t_max = 1.0;
        bool shrinks = false;
        for (double v : d) {
            dist += std::abs(v - u);
            if (v < u) {
                shrinks = true;
                t_max = std::min(t_max, u / (u - v));
            }
        }
        if (!shrinks) t_max = 1.0;
        return std::pair<double, double>{dist, dist > 0.0 ? std::max(t_max, 1.0) : 0.0};
    };

    // Calibrating row: the one that can reach the farthest. If even that one
    // cannot reach the requested noise, point it at a vertex.
    std::size_t cal = 0;
    double best_reach = -1.0;
    for (std::size_t x = 0; x < n_in; ++x) {
        auto [dist, t_max] = row_geometry(directions[x]);
        double reach = dist * t_max;
        if (reach > best_reach) {
            best_reach = reach;
            cal = x;
        }
    }
    if (noise > best_reach) {
        std::size_t peak = 0;
        for (std::size_t y = 0; y < n_out; ++y)
            if (directions[cal][y] > directions[cal][peak]) peak = y;
        std::fill(directions[cal].begin(), directions[cal].end(), 0.0);
        directions[cal][peak] = 1.0;
    }

    std::vector<double> rows(n_in * n_out);
    for (std::size_t x = 0; x < n_in; ++x) {
        auto [dist, t_max] = row_geometry(directions[x]);
        double target = x == cal ? noise : std::min(noise, dist * t_max);
        double t = dist > 0.0 ? target / dist : 0.0;
        for (std::size_t y = 0; y < n_out; ++y) {
            double v = (1.0 - t) * u + t * directions[x][y];
            rows[x * n_out + y] = std::max(v, 0.0);
        }
    }
    snap_zeros(rows);
    return Channel(numbered_labels("x", n_in), numbered_labels("y", n_out), std::move(rows));
}

double measured_noise(const Channel& channel) {
    const double u = 1.0 / static_cast<double>(channel.n_out());
    double worst = 0.0;
    for (std::size_t x = 0; x < channel.n_in(); ++x) {
        double dist = 0.0;
        for (std::size_t y = 0; y < channel.n_out(); ++y)
            dist += std::abs(channel.at(x, y) - u);
        worst = std::max(worst, dist);
    }
    return worst;
}

Dist random_dist(std::size_t n, std::uint64_t seed) {
    if (n == 0) fail(Errc::empty_secret_space, "random prior over empty space");
    Rng rng(seed);
    std::vector<double> mass = random_simplex_point(rng, n);
    snap_zeros(mass);
    return Dist(numbered_labels("x", n), std::move(mass), true);
}

Topology random_topology(std::size_t n, double edge_prob, std::uint64_t seed) {
    if (n < 2) fail(Errc::bad_input, "topology needs at least two users");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        fail(Errc::bad_input, "edge probability must lie in [0,1]");
    Topology t;
    t.nodes = numbered_labels("u", n, 1);
    t.corrupt.assign(n, false);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.u01() < edge_prob) t.edges.emplace_back(i, j);
    return t;
}

Channel crowds_channel(const Topology& topology) {
    const std::size_t n = topology.nodes.size();
    if (topology.corrupt.size() != n)
        fail(Errc::bad_input, "corruption marks must cover every node");
    if (!(topology.pf >= 0.0 && topology.pf <= 1.0))
        fail(Errc::bad_input, "pf must lie in [0,1]");
    for (auto [i, j] : topology.edges)
        if (i >= n || j >= n || i == j) fail(Errc::bad_input, "edge endpoints invalid");

    std::vector<std::size_t> honest;
    std::vector<std::size_t> honest_rank(n, n);
    for (std::size_t i = 0; i < n; ++i)
        if (!topology.corrupt[i]) {
            honest_rank[i] = honest.size();
            honest.push_back(i);
        }
    if (honest.empty()) fail(Errc::no_honest_users, "crowds needs at least one honest user");

    std::vector<std::vector<std::size_t>> neighbors(n);
    for (auto [i, j] : topology.edges) {
        neighbors[i].push_back(j);
        neighbors[j].push_back(i);
    }
    for (auto& adj : neighbors) std::sort(adj.begin(), adj.end());

    const std::size_t m = honest.size();
    const double pf = topology.pf;

    // observable = (forwarder, receiver) with the server as a distinguished
    // receiver; enumerate candidates in a deterministic order
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> event_index; // (fwd, recv idx)
    const std::size_t kServer = n;
    auto event_id = [&](std::size_t fwd, std::size_t recv) {
        return event_index.try_emplace({fwd, recv}, event_index.size()).first->second;
    };
    for (std::size_t h : honest) {
        event_id(h, kServer);
        for (std::size_t v : neighbors[h])
            if (topology.corrupt[v]) event_id(h, v);
    }
    const std::size_t n_events = event_index.size();

    // transition among honest holders and immediate absorption probabilities
    std::vector<double> chain(m * m, 0.0); // I - Q
    std::vector<std::vector<double>> absorb(n_events, std::vector<double>(m, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t j = honest[r];
        chain[r * m + r] = 1.0;
        std::size_t deg = neighbors[j].size();
        if (deg == 0) {
            // isolated holder: only the delivery event is possible
            absorb[event_id(j, kServer)][r] = 1.0;
            continue;
        }
        absorb[event_id(j, kServer)][r] = 1.0 - pf;
        double step = pf / static_cast<double>(deg);
        for (std::size_t v : neighbors[j]) {
            if (topology.corrupt[v])
                absorb[event_id(j, v)][r] += step;
            else
                chain[r * m + honest_rank[v]] -= step;
        }
    }
    solve_linear(std::move(chain), m, absorb); // absorb[e] = per-holder probabilities

    std::vector<double> rows(m * n_events, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t i = honest[r];
        double* row = rows.data() + r * n_events;
        if (neighbors[i].empty()) {
            // isolated initiator: deliver directly (modeling fallback)
            row[event_id(i, kServer)] = 1.0;
            continue;
        }
        double share = 1.0 / static_cast<double>(neighbors[i].size());
        for (std::size_t v : neighbors[i]) {
            if (topology.corrupt[v]) {
                row[event_id(i, v)] += share;
            } else {
                std::size_t h = honest_rank[v];
                for (std::size_t e = 0; e < n_events; ++e) row[e] += share * absorb[e][h];
            }
        }
    }
    snap_zeros(rows);

    // keep only events that can actually occur
    std::vector<std::size_t> keep;
    for (std::size_t e = 0; e < n_events; ++e)
        for (std::size_t r = 0; r < m; ++r)
            if (rows[r * n_events + e] != 0.0) {
                keep.push_back(e);
                break;
            }

    std::vector<std::string> in_labels(m), out_labels(keep.size());
    for (std::size_t r = 0; r < m; ++r) in_labels[r] = topology.nodes[honest[r]];
    std::vector<std::pair<std::size_t, std::size_t>> by_id(n_events);
    for (const auto& [key, id] : event_index) by_id[id] = key;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        auto [fwd, recv] = by_id[keep[k]];
        out_labels[k] = topology.nodes[fwd] + "->" +
                        (recv == kServer ? std::string(kServerName) : topology.nodes[recv]);
    }
    std::vector<double> kept_rows(m * keep.size());
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k < keep.size(); ++k)
            kept_rows[r * keep.size() + k] = rows[r * n_events + keep[k]];
    return Channel(std::move(in_labels), std::move(out_labels), std::move(kept_rows));
}

Fixtures fixtures() {
    Channel ch_a({"0", "1"}, {"0", "1"}, {0.9, 0.1, 0.1, 0.9});
    Channel ch_b({"x0", "x1", "x2"}, {"y0", "y1", "y2"},
                 {0.50, 0.23, 0.27, 0.20, 0.40, 0.40, 0.21, 0.43, 0.36});
    std::string sep = kLabelSep;
    Channel xor_gate({"0", "1"},
                     {join_labels("0", "0", sep), join_labels("0", "1", sep),
                      join_labels("1", "0", sep), join_labels("1", "1", sep)},
                     {0.5, 0.0, 0.0, 0.5, 0.0, 0.5, 0.5, 0.0});
    Dist pi_a({"0", "1"}, {0.1, 0.9});
    Dist pi_b({"x0", "x1", "x2"}, {0.01, 0.49, 0.50});
    return Fixtures{std::move(ch_a),        std::move(ch_b),
                    std::move(xor_gate),    std::move(pi_a),
                    std::move(pi_b),        Dist::uniform({"0", "1"}),
                    Dist::uniform({"x0", "x1", "x2"})};
}

} // namespace qif
