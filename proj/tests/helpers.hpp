#ifndef QIF_TESTS_HELPERS_HPP
#define QIF_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "qif/channel.hpp"
#include "qif/compose.hpp"
#include "qif/dist.hpp"
#include "qif/gain.hpp"
#include "qif/measures.hpp"
#include "qif/rng.hpp"

namespace qif::testing {

inline std::vector<std::string> labels(const std::string& stem, std::size_t n) {
    std::vector<std::string> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = stem + std::to_string(i);
    return out;
}

inline std::vector<double> simplex_point(Rng& rng, std::size_t n) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) sum += (v = rng.exponential());
    for (double& v : p) v /= sum;
    return p;
}

inline Channel random_stochastic(Rng& rng, std::size_t n_in, std::size_t n_out,
                                 const std::string& in_stem = "x",
                                 const std::string& out_stem = "y") {
    std::vector<double> rows;
    rows.reserve(n_in * n_out);
    for (std::size_t x = 0; x < n_in; ++x) {
        auto row = simplex_point(rng, n_out);
        rows.insert(rows.end(), row.begin(), row.end());
    }
    return Channel(labels(in_stem, n_in), labels(out_stem, n_out), std::move(rows));
}

/// Channel whose inputs are the given label list (for shared compositions).
inline Channel random_stochastic_over(Rng& rng, std::vector<std::string> in_labels,
                                      std::size_t n_out, const std::string& out_stem = "y") {
    std::vector<double> rows;
    for (std::size_t x = 0; x < in_labels.size(); ++x) {
        auto row = simplex_point(rng, n_out);
        rows.insert(rows.end(), row.begin(), row.end());
    }
    return Channel(std::move(in_labels), labels(out_stem, n_out), std::move(rows));
}

/// Full-support random joint prior over the given axis sizes (always jointly
/// supported, almost surely correlated).
inline JointDist random_joint_prior(Rng& rng, const std::vector<std::size_t>& sizes,
                                    const std::vector<std::string>& stems = {}) {
    std::vector<std::vector<std::string>> axes;
    std::size_t cells = 1;
    for (std::size_t a = 0; a < sizes.size(); ++a) {
        axes.push_back(labels(stems.empty() ? std::string(1, char('a' + a)) : stems[a], sizes[a]));
        cells *= sizes[a];
    }
    return JointDist(std::move(axes), simplex_point(rng, cells), false);
}

/// Jointly supported prior that may carry zero marginals: some labels on each
/// axis are deactivated entirely, the rest get full support.
inline JointDist random_supported_prior_with_zeros(Rng& rng,
                                                   const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::string>> axes;
    std::vector<std::vector<bool>> active(sizes.size());
    std::size_t cells = 1;
    for (std::size_t a = 0; a < sizes.size(); ++a) {
        axes.push_back(labels(std::string(1, char('a' + a)), sizes[a]));
        active[a].assign(sizes[a], false);
        std::size_t keep = 1 + rng.below(sizes[a]);
        for (std::size_t k = 0; k < keep; ++k) active[a][rng.below(sizes[a])] = true;
        active[a][rng.below(sizes[a])] = true;
        cells *= sizes[a];
    }
    Shape shape(sizes);
    std::vector<double> mass(cells, 0.0);
    std::vector<std::size_t> live;
    for (std::size_t f = 0; f < cells; ++f) {
        bool on = true;
        for (std::size_t a = 0; a < sizes.size(); ++a) on = on && active[a][shape.coord(f, a)];
        if (on) live.push_back(f);
    }
    auto weights = simplex_point(rng, live.size());
    for (std::size_t i = 0; i < live.size(); ++i) mass[live[i]] = weights[i];
    return JointDist(std::move(axes), std::move(mass), false);
}

/// Random component gain over the given secrets: a sparse table with at least
/// one positive entry.
inline GainFn random_gain(Rng& rng, std::vector<std::string> secrets, std::size_t n_guesses) {
    std::size_t nx = secrets.size();
    std::vector<double> gain(n_guesses * nx, 0.0);
    for (double& v : gain)
        if (rng.u01() < 0.7) v = 0.05 + 0.95 * rng.u01();
    gain[rng.below(n_guesses * nx)] = 1.0;
    return GainFn(labels("w", n_guesses), std::move(secrets), std::move(gain));
}

/// Random joint gain with the two-way coupling: zero exactly where the
/// component product is zero, fresh random values elsewhere.
inline JointGainFn random_joint_gain(Rng& rng, const std::vector<GainFn>& components) {
    std::vector<std::size_t> wext, xext;
    for (const auto& g : components) {
        wext.push_back(g.n_guesses());
        xext.push_back(g.n_secrets());
    }
    Shape ws(wext), xs(xext);
    std::vector<double> gain(ws.size() * xs.size(), 0.0);
    std::vector<std::size_t> w(components.size(), 0);
    std::size_t wf = 0;
    do {
        std::vector<std::size_t> x(components.size(), 0);
        std::size_t xf = 0;
        do {
            double prod = 1.0;
            for (std::size_t i = 0; i < components.size(); ++i)
                prod *= components[i].at(w[i], x[i]);
            if (prod != 0.0) gain[wf * xs.size() + xf] = 0.05 + 0.95 * rng.u01();
            ++xf;
        } while (xs.next(x));
        ++wf;
    } while (ws.next(w));
    return JointGainFn::from_table(components, std::move(gain));
}

/// Brute-force distinct-input leakage: materialize the composed channel and
/// evaluate the flattened joint gain on the flattened prior.
inline double exact_leakage_distinct(const JointDist& prior, std::span<const Channel> channels,
                                     const JointGainFn& gain) {
    Channel composed = par_distinct_n(channels);
    return leakage_g(flatten(prior), composed, flatten(gain)).bits;
}

inline double exact_leakage_shared(const Dist& prior, std::span<const Channel> channels,
                                   const GainFn& gain) {
    Channel composed = par_shared_n(channels);
    return leakage_g(prior, composed, gain).bits;
}

} // namespace qif::testing

#endif
