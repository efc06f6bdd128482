#include "qif/bounds.hpp"

#include <cmath>
#include <limits>

#include "qif/errors.hpp"
#include "qif/measures.hpp"

namespace qif {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_joint_spaces(const JointDist& prior, const JointGainFn& gain) {
    if (prior.n_axes() != gain.n_components())
        fail(Errc::dimension_mismatch, "prior and joint gain disagree on arity");
    for (std::size_t a = 0; a < prior.n_axes(); ++a)
        if (prior.axis_labels(a) != gain.component(a).secrets())
            fail(Errc::label_mismatch,
                 "prior axis " + std::to_string(a + 1) + " does not match the gain's secrets");
}

void check_channels(const JointDist& prior, std::span<const Channel> channels) {
    if (channels.size() != prior.n_axes())
        fail(Errc::dimension_mismatch, "need one channel per prior axis");
    for (std::size_t a = 0; a < prior.n_axes(); ++a)
        if (channels[a].in_labels() != prior.axis_labels(a))
            fail(Errc::label_mismatch,
                 "channel " + std::to_string(a + 1) + " input space does not match the prior");
}

void check_shared_channels(const Dist& prior, std::span<const Channel> channels) {
    if (channels.empty()) fail(Errc::bad_input, "need at least one channel");
    for (const auto& c : channels)
        if (c.in_labels() != prior.labels())
            fail(Errc::label_mismatch, "shared channels must read the prior's secret space");
}

void require_strict_coupling(const JointGainFn& gain, const char* what) {
    if (gain.coupling() != Coupling::strict)
        fail(Errc::bad_input, std::string(what) +
                                  " needs the two-way worthlessness coupling; a shared-input "
                                  "lifting only satisfies the forward direction");
}

BoundReport finish_report(BoundReport report) {
    if (report.lo > report.hi + 1e-12)
        fail(Errc::bad_input, "empty bound interval; check the operation's preconditions");
    return report;
}

} // namespace

const char* quantity_name(Quantity q) {
    switch (q) {
    case Quantity::prior_entropy: return "prior_entropy";
    case Quantity::posterior_entropy: return "posterior_entropy";
    case Quantity::leakage: return "leakage";
    }
    return "?";
}

std::vector<std::size_t> support_set(const JointDist& prior, const JointGainFn& gain,
                                     std::span<const std::size_t> guess) {
    check_joint_spaces(prior, gain);
    if (guess.size() != gain.n_components())
        fail(Errc::dimension_mismatch, "guess tuple has wrong arity");
    std::size_t w_flat = gain.guess_shape().flat({guess.begin(), guess.end()});
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < prior.cells(); ++x)
        if (prior.mass_at(x) != 0.0 && gain.at(w_flat, x) != 0.0) out.push_back(x);
    return out;
}

std::pair<double, double> m_extremes(const JointDist& prior, const JointGainFn& gain) {
    check_joint_spaces(prior, gain);
    auto margs = prior.marginals();
    const Shape& ws = gain.guess_shape();
    const Shape& xs = gain.secret_shape();
    const std::size_t n = gain.n_components();

    double lo = kInf, hi = -kInf;
    std::vector<std::size_t> w(n, 0);
    std::size_t w_flat = 0;
    do {
        for (std::size_t x_flat = 0; x_flat < xs.size(); ++x_flat) {
            double joint = prior.mass_at(x_flat) * gain.at(w_flat, x_flat);
            if (joint == 0.0) continue;
            double prod = 1.0;
            for (std::size_t a = 0; a < n; ++a) {
                std::size_t xa = xs.coord(x_flat, a);
                prod *= margs[a][xa] * gain.component(a).at(w[a], xa);
            }
            double ratio = prod / joint;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        ++w_flat;
    } while (ws.next(w));

    if (!(lo <= hi))
        fail(Errc::all_supports_empty, "prior-times-gain is identically zero");
    return {lo, hi};
}

double m_min(const JointDist& prior, const JointGainFn& gain) {
    return m_extremes(prior, gain).first;
}

double m_max(const JointDist& prior, const JointGainFn& gain) {
    return m_extremes(prior, gain).second;
}

std::pair<double, double> m_extremes_min_entropy(const JointDist& prior) {
    auto margs = prior.marginals();
    const Shape& shape = prior.shape();
    double lo = kInf, hi = -kInf;
    for (std::size_t f = 0; f < prior.cells(); ++f) {
        double joint = prior.mass_at(f);
        if (joint == 0.0) continue;
        double prod = 1.0;
        for (std::size_t a = 0; a < prior.n_axes(); ++a) prod *= margs[a][shape.coord(f, a)];
        double ratio = prod / joint;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    if (!(lo <= hi)) fail(Errc::all_supports_empty, "joint prior is identically zero");
    return {lo, hi};
}

double h_g_min(const Dist& prior, const GainFn& gain) {
    if (prior.labels() != gain.secrets())
        fail(Errc::label_mismatch, "prior and gain disagree on the secret space");
    double least = kInf;
    for (std::size_t w = 0; w < gain.n_guesses(); ++w)
        for (std::size_t x = 0; x < prior.size(); ++x) {
            double v = prior[x] * gain.at(w, x);
            if (v != 0.0) least = std::min(least, v);
        }
    if (!std::isfinite(least)) fail(Errc::all_zero, "prior-times-gain is identically zero");
    return -detail::log_q(least);
}

double h_min(const Dist& prior) {
    double least = kInf;
    for (double m : prior.mass())
        if (m != 0.0) least = std::min(least, m);
    if (!std::isfinite(least)) fail(Errc::all_zero, "prior is identically zero");
    return -detail::log_q(least);
}

BoundReport bound_prior_entropy(const JointDist& prior, const JointGainFn& gain) {
    auto [mmin, mmax] = m_extremes(prior, gain);
    auto margs = prior.marginals();
    double marginal_sum = 0.0;
    BoundReport report{Quantity::prior_entropy, 0.0, 0.0, "prior-entropy-sandwich", {}, {}};
    for (std::size_t a = 0; a < prior.n_axes(); ++a) {
        double h = entropy_g(margs[a], gain.component(a)).bits;
        report.parts["component_prior_entropy_" + std::to_string(a + 1)] = h;
        marginal_sum += h;
    }
    report.parts["m_min"] = mmin;
    report.parts["m_max"] = mmax;
    report.lo = marginal_sum + detail::log_q(mmin);
    bool supported = is_jointly_supported(prior);
    if (supported && gain.coupling() == Coupling::strict) {
        report.hi = marginal_sum + detail::log_q(mmax);
    } else {
        report.hi = kInf;
        report.notes.push_back(supported
                                   ? "no upper bound: joint gain lacks the two-way coupling"
                                   : "no upper bound: prior is not jointly supported");
    }
    return finish_report(std::move(report));
}

BoundReport bound_posterior_distinct(const JointDist& prior, std::span<const Channel> channels,
                                     const JointGainFn& gain) {
    check_channels(prior, channels);
    auto [mmin, mmax] = m_extremes(prior, gain);
    auto margs = prior.marginals();
    double marginal_sum = 0.0;
    BoundReport report{Quantity::posterior_entropy, 0.0, 0.0, "distinct-posterior", {}, {}};
    for (std::size_t a = 0; a < prior.n_axes(); ++a) {
        double h = cond_entropy_g(margs[a], channels[a], gain.component(a)).bits;
        report.parts["component_posterior_entropy_" + std::to_string(a + 1)] = h;
        marginal_sum += h;
    }
    report.parts["m_min"] = mmin;
    report.parts["m_max"] = mmax;
    report.lo = marginal_sum + detail::log_q(mmin);
    bool supported = is_jointly_supported(prior);
    if (supported && gain.coupling() == Coupling::strict) {
        report.hi = marginal_sum + detail::log_q(mmax);
    } else {
        report.hi = kInf;
        report.notes.push_back(supported
                                   ? "no upper bound: joint gain lacks the two-way coupling"
                                   : "no upper bound: prior is not jointly supported");
    }
    return finish_report(std::move(report));
}

BoundReport bound_leakage_distinct(const JointDist& prior, std::span<const Channel> channels,
                                   const JointGainFn& gain) {
    check_channels(prior, channels);
    if (!is_jointly_supported(prior))
        fail(Errc::not_jointly_supported, "leakage bounds need a jointly supported prior");
    require_strict_coupling(gain, "the distinct-input leakage bound");
    auto [mmin, mmax] = m_extremes(prior, gain);
    double slack = detail::log_q(mmax / mmin);
    auto margs = prior.marginals();
    double leak_sum = 0.0;
    BoundReport report{Quantity::leakage, 0.0, 0.0, "distinct-leakage", {}, {}};
    for (std::size_t a = 0; a < prior.n_axes(); ++a) {
        double l = leakage_g(margs[a], channels[a], gain.component(a)).bits;
        report.parts["component_leakage_" + std::to_string(a + 1)] = l;
        leak_sum += l;
    }
    report.parts["m_min"] = mmin;
    report.parts["m_max"] = mmax;
    report.parts["log_ratio"] = slack;
    report.lo = leak_sum - slack;
    report.hi = leak_sum + slack;
    return finish_report(std::move(report));
}

BoundReport bound_posterior_shared(const Dist& prior, std::span<const Channel> channels,
                                   const GainFn& gain) {
    check_shared_channels(prior, channels);
    double hg_min = h_g_min(prior, gain);
    BoundReport report{Quantity::posterior_entropy, 0.0, 0.0, "shared-posterior", {}, {}};
    double entropy_sum = 0.0, least = kInf;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        double h = cond_entropy_g(prior, channels[i], gain).bits;
        report.parts["component_posterior_entropy_" + std::to_string(i + 1)] = h;
        entropy_sum += h;
        least = std::min(least, h);
    }
    report.parts["h_g_min"] = hg_min;
    report.lo = entropy_sum - static_cast<double>(channels.size() - 1) * hg_min;
    if (is_identity_gain(gain)) {
        report.hi = least;
    } else {
        report.hi = kInf;
        report.notes.push_back("no upper bound for non-identity gains");
    }
    return finish_report(std::move(report));
}

BoundReport bound_leakage_shared(const Dist& prior, std::span<const Channel> channels,
                                 const GainFn& gain) {
    check_shared_channels(prior, channels);
    double prior_v = prior_vuln_g(prior, gain);
    if (prior_v == 0.0)
        fail(Errc::zero_vulnerability, "leakage bound undefined: prior g-vulnerability is 0");
    double hg_min = h_g_min(prior, gain);
    double hg = -detail::log_q(prior_v);
    BoundReport report{Quantity::leakage, 0.0, 0.0, "shared-leakage", {}, {}};
    double leak_sum = 0.0, best = -kInf;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        double l = leakage_g(prior, channels[i], gain).bits;
        report.parts["component_leakage_" + std::to_string(i + 1)] = l;
        leak_sum += l;
        best = std::max(best, l);
    }
    report.parts["h_g_min"] = hg_min;
    report.parts["prior_entropy"] = hg;
    report.hi = leak_sum + static_cast<double>(channels.size() - 1) * (hg_min - hg);
    if (is_identity_gain(gain)) {
        report.lo = best;
    } else {
        report.lo = -kInf;
        report.notes.push_back("no lower bound for non-identity gains");
    }
    return finish_report(std::move(report));
}

BoundReport bound_leakage_via_refinement(const JointDist& prior,
                                         std::span<const Channel> lower_approx,
                                         std::span<const Channel> upper_approx,
                                         const JointGainFn& gain) {
    check_channels(prior, lower_approx);
    check_channels(prior, upper_approx);
    if (!is_jointly_supported(prior))
        fail(Errc::not_jointly_supported, "leakage bounds need a jointly supported prior");
    require_strict_coupling(gain, "the refinement leakage bound");
    auto [mmin, mmax] = m_extremes(prior, gain);
    double slack = detail::log_q(mmax / mmin);
    auto margs = prior.marginals();
    double lo_sum = 0.0, hi_sum = 0.0;
    BoundReport report{Quantity::leakage, 0.0, 0.0, "refinement-distinct", {}, {}};
    for (std::size_t a = 0; a < prior.n_axes(); ++a) {
        double ll = leakage_g(margs[a], lower_approx[a], gain.component(a)).bits;
        double lu = leakage_g(margs[a], upper_approx[a], gain.component(a)).bits;
        report.parts["lower_component_leakage_" + std::to_string(a + 1)] = ll;
        report.parts["upper_component_leakage_" + std::to_string(a + 1)] = lu;
        lo_sum += ll;
        hi_sum += lu;
    }
    report.parts["m_min"] = mmin;
    report.parts["m_max"] = mmax;
    report.parts["log_ratio"] = slack;
    report.lo = lo_sum - slack;
    report.hi = hi_sum + slack;
    return finish_report(std::move(report));
}

BoundReport bound_leakage_via_refinement_shared(const Dist& prior,
                                                std::span<const Channel> lower_approx,
                                                std::span<const Channel> upper_approx,
                                                const GainFn& gain) {
    check_shared_channels(prior, lower_approx);
    check_shared_channels(prior, upper_approx);
    if (lower_approx.size() != upper_approx.size())
        fail(Errc::dimension_mismatch, "need matching approximation lists");
    double prior_v = prior_vuln_g(prior, gain);
    if (prior_v == 0.0)
        fail(Errc::zero_vulnerability, "leakage bound undefined: prior g-vulnerability is 0");
    double hg_min = h_g_min(prior, gain);
    double hg = -detail::log_q(prior_v);
    BoundReport report{Quantity::leakage, 0.0, 0.0, "refinement-shared", {}, {}};
    double hi_sum = 0.0, best = -kInf;
    for (std::size_t i = 0; i < upper_approx.size(); ++i) {
        double lu = leakage_g(prior, upper_approx[i], gain).bits;
        double ll = leakage_g(prior, lower_approx[i], gain).bits;
        report.parts["upper_component_leakage_" + std::to_string(i + 1)] = lu;
        report.parts["lower_component_leakage_" + std::to_string(i + 1)] = ll;
        hi_sum += lu;
        best = std::max(best, ll);
    }
    report.parts["h_g_min"] = hg_min;
    report.parts["prior_entropy"] = hg;
    report.hi = hi_sum + static_cast<double>(upper_approx.size() - 1) * (hg_min - hg);
    if (is_identity_gain(gain)) {
        report.lo = best;
    } else {
        report.lo = -kInf;
        report.notes.push_back("no lower bound for non-identity gains");
    }
    return finish_report(std::move(report));
}

} // namespace qif
