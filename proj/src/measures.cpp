#include "qif/measures.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "qif/errors.hpp"
#include "qif/rng.hpp"

namespace qif {

namespace {

std::atomic<LogBase> g_log_base{LogBase::two};

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_secret_space(const std::vector<std::string>& prior_labels,
                        const std::vector<std::string>& other_labels, const char* what) {
    if (prior_labels != other_labels)
        fail(Errc::label_mismatch, std::string("prior and ") + what + " disagree on the secret space");
}

double kahan(const std::vector<double>& terms) {
    double sum = 0.0, carry = 0.0;
    for (double v : terms) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace

void set_log_base(LogBase base) { g_log_base.store(base); }
LogBase log_base() { return g_log_base.load(); }

namespace detail {
double log_q(double v) {
    return g_log_base.load() == LogBase::two ? std::log2(v) : std::log(v);
}
} // namespace detail

bool Entropy::is_finite() const { return std::isfinite(bits); }

double prior_vuln(const Dist& prior) {
    double best = 0.0;
    for (double m : prior.mass()) best = std::max(best, m);
    return best;
}

double post_vuln(const Dist& prior, const Channel& channel) {
    check_secret_space(prior.labels(), channel.in_labels(), "channel");
    std::vector<double> column_best(channel.n_out(), 0.0);
    for (std::size_t x = 0; x < channel.n_in(); ++x) {
        double px = prior[x];
        if (px == 0.0) continue;
        for (std::size_t y = 0; y < channel.n_out(); ++y)
            column_best[y] = std::max(column_best[y], px * channel.at(x, y));
    }
    return kahan(column_best);
}

double prior_vuln_g(const Dist& prior, const GainFn& gain) {
    check_secret_space(prior.labels(), gain.secrets(), "gain");
    double best = 0.0;
    for (std::size_t w = 0; w < gain.n_guesses(); ++w) {
        double v = 0.0;
        for (std::size_t x = 0; x < prior.size(); ++x) v += prior[x] * gain.at(w, x);
        best = std::max(best, v);
    }
    return best;
}

double post_vuln_g(const Dist& prior, const Channel& channel, const GainFn& gain) {
    check_secret_space(prior.labels(), channel.in_labels(), "channel");
    check_secret_space(prior.labels(), gain.secrets(), "gain");
    std::vector<double> column_best(channel.n_out(), 0.0);
    for (std::size_t y = 0; y < channel.n_out(); ++y) {
        double best = 0.0;
        for (std::size_t w = 0; w < gain.n_guesses(); ++w) {
            double v = 0.0;
            for (std::size_t x = 0; x < prior.size(); ++x)
                v += prior[x] * channel.at(x, y) * gain.at(w, x);
            best = std::max(best, v);
        }
        column_best[y] = best;
    }
    return kahan(column_best);
}

namespace {

Entropy entropy_of_vuln(double v) {
    if (v == 0.0) return Entropy{kInf};
    return Entropy{-detail::log_q(v)};
}

} // namespace

Entropy entropy_g(const Dist& prior, const GainFn& gain) {
    return entropy_of_vuln(prior_vuln_g(prior, gain));
}

Entropy cond_entropy_g(const Dist& prior, const Channel& channel, const GainFn& gain) {
    return entropy_of_vuln(post_vuln_g(prior, channel, gain));
}

Leakage leakage_g(const Dist& prior, const Channel& channel, const GainFn& gain) {
    double vp = prior_vuln_g(prior, gain);
    if (vp == 0.0)
        fail(Errc::zero_vulnerability, "g-leakage undefined: prior g-vulnerability is 0");
    double vc = post_vuln_g(prior, channel, gain);
    MeasureTag tag = is_identity_gain(gain) ? MeasureTag::min_entropy : MeasureTag::g_leak;
    return Leakage{detail::log_q(vc / vp), tag};
}

Entropy min_entropy(const Dist& prior) { return entropy_of_vuln(prior_vuln(prior)); }

Entropy cond_min_entropy(const Dist& prior, const Channel& channel) {
    return entropy_of_vuln(post_vuln(prior, channel));
}

Leakage min_entropy_leakage(const Dist& prior, const Channel& channel) {
    double vp = prior_vuln(prior);
    if (vp == 0.0)
        fail(Errc::zero_vulnerability, "min-entropy leakage undefined: prior vulnerability is 0");
    double vc = post_vuln(prior, channel);
    return Leakage{detail::log_q(vc / vp), MeasureTag::min_entropy};
}

double min_capacity(const Channel& channel) {
    std::vector<double> column_max(channel.n_out(), 0.0);
    for (std::size_t x = 0; x < channel.n_in(); ++x)
        for (std::size_t y = 0; y < channel.n_out(); ++y)
            column_max[y] = std::max(column_max[y], channel.at(x, y));
    return detail::log_q(kahan(column_max));
}

double g_capacity_lower(const Channel& channel, const GainFn& gain, int restarts,
                        std::uint64_t seed) {
    if (restarts < 1) fail(Errc::bad_input, "g_capacity_lower needs restarts >= 1");
    check_secret_space(channel.in_labels(), gain.secrets(), "gain");
    double best = 0.0;
    auto consider = [&](const Dist& prior) {
        if (prior_vuln_g(prior, gain) == 0.0) return;
        best = std::max(best, leakage_g(prior, channel, gain).bits);
    };
    consider(Dist::uniform(channel.in_labels()));
    for (std::size_t x = 0; x < channel.n_in(); ++x)
        consider(Dist::point(channel.in_labels(), x));
    Rng rng(seed);
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> mass(channel.n_in());
        double sum = 0.0;
        for (double& m : mass) sum += (m = rng.exponential());
        for (double& m : mass) {
            m /= sum;
            if (m < 1e-15) m = 0.0;
        }
        consider(Dist(channel.in_labels(), std::move(mass), true));
    }
    return best;
}

double mutual_information(const Dist& prior, const Channel& channel) {
    if (prior.is_sub())
        fail(Errc::sub_prior_not_supported, "mutual information needs a probability prior");
    check_secret_space(prior.labels(), channel.in_labels(), "channel");
    std::vector<double> out_prob(channel.n_out(), 0.0);
    for (std::size_t x = 0; x < channel.n_in(); ++x)
        for (std::size_t y = 0; y < channel.n_out(); ++y)
            out_prob[y] += prior[x] * channel.at(x, y);
    std::vector<double> terms;
    terms.reserve(channel.n_in() * channel.n_out());
    for (std::size_t x = 0; x < channel.n_in(); ++x) {
        if (prior[x] == 0.0) continue;
        for (std::size_t y = 0; y < channel.n_out(); ++y) {
            double c = channel.at(x, y);
            if (c == 0.0) continue;
            terms.push_back(prior[x] * c * detail::log_q(c / out_prob[y]));
        }
    }
    return kahan(terms);
}

} // namespace qif
