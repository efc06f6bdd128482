#include "qif/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qif/errors.hpp"
#include "qif/measures.hpp"

namespace qif {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0) || epsilon >= 1.0)
        fail(Errc::epsilon_out_of_range, "epsilon must lie in [0, 1)");
}

} // namespace

Truncation truncate_prior(const Dist& prior, double epsilon) {
    check_epsilon(epsilon);
    if (epsilon == 0.0) return Truncation{{}, 0.0, prior, true};

    std::vector<std::size_t> order(prior.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (prior[a] != prior[b]) return prior[a] < prior[b];
        return prior.labels()[a] < prior.labels()[b];
    });
    double top = prior_vuln(prior);

    std::vector<std::string> removed;
    std::vector<double> mass = prior.mass();
    double budget = epsilon, removed_mass = 0.0;
    std::size_t kept_top = 0;
    for (std::size_t i : order)
        if (prior[i] == top) ++kept_top;
    for (std::size_t i : order) {
        if (prior[i] > budget) break;
        // never remove the last label carrying the maximum mass
        if (prior[i] == top && kept_top == 1) break;
        if (prior[i] == top) --kept_top;
        budget -= prior[i];
        removed_mass += prior[i];
        removed.push_back(prior.labels()[i]);
        mass[i] = 0.0;
    }
    Dist sub(prior.labels(), std::move(mass), true);
    bool trivial = removed.empty();
    return Truncation{std::move(removed), removed_mass, std::move(sub), trivial};
}

JointTruncation truncate_joint_prior(const JointDist& prior, double epsilon) {
    check_epsilon(epsilon);
    const std::size_t n = prior.n_axes();
    std::vector<std::vector<std::string>> removed(n);
    if (epsilon == 0.0)
        return JointTruncation{std::move(removed), 0.0, prior, true, !is_jointly_supported(prior)};

    const Shape& shape = prior.shape();
    std::vector<double> mass = prior.mass();
    // flat index of the largest cell; its labels stay
    std::size_t argmax = 0;
    for (std::size_t f = 1; f < mass.size(); ++f)
        if (mass[f] > mass[argmax]) argmax = f;

    // per-axis candidate queues in ascending marginal mass (label tie-break)
    auto margs = prior.marginals();
    std::vector<std::vector<std::size_t>> queue(n);
    std::vector<std::size_t> queue_pos(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        queue[a].resize(prior.axis_size(a));
        std::iota(queue[a].begin(), queue[a].end(), 0);
        std::sort(queue[a].begin(), queue[a].end(), [&](std::size_t i, std::size_t j) {
            if (margs[a][i] != margs[a][j]) return margs[a][i] < margs[a][j];
            return prior.axis_labels(a)[i] < prior.axis_labels(a)[j];
        });
    }

    std::vector<std::vector<bool>> dropped(n);
    for (std::size_t a = 0; a < n; ++a) dropped[a].assign(prior.axis_size(a), false);
    std::vector<std::size_t> kept_count(n);
    for (std::size_t a = 0; a < n; ++a) kept_count[a] = prior.axis_size(a);

    auto slice_mass = [&](std::size_t axis, std::size_t label) {
        double sum = 0.0;
        for (std::size_t f = 0; f < mass.size(); ++f)
            if (shape.coord(f, axis) == label) sum += mass[f];
        return sum;
    };
    auto zero_slice = [&](std::size_t axis, std::size_t label) {
        for (std::size_t f = 0; f < mass.size(); ++f)
            if (shape.coord(f, axis) == label) mass[f] = 0.0;
    };
    auto currently_supported = [&]() {
        return is_jointly_supported(JointDist(
            [&] {
                std::vector<std::vector<std::string>> axes;
                for (std::size_t a = 0; a < n; ++a) axes.push_back(prior.axis_labels(a));
                return axes;
            }(),
            mass, true));
    };

    double budget = epsilon, removed_mass = 0.0;
    bool was_supported = currently_supported();
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (std::size_t a = 0; a < n; ++a) {
            while (queue_pos[a] < queue[a].size()) {
                std::size_t label = queue[a][queue_pos[a]];
                if (dropped[a][label] || label == shape.coord(argmax, a)) {
                    ++queue_pos[a]; // the largest cell's labels always stay
                    continue;
                }
                if (kept_count[a] <= 1) break;
                double cost = slice_mass(a, label);
                if (cost > budget) break;
                std::vector<double> saved = mass;
                zero_slice(a, label);
                bool supported_now = currently_supported();
                if (was_supported && !supported_now) {
                    mass = std::move(saved); // roll back the drop
                    break;
                }
                was_supported = supported_now;
                dropped[a][label] = true;
                --kept_count[a];
                budget -= cost;
                removed_mass += cost;
                removed[a].push_back(prior.axis_labels(a)[label]);
                ++queue_pos[a];
                progressed = true;
                break; // alternate to the next axis
            }
        }
    }

    JointDist sub(
        [&] {
            std::vector<std::vector<std::string>> axes;
            for (std::size_t a = 0; a < n; ++a) axes.push_back(prior.axis_labels(a));
            return axes;
        }(),
        std::move(mass), true);
    bool trivial = true;
    for (const auto& r : removed) trivial = trivial && r.empty();
    bool warn = !is_jointly_supported(sub);
    return JointTruncation{std::move(removed), removed_mass, std::move(sub), trivial, warn};
}

BoundReport sandwich_single(const Dist& prior, const Channel& channel, double epsilon) {
    Truncation trunc = truncate_prior(prior, epsilon);
    double v_post = post_vuln(trunc.sub_prior, channel);
    double base = min_entropy_leakage(trunc.sub_prior, channel).bits;
    BoundReport report{Quantity::leakage, base, base, "input-approximation-single", {}, {}};
    report.parts["epsilon_actual"] = trunc.epsilon_actual;
    report.parts["truncated_posterior_vulnerability"] = v_post;
    report.parts["truncated_leakage"] = base;
    if (trunc.epsilon_actual > 0.0) {
        report.parts["epsilon_term"] = detail::log_q(1.0 + trunc.epsilon_actual / v_post);
        report.hi = base + report.parts["epsilon_term"];
    } else {
        report.parts["epsilon_term"] = 0.0;
    }
    return report;
}

BoundReport whitebox_shared_bound(const Dist& prior, std::span<const Channel> channels,
                                  double epsilon) {
    if (channels.empty()) fail(Errc::bad_input, "need at least one channel");
    for (const auto& c : channels)
        if (c.in_labels() != prior.labels())
            fail(Errc::label_mismatch, "shared channels must read the prior's secret space");
    Truncation trunc = truncate_prior(prior, epsilon);
    const Dist& sub = trunc.sub_prior;

    BoundReport report{Quantity::leakage, 0.0, 0.0, "input-approximation-shared", {}, {}};
    double leak_sum = 0.0, v_best = 0.0, lo = -kInf;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        double l = min_entropy_leakage(sub, channels[i]).bits;
        report.parts["truncated_component_leakage_" + std::to_string(i + 1)] = l;
        leak_sum += l;
        v_best = std::max(v_best, post_vuln(sub, channels[i]));
        lo = std::max(lo, min_entropy_leakage(prior, channels[i]).bits);
    }
    double hmin = h_min(sub);
    double hinf = min_entropy(sub).bits;
    double eps_term =
        trunc.epsilon_actual > 0.0 ? detail::log_q(1.0 + trunc.epsilon_actual / v_best) : 0.0;
    report.parts["h_min"] = hmin;
    report.parts["prior_min_entropy"] = hinf;
    report.parts["epsilon_actual"] = trunc.epsilon_actual;
    report.parts["epsilon_term"] = eps_term;
    report.parts["posterior_vulnerability_floor"] = v_best;
    report.lo = lo;
    report.hi =
        leak_sum + static_cast<double>(channels.size() - 1) * (hmin - hinf) + eps_term;
    return report;
}

BoundReport blackbox_distinct_bounds(const JointDist& prior, std::span<const double> leakages,
                                     std::span<const double> vulnerabilities, double epsilon) {
    if (leakages.size() != prior.n_axes() || vulnerabilities.size() != prior.n_axes())
        fail(Errc::dimension_mismatch, "need one leakage and one vulnerability per component");
    if (!is_jointly_supported(prior))
        fail(Errc::not_jointly_supported, "black-box bounds need a jointly supported prior");
    double v_min = kInf, v_max = -kInf;
    for (double v : vulnerabilities) {
        v_min = std::min(v_min, v);
        v_max = std::max(v_max, v);
    }
    if (epsilon >= v_min)
        fail(Errc::epsilon_too_large,
             "epsilon must stay below every component posterior vulnerability");
    JointTruncation trunc = truncate_joint_prior(prior, epsilon);
    auto [mmin, mmax] = m_extremes_min_entropy(trunc.sub_prior);
    double slack = detail::log_q(mmax / mmin);

    BoundReport report{Quantity::leakage, 0.0, 0.0, "black-box-distinct", {}, {}};
    double leak_sum = 0.0, lo_sum = 0.0;
    for (std::size_t i = 0; i < leakages.size(); ++i) {
        leak_sum += leakages[i];
        lo_sum += leakages[i] - detail::log_q(vulnerabilities[i] / (vulnerabilities[i] - epsilon));
    }
    report.parts["m_min"] = mmin;
    report.parts["m_max"] = mmax;
    report.parts["log_ratio"] = slack;
    report.parts["epsilon_actual"] = trunc.epsilon_actual;
    report.parts["epsilon_term"] = detail::log_q(v_max / (v_max - epsilon));
    report.lo = lo_sum - slack;
    report.hi = leak_sum + report.parts["epsilon_term"] + slack;
    if (trunc.support_warning)
        report.notes.push_back("truncation could not preserve joint support");
    return report;
}

BoundReport blackbox_shared_bound(const Dist& prior, std::span<const double> leakages,
                                  std::span<const double> vulnerabilities, double epsilon) {
    if (leakages.empty() || leakages.size() != vulnerabilities.size())
        fail(Errc::dimension_mismatch, "need one leakage and one vulnerability per component");
    double v_max = -kInf;
    for (double v : vulnerabilities) v_max = std::max(v_max, v);
    if (epsilon >= v_max)
        fail(Errc::epsilon_too_large,
             "epsilon must stay below the largest component posterior vulnerability");
    Truncation trunc = truncate_prior(prior, epsilon);
    double hmin = h_min(trunc.sub_prior);
    double hinf = min_entropy(trunc.sub_prior).bits;

    BoundReport report{Quantity::leakage, 0.0, 0.0, "black-box-shared", {}, {}};
    double leak_sum = 0.0, best = -kInf;
    for (double l : leakages) {
        leak_sum += l;
        best = std::max(best, l);
    }
    double eps_term = epsilon > 0.0 ? detail::log_q(v_max / (v_max - epsilon)) : 0.0;
    report.parts["h_min"] = hmin;
    report.parts["prior_min_entropy"] = hinf;
    report.parts["epsilon_actual"] = trunc.epsilon_actual;
    report.parts["epsilon_term"] = eps_term;
    report.lo = best;
    report.hi = leak_sum + static_cast<double>(leakages.size() - 1) * (hmin - hinf) + eps_term;
    return report;
}

} // namespace qif
