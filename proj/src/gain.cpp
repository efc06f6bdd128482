#include "qif/gain.hpp"

#include <cmath>
#include <unordered_set>

#include "qif/errors.hpp"

namespace qif {

namespace {

void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            fail(Errc::duplicate_label, std::string(what) + " label '" + l + "' repeated");
}

std::string set_label(const std::vector<std::string>& members) {
    std::string l = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) l += "+";
        l += members[i];
    }
    return l + "}";
}

} // namespace

GainFn::GainFn(std::vector<std::string> guesses, std::vector<std::string> secrets,
               std::vector<double> gain, GainKind kind)
    : guesses_(std::move(guesses)), secrets_(std::move(secrets)), gain_(std::move(gain)),
      kind_(kind) {
    if (secrets_.empty()) fail(Errc::empty_secret_space, "gain function over empty secrets");
    if (guesses_.empty()) fail(Errc::empty_guess_set, "gain function with empty guess set");
    check_unique(guesses_, "gain guess");
    check_unique(secrets_, "gain secret");
    if (gain_.size() != guesses_.size() * secrets_.size())
        fail(Errc::dimension_mismatch, "gain table has wrong size");
    for (double v : gain_) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            fail(Errc::bad_input, "gain entries must lie in [0,1]");
        if ((kind_ == GainKind::binary || kind_ == GainKind::k_tries) && v != 0.0 && v != 1.0)
            fail(Errc::bad_input, "binary gain entries must be 0 or 1");
    }
    if (kind_ == GainKind::identity) {
        if (guesses_ != secrets_)
            fail(Errc::label_mismatch, "identity gain needs guesses == secrets");
        for (std::size_t w = 0; w < n_guesses(); ++w)
            for (std::size_t x = 0; x < n_secrets(); ++x)
                if (at(w, x) != (w == x ? 1.0 : 0.0))
                    fail(Errc::bad_input, "identity gain table is not the identity");
    }
}

GainFn gain_identity(std::vector<std::string> secrets) {
    std::size_t n = secrets.size();
    if (n == 0) fail(Errc::empty_secret_space, "identity gain over empty secrets");
    std::vector<double> gain(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) gain[i * n + i] = 1.0;
    auto guesses = secrets;
    return GainFn(std::move(guesses), std::move(secrets), std::move(gain), GainKind::identity);
}

GainFn gain_binary(std::vector<std::vector<std::string>> guess_sets,
                   std::vector<std::string> secrets) {
    if (secrets.empty()) fail(Errc::empty_secret_space, "binary gain over empty secrets");
    if (guess_sets.empty()) fail(Errc::empty_guess_set, "binary gain with no guess sets");
    std::unordered_set<std::string> secret_set(secrets.begin(), secrets.end());
    std::vector<std::string> guesses;
    std::vector<double> gain;
    gain.reserve(guess_sets.size() * secrets.size());
    for (const auto& set : guess_sets) {
        if (set.empty()) fail(Errc::empty_guess_set, "binary guess set is empty");
        std::unordered_set<std::string> members;
        for (const auto& m : set) {
            if (!secret_set.count(m))
                fail(Errc::label_mismatch, "guess set member '" + m + "' is not a secret");
            members.insert(m);
        }
        guesses.push_back(set_label(set));
        for (const auto& x : secrets) gain.push_back(members.count(x) ? 1.0 : 0.0);
    }
    return GainFn(std::move(guesses), std::move(secrets), std::move(gain), GainKind::binary);
}

GainFn gain_ktries(std::vector<std::string> secrets, std::size_t k) {
    std::size_t n = secrets.size();
    if (n == 0) fail(Errc::empty_secret_space, "k-tries gain over empty secrets");
    if (k < 1) fail(Errc::bad_input, "k-tries needs k >= 1");
    std::vector<std::string> guesses;
    std::vector<double> gain;
    // subsets by size, members in secret order
    auto next_combination = [n](std::vector<std::size_t>& pick) {
        std::size_t size = pick.size();
        for (std::size_t i = size; i-- > 0;) {
            if (pick[i] + (size - i) < n) {
                ++pick[i];
                for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    for (std::size_t size = 1; size <= std::min(k, n); ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        do {
            std::vector<std::string> members;
            std::vector<double> row(n, 0.0);
            for (std::size_t i : pick) {
                members.push_back(secrets[i]);
                row[i] = 1.0;
            }
            guesses.push_back(set_label(members));
            gain.insert(gain.end(), row.begin(), row.end());
        } while (next_combination(pick));
    }
    return GainFn(std::move(guesses), std::move(secrets), std::move(gain), GainKind::k_tries);
}

bool is_identity_gain(const GainFn& g) {
    if (g.guesses() != g.secrets()) return false;
    for (std::size_t w = 0; w < g.n_guesses(); ++w)
        for (std::size_t x = 0; x < g.n_secrets(); ++x)
            if (g.at(w, x) != (w == x ? 1.0 : 0.0)) return false;
    return true;
}

JointGainFn::JointGainFn(std::vector<GainFn> components, std::vector<double> gain,
                         bool is_product, Coupling coupling)
    : components_(std::move(components)), gain_(std::move(gain)), is_product_(is_product),
      coupling_(coupling) {
    if (components_.size() < 2) fail(Errc::bad_input, "joint gain needs >= 2 components");
    std::vector<std::size_t> wext, xext;
    for (const auto& g : components_) {
        wext.push_back(g.n_guesses());
        xext.push_back(g.n_secrets());
    }
    guess_shape_ = Shape(std::move(wext));
    secret_shape_ = Shape(std::move(xext));
    if (gain_.size() != guess_shape_.size() * secret_shape_.size())
        fail(Errc::dimension_mismatch, "joint gain table has wrong size");
}

JointGainFn JointGainFn::product(std::vector<GainFn> components) {
    std::vector<std::size_t> wext, xext;
    for (const auto& g : components) {
        wext.push_back(g.n_guesses());
        xext.push_back(g.n_secrets());
    }
    Shape ws(wext), xs(xext);
    std::vector<double> gain(ws.size() * xs.size());
    std::vector<std::size_t> w(components.size(), 0);
    std::size_t wf = 0;
    do {
        std::vector<std::size_t> x(components.size(), 0);
        std::size_t xf = 0;
        do {
            double v = 1.0;
            for (std::size_t i = 0; i < components.size(); ++i) v *= components[i].at(w[i], x[i]);
            gain[wf * xs.size() + xf] = v;
            ++xf;
        } while (xs.next(x));
        ++wf;
    } while (ws.next(w));
    return JointGainFn(std::move(components), std::move(gain), true, Coupling::strict);
}

JointGainFn JointGainFn::from_table(std::vector<GainFn> components, std::vector<double> gain) {
    JointGainFn joint(std::move(components), std::move(gain), false, Coupling::strict);
    for (double v : joint.gain_)
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            fail(Errc::bad_input, "joint gain entries must lie in [0,1]");
    const Shape& ws = joint.guess_shape_;
    const Shape& xs = joint.secret_shape_;
    std::vector<std::size_t> w(joint.n_components(), 0);
    std::size_t wf = 0;
    do {
        std::vector<std::size_t> x(joint.n_components(), 0);
        std::size_t xf = 0;
        do {
            double prod = 1.0;
            for (std::size_t i = 0; i < joint.n_components(); ++i)
                prod *= joint.components_[i].at(w[i], x[i]);
            double v = joint.gain_[wf * xs.size() + xf];
            if ((v == 0.0) != (prod == 0.0))
                fail(Errc::bad_input,
                     "joint gain breaks the worthlessness coupling with its components");
            ++xf;
        } while (xs.next(x));
        ++wf;
    } while (ws.next(w));
    return joint;
}

JointGainFn lift_shared_gain(const GainFn& g) {
    std::size_t nw = g.n_guesses(), nx = g.n_secrets();
    std::vector<double> gain(nw * nw * nx * nx, 0.0);
    for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t x = 0; x < nx; ++x)
            gain[(w * nw + w) * (nx * nx) + (x * nx + x)] = g.at(w, x);
    return JointGainFn({g, g}, std::move(gain), false, Coupling::forward_only);
}

GainFn flatten(const JointGainFn& joint, const std::string& sep) {
    const Shape& ws = joint.guess_shape();
    const Shape& xs = joint.secret_shape();
    auto tuple_labels = [&](const Shape& shape, auto label_of) {
        std::vector<std::string> out(shape.size());
        std::vector<std::size_t> idx(shape.rank(), 0);
        std::size_t f = 0;
        do {
            std::string l = label_of(0, idx[0]);
            for (std::size_t a = 1; a < shape.rank(); ++a)
                l = join_labels(l, label_of(a, idx[a]), sep);
            out[f++] = l;
        } while (shape.next(idx));
        return out;
    };
    auto guesses = tuple_labels(
        ws, [&](std::size_t a, std::size_t i) { return joint.component(a).guesses()[i]; });
    auto secrets = tuple_labels(
        xs, [&](std::size_t a, std::size_t i) { return joint.component(a).secrets()[i]; });
    std::vector<double> gain(ws.size() * xs.size());
    for (std::size_t wf = 0; wf < ws.size(); ++wf)
        for (std::size_t xf = 0; xf < xs.size(); ++xf)
            gain[wf * xs.size() + xf] = joint.at(wf, xf);
    return GainFn(std::move(guesses), std::move(secrets), std::move(gain), GainKind::table);
}

} // namespace qif
