#include "qif/dist.hpp"

#include <cmath>
#include <unordered_set>

#include "qif/errors.hpp"

namespace qif {

namespace {

constexpr double kSumTol = 1e-9;
constexpr double kSubOverTol = 1e-12;

void check_labels_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            fail(Errc::duplicate_label, std::string(what) + " label '" + l + "' repeated");
}

double kahan_sum(const std::vector<double>& values) {
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double checked_sum(const std::vector<double>& mass, bool allow_sub, const char* what) {
    for (double m : mass) {
        if (!std::isfinite(m)) fail(Errc::bad_input, std::string(what) + " has non-finite mass");
        if (m < 0.0) fail(Errc::negative_mass, std::string(what) + " has a negative entry");
        if (m > 1.0 + kSubOverTol)
            fail(Errc::mass_exceeds_one, std::string(what) + " entry exceeds 1");
    }
    double sum = kahan_sum(mass);
    if (sum > 1.0 + kSubOverTol)
        fail(Errc::mass_exceeds_one, std::string(what) + " total exceeds 1");
    if (!allow_sub && std::abs(sum - 1.0) > kSumTol)
        fail(Errc::not_normalized, std::string(what) + " does not sum to 1");
    return sum;
}

} // namespace

std::string join_labels(const std::string& a, const std::string& b, const std::string& sep) {
    return a + sep + b;
}

Dist::Dist(std::vector<std::string> labels, std::vector<double> mass, bool allow_sub)
    : labels_(std::move(labels)), mass_(std::move(mass)) {
    if (labels_.size() != mass_.size())
        fail(Errc::bad_input, "distribution labels and mass differ in length");
    if (labels_.empty()) fail(Errc::empty_secret_space, "distribution over empty space");
    check_labels_unique(labels_, "distribution");
    double sum = checked_sum(mass_, allow_sub, "distribution");
    is_sub_ = sum < 1.0 - kSumTol;
}

Dist Dist::uniform(std::vector<std::string> labels) {
    std::vector<double> mass(labels.size(), 1.0 / static_cast<double>(labels.size()));
    return Dist(std::move(labels), std::move(mass), false);
}

Dist Dist::point(std::vector<std::string> labels, std::size_t index) {
    std::vector<double> mass(labels.size(), 0.0);
    mass.at(index) = 1.0;
    return Dist(std::move(labels), std::move(mass), false);
}

double Dist::total() const { return kahan_sum(mass_); }

Dist make_dist(std::vector<std::string> labels, std::vector<double> mass, bool allow_sub) {
    return Dist(std::move(labels), std::move(mass), allow_sub);
}

JointDist::JointDist(std::vector<std::vector<std::string>> axis_labels, std::vector<double> mass,
                     bool allow_sub)
    : axis_labels_(std::move(axis_labels)), mass_(std::move(mass)) {
    if (axis_labels_.size() < 2) fail(Errc::bad_input, "joint distribution needs >= 2 axes");
    std::vector<std::size_t> extents;
    for (const auto& labels : axis_labels_) {
        if (labels.empty()) fail(Errc::empty_secret_space, "joint distribution axis is empty");
        check_labels_unique(labels, "joint distribution axis");
        extents.push_back(labels.size());
    }
    shape_ = Shape(std::move(extents));
    if (shape_.size() != mass_.size())
        fail(Errc::bad_input, "joint distribution mass table has wrong size");
    double sum = checked_sum(mass_, allow_sub, "joint distribution");
    is_sub_ = sum < 1.0 - kSumTol;
}

JointDist JointDist::product(const std::vector<Dist>& parts) {
    if (parts.size() < 2) fail(Errc::bad_input, "product prior needs >= 2 factors");
    std::vector<std::vector<std::string>> labels;
    std::vector<std::size_t> extents;
    bool any_sub = false;
    for (const auto& d : parts) {
        labels.push_back(d.labels());
        extents.push_back(d.size());
        any_sub = any_sub || d.is_sub();
    }
    Shape shape(extents);
    std::vector<double> mass(shape.size());
    std::vector<std::size_t> idx(parts.size(), 0);
    std::size_t flat = 0;
    do {
        double m = 1.0;
        for (std::size_t i = 0; i < parts.size(); ++i) m *= parts[i][idx[i]];
        mass[flat++] = m;
    } while (shape.next(idx));
    return JointDist(std::move(labels), std::move(mass), any_sub);
}

double JointDist::at(std::size_t i, std::size_t j) const {
    if (n_axes() != 2) fail(Errc::dimension_mismatch, "at(i,j) requires a 2-axis joint");
    return mass_[i * axis_size(1) + j];
}

double JointDist::total() const { return kahan_sum(mass_); }

Dist JointDist::marginal(std::size_t axis) const {
    std::vector<double> out(axis_size(axis), 0.0);
    for (std::size_t f = 0; f < mass_.size(); ++f)
        out[shape_.coord(f, axis)] += mass_[f];
    return Dist(axis_labels_[axis], std::move(out), true);
}

std::vector<Dist> JointDist::marginals() const {
    std::vector<Dist> out;
    out.reserve(n_axes());
    for (std::size_t a = 0; a < n_axes(); ++a) out.push_back(marginal(a));
    return out;
}

bool is_jointly_supported(const JointDist& joint) {
    auto margs = joint.marginals();
    const Shape& shape = joint.shape();
    for (std::size_t f = 0; f < joint.cells(); ++f) {
        if (joint.mass_at(f) != 0.0) continue;
        double prod = 1.0;
        for (std::size_t a = 0; a < joint.n_axes(); ++a)
            prod *= margs[a][shape.coord(f, a)];
        if (prod != 0.0) return false;
    }
    return true;
}

JointDist lift_shared_prior(const Dist& prior) {
    std::size_t n = prior.size();
    std::vector<double> mass(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) mass[i * n + i] = prior[i];
    return JointDist({prior.labels(), prior.labels()}, std::move(mass), true);
}

Dist flatten(const JointDist& joint, const std::string& sep) {
    const Shape& shape = joint.shape();
    std::vector<std::string> labels(joint.cells());
    std::vector<std::size_t> idx(joint.n_axes(), 0);
    std::size_t flat = 0;
    do {
        std::string l = joint.axis_labels(0)[idx[0]];
        for (std::size_t a = 1; a < joint.n_axes(); ++a)
            l = join_labels(l, joint.axis_labels(a)[idx[a]], sep);
        labels[flat++] = l;
    } while (shape.next(idx));
    return Dist(std::move(labels), joint.mass(), true);
}

} // namespace qif
