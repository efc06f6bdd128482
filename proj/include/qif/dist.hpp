#ifndef QIF_DIST_HPP
#define QIF_DIST_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qif/indexing.hpp"

namespace qif {

/// Default separator used to join component labels into tuple labels.
inline constexpr const char* kLabelSep = "⊗"; // ⊗

std::string join_labels(const std::string& a, const std::string& b,
                        const std::string& sep = kLabelSep);

/// A labeled probability (or sub-probability) vector over a finite space.
/// Serves as prior, marginal and truncated sub-prior alike. Immutable after
/// construction; all entries are in [0,1]; a probability distribution sums
/// to 1 within 1e-9, a sub-distribution to at most that.
class Dist {
public:
    Dist(std::vector<std::string> labels, std::vector<double> mass, bool allow_sub = false);

    static Dist uniform(std::vector<std::string> labels);
    static Dist point(std::vector<std::string> labels, std::size_t index);

    std::size_t size() const { return mass_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& mass() const { return mass_; }
    double operator[](std::size_t i) const { return mass_[i]; }
    bool is_sub() const { return is_sub_; }
    double total() const;

private:
    std::vector<std::string> labels_;
    std::vector<double> mass_;
    bool is_sub_;
};

Dist make_dist(std::vector<std::string> labels, std::vector<double> mass, bool allow_sub);

/// A joint distribution over the product of n labeled axes (n >= 2), stored
/// row-major. Sub-priors are allowed; marginals are recomputed from the mass
/// table in a fixed summation order.
class JointDist {
public:
    JointDist(std::vector<std::vector<std::string>> axis_labels, std::vector<double> mass,
              bool allow_sub = false);

    static JointDist product(const std::vector<Dist>& parts);

    std::size_t n_axes() const { return axis_labels_.size(); }
    const std::vector<std::string>& axis_labels(std::size_t axis) const {
        return axis_labels_[axis];
    }
    std::size_t axis_size(std::size_t axis) const { return axis_labels_[axis].size(); }
    const Shape& shape() const { return shape_; }
    std::size_t cells() const { return mass_.size(); }

    double mass_at(std::size_t flat) const { return mass_[flat]; }
    const std::vector<double>& mass() const { return mass_; }
    double at(std::size_t i, std::size_t j) const; // 2-axis convenience

    bool is_sub() const { return is_sub_; }
    double total() const;

    Dist marginal(std::size_t axis) const;
    std::vector<Dist> marginals() const;

private:
    std::vector<std::vector<std::string>> axis_labels_;
    std::vector<double> mass_;
    Shape shape_;
    bool is_sub_;
};

/// True iff every cell with a nonzero product of marginals is itself nonzero
/// (zero tested exactly against the stored values).
bool is_jointly_supported(const JointDist& joint);

/// Builds the diagonal lifting of a prior onto the two-axis product of its
/// space with itself: mass pi[x] at (x, x) and 0 elsewhere.
JointDist lift_shared_prior(const Dist& prior);

/// Flattens a joint distribution to a plain distribution over tuple labels
/// (row-major, components joined with `sep`).
Dist flatten(const JointDist& joint, const std::string& sep = kLabelSep);

} // namespace qif

#endif
