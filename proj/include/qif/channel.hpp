#ifndef QIF_CHANNEL_HPP
#define QIF_CHANNEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qif {

/// A discrete channel: a labeled row-stochastic matrix C[x,y] = p(y|x).
/// Immutable after construction; every row sums to 1 within 1e-9.
class Channel {
public:
    Channel(std::vector<std::string> in_labels, std::vector<std::string> out_labels,
            std::vector<double> rows);

    static Channel identity(std::vector<std::string> labels);
    /// Single-output channel (a column of ones); the unit of composition.
    static Channel point(std::vector<std::string> in_labels, std::string out_label = "*");

    std::size_t n_in() const { return in_labels_.size(); }
    std::size_t n_out() const { return out_labels_.size(); }
    const std::vector<std::string>& in_labels() const { return in_labels_; }
    const std::vector<std::string>& out_labels() const { return out_labels_; }

    double at(std::size_t x, std::size_t y) const { return rows_[x * n_out() + y]; }
    std::span<const double> row(std::size_t x) const {
        return {rows_.data() + x * n_out(), n_out()};
    }
    const std::vector<double>& data() const { return rows_; }

private:
    std::vector<std::string> in_labels_;
    std::vector<std::string> out_labels_;
    std::vector<double> rows_;
};

} // namespace qif

#endif
