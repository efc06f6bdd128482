#ifndef QIF_INDEXING_HPP
#define QIF_INDEXING_HPP

#include <cstddef>
#include <numeric>
#include <vector>

namespace qif {

/// Row-major addressing over a product space with the given per-axis extents.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<std::size_t> extents) : extents_(std::move(extents)) {
        strides_.assign(extents_.size(), 1);
        for (std::size_t i = extents_.size(); i-- > 1;)
            strides_[i - 1] = strides_[i] * extents_[i];
    }

    std::size_t rank() const { return extents_.size(); }
    std::size_t extent(std::size_t axis) const { return extents_[axis]; }
    const std::vector<std::size_t>& extents() const { return extents_; }

    std::size_t size() const {
        std::size_t n = 1;
        for (std::size_t e : extents_) n *= e;
        return n;
    }

    std::size_t flat(const std::vector<std::size_t>& idx) const {
        std::size_t f = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) f += idx[i] * strides_[i];
        return f;
    }

    std::vector<std::size_t> unflat(std::size_t f) const {
        std::vector<std::size_t> idx(extents_.size());
        for (std::size_t i = 0; i < extents_.size(); ++i) {
            idx[i] = f / strides_[i];
            f %= strides_[i];
        }
        return idx;
    }

    std::size_t coord(std::size_t flat_index, std::size_t axis) const {
        return (flat_index / strides_[axis]) % extents_[axis];
    }

    /// Advance a row-major index tuple; returns false after the last tuple.
    bool next(std::vector<std::size_t>& idx) const {
        for (std::size_t i = extents_.size(); i-- > 0;) {
            if (++idx[i] < extents_[i]) return true;
            idx[i] = 0;
        }
        return false;
    }

private:
    std::vector<std::size_t> extents_;
    std::vector<std::size_t> strides_;
};

} // namespace qif

#endif
