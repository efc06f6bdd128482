#include "qif/channel.hpp"

#include <cmath>
#include <unordered_set>

#include "qif/errors.hpp"

namespace qif {

namespace {

constexpr double kRowTol = 1e-9;
constexpr double kEntryTol = 1e-12;

void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            fail(Errc::duplicate_label, std::string(what) + " label '" + l + "' repeated");
}

} // namespace

Channel::Channel(std::vector<std::string> in_labels, std::vector<std::string> out_labels,
                 std::vector<double> rows)
    : in_labels_(std::move(in_labels)), out_labels_(std::move(out_labels)),
      rows_(std::move(rows)) {
    if (in_labels_.empty() || out_labels_.empty())
        fail(Errc::bad_input, "channel needs nonempty input and output spaces");
    check_unique(in_labels_, "channel input");
    check_unique(out_labels_, "channel output");
    if (rows_.size() != in_labels_.size() * out_labels_.size())
        fail(Errc::dimension_mismatch, "channel matrix has wrong size");
    for (std::size_t x = 0; x < n_in(); ++x) {
        double sum = 0.0, carry = 0.0;
        for (std::size_t y = 0; y < n_out(); ++y) {
            double v = at(x, y);
            if (!std::isfinite(v)) fail(Errc::bad_input, "channel entry not finite");
            if (v < 0.0) fail(Errc::negative_mass, "channel entry negative");
            if (v > 1.0 + kEntryTol) fail(Errc::mass_exceeds_one, "channel entry exceeds 1");
            double yv = v - carry;
            double t = sum + yv;
            carry = (t - sum) - yv;
            sum = t;
        }
        if (std::abs(sum - 1.0) > kRowTol)
            fail(Errc::not_normalized,
                 "channel row '" + in_labels_[x] + "' does not sum to 1");
    }
}

Channel Channel::identity(std::vector<std::string> labels) {
    std::size_t n = labels.size();
    std::vector<double> rows(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) rows[i * n + i] = 1.0;
    auto out = labels;
    return Channel(std::move(labels), std::move(out), std::move(rows));
}

Channel Channel::point(std::vector<std::string> in_labels, std::string out_label) {
    std::vector<double> rows(in_labels.size(), 1.0);
    return Channel(std::move(in_labels), {std::move(out_label)}, std::move(rows));
}

} // namespace qif
