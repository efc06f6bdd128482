#include "qif/compose.hpp"

#include <cmath>

#include "qif/errors.hpp"
#include "qif/simplex.hpp"

namespace qif {

namespace {

std::vector<std::string> tuple_labels(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::string& sep) {
    std::vector<std::string> out;
    out.reserve(a.size() * b.size());
    for (const auto& la : a)
        for (const auto& lb : b) out.push_back(join_labels(la, lb, sep));
    return out;
}

void check_cells(std::size_t n_in, std::size_t n_out, const ComposeOptions& opts) {
    if (n_in == 0 || n_out == 0 || n_in > opts.max_cells / n_out)
        fail(Errc::size_overflow, "composed channel would exceed the cell cap of " +
                                      std::to_string(opts.max_cells));
}

} // namespace

Channel par_distinct(const Channel& c1, const Channel& c2, const ComposeOptions& opts) {
    check_cells(c1.n_in() * c2.n_in(), c1.n_out() * c2.n_out(), opts);
    std::size_t n_out = c1.n_out() * c2.n_out();
    std::vector<double> rows(c1.n_in() * c2.n_in() * n_out);
    for (std::size_t x1 = 0; x1 < c1.n_in(); ++x1)
        for (std::size_t x2 = 0; x2 < c2.n_in(); ++x2) {
            double* row = rows.data() + (x1 * c2.n_in() + x2) * n_out;
            for (std::size_t y1 = 0; y1 < c1.n_out(); ++y1) {
                double v1 = c1.at(x1, y1);
                for (std::size_t y2 = 0; y2 < c2.n_out(); ++y2)
                    row[y1 * c2.n_out() + y2] = v1 * c2.at(x2, y2);
            }
        }
    return Channel(tuple_labels(c1.in_labels(), c2.in_labels(), opts.sep),
                   tuple_labels(c1.out_labels(), c2.out_labels(), opts.sep), std::move(rows));
}

Channel par_distinct_n(std::span<const Channel> channels, const ComposeOptions& opts) {
    if (channels.empty()) fail(Errc::bad_input, "n-ary composition of zero channels");
    std::size_t n_in = 1, n_out = 1;
    for (const auto& c : channels) {
        if (c.n_in() > opts.max_cells / n_in || c.n_out() > opts.max_cells / n_out)
            fail(Errc::size_overflow, "composed channel would exceed the cell cap");
        n_in *= c.n_in();
        n_out *= c.n_out();
    }
    check_cells(n_in, n_out, opts);
    Channel acc = channels[0];
    for (std::size_t i = 1; i < channels.size(); ++i)
        acc = par_distinct(acc, channels[i], opts);
    return acc;
}

Channel par_shared(const Channel& c1, const Channel& c2, const ComposeOptions& opts) {
    if (c1.in_labels() != c2.in_labels())
        fail(Errc::input_space_mismatch, "shared composition needs identical input spaces");
    check_cells(c1.n_in(), c1.n_out() * c2.n_out(), opts);
    std::size_t n_out = c1.n_out() * c2.n_out();
    std::vector<double> rows(c1.n_in() * n_out);
    for (std::size_t x = 0; x < c1.n_in(); ++x) {
        double* row = rows.data() + x * n_out;
        for (std::size_t y1 = 0; y1 < c1.n_out(); ++y1) {
            double v1 = c1.at(x, y1);
            for (std::size_t y2 = 0; y2 < c2.n_out(); ++y2)
                row[y1 * c2.n_out() + y2] = v1 * c2.at(x, y2);
        }
    }
    return Channel(c1.in_labels(), tuple_labels(c1.out_labels(), c2.out_labels(), opts.sep),
                   std::move(rows));
}

Channel par_shared_n(std::span<const Channel> channels, const ComposeOptions& opts) {
    if (channels.empty()) fail(Errc::bad_input, "n-ary composition of zero channels");
    std::size_t n_out = 1;
    for (const auto& c : channels) {
        if (c.n_out() > opts.max_cells / n_out)
            fail(Errc::size_overflow, "composed channel would exceed the cell cap");
        n_out *= c.n_out();
    }
    check_cells(channels[0].n_in(), n_out, opts);
    Channel acc = channels[0];
    for (std::size_t i = 1; i < channels.size(); ++i)
        acc = par_shared(acc, channels[i], opts);
    return acc;
}

std::pair<Channel, Channel> decompose(const Channel& channel, const std::string& sep) {
    const auto& labels = channel.out_labels();
    // Candidate splits of the first label, leftmost separator first. A split
    // is accepted when the whole label list forms the row-major grid
    // prefix x suffix it induces.
    const std::string& first = labels[0];
    for (std::size_t pos = first.find(sep); pos != std::string::npos;
         pos = first.find(sep, pos + 1)) {
        std::string lead = first.substr(0, pos) + sep;
        // size of the suffix block: consecutive labels sharing this prefix
        std::size_t block = 0;
        while (block < labels.size() && labels[block].starts_with(lead)) ++block;
        if (block == 0 || labels.size() % block != 0) continue;
        std::size_t n1 = labels.size() / block;
        std::vector<std::string> y1(n1), y2(block);
        for (std::size_t j = 0; j < block; ++j) y2[j] = labels[j].substr(pos + sep.size());
        bool ok = true;
        for (std::size_t i = 0; i < n1 && ok; ++i) {
            const std::string& l0 = labels[i * block];
            if (l0.size() < y2[0].size() + sep.size()) {
                ok = false;
                break;
            }
            y1[i] = l0.substr(0, l0.size() - y2[0].size() - sep.size());
            for (std::size_t j = 0; j < block && ok; ++j)
                ok = labels[i * block + j] == y1[i] + sep + y2[j];
        }
        if (!ok) continue;
        std::vector<double> rows1(channel.n_in() * n1, 0.0);
        std::vector<double> rows2(channel.n_in() * block, 0.0);
        for (std::size_t x = 0; x < channel.n_in(); ++x)
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < block; ++j) {
                    double v = channel.at(x, i * block + j);
                    rows1[x * n1 + i] += v;
                    rows2[x * block + j] += v;
                }
        return {Channel(channel.in_labels(), std::move(y1), std::move(rows1)),
                Channel(channel.in_labels(), std::move(y2), std::move(rows2))};
    }
    fail(Errc::not_factorable_outputs,
         "output labels do not form a tuple grid over '" + sep + "'");
}

Channel cascade(const Channel& first, const Channel& second) {
    if (first.out_labels() != second.in_labels())
        fail(Errc::label_mismatch, "cascade needs first.out == second.in");
    std::vector<double> rows(first.n_in() * second.n_out(), 0.0);
    for (std::size_t x = 0; x < first.n_in(); ++x)
        for (std::size_t y = 0; y < first.n_out(); ++y) {
            double v = first.at(x, y);
            if (v == 0.0) continue;
            for (std::size_t z = 0; z < second.n_out(); ++z)
                rows[x * second.n_out() + z] += v * second.at(y, z);
        }
    return Channel(first.in_labels(), second.out_labels(), std::move(rows));
}

bool verify_refinement(const Channel& refined, const Channel& refining,
                       const RefinementWitness& witness, double tol) {
    if (refined.in_labels() != refining.in_labels())
        fail(Errc::dimension_mismatch, "refinement needs a shared input space");
    if (witness.post_channel.in_labels() != refining.out_labels() ||
        witness.post_channel.out_labels() != refined.out_labels())
        fail(Errc::dimension_mismatch, "witness dimensions do not match the channels");
    Channel composed = cascade(refining, witness.post_channel);
    double worst = 0.0;
    for (std::size_t x = 0; x < refined.n_in(); ++x)
        for (std::size_t z = 0; z < refined.n_out(); ++z)
            worst = std::max(worst, std::abs(refined.at(x, z) - composed.at(x, z)));
    return worst <= tol;
}

std::optional<RefinementWitness> find_refinement(const Channel& refined,
                                                 const Channel& refining) {
    if (refined.in_labels() != refining.in_labels())
        fail(Errc::dimension_mismatch, "refinement needs a shared input space");
    const std::size_t nx = refined.n_in();
    const std::size_t nz = refined.n_out();
    const std::size_t ny = refining.n_out();
    // unknowns t[y,z] >= 0; constraints: sum_y refining[x,y] t[y,z] =
    // refined[x,z] for all (x,z), and sum_z t[y,z] = 1 for all y.
    const std::size_t n_unknowns = ny * nz;
    const std::size_t n_rows = nx * nz + ny;
    std::vector<double> a(n_rows * n_unknowns, 0.0);
    std::vector<double> b(n_rows, 0.0);
    std::size_t r = 0;
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t z = 0; z < nz; ++z, ++r) {
            for (std::size_t y = 0; y < ny; ++y) a[r * n_unknowns + y * nz + z] = refining.at(x, y);
            b[r] = refined.at(x, z);
        }
    for (std::size_t y = 0; y < ny; ++y, ++r) {
        for (std::size_t z = 0; z < nz; ++z) a[r * n_unknowns + y * nz + z] = 1.0;
        b[r] = 1.0;
    }
    auto solution = solve_equality_feasibility(std::move(a), std::move(b), n_rows, n_unknowns, 1e-7);
    if (!solution) return std::nullopt;
    std::vector<double>& t = *solution;
    for (double& v : t) {
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
    }
    // renormalize each witness row exactly
    for (std::size_t y = 0; y < ny; ++y) {
        double sum = 0.0;
        for (std::size_t z = 0; z < nz; ++z) sum += t[y * nz + z];
        if (sum > 0.0)
            for (std::size_t z = 0; z < nz; ++z) t[y * nz + z] /= sum;
        else
            t[y * nz] = 1.0;
    }
    return RefinementWitness{Channel(refining.out_labels(), refined.out_labels(), std::move(t))};
}

} // namespace qif
