#include "qif/bench.hpp"

#include <chrono>
#include <ostream>

#include "qif/approx.hpp"
#include "qif/compose.hpp"
#include "qif/errors.hpp"
#include "qif/generators.hpp"
#include "qif/io.hpp"
#include "qif/measures.hpp"

namespace qif {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

} // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    Channel component = random_channel(config.rows, config.cols, config.noise, config.seed);
    Dist prior = random_dist(config.rows, config.seed + 1);
    double epsilon = config.epsilon;
    if (epsilon < 0.0) epsilon = post_vuln(prior, component) / 3.0;

    std::vector<BenchRow> rows;
    bool timed_out = false;
    double exact_budget_ms = config.timeout_s * 1000.0;
    for (std::size_t n = 1; n <= config.max_components; ++n) {
        std::vector<Channel> copies(n, component);

        auto bound_start = std::chrono::steady_clock::now();
        BoundReport report = whitebox_shared_bound(prior, copies, epsilon);
        double bound_ms = ms_since(bound_start);

        BenchRow row{n, std::nullopt, "ok", bound_ms, report.lo, report.hi, std::nullopt};
        bool over_cap = false;
        std::size_t out_cells = 1;
        for (std::size_t i = 0; i < n && !over_cap; ++i) {
            if (component.n_out() > config.max_cells / out_cells) over_cap = true;
            out_cells *= component.n_out();
        }
        over_cap = over_cap || component.n_in() > config.max_cells / out_cells;
        if (over_cap) {
            row.exact_status = "CAP";
        } else if (timed_out) {
            row.exact_status = "TIMEOUT";
        } else {
            auto exact_start = std::chrono::steady_clock::now();
            ComposeOptions opts;
            opts.max_cells = config.max_cells;
            Channel composed = par_shared_n(copies, opts);
            double exact = min_entropy_leakage(prior, composed).bits;
            row.exact_ms = ms_since(exact_start);
            row.exact_bits = exact;
            if (*row.exact_ms > exact_budget_ms) timed_out = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "# qif-bench-v1: n_components,exact_time_ms,bound_time_ms,lo_bits,hi_bits,exact_bits\n";
    out << "n_components,exact_time_ms,bound_time_ms,lo_bits,hi_bits,exact_bits\n";
    for (const auto& r : rows) {
        out << r.n_components << ',';
        if (r.exact_ms)
            out << format_double(*r.exact_ms);
        else
            out << r.exact_status;
        out << ',' << format_double(r.bound_ms) << ',' << format_double(r.lo) << ','
            << format_double(r.hi) << ',';
        if (r.exact_bits) out << format_double(*r.exact_bits);
        out << '\n';
    }
}

} // namespace qif
