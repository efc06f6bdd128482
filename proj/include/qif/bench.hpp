#ifndef QIF_BENCH_HPP
#define QIF_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qif {

/// Shared-composition timing harness: for n = 1..max_components copies of one
/// random channel, time the compositional upper bound against the exact
/// leakage of the materialized composition. Exact computation stops at the
/// cell cap or the time budget; bound computation always runs.
struct BenchConfig {
    std::size_t rows = 10;
    std::size_t cols = 10;
    std::size_t max_components = 64;
    double noise = 0.5;
    std::uint64_t seed = 1;
    std::size_t max_cells = 100'000'000;
    double timeout_s = 10.0;
    /// < 0 picks the default: a third of the largest component posterior
    /// vulnerability.
    double epsilon = -1.0;
};

struct BenchRow {
    std::size_t n_components;
    std::optional<double> exact_ms; // empty when capped or timed out
    std::string exact_status;       // "ok", "CAP" or "TIMEOUT"
    double bound_ms;
    double lo;
    double hi;
    std::optional<double> exact_bits;
};

std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Versioned CSV: a `# qif-bench-v1: ...` header comment followed by one row
/// per component count.
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

} // namespace qif

#endif
