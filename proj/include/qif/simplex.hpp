#ifndef QIF_SIMPLEX_HPP
#define QIF_SIMPLEX_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace qif {

/// Decides feasibility of { A x = b, x >= 0 } with a dense phase-1 simplex
/// using Bland's rule. `a` is row-major with `rows` x `cols` entries.
/// Returns a feasible x when the residual objective reaches `tol`, otherwise
/// nullopt. Intended for the small systems that channel factorization
/// produces (tens of rows and columns).
std::optional<std::vector<double>> solve_equality_feasibility(std::vector<double> a,
                                                              std::vector<double> b,
                                                              std::size_t rows, std::size_t cols,
                                                              double tol);

} // namespace qif

#endif
