#ifndef QIF_SCENARIO_HPP
#define QIF_SCENARIO_HPP

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qif/channel.hpp"
#include "qif/compose.hpp"
#include "qif/dist.hpp"
#include "qif/gain.hpp"
#include "qif/io.hpp"

namespace qif {

/// A composition expression: either a channel reference or an n-ary
/// distinct/shared/cascade node.
struct CompositionNode {
    enum class Kind { ref, distinct, shared, cascade };
    Kind kind = Kind::ref;
    std::string ref;
    std::vector<CompositionNode> args;
};

/// A self-contained analysis request: named channels (inline or by path), a
/// prior, a gain, a composition tree and the quantities to evaluate.
/// Loading resolves every reference and type-checks the tree.
struct Scenario {
    std::map<std::string, Channel> channels;
    std::optional<Dist> prior;
    std::optional<JointDist> joint_prior;
    GainFn gain;
    CompositionNode composition;
    std::vector<std::string> analysis;
    std::optional<double> epsilon;
    std::size_t max_cells = 100'000'000;
};

/// Parses and validates a scenario file. `base_dir` anchors relative channel
/// and prior paths.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(std::istream& in, const std::string& base_dir, LoadReport* report);

/// Evaluates every requested quantity, writing one "name = value" line per
/// result (bound reports expand to their table form).
void run_scenario(const Scenario& scenario, std::ostream& out);

} // namespace qif

#endif
