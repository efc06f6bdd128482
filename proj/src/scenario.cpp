#include "qif/scenario.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qif/approx.hpp"
#include "qif/bounds.hpp"
#include "qif/errors.hpp"
#include "qif/measures.hpp"

namespace qif {

namespace {

using nlohmann::json;

std::string join_path(const std::string& base, const std::string& path) {
    if (base.empty() || path.empty() || path[0] == '/') return path;
    return base + "/" + path;
}

CompositionNode parse_node(const json& j) {
    CompositionNode node;
    if (j.is_string()) {
        node.kind = CompositionNode::Kind::ref;
        node.ref = j.get<std::string>();
        return node;
    }
    if (!j.is_object()) fail(Errc::bad_input, "composition nodes must be objects or names");
    if (j.contains("ref")) {
        node.kind = CompositionNode::Kind::ref;
        node.ref = j.at("ref").get<std::string>();
        return node;
    }
    std::string op = j.at("op").get<std::string>();
    if (op == "distinct")
        node.kind = CompositionNode::Kind::distinct;
    else if (op == "shared")
        node.kind = CompositionNode::Kind::shared;
    else if (op == "cascade")
        node.kind = CompositionNode::Kind::cascade;
    else
        fail(Errc::bad_input, "unknown composition op '" + op + "'");
    if (!j.contains("args") || !j.at("args").is_array() || j.at("args").empty())
        fail(Errc::bad_input, "composition op '" + op + "' needs args");
    std::size_t repeat = j.value("repeat", 1u);
    for (const auto& arg : j.at("args")) node.args.push_back(parse_node(arg));
    if (repeat > 1) {
        auto once = node.args;
        for (std::size_t r = 1; r < repeat; ++r)
            node.args.insert(node.args.end(), once.begin(), once.end());
    }
    return node;
}

const Channel& resolve_ref(const Scenario& scenario, const std::string& name) {
    auto it = scenario.channels.find(name);
    if (it == scenario.channels.end())
        fail(Errc::bad_input, "composition references unknown channel '" + name + "'");
    return it->second;
}

Channel evaluate(const Scenario& scenario, const CompositionNode& node) {
    ComposeOptions opts;
    opts.max_cells = scenario.max_cells;
    switch (node.kind) {
    case CompositionNode::Kind::ref: return resolve_ref(scenario, node.ref);
    case CompositionNode::Kind::distinct: {
        std::vector<Channel> parts;
        for (const auto& a : node.args) parts.push_back(evaluate(scenario, a));
        return parts.size() == 1 ? parts[0] : par_distinct_n(parts, opts);
    }
    case CompositionNode::Kind::shared: {
        std::vector<Channel> parts;
        for (const auto& a : node.args) parts.push_back(evaluate(scenario, a));
        return parts.size() == 1 ? parts[0] : par_shared_n(parts, opts);
    }
    case CompositionNode::Kind::cascade: {
        Channel acc = evaluate(scenario, node.args.front());
        for (std::size_t i = 1; i < node.args.size(); ++i)
            acc = cascade(acc, evaluate(scenario, node.args[i]));
        return acc;
    }
    }
    fail(Errc::bad_input, "unreachable composition kind");
}

/// Input labels of a node without materializing anything.
const std::vector<std::string>& input_labels(const Scenario& scenario,
                                             const CompositionNode& node) {
    switch (node.kind) {
    case CompositionNode::Kind::ref: return resolve_ref(scenario, node.ref).in_labels();
    case CompositionNode::Kind::shared: return input_labels(scenario, node.args.front());
    case CompositionNode::Kind::cascade: return input_labels(scenario, node.args.front());
    case CompositionNode::Kind::distinct:
        fail(Errc::bad_input, "distinct compositions have a joint input space; use joint_prior");
    }
    fail(Errc::bad_input, "unreachable composition kind");
}

/// Structural validation: shared nodes need identical input spaces, cascade
/// nodes need matching inner labels. Materialization-free for shared and
/// distinct; cascades must check concrete labels.
void type_check(const Scenario& scenario, const CompositionNode& node) {
    for (const auto& a : node.args) type_check(scenario, a);
    switch (node.kind) {
    case CompositionNode::Kind::ref: resolve_ref(scenario, node.ref); return;
    case CompositionNode::Kind::shared: {
        const auto& first = input_labels(scenario, node.args.front());
        for (const auto& a : node.args)
            if (input_labels(scenario, a) != first)
                fail(Errc::input_space_mismatch,
                     "shared composition with differing input spaces");
        return;
    }
    case CompositionNode::Kind::cascade: {
        for (std::size_t i = 0; i + 1 < node.args.size(); ++i) {
            Channel left = evaluate(scenario, node.args[i]);
            Channel right = evaluate(scenario, node.args[i + 1]);
            if (left.out_labels() != right.in_labels())
                fail(Errc::label_mismatch, "cascade stages do not line up");
        }
        return;
    }
    case CompositionNode::Kind::distinct: return;
    }
}

GainFn build_gain(const json& spec, const std::vector<std::string>& secrets,
                  const std::string& base_dir) {
    if (spec.is_null() || (spec.is_string() && spec.get<std::string>() == "identity"))
        return gain_identity(secrets);
    if (spec.is_string()) {
        const std::string s = spec.get<std::string>();
        if (s.rfind("ktries:", 0) == 0)
            return gain_ktries(secrets, std::stoul(s.substr(7)));
        fail(Errc::bad_input, "unknown gain '" + s + "'");
    }
    std::string kind = spec.at("kind").get<std::string>();
    if (kind == "identity") return gain_identity(secrets);
    if (kind == "k_tries") return gain_ktries(secrets, spec.at("k").get<std::size_t>());
    if (kind == "binary") {
        std::vector<std::vector<std::string>> sets;
        for (const auto& s : spec.at("sets")) sets.push_back(s.get<std::vector<std::string>>());
        return gain_binary(std::move(sets), secrets);
    }
    if (kind == "table") {
        GainFn g = load_gain(join_path(base_dir, spec.at("path").get<std::string>()));
        if (g.secrets() != secrets)
            fail(Errc::label_mismatch, "gain table secrets do not match the composition input");
        return g;
    }
    fail(Errc::bad_input, "unknown gain kind '" + kind + "'");
}

std::vector<Channel> flat_components(const Scenario& scenario) {
    std::vector<Channel> parts;
    for (const auto& a : scenario.composition.args) parts.push_back(evaluate(scenario, a));
    return parts;
}

} // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::bad_input, "cannot open '" + path + "'");
    std::string base_dir;
    if (auto slash = path.find_last_of('/'); slash != std::string::npos)
        base_dir = path.substr(0, slash);
    LoadReport report;
    return parse_scenario(in, base_dir, &report);
}

Scenario parse_scenario(std::istream& in, const std::string& base_dir, LoadReport* report) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(Errc::bad_input, std::string("invalid scenario JSON: ") + e.what());
    }

    Scenario scenario{{}, {}, {}, gain_identity({"_"}), {}, {}, {}, 100'000'000};
    if (j.contains("max_cells")) scenario.max_cells = j.at("max_cells").get<std::size_t>();
    if (!j.contains("channels") || !j.at("channels").is_object())
        fail(Errc::bad_input, "scenario needs a channels object");
    for (const auto& [name, value] : j.at("channels").items()) {
        if (value.is_string()) {
            scenario.channels.emplace(name,
                                      load_channel(join_path(base_dir, value.get<std::string>()),
                                                   report));
        } else {
            std::stringstream ss(value.dump());
            scenario.channels.emplace(name, read_channel_json(ss, report));
        }
    }

    if (!j.contains("composition")) fail(Errc::bad_input, "scenario needs a composition");
    scenario.composition = parse_node(j.at("composition"));
    type_check(scenario, scenario.composition);

    if (j.contains("epsilon")) scenario.epsilon = j.at("epsilon").get<double>();

    if (j.contains("prior")) {
        const auto& p = j.at("prior");
        if (p.is_string() && p.get<std::string>() == "uniform") {
            scenario.prior = Dist::uniform(input_labels(scenario, scenario.composition));
        } else if (p.is_string()) {
            scenario.prior = load_dist(join_path(base_dir, p.get<std::string>()), report);
        } else {
            std::stringstream ss(p.dump());
            scenario.prior = read_dist_json(ss, report);
        }
    }
    if (j.contains("joint_prior")) {
        const auto& p = j.at("joint_prior");
        if (p.is_string()) {
            scenario.joint_prior = load_joint(join_path(base_dir, p.get<std::string>()), report);
        } else {
            std::stringstream ss(p.dump());
            scenario.joint_prior = read_joint_json(ss, report);
        }
    }

    if (scenario.prior) {
        scenario.gain = build_gain(j.contains("gain") ? j.at("gain") : json(),
                                   scenario.prior->labels(), base_dir);
    } else if (j.contains("gain") && !scenario.joint_prior) {
        fail(Errc::bad_input, "a gain needs a prior to fix the secret space");
    }

    if (j.contains("analysis")) {
        for (const auto& a : j.at("analysis"))
            scenario.analysis.push_back(a.get<std::string>());
    }
    if (scenario.analysis.empty()) scenario.analysis = {"leakage"};
    return scenario;
}

void run_scenario(const Scenario& scenario, std::ostream& out) {
    auto need_prior = [&]() -> const Dist& {
        if (!scenario.prior) fail(Errc::bad_input, "this analysis needs a prior");
        return *scenario.prior;
    };
    auto need_joint = [&]() -> const JointDist& {
        if (!scenario.joint_prior) fail(Errc::bad_input, "this analysis needs a joint_prior");
        return *scenario.joint_prior;
    };

    for (const auto& analysis : scenario.analysis) {
        if (analysis == "min_capacity") {
            Channel c = evaluate(scenario, scenario.composition);
            out << "min_capacity = " << format_double(min_capacity(c)) << '\n';
        } else if (analysis == "mutual_information") {
            Channel c = evaluate(scenario, scenario.composition);
            out << "mutual_information = "
                << format_double(mutual_information(need_prior(), c)) << '\n';
        } else if (analysis == "vulnerability") {
            out << "prior_vulnerability = "
                << format_double(prior_vuln_g(need_prior(), scenario.gain)) << '\n';
        } else if (analysis == "posterior_vulnerability") {
            Channel c = evaluate(scenario, scenario.composition);
            out << "posterior_vulnerability = "
                << format_double(post_vuln_g(need_prior(), c, scenario.gain)) << '\n';
        } else if (analysis == "prior_entropy") {
            out << "prior_entropy = "
                << format_double(entropy_g(need_prior(), scenario.gain).bits) << '\n';
        } else if (analysis == "posterior_entropy") {
            Channel c = evaluate(scenario, scenario.composition);
            out << "posterior_entropy = "
                << format_double(cond_entropy_g(need_prior(), c, scenario.gain).bits) << '\n';
        } else if (analysis == "leakage") {
            Channel c = evaluate(scenario, scenario.composition);
            out << "leakage = "
                << format_double(leakage_g(need_prior(), c, scenario.gain).bits) << '\n';
        } else if (analysis == "bound") {
            if (scenario.composition.kind == CompositionNode::Kind::shared) {
                auto parts = flat_components(scenario);
                BoundReport report =
                    scenario.epsilon
                        ? whitebox_shared_bound(need_prior(), parts, *scenario.epsilon)
                        : bound_leakage_shared(need_prior(), parts, scenario.gain);
                print_bound_report(report, out);
            } else if (scenario.composition.kind == CompositionNode::Kind::distinct) {
                auto parts = flat_components(scenario);
                const JointDist& joint = need_joint();
                std::vector<GainFn> comps;
                for (std::size_t a = 0; a < joint.n_axes(); ++a)
                    comps.push_back(gain_identity(joint.axis_labels(a)));
                BoundReport report = scenario.epsilon
                                         ? [&] {
                                               std::vector<double> leaks, vulns;
                                               auto margs = joint.marginals();
                                               for (std::size_t i = 0; i < parts.size(); ++i) {
                                                   leaks.push_back(
                                                       min_entropy_leakage(margs[i], parts[i])
                                                           .bits);
                                                   vulns.push_back(
                                                       post_vuln(margs[i], parts[i]));
                                               }
                                               return blackbox_distinct_bounds(
                                                   joint, leaks, vulns, *scenario.epsilon);
                                           }()
                                         : bound_leakage_distinct(
                                               joint, parts, JointGainFn::product(comps));
                print_bound_report(report, out);
            } else {
                fail(Errc::bad_input,
                     "bound analysis needs a shared or distinct composition root");
            }
        } else {
            fail(Errc::bad_input, "unknown analysis '" + analysis + "'");
        }
    }
}

} // namespace qif
