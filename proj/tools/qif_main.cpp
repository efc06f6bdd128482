// Command-line front end for the leakage engine: exact measures, channel
// algebra, compositional bounds, input approximation, refinement search,
// crowds/random scenario generation and the bound-vs-exact benchmark.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qif/approx.hpp"
#include "qif/bench.hpp"
#include "qif/bounds.hpp"
#include "qif/compose.hpp"
#include "qif/errors.hpp"
#include "qif/generators.hpp"
#include "qif/io.hpp"
#include "qif/measures.hpp"
#include "qif/scenario.hpp"

namespace {

using namespace qif;

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

struct CommonState {
    std::string log_base = "2";
    std::size_t max_cells = 100'000'000;
};

void apply_log_base(const CommonState& state) {
    if (state.log_base == "2")
        set_log_base(LogBase::two);
    else if (state.log_base == "e")
        set_log_base(LogBase::natural);
    else
        fail(Errc::bad_input, "--log-base must be 2 or e");
}

void print_warnings(const LoadReport& report) {
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
}

GainFn make_gain(const std::string& spec, const std::vector<std::string>& secrets,
                 LoadReport* report) {
    (void)report;
    if (spec.empty() || spec == "identity") return gain_identity(secrets);
    if (spec.rfind("ktries:", 0) == 0) return gain_ktries(secrets, std::stoul(spec.substr(7)));
    if (spec.rfind("table:", 0) == 0) {
        GainFn g = load_gain(spec.substr(6));
        if (g.secrets() != secrets)
            fail(Errc::label_mismatch, "gain table secrets do not match the channel input");
        return g;
    }
    fail(Errc::bad_input, "unknown gain '" + spec + "' (use identity, ktries:K or table:PATH)");
}

Dist resolve_prior(const std::string& prior_path, const Channel& channel, LoadReport* report) {
    if (prior_path.empty()) return Dist::uniform(channel.in_labels());
    Dist d = load_dist(prior_path, report);
    if (d.labels() != channel.in_labels())
        fail(Errc::label_mismatch, "prior labels do not match the channel input");
    return d;
}

std::vector<Channel> load_channels(const std::vector<std::string>& paths, std::size_t repeat,
                                   LoadReport* report) {
    std::vector<Channel> out;
    for (const auto& p : paths) out.push_back(load_channel(p, report));
    if (repeat > 1) {
        std::vector<Channel> once = out;
        for (std::size_t r = 1; r < repeat; ++r)
            out.insert(out.end(), once.begin(), once.end());
    }
    if (out.empty()) fail(Errc::bad_input, "no channels given");
    return out;
}

void write_or_print_channel(const Channel& channel, const std::string& out_path) {
    if (out_path.empty())
        write_channel_csv(channel, std::cout);
    else
        save_channel(channel, out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantitative information flow engine"};
    app.require_subcommand(1);
    CommonState common;
    app.add_option("--log-base", common.log_base, "logarithm base: 2 (default) or e");
    app.add_option("--max-cells", common.max_cells,
                   "cell cap for materialized compositions (default 1e8)");

    // measure
    std::string m_channel, m_prior, m_gain;
    int m_restarts = 100;
    std::uint64_t m_seed = 1;
    bool m_min_capacity = false, m_leakage = false, m_entropy = false, m_post_entropy = false;
    bool m_vuln = false, m_post_vuln = false, m_mi = false, m_gcap = false;
    auto* measure = app.add_subcommand("measure", "exact information measures of a channel");
    measure->add_option("--channel", m_channel, "channel file (csv or json)")->required();
    measure->add_option("--prior", m_prior, "prior file; uniform when omitted");
    measure->add_option("--gain", m_gain, "identity (default), ktries:K or table:PATH");
    measure->add_flag("--min-capacity", m_min_capacity, "min-capacity of the channel");
    measure->add_flag("--leakage", m_leakage, "g-leakage for the prior and gain");
    measure->add_flag("--entropy", m_entropy, "prior g-entropy");
    measure->add_flag("--posterior-entropy", m_post_entropy, "posterior g-entropy");
    measure->add_flag("--vulnerability", m_vuln, "prior g-vulnerability");
    measure->add_flag("--posterior-vulnerability", m_post_vuln, "posterior g-vulnerability");
    measure->add_flag("--mutual-information", m_mi, "Shannon mutual information");
    measure->add_flag("--g-capacity-lower", m_gcap, "heuristic lower bound on g-capacity");
    measure->add_option("--restarts", m_restarts, "random restarts for --g-capacity-lower");
    measure->add_option("--seed", m_seed, "seed for --g-capacity-lower");

    // compose
    std::vector<std::string> c_channels;
    std::string c_out;
    bool c_distinct = false, c_shared = false, c_cascade = false;
    auto* compose_cmd = app.add_subcommand("compose", "materialize a channel composition");
    compose_cmd->add_option("channels", c_channels, "channel files, left to right")->required();
    compose_cmd->add_flag("--distinct", c_distinct, "parallel composition, distinct inputs");
    compose_cmd->add_flag("--shared", c_shared, "parallel composition, shared input");
    compose_cmd->add_flag("--cascade", c_cascade, "cascade the channels in order");
    compose_cmd->add_option("-o,--output", c_out, "output file; stdout when omitted");

    // decompose
    std::string d_channel, d_out1, d_out2;
    auto* decompose_cmd =
        app.add_subcommand("decompose", "split a pair-output channel into its restrictions");
    decompose_cmd->add_option("--channel", d_channel, "channel file")->required();
    decompose_cmd->add_option("--first", d_out1, "output file for the first restriction");
    decompose_cmd->add_option("--second", d_out2, "output file for the second restriction");

    // bound
    std::vector<std::string> b_channels;
    std::string b_prior, b_joint_prior, b_gain;
    std::size_t b_repeat = 1;
    bool b_distinct = false, b_shared = false, b_blackbox = false;
    double b_epsilon = -1.0;
    auto* bound = app.add_subcommand("bound", "compositional leakage bounds (no materialization)");
    bound->add_option("channels", b_channels, "component channel files")->required();
    bound->add_option("--repeat", b_repeat, "repeat the channel list this many times");
    bound->add_flag("--distinct", b_distinct, "distinct-input composition");
    bound->add_flag("--shared", b_shared, "shared-input composition");
    bound->add_option("--prior", b_prior, "prior file (shared mode); uniform when omitted");
    bound->add_option("--joint-prior", b_joint_prior, "joint prior file (distinct mode)");
    bound->add_option("--gain", b_gain, "identity (default), ktries:K or table:PATH");
    bound->add_option("--epsilon", b_epsilon,
                      "input-approximation budget; negative disables truncation");
    bound->add_flag("--blackbox", b_blackbox,
                    "use only component leakages/vulnerabilities plus the prior");

    // approx
    std::string a_channel, a_prior;
    double a_epsilon = 0.0;
    auto* approx_cmd =
        app.add_subcommand("approx", "single-channel input-approximation sandwich");
    approx_cmd->add_option("--channel", a_channel, "channel file")->required();
    approx_cmd->add_option("--prior", a_prior, "prior file; uniform when omitted");
    approx_cmd->add_option("--epsilon", a_epsilon, "mass budget to truncate")->required();

    // refine
    std::string r_refined, r_refining, r_witness, r_witness_out;
    bool r_find = false, r_verify = false;
    auto* refine = app.add_subcommand("refine", "cascade-refinement search and verification");
    refine->add_option("--refined", r_refined, "candidate refined channel (leaks less)")
        ->required();
    refine->add_option("--refining", r_refining, "channel to post-process")->required();
    refine->add_flag("--find", r_find, "search for a post-processing witness");
    refine->add_flag("--verify", r_verify, "verify a given witness");
    refine->add_option("--witness", r_witness, "witness channel file (for --verify)");
    refine->add_option("-o,--output", r_witness_out, "file for a found witness");

    // crowds
    std::size_t cr_users = 25, cr_corrupt = 1;
    double cr_edge_prob = 0.4, cr_pf = 0.7;
    std::uint64_t cr_seed = 1;
    std::string cr_out;
    auto* crowds = app.add_subcommand("crowds", "crowds-on-MANET channel from a random topology");
    crowds->add_option("--users", cr_users, "crowd size (default 25)");
    crowds->add_option("--corrupt", cr_corrupt, "number of corrupted users (default 1)");
    crowds->add_option("--edge-prob", cr_edge_prob, "edge probability (default 0.4)");
    crowds->add_option("--pf", cr_pf, "forwarding probability (default 0.7)");
    crowds->add_option("--seed", cr_seed, "topology seed")->required();
    crowds->add_option("-o,--output", cr_out, "output file; stdout when omitted");

    // randgen
    bool g_channel = false, g_dist = false;
    std::size_t g_rows = 10, g_cols = 10, g_size = 10;
    double g_noise = 0.1;
    std::uint64_t g_seed = 1;
    std::string g_out;
    auto* randgen = app.add_subcommand("randgen", "random channels and priors");
    randgen->add_flag("--channel", g_channel, "generate a channel");
    randgen->add_flag("--dist", g_dist, "generate a prior");
    randgen->add_option("--rows", g_rows, "channel inputs");
    randgen->add_option("--cols", g_cols, "channel outputs");
    randgen->add_option("--noise", g_noise, "noise level (max row L1 distance from uniform)");
    randgen->add_option("--size", g_size, "prior size");
    randgen->add_option("--seed", g_seed, "seed")->required();
    randgen->add_option("-o,--output", g_out, "output file; stdout when omitted");

    // bench
    BenchConfig bench_config;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "bound vs exact timing over shared compositions");
    bench->add_option("--rows", bench_config.rows, "component inputs (default 10)");
    bench->add_option("--cols", bench_config.cols, "component outputs (default 10)");
    bench->add_option("--max-components", bench_config.max_components, "largest n (default 64)");
    bench->add_option("--noise", bench_config.noise, "component noise level (default 0.5)");
    bench->add_option("--seed", bench_config.seed, "seed")->required();
    bench->add_option("--timeout-s", bench_config.timeout_s,
                      "per-computation budget for the exact column");
    bench->add_option("--epsilon", bench_config.epsilon,
                      "truncation budget; default max component vulnerability / 3");
    bench->add_option("-o,--output", bench_out, "CSV output file; stdout when omitted");

    // scenario
    std::string s_file;
    auto* scenario_cmd = app.add_subcommand("scenario", "run a scenario file");
    scenario_cmd->add_option("file", s_file, "scenario JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        apply_log_base(common);
        LoadReport report;

        if (*measure) {
            Channel channel = load_channel(m_channel, &report);
            Dist prior = resolve_prior(m_prior, channel, &report);
            GainFn gain = make_gain(m_gain, channel.in_labels(), &report);
            print_warnings(report);
            bool any = false;
            if (m_min_capacity) {
                std::cout << "min_capacity = " << format_double(min_capacity(channel)) << '\n';
                any = true;
            }
            if (m_vuln) {
                std::cout << "prior_vulnerability = "
                          << format_double(prior_vuln_g(prior, gain)) << '\n';
                any = true;
            }
            if (m_post_vuln) {
                std::cout << "posterior_vulnerability = "
                          << format_double(post_vuln_g(prior, channel, gain)) << '\n';
                any = true;
            }
            if (m_entropy) {
                std::cout << "prior_entropy = " << format_double(entropy_g(prior, gain).bits)
                          << '\n';
                any = true;
            }
            if (m_post_entropy) {
                std::cout << "posterior_entropy = "
                          << format_double(cond_entropy_g(prior, channel, gain).bits) << '\n';
                any = true;
            }
            if (m_mi) {
                std::cout << "mutual_information = "
                          << format_double(mutual_information(prior, channel)) << '\n';
                any = true;
            }
            if (m_gcap) {
                std::cout << "g_capacity_lower = "
                          << format_double(g_capacity_lower(channel, gain, m_restarts, m_seed))
                          << '\n';
                any = true;
            }
            if (m_leakage || !any)
                std::cout << "leakage = " << format_double(leakage_g(prior, channel, gain).bits)
                          << '\n';
        } else if (*compose_cmd) {
            if (c_distinct + c_shared + c_cascade != 1)
                fail(Errc::bad_input, "pick exactly one of --distinct, --shared, --cascade");
            auto channels = load_channels(c_channels, 1, &report);
            print_warnings(report);
            ComposeOptions opts;
            opts.max_cells = common.max_cells;
            Channel result = [&] {
                if (c_distinct) return par_distinct_n(channels, opts);
                if (c_shared) return par_shared_n(channels, opts);
                Channel acc = channels[0];
                for (std::size_t i = 1; i < channels.size(); ++i) acc = cascade(acc, channels[i]);
                return acc;
            }();
            write_or_print_channel(result, c_out);
        } else if (*decompose_cmd) {
            Channel channel = load_channel(d_channel, &report);
            print_warnings(report);
            auto [first, second] = decompose(channel);
            if (d_out1.empty() && d_out2.empty()) {
                write_channel_csv(first, std::cout);
                std::cout << '\n';
                write_channel_csv(second, std::cout);
            } else {
                if (!d_out1.empty()) save_channel(first, d_out1);
                if (!d_out2.empty()) save_channel(second, d_out2);
            }
        } else if (*bound) {
            if (b_distinct == b_shared)
                fail(Errc::bad_input, "pick exactly one of --distinct, --shared");
            auto channels = load_channels(b_channels, b_repeat, &report);
            if (b_shared) {
                Dist prior = resolve_prior(b_prior, channels[0], &report);
                GainFn gain = make_gain(b_gain, channels[0].in_labels(), &report);
                print_warnings(report);
                BoundReport result = [&] {
                    if (b_epsilon >= 0.0 && b_blackbox) {
                        std::vector<double> leaks, vulns;
                        for (const auto& c : channels) {
                            leaks.push_back(min_entropy_leakage(prior, c).bits);
                            vulns.push_back(post_vuln(prior, c));
                        }
                        return blackbox_shared_bound(prior, leaks, vulns, b_epsilon);
                    }
                    if (b_epsilon >= 0.0) return whitebox_shared_bound(prior, channels, b_epsilon);
                    return bound_leakage_shared(prior, channels, gain);
                }();
                print_bound_report(result, std::cout);
            } else {
                if (b_joint_prior.empty())
                    fail(Errc::bad_input, "distinct bounds need --joint-prior");
                JointDist joint = load_joint(b_joint_prior, &report);
                print_warnings(report);
                BoundReport result = [&] {
                    if (b_epsilon >= 0.0 || b_blackbox) {
                        auto margs = joint.marginals();
                        if (margs.size() != channels.size())
                            fail(Errc::dimension_mismatch,
                                 "need one channel per joint prior axis");
                        std::vector<double> leaks, vulns;
                        for (std::size_t i = 0; i < channels.size(); ++i) {
                            leaks.push_back(min_entropy_leakage(margs[i], channels[i]).bits);
                            vulns.push_back(post_vuln(margs[i], channels[i]));
                        }
                        return blackbox_distinct_bounds(joint, leaks, vulns,
                                                        std::max(b_epsilon, 0.0));
                    }
                    std::vector<GainFn> comps;
                    for (std::size_t a = 0; a < joint.n_axes(); ++a) {
                        if (!b_gain.empty() && b_gain != "identity" &&
                            b_gain.rfind("ktries:", 0) != 0)
                            fail(Errc::bad_input,
                                 "distinct bounds support identity or ktries gains here; use a "
                                 "scenario file for full generality");
                        comps.push_back(make_gain(b_gain, joint.axis_labels(a), &report));
                    }
                    return bound_leakage_distinct(joint, channels, JointGainFn::product(comps));
                }();
                print_bound_report(result, std::cout);
            }
        } else if (*approx_cmd) {
            Channel channel = load_channel(a_channel, &report);
            Dist prior = resolve_prior(a_prior, channel, &report);
            print_warnings(report);
            print_bound_report(sandwich_single(prior, channel, a_epsilon), std::cout);
        } else if (*refine) {
            Channel refined = load_channel(r_refined, &report);
            Channel refining = load_channel(r_refining, &report);
            print_warnings(report);
            if (r_verify) {
                if (r_witness.empty()) fail(Errc::bad_input, "--verify needs --witness");
                RefinementWitness witness{load_channel(r_witness, &report)};
                bool ok = verify_refinement(refined, refining, witness);
                std::cout << (ok ? "verified" : "mismatch") << '\n';
                return ok ? 0 : kExitValidation;
            }
            if (!r_find) fail(Errc::bad_input, "pick --find or --verify");
            auto witness = find_refinement(refined, refining);
            if (!witness) {
                std::cout << "no witness\n";
                return kExitValidation;
            }
            std::cout << "witness found\n";
            if (!r_witness_out.empty()) save_channel(witness->post_channel, r_witness_out);
        } else if (*crowds) {
            if (cr_corrupt >= cr_users)
                fail(Errc::no_honest_users, "need at least one honest user");
            Topology topo = random_topology(cr_users, cr_edge_prob, cr_seed);
            for (std::size_t i = cr_users - cr_corrupt; i < cr_users; ++i) topo.corrupt[i] = true;
            topo.pf = cr_pf;
            write_or_print_channel(crowds_channel(topo), cr_out);
        } else if (*randgen) {
            if (g_channel == g_dist)
                fail(Errc::bad_input, "pick exactly one of --channel, --dist");
            if (g_channel) {
                write_or_print_channel(random_channel(g_rows, g_cols, g_noise, g_seed), g_out);
            } else {
                Dist d = random_dist(g_size, g_seed);
                if (g_out.empty())
                    write_dist_csv(d, std::cout);
                else
                    save_dist(d, g_out);
            }
        } else if (*bench) {
            bench_config.max_cells = common.max_cells;
            auto rows = run_bench(bench_config);
            if (bench_out.empty()) {
                write_bench_csv(rows, std::cout);
            } else {
                std::ofstream out(bench_out);
                if (!out) fail(Errc::bad_input, "cannot write '" + bench_out + "'");
                write_bench_csv(rows, out);
            }
        } else if (*scenario_cmd) {
            Scenario scenario = load_scenario(s_file);
            run_scenario(scenario, std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return (e.code() == Errc::size_overflow || e.code() == Errc::timeout) ? kExitResource
                                                                              : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
