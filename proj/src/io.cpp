#include "qif/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qif/bounds.hpp"
#include "qif/errors.hpp"

namespace qif {

namespace {

using nlohmann::json;

constexpr double kKeepTol = 1e-9;
constexpr double kRenormTol = 1e-6;

void check_label_writable(const std::string& label) {
    if (label.empty() || label.find(',') != std::string::npos ||
        label.find('\n') != std::string::npos)
        fail(Errc::bad_input, "label '" + label + "' cannot be written to CSV");
}

double parse_double(const std::string& cell) {
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0')
        fail(Errc::bad_input, "cannot parse number '" + cell + "'");
    return v;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

void warn(LoadReport* report, const std::string& message) {
    if (report) report->warnings.push_back(message);
}

/// Applies the load-time normalization policy to a channel row: keep within
/// 1e-9, renormalize within 1e-6 with a warning, reject anything worse.
void fix_row(std::vector<double>& row, const std::string& what, LoadReport* report) {
    double sum = 0.0;
    for (double v : row) sum += v;
    if (std::abs(sum - 1.0) <= kKeepTol) return;
    if (std::abs(sum - 1.0) <= kRenormTol) {
        for (double& v : row) v /= sum;
        warn(report, what + " renormalized (sum was " + format_double(sum) + ")");
        return;
    }
    fail(Errc::not_normalized, what + " sums to " + format_double(sum));
}

/// Dist variant: totals clearly below 1 are legitimate sub-priors.
void fix_dist_mass(std::vector<double>& mass, const std::string& what, LoadReport* report) {
    double sum = 0.0;
    for (double v : mass) sum += v;
    if (sum < 1.0 - kRenormTol) return; // sub-prior
    if (std::abs(sum - 1.0) <= kKeepTol) return;
    if (std::abs(sum - 1.0) <= kRenormTol) {
        for (double& v : mass) v /= sum;
        warn(report, what + " renormalized (sum was " + format_double(sum) + ")");
        return;
    }
    fail(Errc::not_normalized, what + " sums to " + format_double(sum));
}

json parse_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(Errc::bad_input, std::string("invalid JSON: ") + e.what());
    }
    return j;
}

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array()) fail(Errc::bad_input, std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) fail(Errc::bad_input, std::string(what) + " entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::vector<double> number_list(const json& j, const char* what) {
    if (!j.is_array()) fail(Errc::bad_input, std::string(what) + " must be an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) fail(Errc::bad_input, std::string(what) + " entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

struct Table {
    std::vector<std::string> col_labels;
    std::vector<std::string> row_labels;
    std::vector<std::vector<double>> body;
};

Table read_table_csv(std::istream& in, const char* what) {
    auto lines = read_lines(in);
    if (lines.size() < 2) fail(Errc::bad_input, std::string(what) + " file is too short");
    auto header = split_line(lines[0]);
    if (header.size() < 2) fail(Errc::bad_input, std::string(what) + " header is too short");
    Table t;
    t.col_labels.assign(header.begin() + 1, header.end());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto cells = split_line(lines[i]);
        if (cells.size() != header.size())
            fail(Errc::bad_input, std::string(what) + " row has the wrong number of cells");
        t.row_labels.push_back(cells[0]);
        std::vector<double> row;
        for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_double(cells[c]));
        t.body.push_back(std::move(row));
    }
    return t;
}

void write_table_csv(const std::vector<std::string>& col_labels,
                     const std::vector<std::string>& row_labels,
                     const std::vector<std::vector<double>>& body, std::ostream& out) {
    for (const auto& l : col_labels) check_label_writable(l);
    for (const auto& l : row_labels) check_label_writable(l);
    for (const auto& l : col_labels) out << ',' << l;
    out << '\n';
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        out << row_labels[r];
        for (double v : body[r]) out << ',' << format_double(v);
        out << '\n';
    }
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

Channel read_channel_csv(std::istream& in, LoadReport* report) {
    Table t = read_table_csv(in, "channel");
    std::vector<double> rows;
    for (std::size_t r = 0; r < t.body.size(); ++r) {
        fix_row(t.body[r], "channel row '" + t.row_labels[r] + "'", report);
        rows.insert(rows.end(), t.body[r].begin(), t.body[r].end());
    }
    return Channel(std::move(t.row_labels), std::move(t.col_labels), std::move(rows));
}

void write_channel_csv(const Channel& channel, std::ostream& out) {
    std::vector<std::vector<double>> body(channel.n_in());
    for (std::size_t x = 0; x < channel.n_in(); ++x)
        body[x].assign(channel.row(x).begin(), channel.row(x).end());
    write_table_csv(channel.out_labels(), channel.in_labels(), body, out);
}

Channel read_channel_json(std::istream& in, LoadReport* report) {
    json j = parse_json(in);
    auto in_labels = string_list(j.at("in_labels"), "in_labels");
    auto out_labels = string_list(j.at("out_labels"), "out_labels");
    if (!j.at("rows").is_array()) fail(Errc::bad_input, "rows must be an array");
    std::vector<double> rows;
    std::size_t r = 0;
    for (const auto& row_json : j.at("rows")) {
        auto row = number_list(row_json, "row");
        if (row.size() != out_labels.size())
            fail(Errc::bad_input, "row has the wrong number of entries");
        fix_row(row, "channel row '" + (r < in_labels.size() ? in_labels[r] : "?") + "'", report);
        rows.insert(rows.end(), row.begin(), row.end());
        ++r;
    }
    return Channel(std::move(in_labels), std::move(out_labels), std::move(rows));
}

void write_channel_json(const Channel& channel, std::ostream& out) {
    json rows = json::array();
    for (std::size_t x = 0; x < channel.n_in(); ++x)
        rows.push_back(std::vector<double>(channel.row(x).begin(), channel.row(x).end()));
    json j{{"in_labels", channel.in_labels()},
           {"out_labels", channel.out_labels()},
           {"rows", std::move(rows)}};
    out << j.dump(2) << '\n';
}

Dist read_dist_csv(std::istream& in, LoadReport* report) {
    auto lines = read_lines(in);
    std::vector<std::string> labels;
    std::vector<double> mass;
    for (const auto& line : lines) {
        auto cells = split_line(line);
        if (cells.size() != 2) fail(Errc::bad_input, "prior line needs 'label,mass'");
        labels.push_back(cells[0]);
        mass.push_back(parse_double(cells[1]));
    }
    fix_dist_mass(mass, "prior", report);
    return Dist(std::move(labels), std::move(mass), true);
}

void write_dist_csv(const Dist& dist, std::ostream& out) {
    for (const auto& l : dist.labels()) check_label_writable(l);
    for (std::size_t i = 0; i < dist.size(); ++i)
        out << dist.labels()[i] << ',' << format_double(dist[i]) << '\n';
}

Dist read_dist_json(std::istream& in, LoadReport* report) {
    json j = parse_json(in);
    auto labels = string_list(j.at("labels"), "labels");
    auto mass = number_list(j.at("mass"), "mass");
    fix_dist_mass(mass, "prior", report);
    return Dist(std::move(labels), std::move(mass), true);
}

void write_dist_json(const Dist& dist, std::ostream& out) {
    json j{{"labels", dist.labels()}, {"mass", dist.mass()}};
    out << j.dump(2) << '\n';
}

JointDist read_joint_csv(std::istream& in, LoadReport* report) {
    Table t = read_table_csv(in, "joint prior");
    std::vector<double> mass;
    for (auto& row : t.body) mass.insert(mass.end(), row.begin(), row.end());
    fix_dist_mass(mass, "joint prior", report);
    return JointDist({std::move(t.row_labels), std::move(t.col_labels)}, std::move(mass), true);
}

void write_joint_csv(const JointDist& joint, std::ostream& out) {
    if (joint.n_axes() != 2)
        fail(Errc::bad_input, "CSV joint priors are 2-axis; use JSON for higher arity");
    std::vector<std::vector<double>> body(joint.axis_size(0));
    for (std::size_t i = 0; i < joint.axis_size(0); ++i) {
        body[i].resize(joint.axis_size(1));
        for (std::size_t j = 0; j < joint.axis_size(1); ++j) body[i][j] = joint.at(i, j);
    }
    write_table_csv(joint.axis_labels(1), joint.axis_labels(0), body, out);
}

JointDist read_joint_json(std::istream& in, LoadReport* report) {
    json j = parse_json(in);
    if (!j.at("axes").is_array()) fail(Errc::bad_input, "axes must be an array");
    std::vector<std::vector<std::string>> axes;
    for (const auto& axis : j.at("axes")) axes.push_back(string_list(axis, "axis"));
    auto mass = number_list(j.at("mass"), "mass");
    fix_dist_mass(mass, "joint prior", report);
    return JointDist(std::move(axes), std::move(mass), true);
}

void write_joint_json(const JointDist& joint, std::ostream& out) {
    json axes = json::array();
    for (std::size_t a = 0; a < joint.n_axes(); ++a) axes.push_back(joint.axis_labels(a));
    json j{{"axes", std::move(axes)}, {"mass", joint.mass()}};
    out << j.dump(2) << '\n';
}

GainFn read_gain_csv(std::istream& in) {
    Table t = read_table_csv(in, "gain");
    std::vector<double> gain;
    for (auto& row : t.body) gain.insert(gain.end(), row.begin(), row.end());
    return GainFn(std::move(t.row_labels), std::move(t.col_labels), std::move(gain));
}

void write_gain_csv(const GainFn& gain, std::ostream& out) {
    std::vector<std::vector<double>> body(gain.n_guesses());
    for (std::size_t w = 0; w < gain.n_guesses(); ++w) {
        body[w].resize(gain.n_secrets());
        for (std::size_t x = 0; x < gain.n_secrets(); ++x) body[w][x] = gain.at(w, x);
    }
    write_table_csv(gain.secrets(), gain.guesses(), body, out);
}

namespace {

bool has_json_extension(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::bad_input, "cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::bad_input, "cannot write '" + path + "'");
    return out;
}

} // namespace

Channel load_channel(const std::string& path, LoadReport* report) {
    auto in = open_in(path);
    return has_json_extension(path) ? read_channel_json(in, report)
                                    : read_channel_csv(in, report);
}

void save_channel(const Channel& channel, const std::string& path) {
    auto out = open_out(path);
    has_json_extension(path) ? write_channel_json(channel, out) : write_channel_csv(channel, out);
}

Dist load_dist(const std::string& path, LoadReport* report) {
    auto in = open_in(path);
    return has_json_extension(path) ? read_dist_json(in, report) : read_dist_csv(in, report);
}

void save_dist(const Dist& dist, const std::string& path) {
    auto out = open_out(path);
    has_json_extension(path) ? write_dist_json(dist, out) : write_dist_csv(dist, out);
}

JointDist load_joint(const std::string& path, LoadReport* report) {
    auto in = open_in(path);
    return has_json_extension(path) ? read_joint_json(in, report) : read_joint_csv(in, report);
}

void save_joint(const JointDist& joint, const std::string& path) {
    auto out = open_out(path);
    has_json_extension(path) ? write_joint_json(joint, out) : write_joint_csv(joint, out);
}

GainFn load_gain(const std::string& path) {
    auto in = open_in(path);
    if (has_json_extension(path)) {
        json j = parse_json(in);
        auto guesses = string_list(j.at("guesses"), "guesses");
        auto secrets = string_list(j.at("secrets"), "secrets");
        auto gain = number_list(j.at("gain"), "gain");
        return GainFn(std::move(guesses), std::move(secrets), std::move(gain));
    }
    return read_gain_csv(in);
}

void save_gain(const GainFn& gain, const std::string& path) {
    auto out = open_out(path);
    if (has_json_extension(path)) {
        json j{{"guesses", gain.guesses()}, {"secrets", gain.secrets()}, {"gain", gain.data()}};
        out << j.dump(2) << '\n';
        return;
    }
    write_gain_csv(gain, out);
}

void print_bound_report(const BoundReport& report, std::ostream& out) {
    out << "quantity: " << quantity_name(report.quantity) << '\n';
    out << "theorem:  " << report.theorem << '\n';
    out << "lo:       " << format_double(report.lo) << '\n';
    out << "hi:       " << format_double(report.hi) << '\n';
    for (const auto& [name, value] : report.parts)
        out << "  " << name << " = " << format_double(value) << '\n';
    for (const auto& note : report.notes) out << "  note: " << note << '\n';
}

} // namespace qif
