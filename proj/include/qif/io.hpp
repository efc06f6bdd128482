#ifndef QIF_IO_HPP
#define QIF_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qif/channel.hpp"
#include "qif/dist.hpp"
#include "qif/gain.hpp"

namespace qif {

/// Warnings collected while loading (e.g. rows renormalized after decimal
/// truncation). Loading hard-fails when a row is off by more than 1e-6.
struct LoadReport {
    std::vector<std::string> warnings;
};

// Channel CSV layout: empty first cell, first row = output labels, first
// column = input labels, body = decimals with 17 significant digits (values
// round-trip bit-exactly). JSON mirrors the same structure.
Channel read_channel_csv(std::istream& in, LoadReport* report = nullptr);
void write_channel_csv(const Channel& channel, std::ostream& out);
Channel read_channel_json(std::istream& in, LoadReport* report = nullptr);
void write_channel_json(const Channel& channel, std::ostream& out);

// Dist CSV layout: one "label,mass" line per secret.
Dist read_dist_csv(std::istream& in, LoadReport* report = nullptr);
void write_dist_csv(const Dist& dist, std::ostream& out);
Dist read_dist_json(std::istream& in, LoadReport* report = nullptr);
void write_dist_json(const Dist& dist, std::ostream& out);

// Two-axis joint prior in the channel's matrix layout; JSON carries the
// general n-axis form ("axes" + row-major "mass").
JointDist read_joint_csv(std::istream& in, LoadReport* report = nullptr);
void write_joint_csv(const JointDist& joint, std::ostream& out);
JointDist read_joint_json(std::istream& in, LoadReport* report = nullptr);
void write_joint_json(const JointDist& joint, std::ostream& out);

// Gain table CSV: empty first cell, first row = secret labels, first column
// = guess labels.
GainFn read_gain_csv(std::istream& in);
void write_gain_csv(const GainFn& gain, std::ostream& out);

// Path-based conveniences dispatching on the ".json" / ".csv" extension.
Channel load_channel(const std::string& path, LoadReport* report = nullptr);
void save_channel(const Channel& channel, const std::string& path);
Dist load_dist(const std::string& path, LoadReport* report = nullptr);
void save_dist(const Dist& dist, const std::string& path);
JointDist load_joint(const std::string& path, LoadReport* report = nullptr);
void save_joint(const JointDist& joint, const std::string& path);
GainFn load_gain(const std::string& path);
void save_gain(const GainFn& gain, const std::string& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

struct BoundReport;

/// Human-readable table: quantity, provenance, interval and intermediates.
void print_bound_report(const BoundReport& report, std::ostream& out);

} // namespace qif

#endif
