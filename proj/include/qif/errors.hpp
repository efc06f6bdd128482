#ifndef QIF_ERRORS_HPP
#define QIF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qif {

/// Error categories raised by the library. Each maps to one failure mode of
/// a public operation; the CLI maps size_overflow/timeout to exit code 3 and
/// everything else to exit code 2.
enum class Errc {
    negative_mass,
    mass_exceeds_one,
    not_normalized,
    duplicate_label,
    label_mismatch,
    input_space_mismatch,
    dimension_mismatch,
    not_factorable_outputs,
    size_overflow,
    timeout,
    zero_vulnerability,
    sub_prior_not_supported,
    all_supports_empty,
    not_jointly_supported,
    all_zero,
    epsilon_out_of_range,
    epsilon_too_large,
    cannot_preserve_joint_support,
    noise_out_of_range,
    no_honest_users,
    empty_secret_space,
    empty_guess_set,
    bad_input,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::negative_mass: return "NegativeMass";
    case Errc::mass_exceeds_one: return "MassExceedsOne";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::duplicate_label: return "DuplicateLabel";
    case Errc::label_mismatch: return "LabelMismatch";
    case Errc::input_space_mismatch: return "InputSpaceMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_factorable_outputs: return "NotFactorableOutputs";
    case Errc::size_overflow: return "SizeOverflow";
    case Errc::timeout: return "Timeout";
    case Errc::zero_vulnerability: return "ZeroVulnerability";
    case Errc::sub_prior_not_supported: return "SubPriorNotSupported";
    case Errc::all_supports_empty: return "AllSupportsEmpty";
    case Errc::not_jointly_supported: return "NotJointlySupported";
    case Errc::all_zero: return "AllZero";
    case Errc::epsilon_out_of_range: return "EpsilonOutOfRange";
    case Errc::epsilon_too_large: return "EpsilonTooLarge";
    case Errc::cannot_preserve_joint_support: return "CannotPreserveJointSupport";
    case Errc::noise_out_of_range: return "NoiseOutOfRange";
    case Errc::no_honest_users: return "NoHonestUsers";
    case Errc::empty_secret_space: return "EmptySecretSpace";
    case Errc::empty_guess_set: return "EmptyGuessSet";
    case Errc::bad_input: return "InvalidInput";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace qif

#endif
