#ifndef QIF_GAIN_HPP
#define QIF_GAIN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qif/dist.hpp"
#include "qif/indexing.hpp"

namespace qif {

enum class GainKind { identity, binary, k_tries, table };

/// An attacker gain table g(w, x) in [0,1] over guesses W and secrets X.
class GainFn {
public:
    GainFn(std::vector<std::string> guesses, std::vector<std::string> secrets,
           std::vector<double> gain, GainKind kind = GainKind::table);

    std::size_t n_guesses() const { return guesses_.size(); }
    std::size_t n_secrets() const { return secrets_.size(); }
    const std::vector<std::string>& guesses() const { return guesses_; }
    const std::vector<std::string>& secrets() const { return secrets_; }
    double at(std::size_t w, std::size_t x) const { return gain_[w * n_secrets() + x]; }
    const std::vector<double>& data() const { return gain_; }
    GainKind kind() const { return kind_; }

private:
    std::vector<std::string> guesses_;
    std::vector<std::string> secrets_;
    std::vector<double> gain_;
    GainKind kind_;
};

GainFn gain_identity(std::vector<std::string> secrets);
GainFn gain_binary(std::vector<std::vector<std::string>> guess_sets,
                   std::vector<std::string> secrets);
/// All nonempty subsets of the secrets of size <= k, enumerated by size then
/// lexicographically by member position.
GainFn gain_ktries(std::vector<std::string> secrets, std::size_t k);

/// True iff the gain is semantically the identity gain: guesses coincide with
/// secrets and g(w,x) = 1 exactly when w = x.
bool is_identity_gain(const GainFn& g);

/// How the joint table is tied to its component gains. `strict` enforces the
/// two-way worthlessness coupling (joint zero iff some component zero);
/// `forward_only` enforces only "some component zero implies joint zero",
/// which is what a shared-input lifting satisfies.
enum class Coupling { strict, forward_only };

/// A gain table over the product of n guess spaces and n secret spaces,
/// carrying its component gains. Construction validates the worthlessness
/// coupling exhaustively.
class JointGainFn {
public:
    static JointGainFn product(std::vector<GainFn> components);
    static JointGainFn from_table(std::vector<GainFn> components, std::vector<double> gain);

    std::size_t n_components() const { return components_.size(); }
    const GainFn& component(std::size_t i) const { return components_[i]; }
    const std::vector<GainFn>& components() const { return components_; }

    const Shape& guess_shape() const { return guess_shape_; }
    const Shape& secret_shape() const { return secret_shape_; }
    double at(std::size_t w_flat, std::size_t x_flat) const {
        return gain_[w_flat * secret_shape_.size() + x_flat];
    }

    bool is_product() const { return is_product_; }
    Coupling coupling() const { return coupling_; }

private:
    JointGainFn(std::vector<GainFn> components, std::vector<double> gain, bool is_product,
                Coupling coupling);
    friend JointGainFn lift_shared_gain(const GainFn&);

    std::vector<GainFn> components_;
    std::vector<double> gain_;
    Shape guess_shape_;
    Shape secret_shape_;
    bool is_product_;
    Coupling coupling_;
};

/// Builds the shared-input lifting of a single gain: the joint gain that pays
/// g(w, x) exactly on matched pairs ((w,w),(x,x)) and 0 elsewhere.
JointGainFn lift_shared_gain(const GainFn& g);

/// Flattens a joint gain to a plain table over tuple labels.
GainFn flatten(const JointGainFn& joint, const std::string& sep = kLabelSep);

} // namespace qif

#endif
