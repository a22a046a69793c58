#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <unordered_set>
#include <vector>

#include "evaplab/errors.hpp"

namespace evaplab {

struct Factor {
    std::string label;
    std::size_t dim = 2;
};

/// Ordered tensor-factor structure of a multipartite register. The first
/// factor is the slowest (most significant) index, so amplitudes follow the
/// usual Kronecker-product ordering.
class TensorRegister {
public:
    TensorRegister() = default;

    explicit TensorRegister(std::vector<Factor> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw ArgumentError("TensorRegister: no factors");
        std::unordered_set<std::string> seen;
        total_dim_ = 1;
        for (const auto& f : factors_) {
            if (f.label.empty()) throw ArgumentError("TensorRegister: empty label");
            if (!seen.insert(f.label).second) {
                throw ArgumentError("TensorRegister: duplicate label '" + f.label + "'");
            }
            if (f.dim < 1) throw ArgumentError("TensorRegister: factor '" + f.label + "' has dim 0");
            total_dim_ *= f.dim;
        }
        strides_.resize(factors_.size());
        std::size_t s = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            strides_[i] = s;
            s *= factors_[i].dim;
        }
    }

    TensorRegister(std::initializer_list<Factor> factors)
        : TensorRegister(std::vector<Factor>(factors)) {}

    /// Register of dim-2 factors with the given labels.
    static TensorRegister qubits(const std::vector<std::string>& labels) {
        std::vector<Factor> fs;
        fs.reserve(labels.size());
        for (const auto& l : labels) fs.push_back({l, 2});
        return TensorRegister(std::move(fs));
    }

    std::size_t size() const { return factors_.size(); }
    std::size_t total_dim() const { return total_dim_; }
    const std::vector<Factor>& factors() const { return factors_; }
    const Factor& factor(std::size_t i) const { return factors_[i]; }
    std::size_t stride(std::size_t i) const { return strides_[i]; }

    bool contains(const std::string& label) const {
        return std::any_of(factors_.begin(), factors_.end(),
                           [&](const Factor& f) { return f.label == label; });
    }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].label == label) return i;
        }
        throw ArgumentError("TensorRegister: unknown label '" + label + "'");
    }

    std::size_t dim_of(const std::string& label) const { return factors_[index_of(label)].dim; }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(factors_.size());
        for (const auto& f : factors_) out.push_back(f.label);
        return out;
    }

    /// Positions of the given labels, validated unique and present.
    std::vector<std::size_t> positions(const std::vector<std::string>& labels) const {
        std::vector<std::size_t> pos;
        pos.reserve(labels.size());
        std::unordered_set<std::string> seen;
        for (const auto& l : labels) {
            if (!seen.insert(l).second) throw ArgumentError("duplicate label '" + l + "'");
            pos.push_back(index_of(l));
        }
        return pos;
    }

    /// Sub-register holding the given labels, kept in register order.
    TensorRegister subset(const std::vector<std::string>& labels) const {
        auto pos = positions(labels);
        std::sort(pos.begin(), pos.end());
        std::vector<Factor> fs;
        fs.reserve(pos.size());
        for (auto p : pos) fs.push_back(factors_[p]);
        return TensorRegister(std::move(fs));
    }

    std::size_t product_dim(const std::vector<std::string>& labels) const {
        std::size_t d = 1;
        for (auto p : positions(labels)) d *= factors_[p].dim;
        return d;
    }

    /// Replaces a contiguous run of factors whose dims multiply to the same
    /// total with a new factorization. Amplitude layout is unchanged, so this
    /// is pure metadata (used to re-read a block's outputs under new labels).
    TensorRegister reshaped(const std::string& first_label, const std::string& last_label,
                            const std::vector<Factor>& replacement) const {
        const std::size_t a = index_of(first_label);
        const std::size_t b = index_of(last_label);
        if (a > b) throw ArgumentError("reshaped: labels out of order");
        std::size_t block = 1;
        for (std::size_t i = a; i <= b; ++i) block *= factors_[i].dim;
        std::size_t repl = 1;
        for (const auto& f : replacement) repl *= f.dim;
        if (block != repl) {
            throw ArgumentError("reshaped: block dim " + std::to_string(block) +
                                " != replacement dim " + std::to_string(repl));
        }
        std::vector<Factor> fs(factors_.begin(), factors_.begin() + a);
        fs.insert(fs.end(), replacement.begin(), replacement.end());
        fs.insert(fs.end(), factors_.begin() + b + 1, factors_.end());
        return TensorRegister(std::move(fs));
    }

    bool operator==(const TensorRegister& other) const {
        if (factors_.size() != other.factors_.size()) return false;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].label != other.factors_[i].label ||
                factors_[i].dim != other.factors_[i].dim) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<Factor> factors_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 0;
};

namespace detail {

/// Flat offsets addressed by the multi-index running over the given factor
/// positions (in the order given), all other digits zero.
inline std::vector<std::size_t> axis_offsets(const TensorRegister& reg,
                                             const std::vector<std::size_t>& pos) {
    std::size_t count = 1;
    for (auto p : pos) count *= reg.factor(p).dim;
    std::vector<std::size_t> offs(count, 0);
    std::size_t repeat = 1; // how many consecutive entries share the current digit
    for (std::size_t k = pos.size(); k-- > 0;) {
        const std::size_t d = reg.factor(pos[k]).dim;
        const std::size_t stride = reg.stride(pos[k]);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t digit = (i / repeat) % d;
            offs[i] += digit * stride;
        }
        repeat *= d;
    }
    return offs;
}

inline std::vector<std::size_t> complement_positions(const TensorRegister& reg,
                                                     const std::vector<std::size_t>& pos) {
    std::vector<bool> used(reg.size(), false);
    for (auto p : pos) used[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (!used[i]) rest.push_back(i);
    }
    return rest;
}

} // namespace detail
} // namespace evaplab
