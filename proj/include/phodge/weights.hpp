#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/classdata.hpp"
#include "phodge/tableaux.hpp"

namespace phodge {

// Per-embedding weight multisets, in a fixed stored order. The first stored
// weight of each embedding is the solvers' preferred representative, so order
// is preserved, never sorted.
template <class W>
class WeightSystem {
public:
    WeightSystem(std::vector<std::string> labels, std::vector<std::vector<W>> weights)
        : labels_(std::move(labels)), weights_(std::move(weights)) {
        if (labels_.empty() || labels_.size() != weights_.size())
            throw DimensionMismatch("one weight list per embedding label");
        for (const auto& ws : weights_)
            if (ws.size() != weights_.front().size() || ws.empty())
                throw DimensionMismatch("weight lists must share one nonzero cardinality");
    }

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t rank() const { return weights_.front().size(); }
    const std::vector<W>& at(std::size_t h) const { return weights_[h]; }

    WeightSystem shifted(const std::vector<W>& delta) const {
        if (delta.size() != labels_.size())
            throw DimensionMismatch("one shift per embedding");
        auto out = weights_;
        for (std::size_t h = 0; h < out.size(); ++h)
            for (auto& w : out[h]) w = w + delta[h];
        return WeightSystem(labels_, std::move(out));
    }

    friend bool operator==(const WeightSystem& a, const WeightSystem& b) {
        return a.labels_ == b.labels_ && a.weights_ == b.weights_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<W>> weights_;
};

// One weight per embedding: the weight data of a character.
template <class W>
struct CharacterWeights {
    std::vector<std::string> labels;
    std::vector<W> omega;

    friend bool operator==(const CharacterWeights& a, const CharacterWeights& b) {
        return a.labels == b.labels && a.omega == b.omega;
    }
};

// The weight system carried by a labeled classification family.
template <class W>
WeightSystem<W> weight_system_of(const ClassFamily<W>& fam) {
    std::vector<std::string> labels;
    std::vector<std::vector<W>> weights;
    for (const auto& lc : fam) {
        labels.push_back(lc.label);
        weights.push_back(lc.data.weights());
    }
    return WeightSystem<W>(std::move(labels), std::move(weights));
}

// --- twist solvers -------------------------------------------------------------

template <class W>
struct TensorWitness {
    std::string label;
    std::size_t i, j; // 0-based positions into the two stored weight lists
    W sum;
};

template <class W>
struct TensorSolve {
    std::optional<CharacterWeights<W>> mu;     // set on success
    std::optional<TensorWitness<W>> witness;   // set when no solution exists
    bool ok() const { return mu.has_value(); }
};

// Decide whether one character twist makes both systems integral at once: all
// pairwise weight sums must be integers; the returned twist weight per
// embedding is the first stored weight of the left system.
template <class W>
TensorSolve<W> tensor_twist_solve(const WeightSystem<W>& a, const WeightSystem<W>& b) {
    if (a.labels() != b.labels())
        throw ParentMismatch("weight systems live over different embeddings");
    for (std::size_t h = 0; h < a.labels().size(); ++h)
        for (std::size_t i = 0; i < a.rank(); ++i)
            for (std::size_t j = 0; j < b.rank(); ++j) {
                W sum = a.at(h)[i] + b.at(h)[j];
                if (!scalar_is_integer(sum))
                    return {std::nullopt, TensorWitness<W>{a.labels()[h], i, j, std::move(sum)}};
            }
    std::vector<W> mu;
    for (std::size_t h = 0; h < a.labels().size(); ++h) mu.push_back(a.at(h)[0]);
    return {CharacterWeights<W>{a.labels(), std::move(mu)}, std::nullopt};
}

template <class W>
struct SchurWitness {
    std::string label;
    Tableau tableau;
    W sum;
};

template <class W>
struct SchurSolve {
    std::optional<CharacterWeights<W>> mu;
    std::optional<SchurWitness<W>> witness;
    bool ok() const { return mu.has_value(); }
};

// Decide whether a character twist makes the functor image integral: every
// semistandard tableau sum must be an integer. Requires enough weights for the
// consecutive-pair chain argument, i.e. rank >= r_of(shape).
template <class W>
SchurSolve<W> schur_twist_solve(const WeightSystem<W>& a, const Partition& u) {
    const int d = static_cast<int>(a.rank());
    if (d < r_of(u))
        throw RankTooSmall("need rank at least " + std::to_string(r_of(u)) + ", got " +
                           std::to_string(d));
    const auto basis = enumerate_tableaux(u, d);
    for (std::size_t h = 0; h < a.labels().size(); ++h)
        for (const auto& t : basis) {
            const auto content = t.content_vector(d);
            W sum = scalar_zero(a.at(h)[0]);
            for (int v = 0; v < d; ++v)
                if (content[static_cast<std::size_t>(v)] != 0)
                    sum = sum + scalar_from_rational(
                                    a.at(h)[0], Rational(content[static_cast<std::size_t>(v)])) *
                                    a.at(h)[static_cast<std::size_t>(v)];
            if (!scalar_is_integer(sum))
                return {std::nullopt, SchurWitness<W>{a.labels()[h], t, std::move(sum)}};
        }
    std::vector<W> mu;
    for (std::size_t h = 0; h < a.labels().size(); ++h) mu.push_back(a.at(h)[0]);
    return {CharacterWeights<W>{a.labels(), std::move(mu)}, std::nullopt};
}

// --- character-weight construction ----------------------------------------------

template <class W>
struct CharwtsEntry {
    long n = 0;     // minimal exponent with p^n * omega integral at p
    W omega_prime;  // p^n * omega
};

template <class W>
struct CharwtsReport {
    CharacterWeights<W> mu;
    std::vector<CharwtsEntry<W>> entries; // parallel to mu.labels
};

// Validate target character weights and record, per embedding, the minimal
// decomposition omega = p^{-n} * omega' with omega' integral at p (coordinates
// with denominator prime to p count as integral).
template <class W>
CharwtsReport<W> charwts_construct(const CharacterWeights<W>& targets, const Int& p) {
    if (p < 2) throw HypothesisNotMet("modulus parameter must be at least 2");
    if (targets.labels.empty() || targets.labels.size() != targets.omega.size())
        throw DimensionMismatch("exactly one weight per embedding label");
    CharwtsReport<W> rep{targets, {}};
    for (const auto& w : targets.omega) {
        long n = 0;
        for (const auto& coord : scalar_flatten(w))
            n = std::max(n, denominator_exponent(coord, p));
        Rational scale = pow_rational(Rational(p), n);
        rep.entries.push_back(CharwtsEntry<W>{n, scalar_from_rational(w, scale) * w});
    }
    return rep;
}

// Per-embedding slices of a weight system.
template <class W>
std::vector<WeightSystem<W>> split_components(const WeightSystem<W>& ws) {
    std::vector<WeightSystem<W>> out;
    for (std::size_t h = 0; h < ws.labels().size(); ++h)
        out.push_back(WeightSystem<W>({ws.labels()[h]}, {ws.at(h)}));
    return out;
}

} // namespace phodge
