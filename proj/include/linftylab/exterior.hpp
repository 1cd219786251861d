#pragma once

// Generic exterior-algebra words over an indexed generator set, and the
// alternating contraction against a linear functional.

#include "linftylab/scalar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace linftylab {

// Sorts a wedge word of generator indices; returns the permutation sign, or
// nullopt when a generator repeats (the word is zero).
inline std::optional<std::pair<std::vector<int>, int>> normalize_wedge(std::vector<int> word) {
    int sign = 1;
    for (std::size_t k = 1; k < word.size(); ++k)
        for (std::size_t j = k; j > 0 && word[j] < word[j - 1]; --j) {
            std::swap(word[j], word[j - 1]);
            sign = -sign;
        }
    for (std::size_t k = 1; k < word.size(); ++k)
        if (word[k] == word[k - 1]) return std::nullopt;
    return std::make_pair(std::move(word), sign);
}

using WedgeCombination = std::map<std::vector<int>, Scalar>;

inline void wedge_add(WedgeCombination& acc, const std::vector<int>& word, const Scalar& c) {
    if (c.is_zero()) return;
    auto norm = normalize_wedge(word);
    if (!norm) return;
    Scalar value = Scalar(norm->second) * c;
    auto [it, fresh] = acc.emplace(norm->first, value);
    if (!fresh) {
        it->second += value;
        if (it->second.is_zero()) acc.erase(it);
    }
}

// alpha -| (v_1 ^ ... ^ v_k) = sum_i (-1)^{i-1} alpha(v_i) v_1 ^ ... v_i^ ... ^ v_k
inline WedgeCombination contraction(const std::map<int, Scalar>& alpha, const std::vector<int>& word) {
    WedgeCombination out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto it = alpha.find(word[i]);
        if (it == alpha.end() || it->second.is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(word.size() - 1);
        for (std::size_t j = 0; j < word.size(); ++j)
            if (j != i) rest.push_back(word[j]);
        wedge_add(out, rest, sign_pow(static_cast<long long>(i)) * it->second);
    }
    return out;
}

inline WedgeCombination wedge_product(const WedgeCombination& a, const WedgeCombination& b) {
    WedgeCombination out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            std::vector<int> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            wedge_add(out, w, ca * cb);
        }
    return out;
}

// Bit-mask form of the same bookkeeping, used by the polynomial model.
// Merges two strictly increasing index sets; the sign counts the inversions
// of the concatenation [a, b]. Bit i stands for generator i.
inline std::optional<std::pair<std::uint32_t, int>> merge_masks(std::uint32_t a, std::uint32_t b) {
    if ((a & b) != 0) return std::nullopt;
    int inversions = 0;
    for (std::uint32_t bit = b; bit != 0; bit &= bit - 1) {
        std::uint32_t lowest = bit & ~(bit - 1);
        // generators of a strictly above this element of b must jump over it
        std::uint32_t above = a & ~((lowest << 1) - 1);
        inversions += __builtin_popcount(above);
    }
    return std::make_pair(a | b, inversions % 2 == 0 ? 1 : -1);
}

} // namespace linftylab
