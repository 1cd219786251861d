#pragma once

// Canonical symmetric words over a graded space: factors sorted in basis
// order, with the Koszul sign of the sorting folded into `sign`. A repeated
// factor of odd degree makes the word zero (sign 0).

#include "linftylab/graded_space.hpp"

#include <algorithm>
#include <vector>

namespace linftylab {

using Word = std::vector<int>; // basis indices, canonical when sorted ascending

struct SymWord {
    Word factors;
    int sign = 1; // +1, -1, or 0 for the zero word

    bool is_zero() const { return sign == 0; }
    int length() const { return static_cast<int>(factors.size()); }
};

inline SymWord normalize_word(const GradedSpace& space, Word factors) {
    SymWord w;
    int sign = 1;
    // insertion sort, tracking the Koszul sign of each adjacent swap
    for (std::size_t k = 1; k < factors.size(); ++k) {
        for (std::size_t j = k; j > 0 && factors[j] < factors[j - 1]; --j) {
            int da = space.degree(factors[j - 1]);
            int db = space.degree(factors[j]);
            if ((da % 2 != 0) && (db % 2 != 0)) sign = -sign;
            std::swap(factors[j], factors[j - 1]);
        }
    }
    for (std::size_t k = 1; k < factors.size(); ++k)
        if (factors[k] == factors[k - 1] && space.degree(factors[k]) % 2 != 0) sign = 0;
    w.factors = std::move(factors);
    w.sign = sign;
    return w;
}

inline int word_degree(const GradedSpace& space, const Word& w) {
    int d = 0;
    for (int k : w) d += space.degree(k);
    return d;
}

inline std::vector<int> word_degree_vector(const GradedSpace& space, const Word& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int k : w) out.push_back(space.degree(k));
    return out;
}

// All canonical nonzero words of length 1..maxlen, ordered by (length, lex).
inline std::vector<Word> enumerate_words(const GradedSpace& space, int maxlen) {
    std::vector<Word> out;
    std::vector<Word> layer;
    for (int k = 0; k < space.dim(); ++k) layer.push_back({k});
    for (int len = 1; len <= maxlen; ++len) {
        for (const auto& w : layer) out.push_back(w);
        if (len == maxlen) break;
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int k = w.back(); k < space.dim(); ++k) {
                if (k == w.back() && space.degree(k) % 2 != 0) continue; // odd square is zero
                Word e = w;
                e.push_back(k);
                next.push_back(std::move(e));
            }
        layer = std::move(next);
    }
    return out;
}

} // namespace linftylab
