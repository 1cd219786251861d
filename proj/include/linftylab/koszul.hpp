#pragma once

// Unshuffles and Koszul signs. Permutations are stored as value sequences:
// sigma[k] is the (0-based) original position placed at slot k, so the word
// a_{sigma[0]} (.) ... (.) a_{sigma[m-1]} equals sign * a_0 (.) ... (.) a_{m-1}.

#include "linftylab/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace linftylab {

struct Unshuffle {
    int m = 0;
    int p = 0;
    std::vector<int> sigma;
};

// All unshuffles of type (p, q): sigma increasing on the first p slots and on
// the last q slots. Lexicographic in the leading block. Empty when p or q < 0.
inline std::vector<Unshuffle> unshuffles(int p, int q) {
    std::vector<Unshuffle> out;
    if (p < 0 || q < 0) return out;
    const int m = p + q;
    std::vector<int> pick(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) pick[static_cast<std::size_t>(k)] = k;
    while (true) {
        Unshuffle u;
        u.m = m;
        u.p = p;
        u.sigma.reserve(static_cast<std::size_t>(m));
        std::vector<bool> used(static_cast<std::size_t>(m), false);
        for (int v : pick) {
            u.sigma.push_back(v);
            used[static_cast<std::size_t>(v)] = true;
        }
        for (int v = 0; v < m; ++v)
            if (!used[static_cast<std::size_t>(v)]) u.sigma.push_back(v);
        out.push_back(std::move(u));
        // next p-subset in lexicographic order
        int k = p - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == m - p + k) --k;
        if (k < 0) break;
        ++pick[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < p; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// Koszul sign of sigma on homogeneous letters with the given degrees:
// product of (-1)^{deg_i * deg_j} over the inversions of sigma.
inline int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& sigma) {
    if (degrees.size() != sigma.size()) throw std::invalid_argument("koszul_sign: length mismatch");
    long long parity = 0;
    for (std::size_t a = 0; a < sigma.size(); ++a)
        for (std::size_t b = a + 1; b < sigma.size(); ++b)
            if (sigma[a] > sigma[b])
                parity += static_cast<long long>(degrees[static_cast<std::size_t>(sigma[a])]) *
                          static_cast<long long>(degrees[static_cast<std::size_t>(sigma[b])]);
    return (parity % 2 == 0) ? 1 : -1;
}

inline std::vector<int> identity_permutation(int m) {
    std::vector<int> s(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) s[static_cast<std::size_t>(k)] = k;
    return s;
}

// (sigma then pi) as functions on slots: result[k] = sigma[pi[k]].
inline std::vector<int> compose_permutations(const std::vector<int>& sigma, const std::vector<int>& pi) {
    std::vector<int> r(pi.size());
    for (std::size_t k = 0; k < pi.size(); ++k) r[k] = sigma[static_cast<std::size_t>(pi[k])];
    return r;
}

} // namespace linftylab
