#pragma once

// Local-coordinate model on C^n with polynomial coefficients: forms
// p(z, zbar) dz_K ^ dzbar_I, vector-valued (0, q)-forms f dzbar_I d/dz_i,
// symbolic del and delbar, the contraction hat, and the suspended data
// (d, Q) in coordinates. Everything is exact; the degree bound D only caps
// the generator sets enumerated for checks, never intermediate results.

#include "linftylab/exterior.hpp"

#include <functional>
#include <vector>

namespace linftylab::polymodel {

using Mono = std::vector<int>; // z exponents then zbar exponents, length 2n

using Poly = std::map<Mono, Scalar>;

inline void poly_add(Poly& p, const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono m = ma;
            for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
            poly_add(out, m, ca * cb);
        }
    return out;
}

// d/dz_i for slot < n, d/dzbar_{i-n} for slot >= n
inline Poly poly_derivative(const Poly& p, std::size_t slot) {
    Poly out;
    for (const auto& [m, c] : p) {
        if (m[slot] == 0) continue;
        Mono d = m;
        d[slot] -= 1;
        poly_add(out, d, Scalar(static_cast<long long>(m[slot])) * c);
    }
    return out;
}

struct FormKey {
    Mono mono;
    std::uint32_t dz = 0;
    std::uint32_t dzbar = 0;
    auto operator<=>(const FormKey&) const = default;
};

using Form = std::map<FormKey, Scalar>;

struct VKey {
    Mono mono;
    std::uint32_t dzbar = 0;
    int dir = 0; // the i of d/dz_i
    auto operator<=>(const VKey&) const = default;
};

using VField = std::map<VKey, Scalar>;

inline void form_add(Form& f, const FormKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = f.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) f.erase(it);
    }
}

inline void vfield_add(VField& f, const VKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = f.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) f.erase(it);
    }
}

inline int form_total_degree(const FormKey& k) {
    return __builtin_popcount(k.dz) + __builtin_popcount(k.dzbar);
}

// deg(a, L) for a term f dzbar_I d/dz_i is |I| - 1
inline int vkey_degree(const VKey& k) { return __builtin_popcount(k.dzbar) - 1; }

// wedge product with the canonical order "all dz first, then all dzbar"
inline Form form_mul(const Form& a, const Form& b) {
    Form out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            auto dz = merge_masks(ka.dz, kb.dz);
            auto dzbar = merge_masks(ka.dzbar, kb.dzbar);
            if (!dz || !dzbar) continue;
            // move kb.dz left across ka.dzbar
            long long cross = static_cast<long long>(__builtin_popcount(ka.dzbar)) * __builtin_popcount(kb.dz);
            Scalar sign = sign_pow(cross) * Scalar(dz->second * dzbar->second);
            Mono m = ka.mono;
            for (std::size_t s = 0; s < m.size(); ++s) m[s] += kb.mono[s];
            form_add(out, FormKey{std::move(m), dz->first, dzbar->first}, sign * ca * cb);
        }
    return out;
}

struct Model {
    int n = 1;

    Mono zero_mono() const { return Mono(static_cast<std::size_t>(2 * n), 0); }

    Form del(const Form& f) const {
        Form out;
        for (const auto& [k, c] : f)
            for (int i = 0; i < n; ++i) {
                if (k.dz & (1u << i)) continue;
                Poly dp = poly_derivative(Poly{{k.mono, c}}, static_cast<std::size_t>(i));
                if (dp.empty()) continue;
                auto merged = merge_masks(1u << i, k.dz); // dz_i in front
                for (const auto& [m, cc] : dp)
                    form_add(out, FormKey{m, merged->first, k.dzbar}, Scalar(merged->second) * cc);
            }
        return out;
    }

    Form delbar(const Form& f) const {
        Form out;
        for (const auto& [k, c] : f)
            for (int i = 0; i < n; ++i) {
                if (k.dzbar & (1u << i)) continue;
                Poly dp = poly_derivative(Poly{{k.mono, c}}, static_cast<std::size_t>(n + i));
                if (dp.empty()) continue;
                auto merged = merge_masks(1u << i, k.dzbar);
                long long cross = __builtin_popcount(k.dz); // dzbar_i passes the dz block
                for (const auto& [m, cc] : dp)
                    form_add(out, FormKey{m, k.dz, merged->first}, sign_pow(cross) * Scalar(merged->second) * cc);
            }
        return out;
    }

    // d/dz_dir -| form, the alternating contraction on the dz block
    Form contract(int dir, const Form& f) const {
        Form out;
        for (const auto& [k, c] : f) {
            if (!(k.dz & (1u << dir))) continue;
            int pos = __builtin_popcount(k.dz & ((1u << dir) - 1));
            form_add(out, FormKey{k.mono, k.dz & ~(1u << dir), k.dzbar}, sign_pow(pos) * c);
        }
        return out;
    }

    // a^ (eta) = (f dzbar_I) ^ (d/dz_i -| eta), extended over the terms of a
    Form hat(const VField& a, const Form& eta) const {
        Form out;
        for (const auto& [ka, ca] : a) {
            Form contracted = contract(ka.dir, eta);
            if (contracted.empty()) continue;
            Form phi{{FormKey{ka.mono, 0, ka.dzbar}, ca}};
            for (const auto& [k, c] : form_mul(phi, contracted)) form_add(out, k, c);
        }
        return out;
    }

    // d(phi d/dz_i) = (delbar phi) d/dz_i
    VField d_susp(const VField& a) const {
        VField out;
        for (const auto& [k, c] : a) {
            Form phi{{FormKey{k.mono, 0, k.dzbar}, c}};
            for (const auto& [fk, fc] : delbar(phi)) vfield_add(out, VKey{fk.mono, fk.dzbar, k.dir}, fc);
        }
        return out;
    }

    // Q(a (.) b) in coordinates, for a = f dzbar_I d/dz_i, b = g dzbar_J d/dz_j:
    //   (-1)^{deg(a, L)} dzbar_I ^ dzbar_J (f dg/dz_i d/dz_j - g df/dz_j d/dz_i)
    VField q_susp(const VField& a, const VField& b) const {
        VField out;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                auto wedge = merge_masks(ka.dzbar, kb.dzbar);
                if (!wedge) continue;
                Scalar outer = sign_pow(vkey_degree(ka)) * Scalar(wedge->second) * ca * cb;
                Poly dg = poly_derivative(Poly{{kb.mono, Scalar(1)}}, static_cast<std::size_t>(ka.dir));
                for (const auto& [m, c] : poly_mul(Poly{{ka.mono, Scalar(1)}}, dg))
                    vfield_add(out, VKey{m, wedge->first, kb.dir}, outer * c);
                Poly df = poly_derivative(Poly{{ka.mono, Scalar(1)}}, static_cast<std::size_t>(kb.dir));
                for (const auto& [m, c] : poly_mul(Poly{{kb.mono, Scalar(1)}}, df))
                    vfield_add(out, VKey{m, wedge->first, ka.dir}, -outer * c);
            }
        return out;
    }

    // generator sets for exhaustive checks
    std::vector<Mono> monomials_up_to(int degree) const {
        std::vector<Mono> out{zero_mono()};
        for (int d = 1; d <= degree; ++d) {
            std::vector<Mono> next;
            std::function<void(Mono&, std::size_t, int)> rec = [&](Mono& m, std::size_t slot, int left) {
                if (slot + 1 == m.size()) {
                    m[slot] = left;
                    next.push_back(m);
                    m[slot] = 0;
                    return;
                }
                for (int take = 0; take <= left; ++take) {
                    m[slot] = take;
                    rec(m, slot + 1, left - take);
                }
                m[slot] = 0;
            };
            Mono m = zero_mono();
            rec(m, 0, d);
            out.insert(out.end(), next.begin(), next.end());
        }
        return out;
    }

    std::vector<VField> generators(int degree_bound) const {
        std::vector<VField> out;
        for (const Mono& m : monomials_up_to(degree_bound))
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
                for (int dir = 0; dir < n; ++dir) out.push_back(VField{{VKey{m, mask, dir}, Scalar(1)}});
        return out;
    }

    // dz_j, dzbar_j, and low-degree monomials: the generating set on which
    // derivations of the form algebra are determined
    std::vector<Form> derivation_generators(int monomial_degree = 1) const {
        std::vector<Form> out;
        for (int j = 0; j < n; ++j) out.push_back(Form{{FormKey{zero_mono(), 1u << j, 0}, Scalar(1)}});
        for (int j = 0; j < n; ++j) out.push_back(Form{{FormKey{zero_mono(), 0, 1u << j}, Scalar(1)}});
        for (const Mono& m : monomials_up_to(monomial_degree)) out.push_back(Form{{FormKey{m, 0, 0}, Scalar(1)}});
        return out;
    }

    // every monomial-coefficient basis form with small polynomial degree
    std::vector<Form> test_forms(int monomial_degree) const {
        std::vector<Form> out;
        for (const Mono& m : monomials_up_to(monomial_degree))
            for (std::uint32_t dz = 0; dz < (1u << n); ++dz)
                for (std::uint32_t dzbar = 0; dzbar < (1u << n); ++dzbar)
                    out.push_back(Form{{FormKey{m, dz, dzbar}, Scalar(1)}});
        return out;
    }
};

inline Model build_polynomial_model(int n) { return Model{n}; }

// Operator expressions on forms, for the commutator identities.
using FormOp = std::function<Form(const Form&)>;

inline Form apply_chain(const std::vector<FormOp>& ops, Form x) {
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) x = (*it)(x);
    return x;
}

} // namespace linftylab::polymodel
