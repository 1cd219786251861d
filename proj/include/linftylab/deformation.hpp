#pragma once

// Maurer-Cartan calculus over nilpotent coefficient rings: residuals, the
// gauge action, obstruction records along small extensions, the curvilinear
// tower, the pushforward along a word family into an abelian target, and the
// annihilation check for the induced cohomology map.

#include "linftylab/artin.hpp"
#include "linftylab/cohomology.hpp"
#include "linftylab/dgla.hpp"

namespace linftylab {

// Elements of K (x) m_A: sparse coefficients keyed by (K basis, A monomial).
using TensorElement = std::map<std::pair<int, int>, Scalar>;

inline TensorElement tensor_cleaned(TensorElement x) {
    for (auto it = x.begin(); it != x.end();)
        it = it->second.is_zero() ? x.erase(it) : std::next(it);
    return x;
}

inline TensorElement tensor_add(const TensorElement& x, const TensorElement& y) {
    TensorElement r = x;
    for (const auto& [k, c] : y) {
        auto [it, fresh] = r.emplace(k, c);
        if (!fresh) it->second += c;
    }
    return tensor_cleaned(std::move(r));
}

inline TensorElement tensor_scale(const Scalar& c, const TensorElement& x) {
    TensorElement r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : x) r.emplace(k, c * v);
    return r;
}

// restriction to the component of K-degree d
inline TensorElement tensor_component(const Dgla& g, const TensorElement& x, int d) {
    TensorElement r;
    for (const auto& [k, c] : x)
        if (g.space().degree(k.first) == d) r.emplace(k, c);
    return r;
}

inline TensorElement tensor_d(const Dgla& g, const TensorElement& x) {
    TensorElement r;
    for (const auto& [key, c] : x)
        for (const auto& [t, dc] : g.d().column(key.first)) {
            auto [it, fresh] = r.emplace(std::make_pair(t, key.second), dc * c);
            if (!fresh) it->second += dc * c;
        }
    return tensor_cleaned(std::move(r));
}

// [a (x) mu, b (x) nu] = [a, b] (x) mu nu; monomial products may die
inline TensorElement tensor_bracket(const Dgla& g, const ArtinAlgebra& ring, const TensorElement& x,
                                    const TensorElement& y) {
    TensorElement r;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            int mono = ring.multiply(kx.second, ky.second);
            if (mono < 0) continue;
            for (const auto& [t, bc] : g.bracket_basis(kx.first, ky.first)) {
                auto [it, fresh] = r.emplace(std::make_pair(t, mono), bc * cx * cy);
                if (!fresh) it->second += bc * cx * cy;
            }
        }
    return tensor_cleaned(std::move(r));
}

struct MCElement {
    const Dgla* dgla = nullptr;
    const ArtinAlgebra* ring = nullptr;
    TensorElement coeffs; // in K^1 (x) m_A
};

// d a + (1/2)[a, a], exactly; zero iff a is Maurer-Cartan
inline TensorElement mc_residual(const MCElement& a) {
    TensorElement r = tensor_d(*a.dgla, a.coeffs);
    return tensor_add(r, tensor_scale(Scalar::fraction(1, 2), tensor_bracket(*a.dgla, *a.ring, a.coeffs, a.coeffs)));
}

inline bool is_mc(const MCElement& a) { return mc_residual(a).empty(); }

// exp(x) . a = a + sum_{n >= 0} ad_x^n([x, a] - d x) / (n + 1)!
inline MCElement gauge_act(const TensorElement& x, const MCElement& a) {
    MCElement out{a.dgla, a.ring, a.coeffs};
    TensorElement u = tensor_add(tensor_bracket(*a.dgla, *a.ring, x, a.coeffs),
                                 tensor_scale(Scalar(-1), tensor_d(*a.dgla, x)));
    Scalar factorial(1);
    long long n = 1;
    while (!u.empty()) {
        factorial *= Scalar(n);
        out.coeffs = tensor_add(out.coeffs, tensor_scale(Scalar(1) / factorial, u));
        u = tensor_bracket(*a.dgla, *a.ring, x, u);
        ++n;
        if (n > 64) throw std::logic_error("gauge_act: nilpotency bound exceeded");
    }
    return out;
}

// Baker-Campbell-Hausdorff through fourth bracket order; exact for
// coefficient rings with m_A^5 = 0.
inline TensorElement bch(const Dgla& g, const ArtinAlgebra& ring, const TensorElement& x, const TensorElement& y) {
    if (ring.nilpotency_order() > 5) throw std::invalid_argument("bch: implemented through order 4 only");
    auto br = [&](const TensorElement& u, const TensorElement& v) { return tensor_bracket(g, ring, u, v); };
    TensorElement out = tensor_add(x, y);
    TensorElement xy = br(x, y);
    out = tensor_add(out, tensor_scale(Scalar::fraction(1, 2), xy));
    out = tensor_add(out, tensor_scale(Scalar::fraction(1, 12), br(x, xy)));
    out = tensor_add(out, tensor_scale(Scalar::fraction(-1, 12), br(y, xy)));
    out = tensor_add(out, tensor_scale(Scalar::fraction(-1, 24), br(y, br(x, xy))));
    return out;
}

struct ObstructionRecord {
    SmallExtension extension;
    MCElement input;           // over B
    TensorElement lift;        // in K^1 (x) m_A, canonical monomial section
    TensorElement cocycle;     // the residual, supported in K^2 (x) J
    std::map<int, SpaceVector> class_by_j; // J index -> H^2 coordinates

    bool is_zero_class() const {
        for (const auto& [j, v] : class_by_j)
            if (!v.empty()) return false;
        return true;
    }
};

// Lift b along the canonical monomial section, take the residual, check it is
// a J-supported cocycle, and project to H^2 (x) J.
inline ObstructionRecord obstruction(const SmallExtension& e, const MCElement& b, const Cohomology& h2) {
    if (!is_mc(b)) throw std::invalid_argument("obstruction: input is not Maurer-Cartan over B");
    ObstructionRecord rec{e, b, {}, {}, {}};
    for (const auto& [key, c] : b.coeffs) {
        int mono = e.a.index_of(e.b.basis()[static_cast<std::size_t>(key.second)]);
        rec.lift.emplace(std::make_pair(key.first, mono), c);
    }
    MCElement lifted{b.dgla, &e.a, rec.lift};
    rec.cocycle = mc_residual(lifted);
    // support must lie in K^2 (x) J
    for (const auto& [key, c] : rec.cocycle) {
        (void)c;
        if (b.dgla->space().degree(key.first) != 2)
            throw std::logic_error("obstruction: residual outside K^2");
        if (std::find(e.j.begin(), e.j.end(), key.second) == e.j.end())
            throw std::logic_error("obstruction: residual not supported on the kernel");
    }
    // d-closed
    if (!tensor_d(*b.dgla, rec.cocycle).empty()) throw std::logic_error("obstruction: residual is not a cocycle");
    for (int j : e.j) {
        SpaceVector component;
        for (const auto& [key, c] : rec.cocycle)
            if (key.second == j) component[key.first] = c;
        rec.class_by_j[j] = cleaned(h2.proj.apply(component));
    }
    return rec;
}

// q_2(b) for a degree-1 class b: the obstruction of t * rep(b) along
// C[t]/(t^3) -> C[t]/(t^2).
inline SpaceVector primary_obstruction(const Dgla& k, const SpaceVector& h1_class, const Cohomology& h) {
    SmallExtension eps = epsilon_extension();
    SpaceVector rep;
    for (const auto& [idx, c] : h1_class)
        rep = add(rep, scale(c, h.rep.column(idx)));
    MCElement b{&k, &eps.b, {}};
    for (const auto& [idx, c] : rep) b.coeffs[{idx, 0}] = c; // monomial t
    ObstructionRecord rec = obstruction(eps, b, h);
    return rec.class_by_j.at(eps.j.front());
}

struct CurvilinearStep {
    int order = 0;            // the n of C[t]/(t^{n+1}) -> C[t]/(t^n)
    SpaceVector class_coords; // obstruction class in H^2
    bool lifted = false;      // a correction was found and the walk continued
};

struct CurvilinearWalk {
    std::vector<CurvilinearStep> steps;
    TensorElement final_coeffs; // MC element over C[t]/(t^{final_order})
    int final_order = 2;
};

// Order-by-order walk up the curvilinear tower starting from t * rep(b).
// While the obstruction class vanishes, the exact linear system
// d(correction) = -residual_n picks the echelon particular solution and the
// walk continues; the first nonzero class stops it.
inline CurvilinearWalk curvilinear_obstructions(const Dgla& k, const SpaceVector& h1_class, const Cohomology& h,
                                                int n_max) {
    CurvilinearWalk out;
    ArtinAlgebra ring_current = make_truncated_line(2);
    SpaceVector rep;
    for (const auto& [idx, c] : h1_class)
        rep = add(rep, scale(c, h.rep.column(idx)));
    MCElement current{&k, &ring_current, {}};
    for (const auto& [idx, c] : rep) current.coeffs[{idx, 0}] = c;
    if (!is_mc(current)) throw std::invalid_argument("curvilinear_obstructions: seed is not MC over dual numbers");

    for (int n = 2; n <= n_max; ++n) {
        SmallExtension ext = curvilinear_extension(n);
        ObstructionRecord rec = obstruction(ext, current, h);
        CurvilinearStep step{n, rec.class_by_j.at(ext.j.front()), false};
        if (!step.class_coords.empty()) {
            out.steps.push_back(std::move(step));
            break;
        }
        // solve d(correction) = -residual coefficient at t^n
        const GradedSpace& v = k.space();
        VecQ rhs = VecQ::Constant(v.dim(), Scalar(0));
        for (const auto& [key, c] : rec.cocycle) rhs(key.first) = -c;
        auto corr = solve(k.d().to_matrix(), rhs);
        if (!corr) throw std::logic_error("curvilinear_obstructions: zero class but unsolvable correction");
        TensorElement next = rec.lift;
        for (int idx = 0; idx < v.dim(); ++idx)
            if (!(*corr)(idx).is_zero() && v.degree(idx) == 1) next[{idx, n - 1}] = (*corr)(idx);
        ring_current = make_truncated_line(n + 1);
        current.coeffs = tensor_cleaned(std::move(next));
        if (!is_mc(current)) throw std::logic_error("curvilinear_obstructions: corrected lift is not MC");
        step.lifted = true;
        out.steps.push_back(std::move(step));
    }
    out.final_coeffs = current.coeffs;
    out.final_order = ring_current.truncation();
    return out;
}

// Pushforward along a word family with abelian target:
//   push(a) = sum_m (1/m!) F_m(a^{(.)m}),
// finite because every monomial has positive degree.
inline std::map<int, std::map<int, Scalar>> pushforward(const WordFamily& family, const MCElement& a) {
    // power words over the family source, with ring coefficients:
    // word -> monomial -> scalar
    std::map<Word, std::map<int, Scalar>> power;
    for (const auto& [key, c] : a.coeffs) power[{key.first}][key.second] = c;
    std::map<int, std::map<int, Scalar>> result; // target index -> monomial -> scalar
    Scalar factorial(1);
    auto accumulate = [&](const std::map<Word, std::map<int, Scalar>>& p, const Scalar& inv) {
        for (const auto& [word, monos] : p) {
            SpaceVector value = family.evaluate_word(word);
            for (const auto& [t, tv] : value)
                for (const auto& [mono, mv] : monos) {
                    Scalar add_val = inv * tv * mv;
                    auto& slot = result[t][mono];
                    slot += add_val;
                }
        }
    };
    int m = 1;
    accumulate(power, Scalar(1));
    while (true) {
        // multiply by a once more; letters live in K^1, even in L, so the
        // sorted key carries no sign
        std::map<Word, std::map<int, Scalar>> next;
        for (const auto& [word, monos] : power)
            for (const auto& [key, c] : a.coeffs) {
                Word extended = word;
                extended.push_back(key.first);
                std::sort(extended.begin(), extended.end());
                for (const auto& [mono, mv] : monos) {
                    int prod = a.ring->multiply(mono, key.second);
                    if (prod < 0) continue;
                    next[extended][prod] += mv * c;
                }
            }
        // drop zero entries so nilpotency terminates the loop
        for (auto it = next.begin(); it != next.end();) {
            for (auto jt = it->second.begin(); jt != it->second.end();)
                jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
            it = it->second.empty() ? next.erase(it) : std::next(it);
        }
        if (next.empty()) break;
        ++m;
        factorial *= Scalar(m);
        accumulate(next, Scalar(1) / factorial);
        power = std::move(next);
        if (m > 64) throw std::logic_error("pushforward: nilpotency bound exceeded");
    }
    // clean zeros
    for (auto it = result.begin(); it != result.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? result.erase(it) : std::next(it);
    }
    return result;
}

// Proposition-style annihilation: apply the degree-preserving linear term
// mu11 (as a map K -> M, with F o delta = 0 upstream) to every obstruction
// cocycle; the result must vanish identically in M (x) J.
struct AnnihilationCase {
    std::string label;
    bool pass = true;
    std::string witness;
};

inline std::vector<AnnihilationCase> check_annihilation(const std::vector<ObstructionRecord>& records,
                                                        const GradedLinearMap& mu11_on_k) {
    std::vector<AnnihilationCase> out;
    for (const auto& rec : records) {
        AnnihilationCase c{rec.extension.label, true, ""};
        for (const auto& [key, coeff] : rec.cocycle) {
            SpaceVector image = mu11_on_k.apply(SpaceVector{{key.first, coeff}});
            if (!cleaned(image).empty()) {
                c.pass = false;
                c.witness = "monomial " + rec.extension.a.monomial_name(key.second);
                break;
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

// H^1(K) together with the checks that identify it with first-order
// deformations: every class gives an MC element over the dual numbers, and
// two seeds are gauge equivalent exactly when their classes agree.
inline Cohomology tangent_space(const Dgla& k) { return cohomology(k.space(), k.d()); }

} // namespace linftylab
