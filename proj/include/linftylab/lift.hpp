#pragma once

// The constructive lift of a hat assignment to a word family with values in
// the endomorphisms of the harmonic space:
//
//   F_1(a)                 = h a^ i
//   f_m(a_1 (x) ... (x) a_m) = h a_1^ tau a_2^ tau ... tau a_m^ i
//   F_m(word)              = sum over all permutations with Koszul signs in L
//
// together with the bridge operators q(a (x) b) = (-1)^{deg a} a^ del b^ and
// the alternating sums g_m used by the symmetrization identities, the
// closure check F o delta = 0, the induced map on cohomology, and the
// evaluation of the family at a fixed harmonic element.

#include "linftylab/cohomology.hpp"
#include "linftylab/dgla.hpp"
#include "linftylab/hat.hpp"

#include <algorithm>

namespace linftylab {

// Hom*(H, H) as a graded space with matrix-unit basis. The element E(s -> t)
// sends basis vector s to t and has degree deg t - deg s.
inline GradedSpace hom_space(const GradedSpace& h) {
    std::vector<BasisElement> basis;
    for (int s = 0; s < h.dim(); ++s)
        for (int t = 0; t < h.dim(); ++t) {
            BasisElement e;
            e.name = "hom(" + h.name(s) + "->" + h.name(t) + ")";
            e.degree = h.degree(t) - h.degree(s);
            const auto& bs = h.bidegree(s);
            const auto& bt = h.bidegree(t);
            if (bs && bt) e.bidegree = std::array<int, 2>{bt->at(0) - bs->at(0), bt->at(1) - bs->at(1)};
            basis.push_back(std::move(e));
        }
    return GradedSpace(std::move(basis));
}

inline SpaceVector flatten_hom(const GradedSpace& h, const MatQ& m) {
    SpaceVector out;
    for (int s = 0; s < h.dim(); ++s)
        for (int t = 0; t < h.dim(); ++t)
            if (!m(t, s).is_zero()) out[s * h.dim() + t] = m(t, s);
    return out;
}

inline MatQ unflatten_hom(const GradedSpace& h, const SpaceVector& v) {
    MatQ m = zeros(h.dim(), h.dim());
    for (const auto& [k, c] : v) m(k % h.dim(), k / h.dim()) = c;
    return m;
}

// Chains of hats joined by tau, evaluated right to left with a suffix cache:
// suffix(a_k .. a_m) = a_k^ tau suffix(a_{k+1} .. a_m), suffix(a_m) = a_m^ i.
// The caches make evaluation single-writer; share across threads only after
// a sequential warm-up, or give each worker its own family.
class TaylorFamily {
public:
    TaylorFamily(OperatorPackage pkg, HatAssignment hat, int cutoff)
        : pkg_(std::move(pkg)), hat_(std::move(hat)), cutoff_(cutoff), hom_(hom_space(pkg_.harmonics)) {
        include_mat_ = pkg_.include.to_matrix();
        project_mat_ = pkg_.project.to_matrix();
        tau_mat_ = pkg_.tau.to_matrix();
        del_mat_ = pkg_.del.to_matrix();
        for (const auto& h : hat_.hats) hat_mats_.push_back(h.to_matrix());
    }

    const GradedSpace& word_space() const { return hat_.l; }
    const GradedSpace& target() const { return hom_; }
    int cutoff() const { return cutoff_; }
    const OperatorPackage& package() const { return pkg_; }
    const HatAssignment& hat_assignment() const { return hat_; }

    // F_1(a) = h a^ i as a matrix on harmonics
    MatQ linear_term(int a) const { return project_mat_ * hat_mats_[static_cast<std::size_t>(a)] * include_mat_; }

    // f_m along an explicit tensor sequence
    MatQ chain_term(const std::vector<int>& seq) const { return project_mat_ * suffix(seq, 0); }

    // F_m on a canonical word: full symmetrization with Koszul signs in L
    MatQ symmetrized_term(const Word& word) const {
        auto it = term_cache_.find(word);
        if (it != term_cache_.end()) return it->second;
        const int m = static_cast<int>(word.size());
        std::vector<int> degs = word_degree_vector(hat_.l, word);
        std::vector<int> sigma = identity_permutation(m);
        MatQ acc = zeros(pkg_.harmonics.dim(), pkg_.harmonics.dim());
        do {
            std::vector<int> seq(static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k) seq[static_cast<std::size_t>(k)] = word[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
            acc += chain_term(seq) * Scalar(koszul_sign(degs, sigma));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return term_cache_.emplace(word, std::move(acc)).first->second;
    }

    // q(a (x) b) = (-1)^{deg(a, L)} a^ del b^, an endomorphism of the algebra
    MatQ bridge_op(int a, int b) const {
        MatQ raw = hat_mats_[static_cast<std::size_t>(a)] * del_mat_ * hat_mats_[static_cast<std::size_t>(b)];
        return MatQ(raw * sign_pow(hat_.l.degree(a)));
    }

    // g_m(a_1 (x) ... (x) a_m) =
    //   - sum_i (-1)^{deg a_1 + .. + deg a_i} h a_1^ tau .. a_i^ tau
    //       q(a_{i+1} (x) a_{i+2}) tau a_{i+3}^ .. tau a_m^ i
    MatQ bridge_chain(const std::vector<int>& seq) const {
        auto it = bridge_cache_.find(seq);
        if (it != bridge_cache_.end()) return it->second;
        const int m = static_cast<int>(seq.size());
        MatQ acc = zeros(include_mat_.rows(), include_mat_.cols()); // algebra x harmonics
        MatQ prefix = identity(include_mat_.rows());                // a_1^ tau ... a_i^ tau
        long long prefix_deg = 0;
        for (int i = 0; i + 2 <= m; ++i) {
            MatQ tail = (i + 2 < m) ? MatQ(tau_mat_ * suffix(seq, static_cast<std::size_t>(i + 2)))
                                    : include_mat_;
            MatQ mid = prefix * bridge_op(seq[static_cast<std::size_t>(i)], seq[static_cast<std::size_t>(i + 1)]) * tail;
            acc += mid * sign_pow(prefix_deg);
            prefix_deg += hat_.l.degree(seq[static_cast<std::size_t>(i)]);
            prefix = prefix * hat_mats_[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])] * tau_mat_;
        }
        MatQ out = project_mat_ * acc * Scalar(-1);
        return bridge_cache_.emplace(seq, std::move(out)).first->second;
    }

    WordFamily as_word_family() const {
        WordFamily f{hat_.l, hom_, cutoff_, {}};
        f.value = [this](const Word& w) {
            if (static_cast<int>(w.size()) > cutoff_) return SpaceVector{};
            return flatten_hom(pkg_.harmonics, symmetrized_term(w));
        };
        return f;
    }

private:
    // product a_k^ tau a_{k+1}^ tau ... a_m^ i, cached per index sequence
    const MatQ& suffix(const std::vector<int>& seq, std::size_t from) const {
        std::vector<int> key(seq.begin() + static_cast<std::ptrdiff_t>(from), seq.end());
        auto it = suffix_cache_.find(key);
        if (it != suffix_cache_.end()) return it->second;
        MatQ value;
        if (key.size() == 1) {
            value = hat_mats_[static_cast<std::size_t>(key[0])] * include_mat_;
        } else {
            const MatQ& tail = suffix(seq, from + 1);
            value = hat_mats_[static_cast<std::size_t>(key[0])] * tau_mat_ * tail;
        }
        return suffix_cache_.emplace(std::move(key), std::move(value)).first->second;
    }

    OperatorPackage pkg_;
    HatAssignment hat_;
    int cutoff_;
    GradedSpace hom_;
    MatQ include_mat_, project_mat_, tau_mat_, del_mat_;
    std::vector<MatQ> hat_mats_;
    mutable std::map<std::vector<int>, MatQ> suffix_cache_;
    mutable std::map<std::vector<int>, MatQ> bridge_cache_;
    mutable std::map<Word, MatQ> term_cache_;
};

// The identity that turns the bracket side into bridge operators:
// alpha Q(a (.) b)^ beta = alpha (q(a (x) b) + (-1)^{deg a deg b} q(b (x) a)) beta
// for alpha in {h, tau} and beta in {tau, i}.
inline ValidationReport check_bridge_identity(const TaylorFamily& fam) {
    ValidationReport rep;
    const OperatorPackage& pkg = fam.package();
    const HatAssignment& hat = fam.hat_assignment();
    MatQ h = pkg.project.to_matrix();
    MatQ tau = pkg.tau.to_matrix();
    MatQ inc = pkg.include.to_matrix();
    std::vector<std::pair<std::string, MatQ>> alphas{{"h", h}, {"tau", tau}};
    std::vector<std::pair<std::string, MatQ>> betas{{"tau", tau}, {"i", inc}};
    for (int a = 0; a < hat.l.dim(); ++a)
        for (int b = 0; b < hat.l.dim(); ++b) {
            MatQ qhat = hat.hat_of(hat.q_basis(a, b), pkg.algebra.space()).to_matrix();
            long long s = static_cast<long long>(hat.l.degree(a)) * hat.l.degree(b);
            MatQ sym = fam.bridge_op(a, b) + fam.bridge_op(b, a) * sign_pow(s);
            for (const auto& [an, am] : alphas)
                for (const auto& [bn, bm] : betas) {
                    CheckResult c{"bridge[" + an + "," + bn + "](" + hat.l.name(a) + "," + hat.l.name(b) + ")",
                                  true, ""};
                    MatQ lhs = am * qhat * bm;
                    MatQ rhs = am * sym * bm;
                    if (lhs != rhs) {
                        c.pass = false;
                        c.witness = "matrix mismatch";
                    }
                    rep.checks.push_back(std::move(c));
                }
        }
    return rep;
}

namespace detail {

inline std::string word_label(const GradedSpace& space, const Word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "(.)" : "") + space.name(w[k]);
    return s;
}

} // namespace detail

// Both symmetrization identities of the closure proof, per word of length m:
//  (i)  sum_sigma eps g_m(sigma)  = -F_{m-1}( S(2, m-2) pairing sum )
//  (ii) sum_sigma eps g_m(sigma)  =  F_m( S(1, m-1) differential sum )
inline ValidationReport check_symmetrization_identities(const TaylorFamily& fam, const Codifferential& delta,
                                                        int m_max) {
    ValidationReport rep;
    const GradedSpace& l = fam.word_space();
    WordFamily family = fam.as_word_family();
    for (const Word& w : enumerate_words(l, m_max)) {
        const int m = static_cast<int>(w.size());
        if (m < 2) continue;
        std::vector<int> degs = word_degree_vector(l, w);
        MatQ lhs = zeros(fam.package().harmonics.dim(), fam.package().harmonics.dim());
        std::vector<int> sigma = identity_permutation(m);
        do {
            std::vector<int> seq(static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k)
                seq[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
            lhs += fam.bridge_chain(seq) * Scalar(koszul_sign(degs, sigma));
        } while (std::next_permutation(sigma.begin(), sigma.end()));

        MatQ rhs_q = unflatten_hom(fam.package().harmonics, family.evaluate(delta.q_part(w))) * Scalar(-1);
        MatQ rhs_d = unflatten_hom(fam.package().harmonics, family.evaluate(delta.d_part(w)));

        CheckResult ci{"symmetrization_pairing[" + detail::word_label(l, w) + "]", lhs == rhs_q, ""};
        if (!ci.pass) ci.witness = "matrix mismatch";
        rep.checks.push_back(std::move(ci));
        CheckResult cii{"symmetrization_differential[" + detail::word_label(l, w) + "]", lhs == rhs_d, ""};
        if (!cii.pass) cii.witness = "matrix mismatch";
        rep.checks.push_back(std::move(cii));
    }
    return rep;
}

struct HarmonicLiftReport {
    ValidationReport kahler;
    ValidationReport hat;
    ValidationReport bridge;
    ValidationReport identities;
    ValidationReport closure; // F o delta = 0 per word
    bool all_pass() const {
        return kahler.all_pass() && hat.all_pass() && bridge.all_pass() && identities.all_pass() &&
               closure.all_pass();
    }
};

// The flagship check: validate the package and the hat assignment, build the
// codifferential from (L, d, Q) and the Taylor family from the chains, then
// verify F o delta = 0 word by word together with the proof identities.
inline HarmonicLiftReport check_harmonic_lift(const OperatorPackage& pkg, const HatAssignment& hat, int cutoff) {
    HarmonicLiftReport out;
    out.kahler = validate_kahler_identities(pkg);
    out.hat = validate_hat(hat, pkg);
    TaylorFamily fam(pkg, hat, cutoff);
    Codifferential delta(hat.suspended(), cutoff);
    out.bridge = check_bridge_identity(fam);
    out.identities = check_symmetrization_identities(fam, delta, cutoff);
    out.closure = check_family_delta_zero(fam.as_word_family(), delta);
    return out;
}

// theta([a]) = F_1(a) on representatives; callers verify well-definedness by
// feeding a + d b.
struct CohomologyMap {
    Cohomology source;     // H*(L, d)
    GradedSpace target;    // Hom*(H, H)
    GradedLinearMap matrix; // classes -> target
};

inline CohomologyMap theta_on_cohomology(const TaylorFamily& fam) {
    const GradedSpace& l = fam.word_space();
    CohomologyMap out{cohomology(l, fam.hat_assignment().d), fam.target(),
                      GradedLinearMap(GradedSpace(), GradedSpace(), 0)};
    GradedLinearMap mat(out.source.classes, fam.target(), 0);
    for (int k = 0; k < out.source.classes.dim(); ++k) {
        MatQ value = zeros(fam.package().harmonics.dim(), fam.package().harmonics.dim());
        for (const auto& [idx, c] : out.source.rep.column(k)) value += fam.linear_term(idx) * c;
        for (const auto& [pos, c] : flatten_hom(fam.package().harmonics, value)) mat.set(k, pos, c);
    }
    out.matrix = std::move(mat);
    return out;
}

// Evaluation of the family at a fixed harmonic element: word -> F_m(word)(omega),
// a family with values in the harmonic space itself.
inline WordFamily evaluate_at(const TaylorFamily& fam, const SpaceVector& omega_in_algebra) {
    const OperatorPackage& pkg = fam.package();
    SpaceVector lap = pkg.laplacian.apply(omega_in_algebra);
    if (!cleaned(lap).empty()) throw std::invalid_argument("evaluate_at: element is not harmonic");
    VecQ omega = VecQ::Constant(pkg.harmonics.dim(), Scalar(0));
    {
        SpaceVector coords = pkg.project.apply(omega_in_algebra);
        for (const auto& [k, c] : coords) omega(k) = c;
    }
    WordFamily f{fam.word_space(), pkg.harmonics, fam.cutoff(), {}};
    f.value = [&fam, omega](const Word& w) {
        VecQ v = fam.symmetrized_term(w) * omega;
        SpaceVector out;
        for (Eigen::Index k = 0; k < v.size(); ++k)
            if (!v(k).is_zero()) out[static_cast<int>(k)] = v(k);
        return out;
    };
    return f;
}

// Basis elements a of L with del(a^(omega)) = 0; the evaluated family
// vanishes on words with every factor in this set (checked by callers).
inline std::vector<int> evaluation_vanishing_set(const TaylorFamily& fam, const SpaceVector& omega_in_algebra) {
    std::vector<int> out;
    const OperatorPackage& pkg = fam.package();
    for (int a = 0; a < fam.word_space().dim(); ++a) {
        SpaceVector hat_omega = fam.hat_assignment().hats[static_cast<std::size_t>(a)].apply(omega_in_algebra);
        if (cleaned(pkg.del.apply(hat_omega)).empty()) out.push_back(a);
    }
    return out;
}

} // namespace linftylab
