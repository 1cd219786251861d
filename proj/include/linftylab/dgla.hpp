#pragma once

// Differential graded Lie algebras with sparse structure constants, the
// suspended pairing Q, and the induced codifferential on symmetric words.
// Brackets are stored on pairs (a, b) with a <= b in basis order; the other
// half is generated by graded antisymmetry.

#include "linftylab/celement.hpp"
#include "linftylab/graded_map.hpp"
#include "linftylab/theta.hpp"

#include <sstream>

namespace linftylab {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string witness; // empty when passing
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

class Dgla {
public:
    Dgla() = default;
    Dgla(GradedSpace space, GradedLinearMap d) : space_(std::move(space)), d_(std::move(d)) {
        if (!(d_.source() == space_ && d_.target() == space_ && d_.degree() == 1))
            throw std::invalid_argument("Dgla: differential must be a degree-1 endomorphism");
    }

    static Dgla abelian(GradedSpace space) {
        GradedLinearMap d(space, space, 1);
        return Dgla(std::move(space), std::move(d));
    }

    const GradedSpace& space() const { return space_; }
    const GradedLinearMap& d() const { return d_; }
    const std::map<std::pair<int, int>, SpaceVector>& stored_brackets() const { return brackets_; }

    void set_bracket(int a, int b, SpaceVector value) {
        if (a > b) throw std::invalid_argument("Dgla::set_bracket: store only pairs with a <= b");
        value = cleaned(std::move(value));
        if (value.empty())
            brackets_.erase({a, b});
        else
            brackets_[{a, b}] = std::move(value);
    }

    void set_bracket(const std::string& a, const std::string& b, const std::map<std::string, Scalar>& value) {
        SpaceVector v;
        for (const auto& [name, c] : value) v[space_.index_of(name)] = c;
        int i = space_.index_of(a), j = space_.index_of(b);
        if (i > j) {
            // normalize to the canonical slot via graded antisymmetry
            long long s = static_cast<long long>(space_.degree(i)) * space_.degree(j);
            set_bracket(j, i, scale(-sign_pow(s), v));
        } else {
            set_bracket(i, j, std::move(v));
        }
    }

    // [a_i, a_j] for any order of indices.
    SpaceVector bracket_basis(int i, int j) const {
        if (i <= j) {
            auto it = brackets_.find({i, j});
            return it == brackets_.end() ? SpaceVector{} : it->second;
        }
        auto it = brackets_.find({j, i});
        if (it == brackets_.end()) return {};
        long long s = static_cast<long long>(space_.degree(i)) * space_.degree(j);
        return scale(-sign_pow(s), it->second);
    }

    SpaceVector bracket(const SpaceVector& x, const SpaceVector& y) const {
        SpaceVector out;
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y) out = add(out, scale(ci * cj, bracket_basis(i, j)));
        return out;
    }

private:
    GradedSpace space_;
    GradedLinearMap d_;
    std::map<std::pair<int, int>, SpaceVector> brackets_;
};

namespace detail {

inline std::string show_vector(const GradedSpace& v, const SpaceVector& x) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : x) {
        if (!first) os << " + ";
        os << "(" << to_string(c) << ")*" << v.name(k);
        first = false;
    }
    return os.str();
}

} // namespace detail

// d^2 = 0, graded antisymmetry (diagonal of even elements), graded Jacobi on
// all basis triples, graded Leibniz on all basis pairs. Failures carry the
// lexicographically first witness tuple.
inline ValidationReport validate_dgla(const Dgla& g) {
    ValidationReport rep;
    const GradedSpace& v = g.space();

    CheckResult dd{"d_squared_zero", true, ""};
    for (int k = 0; k < v.dim() && dd.pass; ++k)
        if (!cleaned(g.d().apply(g.d().column(k))).empty()) {
            dd.pass = false;
            dd.witness = v.name(k);
        }
    rep.checks.push_back(dd);

    CheckResult anti{"graded_antisymmetry", true, ""};
    for (int i = 0; i < v.dim() && anti.pass; ++i) {
        if (v.degree(i) % 2 == 0 && !g.bracket_basis(i, i).empty()) {
            anti.pass = false;
            anti.witness = "(" + v.name(i) + ", " + v.name(i) + ")";
        }
    }
    rep.checks.push_back(anti);

    CheckResult jac{"graded_jacobi", true, ""};
    for (int a = 0; a < v.dim() && jac.pass; ++a)
        for (int b = 0; b < v.dim() && jac.pass; ++b)
            for (int c = 0; c < v.dim() && jac.pass; ++c) {
                // [a,[b,c]] = [[a,b],c] + (-1)^{deg a deg b} [b,[a,c]]
                SpaceVector lhs = g.bracket({{a, Scalar(1)}}, g.bracket_basis(b, c));
                SpaceVector rhs = g.bracket(g.bracket_basis(a, b), {{c, Scalar(1)}});
                long long s = static_cast<long long>(v.degree(a)) * v.degree(b);
                rhs = add(rhs, scale(sign_pow(s), g.bracket({{b, Scalar(1)}}, g.bracket_basis(a, c))));
                if (add(lhs, scale(Scalar(-1), rhs)) != SpaceVector{}) {
                    jac.pass = false;
                    jac.witness = "(" + v.name(a) + ", " + v.name(b) + ", " + v.name(c) + ")";
                }
            }
    rep.checks.push_back(jac);

    CheckResult leib{"graded_leibniz", true, ""};
    for (int a = 0; a < v.dim() && leib.pass; ++a)
        for (int b = 0; b < v.dim() && leib.pass; ++b) {
            SpaceVector lhs = g.d().apply(g.bracket_basis(a, b));
            SpaceVector rhs = g.bracket(g.d().column(a), {{b, Scalar(1)}});
            rhs = add(rhs, scale(sign_pow(v.degree(a)), g.bracket({{a, Scalar(1)}}, g.d().column(b))));
            if (add(lhs, scale(Scalar(-1), rhs)) != SpaceVector{}) {
                leib.pass = false;
                leib.witness = "(" + v.name(a) + ", " + v.name(b) + ")";
            }
        }
    rep.checks.push_back(leib);
    return rep;
}

// The data Eq-style codifferentials consume: a space W (the unsuspension of a
// DGLA, or Section-2 style data handed in directly), a degree-1 map d on W,
// and the degree-1 symmetric pairing q on canonical index pairs.
struct SuspendedData {
    GradedSpace w;
    GradedLinearMap d; // degree 1 on W
    std::map<std::pair<int, int>, SpaceVector> q; // canonical pairs i <= j

    SpaceVector q_basis(int i, int j) const {
        if (i > j) {
            // q(b (.) a) = (-1)^{deg_W a deg_W b} q(a (.) b)
            long long s = static_cast<long long>(w.degree(i)) * w.degree(j);
            return scale(sign_pow(s), q_basis(j, i));
        }
        auto it = q.find({i, j});
        return it == q.end() ? SpaceVector{} : it->second;
    }
};

// Q(a (.) b) = (-1)^{deg(a, V[1])} [a, b]  on W = V[1].
inline SuspendedData suspend(const Dgla& g) {
    SuspendedData s;
    s.w = shift(g.space(), 1);
    s.d = GradedLinearMap(s.w, s.w, 1);
    for (const auto& [j, col] : g.d().columns())
        for (const auto& [i, c] : col) s.d.set(j, i, c);
    for (int i = 0; i < s.w.dim(); ++i)
        for (int j = i; j < s.w.dim(); ++j) {
            SpaceVector br = g.bracket_basis(i, j);
            if (br.empty()) continue;
            s.q[{i, j}] = scale(sign_pow(s.w.degree(i)), br);
        }
    return s;
}

inline std::map<std::pair<int, int>, SpaceVector> build_q(const Dgla& g) { return suspend(g).q; }

// The codifferential on words: the S(1, m-1) differential sum plus the
// S(2, m-2) pairing sum, each with Koszul signs in W.
class Codifferential {
public:
    Codifferential() = default;
    Codifferential(SuspendedData data, int cutoff) : data_(std::move(data)), cutoff_(cutoff) {}

    const SuspendedData& data() const { return data_; }
    const GradedSpace& word_space() const { return data_.w; }
    int cutoff() const { return cutoff_; }

    CElement d_part(const Word& w) const {
        CElement out(data_.w, cutoff_);
        const int m = static_cast<int>(w.size());
        std::vector<int> degs = word_degree_vector(data_.w, w);
        for (const Unshuffle& u : unshuffles(1, m - 1)) {
            Scalar sign(koszul_sign(degs, u.sigma));
            SpaceVector image = data_.d.column(w[static_cast<std::size_t>(u.sigma[0])]);
            for (const auto& [idx, c] : image) {
                Word nw;
                nw.push_back(idx);
                for (int k = 1; k < m; ++k) nw.push_back(w[static_cast<std::size_t>(u.sigma[static_cast<std::size_t>(k)])]);
                out.add_word(nw, sign * c);
            }
        }
        return out;
    }

    CElement q_part(const Word& w) const {
        CElement out(data_.w, cutoff_);
        const int m = static_cast<int>(w.size());
        if (m < 2) return out;
        std::vector<int> degs = word_degree_vector(data_.w, w);
        for (const Unshuffle& u : unshuffles(2, m - 2)) {
            Scalar sign(koszul_sign(degs, u.sigma));
            SpaceVector image = data_.q_basis(w[static_cast<std::size_t>(u.sigma[0])], w[static_cast<std::size_t>(u.sigma[1])]);
            for (const auto& [idx, c] : image) {
                Word nw;
                nw.push_back(idx);
                for (int k = 2; k < m; ++k) nw.push_back(w[static_cast<std::size_t>(u.sigma[static_cast<std::size_t>(k)])]);
                out.add_word(nw, sign * c);
            }
        }
        return out;
    }

    CElement apply_word(const Word& w) const {
        CElement out = d_part(w);
        out.add(q_part(w));
        return out;
    }

    CElement apply(const CElement& x) const {
        CElement out(data_.w, cutoff_);
        for (const auto& [w, c] : x.terms()) out.add(apply_word(w), c);
        return out;
    }

private:
    SuspendedData data_;
    int cutoff_ = 0;
};

inline Codifferential build_delta(const Dgla& g, int cutoff) { return Codifferential(suspend(g), cutoff); }

// delta o delta on every canonical word of length <= cutoff; the witness is
// the first failing word in (length, lex) order.
inline CheckResult check_delta_squared(const Codifferential& delta) {
    CheckResult r{"delta_squared_zero", true, ""};
    for (const Word& w : enumerate_words(delta.word_space(), delta.cutoff())) {
        CElement dd = delta.apply(delta.apply_word(w));
        if (!dd.is_zero()) {
            r.pass = false;
            std::ostringstream os;
            for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "(.)" : "") << delta.word_space().name(w[k]);
            r.witness = os.str();
            return r;
        }
    }
    return r;
}

// Coderivation law Delta o delta = (delta (x) id + id (x) delta) o Delta,
// with the Koszul sign in id (x) delta.
inline CheckResult check_coderivation(const Codifferential& delta) {
    CheckResult r{"delta_coderivation", true, ""};
    const GradedSpace& w_space = delta.word_space();
    for (const Word& w : enumerate_words(w_space, delta.cutoff())) {
        TensorTable lhs, rhs;
        CElement dw = delta.apply_word(w);
        for (const auto& [word, c] : dw.terms())
            for (const CoproductTerm& t : coproduct(w_space, word)) tensor_add(lhs, w_space, t.left, t.right, c * t.coeff);
        for (const CoproductTerm& t : coproduct(w_space, w)) {
            CElement dl = delta.apply_word(t.left);
            for (const auto& [word, c] : dl.terms()) tensor_add(rhs, w_space, word, t.right, t.coeff * c);
            CElement dr = delta.apply_word(t.right);
            Scalar pass_sign = sign_pow(word_degree(w_space, t.left));
            for (const auto& [word, c] : dr.terms()) tensor_add(rhs, w_space, t.left, word, t.coeff * pass_sign * c);
        }
        if (lhs != rhs) {
            r.pass = false;
            std::ostringstream os;
            for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "(.)" : "") << w_space.name(w[k]);
            r.witness = os.str();
            return r;
        }
    }
    return r;
}

// Checks that f : g -> g' intertwines differentials and brackets; on success
// the induced word map a_1 (.) ... (.) a_m -> f(a_1) (.) ... (.) f(a_m)
// commutes with the codifferentials (checked separately).
inline ValidationReport check_dgla_morphism(const GradedLinearMap& f, const Dgla& g, const Dgla& h) {
    ValidationReport rep;
    CheckResult cd{"intertwines_differential", true, ""};
    for (int k = 0; k < g.space().dim() && cd.pass; ++k) {
        SpaceVector lhs = f.apply(g.d().column(k));
        SpaceVector rhs = h.d().apply(f.column(k));
        if (add(lhs, scale(Scalar(-1), rhs)) != SpaceVector{}) {
            cd.pass = false;
            cd.witness = g.space().name(k);
        }
    }
    rep.checks.push_back(cd);

    CheckResult cb{"intertwines_bracket", true, ""};
    for (int a = 0; a < g.space().dim() && cb.pass; ++a)
        for (int b = a; b < g.space().dim() && cb.pass; ++b) {
            SpaceVector lhs = f.apply(g.bracket_basis(a, b));
            SpaceVector rhs = h.bracket(f.column(a), f.column(b));
            if (add(lhs, scale(Scalar(-1), rhs)) != SpaceVector{}) {
                cb.pass = false;
                cb.witness = "(" + g.space().name(a) + ", " + g.space().name(b) + ")";
            }
        }
    rep.checks.push_back(cb);
    return rep;
}

inline CoalgebraMap word_map_from_morphism(const GradedLinearMap& f, const SuspendedData& src,
                                           const SuspendedData& tgt, int cutoff) {
    CoalgebraMap theta{src.w, tgt.w, cutoff, {}};
    theta.on_word = [f, tgt, cutoff](const Word& w) {
        CElement out(tgt.w, cutoff);
        std::vector<std::pair<Word, Scalar>> expanded = {{Word{}, Scalar(1)}};
        for (int idx : w) {
            SpaceVector img;
            for (const auto& [i, c] : f.column(idx)) img[i] = c;
            std::vector<std::pair<Word, Scalar>> next;
            for (const auto& [word, c] : expanded)
                for (const auto& [i, x] : img) {
                    Word ext = word;
                    ext.push_back(i);
                    next.emplace_back(std::move(ext), c * x);
                }
            expanded = std::move(next);
        }
        for (const auto& [word, c] : expanded) out.add_word(word, c);
        return out;
    };
    return theta;
}

// F o delta = 0 word by word. On pass, theta_from_family(F) is a morphism of
// coalgebras into the abelian target.
inline ValidationReport check_family_delta_zero(const WordFamily& family, const Codifferential& delta) {
    ValidationReport rep;
    for (const Word& w : enumerate_words(delta.word_space(), delta.cutoff())) {
        std::ostringstream os;
        for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "(.)" : "") << delta.word_space().name(w[k]);
        SpaceVector val = family.evaluate(delta.apply_word(w));
        CheckResult c{"F_delta[" + os.str() + "]", val.empty(), ""};
        if (!c.pass) c.witness = detail::show_vector(family.target, val);
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

// Composes a family with a projection p onto a subspace of the target
// (p o p = p required). Closure under delta is preserved and rechecked by
// callers.
inline WordFamily formality_projection(const WordFamily& family, const GradedLinearMap& p) {
    if (!(p.source() == family.target && p.target() == family.target))
        throw std::invalid_argument("formality_projection: projection must be an endomorphism of the target");
    if (!(compose(p, p) == p)) throw std::invalid_argument("formality_projection: p o p != p");
    WordFamily out = family;
    out.value = [inner = family.value, p](const Word& w) { return p.apply(inner(w)); };
    return out;
}

} // namespace linftylab
