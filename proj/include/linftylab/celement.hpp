#pragma once

// Elements of the reduced symmetric coalgebra over a graded space W: sparse
// combinations of canonical words, plus the unshuffle coproduct.

#include "linftylab/koszul.hpp"
#include "linftylab/sym_word.hpp"

#include <functional>

namespace linftylab {

class CElement {
public:
    CElement() = default;
    explicit CElement(GradedSpace space, int cutoff = 0) : space_(std::move(space)), cutoff_(cutoff) {}

    const GradedSpace& space() const { return space_; }
    int cutoff() const { return cutoff_; }
    const std::map<Word, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_word(const Word& raw, const Scalar& coeff) {
        if (coeff.is_zero()) return;
        SymWord w = normalize_word(space_, raw);
        if (w.is_zero()) return;
        if (cutoff_ > 0 && w.length() > cutoff_) return;
        Scalar c = Scalar(w.sign) * coeff;
        auto [it, fresh] = terms_.emplace(w.factors, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const CElement& other, const Scalar& factor = Scalar(1)) {
        for (const auto& [w, c] : other.terms_) add_word(w, factor * c);
    }

    CElement scaled(const Scalar& factor) const {
        CElement r(space_, cutoff_);
        for (const auto& [w, c] : terms_) r.add_word(w, factor * c);
        return r;
    }

    // The length-one part, as a sparse vector of W.
    SpaceVector length_one_part() const {
        SpaceVector out;
        for (const auto& [w, c] : terms_)
            if (w.size() == 1) out[w[0]] = c;
        return out;
    }

    friend bool operator==(const CElement& a, const CElement& b) { return a.terms_ == b.terms_; }

private:
    GradedSpace space_;
    int cutoff_ = 0; // 0 means unbounded
    std::map<Word, Scalar> terms_;
};

// p1: the projection onto words of length one.
inline SpaceVector p1(const CElement& x) { return x.length_one_part(); }

struct CoproductTerm {
    Word left;
    Word right;
    Scalar coeff;
};

// Accumulator for elements of the tensor square of the word space.
using TensorTable = std::map<std::pair<Word, Word>, Scalar>;

inline void tensor_add(TensorTable& t, const GradedSpace& space, const Word& l, const Word& r, const Scalar& c) {
    SymWord ln = normalize_word(space, l);
    SymWord rn = normalize_word(space, r);
    if (ln.is_zero() || rn.is_zero() || c.is_zero()) return;
    auto key = std::make_pair(ln.factors, rn.factors);
    Scalar value = Scalar(ln.sign * rn.sign) * c;
    auto [it, fresh] = t.emplace(key, value);
    if (!fresh) {
        it->second += value;
        if (it->second.is_zero()) t.erase(it);
    }
}

// Unshuffle coproduct of a canonical word. A word of length one has empty
// coproduct. Output parts stay canonical automatically: subsequences of a
// sorted word are sorted.
inline std::vector<CoproductTerm> coproduct(const GradedSpace& space, const Word& w) {
    std::vector<CoproductTerm> out;
    const int m = static_cast<int>(w.size());
    if (m < 2) return out;
    std::vector<int> degs = word_degree_vector(space, w);
    for (int r = 1; r <= m - 1; ++r)
        for (const Unshuffle& u : unshuffles(r, m - r)) {
            CoproductTerm t;
            t.coeff = Scalar(koszul_sign(degs, u.sigma));
            for (int k = 0; k < r; ++k) t.left.push_back(w[static_cast<std::size_t>(u.sigma[static_cast<std::size_t>(k)])]);
            for (int k = r; k < m; ++k) t.right.push_back(w[static_cast<std::size_t>(u.sigma[static_cast<std::size_t>(k)])]);
            out.push_back(std::move(t));
        }
    return out;
}

struct SplitTerm {
    std::vector<Word> parts;
    Scalar coeff;
};

// Iterated coproduct: all ordered splittings of w into `parts` nonempty
// blocks, with iterated unshuffle signs. parts == 1 returns w itself.
inline std::vector<SplitTerm> split_word(const GradedSpace& space, const Word& w, int parts) {
    std::vector<SplitTerm> out;
    if (parts < 1 || parts > static_cast<int>(w.size())) return out;
    if (parts == 1) {
        out.push_back({{w}, Scalar(1)});
        return out;
    }
    const int m = static_cast<int>(w.size());
    std::vector<int> degs = word_degree_vector(space, w);
    for (int r = 1; r <= m - (parts - 1); ++r)
        for (const Unshuffle& u : unshuffles(r, m - r)) {
            Word left, right;
            for (int k = 0; k < r; ++k) left.push_back(w[static_cast<std::size_t>(u.sigma[static_cast<std::size_t>(k)])]);
            for (int k = r; k < m; ++k) right.push_back(w[static_cast<std::size_t>(u.sigma[static_cast<std::size_t>(k)])]);
            Scalar sign(koszul_sign(degs, u.sigma));
            for (auto& tail : split_word(space, right, parts - 1)) {
                SplitTerm t;
                t.parts.reserve(static_cast<std::size_t>(parts));
                t.parts.push_back(left);
                for (auto& p : tail.parts) t.parts.push_back(std::move(p));
                t.coeff = sign * tail.coeff;
                out.push_back(std::move(t));
            }
        }
    return out;
}

// A family of degree-0 word maps F_m : canonical words over `source` of
// length m <= cutoff -> sparse vectors of `target`. Words are normalized
// before lookup, so families are Koszul-symmetric by construction.
struct WordFamily {
    GradedSpace source;
    GradedSpace target;
    int cutoff = 0;
    std::function<SpaceVector(const Word&)> value; // on canonical nonzero words

    SpaceVector evaluate_word(const Word& raw) const {
        SymWord w = normalize_word(source, raw);
        if (w.is_zero()) return {};
        return scale(Scalar(w.sign), value(w.factors));
    }

    SpaceVector evaluate(const CElement& x) const {
        SpaceVector out;
        for (const auto& [w, c] : x.terms()) out = add(out, scale(c, value(w)));
        return out;
    }
};

// Table-backed family; absent words map to zero. The table is copied into
// the returned closure, so the family owns its data.
struct WordFamilyTable {
    std::map<Word, SpaceVector> table;

    WordFamily as_family(GradedSpace source, GradedSpace target, int cutoff) const {
        WordFamily f{std::move(source), std::move(target), cutoff, {}};
        f.value = [tbl = table](const Word& w) -> SpaceVector {
            auto it = tbl.find(w);
            return it == tbl.end() ? SpaceVector{} : it->second;
        };
        return f;
    }
};

} // namespace linftylab
