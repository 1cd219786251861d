#pragma once

// The correspondence between word families F with values in a graded space
// and coalgebra morphisms Theta into the symmetric coalgebra on that space:
//   Theta = sum_m (1/m!) F^{sym m} o (iterated coproduct).

#include "linftylab/celement.hpp"

namespace linftylab {

struct CoalgebraMap {
    GradedSpace source;
    GradedSpace target;
    int cutoff = 0;
    std::function<CElement(const Word&)> on_word; // canonical nonzero words

    CElement apply(const CElement& x) const {
        CElement out(target, cutoff);
        for (const auto& [w, c] : x.terms()) out.add(on_word(w), c);
        return out;
    }
};

inline CoalgebraMap theta_from_family(const WordFamily& family) {
    CoalgebraMap theta{family.source, family.target, family.cutoff, {}};
    theta.on_word = [family](const Word& w) -> CElement {
        CElement out(family.target, family.cutoff);
        const int len = static_cast<int>(w.size());
        Scalar factorial(1);
        for (int m = 1; m <= len; ++m) {
            factorial *= Scalar(m);
            Scalar inv = Scalar(1) / factorial;
            for (const SplitTerm& split : split_word(family.source, w, m)) {
                // multiply out F(part_1) (.) ... (.) F(part_m)
                std::vector<SpaceVector> images;
                images.reserve(split.parts.size());
                bool dead = false;
                for (const Word& part : split.parts) {
                    images.push_back(family.value(part));
                    if (images.back().empty()) { dead = true; break; }
                }
                if (dead) continue;
                std::vector<std::pair<Word, Scalar>> expanded = {{Word{}, split.coeff * inv}};
                for (const SpaceVector& img : images) {
                    std::vector<std::pair<Word, Scalar>> next;
                    for (const auto& [word, c] : expanded)
                        for (const auto& [idx, x] : img) {
                            Word ext = word;
                            ext.push_back(idx);
                            next.emplace_back(std::move(ext), c * x);
                        }
                    expanded = std::move(next);
                }
                for (const auto& [word, c] : expanded) out.add_word(word, c);
            }
        }
        return out;
    };
    return theta;
}

// p1 o Theta recovers the family exactly; checked word by word up to cutoff.
inline bool p1_of_theta_equals_family(const CoalgebraMap& theta, const WordFamily& family) {
    for (const Word& w : enumerate_words(family.source, family.cutoff))
        if (cleaned(p1(theta.on_word(w))) != cleaned(family.value(w))) return false;
    return true;
}

// Coalgebra-morphism law: Delta' o Theta = (Theta (x) Theta) o Delta, checked
// on every canonical word of the source up to the cutoff. Returns the first
// failing word if any.
inline std::optional<Word> coalgebra_morphism_defect(const CoalgebraMap& theta) {
    for (const Word& w : enumerate_words(theta.source, theta.cutoff)) {
        TensorTable lhs, rhs;
        CElement tw = theta.on_word(w);
        for (const auto& [tword, c] : tw.terms())
            for (const CoproductTerm& t : coproduct(theta.target, tword))
                tensor_add(lhs, theta.target, t.left, t.right, c * t.coeff);
        for (const CoproductTerm& t : coproduct(theta.source, w)) {
            CElement tl = theta.on_word(t.left);
            CElement tr = theta.on_word(t.right);
            for (const auto& [lw, lc] : tl.terms())
                for (const auto& [rw, rc] : tr.terms())
                    tensor_add(rhs, theta.target, lw, rw, t.coeff * lc * rc);
        }
        if (lhs != rhs) return w;
    }
    return std::nullopt;
}

} // namespace linftylab
