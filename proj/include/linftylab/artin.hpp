#pragma once

// Local Artinian coefficient rings presented by monomials: variables, an
// optional monomial ideal, and a total-degree truncation. The basis of the
// maximal ideal is every surviving monomial of positive degree; products
// falling into the ideal are zero.

#include "linftylab/scalar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace linftylab {

using Monomial = std::vector<int>; // exponents per variable

class ArtinAlgebra {
public:
    ArtinAlgebra() = default;
    ArtinAlgebra(std::vector<std::string> variables, int truncation_order, std::vector<Monomial> ideal = {})
        : vars_(std::move(variables)), trunc_(truncation_order), ideal_(std::move(ideal)) {
        if (trunc_ < 1) throw std::invalid_argument("ArtinAlgebra: truncation order must be >= 1");
        for (const auto& g : ideal_)
            if (g.size() != vars_.size()) throw std::invalid_argument("ArtinAlgebra: ideal generator arity mismatch");
        // enumerate surviving monomials of degree 1 .. trunc-1 by (degree, lex)
        std::vector<Monomial> layer{Monomial(vars_.size(), 0)};
        for (int d = 1; d < trunc_; ++d) {
            std::vector<Monomial> next;
            for (const auto& m : layer)
                for (std::size_t v = 0; v < vars_.size(); ++v) {
                    // raise only the last nonzero slot or later, so each
                    // monomial appears once
                    bool ok = true;
                    for (std::size_t u = v + 1; u < vars_.size(); ++u)
                        if (m[u] != 0) { ok = false; break; }
                    if (!ok) continue;
                    Monomial e = m;
                    e[v] += 1;
                    next.push_back(std::move(e));
                }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            for (const auto& m : next)
                if (!in_ideal(m)) basis_.push_back(m);
            layer = std::move(next);
        }
        std::stable_sort(basis_.begin(), basis_.end(), [](const Monomial& a, const Monomial& b) {
            int da = 0, db = 0;
            for (int e : a) da += e;
            for (int e : b) db += e;
            if (da != db) return da < db;
            return a < b;
        });
        // nilpotency order: smallest N with every product of N ideal
        // generators dead
        std::vector<Monomial> frontier;
        for (const auto& m : basis_) frontier.push_back(m);
        nilpotency_ = 1;
        while (!frontier.empty()) {
            ++nilpotency_;
            std::vector<Monomial> next;
            for (const auto& m : frontier)
                for (const auto& g : basis_) {
                    Monomial p = m;
                    for (std::size_t k = 0; k < p.size(); ++k) p[k] += g[k];
                    if (!dead(p)) next.push_back(std::move(p));
                }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            frontier = std::move(next);
            if (nilpotency_ > trunc_ + 1) break; // safety, cannot happen
        }
    }

    const std::vector<std::string>& variables() const { return vars_; }
    int truncation() const { return trunc_; }
    int nilpotency_order() const { return nilpotency_; }
    const std::vector<Monomial>& basis() const { return basis_; } // of the maximal ideal
    int dim() const { return static_cast<int>(basis_.size()); }

    int degree(int k) const {
        int d = 0;
        for (int e : basis_[static_cast<std::size_t>(k)]) d += e;
        return d;
    }

    int index_of(const Monomial& m) const {
        for (int k = 0; k < dim(); ++k)
            if (basis_[static_cast<std::size_t>(k)] == m) return k;
        return -1;
    }

    std::string monomial_name(int k) const {
        const Monomial& m = basis_[static_cast<std::size_t>(k)];
        std::ostringstream os;
        bool first = true;
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            if (m[v] == 0) continue;
            if (!first) os << "*";
            os << vars_[v];
            if (m[v] > 1) os << "^" << m[v];
            first = false;
        }
        return os.str();
    }

    // product of two maximal-ideal basis monomials; -1 when it dies
    int multiply(int a, int b) const {
        Monomial p = basis_[static_cast<std::size_t>(a)];
        const Monomial& q = basis_[static_cast<std::size_t>(b)];
        for (std::size_t k = 0; k < p.size(); ++k) p[k] += q[k];
        if (dead(p)) return -1;
        return index_of(p);
    }

    bool dead(const Monomial& m) const {
        int d = 0;
        for (int e : m) d += e;
        return d >= trunc_ || in_ideal(m);
    }

    friend bool operator==(const ArtinAlgebra& a, const ArtinAlgebra& b) {
        return a.vars_ == b.vars_ && a.trunc_ == b.trunc_ && a.ideal_ == b.ideal_;
    }

private:
    bool in_ideal(const Monomial& m) const {
        for (const auto& g : ideal_) {
            bool divides = true;
            for (std::size_t k = 0; k < m.size(); ++k)
                if (m[k] < g[k]) { divides = false; break; }
            if (divides) return true;
        }
        return false;
    }

    std::vector<std::string> vars_;
    int trunc_ = 1;
    std::vector<Monomial> ideal_;
    std::vector<Monomial> basis_;
    int nilpotency_ = 1;
};

// C[t]/(t^n): maximal-ideal basis t, ..., t^{n-1}, nilpotency order n.
inline ArtinAlgebra make_truncated_line(int n) {
    if (n < 1) throw std::invalid_argument("make_truncated_line: n >= 1 required");
    return ArtinAlgebra({"t"}, n);
}

// Small extensions 0 -> J -> A -> B -> 0 with J = ker(p) killed by the
// maximal ideal; p drops the monomials absent from B.
struct SmallExtension {
    ArtinAlgebra a;
    ArtinAlgebra b;
    std::vector<int> j; // indices into a.basis() spanning the kernel

    std::string label;
};

inline SmallExtension make_small_extension(ArtinAlgebra a, ArtinAlgebra b, std::string label) {
    SmallExtension e{std::move(a), std::move(b), {}, std::move(label)};
    // every B monomial must be an A monomial; J is the complement
    for (int k = 0; k < e.b.dim(); ++k)
        if (e.a.index_of(e.b.basis()[static_cast<std::size_t>(k)]) < 0)
            throw std::invalid_argument("make_small_extension: B has a monomial not present in A");
    for (int k = 0; k < e.a.dim(); ++k)
        if (e.b.index_of(e.a.basis()[static_cast<std::size_t>(k)]) < 0) e.j.push_back(k);
    // smallness: J * m_A = 0
    for (int jj : e.j)
        for (int k = 0; k < e.a.dim(); ++k)
            if (e.a.multiply(jj, k) >= 0)
                throw std::invalid_argument("make_small_extension: kernel is not killed by the maximal ideal");
    // the projection must be a ring map: products of surviving monomials agree
    for (int x = 0; x < e.b.dim(); ++x)
        for (int y = 0; y < e.b.dim(); ++y) {
            int ax = e.a.index_of(e.b.basis()[static_cast<std::size_t>(x)]);
            int ay = e.a.index_of(e.b.basis()[static_cast<std::size_t>(y)]);
            int pa = e.a.multiply(ax, ay);
            int pb = e.b.multiply(x, y);
            bool pa_in_b = pa >= 0 && e.b.index_of(e.a.basis()[static_cast<std::size_t>(pa)]) >= 0;
            if (pb < 0 ? pa_in_b
                       : (pa < 0 || e.b.basis()[static_cast<std::size_t>(pb)] != e.a.basis()[static_cast<std::size_t>(pa)]))
                throw std::invalid_argument("make_small_extension: projection is not a ring map");
        }
    return e;
}

// 0 -> C --t^n--> C[t]/(t^{n+1}) -> C[t]/(t^n) -> 0
inline SmallExtension curvilinear_extension(int n) {
    if (n < 1) throw std::invalid_argument("curvilinear_extension: n >= 1 required");
    return make_small_extension(make_truncated_line(n + 1), make_truncated_line(n),
                                "curvilinear(t^" + std::to_string(n) + ")");
}

// the primary-obstruction extension C[t]/(t^3) -> C[t]/(t^2)
inline SmallExtension epsilon_extension() { return curvilinear_extension(2); }

// "C[t]/(t^4)" or "C[x,y]/(x^2,y^3)" or "C[x,y]/m^3"
inline ArtinAlgebra parse_ring(const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_ring: " + why + " in '" + text + "'");
    };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 4 || (s[0] != 'C' && s[0] != 'Q') || s[1] != '[') fail("expected C[...]");
    auto close = s.find(']');
    if (close == std::string::npos) fail("missing ]");
    std::vector<std::string> vars;
    {
        std::string inside = s.substr(2, close - 2);
        std::stringstream ss(inside);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) vars.push_back(item);
    }
    if (vars.empty()) fail("no variables");
    std::string rest = s.substr(close + 1);
    if (rest.empty() || rest[0] != '/') fail("expected /(...) or /m^k");
    rest = rest.substr(1);

    auto parse_power = [&](const std::string& token) -> std::pair<std::string, int> {
        auto caret = token.find('^');
        if (caret == std::string::npos) return {token, 1};
        return {token.substr(0, caret), std::stoi(token.substr(caret + 1))};
    };

    if (rest.rfind("m^", 0) == 0) {
        int k = std::stoi(rest.substr(2));
        return ArtinAlgebra(vars, k);
    }
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') fail("expected parenthesized relations");
    std::vector<Monomial> gens;
    int bound = 1;
    std::vector<int> pure_power(vars.size(), 0);
    std::stringstream ss(rest.substr(1, rest.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        Monomial g(vars.size(), 0);
        std::stringstream fs(item);
        std::string factor;
        while (std::getline(fs, factor, '*')) {
            auto [name, power] = parse_power(factor);
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) fail("unknown variable '" + name + "'");
            g[static_cast<std::size_t>(it - vars.begin())] += power;
        }
        int nonzero = 0, total = 0;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            if (g[v] > 0) ++nonzero;
            total += g[v];
        }
        if (nonzero == 1)
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (g[v] > 0 && (pure_power[v] == 0 || g[v] < pure_power[v])) pure_power[v] = g[v];
        (void)total;
        gens.push_back(std::move(g));
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (pure_power[v] == 0) fail("variable '" + vars[v] + "' has no pure power relation; ring is not Artinian");
        bound += pure_power[v] - 1;
    }
    return ArtinAlgebra(vars, bound + 1, gens);
}

} // namespace linftylab
