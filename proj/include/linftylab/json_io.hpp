#pragma once

// Versioned JSON formats. Scalars travel as exact strings ("3/2",
// "-1/3*i", "1/2+1/2*i"); no floating point anywhere. Serialization is
// canonical: nlohmann::json orders keys, so serialize-parse-serialize is
// byte-stable. Manifests reject unknown fields.

#include "linftylab/deformation.hpp"
#include "linftylab/hat.hpp"
#include "linftylab/kahler.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace linftylab::io {

using nlohmann::json;

inline constexpr const char* kFormat = "linfty-lab/1";

[[noreturn]] inline void fail(const std::string& what) { throw std::invalid_argument("json: " + what); }

inline void require_header(const json& j, const std::string& kind) {
    if (!j.is_object()) fail("expected an object for kind '" + kind + "'");
    if (!j.contains("format") || j.at("format") != kFormat)
        fail("missing or unsupported format (want \"" + std::string(kFormat) + "\")");
    if (!j.contains("kind") || j.at("kind") != kind) fail("expected kind \"" + kind + "\"");
}

// ---- graded spaces ----

inline json space_to_json(const GradedSpace& v) {
    json basis = json::array();
    for (const auto& b : v.basis()) {
        json e;
        e["name"] = b.name;
        e["degree"] = b.degree;
        if (b.bidegree) e["bidegree"] = {b.bidegree->at(0), b.bidegree->at(1)};
        basis.push_back(std::move(e));
    }
    json j;
    j["basis"] = std::move(basis);
    if (v.shift_amount() != 0) j["shift"] = v.shift_amount();
    return j;
}

inline GradedSpace space_from_json(const json& j) {
    if (!j.contains("basis")) fail("space without basis");
    std::vector<BasisElement> basis;
    for (const auto& e : j.at("basis")) {
        BasisElement b;
        b.name = e.at("name").get<std::string>();
        b.degree = e.at("degree").get<int>();
        if (e.contains("bidegree")) {
            auto arr = e.at("bidegree");
            if (!arr.is_array() || arr.size() != 2) fail("bidegree must be a pair");
            b.bidegree = std::array<int, 2>{arr[0].get<int>(), arr[1].get<int>()};
        }
        basis.push_back(std::move(b));
    }
    return GradedSpace(std::move(basis), j.value("shift", 0));
}

// ---- sparse maps (embedded; spaces supplied by context) ----

inline json map_entries_to_json(const GradedLinearMap& f) {
    json entries = json::array();
    for (const auto& [from, col] : f.columns())
        for (const auto& [to, c] : col) {
            json e;
            e["from"] = f.source().name(from);
            e["to"] = f.target().name(to);
            e["coeff"] = to_string(c);
            entries.push_back(std::move(e));
        }
    json j;
    j["degree"] = f.degree();
    if (f.bidegree()) j["bidegree"] = {f.bidegree()->at(0), f.bidegree()->at(1)};
    j["entries"] = std::move(entries);
    return j;
}

inline GradedLinearMap map_entries_from_json(const json& j, const GradedSpace& src, const GradedSpace& tgt) {
    std::optional<std::array<int, 2>> bidegree;
    if (j.contains("bidegree")) bidegree = std::array<int, 2>{j.at("bidegree")[0].get<int>(), j.at("bidegree")[1].get<int>()};
    GradedLinearMap f(src, tgt, j.at("degree").get<int>(), bidegree);
    for (const auto& e : j.at("entries"))
        f.set(src.index_of(e.at("from").get<std::string>()), tgt.index_of(e.at("to").get<std::string>()),
              parse_scalar(e.at("coeff").get<std::string>()));
    f.check_homogeneous();
    return f;
}

inline json standalone_map_to_json(const GradedLinearMap& f) {
    json j = map_entries_to_json(f);
    j["format"] = kFormat;
    j["kind"] = "graded_map";
    j["source"] = space_to_json(f.source());
    j["target"] = space_to_json(f.target());
    return j;
}

inline GradedLinearMap standalone_map_from_json(const json& j) {
    require_header(j, "graded_map");
    GradedSpace src = space_from_json(j.at("source"));
    GradedSpace tgt = space_from_json(j.at("target"));
    return map_entries_from_json(j, src, tgt);
}

// ---- inner products ----

inline json gram_to_json(const InnerProduct& ip) {
    json rows = json::array();
    for (int i = 0; i < ip.space().dim(); ++i)
        for (int k = 0; k < ip.space().dim(); ++k) {
            if (ip.gram()(i, k).is_zero()) continue;
            json e;
            e["row"] = ip.space().name(i);
            e["col"] = ip.space().name(k);
            e["coeff"] = to_string(ip.gram()(i, k));
            rows.push_back(std::move(e));
        }
    return rows;
}

inline InnerProduct gram_from_json(const json& j, const GradedSpace& space) {
    MatQ g = zeros(space.dim(), space.dim());
    for (const auto& e : j)
        g(space.index_of(e.at("row").get<std::string>()), space.index_of(e.at("col").get<std::string>())) =
            parse_scalar(e.at("coeff").get<std::string>());
    return InnerProduct(space, std::move(g));
}

// ---- sparse vectors keyed by basis name ----

inline json vector_to_json(const GradedSpace& v, const SpaceVector& x) {
    json j = json::object();
    for (const auto& [k, c] : x) j[v.name(k)] = to_string(c);
    return j;
}

inline SpaceVector vector_from_json(const json& j, const GradedSpace& v) {
    SpaceVector out;
    for (auto it = j.begin(); it != j.end(); ++it) out[v.index_of(it.key())] = parse_scalar(it.value().get<std::string>());
    return cleaned(std::move(out));
}

// ---- DGLAs ----

inline json dgla_to_json(const Dgla& g) {
    json j;
    j["format"] = kFormat;
    j["kind"] = "dgla";
    j["basis"] = space_to_json(g.space()).at("basis");
    j["d"] = map_entries_to_json(g.d());
    json brackets = json::array();
    for (const auto& [pair, value] : g.stored_brackets()) {
        json e;
        e["a"] = g.space().name(pair.first);
        e["b"] = g.space().name(pair.second);
        e["value"] = vector_to_json(g.space(), value);
        brackets.push_back(std::move(e));
    }
    j["bracket"] = std::move(brackets);
    return j;
}

inline Dgla dgla_from_json(const json& j) {
    require_header(j, "dgla");
    json sj;
    sj["basis"] = j.at("basis");
    GradedSpace v = space_from_json(sj);
    Dgla g(v, map_entries_from_json(j.at("d"), v, v));
    for (const auto& e : j.at("bracket")) {
        std::map<std::string, Scalar> value;
        const json& val = e.at("value");
        for (auto it = val.begin(); it != val.end(); ++it) value[it.key()] = parse_scalar(it.value().get<std::string>());
        g.set_bracket(e.at("a").get<std::string>(), e.at("b").get<std::string>(), value);
    }
    return g;
}

// ---- operator packages ----

inline json package_to_json(const PackageData& d) {
    json j;
    j["format"] = kFormat;
    j["kind"] = "package";
    json alg;
    alg["basis"] = space_to_json(d.algebra.space()).at("basis");
    json products = json::array();
    for (const auto& [pair, value] : d.algebra.stored_products()) {
        json e;
        e["a"] = d.algebra.space().name(pair.first);
        e["b"] = d.algebra.space().name(pair.second);
        e["value"] = vector_to_json(d.algebra.space(), value);
        products.push_back(std::move(e));
    }
    alg["product"] = std::move(products);
    if (d.algebra.unit()) alg["unit"] = d.algebra.space().name(*d.algebra.unit());
    j["algebra"] = std::move(alg);
    j["del"] = map_entries_to_json(d.del);
    j["delbar"] = map_entries_to_json(d.delbar);
    j["gram"] = gram_to_json(d.ip);
    return j;
}

inline PackageData package_from_json(const json& j) {
    require_header(j, "package");
    const json& alg = j.at("algebra");
    json sj;
    sj["basis"] = alg.at("basis");
    GradedSpace space = space_from_json(sj);
    std::optional<int> unit;
    if (alg.contains("unit")) unit = space.index_of(alg.at("unit").get<std::string>());
    BigradedAlgebra algebra(space, unit);
    for (const auto& e : alg.at("product")) {
        int a = space.index_of(e.at("a").get<std::string>());
        int b = space.index_of(e.at("b").get<std::string>());
        algebra.set_product(std::min(a, b), std::max(a, b), vector_from_json(e.at("value"), space));
    }
    PackageData out{std::move(algebra), map_entries_from_json(j.at("del"), space, space),
                    map_entries_from_json(j.at("delbar"), space, space), gram_from_json(j.at("gram"), space)};
    return out;
}

// ---- hat assignments ----

inline json hat_to_json(const HatAssignment& ha, const GradedSpace& algebra_space) {
    json j;
    j["format"] = kFormat;
    j["kind"] = "hat";
    j["space"] = space_to_json(ha.l);
    j["d"] = map_entries_to_json(ha.d);
    json q = json::array();
    for (const auto& [pair, value] : ha.q) {
        json e;
        e["a"] = ha.l.name(pair.first);
        e["b"] = ha.l.name(pair.second);
        e["value"] = vector_to_json(ha.l, value);
        q.push_back(std::move(e));
    }
    j["q"] = std::move(q);
    json hats = json::array();
    for (int k = 0; k < ha.l.dim(); ++k) {
        json e;
        e["element"] = ha.l.name(k);
        e["map"] = map_entries_to_json(ha.hats[static_cast<std::size_t>(k)]);
        hats.push_back(std::move(e));
    }
    j["hats"] = std::move(hats);
    (void)algebra_space;
    return j;
}

inline HatAssignment hat_from_json(const json& j, const GradedSpace& algebra_space) {
    require_header(j, "hat");
    GradedSpace l = space_from_json(j.at("space"));
    HatAssignment ha{l, map_entries_from_json(j.at("d"), l, l), {}, {}};
    for (const auto& e : j.at("q")) {
        int a = l.index_of(e.at("a").get<std::string>());
        int b = l.index_of(e.at("b").get<std::string>());
        if (a > b) std::swap(a, b);
        ha.q[{a, b}] = vector_from_json(e.at("value"), l);
    }
    ha.hats.resize(static_cast<std::size_t>(l.dim()), GradedLinearMap(algebra_space, algebra_space, 0));
    std::set<int> seen;
    for (const auto& e : j.at("hats")) {
        int k = l.index_of(e.at("element").get<std::string>());
        seen.insert(k);
        GradedLinearMap m(algebra_space, algebra_space, l.degree(k));
        for (const auto& entry : e.at("map").at("entries"))
            m.set(algebra_space.index_of(entry.at("from").get<std::string>()),
                  algebra_space.index_of(entry.at("to").get<std::string>()),
                  parse_scalar(entry.at("coeff").get<std::string>()));
        ha.hats[static_cast<std::size_t>(k)] = std::move(m);
    }
    if (static_cast<int>(seen.size()) != l.dim()) fail("hat: every L basis element needs a map");
    return ha;
}

// ---- word families with a named target ----

inline json family_to_json(const GradedSpace& source, const GradedSpace& target, int cutoff,
                           const std::map<Word, SpaceVector>& table) {
    json j;
    j["format"] = kFormat;
    j["kind"] = "family";
    j["target"] = space_to_json(target);
    j["cutoff"] = cutoff;
    json terms = json::array();
    for (const auto& [w, value] : table) {
        json e;
        json word = json::array();
        for (int k : w) word.push_back(source.name(k));
        e["word"] = std::move(word);
        e["value"] = vector_to_json(target, value);
        terms.push_back(std::move(e));
    }
    j["terms"] = std::move(terms);
    return j;
}

struct FamilyData {
    GradedSpace target;
    int cutoff = 4;
    WordFamilyTable table;

    WordFamily as_family(const GradedSpace& source) const { return table.as_family(source, target, cutoff); }
};

inline FamilyData family_from_json(const json& j, const GradedSpace& source) {
    require_header(j, "family");
    FamilyData out;
    out.target = space_from_json(j.at("target"));
    out.cutoff = j.at("cutoff").get<int>();
    for (const auto& e : j.at("terms")) {
        Word w;
        for (const auto& name : e.at("word")) w.push_back(source.index_of(name.get<std::string>()));
        SymWord norm = normalize_word(source, w);
        if (norm.is_zero()) fail("family: term on a zero word");
        out.table.table[norm.factors] = scale(Scalar(norm.sign), vector_from_json(e.at("value"), out.target));
    }
    return out;
}

// ---- elements of K^1 (x) m_A ----

inline Monomial parse_monomial(const std::string& text, const ArtinAlgebra& ring) {
    Monomial m(ring.variables().size(), 0);
    std::stringstream ss(text);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        auto caret = factor.find('^');
        std::string name = caret == std::string::npos ? factor : factor.substr(0, caret);
        int power = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
        auto it = std::find(ring.variables().begin(), ring.variables().end(), name);
        if (it == ring.variables().end()) fail("unknown ring variable '" + name + "'");
        m[static_cast<std::size_t>(it - ring.variables().begin())] += power;
    }
    return m;
}

inline json tensor_to_json(const TensorElement& x, const GradedSpace& v, const ArtinAlgebra& ring) {
    json terms = json::array();
    for (const auto& [key, c] : x) {
        json e;
        e["element"] = v.name(key.first);
        e["monomial"] = ring.monomial_name(key.second);
        e["coeff"] = to_string(c);
        terms.push_back(std::move(e));
    }
    json j;
    j["format"] = kFormat;
    j["kind"] = "mc_element";
    j["terms"] = std::move(terms);
    return j;
}

inline TensorElement tensor_from_json(const json& j, const GradedSpace& v, const ArtinAlgebra& ring) {
    require_header(j, "mc_element");
    TensorElement out;
    for (const auto& e : j.at("terms")) {
        int mono = ring.index_of(parse_monomial(e.at("monomial").get<std::string>(), ring));
        if (mono < 0) fail("monomial '" + e.at("monomial").get<std::string>() + "' is zero in the ring");
        out[{v.index_of(e.at("element").get<std::string>()), mono}] =
            parse_scalar(e.at("coeff").get<std::string>());
    }
    return tensor_cleaned(std::move(out));
}

// ---- manifests ----

struct Manifest {
    std::string dgla, package, hat, family, mu11, start;
    std::string ring, extension;
    int cutoff = 4;
    long long seed = 0;
};

inline Manifest manifest_from_json(const json& j) {
    require_header(j, "manifest");
    static const std::set<std::string> known{"format", "kind",  "dgla",  "package", "hat",
                                             "family", "mu11",  "start", "ring",    "extension",
                                             "cutoff", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) fail("manifest: unknown field '" + it.key() + "'");
    Manifest m;
    m.dgla = j.value("dgla", "");
    m.package = j.value("package", "");
    m.hat = j.value("hat", "");
    m.family = j.value("family", "");
    m.mu11 = j.value("mu11", "");
    m.start = j.value("start", "");
    m.ring = j.value("ring", "");
    m.extension = j.value("extension", "");
    m.cutoff = j.value("cutoff", 4);
    m.seed = j.value("seed", 0ll);
    return m;
}

inline json manifest_to_json(const Manifest& m) {
    json j;
    j["format"] = kFormat;
    j["kind"] = "manifest";
    if (!m.dgla.empty()) j["dgla"] = m.dgla;
    if (!m.package.empty()) j["package"] = m.package;
    if (!m.hat.empty()) j["hat"] = m.hat;
    if (!m.family.empty()) j["family"] = m.family;
    if (!m.mu11.empty()) j["mu11"] = m.mu11;
    if (!m.start.empty()) j["start"] = m.start;
    if (!m.ring.empty()) j["ring"] = m.ring;
    if (!m.extension.empty()) j["extension"] = m.extension;
    j["cutoff"] = m.cutoff;
    j["seed"] = m.seed;
    return j;
}

// ---- files ----

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write '" + path + "'");
    out << bytes;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        fail("parse error in '" + path + "': " + e.what());
    }
}

} // namespace linftylab::io
