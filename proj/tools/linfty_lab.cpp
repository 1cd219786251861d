// linfty-lab: exact validation and checks for graded Lie structures,
// operator packages, harmonic lifts, and Maurer-Cartan obstruction records.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 input error.

#include "linftylab/fixture_files.hpp"
#include "linftylab/json_io.hpp"
#include "linftylab/lift.hpp"
#include "linftylab/report.hpp"
#include "linftylab/util.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

using namespace linftylab;
namespace fs = std::filesystem;

namespace {

struct Inputs {
    io::Manifest manifest;
    fs::path base; // directory of the manifest; file paths resolve against it
    std::string digest_material;
    bool verbose = false;
    bool as_text = false;

    std::string resolve(const std::string& rel) const { return (base / rel).string(); }

    std::string slurp(const std::string& rel) {
        std::string bytes = io::read_file(resolve(rel));
        digest_material += rel;
        digest_material += bytes;
        return bytes;
    }

    io::json load(const std::string& rel) { return io::json::parse(slurp(rel)); }

    std::string digest() const { return digest_string(fnv1a64(digest_material)); }
};

Inputs load_manifest(const std::string& path, int cutoff_override, long long seed_override) {
    Inputs in;
    in.base = fs::path(path).parent_path();
    in.digest_material = io::read_file(path);
    in.manifest = io::manifest_from_json(io::json::parse(in.digest_material));
    if (cutoff_override > 0) in.manifest.cutoff = cutoff_override;
    if (seed_override >= 0) in.manifest.seed = seed_override;
    return in;
}

int emit(const Report& report, const Inputs& in) {
    std::cout << (in.as_text ? report.to_text() : report.to_json_text());
    return report.all_pass() ? 0 : 1;
}

std::string word_name(const GradedSpace& v, const Word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "(.)" : "") + v.name(w[k]);
    return s;
}

// delta^2 and the coderivation law, fanned out over words with the thread
// budget; results are folded in word order.
void delta_checks(Report& report, const Codifferential& delta) {
    std::vector<Word> words = enumerate_words(delta.word_space(), delta.cutoff());
    std::vector<CheckResult> results(words.size() * 2);
    parallel_for(words.size(), [&](std::size_t k) {
        const Word& w = words[k];
        std::string label = word_name(delta.word_space(), w);
        CElement dd = delta.apply(delta.apply_word(w));
        results[2 * k] = {"delta_squared[" + label + "]", dd.is_zero(), ""};

        TensorTable lhs, rhs;
        const GradedSpace& ws = delta.word_space();
        CElement dw = delta.apply_word(w);
        for (const auto& [word, c] : dw.terms())
            for (const CoproductTerm& t : coproduct(ws, word)) tensor_add(lhs, ws, t.left, t.right, c * t.coeff);
        for (const CoproductTerm& t : coproduct(ws, w)) {
            CElement dl = delta.apply_word(t.left);
            for (const auto& [word, c] : dl.terms()) tensor_add(rhs, ws, word, t.right, t.coeff * c);
            CElement dr = delta.apply_word(t.right);
            Scalar pass_sign = sign_pow(word_degree(ws, t.left));
            for (const auto& [word, c] : dr.terms()) tensor_add(rhs, ws, t.left, word, t.coeff * pass_sign * c);
        }
        results[2 * k + 1] = {"coderivation[" + label + "]", lhs == rhs, ""};
    });
    for (auto& r : results) report.results.push_back(std::move(r));
}

int cmd_validate(Inputs& in) {
    Report report;
    report.command = "validate";
    report.seed = in.manifest.seed;
    bool any = false;
    if (!in.manifest.dgla.empty()) {
        any = true;
        Dgla g = io::dgla_from_json(in.load(in.manifest.dgla));
        report.absorb(validate_dgla(g), "dgla.");
    }
    std::optional<OperatorPackage> pkg;
    if (!in.manifest.package.empty()) {
        any = true;
        PackageData data = io::package_from_json(in.load(in.manifest.package));
        report.absorb(validate_algebra(data.algebra), "algebra.");
        report.results.push_back({"algebra.del_derivation", check_derivation(data.del, data.algebra, "del").pass, ""});
        report.results.push_back(
            {"algebra.delbar_derivation", check_derivation(data.delbar, data.algebra, "delbar").pass, ""});
        pkg = derive_package(data);
        report.absorb(validate_kahler_identities(*pkg), "kahler.");
    }
    if (!in.manifest.hat.empty()) {
        any = true;
        if (!pkg) throw std::invalid_argument("validate: a hat assignment needs a package in the manifest");
        HatAssignment ha = io::hat_from_json(in.load(in.manifest.hat), pkg->algebra.space());
        report.absorb(validate_hat(ha, *pkg), "hat.");
    }
    if (!any) throw std::invalid_argument("validate: manifest names nothing to validate");
    report.inputs_digest = in.digest();
    return emit(report, in);
}

int cmd_delta(Inputs& in) {
    if (in.manifest.dgla.empty()) throw std::invalid_argument("delta: manifest needs a dgla");
    Dgla g = io::dgla_from_json(in.load(in.manifest.dgla));
    Report report;
    report.command = "delta";
    report.seed = in.manifest.seed;
    report.absorb(validate_dgla(g), "dgla.");
    delta_checks(report, build_delta(g, in.manifest.cutoff));
    report.inputs_digest = in.digest();
    return emit(report, in);
}

int cmd_check_linfty(Inputs& in) {
    if (in.manifest.dgla.empty() || in.manifest.family.empty())
        throw std::invalid_argument("check-linfty: manifest needs a dgla and a family");
    Dgla g = io::dgla_from_json(in.load(in.manifest.dgla));
    SuspendedData susp = suspend(g);
    io::FamilyData fd = io::family_from_json(in.load(in.manifest.family), susp.w);
    int cutoff = std::min(in.manifest.cutoff, fd.cutoff);
    WordFamily fam = fd.as_family(susp.w);
    Report report;
    report.command = "check-linfty";
    report.seed = in.manifest.seed;
    report.absorb(validate_dgla(g), "dgla.");
    report.absorb(check_family_delta_zero(fam, Codifferential(susp, cutoff)), "");
    report.inputs_digest = in.digest();
    return emit(report, in);
}

int cmd_theorem_a(Inputs& in, bool corrupt) {
    if (in.manifest.package.empty() || in.manifest.hat.empty())
        throw std::invalid_argument("theorem-a: manifest needs a package and a hat assignment");
    PackageData data = io::package_from_json(in.load(in.manifest.package));
    OperatorPackage pkg = derive_package(data);
    if (corrupt) pkg = corrupt_tau(pkg);
    HatAssignment ha = io::hat_from_json(in.load(in.manifest.hat), pkg.algebra.space());

    Report report;
    report.command = "theorem-a";
    report.seed = in.manifest.seed;
    HarmonicLiftReport lift = check_harmonic_lift(pkg, ha, in.manifest.cutoff);
    report.absorb(lift.kahler, "kahler.");
    report.absorb(lift.hat, "hat.");
    report.absorb(lift.bridge, "");
    report.absorb(lift.identities, "");
    report.absorb(lift.closure, "");

    TaylorFamily fam(pkg, ha, in.manifest.cutoff);
    CohomologyMap theta = theta_on_cohomology(fam);
    io::json theta_json = io::json::array();
    for (int k = 0; k < theta.source.classes.dim(); ++k) {
        io::json row;
        row["class"] = theta.source.classes.name(k);
        row["value"] = io::vector_to_json(theta.target, theta.matrix.column(k));
        theta_json.push_back(std::move(row));
    }
    report.extra["theta"] = std::move(theta_json);
    report.inputs_digest = in.digest();
    return emit(report, in);
}

int cmd_mc(Inputs& in) {
    if (in.manifest.dgla.empty() || in.manifest.ring.empty() || in.manifest.start.empty())
        throw std::invalid_argument("mc: manifest needs dgla, ring, and start");
    Dgla g = io::dgla_from_json(in.load(in.manifest.dgla));
    ArtinAlgebra ring = parse_ring(in.manifest.ring);
    TensorElement start = io::tensor_from_json(in.load(in.manifest.start), g.space(), ring);
    Cohomology h = tangent_space(g);

    Report report;
    report.command = "mc";
    report.seed = in.manifest.seed;
    MCElement a{&g, &ring, start};

    // order-by-order repair: at order k the correction solves
    // d(c_k) = -residual_k; an unsolvable order is the obstruction
    io::json orders = io::json::array();
    bool solved = true;
    for (int k = 2; k < ring.truncation() && solved; ++k) {
        TensorElement res = mc_residual(a);
        TensorElement at_order;
        for (const auto& [key, c] : res)
            if (ring.degree(key.second) == k) at_order.emplace(std::make_pair(key.first, key.second), c);
        if (at_order.empty()) {
            orders.push_back({{"order", k}, {"state", "clean"}});
            continue;
        }
        // one linear solve per monomial of this order
        bool order_ok = true;
        TensorElement correction;
        for (int mono = 0; mono < ring.dim(); ++mono) {
            if (ring.degree(mono) != k) continue;
            VecQ rhs = VecQ::Constant(g.space().dim(), Scalar(0));
            bool seen = false;
            for (const auto& [key, c] : at_order)
                if (key.second == mono) {
                    rhs(key.first) = -c;
                    seen = true;
                }
            if (!seen) continue;
            auto corr = solve(g.d().to_matrix(), rhs);
            if (!corr) {
                order_ok = false;
                SpaceVector component;
                for (const auto& [key, c] : at_order)
                    if (key.second == mono) component[key.first] = c;
                orders.push_back({{"order", k},
                                  {"state", "obstructed"},
                                  {"monomial", ring.monomial_name(mono)},
                                  {"class", io::vector_to_json(h.classes, cleaned(h.proj.apply(component)))}});
                break;
            }
            for (int idx = 0; idx < g.space().dim(); ++idx)
                if (!(*corr)(idx).is_zero() && g.space().degree(idx) == 1) correction[{idx, mono}] = (*corr)(idx);
        }
        if (!order_ok) {
            solved = false;
            break;
        }
        a.coeffs = tensor_add(a.coeffs, correction);
        orders.push_back({{"order", k}, {"state", "corrected"}});
    }
    if (solved && !is_mc(a)) solved = false;
    report.results.push_back({"maurer_cartan_solution", solved, ""});
    report.extra["orders"] = std::move(orders);
    if (solved) report.extra["solution"] = io::tensor_to_json(a.coeffs, g.space(), ring);
    report.inputs_digest = in.digest();
    return emit(report, in);
}

int cmd_obstruct(Inputs& in) {
    if (in.manifest.dgla.empty() || in.manifest.start.empty() || in.manifest.extension.empty())
        throw std::invalid_argument("obstruct: manifest needs dgla, start, and extension");
    Dgla g = io::dgla_from_json(in.load(in.manifest.dgla));
    SmallExtension ext = [&] {
        const std::string& e = in.manifest.extension;
        if (e == "eps") return epsilon_extension();
        if (e.rfind("t^", 0) == 0) return curvilinear_extension(std::stoi(e.substr(2)));
        throw std::invalid_argument("obstruct: extension must be 'eps' or 't^n'");
    }();
    TensorElement coeffs = io::tensor_from_json(in.load(in.manifest.start), g.space(), ext.b);
    MCElement b{&g, &ext.b, coeffs};
    Cohomology h = tangent_space(g);

    Report report;
    report.command = "obstruct";
    report.seed = in.manifest.seed;
    if (!is_mc(b)) {
        TensorElement res = mc_residual(b);
        report.results.push_back({"input_is_maurer_cartan", false, io::tensor_to_json(res, g.space(), ext.b).dump()});
        report.inputs_digest = in.digest();
        return emit(report, in);
    }
    report.results.push_back({"input_is_maurer_cartan", true, ""});
    ObstructionRecord rec = obstruction(ext, b, h);
    io::json classes = io::json::array();
    for (const auto& [j, cls] : rec.class_by_j) {
        io::json e;
        e["j"] = ext.a.monomial_name(j);
        e["class"] = io::vector_to_json(h.classes, cls);
        classes.push_back(std::move(e));
    }
    report.extra["extension"] = ext.label;
    report.extra["classes"] = std::move(classes);
    report.results.push_back({"obstruction_class_zero", rec.is_zero_class(), ""});

    if (!in.manifest.mu11.empty()) {
        GradedLinearMap mu11 = io::standalone_map_from_json(in.load(in.manifest.mu11));
        if (!(mu11.source() == g.space())) throw std::invalid_argument("obstruct: mu11 source space mismatch");
        auto verdicts = check_annihilation({rec}, mu11);
        for (const auto& v : verdicts) report.results.push_back({"annihilation[" + v.label + "]", v.pass, v.witness});
    }
    report.inputs_digest = in.digest();
    // the obstruction being nonzero is a finding, not a failure; only the
    // MC precondition and annihilation verdicts gate the exit code
    bool ok = true;
    for (const auto& r : report.results)
        if (r.name != "obstruction_class_zero" && !r.pass) ok = false;
    std::cout << (in.as_text ? report.to_text() : report.to_json_text());
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linfty-lab: exact homotopical algebra checks"};
    app.require_subcommand(1);

    std::string manifest_path;
    std::string out_dir = "fixtures";
    int cutoff_override = 0;
    long long seed_override = -1;
    bool as_text = false;
    bool verbose = false;
    bool corrupt = false;

    auto add_common = [&](CLI::App* cmd, bool needs_manifest = true) {
        if (needs_manifest) cmd->add_option("--manifest", manifest_path, "manifest JSON path")->required();
        cmd->add_option("--cutoff", cutoff_override, "override the manifest cutoff");
        cmd->add_option("--seed", seed_override, "override the manifest seed");
        cmd->add_flag("--text", as_text, "plain text report instead of JSON");
        cmd->add_flag("--json", "canonical JSON report (default)");
        cmd->add_flag("--verbose", verbose, "wall time on stderr");
    };

    CLI::App* validate = app.add_subcommand("validate", "validate DGLA / package / hat inputs");
    add_common(validate);
    CLI::App* delta = app.add_subcommand("delta", "codifferential checks: delta^2 = 0 and coderivation law");
    add_common(delta);
    CLI::App* check_linfty = app.add_subcommand("check-linfty", "check F o delta = 0 for a word family");
    add_common(check_linfty);
    CLI::App* theorem = app.add_subcommand("theorem-a", "harmonic lift: closure, proof identities, theta");
    add_common(theorem);
    theorem->add_flag("--corrupt-tau", corrupt, "negative control: drop the Green factor from tau");
    CLI::App* mc = app.add_subcommand("mc", "order-by-order Maurer-Cartan solving over a ring");
    add_common(mc);
    CLI::App* obstruct = app.add_subcommand("obstruct", "obstruction class along a small extension");
    add_common(obstruct);
    CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "write the built-in fixture files");
    fixtures_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        auto started = std::chrono::steady_clock::now();
        int rc = 2;
        if (fixtures_cmd->parsed()) {
            fixtures::write_fixture_files(out_dir);
            std::cout << "wrote fixtures to " << out_dir << "\n";
            rc = 0;
        } else {
            Inputs in = load_manifest(manifest_path, cutoff_override, seed_override);
            in.as_text = as_text;
            in.verbose = verbose;
            if (validate->parsed()) rc = cmd_validate(in);
            else if (delta->parsed()) rc = cmd_delta(in);
            else if (check_linfty->parsed()) rc = cmd_check_linfty(in);
            else if (theorem->parsed()) rc = cmd_theorem_a(in, corrupt);
            else if (mc->parsed()) rc = cmd_mc(in);
            else if (obstruct->parsed()) rc = cmd_obstruct(in);
        }
        if (verbose) {
            auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                                             started);
            std::cerr << "elapsed_us " << us.count() << "\n";
        }
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
