#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linftylab/fixture_files.hpp"

#include <cstdlib>
#include <filesystem>

#ifndef LINFTY_LAB_CLI_PATH
#define LINFTY_LAB_CLI_PATH "linfty-lab"
#endif

using namespace linftylab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "linfty-lab-cli-io";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    fs::path tmp = fs::temp_directory_path() / "linfty-lab-cli-out.txt";
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(LINFTY_LAB_CLI_PATH) + " " + args + " > " +
                      tmp.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WEXITSTATUS(rc);
    r.out = io::read_file(tmp.string());
    return r;
}

} // namespace

TEST_CASE("serialize, parse, serialize is byte identical for every fixture") {
    // DGLAs
    for (const Dgla& g : {fixtures::dgla1(), fixtures::dgla1_with_spectator(), fixtures::curvilinear4(),
                          fixtures::gauge_rich()}) {
        std::string s1 = io::canonical_dump(io::dgla_to_json(g));
        Dgla back = io::dgla_from_json(io::json::parse(s1));
        std::string s2 = io::canonical_dump(io::dgla_to_json(back));
        CHECK(s1 == s2);
        CHECK(back.space() == g.space());
        CHECK(back.stored_brackets() == g.stored_brackets());
    }
    // packages
    for (const PackageData& d : {fixtures::kah1(), fixtures::kah1_skew(), fixtures::kah1_ext(), fixtures::kah2()}) {
        std::string s1 = io::canonical_dump(io::package_to_json(d));
        PackageData back = io::package_from_json(io::json::parse(s1));
        std::string s2 = io::canonical_dump(io::package_to_json(back));
        CHECK(s1 == s2);
    }
    // hats
    OperatorPackage two = derive_package(fixtures::kah2());
    HatAssignment ha = fixtures::kah2_hat(two);
    std::string h1 = io::canonical_dump(io::hat_to_json(ha, two.algebra.space()));
    HatAssignment hb = io::hat_from_json(io::json::parse(h1), two.algebra.space());
    std::string h2 = io::canonical_dump(io::hat_to_json(hb, two.algebra.space()));
    CHECK(h1 == h2);
    CHECK(validate_hat(hb, two).all_pass());
}

TEST_CASE("scalars as strings survive the wire") {
    GradedSpace v({{"a", 0, std::nullopt}, {"b", 1, std::nullopt}});
    GradedLinearMap f(v, v, 1);
    f.set(0, 1, Scalar(Rational(1, 2), Rational(1, 2)));
    io::json j = io::standalone_map_to_json(f);
    CHECK(j.at("entries")[0].at("coeff") == "1/2+1/2*i");
    GradedLinearMap back = io::standalone_map_from_json(j);
    CHECK(back == f);
}

TEST_CASE("manifests reject unknown fields and wrong versions") {
    io::json good;
    good["format"] = "linfty-lab/1";
    good["kind"] = "manifest";
    good["dgla"] = "g.json";
    CHECK(io::manifest_from_json(good).dgla == "g.json");

    io::json unknown = good;
    unknown["frobnicate"] = 1;
    CHECK_THROWS_WITH(io::manifest_from_json(unknown), doctest::Contains("unknown field"));

    io::json badver = good;
    badver["format"] = "linfty-lab/2";
    CHECK_THROWS_WITH(io::manifest_from_json(badver), doctest::Contains("format"));
}

TEST_CASE("mc element wire format round trips through monomial names") {
    Dgla g = fixtures::dgla1();
    ArtinAlgebra ring = parse_ring("C[t]/(t^4)");
    TensorElement x{{{0, 0}, Scalar(1)}, {{0, 2}, Scalar::fraction(-2, 3)}};
    io::json j = io::tensor_to_json(x, g.space(), ring);
    TensorElement back = io::tensor_from_json(j, g.space(), ring);
    CHECK(back == x);
}

TEST_CASE("CLI: exit codes and determinism across runs and thread counts") {
    fs::path dir = scratch_dir();
    RunResult wrote = run_cli("fixtures --out " + dir.string());
    REQUIRE(wrote.code == 0);

    // 0 on all-pass
    RunResult ok = run_cli("validate --manifest " + (dir / "manifest-dgla-1.json").string());
    CHECK(ok.code == 0);

    // 1 on a failing check (corrupted tau)
    RunResult bad = run_cli("theorem-a --manifest " + (dir / "manifest-theorem-kah2.json").string() +
                            " --corrupt-tau");
    CHECK(bad.code == 1);

    // 2 on input errors: missing file and unparsable manifest
    RunResult missing = run_cli("validate --manifest " + (dir / "no-such.json").string());
    CHECK(missing.code == 2);
    io::write_file((dir / "broken.json").string(), "{ not json");
    RunResult broken = run_cli("validate --manifest " + (dir / "broken.json").string());
    CHECK(broken.code == 2);

    // byte-identical reports across repeated runs and under parallelism
    std::string m = (dir / "manifest-theorem-kah2.json").string();
    RunResult a = run_cli("theorem-a --manifest " + m);
    RunResult b = run_cli("theorem-a --manifest " + m);
    RunResult c = run_cli("theorem-a --manifest " + m, "LINFTY_LAB_THREADS=8");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    std::string dm = (dir / "manifest-dgla-1.json").string();
    RunResult d1 = run_cli("delta --manifest " + dm, "LINFTY_LAB_THREADS=1");
    RunResult d8 = run_cli("delta --manifest " + dm, "LINFTY_LAB_THREADS=8");
    CHECK(d1.out == d8.out);
    CHECK(d1.code == 0);
}

TEST_CASE("CLI: command payloads") {
    fs::path dir = scratch_dir();
    REQUIRE(run_cli("fixtures --out " + dir.string()).code == 0);

    // obstruct reports the (1/2)[y] class along eps
    RunResult ob = run_cli("obstruct --manifest " + (dir / "manifest-obstruct-dgla-1.json").string());
    CHECK(ob.code == 0);
    io::json report = io::json::parse(ob.out);
    CHECK(report.at("extra").at("classes")[0].at("class").at("h2_0") == "1/2");

    // the same class trips the non-liftability verdict in mc over C[t]/(t^4)
    RunResult mc = run_cli("mc --manifest " + (dir / "manifest-mc-dgla-1.json").string());
    CHECK(mc.code == 1);
    io::json mcr = io::json::parse(mc.out);
    CHECK(mcr.at("extra").at("orders")[0].at("state") == "obstructed");

    // annihilation passes end to end
    RunResult an = run_cli("obstruct --manifest " + (dir / "manifest-annihilation.json").string());
    CHECK(an.code == 0);
    io::json anr = io::json::parse(an.out);
    bool saw = false;
    for (const auto& r : anr.at("results"))
        if (r.at("name").get<std::string>().rfind("annihilation", 0) == 0) {
            saw = true;
            CHECK(r.at("pass") == true);
        }
    CHECK(saw);

    // check-linfty on the closed family
    RunResult cf = run_cli("check-linfty --manifest " + (dir / "manifest-check-linfty.json").string());
    CHECK(cf.code == 0);

    // theorem-a emits a theta matrix with the nonzero entries
    RunResult th = run_cli("theorem-a --manifest " + (dir / "manifest-theorem-kah2.json").string());
    CHECK(th.code == 0);
    io::json tr = io::json::parse(th.out);
    bool theta_nonzero = false;
    for (const auto& row : tr.at("extra").at("theta"))
        if (!row.at("value").empty()) theta_nonzero = true;
    CHECK(theta_nonzero);
}

TEST_CASE("fixture files on disk re-serialize to their own bytes") {
    fs::path dir = scratch_dir();
    fixtures::write_fixture_files(dir.string());
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string bytes = io::read_file(entry.path().string());
        io::json j = io::json::parse(bytes);
        if (j.at("kind") == "dgla") {
            CHECK(io::canonical_dump(io::dgla_to_json(io::dgla_from_json(j))) == bytes);
        } else if (j.at("kind") == "package") {
            CHECK(io::canonical_dump(io::package_to_json(io::package_from_json(j))) == bytes);
        } else if (j.at("kind") == "manifest") {
            CHECK(io::canonical_dump(io::manifest_to_json(io::manifest_from_json(j))) == bytes);
        }
    }
}
