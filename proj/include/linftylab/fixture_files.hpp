#pragma once

// Writes the built-in fixtures and ready-made manifests as canonical JSON
// files, so the CLI can be driven end to end without hand-written inputs.

#include "linftylab/fixtures.hpp"
#include "linftylab/json_io.hpp"

#include <filesystem>

namespace linftylab::fixtures {

inline void write_fixture_files(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const io::json& j) {
        io::write_file((fs::path(dir) / name).string(), io::canonical_dump(j));
    };

    put("fix-dgla-1.json", io::dgla_to_json(dgla1()));
    put("fix-dgla-1-spectator.json", io::dgla_to_json(dgla1_with_spectator()));
    put("fix-dgla-curvilinear4.json", io::dgla_to_json(curvilinear4()));
    put("fix-dgla-gauge.json", io::dgla_to_json(gauge_rich()));

    put("fix-kah-1.json", io::package_to_json(kah1()));
    put("fix-kah-1-skew.json", io::package_to_json(kah1_skew()));
    put("fix-kah-1-ext.json", io::package_to_json(kah1_ext()));
    put("fix-kah-2.json", io::package_to_json(kah2()));

    {
        OperatorPackage ext = derive_package(kah1_ext());
        put("fix-kah-1-ext-hat.json", io::hat_to_json(kah1_ext_hat(ext), ext.algebra.space()));
        OperatorPackage two = derive_package(kah2());
        put("fix-kah-2-hat.json", io::hat_to_json(kah2_hat(two), two.algebra.space()));
    }

    // seed t*x for the quadratic fixture over C[t]/(t^2) and friends
    {
        Dgla g = dgla1();
        ArtinAlgebra dual = make_truncated_line(2);
        TensorElement seed{{{0, 0}, Scalar(1)}};
        put("start-x.json", io::tensor_to_json(seed, g.space(), dual));
    }

    // a closed family on the spectator fixture and its linear term as a map
    {
        Dgla g = dgla1_with_spectator();
        SuspendedData susp = suspend(g);
        GradedSpace target({{"m1", 0, std::nullopt}, {"m2", 1, std::nullopt}});
        std::map<Word, SpaceVector> table;
        table[{g.space().index_of("x")}] = {{0, Scalar(1)}};
        table[{g.space().index_of("m")}] = {{1, Scalar(1)}};
        put("family-dgla1-spectator.json", io::family_to_json(susp.w, target, 4, table));

        GradedLinearMap mu11(g.space(), target, -1);
        mu11.set(g.space().index_of("x"), 0, Scalar(1));
        mu11.set(g.space().index_of("m"), 1, Scalar(1));
        put("mu11-spectator.json", io::standalone_map_to_json(mu11));
    }

    auto manifest = [&](const std::string& name, io::Manifest m) { put(name, io::manifest_to_json(m)); };
    {
        io::Manifest m;
        m.dgla = "fix-dgla-1.json";
        manifest("manifest-dgla-1.json", m);
    }
    {
        io::Manifest m;
        m.package = "fix-kah-1.json";
        manifest("manifest-kah-1.json", m);
    }
    {
        io::Manifest m;
        m.package = "fix-kah-1-ext.json";
        m.hat = "fix-kah-1-ext-hat.json";
        manifest("manifest-theorem-ext.json", m);
    }
    {
        io::Manifest m;
        m.package = "fix-kah-2.json";
        m.hat = "fix-kah-2-hat.json";
        manifest("manifest-theorem-kah2.json", m);
    }
    {
        io::Manifest m;
        m.dgla = "fix-dgla-1.json";
        m.ring = "C[t]/(t^4)";
        m.start = "start-x.json";
        manifest("manifest-mc-dgla-1.json", m);
    }
    {
        io::Manifest m;
        m.dgla = "fix-dgla-1.json";
        m.start = "start-x.json";
        m.extension = "eps";
        manifest("manifest-obstruct-dgla-1.json", m);
    }
    {
        io::Manifest m;
        m.dgla = "fix-dgla-1-spectator.json";
        m.start = "start-x.json";
        m.extension = "eps";
        m.mu11 = "mu11-spectator.json";
        manifest("manifest-annihilation.json", m);
    }
    {
        io::Manifest m;
        m.dgla = "fix-dgla-1-spectator.json";
        m.family = "family-dgla1-spectator.json";
        manifest("manifest-check-linfty.json", m);
    }
}

} // namespace linftylab::fixtures
