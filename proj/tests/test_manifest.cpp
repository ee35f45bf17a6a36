#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "gldpc/ensemble_opt.hpp"
#include "gldpc/manifest.hpp"

using namespace gldpc;
namespace fs = std::filesystem;

namespace {
fs::path scratch_dir(const char* tag) {
    fs::path p = fs::temp_directory_path() / (std::string("gldpc_manifest_") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void put(const fs::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    f << body;
}
}  // namespace

TEST_CASE("file digest pins: FNV-1a over raw bytes") {
    fs::path dir = scratch_dir("digest");
    put(dir / "empty", "");
    put(dir / "a", "a");
    put(dir / "abc", "abc");
    CHECK(file_digest((dir / "empty").string()) == "cbf29ce484222325");
    CHECK(file_digest((dir / "a").string()) == "af63dc4c8601ec8c");
    CHECK(file_digest((dir / "abc").string()) == "e71fa2190541574b");
    // Equal content, distinct names -> equal digests.
    put(dir / "a2", "a");
    CHECK(file_digest((dir / "a2").string()) == file_digest((dir / "a").string()));
    CHECK(file_digest((dir / "a").string()) != file_digest((dir / "abc").string()));
    CHECK_THROWS_AS(file_digest((dir / "nope").string()), std::runtime_error);
}

TEST_CASE("manifest round trip preserves every field") {
    fs::path dir = scratch_dir("roundtrip");
    RunManifest m;
    m.command = "construct";
    m.argv = {"gldpc", "construct", "--mode", "regular", "--out-dir", "x"};
    m.params = {{"n_v", 400}, {"rate", "1/2"}, {"tol", 1e-4}};
    m.seed = 123456789ull;
    m.inputs = {{"ensemble.json", "cbf29ce484222325"}};
    m.outputs = {{"code.alist", "af63dc4c8601ec8c"}, {"code.json", "e71fa2190541574b"}};
    m.wall_seconds = 2.5;
    std::string path = (dir / "run.manifest.json").string();
    write_manifest(m, path);
    RunManifest r = read_manifest(path);
    CHECK(r.command == m.command);
    CHECK(r.argv == m.argv);
    CHECK(r.params == m.params);
    CHECK(r.seed == m.seed);
    CHECK(r.version == kVersion);
    CHECK(r.inputs == m.inputs);
    CHECK(r.outputs == m.outputs);
    CHECK(r.wall_seconds == doctest::Approx(2.5));
}

TEST_CASE("manifest reader names the byte offset on malformed input") {
    fs::path dir = scratch_dir("malformed");
    put(dir / "bad.json", "{\"command\": \"x\", ");
    try {
        read_manifest((dir / "bad.json").string());
        FAIL("expected a parse failure");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("identical seeds reproduce byte-identical artifacts") {
    fs::path a = scratch_dir("replay_a");
    fs::path b = scratch_dir("replay_b");
    DegreeCountVector degs;
    degs.pairs = {{2, 10}, {3, 2}};
    for (const fs::path& dir : {a, b}) {
        PdProtographBuild built = build_doped_protograph(6, 12, degs, 7, hamming(3), 42);
        LiftedPcm lifted = lift(built.base, 7, 7, 43);
        PdGldpcCode code = dope_partial(built.base, lifted, built.spec);
        save_code(code, (dir / "c.alist").string(), (dir / "c.json").string());
    }
    CHECK(file_digest((a / "c.alist").string()) == file_digest((b / "c.alist").string()));
    CHECK(file_digest((a / "c.json").string()) == file_digest((b / "c.json").string()));
}
