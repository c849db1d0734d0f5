// Drives the mpdpf binary through files and checks stdout and exit codes.

#include "mpdpf/pir.hpp"
#include "mpdpf/serialize.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(MPDPF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::uint64_t value_of(const Run &r) {
    REQUIRE(r.code == 0);
    return std::stoull(r.out);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &f) const { return (path / f).string(); }
};

} // namespace

TEST_SUITE("cli") {

TEST_CASE("keygen, eval and decode round trip") {
    TempDir dir("mpdpf_cli_roundtrip");
    const Run kg = run("keygen --scheme ours --N 4 --p 3 --m 1 --modulus 5 --alpha 2 --beta 3 --out-dir " +
                       dir.path.string());
    REQUIRE(kg.code == 0);
    CHECK(kg.out.rfind("party,file,bytes\n", 0) == 0);
    for (int i = 0; i < 3; ++i) CHECK(fs::exists(dir / ("key_" + std::to_string(i) + ".dpfk")));
    for (unsigned x = 0; x < 4; ++x) {
        std::string inputs;
        for (int i = 0; i < 3; ++i) {
            const auto v = value_of(run("eval --key " + dir / ("key_" + std::to_string(i) + ".dpfk") + " --x " + std::to_string(x)));
            inputs += (i ? "," : "") + std::to_string(v);
        }
        CHECK(value_of(run("decode --inputs " + inputs + " --modulus 5")) == (x == 2 ? 3u : 0u));
    }
}

TEST_CASE("every scheme through eval-all") {
    for (const std::string scheme : {"ours", "boyle15", "trivial", "dcf"}) {
        TempDir dir("mpdpf_cli_" + scheme);
        const std::string mod = scheme == "boyle15" ? "7" : "15";
        REQUIRE(run("keygen --scheme " + scheme + " --N 12 --p 3 --m 1 --modulus " + mod +
                    " --alpha 5 --beta 4 --seed 9 --out-dir " + dir.path.string())
                    .code == 0);
        std::vector<std::vector<std::uint64_t>> tables;
        for (int i = 0; i < 3; ++i) {
            const std::string out = dir / ("all_" + std::to_string(i) + ".txt");
            REQUIRE(run("eval-all --key " + dir / ("key_" + std::to_string(i) + ".dpfk") + " --out " + out).code == 0);
            std::ifstream in(out);
            std::vector<std::uint64_t> t;
            for (std::uint64_t v; in >> v;) t.push_back(v);
            REQUIRE(t.size() == 12);
            tables.push_back(t);
        }
        const std::uint64_t q = std::stoull(mod);
        for (std::uint64_t x = 0; x < 12; ++x) {
            const std::uint64_t sum = (tables[0][x] + tables[1][x] + tables[2][x]) % q;
            const bool hit = scheme == "dcf" ? x <= 5 : x == 5;
            REQUIRE(sum == (hit ? 4u : 0u));
        }
        const Run info = run("inspect --key " + dir / "key_1.dpfk");
        REQUIRE(info.code == 0);
        CHECK(info.out.find("scheme," + scheme + "\n") != std::string::npos);
        CHECK(info.out.find("party,1\n") != std::string::npos);
    }
}

TEST_CASE("fixed seed gives byte-identical files") {
    for (const std::string extra : {"", " --insecure-test-prg"}) {
        TempDir a("mpdpf_cli_seed_a"), b("mpdpf_cli_seed_b");
        const std::string base = "keygen --N 100 --p 5 --m 2 --modulus 2*3*5*7 --alpha 42 --beta 11 --seed 1234" + extra;
        REQUIRE(run(base + " --out-dir " + a.path.string()).code == 0);
        REQUIRE(run(base + " --out-dir " + b.path.string()).code == 0);
        for (int i = 0; i < 5; ++i) {
            const std::string f = "key_" + std::to_string(i) + ".dpfk";
            CHECK(mpdpf::read_file(a / f) == mpdpf::read_file(b / f));
        }
        const Run info = run("inspect --key " + a / "key_0.dpfk");
        CHECK(info.out.find(extra.empty() ? "prg,aes-ctr" : "prg,test-lcg") != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    TempDir dir("mpdpf_cli_errors");
    const std::string out = " --out-dir " + dir.path.string();
    CHECK(run("keygen --N 4 --p 3 --m 2 --modulus 5" + out).code == 2);
    CHECK(run("keygen --N 4 --p 7 --m 1 --modulus 11 --scheme boyle15" + out).code == 4);
    CHECK(run("keygen --N 4 --p 3 --modulus 12" + out).code == 2);
    CHECK(run("keygen --N 4 --scheme nope" + out).code == 2);
    CHECK(run("keygen --N 4 --insecure-test-prg" + out).code == 2);
    CHECK(run("keygen --bogus").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("eval --key " + dir / "missing.dpfk" + " --x 0").code == 6);
    {
        std::ofstream junk(dir / "junk.dpfk");
        junk << "DPFK not really a key";
    }
    CHECK(run("eval --key " + dir / "junk.dpfk" + " --x 0").code == 3);
    CHECK(run("inspect --key " + dir / "junk.dpfk").code == 3);
    REQUIRE(run("keygen --N 4 --p 3 --m 1 --modulus 5" + out).code == 0);
    CHECK(run("eval --key " + dir / "key_0.dpfk" + " --x 4").code == 2);
    CHECK(run("decode --inputs 1,2,9 --modulus 5").code == 2);
    CHECK(run("bench-size --figure nope").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("decode lifts composite moduli") {
    CHECK(value_of(run("decode --inputs 1,2,3 --modulus 5")) == 1);
    CHECK(value_of(run("decode --inputs 0,0,0 --modulus 5")) == 0);
    CHECK(value_of(run("decode --inputs 100,110 --modulus 2*3*5*7")) == 0);
    CHECK(value_of(run("decode --inputs 14,2 --modulus 15")) == 1);
}

TEST_CASE("bench-size writes the dataset") {
    TempDir dir("mpdpf_cli_bench");
    const std::string csv = dir / "primorial.csv";
    REQUIRE(run("bench-size --figure primorial --max-primorial 5 --csv " + csv).code == 0);
    std::ifstream in(csv);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().rfind("scheme,x,bits\n", 0) == 0);
    CHECK(text.str().find("boyle15_crt,2310,") != std::string::npos);

    const Run stdout_run = run("bench-size --figure parties --N 1000");
    REQUIRE(stdout_run.code == 0);
    CHECK(stdout_run.out.find("bunn_it,3,2976\n") != std::string::npos);

    std::ofstream(dir / "sweep.ini") << "[bench-size]\nN = 1000\nc-it = 2\n";
    const Run cfg = run("--config " + dir / "sweep.ini" + " bench-size --figure parties");
    REQUIRE(cfg.code == 0);
    CHECK(cfg.out.find("bunn_it,3,5952\n") != std::string::npos);

    const Run prg = run("bench-size --figure domain --max-domain 10000 --bunn-prg-formula 'sqrt(N)*C*(lambda+L)'");
    REQUIRE(prg.code == 0);
    CHECK(prg.out.find("bunn_prg,100,") != std::string::npos);
}

TEST_CASE("pir-demo recovers the record") {
    TempDir dir("mpdpf_cli_pir");
    const mpdpf::Modulus mod = mpdpf::Modulus::parse("2147483647");
    std::vector<std::uint64_t> values(1000);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (i * 2654435761u) % mod.value();
    mpdpf::save_database(dir / "db.bin", mpdpf::database_from_values(mod, values));
    const Run r = run("pir-demo --db " + dir / "db.bin" + " --index 321 --p 5 --m 2 --seed 3");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "index,recovered,upload_bits,download_bits,trivial_bits");
    CHECK(row.rfind("321," + std::to_string(values[321]) + ",", 0) == 0);
    CHECK(run("pir-demo --db " + dir / "db.bin" + " --index 1000").code == 2);
}

}
