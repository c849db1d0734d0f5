// mpdpf: key generation, evaluation and size benchmarks from the shell.
//
// stdout carries only machine-readable output (a value per line or CSV);
// diagnostics go to stderr. Exit codes: 2 parameter, 3 format, 4 guard,
// 5 internal, 6 I/O.

#include "mpdpf/baselines.hpp"
#include "mpdpf/dcf.hpp"
#include "mpdpf/errors.hpp"
#include "mpdpf/pir.hpp"
#include "mpdpf/serialize.hpp"
#include "mpdpf/sizing.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mpdpf;

enum ExitCode : int {
    kOk = 0,
    kParameter = 2,
    kFormat = 3,
    kGuard = 4,
    kInternal = 5,
    kIo = 6,
};

struct RandomChoice {
    std::unique_ptr<RandomSource> rng;
    PrgAlgorithm prg = PrgAlgorithm::kAesCtr;
};

// --seed alone keeps production primitives; only --insecure-test-prg switches
// to the mt19937 stream and the LCG expansion.
RandomChoice choose_random(const std::optional<std::uint64_t> &seed, bool insecure) {
    if (insecure && !seed) throw ParameterError("--insecure-test-prg requires --seed");
    if (seed && insecure) return {std::make_unique<DeterministicRandom>(*seed), PrgAlgorithm::kTestLcg};
    if (seed) return {std::make_unique<SeededDrbg>(*seed), PrgAlgorithm::kAesCtr};
    return {std::make_unique<SystemRandom>(), PrgAlgorithm::kAesCtr};
}

GridMode parse_grid(const std::string &text) {
    if (text == "auto") return GridMode::kAuto;
    if (text == "square") return GridMode::kSquare;
    throw ParameterError("--grid must be auto or square");
}

FieldElement parse_element(const Modulus &mod, std::uint64_t v, const char *what) {
    if (v >= mod.value()) throw ParameterError(std::string(what) + " must be below the modulus");
    return FieldElement::from_integer(mod, v);
}

AnyKey load_key(const std::string &path) { return parse_key(read_file(path)); }

std::string prg_name(PrgAlgorithm a) { return a == PrgAlgorithm::kAesCtr ? "aes-ctr" : "test-lcg"; }

std::string scheme_name(SchemeTag tag) {
    switch (tag) {
    case SchemeTag::kHonestMajority: return "ours";
    case SchemeTag::kBoyle: return "boyle15";
    case SchemeTag::kTrivial: return "trivial";
    case SchemeTag::kComparison: return "dcf";
    }
    return "?";
}

// ---- keygen ---------------------------------------------------------------

struct KeygenArgs {
    std::string scheme = "ours";
    std::uint64_t n = 0;
    unsigned p = 3;
    std::optional<unsigned> m;
    std::string modulus = "2";
    std::uint64_t alpha = 0;
    std::uint64_t beta = 1;
    unsigned lambda = 128;
    std::string grid = "auto";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool insecure = false;
};

int run_keygen(const KeygenArgs &a) {
    const Modulus mod = Modulus::parse(a.modulus);
    const unsigned m = a.m.value_or(default_corruption(a.p));
    const GridMode grid = parse_grid(a.grid);
    RandomChoice rc = choose_random(a.seed, a.insecure);
    const PointDescription point{a.alpha, parse_element(mod, a.beta, "--beta")};

    std::vector<AnyKey> keys;
    if (a.scheme == "ours" || a.scheme == "dcf") {
        const SchemeParams params = make_params(a.p, m, a.lambda, mod, a.n, grid, rc.prg);
        if (a.scheme == "ours") {
            for (auto &k : gen(point, params, *rc.rng)) keys.emplace_back(std::move(k));
        } else {
            for (auto &k : dcf_gen(point, params, *rc.rng)) keys.emplace_back(std::move(k));
        }
    } else if (a.scheme == "boyle15") {
        const SchemeParams params = make_boyle_params(a.p, m, a.lambda, mod, a.n, grid, rc.prg);
        for (auto &k : boyle_gen(point, params, *rc.rng)) keys.emplace_back(std::move(k));
    } else if (a.scheme == "trivial") {
        const SchemeParams params = make_trivial_params(a.p, m, a.lambda, mod, a.n);
        for (auto &k : trivial_gen(point, params, *rc.rng)) keys.emplace_back(std::move(k));
    } else {
        throw ParameterError("--scheme must be ours, boyle15, trivial or dcf");
    }

    std::filesystem::create_directories(a.out_dir);
    std::cout << "party,file,bytes\n";
    for (const auto &key : keys) {
        const auto bytes = serialize(key);
        const auto path = std::filesystem::path(a.out_dir) / ("key_" + std::to_string(key_party(key)) + ".dpfk");
        write_file(path, bytes);
        std::cout << key_party(key) << ',' << path.string() << ',' << bytes.size() << '\n';
    }
    return kOk;
}

// ---- eval / eval-all / decode / inspect -----------------------------------------

int run_eval(const std::string &key_path, std::uint64_t x) {
    const AnyKey key = load_key(key_path);
    std::cout << eval_any(key, x).lift() << '\n';
    return kOk;
}

int run_eval_all(const std::string &key_path, const std::string &out_path) {
    const AnyKey key = load_key(key_path);
    const FieldVector all = eval_all_any(key);
    std::ostringstream text;
    for (std::size_t x = 0; x < all.size(); ++x) text << all.at(x).lift() << '\n';
    const std::string s = text.str();
    write_file(out_path, std::span(reinterpret_cast<const std::uint8_t *>(s.data()), s.size()));
    return kOk;
}

int run_decode(const std::vector<std::uint64_t> &inputs, const std::string &modulus) {
    const Modulus mod = Modulus::parse(modulus);
    if (inputs.empty()) throw ParameterError("--inputs is empty");
    std::vector<FieldElement> shares;
    for (auto v : inputs) shares.push_back(parse_element(mod, v, "each input"));
    std::cout << decode(shares, static_cast<unsigned>(shares.size())).lift() << '\n';
    return kOk;
}

int run_inspect(const std::string &key_path) {
    const auto bytes = read_file(key_path);
    const AnyKey key = parse_key(bytes);
    const SchemeParams &p = key_params(key);
    std::cout << "field,value\n"
              << "scheme," << scheme_name(scheme_tag(key)) << '\n'
              << "version," << unsigned{kKeyFormatVersion} << '\n'
              << "party," << key_party(key) << '\n'
              << "parties," << p.parties << '\n'
              << "corruption," << p.corruption << '\n'
              << "lambda," << p.lambda << '\n'
              << "domain_size," << p.domain_size << '\n'
              << "rows," << p.rows << '\n'
              << "cols," << p.cols << '\n'
              << "modulus," << p.modulus.to_string() << '\n'
              << "prg," << prg_name(p.prg.algorithm) << '\n'
              << "prg_output_len," << p.prg.output_len << '\n'
              << "bytes," << bytes.size() << '\n';
    return kOk;
}

// ---- bench-size -----------------------------------------------------------------

struct BenchArgs {
    std::string figure;
    std::string csv = "-";
    std::string grid = "auto";
    FigureConfig config;
    std::optional<unsigned> m;
    std::string bunn_prg_formula;
};

int run_bench(BenchArgs a) {
    const FigureId id = parse_figure_id(a.figure);
    a.config.grid = parse_grid(a.grid);
    a.config.corruption = a.m;
    if (!a.bunn_prg_formula.empty()) a.config.bunn_prg_formula = a.bunn_prg_formula;
    const FigureDataset data = emit_figure(id, a.config);
    if (a.csv == "-") {
        write_csv(data, std::cout);
    } else {
        std::ofstream out(a.csv);
        if (!out) throw IoError("cannot open " + a.csv);
        write_csv(data, out);
        if (!out.flush()) throw IoError("write failed: " + a.csv);
    }
    return kOk;
}

// ---- pir-demo -------------------------------------------------------------------

struct PirArgs {
    std::string db;
    std::uint64_t index = 0;
    unsigned p = 5;
    std::optional<unsigned> m;
    std::string modulus = "2147483647";
    unsigned lambda = 128;
    std::string grid = "auto";
    std::optional<std::uint64_t> seed;
    bool insecure = false;
};

int run_pir(const PirArgs &a) {
    const Modulus mod = Modulus::parse(a.modulus);
    const Database db = load_database(a.db, mod);
    if (a.index >= db.size()) throw ParameterError("--index is outside the database");
    RandomChoice rc = choose_random(a.seed, a.insecure);
    const SchemeParams params =
        make_params(a.p, a.m.value_or(default_corruption(a.p)), a.lambda, mod, db.size(), parse_grid(a.grid), rc.prg);

    const auto keys = pir_query(params, a.index, *rc.rng);
    std::vector<FieldElement> answers;
    for (unsigned i = 0; i < a.p; ++i) answers.push_back(pir_answer(PirServer(db, i), keys[i]));
    const FieldElement recovered = pir_reconstruct(answers, a.p);
    const PirBandwidth bw = pir_bandwidth(keys);

    std::cout << "index,recovered,upload_bits,download_bits,trivial_bits\n"
              << a.index << ',' << recovered.lift() << ',' << bw.upload_bits << ',' << bw.download_bits << ','
              << bw.trivial_bits << '\n';
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multi-party distributed point functions"};
    app.require_subcommand(1);
    // Sweep settings may come from an INI/TOML file under a [bench-size] section.
    app.set_config("--config", "", "INI or TOML file; put bench-size options under [bench-size]");
    std::function<int()> action;

    KeygenArgs kg;
    auto *keygen = app.add_subcommand("keygen", "generate p keys and write key_<i>.dpfk");
    keygen->add_option("--scheme", kg.scheme, "ours|boyle15|trivial|dcf")->capture_default_str();
    keygen->add_option("--N", kg.n, "domain size")->required();
    keygen->add_option("--p", kg.p, "parties")->capture_default_str();
    keygen->add_option("--m", kg.m, "corruption bound, default floor((p-1)/2)");
    keygen->add_option("--modulus", kg.modulus, "decimal value or factor list like 2*3*5")->capture_default_str();
    keygen->add_option("--alpha", kg.alpha)->capture_default_str();
    keygen->add_option("--beta", kg.beta)->capture_default_str();
    keygen->add_option("--lambda", kg.lambda, "seed bits")->capture_default_str();
    keygen->add_option("--grid", kg.grid, "auto|square")->capture_default_str();
    keygen->add_option("--out-dir", kg.out_dir)->capture_default_str();
    keygen->add_option("--seed", kg.seed, "reproducible key derivation");
    keygen->add_flag("--insecure-test-prg", kg.insecure, "with --seed: mt19937 randomness and the test PRG");
    keygen->callback([&] { action = [&] { return run_keygen(kg); }; });

    std::string key_path, out_path;
    std::uint64_t x = 0;
    auto *eval_cmd = app.add_subcommand("eval", "print one share value");
    eval_cmd->add_option("--key", key_path)->required();
    eval_cmd->add_option("--x", x)->required();
    eval_cmd->callback([&] { action = [&] { return run_eval(key_path, x); }; });

    auto *eval_all_cmd = app.add_subcommand("eval-all", "write every share value, one per line");
    eval_all_cmd->add_option("--key", key_path)->required();
    eval_all_cmd->add_option("--out", out_path)->required();
    eval_all_cmd->callback([&] { action = [&] { return run_eval_all(key_path, out_path); }; });

    std::vector<std::uint64_t> inputs;
    std::string decode_modulus;
    auto *decode_cmd = app.add_subcommand("decode", "sum shares and print the lifted integer");
    decode_cmd->add_option("--inputs", inputs)->required()->delimiter(',');
    decode_cmd->add_option("--modulus", decode_modulus)->required();
    decode_cmd->callback([&] { action = [&] { return run_decode(inputs, decode_modulus); }; });

    BenchArgs bench;
    FigureConfig &fc = bench.config;
    auto *bench_cmd = app.add_subcommand("bench-size", "write a key-size sweep as CSV");
    bench_cmd->add_option("--figure", bench.figure, "modulus|primorial|domain|parties")->required();
    bench_cmd->add_option("--csv", bench.csv, "output file, - for stdout")->capture_default_str();
    bench_cmd->add_option("--p", fc.parties)->capture_default_str();
    bench_cmd->add_option("--m", bench.m, "default floor((p-1)/2)");
    bench_cmd->add_option("--lambda", fc.lambda)->capture_default_str();
    bench_cmd->add_option("--N", fc.domain_size)->capture_default_str();
    bench_cmd->add_option("--grid", bench.grid)->capture_default_str();
    bench_cmd->add_option("--c-it", fc.c_it, "constant for the information-theoretic Bunn et al. curve")
        ->capture_default_str();
    bench_cmd->add_option("--bunn-prg-formula", bench.bunn_prg_formula, "bits as a formula of N,p,m,q,L,C,lambda");
    bench_cmd->add_option("--max-modulus", fc.max_modulus)->capture_default_str();
    bench_cmd->add_flag("--primes-only", fc.primes_only);
    bench_cmd->add_option("--max-primorial", fc.max_primorial)->capture_default_str();
    bench_cmd->add_option("--sweep-modulus", fc.sweep_modulus, "modulus for domain and party sweeps")
        ->capture_default_str();
    bench_cmd->add_option("--min-domain", fc.min_domain)->capture_default_str();
    bench_cmd->add_option("--max-domain", fc.max_domain)->capture_default_str();
    bench_cmd->add_option("--points-per-decade", fc.points_per_decade)->capture_default_str();
    bench_cmd->add_option("--party-counts", fc.party_counts)->delimiter(',');
    bench_cmd->callback([&] { action = [&] { return run_bench(bench); }; });

    PirArgs pir;
    auto *pir_cmd = app.add_subcommand("pir-demo", "query one database index through p simulated servers");
    pir_cmd->add_option("--db", pir.db, "u64 count, then u64 little-endian values")->required();
    pir_cmd->add_option("--index", pir.index)->required();
    pir_cmd->add_option("--p", pir.p)->capture_default_str();
    pir_cmd->add_option("--m", pir.m);
    pir_cmd->add_option("--modulus", pir.modulus)->capture_default_str();
    pir_cmd->add_option("--lambda", pir.lambda)->capture_default_str();
    pir_cmd->add_option("--grid", pir.grid)->capture_default_str();
    pir_cmd->add_option("--seed", pir.seed);
    pir_cmd->add_flag("--insecure-test-prg", pir.insecure);
    pir_cmd->callback([&] { action = [&] { return run_pir(pir); }; });

    auto *inspect_cmd = app.add_subcommand("inspect", "print the header fields of a key file");
    inspect_cmd->add_option("--key", key_path)->required();
    inspect_cmd->callback([&] { action = [&] { return run_inspect(key_path); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kParameter;
    }

    try {
        return action();
    } catch (const ParameterError &e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kParameter;
    } catch (const FormatError &e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kFormat;
    } catch (const GuardError &e) {
        std::cerr << "guard error: " << e.what() << '\n';
        return kGuard;
    } catch (const IoError &e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
