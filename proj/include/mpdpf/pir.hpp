#pragma once

// Multi-server PIR over the honest-majority DPF. The client shares the point
// function (alpha, 1); every server returns the inner product of its
// full-domain evaluation with the database; the client adds the answers.

#include "mpdpf/dpf.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace mpdpf {

struct Database {
    FieldVector elements;

    const Modulus &modulus() const { return elements.modulus(); }
    std::uint64_t size() const { return elements.size(); }
};

/// Binary layout: u64 count, then count u64 little-endian values, each < modulus.
Database load_database(const std::filesystem::path &path, const Modulus &modulus);
void save_database(const std::filesystem::path &path, const Database &db);
Database database_from_values(const Modulus &modulus, std::span<const std::uint64_t> values);

class PirServer {
public:
    PirServer(const Database &db, unsigned index) : db_(&db), index_(index) {}
    unsigned index() const { return index_; }
    const Database &database() const { return *db_; }

private:
    const Database *db_;
    unsigned index_;
};

/// Keys for (alpha, 1) under `params`, whose modulus and N must match the database.
std::vector<DpfKey> pir_query(const SchemeParams &params, std::uint64_t alpha, RandomSource &rng);
/// sum_x eval_all(key)[x] * db[x]. The key must be addressed to this server.
FieldElement pir_answer(const PirServer &server, const DpfKey &key);
/// Requires exactly `parties` answers.
FieldElement pir_reconstruct(std::span<const FieldElement> answers, unsigned parties);

struct PirBandwidth {
    std::uint64_t upload_bits = 0;   ///< p serialized keys
    std::uint64_t download_bits = 0; ///< p field elements
    std::uint64_t trivial_bits = 0;  ///< N * ceil(lg q), sending the whole database
};

PirBandwidth pir_bandwidth(std::span<const DpfKey> keys);

} // namespace mpdpf
