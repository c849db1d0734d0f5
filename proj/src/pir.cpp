#include "mpdpf/pir.hpp"

#include "mpdpf/errors.hpp"
#include "mpdpf/serialize.hpp"

namespace mpdpf {

Database database_from_values(const Modulus &modulus, std::span<const std::uint64_t> values) {
    FieldVector elements(modulus, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= modulus.value()) throw ParameterError("database value not below the modulus");
        elements.set(i, FieldElement::from_integer(modulus, values[i]));
    }
    return Database{std::move(elements)};
}

Database load_database(const std::filesystem::path &path, const Modulus &modulus) {
    const auto bytes = read_file(path);
    auto u64_at = [&](std::size_t offset) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < 8; ++i) v |= std::uint64_t{bytes[offset + i]} << (8 * i);
        return v;
    };
    if (bytes.size() < 8) throw FormatError("database file truncated");
    const std::uint64_t count = u64_at(0);
    if (count == 0 || (bytes.size() - 8) / 8 != count || (bytes.size() - 8) % 8 != 0) {
        throw FormatError("database file length does not match its element count");
    }
    std::vector<std::uint64_t> values(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        values[i] = u64_at(8 + 8 * i);
        if (values[i] >= modulus.value()) throw FormatError("database value not below the modulus");
    }
    return database_from_values(modulus, values);
}

void save_database(const std::filesystem::path &path, const Database &db) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(8 + 8 * db.size());
    auto put = [&](std::uint64_t v) {
        for (unsigned i = 0; i < 8; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    put(db.size());
    for (std::uint64_t i = 0; i < db.size(); ++i) put(db.elements.at(i).lift());
    write_file(path, bytes);
}

std::vector<DpfKey> pir_query(const SchemeParams &params, std::uint64_t alpha, RandomSource &rng) {
    return gen(PointDescription{alpha, FieldElement::one(params.modulus)}, params, rng);
}

FieldElement pir_answer(const PirServer &server, const DpfKey &key) {
    const Database &db = server.database();
    if (key.party != server.index()) throw ParameterError("key is addressed to a different server");
    if (!(key.params.modulus == db.modulus()) || key.params.domain_size != db.size()) {
        throw ParameterError("query parameters do not match the database");
    }
    const FieldVector share = eval_all(key);
    const Modulus &mod = db.modulus();
    std::vector<std::uint64_t> residues(mod.factor_count());
    for (std::size_t f = 0; f < mod.factor_count(); ++f) {
        const std::uint64_t q = mod.factor(f);
        const auto a = share.plane(f);
        const auto b = db.elements.plane(f);
        std::uint64_t acc = 0;
        for (std::uint64_t x = 0; x < db.size(); ++x) acc = (acc + std::uint64_t{a[x]} * b[x]) % q;
        residues[f] = acc;
    }
    return FieldElement(mod, std::move(residues));
}

FieldElement pir_reconstruct(std::span<const FieldElement> answers, unsigned parties) {
    return decode(answers, parties);
}

PirBandwidth pir_bandwidth(std::span<const DpfKey> keys) {
    if (keys.empty()) throw ParameterError("no keys");
    const auto &params = keys.front().params;
    PirBandwidth out;
    for (const auto &key : keys) out.upload_bits += 8 * serialize(key).size();
    out.download_bits = keys.size() * params.modulus.element_bits();
    out.trivial_bits = params.domain_size * bit_length_of_range(params.modulus.value());
    return out;
}

} // namespace mpdpf
