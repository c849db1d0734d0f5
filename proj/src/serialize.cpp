#include "mpdpf/serialize.hpp"

#include "mpdpf/errors.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace mpdpf {

namespace {

constexpr std::uint8_t kMagic[4] = {'D', 'P', 'F', 'K'};

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint64_t v) { le(v, 2); }
    void u32(std::uint64_t v) { le(v, 4); }
    void u64(std::uint64_t v) { le(v, 8); }
    void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

    void element(const FieldElement &e) {
        for (std::size_t f = 0; f < e.modulus().factor_count(); ++f) {
            le(e.residue(f), byte_length_of_range(e.modulus().factor(f)));
        }
    }

    void elements(const FieldVector &v) {
        const auto &mod = v.modulus();
        for (std::size_t k = 0; k < v.size(); ++k) {
            for (std::size_t f = 0; f < mod.factor_count(); ++f) le(v.plane(f)[k], byte_length_of_range(mod.factor(f)));
        }
    }

    void element_at(const FieldVector &v, std::size_t k) {
        const auto &mod = v.modulus();
        for (std::size_t f = 0; f < mod.factor_count(); ++f) le(v.plane(f)[k], byte_length_of_range(mod.factor(f)));
    }

    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    void le(std::uint64_t v, unsigned n) {
        for (unsigned i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
    std::uint64_t u64() { return le(8); }

    std::span<const std::uint8_t> bytes(std::size_t n) {
        need(n);
        auto out = in_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    Seed seed(unsigned lambda) {
        auto b = bytes(lambda / 8);
        Seed s(std::vector<std::uint8_t>(b.begin(), b.end()));
        if (s.is_zero()) throw FormatError("all-zero seed in key payload");
        return s;
    }

    std::uint64_t residue(std::uint64_t q) {
        const std::uint64_t v = le(byte_length_of_range(q));
        if (v >= q) throw FormatError("field element residue out of range");
        return v;
    }

    FieldElement element(const Modulus &mod) {
        std::vector<std::uint64_t> residues(mod.factor_count());
        for (std::size_t f = 0; f < residues.size(); ++f) residues[f] = residue(mod.factor(f));
        return FieldElement(mod, std::move(residues));
    }

    void element_into(FieldVector &v, std::size_t k) {
        const auto &mod = v.modulus();
        for (std::size_t f = 0; f < mod.factor_count(); ++f) {
            v.plane(f)[k] = static_cast<std::uint32_t>(residue(mod.factor(f)));
        }
    }

    FieldVector elements(const Modulus &mod, std::uint64_t count) {
        need(count * mod.element_bytes());
        FieldVector v(mod, count);
        for (std::uint64_t k = 0; k < count; ++k) element_into(v, k);
        return v;
    }

    std::size_t remaining() const { return in_.size() - pos_; }

    void finish() const {
        if (pos_ != in_.size()) throw FormatError("trailing bytes after key payload");
    }

private:
    void need(std::size_t n) const {
        if (n > in_.size() - pos_) throw FormatError("key file truncated");
    }
    std::uint64_t le(unsigned n) {
        need(n);
        std::uint64_t v = 0;
        for (unsigned i = 0; i < n; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
        pos_ += n;
        return v;
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

void write_header(Writer &w, SchemeTag tag, unsigned party, const SchemeParams &params) {
    w.bytes(kMagic);
    w.u8(kKeyFormatVersion);
    w.u8(static_cast<std::uint8_t>(tag));
    w.u16(party);
    w.u16(params.parties);
    w.u16(params.corruption);
    w.u16(params.lambda);
    w.u64(params.domain_size);
    w.u32(params.rows);
    w.u32(params.cols);
    w.u8(static_cast<std::uint8_t>(params.modulus.factor_count()));
    for (auto q : params.modulus.factors()) w.u64(q);
    w.u8(static_cast<std::uint8_t>(params.prg.algorithm));
    w.u16(params.prg.lambda);
    w.u32(params.prg.output_len);
}

struct Header {
    SchemeTag tag;
    unsigned party;
    SchemeParams params;
};

Header read_header(Reader &r) {
    const auto magic = r.bytes(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("bad magic: not a DPFK key file");
    if (r.u8() != kKeyFormatVersion) throw FormatError("unsupported key format version");
    const std::uint8_t tag = r.u8();
    if (tag < 1 || tag > 4) throw FormatError("unknown scheme tag " + std::to_string(tag));

    Header h{static_cast<SchemeTag>(tag), r.u16(), {}};
    auto &params = h.params;
    params.parties = r.u16();
    params.corruption = r.u16();
    params.lambda = r.u16();
    params.domain_size = r.u64();
    params.rows = r.u32();
    params.cols = r.u32();
    const std::uint8_t factor_count = r.u8();
    std::vector<std::uint64_t> factors(factor_count);
    for (auto &q : factors) q = r.u64();
    try {
        params.modulus = Modulus(std::move(factors));
    } catch (const ParameterError &e) {
        throw FormatError(std::string("invalid modulus in key header: ") + e.what());
    }
    const std::uint8_t prg_tag = r.u8();
    if (!is_known_prg_algorithm(prg_tag)) throw FormatError("unknown PRG algorithm tag " + std::to_string(prg_tag));
    params.prg.algorithm = static_cast<PrgAlgorithm>(prg_tag);
    params.prg.lambda = r.u16();
    params.prg.output_len = r.u32();
    params.prg.modulus = params.modulus;
    return h;
}

template <typename Validate>
void validate_header(const Header &h, Validate validate) {
    try {
        validate(h.params);
    } catch (const ParameterError &e) {
        throw FormatError(std::string("invalid parameters in key header: ") + e.what());
    } catch (const GuardError &e) {
        throw FormatError(std::string("invalid parameters in key header: ") + e.what());
    }
    if (h.party >= h.params.parties) throw FormatError("key party index out of range");
}

void write_dpf_body(Writer &w, const DpfKey &key) {
    for (std::size_t t = 0; t < key.seeds.size(); ++t) {
        w.bytes(key.seeds[t].bytes());
        w.element_at(key.shares, t);
    }
    w.elements(key.correction);
}

DpfKey read_dpf_body(Reader &r, const Header &h) {
    const auto &params = h.params;
    const std::uint64_t count = params.rows * params.tuples_per_row();
    const std::uint64_t tuple_bytes = params.lambda / 8 + params.modulus.element_bytes();
    if (count > r.remaining() / tuple_bytes) throw FormatError("key file truncated");
    DpfKey key{h.party, params, {}, FieldVector(params.modulus, count), FieldVector(params.modulus, 0)};
    key.seeds.reserve(count);
    for (std::uint64_t t = 0; t < count; ++t) {
        key.seeds.push_back(r.seed(params.lambda));
        r.element_into(key.shares, t);
    }
    key.correction = r.elements(params.modulus, params.cols);
    return key;
}

} // namespace

std::size_t header_size(std::size_t factor_count) { return 38 + 8 * factor_count; }

std::vector<std::uint8_t> serialize(const DpfKey &key) {
    check_key(key);
    Writer w;
    write_header(w, SchemeTag::kHonestMajority, key.party, key.params);
    write_dpf_body(w, key);
    return w.take();
}

std::vector<std::uint8_t> serialize(const DcfKey &key) {
    check_key(key);
    Writer w;
    write_header(w, SchemeTag::kComparison, key.base.party, key.base.params);
    write_dpf_body(w, key.base);
    w.elements(key.row_shares);
    return w.take();
}

std::vector<std::uint8_t> serialize(const BoyleKey &key) {
    check_key(key);
    Writer w;
    write_header(w, SchemeTag::kBoyle, key.party, key.params);
    for (const auto &row : key.rows) {
        w.u32(row.size());
        for (const auto &entry : row) {
            w.u32(entry.column);
            w.bytes(entry.seed.bytes());
            w.element(entry.share);
        }
    }
    w.elements(key.correction);
    return w.take();
}

std::vector<std::uint8_t> serialize(const TrivialKey &key) {
    check_key(key);
    Writer w;
    write_header(w, SchemeTag::kTrivial, key.party, key.params);
    w.elements(key.table);
    return w.take();
}

std::vector<std::uint8_t> serialize(const AnyKey &key) {
    return std::visit([](const auto &k) { return serialize(k); }, key);
}

AnyKey parse_key(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    const Header h = read_header(r);
    switch (h.tag) {
    case SchemeTag::kHonestMajority: {
        validate_header(h, validate_honest_majority);
        DpfKey key = read_dpf_body(r, h);
        r.finish();
        return key;
    }
    case SchemeTag::kComparison: {
        validate_header(h, validate_honest_majority);
        DpfKey base = read_dpf_body(r, h);
        FieldVector row_shares = r.elements(h.params.modulus, h.params.rows);
        r.finish();
        return DcfKey{std::move(base), std::move(row_shares)};
    }
    case SchemeTag::kBoyle: {
        validate_header(h, validate_boyle);
        const std::uint64_t columns = boyle_columns(h.params.parties, h.params.modulus.value());
        BoyleKey key{h.party, h.params, {}, FieldVector(h.params.modulus, 0)};
        key.rows.resize(h.params.rows);
        for (auto &row : key.rows) {
            const std::uint32_t count = r.u32();
            if (count > columns) throw FormatError("Boyle row has more entries than columns");
            row.reserve(count);
            for (std::uint32_t e = 0; e < count; ++e) {
                const std::uint32_t column = r.u32();
                if (column >= columns || (!row.empty() && column <= row.back().column)) {
                    throw FormatError("Boyle key columns must be increasing and in range");
                }
                Seed seed = r.seed(h.params.lambda);
                row.push_back(BoyleEntry{column, std::move(seed), r.element(h.params.modulus)});
            }
        }
        key.correction = r.elements(h.params.modulus, h.params.cols);
        r.finish();
        return key;
    }
    case SchemeTag::kTrivial: {
        validate_header(h, validate_common);
        if (h.params.rows != 1 || h.params.cols != h.params.domain_size) {
            throw FormatError("trivial key must use R=1, V=N");
        }
        TrivialKey key{h.party, h.params, r.elements(h.params.modulus, h.params.domain_size)};
        r.finish();
        return key;
    }
    }
    throw FormatError("unknown scheme tag");
}

SchemeTag scheme_tag(const AnyKey &key) {
    struct Visitor {
        SchemeTag operator()(const DpfKey &) const { return SchemeTag::kHonestMajority; }
        SchemeTag operator()(const BoyleKey &) const { return SchemeTag::kBoyle; }
        SchemeTag operator()(const TrivialKey &) const { return SchemeTag::kTrivial; }
        SchemeTag operator()(const DcfKey &) const { return SchemeTag::kComparison; }
    };
    return std::visit(Visitor{}, key);
}

const SchemeParams &key_params(const AnyKey &key) {
    struct Visitor {
        const SchemeParams &operator()(const DpfKey &k) const { return k.params; }
        const SchemeParams &operator()(const BoyleKey &k) const { return k.params; }
        const SchemeParams &operator()(const TrivialKey &k) const { return k.params; }
        const SchemeParams &operator()(const DcfKey &k) const { return k.base.params; }
    };
    return std::visit(Visitor{}, key);
}

unsigned key_party(const AnyKey &key) {
    struct Visitor {
        unsigned operator()(const DpfKey &k) const { return k.party; }
        unsigned operator()(const BoyleKey &k) const { return k.party; }
        unsigned operator()(const TrivialKey &k) const { return k.party; }
        unsigned operator()(const DcfKey &k) const { return k.base.party; }
    };
    return std::visit(Visitor{}, key);
}

FieldElement eval_any(const AnyKey &key, std::uint64_t x) {
    struct Visitor {
        std::uint64_t x;
        FieldElement operator()(const DpfKey &k) const { return eval(k, x); }
        FieldElement operator()(const BoyleKey &k) const { return boyle_eval(k, x); }
        FieldElement operator()(const TrivialKey &k) const { return trivial_eval(k, x); }
        FieldElement operator()(const DcfKey &k) const { return dcf_eval(k, x); }
    };
    return std::visit(Visitor{x}, key);
}

FieldVector eval_all_any(const AnyKey &key) {
    struct Visitor {
        FieldVector operator()(const DpfKey &k) const { return eval_all(k); }
        FieldVector operator()(const DcfKey &k) const { return dcf_eval_all(k); }
        FieldVector operator()(const TrivialKey &k) const {
            check_key(k);
            return k.table;
        }
        FieldVector operator()(const BoyleKey &k) const {
            FieldVector out(k.params.modulus, k.params.domain_size);
            for (std::uint64_t x = 0; x < k.params.domain_size; ++x) out.set(x, boyle_eval(k, x));
            return out;
        }
    };
    return std::visit(Visitor{}, key);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

} // namespace mpdpf
