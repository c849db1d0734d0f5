#include "mpdpf/algebra.hpp"

#include "mpdpf/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>

namespace mpdpf {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t pow_mod64(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
    std::uint64_t result = 1 % n;
    base %= n;
    while (exp != 0) {
        if (exp & 1) result = mul_mod64(result, base, n);
        base = mul_mod64(base, base, n);
        exp >>= 1;
    }
    return result;
}

// Inverse of a mod n for coprime a, n.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    const auto *first = text.data();
    const auto *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ParameterError("invalid integer '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : kBases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kBases) {
        std::uint64_t x = pow_mod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// ---- Modulus ----------------------------------------------------------------

Modulus::Modulus(std::vector<std::uint64_t> factors) {
    if (factors.empty()) throw ParameterError("modulus needs at least one prime factor");
    u128 product = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::uint64_t q = factors[i];
        if (!mpdpf::is_prime(q)) throw ParameterError("modulus factor " + std::to_string(q) + " is not prime");
        if (q > kMaxPrimeFactor) {
            throw ParameterError("modulus factor " + std::to_string(q) + " is not below 2^31");
        }
        if (i > 0 && factors[i - 1] >= q) {
            throw ParameterError("modulus factors must be strictly increasing and distinct");
        }
        product *= q;
        if (product >= (u128{1} << 63)) throw ParameterError("modulus value must be below 2^63");
    }
    value_ = static_cast<std::uint64_t>(product);
    factors_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(factors));
}

Modulus Modulus::from_value(std::uint64_t value) {
    if (value < 2) throw ParameterError("modulus must be at least 2");
    std::vector<std::uint64_t> factors;
    std::uint64_t rest = value;
    if (!mpdpf::is_prime(rest)) {
        for (std::uint64_t d = 2; d * d <= rest; ++d) {
            if (d > kMaxPrimeFactor) break;
            if (rest % d != 0) continue;
            factors.push_back(d);
            rest /= d;
            if (rest % d == 0) {
                throw ParameterError("modulus " + std::to_string(value) + " is not square-free");
            }
            if (mpdpf::is_prime(rest)) break;
        }
    }
    if (rest > 1) {
        if (!mpdpf::is_prime(rest)) {
            throw ParameterError("modulus " + std::to_string(value) + " has a factor not below 2^31");
        }
        if (!factors.empty() && factors.back() == rest) {
            throw ParameterError("modulus " + std::to_string(value) + " is not square-free");
        }
        factors.push_back(rest);
    }
    return Modulus(std::move(factors));
}

Modulus Modulus::parse(std::string_view text) {
    if (text.find('*') == std::string_view::npos) return from_value(parse_u64(text));
    std::vector<std::uint64_t> factors;
    std::size_t start = 0;
    while (true) {
        const auto star = text.find('*', start);
        factors.push_back(parse_u64(text.substr(start, star - start)));
        if (star == std::string_view::npos) break;
        start = star + 1;
    }
    std::sort(factors.begin(), factors.end());
    return Modulus(std::move(factors));
}

unsigned Modulus::element_bits() const {
    unsigned bits = 0;
    for (auto q : *factors_) bits += bit_length_of_range(q);
    return bits;
}

unsigned Modulus::element_bytes() const {
    unsigned bytes = 0;
    for (auto q : *factors_) bytes += byte_length_of_range(q);
    return bytes;
}

std::string Modulus::to_string() const {
    std::ostringstream out;
    out << value_;
    if (factors_->size() > 1) {
        out << " (";
        for (std::size_t i = 0; i < factors_->size(); ++i) out << (i ? "*" : "") << (*factors_)[i];
        out << ")";
    }
    return out.str();
}

Modulus primorial(unsigned n) {
    if (n == 0) throw ParameterError("primorial index must be at least 1");
    if (n > kMaxPrimorialIndex) {
        throw ParameterError("primorial index " + std::to_string(n) + " overflows 63 bits (max " +
                             std::to_string(kMaxPrimorialIndex) + ")");
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t c = 2; primes.size() < n; ++c) {
        if (is_prime(c)) primes.push_back(c);
    }
    return Modulus(std::move(primes));
}

// ---- FieldElement -------------------------------------------------------------

FieldElement::FieldElement(Modulus modulus, std::vector<std::uint64_t> residues)
    : modulus_(std::move(modulus)), residues_(std::move(residues)) {
    if (residues_.size() != modulus_.factor_count()) {
        throw ParameterError("residue count does not match modulus factor count");
    }
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        if (residues_[i] >= modulus_.factor(i)) throw ParameterError("residue out of range");
    }
}

FieldElement FieldElement::zero(const Modulus &modulus) {
    return FieldElement(modulus, std::vector<std::uint64_t>(modulus.factor_count(), 0));
}

FieldElement FieldElement::one(const Modulus &modulus) { return from_integer(modulus, 1); }

FieldElement FieldElement::from_integer(const Modulus &modulus, std::uint64_t value) {
    std::vector<std::uint64_t> residues(modulus.factor_count());
    for (std::size_t i = 0; i < residues.size(); ++i) residues[i] = value % modulus.factor(i);
    return FieldElement(modulus, std::move(residues));
}

bool FieldElement::is_zero() const {
    return std::all_of(residues_.begin(), residues_.end(), [](std::uint64_t r) { return r == 0; });
}

std::uint64_t FieldElement::lift() const {
    const std::uint64_t total = modulus_.value();
    u128 acc = 0;
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        const std::uint64_t q = modulus_.factor(i);
        const std::uint64_t rest = total / q;
        const std::uint64_t coeff = mul_mod64(residues_[i], inverse_mod(rest % q, q), q);
        acc = (acc + static_cast<u128>(coeff) * rest) % total;
    }
    return static_cast<std::uint64_t>(acc);
}

void FieldElement::require_same_modulus(const FieldElement &rhs) const {
    if (!(modulus_ == rhs.modulus_)) {
        throw ParameterError("modulus mismatch: " + modulus_.to_string() + " vs " + rhs.modulus_.to_string());
    }
}

FieldElement FieldElement::operator+(const FieldElement &rhs) const {
    require_same_modulus(rhs);
    FieldElement out = *this;
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        const std::uint64_t s = residues_[i] + rhs.residues_[i];
        const std::uint64_t q = modulus_.factor(i);
        out.residues_[i] = s >= q ? s - q : s;
    }
    return out;
}

FieldElement FieldElement::operator-(const FieldElement &rhs) const { return *this + (-rhs); }

FieldElement FieldElement::operator*(const FieldElement &rhs) const {
    require_same_modulus(rhs);
    FieldElement out = *this;
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        out.residues_[i] = residues_[i] * rhs.residues_[i] % modulus_.factor(i);
    }
    return out;
}

FieldElement FieldElement::operator-() const {
    FieldElement out = *this;
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        out.residues_[i] = residues_[i] == 0 ? 0 : modulus_.factor(i) - residues_[i];
    }
    return out;
}

FieldElement sum_elements(std::span<const FieldElement> elements) {
    if (elements.empty()) throw ParameterError("cannot sum an empty set of shares");
    FieldElement acc = elements.front();
    for (std::size_t i = 1; i < elements.size(); ++i) acc += elements[i];
    return acc;
}

// ---- FieldVector --------------------------------------------------------------

FieldVector::FieldVector(Modulus modulus, std::size_t size)
    : modulus_(std::move(modulus)), size_(size),
      planes_(modulus_.factor_count(), std::vector<std::uint32_t>(size, 0)) {}

FieldElement FieldVector::at(std::size_t i) const {
    if (i >= size_) throw ParameterError("field vector index out of range");
    std::vector<std::uint64_t> residues(planes_.size());
    for (std::size_t f = 0; f < planes_.size(); ++f) residues[f] = planes_[f][i];
    return FieldElement(modulus_, std::move(residues));
}

void FieldVector::set(std::size_t i, const FieldElement &e) {
    if (i >= size_) throw ParameterError("field vector index out of range");
    if (!(e.modulus() == modulus_)) throw ParameterError("modulus mismatch in field vector");
    for (std::size_t f = 0; f < planes_.size(); ++f) planes_[f][i] = static_cast<std::uint32_t>(e.residue(f));
}

void FieldVector::add_scaled(const FieldElement &coeff, const FieldVector &other) {
    if (!(other.modulus_ == modulus_) || !(coeff.modulus() == modulus_)) {
        throw ParameterError("modulus mismatch in field vector");
    }
    if (other.size_ != size_) throw ParameterError("field vector length mismatch");
    for (std::size_t f = 0; f < planes_.size(); ++f) {
        const std::uint64_t q = modulus_.factor(f);
        const std::uint64_t c = coeff.residue(f);
        if (c == 0) continue;
        auto &dst = planes_[f];
        const auto &src = other.planes_[f];
        for (std::size_t k = 0; k < size_; ++k) {
            dst[k] = static_cast<std::uint32_t>((dst[k] + c * src[k]) % q);
        }
    }
}

// ---- combinations ---------------------------------------------------------------

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > UINT64_MAX) throw ParameterError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(result);
}

CombinationIndex combination_rank(std::span<const unsigned> members, unsigned p) {
    const auto k = static_cast<unsigned>(members.size());
    if (k > p) throw ParameterError("combination larger than the party set");
    std::uint64_t rank = 0;
    unsigned next = 0;
    for (unsigned i = 0; i < k; ++i) {
        if (members[i] >= p) throw ParameterError("party index out of range in combination");
        if (i > 0 && members[i] <= members[i - 1]) {
            throw ParameterError("combination members must be sorted and distinct");
        }
        for (unsigned v = next; v < members[i]; ++v) rank += binom(p - 1 - v, k - 1 - i);
        next = members[i] + 1;
    }
    return CombinationIndex{p, k, rank, std::vector<unsigned>(members.begin(), members.end())};
}

CombinationIndex combination_unrank(std::uint64_t rank, unsigned p, unsigned k) {
    if (k > p) throw ParameterError("combination larger than the party set");
    if (rank >= binom(p, k)) throw ParameterError("combination rank out of range");
    CombinationIndex out{p, k, rank, {}};
    out.members.reserve(k);
    std::uint64_t rest = rank;
    unsigned v = 0;
    for (unsigned i = 0; i < k; ++i) {
        while (true) {
            const std::uint64_t block = binom(p - 1 - v, k - 1 - i);
            if (rest < block) break;
            rest -= block;
            ++v;
        }
        out.members.push_back(v++);
    }
    return out;
}

std::vector<std::uint64_t> combinations_containing(unsigned p, unsigned k, unsigned party) {
    std::vector<std::uint64_t> ranks;
    const std::uint64_t total = binom(p, k);
    for (std::uint64_t r = 0; r < total; ++r) {
        const auto c = combination_unrank(r, p, k);
        if (std::binary_search(c.members.begin(), c.members.end(), party)) ranks.push_back(r);
    }
    return ranks;
}

} // namespace mpdpf
