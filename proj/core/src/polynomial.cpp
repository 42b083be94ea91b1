#include "geodesic/polynomial.hpp"

#include <gmp.h>
#include <json.hpp>

#include <algorithm>
#include <bit>

static_assert(GMP_NUMB_BITS == 64, "Kronecker packing assumes 64-bit GMP limbs");

namespace geodesic {

CoeffPoly::CoeffPoly(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }

CoeffPoly::CoeffPoly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

CoeffPoly CoeffPoly::monomial(std::size_t exponent, Coeff coeff) {
    std::vector<Coeff> c(exponent + 1, 0);
    c[exponent] = coeff;
    return CoeffPoly(std::move(c));
}

void CoeffPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

std::size_t CoeffPoly::degree() const {
    return coeffs_.empty() ? 0 : coeffs_.size() - 1;
}

CoeffPoly::Coeff CoeffPoly::operator[](std::size_t exponent) const {
    return exponent < coeffs_.size() ? coeffs_[exponent] : 0;
}

BigInt CoeffPoly::mass() const {
    BigInt total = 0;
    for (Coeff c : coeffs_) {
        BigInt term;
        mpz_set_ui(term.get_mpz_t(), c);
        total += term;
    }
    return total;
}

BigInt CoeffPoly::evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        BigInt c;
        mpz_set_ui(c.get_mpz_t(), *it);
        acc = acc * x + c;
    }
    return acc;
}

CoeffPoly poly_add(const CoeffPoly& p, const CoeffPoly& q) {
    std::vector<CoeffPoly::Coeff> out(std::max(p.size(), q.size()), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += p.coeffs()[i];
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (out[i] > std::numeric_limits<CoeffPoly::Coeff>::max() - q.coeffs()[i]) {
            throw ContractViolation("poly_add: coefficient overflow at exponent " +
                                    std::to_string(i));
        }
        out[i] += q.coeffs()[i];
    }
    return CoeffPoly(std::move(out));
}

CoeffPoly poly_sub_nonneg(const CoeffPoly& p, const CoeffPoly& q) {
    std::vector<CoeffPoly::Coeff> out = p.coeffs();
    out.resize(std::max(p.size(), q.size()), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (out[i] < q.coeffs()[i]) {
            throw ContractViolation("poly_sub_nonneg: negative coefficient at exponent " +
                                    std::to_string(i));
        }
        out[i] -= q.coeffs()[i];
    }
    return CoeffPoly(std::move(out));
}

CoeffPoly poly_truncate(const CoeffPoly& p, std::size_t max_degree) {
    if (p.size() <= max_degree + 1) {
        return p;
    }
    std::vector<CoeffPoly::Coeff> out(p.coeffs().begin(),
                                      p.coeffs().begin() + static_cast<std::ptrdiff_t>(max_degree + 1));
    return CoeffPoly(std::move(out));
}

void accumulate(std::vector<std::uint64_t>& acc, const CoeffPoly& p) {
    if (acc.size() < p.size()) {
        acc.resize(p.size(), 0);
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc[i] += p.coeffs()[i];
    }
}

namespace {

using u128 = unsigned __int128;

struct Stats {
    u128 mass = 0;
    std::uint64_t max = 0;
};

Stats stats(const CoeffPoly& p) {
    Stats s;
    for (auto c : p.coeffs()) {
        s.mass += c;
        s.max = std::max(s.max, c);
    }
    return s;
}

// Upper bound on any coefficient of p*q, saturating at 2^128-1.
u128 product_coeff_bound(const CoeffPoly& p, const CoeffPoly& q) {
    const Stats sp = stats(p);
    const Stats sq = stats(q);
    auto mul_sat = [](u128 a, std::uint64_t b) -> u128 {
        if (b != 0 && a > ~u128{0} / b) {
            return ~u128{0};
        }
        return a * b;
    };
    return std::min(mul_sat(sp.mass, sq.max), mul_sat(sq.mass, sp.max));
}

CoeffPoly schoolbook(const CoeffPoly& p, const CoeffPoly& q) {
    std::vector<CoeffPoly::Coeff> out(p.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto a = p.coeffs()[i];
        if (a == 0) {
            continue;
        }
        for (std::size_t j = 0; j < q.size(); ++j) {
            out[i + j] += a * q.coeffs()[j];
        }
    }
    return CoeffPoly(std::move(out));
}

// Evaluates p at 2^bits as a little-endian limb array.
std::vector<mp_limb_t> pack(const CoeffPoly& p, unsigned bits) {
    const std::size_t total_bits = p.size() * bits;
    std::vector<mp_limb_t> limbs(total_bits / 64 + 2, 0);
    std::size_t offset = 0;
    for (auto c : p.coeffs()) {
        const std::size_t limb = offset / 64;
        const unsigned shift = offset % 64;
        limbs[limb] |= static_cast<mp_limb_t>(c) << shift;
        if (shift != 0 && shift + bits > 64) {
            limbs[limb + 1] |= static_cast<mp_limb_t>(c) >> (64 - shift);
        }
        offset += bits;
    }
    while (!limbs.empty() && limbs.back() == 0) {
        limbs.pop_back();
    }
    return limbs;
}

std::vector<CoeffPoly::Coeff> unpack(const mp_limb_t* limbs, std::size_t limb_count,
                                     std::size_t digits, unsigned bits) {
    std::vector<CoeffPoly::Coeff> out(digits, 0);
    const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < digits; ++i, offset += bits) {
        const std::size_t limb = offset / 64;
        const unsigned shift = offset % 64;
        if (limb >= limb_count) {
            break;
        }
        std::uint64_t value = limbs[limb] >> shift;
        if (shift != 0 && shift + bits > 64 && limb + 1 < limb_count) {
            value |= limbs[limb + 1] << (64 - shift);
        }
        out[i] = value & mask;
    }
    return out;
}

}  // namespace

CoeffPoly poly_mul(const CoeffPoly& p, const CoeffPoly& q, std::uint64_t coeff_bound) {
    if (p.is_zero() || q.is_zero()) {
        return {};
    }
    const u128 needed = product_coeff_bound(p, q);
    if (needed > coeff_bound) {
        throw ContractViolation("poly_mul: product coefficients may exceed the bound " +
                                std::to_string(coeff_bound));
    }
    if (std::min(p.size(), q.size()) < kSchoolbookCutoff) {
        return schoolbook(p, q);
    }

    // m' = 2^bits is the smallest power of two strictly greater than coeff_bound.
    const auto bits = static_cast<unsigned>(std::bit_width(coeff_bound));
    const auto pa = pack(p, bits);
    const auto qa = pack(q, bits);

    mpz_t a;
    mpz_t b;
    mpz_t product;
    mpz_roinit_n(a, pa.data(), static_cast<mp_size_t>(pa.size()));
    mpz_roinit_n(b, qa.data(), static_cast<mp_size_t>(qa.size()));
    mpz_init(product);
    mpz_mul(product, a, b);
    auto coeffs = unpack(mpz_limbs_read(product), mpz_size(product), p.size() + q.size() - 1, bits);
    mpz_clear(product);
    return CoeffPoly(std::move(coeffs));
}

std::string to_json(const CoeffPoly& p) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.coeffs()[i] != 0) {
            doc[std::to_string(i)] = p.coeffs()[i];
        }
    }
    return doc.dump();
}

}  // namespace geodesic
