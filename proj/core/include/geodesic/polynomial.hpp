#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodesic/rational.hpp"

namespace geodesic {

/// Raised when a polynomial operation's precondition does not hold.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Dense polynomial with non-negative integer coefficients; index = exponent.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
class CoeffPoly {
public:
    using Coeff = std::uint64_t;

    CoeffPoly() = default;
    CoeffPoly(std::initializer_list<Coeff> coeffs);
    explicit CoeffPoly(std::vector<Coeff> coeffs);

    /// x^exponent * coeff.
    static CoeffPoly monomial(std::size_t exponent, Coeff coeff = 1);

    bool is_zero() const { return coeffs_.empty(); }
    /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
    std::size_t size() const { return coeffs_.size(); }
    std::size_t degree() const;
    Coeff operator[](std::size_t exponent) const;
    const std::vector<Coeff>& coeffs() const { return coeffs_; }

    /// Sum of all coefficients.
    BigInt mass() const;
    BigInt evaluate(const BigInt& x) const;

    friend bool operator==(const CoeffPoly&, const CoeffPoly&) = default;

private:
    void trim();

    std::vector<Coeff> coeffs_;
};

CoeffPoly poly_add(const CoeffPoly& p, const CoeffPoly& q);

/// Coefficient-wise p - q; throws ContractViolation if any coefficient of q exceeds p's.
CoeffPoly poly_sub_nonneg(const CoeffPoly& p, const CoeffPoly& q);

/// Exact product by Kronecker substitution.
///
/// Each operand is packed into one big integer with digits of
/// bit_width(coeff_bound) bits, i.e. evaluated at the smallest power of two
/// strictly greater than coeff_bound; the integers are multiplied once and the
/// digits of the result are the product's coefficients. Short operands (under
/// kSchoolbookCutoff coefficients) use the quadratic method instead.
///
/// Throws ContractViolation unless every product coefficient is provably
/// <= coeff_bound; the check uses min(mass(p) * max(q), mass(q) * max(p)).
CoeffPoly poly_mul(const CoeffPoly& p, const CoeffPoly& q, std::uint64_t coeff_bound);

/// Drops all terms of degree > max_degree.
CoeffPoly poly_truncate(const CoeffPoly& p, std::size_t max_degree);

inline constexpr std::size_t kSchoolbookCutoff = 32;

/// Adds `p` into a dense accumulator, growing it as needed.
void accumulate(std::vector<std::uint64_t>& acc, const CoeffPoly& p);

/// {"exponent": coefficient, ...} with ascending exponents.
std::string to_json(const CoeffPoly& p);

}  // namespace geodesic
