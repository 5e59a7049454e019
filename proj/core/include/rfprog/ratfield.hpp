#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfprog/errors.hpp"
#include "rfprog/fp_arith.hpp"

namespace rfprog {

using BigInt = boost::multiprecision::cpp_int;

// Univariate polynomial over Z, coefficients ascending by degree.
// Invariant: the leading coefficient is nonzero unless the polynomial is
// zero (empty coefficient vector, degree -1).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);

    static IntPolynomial constant(BigInt c);
    static IntPolynomial variable();  // t

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const BigInt& leading() const;
    // Coefficient of t^i; zero outside the stored range.
    const BigInt& coeff(int i) const;
    const std::vector<BigInt>& coefficients() const { return coeffs_; }

    IntPolynomial operator-() const;
    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial scaled(const BigInt& c) const;
    IntPolynomial pow(unsigned e) const;
    IntPolynomial derivative() const;

    // gcd of coefficient magnitudes (0 for the zero polynomial).
    BigInt content() const;
    IntPolynomial primitive_part() const;
    // Exact division; the caller guarantees divisibility in Z[t].
    IntPolynomial divided_by(const BigInt& c) const;

    BigInt evaluate(const BigInt& x) const;
    std::vector<std::uint32_t> coefficients_mod(Prime p) const;
    std::uint32_t evaluate_mod(std::uint32_t y, Prime p) const;

    // Primitive gcd in Q[t] (returned with content 1, positive leading
    // coefficient), via the primitive polynomial remainder sequence.
    static IntPolynomial gcd(IntPolynomial a, IntPolynomial b);
    // Resultant of a and b (Sylvester determinant, fraction-free).
    static BigInt resultant(const IntPolynomial& a, const IntPolynomial& b);
    // Exact quotient a / b in Z[t]; throws Error if the division is inexact.
    static IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void normalize();
    std::vector<BigInt> coeffs_;
};

// Element of Q(t) held as a ratio of integer polynomials. Invariants:
// denominator nonzero, gcd(num, den) = 1 in Q[t], denominator leading
// coefficient positive, and no integer factor common to every coefficient
// of the pair.
class RationalFunction {
public:
    RationalFunction();  // zero
    RationalFunction(IntPolynomial num, IntPolynomial den);

    static RationalFunction constant(BigInt c);
    static RationalFunction variable();  // t

    const IntPolynomial& num() const { return num_; }
    const IntPolynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction pow(unsigned e) const;

    // Quotient-rule derivative, normalized.
    RationalFunction derivative() const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string() const;

private:
    IntPolynomial num_;
    IntPolynomial den_;
};

// Parses an expression in the variable t over integer literals with
// + - * / ^ (nonnegative integer exponents), parentheses, and implicit
// multiplication ("2t", "3(t+1)"). Throws SyntaxError with the offending
// position, or DivisionByZeroFunction when a denominator simplifies to 0.
RationalFunction parse_rational_function(std::string_view text);

// True iff {1, F, G} is linearly independent over Q (rank of the common-
// denominator coefficient matrix is 3).
bool check_linear_independence(const RationalFunction& F, const RationalFunction& G);

// a(y) * b(y)^{-1} mod p, or nullopt when y is a pole (b(y) = 0).
std::optional<FieldElement> evaluate_mod_p(const RationalFunction& R, const FieldElement& y);

// Values of R at every y in [0, p); pole[y] marks vanishing denominators.
// Uses one Horner sweep per polynomial and a single batch inversion.
struct ValueTable {
    std::vector<std::uint32_t> values;  // meaningful where !pole[y]
    std::vector<std::uint8_t> pole;
    std::uint32_t pole_count = 0;
};
ValueTable tabulate_mod_p(const RationalFunction& R, Prime p);

// True iff R - R(c) is nonzero in Q(t), where c is 0 or, when 0 is a pole
// of R, the first non-pole integer point.
bool is_nonconstant(const RationalFunction& R);

// True iff the cleared numerator of R(u) - R(v) remains a nonzero
// polynomial mod p, i.e. the mod-p reductions of num(R) and den(R) are not
// proportional. This is the computable witness that R stays nonconstant
// over F_p.
bool is_nonconstant_mod_p(const RationalFunction& R, Prime p);

// The univariate building blocks of the variety stratification. All are
// exact elements of Q(t); multivariate classifiers are evaluated
// per-coordinate from these pieces (see roth_variety).
struct StratificationBundle {
    RationalFunction f_deriv;         // F'
    RationalFunction g_deriv;         // G'
    RationalFunction deriv_gap;       // G' - F'
    RationalFunction deriv_ratio;     // G'/F'
    RationalFunction curvature;       // (G'/F')'
    RationalFunction gap_times_ratio; // (F' - G') * (G'/F')
    RationalFunction minor_summand;   // (F' - G') * (G'/F') / (G'/F')'
};

// Builds the bundle and verifies, symbolically over Z, that the 5x5
// Jacobian-minor determinant of the defining equations equals its closed
// product form. Throws DependentInput when {1, F, G} is dependent.
StratificationBundle build_stratification_bundle(const RationalFunction& F,
                                                 const RationalFunction& G);

// The symbolic identity on its own: literal cofactor expansion of the 5x5
// minor (denominators cleared) compared against the closed product form.
bool determinant_factorization_holds(const RationalFunction& F,
                                     const RationalFunction& G);

}  // namespace rfprog
