#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rfprog/errors.hpp"

namespace rfprog {

class RationalFunction;  // ratfield.hpp

// A verified odd prime p with 3 <= p <= 2^20. Primality is certified by
// trial division at construction; values are immutable afterwards.
class Prime {
public:
    static constexpr std::uint32_t kMax = 1u << 20;

    explicit Prime(std::uint32_t p);

    std::uint32_t value() const { return p_; }

    // Canonical residue of a (possibly negative) integer.
    std::uint32_t reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }
    friend bool operator!=(Prime a, Prime b) { return a.p_ != b.p_; }

private:
    std::uint32_t p_;
};

struct FieldElement {
    std::uint32_t value;
    Prime modulus;

    FieldElement(std::uint32_t v, Prime p) : value(v % p.value()), modulus(p) {}

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.modulus == b.modulus && a.value == b.value;
    }
};

// b with a*b = 1 (mod p). Throws ZeroInverse when a = 0.
FieldElement mod_inverse(const FieldElement& a);

// Montgomery batch inversion: elementwise mod_inverse with exactly one
// extended-gcd inversion for the whole input. Throws ZeroInverse naming the
// first zero index.
std::vector<FieldElement> batch_inverse(std::span<const FieldElement> values);

// Raw-residue variant used by evaluation sweeps. All inputs must be nonzero
// residues mod p.
std::vector<std::uint32_t> batch_inverse_values(std::span<const std::uint32_t> values,
                                                Prime p);

// Number of extended-gcd inversions performed since process start. Exposed
// so tests can confirm the batch path really folds to a single inversion.
std::uint64_t egcd_invocation_count();

// The additive characters e_p(a) = exp(2*pi*i*a/p), precomputed as a
// length-p table of the p-th roots of unity.
class CharacterTable {
public:
    explicit CharacterTable(Prime p);

    Prime prime() const { return p_; }

    // Index may exceed p; it is reduced.
    std::complex<double> operator()(std::uint64_t a) const {
        return table_[a % table_.size()];
    }
    std::complex<double> operator()(const FieldElement& a) const {
        return table_[a.value];
    }

    // Direct access for hot loops: index must already lie in [0, p).
    const std::complex<double>* data() const { return table_.data(); }

private:
    Prime p_;
    std::vector<std::complex<double>> table_;
};

struct GoodPrimeReport {
    bool good;
    std::string diagnostic;  // empty when good

    explicit operator bool() const { return good; }
};

// Decides whether p preserves the generic shape of (F, G) mod p: p must not
// divide any leading coefficient or numerator/denominator resultant of
// F, G, F', G', G'-F', (G'/F')', and the cleared numerators of the
// stratification witnesses built from G'/F' and (F'-G')(G'/F')/(G'/F')'
// must stay nonzero polynomials mod p. Throws DependentInput when
// {1, F, G} are linearly dependent over Q.
GoodPrimeReport is_good_prime(const RationalFunction& F, const RationalFunction& G,
                              Prime p);

}  // namespace rfprog
