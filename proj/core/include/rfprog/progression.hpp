#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "rfprog/ratfield.hpp"
#include "rfprog/spectral.hpp"

namespace rfprog {

// Shared evaluation tables for a pair of rational functions over F_p.
// A point y is a pole if it is a pole of either function; every starred
// average below sums over the non-pole y only (and still divides by p).
struct PairTables {
    Prime prime;
    ValueTable first;
    ValueTable second;
    std::vector<std::uint32_t> non_pole;  // ascending
    std::uint32_t excluded;               // |poles(first) U poles(second)|

    static PairTables build(const RationalFunction& A, const RationalFunction& B, Prime p);
};

// K(n1, n2) = (1/p) sum over non-pole y of e_p(n1 F(y) + n2 G(y)),
// all p^2 entries. K(0,0) = (p - excluded)/p exactly and |K| <= 1.
struct KernelTable {
    Prime prime;
    std::uint32_t excluded_count;
    std::vector<std::complex<double>> entries;  // row-major, n1 * p + n2

    std::complex<double> at(std::uint32_t n1, std::uint32_t n2) const {
        return entries[static_cast<std::size_t>(n1) * prime.value() + n2];
    }
};

// (1/p^2) sum_x sum over non-pole y of f0(x) f1(x+F(y)) f2(x+G(y)).
std::complex<double> lambda_counting(const RationalFunction& F, const RationalFunction& G,
                                     const GridFunction& f0, const GridFunction& f1,
                                     const GridFunction& f2);
std::complex<double> lambda_counting(const PairTables& t, const GridFunction& f0,
                                     const GridFunction& f1, const GridFunction& f2);

// Exact number of pairs (x, y), y not a pole, with x, x+F(y), x+G(y) all in
// the set. `member` is a length-p membership mask.
std::int64_t count_progressions_in_set(const RationalFunction& F, const RationalFunction& G,
                                       const std::vector<std::uint8_t>& member, Prime p);

KernelTable kernel_table(const RationalFunction& F, const RationalFunction& G, Prime p);

// Two-term operator twisted by a character:
// (1/p^2) sum_x sum over non-pole y of f0(x) f1(x+F(y)) e_p(xi R(y)).
// normalized_error = |value - [xi=0] mean(f0) mean(f1)| sqrt(p) / (||f0||_2 ||f1||_2),
// the empirically observed constant of the two-term asymptotic.
struct TwistedResult {
    std::complex<double> value;
    double normalized_error;
};

TwistedResult twisted_two_term(const RationalFunction& F, const RationalFunction& R,
                               const GridFunction& f0, const GridFunction& f1,
                               const FieldElement& xi);

// D(x) = (1/p) sum over non-pole y of f1(x+F(y)) f2(x+G(y)).
// Satisfies E_x f0 D = lambda_counting(F, G, f0, f1, f2) for every f0.
GridFunction dual_function(const RationalFunction& F, const RationalFunction& G,
                           const GridFunction& f1, const GridFunction& f2);

// Both sides of the unconditional counting-operator bound
//   |Lambda*| <= ||f0||_2^{1/2} ||f0_hat||_{l4}^{1/2} ||f1||_2 ||f2||_2 (|Y|/p^3)^{1/8}.
// ratio > 1 + 1e-9 would contradict the theorem and means the build is broken.
struct PetReport {
    double lhs;
    double rhs;
    std::int64_t y_count;
    double ratio;
};

PetReport verify_pet_inequality(const RationalFunction& F, const RationalFunction& G,
                                const GridFunction& f0, const GridFunction& f1,
                                const GridFunction& f2, std::int64_t y_count);

}  // namespace rfprog
