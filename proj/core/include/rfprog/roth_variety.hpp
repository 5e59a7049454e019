#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rfprog/ratfield.hpp"

namespace rfprog {

// The five defining equations in eight variables, specialized mod p and
// backed by O(p) value tables. A tuple belongs to Y(F_p) iff none of its
// coordinates is a pole of F or G and all five equations vanish.
class RothEquations {
public:
    RothEquations(const RationalFunction& F, const RationalFunction& G, Prime p);

    Prime prime() const { return prime_; }
    const std::vector<std::uint32_t>& non_pole() const { return non_pole_; }
    std::uint32_t pole_count() const { return pole_count_; }
    bool is_pole(std::uint32_t y) const { return pole_[y] != 0; }

    std::uint32_t f_value(std::uint32_t y) const { return f_[y]; }
    std::uint32_t g_value(std::uint32_t y) const { return g_[y]; }
    // H = F - G, the combination appearing in the first two equations.
    std::uint32_t h_value(std::uint32_t y) const { return h_[y]; }

    // Value of equation k in {1..5} at the tuple, or nullopt when a
    // coordinate the equation reads is a pole.
    std::optional<std::uint32_t> equation_value(int k,
                                                const std::array<std::uint32_t, 8>& y) const;

    // Full membership test (all coordinates non-pole, all five equations 0).
    bool is_point(const std::array<std::uint32_t, 8>& y) const;

private:
    Prime prime_;
    std::vector<std::uint32_t> f_, g_, h_;
    std::vector<std::uint8_t> pole_;
    std::vector<std::uint32_t> non_pole_;
    std::uint32_t pole_count_;
};

RothEquations specialize_equations(const RationalFunction& F, const RationalFunction& G,
                                   Prime p);

// Exact |Y(F_p)| by enumeration of all non-pole tuples; the oracle the
// other counters are validated against. Requires p <= 11.
std::int64_t count_points_brute(const RothEquations& eqs);

// Exact |Y(F_p)| in O(p^5 d) time: enumerate (y1..y5), then read y7, y8, y6
// off equations 3, 5, 4 through value-preimage multimaps, and keep tuples
// satisfying equations 1 and 2.
std::int64_t count_points_staged(const RothEquations& eqs);

// |Y(F_p)| through the character-sum identity
//   |Y| = p^{-5} sum_{a,b,b'} |U(a,b,b')|^2,
//   U(a,b,b') = sum_{n1} T(n1-b,b) conj(T(n1-b,b-a)) conj(T(n1-b',b')) T(n1-b',b'-a),
//   T(alpha,beta) = sum over non-pole y of e_p(alpha F(y) + beta G(y)).
// The sum is manifestly real; `count` is the nearest integer. Throws
// RoundingFailure if the accumulated value strays more than 0.4 from it.
struct CharsumCount {
    std::int64_t count;
    double raw_real;
    double raw_imag;

    double rounding_distance() const {
        return raw_real > static_cast<double>(count) ? raw_real - static_cast<double>(count)
                                                     : static_cast<double>(count) - raw_real;
    }
};

CharsumCount count_points_charsum(const RationalFunction& F, const RationalFunction& G,
                                  Prime p);

// Cardinalities of the per-point classification cascade; the five strata
// partition Y(F_p).
struct StratumCounts {
    Prime prime;
    std::int64_t total = 0;
    std::int64_t y_gen = 0;
    std::int64_t y_low = 0;
    std::int64_t z_good = 0;
    std::int64_t z_bad = 0;
    std::int64_t z_low = 0;
};

enum class Stratum { YGen, YLow, ZLow, ZBad, ZGood };

// Per-coordinate tables for the classification cascade, built once per
// (F, G, p) from the stratification bundle.
struct StratumClassifier {
    StratumClassifier(const RationalFunction& F, const RationalFunction& G, Prime p);

    // y1..y5 are the first five coordinates of a point of Y(F_p); every
    // coordinate must be non-pole.
    Stratum classify(std::uint32_t y1, std::uint32_t y2, std::uint32_t y3,
                     std::uint32_t y4, std::uint32_t y5) const;

    Prime prime;
    std::vector<std::uint32_t> f_deriv;       // F'(y)
    std::vector<std::uint32_t> g_deriv;       // G'(y)
    std::vector<std::uint32_t> curvature_num; // numerator of (G'/F')' at y
    std::vector<std::uint32_t> summand_num;   // numerator of the reduced-minor summand
    std::vector<std::uint32_t> summand_den;   // its denominator
};

// Rides the staged enumerator (p <= 31) and classifies each point found.
StratumCounts stratify_points(const RationalFunction& F, const RationalFunction& G, Prime p);

// (p - |poles(F) U poles(G)|)^2 = number of diagonal points
// (y1=y2=y3=y4, y5=y6=y7=y8); a lower bound for |Y(F_p)| on every run.
std::int64_t diagonal_lower_bound(const RationalFunction& F, const RationalFunction& G,
                                  Prime p);

}  // namespace rfprog
