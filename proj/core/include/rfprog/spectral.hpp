#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "rfprog/errors.hpp"
#include "rfprog/fp_arith.hpp"

namespace rfprog {

// Complex-valued function on F_p, indexed by x in [0, p).
struct GridFunction {
    GridFunction(Prime p, std::vector<std::complex<double>> v);
    explicit GridFunction(Prime p) : prime(p), values(p.value()) {}

    Prime prime;
    std::vector<std::complex<double>> values;
};

// Fourier coefficients f_hat(xi) = (1/p) sum_x f(x) e_p(-x xi).
struct Spectrum {
    Spectrum(Prime p, std::vector<std::complex<double>> c);
    explicit Spectrum(Prime p) : prime(p), coefficients(p.value()) {}

    Prime prime;
    std::vector<std::complex<double>> coefficients;
};

// Direct O(p^2) transform with compensated accumulation; the 1/p mean
// normalization makes Parseval read ||f||_2 = ||f_hat||_{l2}.
Spectrum dft(const GridFunction& f);

// f(x) = sum_xi f_hat(xi) e_p(xi x); inverse of dft to ~1e-12.
GridFunction inverse_dft(const Spectrum& s);

// L^r norm under the uniform probability measure (1/p weights).
// r must be 1, 2, 4 or infinity, otherwise UnsupportedExponent.
double norm_probability(std::span<const std::complex<double>> v, double r);
// l^r norm under counting measure.
double norm_counting(std::span<const std::complex<double>> v, double r);

double norm_probability(const GridFunction& f, double r);
double norm_counting(const Spectrum& s, double r);

// Spectrum split at threshold ||f||_2 / (eps sqrt(p)): coefficients with
// modulus strictly above the threshold go to g, the rest to h. The l^1
// bound on g and the l^4 bound on h hold for every split and are asserted
// after construction.
struct LevelSplit {
    Spectrum g;
    Spectrum h;
    double epsilon;
    double threshold;
};

LevelSplit level_set_split(const GridFunction& f, double epsilon);

// CSV exchange format: header "index,re,im", exactly one row per x in
// [0, p); a missing or duplicate index is an error.
GridFunction read_grid_csv(std::istream& in, Prime p);
void write_grid_csv(std::ostream& out, const GridFunction& f);

}  // namespace rfprog
