#include "rfprog/spectral.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rfprog/summation.hpp"

namespace rfprog {

GridFunction::GridFunction(Prime p, std::vector<std::complex<double>> v)
    : prime(p), values(std::move(v)) {
    if (values.size() != p.value()) {
        throw Error("grid function must have exactly p values");
    }
}

Spectrum::Spectrum(Prime p, std::vector<std::complex<double>> c)
    : prime(p), coefficients(std::move(c)) {
    if (coefficients.size() != p.value()) {
        throw Error("spectrum must have exactly p coefficients");
    }
}

Spectrum dft(const GridFunction& f) {
    const std::uint32_t p = f.prime.value();
    const CharacterTable chars(f.prime);
    const std::complex<double>* e = chars.data();
    Spectrum s(f.prime);
    const double inv_p = 1.0 / p;
    for (std::uint32_t xi = 0; xi < p; ++xi) {
        ComplexCompensatedSum acc;
        std::uint32_t r = 0;  // (x * xi) mod p, maintained additively
        for (std::uint32_t x = 0; x < p; ++x) {
            // e_p(-x xi) = conj(e_p(x xi))
            acc.add(f.values[x] * std::conj(e[r]));
            r += xi;
            if (r >= p) r -= p;
        }
        s.coefficients[xi] = acc.value() * inv_p;
    }
    return s;
}

GridFunction inverse_dft(const Spectrum& s) {
    const std::uint32_t p = s.prime.value();
    const CharacterTable chars(s.prime);
    const std::complex<double>* e = chars.data();
    GridFunction f(s.prime);
    for (std::uint32_t x = 0; x < p; ++x) {
        ComplexCompensatedSum acc;
        std::uint32_t r = 0;  // (xi * x) mod p
        for (std::uint32_t xi = 0; xi < p; ++xi) {
            acc.add(s.coefficients[xi] * e[r]);
            r += x;
            if (r >= p) r -= p;
        }
        f.values[x] = acc.value();
    }
    return f;
}

namespace {

double norm_impl(std::span<const std::complex<double>> v, double r, double weight) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    if (r != 1.0 && r != 2.0 && r != 4.0) {
        throw UnsupportedExponent("norm exponent must be 1, 2, 4 or inf");
    }
    CompensatedSum acc;
    for (const auto& z : v) {
        const double a2 = std::norm(z);
        if (r == 1.0) {
            acc.add(std::sqrt(a2));
        } else if (r == 2.0) {
            acc.add(a2);
        } else {
            acc.add(a2 * a2);
        }
    }
    return std::pow(weight * acc.value(), 1.0 / r);
}

}  // namespace

double norm_probability(std::span<const std::complex<double>> v, double r) {
    return norm_impl(v, r, 1.0 / static_cast<double>(v.size()));
}

double norm_counting(std::span<const std::complex<double>> v, double r) {
    return norm_impl(v, r, 1.0);
}

double norm_probability(const GridFunction& f, double r) {
    return norm_probability(std::span<const std::complex<double>>(f.values), r);
}

double norm_counting(const Spectrum& s, double r) {
    return norm_counting(std::span<const std::complex<double>>(s.coefficients), r);
}

LevelSplit level_set_split(const GridFunction& f, double epsilon) {
    if (!(epsilon > 0.0)) throw NonpositiveEpsilon("epsilon must be > 0");
    const std::uint32_t p = f.prime.value();
    const double l2 = norm_probability(f, 2.0);
    const double threshold = l2 / (epsilon * std::sqrt(static_cast<double>(p)));
    Spectrum full = dft(f);
    LevelSplit split{Spectrum(f.prime), Spectrum(f.prime), epsilon, threshold};
    // Strictly-above goes to g. The comparison is exact in reals; the
    // relative guard keeps coefficients that tie with the threshold up to
    // rounding on the h side, where strict inequality puts them.
    const double cutoff = threshold * (1.0 + 1e-12);
    for (std::uint32_t xi = 0; xi < p; ++xi) {
        const std::complex<double> c = full.coefficients[xi];
        if (std::abs(c) > cutoff) {
            split.g.coefficients[xi] = c;
        } else {
            split.h.coefficients[xi] = c;
        }
    }
    // Both bounds are theorems; a failure here means the split is broken.
    const double slack = 1.0 + 1e-9;
    const double g_l1 = norm_counting(split.g, 1.0);
    const double g_bound = epsilon * std::sqrt(static_cast<double>(p)) * l2;
    if (g_l1 > g_bound * slack + 1e-12) {
        throw Error("level-set split violated the l1 bound on g");
    }
    const double h_l4 = norm_counting(split.h, 4.0);
    const double h_bound =
        std::pow(epsilon, -0.5) * std::pow(static_cast<double>(p), -0.25) * l2;
    if (h_l4 > h_bound * slack + 1e-12) {
        throw Error("level-set split violated the l4 bound on h");
    }
    return split;
}

GridFunction read_grid_csv(std::istream& in, Prime p) {
    std::string line;
    if (!std::getline(in, line)) throw FileFormatError("empty grid CSV");
    // tolerate trailing CR from Windows-style files
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "index,re,im") {
        throw FileFormatError("grid CSV must start with header 'index,re,im'");
    }
    GridFunction f(p);
    std::vector<bool> seen(p.value(), false);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::uint64_t idx;
        double re, im;
        char comma1, comma2;
        std::istringstream parse(line);
        if (!(parse >> idx >> comma1 >> re >> comma2 >> im) || comma1 != ',' ||
            comma2 != ',') {
            throw FileFormatError("malformed grid CSV row: " + line);
        }
        if (idx >= p.value()) {
            throw FileFormatError("grid CSV index out of range: " + std::to_string(idx));
        }
        if (seen[idx]) {
            throw FileFormatError("duplicate grid CSV index: " + std::to_string(idx));
        }
        seen[idx] = true;
        f.values[idx] = {re, im};
        ++rows;
    }
    if (rows != p.value()) {
        throw FileFormatError("grid CSV has " + std::to_string(rows) + " rows, expected " +
                              std::to_string(p.value()));
    }
    return f;
}

void write_grid_csv(std::ostream& out, const GridFunction& f) {
    out << "index,re,im\n";
    out.precision(17);
    for (std::uint32_t x = 0; x < f.prime.value(); ++x) {
        out << x << ',' << f.values[x].real() << ',' << f.values[x].imag() << '\n';
    }
}

}  // namespace rfprog
