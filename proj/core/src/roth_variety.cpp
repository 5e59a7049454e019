#include "rfprog/roth_variety.hpp"

#include <algorithm>
#include <cmath>

#include "rfprog/fp_arith.hpp"
#include "rfprog/parallel.hpp"
#include "rfprog/summation.hpp"

namespace rfprog {

RothEquations::RothEquations(const RationalFunction& F, const RationalFunction& G, Prime p)
    : prime_(p), pole_count_(0) {
    const GoodPrimeReport report = is_good_prime(F, G, p);
    if (!report) throw BadPrime("p=" + std::to_string(p.value()) + " is not good: " +
                                report.diagnostic);
    const ValueTable tf = tabulate_mod_p(F, p);
    const ValueTable tg = tabulate_mod_p(G, p);
    const std::uint32_t n = p.value();
    f_.assign(n, 0);
    g_.assign(n, 0);
    h_.assign(n, 0);
    pole_.assign(n, 0);
    for (std::uint32_t y = 0; y < n; ++y) {
        if (tf.pole[y] || tg.pole[y]) {
            pole_[y] = 1;
            ++pole_count_;
        } else {
            f_[y] = tf.values[y];
            g_[y] = tg.values[y];
            h_[y] = tf.values[y] >= tg.values[y] ? tf.values[y] - tg.values[y]
                                                 : tf.values[y] + n - tg.values[y];
            non_pole_.push_back(y);
        }
    }
}

std::optional<std::uint32_t> RothEquations::equation_value(
    int k, const std::array<std::uint32_t, 8>& y) const {
    const std::int64_t p = prime_.value();
    // coordinate index lists per equation (1-based equations, 0-based coords)
    static constexpr std::array<std::array<int, 4>, 5> kCoords = {{
        {0, 1, 2, 3},  // eq1 over H
        {4, 5, 6, 7},  // eq2 over H
        {0, 2, 4, 6},  // eq3 over F
        {1, 3, 5, 7},  // eq4 over F
        {2, 3, 6, 7},  // eq5 over G
    }};
    static constexpr std::array<std::array<int, 4>, 5> kSigns = {{
        {+1, -1, -1, +1},
        {+1, -1, -1, +1},
        {+1, -1, -1, +1},
        {+1, -1, -1, +1},
        {+1, -1, -1, +1},
    }};
    if (k < 1 || k > 5) throw Error("equation index must be in 1..5");
    const auto& coords = kCoords[static_cast<std::size_t>(k - 1)];
    const auto& signs = kSigns[static_cast<std::size_t>(k - 1)];
    const std::vector<std::uint32_t>& table = (k <= 2) ? h_ : (k <= 4) ? f_ : g_;
    std::int64_t acc = 0;
    for (int i = 0; i < 4; ++i) {
        const std::uint32_t c = y[static_cast<std::size_t>(coords[i])];
        if (c >= prime_.value() || pole_[c]) return std::nullopt;
        acc += signs[i] * static_cast<std::int64_t>(table[c]);
    }
    acc %= p;
    if (acc < 0) acc += p;
    return static_cast<std::uint32_t>(acc);
}

bool RothEquations::is_point(const std::array<std::uint32_t, 8>& y) const {
    for (const std::uint32_t c : y) {
        if (c >= prime_.value() || pole_[c]) return false;
    }
    for (int k = 1; k <= 5; ++k) {
        if (*equation_value(k, y) != 0) return false;
    }
    return true;
}

RothEquations specialize_equations(const RationalFunction& F, const RationalFunction& G,
                                   Prime p) {
    return RothEquations(F, G, p);
}

std::int64_t count_points_brute(const RothEquations& eqs) {
    const std::uint32_t p = eqs.prime().value();
    if (p > 11) {
        throw PrimeTooLarge("brute-force count requires p <= 11, got " + std::to_string(p));
    }
    const auto& ys = eqs.non_pole();
    const std::size_t m = ys.size();
    std::vector<std::int64_t> F(m), G(m), H(m);
    for (std::size_t i = 0; i < m; ++i) {
        F[i] = eqs.f_value(ys[i]);
        G[i] = eqs.g_value(ys[i]);
        H[i] = eqs.h_value(ys[i]);
    }
    const std::int64_t q = p;
    auto zero = [q](std::int64_t v) { return v % q == 0; };
    std::int64_t count = 0;
    for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t i2 = 0; i2 < m; ++i2)
    for (std::size_t i3 = 0; i3 < m; ++i3)
    for (std::size_t i4 = 0; i4 < m; ++i4) {
        if (!zero(H[i1] - H[i2] - H[i3] + H[i4])) continue;  // eq1
        for (std::size_t i5 = 0; i5 < m; ++i5)
        for (std::size_t i6 = 0; i6 < m; ++i6)
        for (std::size_t i7 = 0; i7 < m; ++i7) {
            if (!zero(F[i1] - F[i3] - F[i5] + F[i7])) continue;  // eq3
            for (std::size_t i8 = 0; i8 < m; ++i8) {
                if (!zero(H[i5] - H[i6] - H[i7] + H[i8])) continue;  // eq2
                if (!zero(F[i2] - F[i4] - F[i6] + F[i8])) continue;  // eq4
                if (!zero(G[i3] - G[i4] - G[i7] + G[i8])) continue;  // eq5
                ++count;
            }
        }
    }
    return count;
}

namespace {

// value -> list of non-pole y with table[y] == value
std::vector<std::vector<std::uint32_t>> preimages(const std::vector<std::uint32_t>& ys,
                                                  const RothEquations& eqs,
                                                  bool use_f) {
    std::vector<std::vector<std::uint32_t>> pre(eqs.prime().value());
    for (const std::uint32_t y : ys) {
        pre[use_f ? eqs.f_value(y) : eqs.g_value(y)].push_back(y);
    }
    return pre;
}

template <typename PerPoint>
std::int64_t staged_enumeration(const RothEquations& eqs, PerPoint&& per_point) {
    const std::uint32_t p = eqs.prime().value();
    const auto& ys = eqs.non_pole();
    const auto f_pre = preimages(ys, eqs, true);
    const auto g_pre = preimages(ys, eqs, false);
    const std::int64_t q = p;

    std::vector<std::int64_t> slice_counts(ys.size(), 0);
    parallel_slices(ys.size(), [&](std::size_t slice) {
        const std::uint32_t y1 = ys[slice];
        const std::int64_t h1 = eqs.h_value(y1);
        const std::int64_t f1 = eqs.f_value(y1);
        std::int64_t local = 0;
        for (const std::uint32_t y2 : ys) {
            const std::int64_t h12 = h1 - eqs.h_value(y2);
            for (const std::uint32_t y3 : ys) {
                const std::int64_t h123 = h12 - eqs.h_value(y3);
                const std::int64_t f13 = f1 - eqs.f_value(y3);
                for (const std::uint32_t y4 : ys) {
                    if ((h123 + eqs.h_value(y4)) % q != 0) continue;  // eq1
                    // eq3: F(y7) = F(y5) + F(y3) - F(y1)
                    for (const std::uint32_t y5 : ys) {
                        std::int64_t t7 = (eqs.f_value(y5) - f13) % q;
                        if (t7 < 0) t7 += q;
                        for (const std::uint32_t y7 : f_pre[static_cast<std::size_t>(t7)]) {
                            // eq5: G(y8) = G(y4) + G(y7) - G(y3)
                            std::int64_t t8 = (static_cast<std::int64_t>(eqs.g_value(y4)) +
                                               eqs.g_value(y7) - eqs.g_value(y3)) % q;
                            if (t8 < 0) t8 += q;
                            for (const std::uint32_t y8 :
                                 g_pre[static_cast<std::size_t>(t8)]) {
                                // eq4: F(y6) = F(y2) - F(y4) + F(y8)
                                std::int64_t t6 =
                                    (static_cast<std::int64_t>(eqs.f_value(y2)) -
                                     eqs.f_value(y4) + eqs.f_value(y8)) % q;
                                if (t6 < 0) t6 += q;
                                for (const std::uint32_t y6 :
                                     f_pre[static_cast<std::size_t>(t6)]) {
                                    // eq2 over H closes the system
                                    const std::int64_t e2 =
                                        (static_cast<std::int64_t>(eqs.h_value(y5)) -
                                         eqs.h_value(y6) - eqs.h_value(y7) +
                                         eqs.h_value(y8)) % q;
                                    if (e2 != 0) continue;
                                    ++local;
                                    per_point(slice, y1, y2, y3, y4, y5, y6, y7, y8);
                                }
                            }
                        }
                    }
                }
            }
        }
        slice_counts[slice] = local;
    });
    std::int64_t total = 0;
    for (const std::int64_t c : slice_counts) total += c;
    return total;
}

}  // namespace

std::int64_t count_points_staged(const RothEquations& eqs) {
    return staged_enumeration(eqs, [](std::size_t, std::uint32_t, std::uint32_t,
                                      std::uint32_t, std::uint32_t, std::uint32_t,
                                      std::uint32_t, std::uint32_t, std::uint32_t) {});
}

CharsumCount count_points_charsum(const RationalFunction& F, const RationalFunction& G,
                                  Prime p) {
    const RothEquations eqs(F, G, p);
    const std::uint32_t n = p.value();
    const CharacterTable chars(p);
    const std::complex<double>* e = chars.data();
    const auto& ys = eqs.non_pole();

    // T(alpha, beta), row-major alpha*p + beta.
    std::vector<std::complex<double>> T(static_cast<std::size_t>(n) * n);
    parallel_slices(n, [&](std::size_t alpha) {
        for (std::uint32_t beta = 0; beta < n; ++beta) {
            ComplexCompensatedSum acc;
            for (const std::uint32_t y : ys) {
                const std::uint64_t phase =
                    (alpha * static_cast<std::uint64_t>(eqs.f_value(y)) +
                     static_cast<std::uint64_t>(beta) * eqs.g_value(y)) % n;
                acc.add(e[phase]);
            }
            T[alpha * n + beta] = acc.value();
        }
    });

    // sum_{a,b,b'} |U|^2, sliced over b with a fixed iteration order.
    std::vector<double> slice_re(n, 0.0), slice_im(n, 0.0);
    parallel_slices(n, [&](std::size_t b) {
        CompensatedSum acc_re, acc_im;
        std::vector<std::size_t> row_b(n);
        for (std::uint32_t n1 = 0; n1 < n; ++n1) {
            row_b[n1] = static_cast<std::size_t>((n1 + n - b) % n) * n;
        }
        std::vector<std::size_t> row_bp(n);
        for (std::uint32_t bp = 0; bp < n; ++bp) {
            for (std::uint32_t n1 = 0; n1 < n; ++n1) {
                row_bp[n1] = static_cast<std::size_t>((n1 + n - bp) % n) * n;
            }
            for (std::uint32_t a = 0; a < n; ++a) {
                const std::uint32_t ba = static_cast<std::uint32_t>((b + n - a) % n);
                const std::uint32_t bpa = (bp + n - a) % n;
                ComplexCompensatedSum u;
                for (std::uint32_t n1 = 0; n1 < n; ++n1) {
                    u.add(T[row_b[n1] + b] * std::conj(T[row_b[n1] + ba]) *
                          std::conj(T[row_bp[n1] + bp]) * T[row_bp[n1] + bpa]);
                }
                const std::complex<double> uv = u.value();
                // U * conj(U): the imaginary part cancels exactly.
                const std::complex<double> sq = uv * std::conj(uv);
                acc_re.add(sq.real());
                acc_im.add(sq.imag());
            }
        }
        slice_re[b] = acc_re.value();
        slice_im[b] = acc_im.value();
    });
    CompensatedSum total_re, total_im;
    for (std::uint32_t b = 0; b < n; ++b) {
        total_re.add(slice_re[b]);
        total_im.add(slice_im[b]);
    }
    const double p5 = std::pow(static_cast<double>(n), 5.0);
    CharsumCount result{};
    result.raw_real = total_re.value() / p5;
    result.raw_imag = total_im.value() / p5;
    result.count = std::llround(result.raw_real);
    if (result.rounding_distance() > 0.4) {
        throw RoundingFailure("charsum drifted " + std::to_string(result.rounding_distance()) +
                              " from integer at p=" + std::to_string(n));
    }
    return result;
}

StratumClassifier::StratumClassifier(const RationalFunction& F, const RationalFunction& G,
                                     Prime p)
    : prime(p) {
    const StratificationBundle b = build_stratification_bundle(F, G);
    const std::uint32_t n = p.value();
    const ValueTable df = tabulate_mod_p(b.f_deriv, p);
    const ValueTable dg = tabulate_mod_p(b.g_deriv, p);
    f_deriv.assign(n, 0);
    g_deriv.assign(n, 0);
    for (std::uint32_t y = 0; y < n; ++y) {
        // poles of F' and G' sit inside the poles of F and G, which the
        // enumeration never visits; leave those slots at 0.
        if (!df.pole[y]) f_deriv[y] = df.values[y];
        if (!dg.pole[y]) g_deriv[y] = dg.values[y];
    }
    const auto curv = b.curvature.num().coefficients_mod(p);
    const auto sn = b.minor_summand.num().coefficients_mod(p);
    const auto sd = b.minor_summand.den().coefficients_mod(p);
    auto horner = [n](const std::vector<std::uint32_t>& c, std::uint32_t y) {
        std::uint64_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = (acc * y + c[i]) % n;
        return static_cast<std::uint32_t>(acc);
    };
    curvature_num.resize(n);
    summand_num.resize(n);
    summand_den.resize(n);
    for (std::uint32_t y = 0; y < n; ++y) {
        curvature_num[y] = horner(curv, y);
        summand_num[y] = horner(sn, y);
        summand_den[y] = horner(sd, y);
    }
}

Stratum StratumClassifier::classify(std::uint32_t y1, std::uint32_t y2, std::uint32_t y3,
                                    std::uint32_t y4, std::uint32_t y5) const {
    const std::uint64_t p = prime.value();
    const std::uint64_t d1 = f_deriv[y1], d2 = f_deriv[y2], d3 = f_deriv[y3],
                        d4 = f_deriv[y4];
    const std::uint64_t gap5 = (g_deriv[y5] + p - f_deriv[y5]) % p;
    // D = (G'(y5)-F'(y5)) [G'(y1)F'(y2)F'(y3)G'(y4) - F'(y1)G'(y2)G'(y3)F'(y4)]
    const std::uint64_t b1 = g_deriv[y1] * d2 % p * d3 % p * g_deriv[y4] % p;
    const std::uint64_t b2 = d1 * g_deriv[y2] % p * g_deriv[y3] % p * d4 % p;
    const std::uint64_t bracket = (b1 + p - b2) % p;
    if (gap5 * bracket % p != 0) return Stratum::YGen;
    if (d1 * d2 % p * d3 % p * d4 % p * gap5 % p == 0) return Stratum::YLow;
    if (curvature_num[y1] == 0 || curvature_num[y4] == 0) return Stratum::ZLow;
    // cleared numerator of summand(y1) - summand(y4)
    const std::uint64_t cross =
        (static_cast<std::uint64_t>(summand_num[y1]) * summand_den[y4] + p * p -
         static_cast<std::uint64_t>(summand_num[y4]) * summand_den[y1]) % p;
    if (cross == 0) return Stratum::ZBad;
    return Stratum::ZGood;
}

StratumCounts stratify_points(const RationalFunction& F, const RationalFunction& G,
                              Prime p) {
    if (p.value() > 31) {
        throw BadPrime("stratification requires p <= 31, got " + std::to_string(p.value()));
    }
    const RothEquations eqs(F, G, p);
    const StratumClassifier cls(F, G, p);
    struct Local {
        std::int64_t y_gen = 0, y_low = 0, z_good = 0, z_bad = 0, z_low = 0;
    };
    std::vector<Local> locals(eqs.non_pole().size());
    const std::int64_t total = staged_enumeration(
        eqs, [&](std::size_t slice, std::uint32_t y1, std::uint32_t y2, std::uint32_t y3,
                 std::uint32_t y4, std::uint32_t y5, std::uint32_t, std::uint32_t,
                 std::uint32_t) {
            switch (cls.classify(y1, y2, y3, y4, y5)) {
                case Stratum::YGen: ++locals[slice].y_gen; break;
                case Stratum::YLow: ++locals[slice].y_low; break;
                case Stratum::ZLow: ++locals[slice].z_low; break;
                case Stratum::ZBad: ++locals[slice].z_bad; break;
                case Stratum::ZGood: ++locals[slice].z_good; break;
            }
        });
    StratumCounts out{p};
    out.total = total;
    for (const Local& l : locals) {
        out.y_gen += l.y_gen;
        out.y_low += l.y_low;
        out.z_good += l.z_good;
        out.z_bad += l.z_bad;
        out.z_low += l.z_low;
    }
    return out;
}

std::int64_t diagonal_lower_bound(const RationalFunction& F, const RationalFunction& G,
                                  Prime p) {
    const ValueTable tf = tabulate_mod_p(F, p);
    const ValueTable tg = tabulate_mod_p(G, p);
    std::int64_t free_points = 0;
    for (std::uint32_t y = 0; y < p.value(); ++y) {
        if (!tf.pole[y] && !tg.pole[y]) ++free_points;
    }
    return free_points * free_points;
}

}  // namespace rfprog
