#include "rfprog/fp_arith.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

#include "rfprog/ratfield.hpp"

namespace rfprog {

namespace {

std::atomic<std::uint64_t> g_egcd_count{0};

// Inverse of a mod p by extended gcd. a must be a nonzero residue.
std::uint32_t egcd_inverse(std::uint32_t a, std::uint32_t p) {
    g_egcd_count.fetch_add(1, std::memory_order_relaxed);
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (s0 < 0) s0 += p;
    return static_cast<std::uint32_t>(s0);
}

}  // namespace

std::uint64_t egcd_invocation_count() {
    return g_egcd_count.load(std::memory_order_relaxed);
}

Prime::Prime(std::uint32_t p) : p_(p) {
    if (p < 3) throw BadPrime("prime must be >= 3, got " + std::to_string(p));
    if (p > kMax) throw BadPrime("prime exceeds cap 2^20: " + std::to_string(p));
    if (p % 2 == 0) throw BadPrime(std::to_string(p) + " is even");
    for (std::uint32_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0) {
            throw BadPrime(std::to_string(p) + " is composite (divisible by " +
                           std::to_string(d) + ")");
        }
    }
}

FieldElement mod_inverse(const FieldElement& a) {
    if (a.value == 0) throw ZeroInverse("inverse of 0 mod " +
                                        std::to_string(a.modulus.value()));
    return FieldElement(egcd_inverse(a.value, a.modulus.value()), a.modulus);
}

std::vector<std::uint32_t> batch_inverse_values(std::span<const std::uint32_t> values,
                                                Prime p) {
    const std::uint64_t m = p.value();
    std::vector<std::uint32_t> out(values.size());
    if (values.empty()) return out;

    // Montgomery trick: prefix[i] = v_0 * ... * v_i, one inversion of the
    // full product, then peel back.
    std::vector<std::uint32_t> prefix(values.size());
    std::uint64_t running = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0) {
            throw ZeroInverse("batch_inverse: zero at index " + std::to_string(i));
        }
        running = running * values[i] % m;
        prefix[i] = static_cast<std::uint32_t>(running);
    }
    std::uint64_t inv = egcd_inverse(static_cast<std::uint32_t>(running), p.value());
    for (std::size_t i = values.size(); i-- > 1;) {
        out[i] = static_cast<std::uint32_t>(inv * prefix[i - 1] % m);
        inv = inv * values[i] % m;
    }
    out[0] = static_cast<std::uint32_t>(inv);
    return out;
}

std::vector<FieldElement> batch_inverse(std::span<const FieldElement> values) {
    std::vector<FieldElement> out;
    out.reserve(values.size());
    if (values.empty()) return out;
    const Prime p = values.front().modulus;
    std::vector<std::uint32_t> raw(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].modulus != p) throw PrimeMismatch("batch_inverse: mixed moduli");
        raw[i] = values[i].value;
    }
    const auto inv = batch_inverse_values(raw, p);
    for (std::uint32_t v : inv) out.emplace_back(v, p);
    return out;
}

CharacterTable::CharacterTable(Prime p) : p_(p), table_(p.value()) {
    const double scale = 2.0 * std::numbers::pi / p.value();
    for (std::uint32_t a = 0; a < p.value(); ++a) {
        table_[a] = {std::cos(scale * a), std::sin(scale * a)};
    }
}

namespace {

bool divides_leading(const IntPolynomial& poly, std::uint32_t p) {
    return !poly.is_zero() && poly.leading() % p == 0;
}

// Leading-coefficient and resultant checks for one derived function.
bool check_function(const RationalFunction& R, std::uint32_t p, const char* name,
                    std::string& diag) {
    if (divides_leading(R.num(), p)) {
        diag = std::to_string(p) + " divides the leading numerator coefficient of " + name;
        return false;
    }
    if (divides_leading(R.den(), p)) {
        diag = std::to_string(p) + " divides the leading denominator coefficient of " +
               name;
        return false;
    }
    const BigInt res = IntPolynomial::resultant(R.num(), R.den());
    if (res % p == 0) {
        diag = std::to_string(p) + " divides the numerator/denominator resultant of " +
               name;
        return false;
    }
    return true;
}

}  // namespace

GoodPrimeReport is_good_prime(const RationalFunction& F, const RationalFunction& G,
                              Prime p) {
    if (!check_linear_independence(F, G)) {
        throw DependentInput("{1, F, G} are linearly dependent over Q");
    }
    const RationalFunction dF = F.derivative();
    const RationalFunction dG = G.derivative();
    const RationalFunction gap = dG - dF;
    const RationalFunction ratio = dG / dF;
    const RationalFunction curv = ratio.derivative();
    const RationalFunction summand = (dF - dG) * ratio / curv;

    const std::uint32_t q = p.value();
    std::string diag;
    const std::pair<const RationalFunction*, const char*> checked[] = {
        {&F, "F"},      {&G, "G"},    {&dF, "F'"},
        {&dG, "G'"},    {&gap, "G'-F'"}, {&curv, "(G'/F')'"},
    };
    for (const auto& [fn, name] : checked) {
        if (!check_function(*fn, q, name, diag)) return {false, diag};
    }
    if (!is_nonconstant_mod_p(ratio, p)) {
        return {false, "G'/F' degenerates to a constant mod " + std::to_string(q)};
    }
    if (!is_nonconstant_mod_p(summand, p)) {
        return {false, "(F'-G')(G'/F')/(G'/F')' degenerates to a constant mod " +
                           std::to_string(q)};
    }
    return {true, ""};
}

}  // namespace rfprog
