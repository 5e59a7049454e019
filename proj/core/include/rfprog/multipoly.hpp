#pragma once

#include <array>
#include <map>

#include "rfprog/ratfield.hpp"

namespace rfprog {

// Sparse polynomial over Z in a small fixed number of variables. Only used
// for symbolic identity checks, so the term count stays tiny; a map keyed
// by exponent vector is plenty.
template <unsigned N>
class MultiPoly {
public:
    using Exponents = std::array<unsigned, N>;

    MultiPoly() = default;

    static MultiPoly constant(BigInt c) {
        MultiPoly r;
        if (c != 0) r.terms_[Exponents{}] = std::move(c);
        return r;
    }

    // Embeds a univariate polynomial as a polynomial in variable `var`.
    static MultiPoly from_univariate(const IntPolynomial& p, unsigned var) {
        MultiPoly r;
        for (int i = 0; i <= p.degree(); ++i) {
            if (p.coeff(i) == 0) continue;
            Exponents e{};
            e[var] = static_cast<unsigned>(i);
            r.terms_[e] = p.coeff(i);
        }
        return r;
    }

    bool is_zero() const { return terms_.empty(); }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_[e] = c;
            } else {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (unsigned i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    BigInt c = ca * cb;
                    if (c != 0) r.terms_[e] = std::move(c);
                } else {
                    it->second += ca * cb;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.terms_ == b.terms_;
    }

    std::size_t term_count() const { return terms_.size(); }

private:
    std::map<Exponents, BigInt> terms_;
};

}  // namespace rfprog
