#include "rfprog/ratfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "rfprog/multipoly.hpp"

namespace rfprog {

namespace {
const BigInt kZero = 0;

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt gcd_big(BigInt a, BigInt b) {
    a = abs_big(a);
    b = abs_big(b);
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}
}  // namespace

// ---------------------------------------------------------------------------
// IntPolynomial
// ---------------------------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(BigInt c) {
    IntPolynomial r;
    if (c != 0) r.coeffs_.push_back(std::move(c));
    return r;
}

IntPolynomial IntPolynomial::variable() {
    IntPolynomial r;
    r.coeffs_ = {0, 1};
    return r;
}

const BigInt& IntPolynomial::leading() const {
    if (coeffs_.empty()) return kZero;
    return coeffs_.back();
}

const BigInt& IntPolynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<std::size_t>(i)];
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::scaled(const BigInt& c) const {
    if (c == 0) return {};
    IntPolynomial r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
    IntPolynomial result = constant(1);
    IntPolynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        base = base * base;
        e >>= 1u;
    }
    return result;
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigInt> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * i;
    return IntPolynomial(std::move(c));
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) {
        g = gcd_big(g, c);
        if (g == 1) break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    const BigInt g = content();
    if (g == 0 || g == 1) return *this;
    return divided_by(g);
}

IntPolynomial IntPolynomial::divided_by(const BigInt& c) const {
    IntPolynomial r = *this;
    for (auto& x : r.coeffs_) x /= c;
    return r;
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

std::vector<std::uint32_t> IntPolynomial::coefficients_mod(Prime p) const {
    const BigInt m = p.value();
    std::vector<std::uint32_t> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        BigInt r = coeffs_[i] % m;
        if (r < 0) r += m;
        out[i] = static_cast<std::uint32_t>(r);
    }
    return out;
}

std::uint32_t IntPolynomial::evaluate_mod(std::uint32_t y, Prime p) const {
    const std::uint64_t m = p.value();
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        BigInt r = coeffs_[i] % static_cast<std::int64_t>(m);
        if (r < 0) r += static_cast<std::int64_t>(m);
        acc = (acc * y + static_cast<std::uint64_t>(r)) % m;
    }
    return static_cast<std::uint32_t>(acc);
}

namespace {

// lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
IntPolynomial pseudo_remainder(IntPolynomial a, const IntPolynomial& b) {
    const int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        // a <- lc(b)*a - lc(a)*t^shift*b
        std::vector<BigInt> scaled_b(static_cast<std::size_t>(db + shift + 1));
        for (int i = 0; i <= db; ++i) scaled_b[static_cast<std::size_t>(i + shift)] = b.coeff(i) * a.leading();
        a = a.scaled(b.leading()) - IntPolynomial(std::move(scaled_b));
    }
    return a;
}

IntPolynomial normalized_primitive(IntPolynomial p) {
    if (!p.is_zero() && p.leading() < 0) p = -p;
    return p.primitive_part();
}

}  // namespace

IntPolynomial IntPolynomial::gcd(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero()) return normalized_primitive(std::move(b));
    if (b.is_zero()) return normalized_primitive(std::move(a));
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_remainder(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return normalized_primitive(std::move(a));
}

BigInt IntPolynomial::resultant(const IntPolynomial& a, const IntPolynomial& b) {
    const int da = a.degree(), db = b.degree();
    if (a.is_zero() || b.is_zero()) return 0;
    if (da == 0 && db == 0) return 1;
    if (db == 0) {
        BigInt r = 1;
        for (int i = 0; i < da; ++i) r *= b.leading();
        return r;
    }
    if (da == 0) {
        BigInt r = 1;
        for (int i = 0; i < db; ++i) r *= a.leading();
        return r;
    }
    // Sylvester matrix, fraction-free (Bareiss) elimination.
    const int n = da + db;
    std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(n),
                                       std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(0)));
    for (int r = 0; r < db; ++r) {
        for (int i = 0; i <= da; ++i) m[r][r + i] = a.coeff(da - i);
    }
    for (int r = 0; r < da; ++r) {
        for (int i = 0; i <= db; ++i) m[db + r][r + i] = b.coeff(db - i);
    }
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r) {
                if (m[r][k] != 0) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) return 0;
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw Error("divide_exact: division by zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw Error("divide_exact: inexact division");
    std::vector<BigInt> rem = a.coeffs_;
    std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    for (int d = a.degree() - b.degree(); d >= 0; --d) {
        const BigInt& top = rem[static_cast<std::size_t>(d + b.degree())];
        if (top % b.leading() != 0) throw Error("divide_exact: inexact division");
        BigInt c = top / b.leading();
        q[static_cast<std::size_t>(d)] = c;
        for (int i = 0; i <= b.degree(); ++i) {
            rem[static_cast<std::size_t>(d + i)] -= c * b.coeff(i);
        }
    }
    for (const auto& r : rem) {
        if (r != 0) throw Error("divide_exact: nonzero remainder");
    }
    return IntPolynomial(std::move(q));
}

// ---------------------------------------------------------------------------
// RationalFunction
// ---------------------------------------------------------------------------

RationalFunction::RationalFunction() : num_(), den_(IntPolynomial::constant(1)) {}

RationalFunction::RationalFunction(IntPolynomial num, IntPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroFunction("denominator is the zero function");
    if (num_.is_zero()) {
        den_ = IntPolynomial::constant(1);
        return;
    }
    const IntPolynomial g = IntPolynomial::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = IntPolynomial::divide_exact(num_.primitive_part(), g).scaled(num_.content());
        den_ = IntPolynomial::divide_exact(den_.primitive_part(), g).scaled(den_.content());
    }
    const BigInt joint = gcd_big(num_.content(), den_.content());
    if (joint > 1) {
        num_ = num_.divided_by(joint);
        den_ = den_.divided_by(joint);
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RationalFunction RationalFunction::constant(BigInt c) {
    return RationalFunction(IntPolynomial::constant(std::move(c)), IntPolynomial::constant(1));
}

RationalFunction RationalFunction::variable() {
    return RationalFunction(IntPolynomial::variable(), IntPolynomial::constant(1));
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZeroFunction("division by the zero function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(unsigned e) const {
    return RationalFunction(num_.pow(e), den_.pow(e));
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(),
                            den_ * den_);
}

namespace {

void print_poly(std::ostream& os, const IntPolynomial& p) {
    if (p.is_zero()) {
        os << "0";
        return;
    }
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const BigInt& c = p.coeff(i);
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const BigInt a = abs_big(c);
        if (a != 1 || i == 0) os << a.str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
}

}  // namespace

std::string RationalFunction::to_string() const {
    std::ostringstream os;
    if (den_.degree() == 0 && den_.leading() == 1) {
        print_poly(os, num_);
    } else {
        os << "(";
        print_poly(os, num_);
        os << ")/(";
        print_poly(os, den_);
        os << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser: expr := term (('+'|'-') term)*
//         term := signed (('*'|'/') signed | juxtaposed signed)*
//         signed := ('+'|'-')* power
//         power := atom ('^' UINT)?
//         atom := UINT | 't' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected character", pos_);
        return r;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool starts_atom(char c) const {
        return c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
    }

    RationalFunction expr() {
        RationalFunction acc = term();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RationalFunction term() {
        RationalFunction acc = signed_factor();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * signed_factor();
            } else if (c == '/') {
                ++pos_;
                acc = acc / signed_factor();
            } else if (starts_atom(c)) {
                acc = acc * power();  // implicit multiplication, e.g. "2t"
            } else {
                return acc;
            }
        }
    }

    RationalFunction signed_factor() {
        int sign = 1;
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
            } else if (c == '-') {
                ++pos_;
                sign = -sign;
            } else {
                break;
            }
        }
        RationalFunction f = power();
        return sign < 0 ? -f : f;
    }

    RationalFunction power() {
        RationalFunction base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                throw SyntaxError("expected nonnegative integer exponent", pos_);
            }
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
                if (e > 1000) throw SyntaxError("exponent too large", at);
                ++pos_;
            }
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    RationalFunction atom() {
        const char c = peek();
        if (c == 't') {
            ++pos_;
            return RationalFunction::variable();
        }
        if (c == '(') {
            ++pos_;
            RationalFunction inner = expr();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            return RationalFunction::constant(std::move(v));
        }
        throw SyntaxError("expected integer, 't', or '('", pos_);
    }
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text) {
    return Parser(text).parse();
}

// ---------------------------------------------------------------------------
// Linear independence, evaluation, nonconstancy
// ---------------------------------------------------------------------------

namespace {

// Exact rank of a small integer matrix (fraction-free elimination).
int integer_matrix_rank(std::vector<std::vector<BigInt>> m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            const BigInt a = m[rank][col], b = m[r][col];
            for (std::size_t c2 = col; c2 < cols; ++c2) {
                m[r][c2] = m[r][c2] * a - m[rank][c2] * b;
            }
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

}  // namespace

bool check_linear_independence(const RationalFunction& F, const RationalFunction& G) {
    // Over the common denominator b_F * b_G, the span of {1, F, G} is the
    // span of the three integer polynomials below.
    const IntPolynomial p0 = F.den() * G.den();
    const IntPolynomial p1 = F.num() * G.den();
    const IntPolynomial p2 = G.num() * F.den();
    const int d = std::max({p0.degree(), p1.degree(), p2.degree()});
    std::vector<std::vector<BigInt>> m(3, std::vector<BigInt>(static_cast<std::size_t>(d + 1), BigInt(0)));
    for (int i = 0; i <= d; ++i) {
        m[0][static_cast<std::size_t>(i)] = p0.coeff(i);
        m[1][static_cast<std::size_t>(i)] = p1.coeff(i);
        m[2][static_cast<std::size_t>(i)] = p2.coeff(i);
    }
    return integer_matrix_rank(std::move(m)) == 3;
}

std::optional<FieldElement> evaluate_mod_p(const RationalFunction& R, const FieldElement& y) {
    const Prime p = y.modulus;
    const std::uint32_t dv = R.den().evaluate_mod(y.value, p);
    if (dv == 0) return std::nullopt;
    const std::uint32_t nv = R.num().evaluate_mod(y.value, p);
    const std::uint32_t inv = mod_inverse(FieldElement(dv, p)).value;
    return FieldElement(static_cast<std::uint32_t>(
                            static_cast<std::uint64_t>(nv) * inv % p.value()),
                        p);
}

ValueTable tabulate_mod_p(const RationalFunction& R, Prime p) {
    const std::uint32_t n = p.value();
    const std::uint64_t m = n;
    const auto nc = R.num().coefficients_mod(p);
    const auto dc = R.den().coefficients_mod(p);
    auto horner = [m](const std::vector<std::uint32_t>& c, std::uint32_t y) {
        std::uint64_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = (acc * y + c[i]) % m;
        return static_cast<std::uint32_t>(acc);
    };
    ValueTable t;
    t.values.assign(n, 0);
    t.pole.assign(n, 0);
    std::vector<std::uint32_t> dens;
    std::vector<std::uint32_t> where;
    dens.reserve(n);
    where.reserve(n);
    for (std::uint32_t y = 0; y < n; ++y) {
        const std::uint32_t dv = horner(dc, y);
        if (dv == 0) {
            t.pole[y] = 1;
            ++t.pole_count;
        } else {
            dens.push_back(dv);
            where.push_back(y);
        }
    }
    const auto inv = batch_inverse_values(dens, p);
    for (std::size_t i = 0; i < where.size(); ++i) {
        const std::uint32_t y = where[i];
        t.values[y] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(horner(nc, y)) * inv[i] % m);
    }
    return t;
}

bool is_nonconstant(const RationalFunction& R) {
    // Compare against R(c) at the first integer point where R is defined.
    BigInt c = 0;
    while (R.den().evaluate(c) == 0) ++c;
    const BigInt nc = R.num().evaluate(c);
    const BigInt dc = R.den().evaluate(c);
    const IntPolynomial diff = R.num().scaled(dc) - R.den().scaled(nc);
    return !diff.is_zero();
}

bool is_nonconstant_mod_p(const RationalFunction& R, Prime p) {
    // The cleared numerator of R(u) - R(v) is sum_{i<j} (a_i b_j - a_j b_i)
    // (u^i v^j - u^j v^i); it is nonzero mod p iff some 2x2 minor of the
    // (num, den) coefficient matrix survives reduction.
    const auto a = R.num().coefficients_mod(p);
    const auto b = R.den().coefficients_mod(p);
    const std::uint64_t m = p.value();
    const std::size_t n = std::max(a.size(), b.size());
    auto at = [](const std::vector<std::uint32_t>& v, std::size_t i) -> std::uint64_t {
        return i < v.size() ? v[i] : 0;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((at(a, i) * at(b, j)) % m != (at(a, j) * at(b, i)) % m) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Stratification bundle and the determinant identity
// ---------------------------------------------------------------------------

namespace {

using BigRat = boost::multiprecision::cpp_rational;

// Product c * u0(y1) u1(y2) u2(y3) u3(y4) u4(y5). Every polynomial in the
// determinant identity is a short sum of these, because each column of the
// Jacobian minor is univariate in its own variable.
struct SeparableTerm {
    BigRat coeff;
    std::array<IntPolynomial, 5> factors;
};

SeparableTerm operator*(const SeparableTerm& a, const SeparableTerm& b) {
    SeparableTerm r;
    r.coeff = a.coeff * b.coeff;
    for (unsigned j = 0; j < 5; ++j) r.factors[j] = a.factors[j] * b.factors[j];
    return r;
}

// Exact zero test for sum_k coeff_k prod_j u_{k,j}(y_j). Peel variables
// left to right: row-reduce the level-j factors to a basis; independence of
// the basis rows splits the sum into one smaller subproblem per row.
bool separable_sum_is_zero(const std::vector<SeparableTerm>& input, unsigned level) {
    std::vector<SeparableTerm> terms;
    for (const auto& t : input) {
        if (t.coeff == 0) continue;
        bool dead = false;
        for (unsigned j = level; j < 5; ++j) {
            if (t.factors[j].is_zero()) dead = true;
        }
        if (!dead) terms.push_back(t);
    }
    if (terms.empty()) return true;
    if (level == 5) {
        BigRat s = 0;
        for (const auto& t : terms) s += t.coeff;
        return s == 0;
    }

    int dim = 0;
    for (const auto& t : terms) dim = std::max(dim, t.factors[level].degree() + 1);
    // Row-reduce the factor matrix (one row per term).
    std::vector<std::vector<BigRat>> rows(terms.size(), std::vector<BigRat>(static_cast<std::size_t>(dim)));
    for (std::size_t k = 0; k < terms.size(); ++k) {
        for (int i = 0; i < dim; ++i) {
            rows[k][static_cast<std::size_t>(i)] = BigRat(terms[k].factors[level].coeff(i));
        }
    }
    std::vector<std::vector<BigRat>> basis;
    std::vector<int> pivots;
    for (auto row : rows) {
        for (std::size_t m = 0; m < basis.size(); ++m) {
            const BigRat c = row[static_cast<std::size_t>(pivots[m])];
            if (c == 0) continue;
            for (int i = 0; i < dim; ++i) {
                row[static_cast<std::size_t>(i)] -= c * basis[m][static_cast<std::size_t>(i)];
            }
        }
        int pivot = -1;
        for (int i = 0; i < dim; ++i) {
            if (row[static_cast<std::size_t>(i)] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        const BigRat inv = row[static_cast<std::size_t>(pivot)];
        for (int i = 0; i < dim; ++i) row[static_cast<std::size_t>(i)] /= inv;
        // keep the basis fully reduced so coordinates read off pivot columns
        for (std::size_t m = 0; m < basis.size(); ++m) {
            const BigRat c = basis[m][static_cast<std::size_t>(pivot)];
            if (c == 0) continue;
            for (int i = 0; i < dim; ++i) {
                basis[m][static_cast<std::size_t>(i)] -= c * row[static_cast<std::size_t>(i)];
            }
        }
        basis.push_back(std::move(row));
        pivots.push_back(pivot);
    }
    // v_k = sum_m v_k[pivot_m] * basis_m, so each basis row spawns one
    // subproblem with scalar weights folded into the coefficients.
    for (std::size_t m = 0; m < basis.size(); ++m) {
        std::vector<SeparableTerm> sub;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const BigRat w = rows[k][static_cast<std::size_t>(pivots[m])];
            if (w == 0) continue;
            SeparableTerm t = terms[k];
            t.coeff *= w;
            sub.push_back(std::move(t));
        }
        if (!separable_sum_is_zero(sub, level + 1)) return false;
    }
    return true;
}

// The first five columns of the Jacobian of the defining equations with
// respect to (y1..y5); entry (i, j) is univariate in y_{j+1}.
std::array<std::array<RationalFunction, 5>, 5> jacobian_minor(const RationalFunction& dF,
                                                              const RationalFunction& dG) {
    const RationalFunction zero;
    const RationalFunction fg = dF - dG;
    std::array<std::array<RationalFunction, 5>, 5> m;
    m[0] = {fg, -fg, -fg, fg, zero};
    m[1] = {zero, zero, zero, zero, fg};
    m[2] = {dF, zero, -dF, zero, -dF};
    m[3] = {zero, dF, zero, -dF, zero};
    m[4] = {zero, zero, dG, -dG, zero};
    return m;
}

}  // namespace

bool determinant_factorization_holds(const RationalFunction& F, const RationalFunction& G) {
    const RationalFunction dF = F.derivative();
    const RationalFunction dG = G.derivative();
    const auto m = jacobian_minor(dF, dG);

    // Clear each column's denominators: M'(i,j) = num(M(i,j)) * prod of the
    // other denominators in column j, so det(M) = det(M') / prod_j delta_j.
    SeparableTerm delta;
    delta.coeff = 1;
    std::array<std::array<IntPolynomial, 5>, 5> cleared;
    for (unsigned j = 0; j < 5; ++j) {
        IntPolynomial prod = IntPolynomial::constant(1);
        for (unsigned i = 0; i < 5; ++i) prod = prod * m[i][j].den();
        delta.factors[j] = prod;
        for (unsigned i = 0; i < 5; ++i) {
            IntPolynomial others = IntPolynomial::constant(1);
            for (unsigned k = 0; k < 5; ++k) {
                if (k != i) others = others * m[k][j].den();
            }
            cleared[i][j] = m[i][j].num() * others;
        }
    }

    // Leibniz expansion of det(M'): one separable term per permutation that
    // avoids the zero entries (five survive for this sparsity pattern).
    std::vector<SeparableTerm> det_terms;
    std::array<unsigned, 5> perm = {0, 1, 2, 3, 4};
    do {
        bool zero = false;
        for (unsigned i = 0; i < 5; ++i) {
            if (m[i][perm[i]].is_zero()) zero = true;
        }
        if (zero) continue;
        int sign = 1;
        for (unsigned i = 0; i < 5; ++i) {
            for (unsigned j = i + 1; j < 5; ++j) {
                if (perm[i] > perm[j]) sign = -sign;
            }
        }
        SeparableTerm t;
        t.coeff = sign;
        t.factors.fill(IntPolynomial::constant(1));
        for (unsigned i = 0; i < 5; ++i) t.factors[perm[i]] = cleared[i][perm[i]];
        det_terms.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Closed form: (G'(y5) - F'(y5)) *
    //   [G'(y1)F'(y2)F'(y3)G'(y4) - F'(y1)G'(y2)G'(y3)F'(y4)]
    // over the common denominator den(G'-F')(y5) prod_{j<4} den(F')den(G')(yj).
    const RationalFunction gap = dG - dF;
    const std::array<const RationalFunction*, 4> first = {&dG, &dF, &dF, &dG};
    const std::array<const RationalFunction*, 4> second = {&dF, &dG, &dG, &dF};
    SeparableTerm closed1, closed2, closed_den;
    closed1.coeff = 1;
    closed2.coeff = -1;
    closed_den.coeff = 1;
    closed1.factors.fill(IntPolynomial::constant(1));
    closed2.factors.fill(IntPolynomial::constant(1));
    closed_den.factors.fill(IntPolynomial::constant(1));
    for (unsigned j = 0; j < 4; ++j) {
        closed1.factors[j] = first[j]->num() * second[j]->den();
        closed2.factors[j] = second[j]->num() * first[j]->den();
        closed_den.factors[j] = dF.den() * dG.den();
    }
    closed1.factors[4] = gap.num();
    closed2.factors[4] = gap.num();
    closed_den.factors[4] = gap.den();

    // det(M')/delta == closed_num/closed_den, cross-multiplied into a
    // single separable sum that must vanish identically.
    std::vector<SeparableTerm> identity;
    for (const auto& t : det_terms) identity.push_back(t * closed_den);
    SeparableTerm c1 = closed1 * delta;
    SeparableTerm c2 = closed2 * delta;
    c1.coeff = -c1.coeff;
    c2.coeff = -c2.coeff;
    identity.push_back(std::move(c1));
    identity.push_back(std::move(c2));
    return separable_sum_is_zero(identity, 0);
}

StratificationBundle build_stratification_bundle(const RationalFunction& F,
                                                 const RationalFunction& G) {
    if (!check_linear_independence(F, G)) {
        throw DependentInput("{1, F, G} are linearly dependent over Q");
    }
    StratificationBundle b;
    b.f_deriv = F.derivative();
    b.g_deriv = G.derivative();
    b.deriv_gap = b.g_deriv - b.f_deriv;
    b.deriv_ratio = b.g_deriv / b.f_deriv;
    b.curvature = b.deriv_ratio.derivative();
    b.gap_times_ratio = (b.f_deriv - b.g_deriv) * b.deriv_ratio;
    b.minor_summand = b.gap_times_ratio / b.curvature;
    if (!determinant_factorization_holds(F, G)) {
        throw Error("5x5 determinant does not match its closed product form");
    }
    return b;
}

}  // namespace rfprog
