#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistbound {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense univariate polynomial over Z, coefficients stored in ascending
/// order of degree. Trailing zero coefficients are never stored, so the
/// zero polynomial is the empty coefficient vector and every nonzero
/// polynomial has a nonzero leading coefficient.
class IntegerPolynomial {
  public:
    /// degree() of the zero polynomial (stands in for "minus infinity").
    static constexpr int kDegreeOfZero = -1;

    IntegerPolynomial() = default;

    explicit IntegerPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }

    IntegerPolynomial(std::initializer_list<Int> coeffs) : coeffs_(coeffs) { normalize(); }

    static IntegerPolynomial constant(Int c) {
        IntegerPolynomial p;
        if (c != 0) p.coeffs_.push_back(std::move(c));
        return p;
    }

    /// c * x^k
    static IntegerPolynomial monomial(Int c, std::size_t k) {
        IntegerPolynomial p;
        if (c != 0) {
            p.coeffs_.assign(k + 1, Int(0));
            p.coeffs_[k] = std::move(c);
        }
        return p;
    }

    /// Parses the wire format "c0,c1,...,cn" (ascending coefficients).
    static IntegerPolynomial from_string(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("empty polynomial string");
        std::vector<Int> coeffs;
        std::string item;
        std::istringstream in(text);
        while (std::getline(in, item, ',')) {
            const auto first = item.find_first_not_of(" \t");
            if (first == std::string::npos)
                throw std::invalid_argument("blank coefficient in polynomial string \"" + text + "\"");
            const auto last = item.find_last_not_of(" \t");
            try {
                coeffs.emplace_back(item.substr(first, last - first + 1));
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("bad integer \"" + item + "\" in polynomial string");
            }
        }
        if (!text.empty() && text.back() == ',')
            throw std::invalid_argument("trailing comma in polynomial string \"" + text + "\"");
        return IntegerPolynomial(std::move(coeffs));
    }

    bool is_zero() const { return coeffs_.empty(); }

    int degree() const { return is_zero() ? kDegreeOfZero : static_cast<int>(coeffs_.size()) - 1; }

    /// Coefficient of x^i; zero beyond the degree.
    const Int& coefficient(std::size_t i) const {
        static const Int zero(0);
        return i < coeffs_.size() ? coeffs_[i] : zero;
    }

    const Int& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }

    const std::vector<Int>& coefficients() const { return coeffs_; }

    friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        return !(a == b);
    }

    friend IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coefficient(i) + b.coefficient(i);
        return IntegerPolynomial(std::move(out));
    }

    friend IntegerPolynomial operator-(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coefficient(i) - b.coefficient(i);
        return IntegerPolynomial(std::move(out));
    }

    IntegerPolynomial operator-() const {
        std::vector<Int> out(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
        return IntegerPolynomial(std::move(out));
    }

    friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntegerPolynomial(std::move(out));
    }

    friend IntegerPolynomial operator*(const Int& c, const IntegerPolynomial& p) {
        std::vector<Int> out(p.coeffs_.size());
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] = c * p.coeffs_[i];
        return IntegerPolynomial(std::move(out));
    }

    IntegerPolynomial pow(unsigned long k) const {
        IntegerPolynomial result = constant(1);
        IntegerPolynomial base = *this;
        while (k != 0) {
            if (k & 1) result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    IntegerPolynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Int> out(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = Int(i) * coeffs_[i];
        return IntegerPolynomial(std::move(out));
    }

    /// gcd of all coefficients (nonnegative); 0 for the zero polynomial.
    Int content() const {
        Int g(0);
        for (const auto& c : coeffs_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    /// this / content(), with the sign of the leading coefficient kept.
    IntegerPolynomial primitive_part() const {
        if (is_zero()) return {};
        const Int g = content();
        std::vector<Int> out(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
        return IntegerPolynomial(std::move(out));
    }

    Int evaluate(const Int& x) const {
        Int acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Rat evaluate(const Rat& x) const {
        Rat acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rat(*it);
        return acc;
    }

    /// Sum of c_i * a^i * b^(N-i) for N = formal_degree >= degree; exact integer.
    Int evaluate_homogeneous(const Int& a, const Int& b, unsigned long formal_degree) const {
        if (static_cast<long>(formal_degree) < degree())
            throw std::domain_error("formal degree below polynomial degree");
        if (is_zero()) return Int(0);
        const auto deg = static_cast<std::size_t>(degree());
        Int acc = coeffs_[deg];
        Int bp(1);
        for (std::size_t i = deg; i-- > 0;) {
            bp *= b;
            acc = acc * a + coeffs_[i] * bp;
        }
        Int tail;
        mpz_pow_ui(tail.get_mpz_t(), b.get_mpz_t(), formal_degree - deg);
        return acc * tail;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) out += ',';
            out += coeffs_[i].get_str();
        }
        return out;
    }

  private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Int> coeffs_;
};

namespace detail {

/// Exact determinant by Bareiss fraction-free elimination; consumes m.
inline Int bareiss_determinant(std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    int sign = 1;
    Int prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m[pivot][k] == 0) ++pivot;
            if (pivot == n) return Int(0);
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign < 0 ? Int(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

/// Sylvester matrix of f (taken at degree df) and g (at degree dg):
/// dg rows of f-coefficients, df rows of g-coefficients, both descending.
inline Int sylvester_resultant(const IntegerPolynomial& f, unsigned long df,
                               const IntegerPolynomial& g, unsigned long dg) {
    const std::size_t n = df + dg;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (std::size_t row = 0; row < dg; ++row)
        for (std::size_t j = 0; j <= df; ++j)
            m[row][row + j] = f.coefficient(df - j);
    for (std::size_t row = 0; row < df; ++row)
        for (std::size_t j = 0; j <= dg; ++j)
            m[dg + row][row + j] = g.coefficient(dg - j);
    return bareiss_determinant(m);
}

}  // namespace detail

/// Resultant of f and g with respect to their exact degrees; exact integer.
inline Int resultant(const IntegerPolynomial& f, const IntegerPolynomial& g) {
    if (f.is_zero() && g.is_zero()) throw std::domain_error("resultant of two zero polynomials");
    if (f.is_zero() || g.is_zero()) return Int(0);
    return detail::sylvester_resultant(f, static_cast<unsigned long>(f.degree()), g,
                                       static_cast<unsigned long>(g.degree()));
}

/// Pseudo-remainder style reduction step: an associate of f mod g with
/// degree below deg g (common divisors of {f, g} are preserved).
inline IntegerPolynomial pseudo_remainder(const IntegerPolynomial& f, const IntegerPolynomial& g) {
    if (g.is_zero()) throw std::domain_error("pseudo-remainder by zero polynomial");
    IntegerPolynomial r = f;
    while (!r.is_zero() && r.degree() >= g.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree() - g.degree());
        r = g.leading() * r - IntegerPolynomial::monomial(r.leading(), shift) * g;
    }
    return r;
}

/// gcd over Z, normalized to a nonnegative leading coefficient.
inline IntegerPolynomial polynomial_gcd(const IntegerPolynomial& f, const IntegerPolynomial& g) {
    auto normalized = [](const IntegerPolynomial& p) {
        return (!p.is_zero() && p.leading() < 0) ? -p : p;
    };
    if (f.is_zero()) return normalized(g);
    if (g.is_zero()) return normalized(f);
    Int content_gcd;
    mpz_gcd(content_gcd.get_mpz_t(), f.content().get_mpz_t(), g.content().get_mpz_t());
    IntegerPolynomial a = f.primitive_part();
    IntegerPolynomial b = g.primitive_part();
    while (!b.is_zero()) {
        IntegerPolynomial r = pseudo_remainder(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return content_gcd * normalized(a);
}

inline bool is_squarefree_poly(const IntegerPolynomial& f) {
    if (f.is_zero()) throw std::domain_error("squarefreeness of the zero polynomial");
    if (f.degree() == 0) return true;
    return polynomial_gcd(f, f.derivative()).degree() == 0;
}

namespace detail {

/// Positive divisors of |n| by trial division.
inline std::vector<Int> positive_divisors(const Int& n) {
    Int m = abs(n);
    std::vector<Int> small, large;
    for (Int i(1); i * i <= m; ++i) {
        if (mpz_divisible_p(m.get_mpz_t(), i.get_mpz_t())) {
            small.push_back(i);
            Int j = m / i;
            if (j != i) large.push_back(j);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace detail

/// All rational x with f(x) = 0, duplicates removed.
inline std::set<Rat> rational_roots(const IntegerPolynomial& f) {
    if (f.is_zero()) throw std::domain_error("rational roots of the zero polynomial");
    std::set<Rat> roots;
    // Split off x^k first so the trailing coefficient is nonzero.
    std::size_t k = 0;
    while (f.coefficient(k) == 0) ++k;
    if (k > 0) roots.emplace(0);
    std::vector<Int> rest(f.coefficients().begin() + static_cast<long>(k), f.coefficients().end());
    const IntegerPolynomial g = IntegerPolynomial(std::move(rest)).primitive_part();
    if (g.degree() <= 0) return roots;
    const auto nums = detail::positive_divisors(g.coefficient(0));
    const auto dens = detail::positive_divisors(g.leading());
    for (const Int& p : nums) {
        for (const Int& q : dens) {
            Int c;
            mpz_gcd(c.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            if (c != 1) continue;
            for (int sign : {1, -1}) {
                Rat x(sign * p, q);
                x.canonicalize();
                if (g.evaluate(x) == 0) roots.insert(x);
            }
        }
    }
    return roots;
}

/// Binary form F(X,Z) = Z^N * poly(X/Z), stored as its dehomogenization
/// together with the formal degree N >= deg(poly).
struct BinaryForm {
    IntegerPolynomial poly;
    unsigned long formal_degree = 0;

    BinaryForm() = default;
    BinaryForm(IntegerPolynomial p, unsigned long n) : poly(std::move(p)), formal_degree(n) {
        if (static_cast<long>(n) < poly.degree())
            throw std::domain_error("formal degree below degree of dehomogenization");
    }

    bool is_zero() const { return poly.is_zero(); }

    /// Coefficient of X^i (Z^(N-i)); zero outside [0, deg poly].
    const Int& coefficient(std::size_t i) const { return poly.coefficient(i); }

    Int value_at(const Int& X, const Int& Z) const {
        return poly.is_zero() ? Int(0) : poly.evaluate_homogeneous(X, Z, formal_degree);
    }

    std::string to_string() const { return poly.to_string() + "@" + std::to_string(formal_degree); }

    /// Parses "c0,c1,...@N".
    static BinaryForm from_string(const std::string& text) {
        const auto at = text.rfind('@');
        if (at == std::string::npos)
            throw std::invalid_argument("binary form string lacks \"@degree\": " + text);
        const std::string deg_part = text.substr(at + 1);
        unsigned long n = 0;
        try {
            std::size_t used = 0;
            n = std::stoul(deg_part, &used);
            if (used != deg_part.size()) throw std::invalid_argument(deg_part);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad formal degree \"" + deg_part + "\" in binary form");
        }
        return BinaryForm(IntegerPolynomial::from_string(text.substr(0, at)), n);
    }

    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.formal_degree == b.formal_degree && a.poly == b.poly;
    }
};

/// Resultant of two binary forms taken at their formal degrees.
inline Int form_resultant(const BinaryForm& F, const BinaryForm& G) {
    if (F.is_zero() && G.is_zero()) throw std::domain_error("resultant of two zero forms");
    if (F.is_zero() || G.is_zero()) return Int(0);
    return detail::sylvester_resultant(F.poly, F.formal_degree, G.poly, G.formal_degree);
}

/// Discriminant of a degree-N binary form. For a form of exact degree N
/// with leading coefficient a this is (-1)^(N(N-1)/2) Res(p, p')/a; one
/// missing X-degree peels off as disc(Z*G) = disc(G) * G(1,0)^2; two or
/// more missing degrees force Z^2 | F and the discriminant vanishes.
inline Int binary_discriminant(const BinaryForm& F) {
    if (F.is_zero()) throw std::domain_error("discriminant of the zero form");
    const auto deg = static_cast<unsigned long>(F.poly.degree());
    const unsigned long n = F.formal_degree;
    if (n == 0) return Int(1);
    if (deg + 2 <= n) return Int(0);
    if (deg + 1 == n) {
        const Int lc = F.poly.leading();
        return lc * lc * binary_discriminant(BinaryForm(F.poly, n - 1));
    }
    const Int res = resultant(F.poly, F.poly.derivative());
    Int out;
    mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), F.poly.leading().get_mpz_t());
    if ((n * (n - 1) / 2) % 2 != 0) out = -out;
    return out;
}

/// Point [X:Y] on the projective line over Q, kept in the canonical
/// coprime representation with Y > 0, or Y = 0 and X = 1.
struct ProjectivePoint {
    Int X, Y;

    ProjectivePoint(Int x, Int y) : X(std::move(x)), Y(std::move(y)) {
        if (X == 0 && Y == 0) throw std::domain_error("[0:0] is not a projective point");
        Int g;
        mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
        X /= g;
        Y /= g;
        if (Y < 0 || (Y == 0 && X < 0)) {
            X = -X;
            Y = -Y;
        }
    }

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.X == b.X && a.Y == b.Y;
    }
    friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
        const int c = cmp(a.Y, b.Y);
        return c != 0 ? c < 0 : cmp(a.X, b.X) < 0;
    }

    std::string to_string() const { return "[" + X.get_str() + ":" + Y.get_str() + "]"; }
};

/// Rational projective zeros [X:Y] of a binary form: the rational roots
/// of F(x,1), plus [1:0] when the X^N coefficient vanishes.
inline std::set<ProjectivePoint> rational_linear_factors(const BinaryForm& F) {
    if (F.is_zero()) throw std::domain_error("linear factors of the zero form");
    if (F.formal_degree < 1) throw std::domain_error("binary form of formal degree 0 has no zeros");
    std::set<ProjectivePoint> zeros;
    for (const Rat& r : rational_roots(F.poly))
        zeros.emplace(Int(r.get_num()), Int(r.get_den()));
    if (static_cast<unsigned long>(F.poly.degree()) < F.formal_degree) zeros.emplace(Int(1), Int(0));
    return zeros;
}

}  // namespace twistbound
