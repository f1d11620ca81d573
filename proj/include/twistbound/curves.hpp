#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistbound/intpoly.hpp"
#include "twistbound/numtheory.hpp"

namespace twistbound {

using Json = nlohmann::ordered_json;

namespace detail {

/// Emit an integer as a JSON number when it fits, as a string otherwise.
inline Json int_to_json(const Int& n) {
    if (n.fits_slong_p()) return Json(n.get_si());
    return Json(n.get_str());
}

inline Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected integer or integer string in JSON");
}

}  // namespace detail

/// Quadratic twist d*y^2 = f(x) of a hyperelliptic curve, f squarefree of
/// degree 2g+1 or 2g+2 with g >= 2, d squarefree and nonzero. The
/// discriminant of f as a binary form of degree 2g+2 is cached.
class HyperellipticTwist {
  public:
    HyperellipticTwist(IntegerPolynomial f, Int d, const FactorEffort& effort = {})
        : f_(std::move(f)), d_(std::move(d)) {
        if (f_.degree() < 5) throw std::domain_error("hyperelliptic model needs deg f >= 5");
        if (!is_squarefree_poly(f_)) throw std::domain_error("f must be squarefree");
        if (d_ == 0) throw std::domain_error("twist parameter d must be nonzero");
        if (!is_kth_power_free(d_, 2, effort)) throw std::domain_error("d must be squarefree");
        genus_ = (static_cast<unsigned long>(f_.degree()) - 1) / 2;
        disc_ = binary_discriminant(BinaryForm(f_, 2 * genus_ + 2));
    }

    const IntegerPolynomial& f() const { return f_; }
    const Int& d() const { return d_; }
    unsigned long genus() const { return genus_; }
    const Int& discriminant() const { return disc_; }
    bool odd_degree() const { return f_.degree() % 2 == 1; }

    Json to_json() const { return Json{{"f", f_.to_string()}, {"d", detail::int_to_json(d_)}}; }

    static HyperellipticTwist from_json(const Json& j, const FactorEffort& effort = {}) {
        return HyperellipticTwist(IntegerPolynomial::from_string(j.at("f").get<std::string>()),
                                  detail::int_from_json(j.at("d")), effort);
    }

  private:
    IntegerPolynomial f_;
    Int d_;
    unsigned long genus_;
    Int disc_;
};

/// Projective curve h*Z^n = F(X,Y) for a squarefree binary form F of
/// formal degree n >= 3 and an n-th-power-free twist parameter h.
class ThueTwist {
  public:
    ThueTwist(BinaryForm F, Int h, const FactorEffort& effort = {})
        : F_(std::move(F)), h_(std::move(h)) {
        if (F_.formal_degree < 3) throw std::domain_error("thue form needs degree n >= 3");
        if (F_.is_zero()) throw std::domain_error("thue form must be nonzero");
        disc_ = binary_discriminant(F_);
        if (disc_ == 0) throw std::domain_error("F must be squarefree as a binary form");
        if (h_ == 0) throw std::domain_error("twist parameter h must be nonzero");
        if (!is_kth_power_free(h_, static_cast<unsigned>(F_.formal_degree), effort))
            throw std::domain_error("h must be free of n-th prime powers");
    }

    const BinaryForm& form() const { return F_; }
    const Int& h() const { return h_; }
    unsigned long degree_n() const { return F_.formal_degree; }
    const Int& discriminant() const { return disc_; }

    Json to_json() const {
        return Json{{"F", F_.to_string()}, {"h", detail::int_to_json(h_)}};
    }

    static ThueTwist from_json(const Json& j, const FactorEffort& effort = {}) {
        return ThueTwist(BinaryForm::from_string(j.at("F").get<std::string>()),
                         detail::int_from_json(j.at("h")), effort);
    }

  private:
    BinaryForm F_;
    Int h_;
    Int disc_;
};

/// Genus of a smooth plane curve of degree n >= 3.
inline unsigned long genus_plane(unsigned long n) {
    if (n < 3) throw std::domain_error("plane curve degree must be at least 3");
    return (n - 1) * (n - 2) / 2;
}

/// A rational point on a hyperelliptic twist: either affine (x, y) or a
/// point at infinity of the smooth model. Odd-degree models have a single
/// infinite point (sign 0); even-degree models have two, tagged +1/-1 and
/// swapped by the hyperelliptic involution. Construction checks the
/// defining equation, so every held point lies on its curve.
class HyperPoint {
  public:
    static HyperPoint affine(const HyperellipticTwist& curve, Rat x, Rat y) {
        if (Rat(curve.d()) * y * y != curve.f().evaluate(x))
            throw std::domain_error("point does not satisfy d*y^2 = f(x)");
        HyperPoint p;
        p.x_ = std::move(x);
        p.y_ = std::move(y);
        p.fixed_ = (p.y_ == 0);
        return p;
    }

    static HyperPoint infinity_point(const HyperellipticTwist& curve, int sign = 0) {
        HyperPoint p;
        p.at_infinity_ = true;
        if (curve.odd_degree()) {
            if (sign != 0) throw std::domain_error("odd-degree model has a single infinite point");
            p.fixed_ = true;
        } else {
            if (sign != 1 && sign != -1)
                throw std::domain_error("even-degree infinite points carry a sign");
            Int lcd = curve.f().leading() * curve.d();
            if (lcd < 0 || !mpz_perfect_square_p(lcd.get_mpz_t()))
                throw std::domain_error("model has no rational points at infinity");
            p.inf_sign_ = sign;
        }
        return p;
    }

    bool at_infinity() const { return at_infinity_; }
    int infinity_sign() const { return inf_sign_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }

    /// Fixed by the hyperelliptic involution (y = 0, or odd-degree infinity).
    bool involution_fixed() const { return fixed_; }

    HyperPoint involute() const {
        HyperPoint p = *this;
        if (at_infinity_)
            p.inf_sign_ = -inf_sign_;
        else
            p.y_ = -y_;
        return p;
    }

    /// Canonical order: infinite points first, then by (den x, num x, y).
    friend bool operator<(const HyperPoint& a, const HyperPoint& b) {
        if (a.at_infinity_ != b.at_infinity_) return a.at_infinity_;
        if (a.at_infinity_) return a.inf_sign_ < b.inf_sign_;
        int c = cmp(a.x_.get_den(), b.x_.get_den());
        if (c != 0) return c < 0;
        c = cmp(a.x_.get_num(), b.x_.get_num());
        if (c != 0) return c < 0;
        return a.y_ < b.y_;
    }

    friend bool operator==(const HyperPoint& a, const HyperPoint& b) {
        if (a.at_infinity_ != b.at_infinity_) return false;
        if (a.at_infinity_) return a.inf_sign_ == b.inf_sign_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    std::string to_string() const {
        if (at_infinity_)
            return inf_sign_ == 0 ? "infinity" : (inf_sign_ > 0 ? "infinity+" : "infinity-");
        return "(" + x_.get_str() + ", " + y_.get_str() + ")";
    }

    Json to_json() const {
        if (at_infinity_) return Json{{"infinity", true}, {"sign", inf_sign_}};
        return Json{{"x", x_.get_str()}, {"y", y_.get_str()}};
    }

  private:
    HyperPoint() = default;
    bool at_infinity_ = false;
    int inf_sign_ = 0;
    Rat x_{0}, y_{0};
    bool fixed_ = false;
};

/// Rational solution (X, Y) = (a/c, b/c) of F(X, Y) = h, in lowest terms
/// with c >= 1; integral solutions are the ones with c = 1.
struct ThueSolution {
    Int a, b, c;

    static ThueSolution make(const ThueTwist& curve, Int a, Int b, Int c) {
        if (c < 1) throw std::domain_error("denominator must be positive");
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g != 1) throw std::domain_error("solution coordinates must be coprime");
        Int cn;
        mpz_pow_ui(cn.get_mpz_t(), c.get_mpz_t(), curve.degree_n());
        if (curve.form().value_at(a, b) != curve.h() * cn)
            throw std::domain_error("triple does not solve F(X, Y) = h");
        return ThueSolution{std::move(a), std::move(b), std::move(c)};
    }

    bool integral() const { return c == 1; }
    Rat X() const {
        Rat r(a, c);
        r.canonicalize();
        return r;
    }
    Rat Y() const {
        Rat r(b, c);
        r.canonicalize();
        return r;
    }

    friend bool operator<(const ThueSolution& s, const ThueSolution& t) {
        int v = cmp(s.c, t.c);
        if (v != 0) return v < 0;
        v = cmp(s.a, t.a);
        if (v != 0) return v < 0;
        return cmp(s.b, t.b) < 0;
    }
    friend bool operator==(const ThueSolution& s, const ThueSolution& t) {
        return s.a == t.a && s.b == t.b && s.c == t.c;
    }

    Json to_json() const {
        return Json{{"X", X().get_str()}, {"Y", Y().get_str()}, {"integral", integral()}};
    }
};

/// Primes of bad reduction of the degree-(2g+2) model: 2 together with the
/// primes dividing the discriminant.
inline std::set<Int> bad_primes_hyperelliptic(const HyperellipticTwist& c,
                                              const FactorEffort& effort = {}) {
    std::set<Int> bad = prime_divisors(c.discriminant(), effort);
    bad.insert(Int(2));
    return bad;
}

/// Primes where the quadratic twist cocycle is ramified: odd primes of d.
inline std::set<Int> ramified_primes_hyperelliptic(const HyperellipticTwist& c,
                                                   const FactorEffort& effort = {}) {
    std::set<Int> out;
    for (const Int& p : prime_divisors(c.d(), effort))
        if (p != 2) out.insert(p);
    return out;
}

namespace detail {

/// Character table chi[a] of the quadratic residue symbol mod p.
inline std::vector<std::int8_t> quadratic_character_table(unsigned long p) {
    std::vector<std::int8_t> chi(p, -1);
    chi[0] = 0;
    for (unsigned long q = 1; q < p; ++q) chi[q * q % p] = 1;
    return chi;
}

inline unsigned long mod_ul(const Int& n, unsigned long p) {
    Int r = n % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return r.get_ui();
}

}  // namespace detail

/// Point count of the smooth model of d*y^2 = f(x) over the p-element
/// field: sum over x of 1 + chi(d*f(x)), plus the points at infinity read
/// off the X^(2*ceil(deg f / 2)) coefficient of the associated binary form
/// (zero for odd-degree f, so the odd case contributes the single point).
/// This kernel does not check good reduction; see count_points_hyperelliptic.
inline unsigned long count_points_core(const IntegerPolynomial& f, const Int& d, const Int& p) {
    if (p == 2 || !is_prime(p)) throw std::domain_error("counting needs an odd prime");
    if (!mpz_fits_ulong_p(p.get_mpz_t()) || p > 2'000'000'000)
        throw std::domain_error("prime too large for the enumeration kernel");
    if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("p must not divide the twist parameter");
    if (f.degree() < 1) throw std::domain_error("counting needs a nonconstant model");
    const auto pp = p.get_ui();
    const auto chi = detail::quadratic_character_table(pp);
    const auto deg = static_cast<unsigned long>(f.degree());
    const unsigned long even_degree = deg + (deg % 2);
    std::vector<unsigned long> fm(deg + 1);
    for (unsigned long i = 0; i <= deg; ++i) fm[i] = detail::mod_ul(f.coefficient(i), pp);
    const unsigned long dm = detail::mod_ul(d, pp);
    unsigned long total = 0;
    for (unsigned long x = 0; x < pp; ++x) {
        unsigned long v = 0;
        for (unsigned long i = deg + 1; i-- > 0;) v = (v * x + fm[i]) % pp;
        total += 1 + chi[dm * v % pp] + 1;  // shift by +1 keeps the sum unsigned
    }
    const unsigned long top = even_degree == deg ? fm[deg] : 0;
    total += 1 + chi[dm * top % pp] + 1;
    return total - (pp + 1);
}

/// Point count over F_p for an odd prime p of good reduction
/// (p coprime to d and to the cached degree-(2g+2) discriminant).
inline unsigned long count_points_hyperelliptic(const HyperellipticTwist& c, const Int& p) {
    if (p != 2 && is_prime(p) && mpz_divisible_p(c.discriminant().get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("p must not divide the discriminant");
    return count_points_core(c.f(), c.d(), p);
}

/// Projective point count of h*Z^n = F(X,Y) over F_p by enumerating the
/// p^2 + p + 1 points chart by chart; needs p coprime to n, h and disc(F).
inline unsigned long count_points_plane(const ThueTwist& t, const Int& p) {
    if (!is_prime(p)) throw std::domain_error("counting needs a prime");
    if (!mpz_fits_ulong_p(p.get_mpz_t()) || p > 50'000)
        throw std::domain_error("prime too large for projective enumeration");
    const unsigned long pp = p.get_ui();
    const unsigned long n = t.degree_n();
    if (n % pp == 0) throw std::domain_error("p must not divide n");
    if (mpz_divisible_p(t.h().get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("p must not divide h");
    if (mpz_divisible_p(t.discriminant().get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("p must not divide disc(F)");
    std::vector<unsigned long> cm(n + 1);
    for (unsigned long i = 0; i <= n; ++i) cm[i] = detail::mod_ul(t.form().coefficient(i), pp);
    const unsigned long hm = detail::mod_ul(t.h(), pp);
    auto form_at = [&](unsigned long X, unsigned long Y) {
        // sum c_i X^i Y^(n-i) via Horner in X with Y-power weights
        unsigned long acc = cm[n];
        unsigned long ypow = 1;
        for (unsigned long i = n; i-- > 0;) {
            ypow = ypow * Y % pp;
            acc = (acc * X + cm[i] * ypow) % pp;
        }
        return acc;
    };
    unsigned long total = 0;
    for (unsigned long X = 0; X < pp; ++X)
        for (unsigned long Y = 0; Y < pp; ++Y)
            if (form_at(X, Y) == hm) ++total;  // chart Z = 1
    for (unsigned long X = 0; X < pp; ++X)
        if (form_at(X, 1) == 0) ++total;  // chart [X:1:0]
    if (cm[n] == 0) ++total;  // [1:0:0]
    return total;
}

/// Rational Weierstrass points of d*y^2 = f(x): the points (x, 0) over
/// rational roots of f, plus infinity when deg f is odd.
inline std::vector<HyperPoint> weierstrass_points(const HyperellipticTwist& c) {
    std::vector<HyperPoint> out;
    if (c.odd_degree()) out.push_back(HyperPoint::infinity_point(c));
    for (const Rat& r : rational_roots(c.f())) out.push_back(HyperPoint::affine(c, r, Rat(0)));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace twistbound
