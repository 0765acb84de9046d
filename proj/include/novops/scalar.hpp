#pragma once

#include <climits>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace novops {

namespace detail {
__extension__ typedef __int128 wide;
}

/*
 * Exact rational number.
 *
 * Values whose numerator and denominator fit in a signed 64-bit word are kept
 * inline; anything larger is promoted to a GMP rational and demoted again as
 * soon as it fits. Always in lowest terms with a positive denominator.
 */
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {
        if (n == kMin) promote_from(mpq_class(mpz_class(static_cast<long>(n))));
    }
    Rational(int n) : Rational(static_cast<long long>(n)) {}
    Rational(long long n, long long d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        mpq_class q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
        q.canonicalize();
        *this = from_mpq(q);
    }
    explicit Rational(const mpq_class &q) { *this = from_mpq(q); }
    explicit Rational(const mpz_class &z) { *this = from_mpq(mpq_class(z)); }

    Rational(const Rational &o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational &&) noexcept = default;
    Rational &operator=(const Rational &o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational &operator=(Rational &&) noexcept = default;

    /// Parses "p", "-p" or "p/q" (q nonzero). Throws std::invalid_argument.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("empty rational literal");
        auto slash = text.find('/');
        auto check_int = [](std::string_view s, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        };
        std::string_view ns = text.substr(0, slash);
        std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        if (!check_int(ns, true) || !check_int(ds, false))
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
        std::string n(ns);
        if (!n.empty() && n[0] == '+') n.erase(0, 1);
        mpz_class num(n, 10), den(std::string(ds), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return from_mpq(q);
    }

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
        return q;
    }
    mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
    mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

    std::string to_string() const {
        if (big_) return big_->get_str();
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational &operator+=(const Rational &o) { return *this = add(*this, o, false); }
    Rational &operator-=(const Rational &o) { return *this = add(*this, o, true); }
    Rational &operator*=(const Rational &o) { return *this = mul(*this, o); }
    Rational &operator/=(const Rational &o) { return *this = mul(*this, o.inverse()); }

    friend Rational operator+(const Rational &a, const Rational &b) { return add(a, b, false); }
    friend Rational operator-(const Rational &a, const Rational &b) { return add(a, b, true); }
    friend Rational operator*(const Rational &a, const Rational &b) { return mul(a, b); }
    friend Rational operator/(const Rational &a, const Rational &b) { return mul(a, b.inverse()); }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        if (big_) return Rational(mpq_class(1 / *big_));
        Rational r;
        if (num_ > 0) {
            r.num_ = den_;
            r.den_ = num_;
        } else {
            r.num_ = -den_;
            r.den_ = -num_;
        }
        return r;
    }

    friend bool operator==(const Rational &a, const Rational &b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: a value is big only when it does not fit
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == b.den_) return a.num_ <=> b.num_;
            detail::wide l = static_cast<detail::wide>(a.num_) * b.den_;
            detail::wide r = static_cast<detail::wide>(b.num_) * a.den_;
            return l <=> r;
        }
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

    std::size_t hash() const {
        if (big_) return std::hash<std::string>{}(big_->get_str());
        return std::hash<long long>{}(num_) * 31u + std::hash<long long>{}(den_);
    }

private:
    static constexpr long long kMin = std::numeric_limits<long long>::min();

    long long num_ = 0;
    long long den_ = 1;
    std::unique_ptr<mpq_class> big_;

    void promote_from(mpq_class q) {
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }

    static bool fits(const mpz_class &z) { return z.fits_slong_p() && z != mpz_class(LONG_MIN); }

    static Rational from_mpq(const mpq_class &q) {
        Rational r;
        if (fits(q.get_num()) && fits(q.get_den())) {
            r.num_ = q.get_num().get_si();
            r.den_ = q.get_den().get_si();
        } else {
            r.big_ = std::make_unique<mpq_class>(q);
        }
        return r;
    }

    static Rational make_small(long long n, long long d) {
        // d > 0, gcd(n, d) == 1, n != kMin
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static Rational add(const Rational &a, const Rational &b, bool subtract) {
        if (!a.big_ && !b.big_ && b.num_ != kMin) {
            long long bn = subtract ? -b.num_ : b.num_;
            if (a.den_ == 1 && b.den_ == 1) {
                long long s;
                if (!__builtin_add_overflow(a.num_, bn, &s) && s != kMin) return make_small(s, 1);
            } else {
                long long g = std::gcd(a.den_, b.den_);
                long long da = a.den_ / g, db = b.den_ / g;
                long long t1, t2, s, d;
                if (!__builtin_mul_overflow(a.num_, db, &t1) && !__builtin_mul_overflow(bn, da, &t2) &&
                    !__builtin_add_overflow(t1, t2, &s) && !__builtin_mul_overflow(a.den_, db, &d) && s != kMin) {
                    if (s == 0) return Rational();
                    long long h = std::gcd(s, g);
                    if (h != 1) {
                        s /= h;
                        d /= h;
                    }
                    return make_small(s, d);
                }
            }
        }
        mpq_class r = subtract ? mpq_class(a.to_mpq() - b.to_mpq()) : mpq_class(a.to_mpq() + b.to_mpq());
        return from_mpq(r);
    }

    static Rational mul(const Rational &a, const Rational &b) {
        if (!a.big_ && !b.big_) {
            if (a.num_ == 0 || b.num_ == 0) return Rational();
            long long g1 = std::gcd(a.num_, b.den_);
            long long g2 = std::gcd(b.num_, a.den_);
            long long n, d;
            if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &n) &&
                !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &d) && n != kMin)
                return make_small(n, d);
        }
        return from_mpq(mpq_class(a.to_mpq() * b.to_mpq()));
    }
};

using Scalar = Rational;

}  // namespace novops

template <> struct std::hash<novops::Rational> {
    std::size_t operator()(const novops::Rational &r) const { return r.hash(); }
};
