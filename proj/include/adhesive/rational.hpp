#pragma once
// Exact rational numbers.
//
// Values that fit in a pair of int64 are kept inline; anything larger spills
// over into a heap-allocated GMP rational and is demoted again as soon as it
// fits. Every polyhedral computation in the library runs on this type, so the
// small path is the one that has to be fast.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adhesive {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

inline u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0)
            return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

inline bool fits64(i128 v) {
    return v >= static_cast<i128>(std::numeric_limits<std::int64_t>::min() + 1) &&
           v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
}

} // namespace detail

class Rational {
public:
    Rational() = default;
    Rational(int v) : n_(v) {}
    Rational(long v) { set_i128(v, 1); }
    Rational(long long v) { set_i128(v, 1); }
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        set_i128(num, den);
    }
    explicit Rational(const mpq_class& q) { assign_big(q); }
    explicit Rational(const mpz_class& z) { assign_big(mpq_class(z)); }

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this == &o) return *this;
        n_ = o.n_;
        d_ = o.d_;
        if (o.big_) {
            if (big_) *big_ = *o.big_;
            else big_ = std::make_unique<mpq_class>(*o.big_);
        } else {
            big_.reset();
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    /// Parses "p", "-p", "p/q"; whitespace around the value is ignored.
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
        s = s.substr(b, e - b + 1);
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        for (char c : s)
            if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
                throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        q.canonicalize();
        return Rational(q);
    }

    bool is_small() const { return !big_; }
    bool is_zero() const { return big_ ? sgn(*big_) == 0 : n_ == 0; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (n_ > 0) - (n_ < 0);
    }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q;
        mpz_set_si(q.get_num_mpz_t(), n_);
        mpz_set_si(q.get_den_mpz_t(), d_);
        return q;
    }
    mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
    mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }
    double to_double() const {
        if (big_) return big_->get_d();
        return static_cast<double>(n_) / static_cast<double>(d_);
    }

    std::size_t hash() const {
        if (big_) return std::hash<std::string>{}(big_->get_str());
        auto h = static_cast<std::uint64_t>(n_) * 0x9E3779B97F4A7C15ULL;
        return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(d_) + (h << 6) + (h >> 2)));
    }

    std::string str() const {
        if (big_) return big_->get_str();
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }

    Rational operator-() const {
        Rational r(*this);
        if (r.big_) *r.big_ = -*r.big_;
        else r.n_ = -r.n_;
        return r;
    }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational& operator+=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (d_ == 1 && o.d_ == 1) {
                std::int64_t r;
                if (!__builtin_add_overflow(n_, o.n_, &r) && r != std::numeric_limits<std::int64_t>::min()) {
                    n_ = r;
                    return *this;
                }
                set_i128(static_cast<detail::i128>(n_) + o.n_, 1);
                return *this;
            }
            detail::i128 num = static_cast<detail::i128>(n_) * o.d_ + static_cast<detail::i128>(o.n_) * d_;
            detail::i128 den = static_cast<detail::i128>(d_) * o.d_;
            set_i128(num, den);
            return *this;
        }
        assign_big(to_mpq() + o.to_mpq());
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (d_ == 1 && o.d_ == 1) {
                std::int64_t r;
                if (!__builtin_sub_overflow(n_, o.n_, &r) && r != std::numeric_limits<std::int64_t>::min()) {
                    n_ = r;
                    return *this;
                }
                set_i128(static_cast<detail::i128>(n_) - o.n_, 1);
                return *this;
            }
            detail::i128 num = static_cast<detail::i128>(n_) * o.d_ - static_cast<detail::i128>(o.n_) * d_;
            detail::i128 den = static_cast<detail::i128>(d_) * o.d_;
            set_i128(num, den);
            return *this;
        }
        assign_big(to_mpq() - o.to_mpq());
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (d_ == 1 && o.d_ == 1) {
                std::int64_t r;
                if (!__builtin_mul_overflow(n_, o.n_, &r) && r != std::numeric_limits<std::int64_t>::min()) {
                    n_ = r;
                    return *this;
                }
            }
            set_i128(static_cast<detail::i128>(n_) * o.n_, static_cast<detail::i128>(d_) * o.d_);
            return *this;
        }
        assign_big(to_mpq() * o.to_mpq());
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        if (!big_ && !o.big_) {
            set_i128(static_cast<detail::i128>(n_) * o.d_, static_cast<detail::i128>(d_) * o.n_);
            return *this;
        }
        assign_big(to_mpq() / o.to_mpq());
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        return a.to_mpq() == b.to_mpq();
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.d_ == b.d_) return a.n_ <=> b.n_;
            detail::i128 l = static_cast<detail::i128>(a.n_) * b.d_;
            detail::i128 r = static_cast<detail::i128>(b.n_) * a.d_;
            return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    /// Greatest common divisor of two integers (both must be integral).
    friend Rational gcd(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small() && a.d_ == 1 && b.d_ == 1) {
            auto g = detail::gcd_u64(detail::abs128(a.n_), detail::abs128(b.n_));
            return Rational(static_cast<std::int64_t>(g), 1);
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
        return Rational(g);
    }
    /// Least common multiple of two positive integers.
    friend Rational lcm(const Rational& a, const Rational& b) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
        return Rational(l);
    }

private:
    void set_i128(detail::i128 num, detail::i128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num == 0) {
            big_.reset();
            n_ = 0;
            d_ = 1;
            return;
        }
        if (den != 1) {
            detail::u128 g = detail::gcd_u128(detail::abs128(num), static_cast<detail::u128>(den));
            if (g > 1) {
                num /= static_cast<detail::i128>(g);
                den /= static_cast<detail::i128>(g);
            }
        }
        if (detail::fits64(num) && detail::fits64(den)) {
            big_.reset();
            n_ = static_cast<std::int64_t>(num);
            d_ = static_cast<std::int64_t>(den);
            return;
        }
        mpq_class q(from_i128(num), from_i128(den));
        q.canonicalize();
        big_ = std::make_unique<mpq_class>(std::move(q));
    }

    static mpz_class from_i128(detail::i128 v) {
        bool neg = v < 0;
        detail::u128 u = detail::abs128(v);
        mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
        mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    }

    void assign_big(const mpq_class& q) {
        if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
            long num = mpz_get_si(q.get_num_mpz_t());
            long den = mpz_get_si(q.get_den_mpz_t());
            if (num != std::numeric_limits<long>::min()) {
                big_.reset();
                n_ = num;
                d_ = den;
                return;
            }
        }
        if (big_) *big_ = q;
        else big_ = std::make_unique<mpq_class>(q);
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

using RationalVector = std::vector<Rational>;

/// Scales a vector to coprime integers, keeping its sign. Zero vectors are left alone.
inline void make_primitive(RationalVector& v) {
    bool all_integer = true;
    for (const auto& x : v)
        if (!x.is_integer()) { all_integer = false; break; }
    if (!all_integer) {
        Rational l(1);
        for (const auto& x : v)
            if (!x.is_zero()) l = lcm(l, Rational(x.denominator()));
        for (auto& x : v) x *= l;
    }
    Rational g(0);
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        g = g.is_zero() ? x.abs() : gcd(g, x);
        if (g == Rational(1)) return;
    }
    if (g.is_zero() || g == Rational(1)) return;
    for (auto& x : v) x /= g;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

} // namespace adhesive
