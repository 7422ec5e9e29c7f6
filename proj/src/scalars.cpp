#include "szg/scalars.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace szg {

Rat make_rat(long num, long den) {
    if (den == 0) throw arithmetic_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw arithmetic_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat rat_from_decimal_strings(const std::string& num, const std::string& den) {
    Int n, d;
    if (n.set_str(num, 10) != 0) throw usage_error("bad integer literal: '" + num + "'");
    if (d.set_str(den, 10) != 0) throw usage_error("bad integer literal: '" + den + "'");
    return make_rat(n, d);
}

std::optional<Rat> rational_sqrt(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rat(rn, rd);
}

GaussianRational GaussianRational::i_power(long k) {
    long m = ((k % 4) + 4) % 4;
    switch (m) {
        case 0: return GaussianRational(make_rat(1));
        case 1: return GaussianRational::i();
        case 2: return GaussianRational(make_rat(-1));
        default: return -GaussianRational::i();
    }
}

std::string GaussianRational::str() const {
    std::ostringstream os;
    if (sgn(im_) == 0) {
        os << re_;
    } else if (sgn(re_) == 0) {
        os << im_ << "*i";
    } else {
        os << re_ << (sgn(im_) > 0 ? "+" : "") << im_ << "*i";
    }
    return os.str();
}

double PiScaled::to_double() const {
    return coeff_.re().get_d() * std::pow(std::numbers::pi, pi_power_);
}

std::complex<double> PiScaled::to_complex() const {
    return coeff_.to_complex() * std::pow(std::numbers::pi, pi_power_);
}

std::string PiScaled::str() const {
    std::ostringstream os;
    os << "(" << coeff_.str() << ")";
    if (pi_power_ != 0) os << "*pi^" << pi_power_;
    return os.str();
}

GaussianRational exact_sqrt(const GaussianRational& a) {
    if (a.is_zero()) return GaussianRational();
    const Rat& x = a.re();
    const Rat& y = a.im();
    if (sgn(y) == 0) {
        if (sgn(x) > 0) {
            auto r = rational_sqrt(x);
            if (!r) throw inexact_root("sqrt(" + a.str() + ") is not in Q(i)");
            return GaussianRational(*r);  // argument 0
        }
        // negative real: principal root is i*sqrt(-x), argument pi/2
        auto r = rational_sqrt(-x);
        if (!r) throw inexact_root("sqrt(" + a.str() + ") is not in Q(i)");
        return GaussianRational(make_rat(0), *r);
    }
    // s = u + iv with u^2 - v^2 = x, 2uv = y. Requires |a| rational and
    // (x + |a|)/2 a rational square; principal branch picks u > 0.
    auto r = rational_sqrt(a.norm2());
    if (!r) throw inexact_root("sqrt(" + a.str() + "): |a| is irrational");
    Rat u2 = (x + *r) / 2;
    auto u = rational_sqrt(u2);
    if (!u || sgn(*u) == 0) throw inexact_root("sqrt(" + a.str() + ") is not in Q(i)");
    Rat v = y / (2 * (*u));
    return GaussianRational(*u, v);
}

PiScaled exact_sqrt(const PiScaled& a) {
    if (a.is_zero()) return PiScaled();
    if (a.pi_power() % 2 != 0) throw inexact_root("sqrt of odd pi power " + std::to_string(a.pi_power()));
    return PiScaled(exact_sqrt(a.coeff()), a.pi_power() / 2);
}

}  // namespace szg
