#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

#include "szg/errors.hpp"

namespace szg {

using Int = mpz_class;
using Rat = mpq_class;

// num/den in lowest terms, positive denominator.
Rat make_rat(long num, long den = 1);
Rat make_rat(const Int& num, const Int& den);
Rat rat_from_decimal_strings(const std::string& num, const std::string& den);

// Exact square root of a nonnegative rational, if it has one.
std::optional<Rat> rational_sqrt(const Rat& q);

// Element of Q(i). The coefficient field for every jet in this library.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(Rat re) : re_(std::move(re)), im_(0) {}
    GaussianRational(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(long re) : re_(re), im_(0) {}

    static GaussianRational i() { return {make_rat(0), make_rat(1)}; }
    static GaussianRational of(long num, long den = 1) { return {make_rat(num, den)}; }
    // num_re/den_re + (num_im/den_im) i
    static GaussianRational of(long num_re, long den_re, long num_im, long den_im) {
        return {make_rat(num_re, den_re), make_rat(num_im, den_im)};
    }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rat norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw arithmetic_error("GaussianRational: division by zero");
        Rat n = o.norm2();
        Rat r = (re_ * o.re_ + im_ * o.im_) / n;
        Rat i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        GaussianRational one(make_rat(1));
        return one /= *this;
    }

    // i^k for any integer k.
    static GaussianRational i_power(long k);

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    std::string str() const;

private:
    Rat re_, im_;
};

// value = coeff * pi^pi_power; canonical zero has pi_power 0.
class PiScaled {
public:
    PiScaled() : coeff_(), pi_power_(0) {}
    PiScaled(GaussianRational coeff, int pi_power) : coeff_(std::move(coeff)), pi_power_(pi_power) {
        if (coeff_.is_zero()) pi_power_ = 0;
    }
    explicit PiScaled(GaussianRational coeff) : PiScaled(std::move(coeff), 0) {}

    const GaussianRational& coeff() const { return coeff_; }
    int pi_power() const { return pi_power_; }
    bool is_zero() const { return coeff_.is_zero(); }

    PiScaled operator-() const { return {-coeff_, pi_power_}; }

    friend PiScaled operator*(const PiScaled& a, const PiScaled& b) {
        return {a.coeff_ * b.coeff_, a.pi_power_ + b.pi_power_};
    }
    friend PiScaled operator/(const PiScaled& a, const PiScaled& b) {
        if (b.is_zero()) throw arithmetic_error("PiScaled: division by zero");
        return {a.coeff_ / b.coeff_, a.pi_power_ - b.pi_power_};
    }
    // add/sub only make sense within one grade
    friend PiScaled operator+(const PiScaled& a, const PiScaled& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.pi_power_ != b.pi_power_)
            throw grading_error("PiScaled: addition with mismatched pi powers (" +
                                std::to_string(a.pi_power_) + " vs " + std::to_string(b.pi_power_) + ")");
        return {a.coeff_ + b.coeff_, a.pi_power_};
    }
    friend PiScaled operator-(const PiScaled& a, const PiScaled& b) { return a + (-b); }

    PiScaled scaled(const GaussianRational& s) const { return {coeff_ * s, pi_power_}; }

    friend bool operator==(const PiScaled& a, const PiScaled& b) {
        return a.coeff_ == b.coeff_ && a.pi_power_ == b.pi_power_;
    }
    friend bool operator!=(const PiScaled& a, const PiScaled& b) { return !(a == b); }

    double to_double() const;
    std::complex<double> to_complex() const;
    std::string str() const;

private:
    GaussianRational coeff_;
    int pi_power_;
};

// Principal square root in Q(i) graded by powers of pi. The result argument
// lies in (-pi/2, pi/2]. Throws inexact_root when the root leaves Q(i)
// (callers fall back to floating point), including odd pi powers.
PiScaled exact_sqrt(const PiScaled& a);

// Principal square root in Q(i) proper.
GaussianRational exact_sqrt(const GaussianRational& a);

}  // namespace szg
