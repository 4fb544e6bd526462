#pragma once

// Exact scalar types used by every symbolic module: rationals on 64-bit
// words (checked 128-bit intermediates), Gaussian rationals, and dense
// polynomials in the formal oscillator strength Omega.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncgn {

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                        checked(i128(a.den_) * b.den_), raw_tag{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked(i128(a.num_) * b.den_ - i128(b.num_) * a.den_),
                        checked(i128(a.den_) * b.den_), raw_tag{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked(i128(a.num_) * b.num_),
                        checked(i128(a.den_) * b.den_), raw_tag{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return Rational(checked(i128(a.num_) * b.den_),
                        checked(i128(a.den_) * b.num_), raw_tag{});
    }
    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;
    struct raw_tag {};

    Rational(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) { normalize(); }

    static std::int64_t checked(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("rational overflow");
        return std::int64_t(v);
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Complex number with exact rational real and imaginary parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(re) {}
    GaussianRational(Rational re, Rational im) : re_(re), im_(im) {}
    GaussianRational(std::int64_t n) : re_(n) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n.is_zero()) throw std::domain_error("division by zero");
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }
    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational conj() const { return {re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string str() const {
        if (im_.is_zero()) return re_.str();
        if (re_.is_zero()) return im_.str() + "*i";
        return re_.str() + (im_ < Rational(0) ? "" : "+") + im_.str() + "*i";
    }

private:
    Rational re_, im_;
};

// Polynomial in the formal parameter Omega with rational coefficients.
// Phase coefficients have degree <= 1; determinants of the masslet
// change of variables reach degree I.
class OmegaPoly {
public:
    OmegaPoly() = default;
    OmegaPoly(Rational c) { if (!c.is_zero()) coef_ = {c}; }
    OmegaPoly(std::int64_t c) : OmegaPoly(Rational(c)) {}

    static OmegaPoly omega() { return OmegaPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

    bool is_zero() const { return coef_.empty(); }
    int degree() const { return int(coef_.size()) - 1; }
    Rational coeff(int k) const {
        return (k >= 0 && k < int(coef_.size())) ? coef_[k] : Rational(0);
    }

    Rational at_zero() const { return coeff(0); }
    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (int k = degree(); k >= 0; --k) acc = acc * x + coef_[k];
        return acc;
    }

    friend OmegaPoly operator+(const OmegaPoly& a, const OmegaPoly& b) {
        std::vector<Rational> c(std::max(a.coef_.size(), b.coef_.size()), Rational(0));
        for (size_t k = 0; k < a.coef_.size(); ++k) c[k] += a.coef_[k];
        for (size_t k = 0; k < b.coef_.size(); ++k) c[k] += b.coef_[k];
        return OmegaPoly(std::move(c));
    }
    friend OmegaPoly operator-(const OmegaPoly& a, const OmegaPoly& b) {
        std::vector<Rational> c(std::max(a.coef_.size(), b.coef_.size()), Rational(0));
        for (size_t k = 0; k < a.coef_.size(); ++k) c[k] += a.coef_[k];
        for (size_t k = 0; k < b.coef_.size(); ++k) c[k] -= b.coef_[k];
        return OmegaPoly(std::move(c));
    }
    friend OmegaPoly operator*(const OmegaPoly& a, const OmegaPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.coef_.size() + b.coef_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coef_.size(); ++i)
            for (size_t j = 0; j < b.coef_.size(); ++j)
                c[i + j] += a.coef_[i] * b.coef_[j];
        return OmegaPoly(std::move(c));
    }
    OmegaPoly operator-() const {
        std::vector<Rational> c(coef_);
        for (auto& x : c) x = -x;
        return OmegaPoly(std::move(c));
    }

    OmegaPoly& operator+=(const OmegaPoly& o) { return *this = *this + o; }
    OmegaPoly& operator-=(const OmegaPoly& o) { return *this = *this - o; }
    OmegaPoly& operator*=(const OmegaPoly& o) { return *this = *this * o; }

    friend bool operator==(const OmegaPoly& a, const OmegaPoly& b) { return a.coef_ == b.coef_; }
    friend bool operator!=(const OmegaPoly& a, const OmegaPoly& b) { return !(a == b); }

    std::string str() const {
        if (coef_.empty()) return "0";
        std::string s;
        for (int k = 0; k <= degree(); ++k) {
            if (coef_[k].is_zero()) continue;
            if (!s.empty()) s += coef_[k] < Rational(0) ? " - " : " + ";
            else if (coef_[k] < Rational(0)) s += "-";
            Rational mag = coef_[k] < Rational(0) ? -coef_[k] : coef_[k];
            if (k == 0) s += mag.str();
            else {
                if (mag != Rational(1)) s += mag.str() + "*";
                s += k == 1 ? "Omega" : "Omega^" + std::to_string(k);
            }
        }
        return s;
    }

private:
    explicit OmegaPoly(std::vector<Rational> c) : coef_(std::move(c)) { trim(); }
    void trim() {
        while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
    }
    std::vector<Rational> coef_;
};

}  // namespace ncgn
