#pragma once

#include <complex>
#include <cstddef>
#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sequiv {

/// Complex number with exact rational real and imaginary parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(mpq_class re, mpq_class im = 0);
    GaussianRational(long n) : re_(n), im_(0) {}

    static GaussianRational i() { return {0, 1}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    GaussianRational conj() const { return {re_, -im_}; }
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Polynomial in one variable with GaussianRational coefficients, lowest degree first.
/// The coefficient vector never carries trailing zeros; the zero polynomial is empty.
class GaussianRationalPoly {
public:
    GaussianRationalPoly() = default;
    explicit GaussianRationalPoly(std::vector<GaussianRational> coeffs);

    static GaussianRationalPoly constant(const GaussianRational& c);
    /// The monomial c * x^k.
    static GaussianRationalPoly monomial(const GaussianRational& c, std::size_t k);
    static GaussianRationalPoly x() { return monomial(1, 1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_real() const;
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    /// Coefficient of x^k; zero beyond the degree.
    GaussianRational operator[](std::size_t k) const;

    GaussianRational operator()(const GaussianRational& at) const;
    /// Evaluates exactly at a double (converted without rounding) and rounds the result once.
    std::complex<double> eval(double at) const;

    GaussianRationalPoly operator-() const;
    GaussianRationalPoly& operator+=(const GaussianRationalPoly& o);
    GaussianRationalPoly& operator-=(const GaussianRationalPoly& o);
    GaussianRationalPoly& operator*=(const GaussianRationalPoly& o);
    GaussianRationalPoly& operator*=(const GaussianRational& c);

    friend GaussianRationalPoly operator+(GaussianRationalPoly a, const GaussianRationalPoly& b) { return a += b; }
    friend GaussianRationalPoly operator-(GaussianRationalPoly a, const GaussianRationalPoly& b) { return a -= b; }
    friend GaussianRationalPoly operator*(GaussianRationalPoly a, const GaussianRationalPoly& b) { return a *= b; }
    friend GaussianRationalPoly operator*(GaussianRationalPoly a, const GaussianRational& c) { return a *= c; }
    friend GaussianRationalPoly operator*(const GaussianRational& c, GaussianRationalPoly a) { return a *= c; }
    friend bool operator==(const GaussianRationalPoly& a, const GaussianRationalPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    /// Human-readable form, highest degree first, e.g. "16*x^4 - 56*x^2 + 9".
    std::string to_string() const;

private:
    void trim();
    std::vector<GaussianRational> coeffs_;
};

/// Exact Taylor shift: returns g with g(x) = f(x + c).
GaussianRationalPoly shift_poly(const GaussianRationalPoly& f, const GaussianRational& c);

/// h f = 1/2 (1/2 - ix) f(x+i) + 1/2 (1/2 + ix) f(x-i).
/// Throws NonRealInput unless f has real coefficients.
GaussianRationalPoly apply_h(const GaussianRationalPoly& f);

/// R f = (i/2)(1/2 - ix) f(x+i) - (i/2)(1/2 + ix) f(x-i) + x f(x), the raising
/// operator of the W family. Throws NonRealInput unless f has real coefficients.
GaussianRationalPoly apply_R(const GaussianRationalPoly& f);

/// (hR - Rh - R) f; identically zero on real polynomials.
GaussianRationalPoly commutator_residual(const GaussianRationalPoly& f);

/// Lazily extended cache of W_0, W_1, ... built from
/// W_{n+1} = 2x W_n - n^2 W_{n-1}. Safe for concurrent callers.
class WFamily {
public:
    WFamily();
    const GaussianRationalPoly& get(std::size_t n);

private:
    std::mutex mutex_;
    std::deque<GaussianRationalPoly> cache_;
};

/// W_n from the process-wide family cache.
const GaussianRationalPoly& w_poly(std::size_t n);

/// Exact W_n(x)/n! at a double argument, rounded once to double.
double w_normalized(std::size_t n, double x);

/// Taylor coefficients of (1+t^2)^(-1/2) exp(2 x0 arctan t) through t^N,
/// computed as exact formal power series.
std::vector<mpq_class> generating_series(const mpq_class& x0, std::size_t N);

/// Max |[t^n] W(x0, t) - W_n(x0)/n!| over n <= N (zero when the family is consistent).
double generating_check(const mpq_class& x0, std::size_t N);

mpz_class factorial(unsigned long n);

}  // namespace sequiv
