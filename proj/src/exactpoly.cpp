#include "sequiv/exactpoly.hpp"

#include <algorithm>
#include <sstream>

#include "sequiv/errors.hpp"

namespace sequiv {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw DomainError("GaussianRational: division by zero");
    const mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussianRational::to_string() const {
    if (is_real()) return re_.get_str();
    std::ostringstream os;
    os << "(" << re_.get_str() << (sgn(im_) < 0 ? " - " : " + ") << mpq_class(abs(im_)).get_str() << "i)";
    return os.str();
}

GaussianRationalPoly::GaussianRationalPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

GaussianRationalPoly GaussianRationalPoly::constant(const GaussianRational& c) {
    return GaussianRationalPoly(std::vector<GaussianRational>{c});
}

GaussianRationalPoly GaussianRationalPoly::monomial(const GaussianRational& c, std::size_t k) {
    std::vector<GaussianRational> v(k + 1);
    v[k] = c;
    return GaussianRationalPoly(std::move(v));
}

void GaussianRationalPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool GaussianRationalPoly::is_real() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const GaussianRational& c) { return c.is_real(); });
}

GaussianRational GaussianRationalPoly::operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : GaussianRational{};
}

GaussianRational GaussianRationalPoly::operator()(const GaussianRational& at) const {
    GaussianRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= at;
        acc += *it;
    }
    return acc;
}

std::complex<double> GaussianRationalPoly::eval(double at) const {
    return (*this)(GaussianRational(mpq_class(at))).to_complex();
}

GaussianRationalPoly GaussianRationalPoly::operator-() const {
    GaussianRationalPoly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

GaussianRationalPoly& GaussianRationalPoly::operator+=(const GaussianRationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

GaussianRationalPoly& GaussianRationalPoly::operator-=(const GaussianRationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

GaussianRationalPoly& GaussianRationalPoly::operator*=(const GaussianRationalPoly& o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<GaussianRational> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        if (coeffs_[a].is_zero()) continue;
        for (std::size_t b = 0; b < o.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * o.coeffs_[b];
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

GaussianRationalPoly& GaussianRationalPoly::operator*=(const GaussianRational& c) {
    for (auto& v : coeffs_) v *= c;
    trim();
    return *this;
}

std::string GaussianRationalPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const GaussianRational& c = coeffs_[k];
        if (c.is_zero()) continue;
        std::string body;
        bool negative = false;
        if (c.is_real()) {
            negative = sgn(c.re()) < 0;
            const mpq_class mag = abs(c.re());
            if (mag != 1 || k == 0) body = mag.get_str();
        } else {
            body = c.to_string();
        }
        if (k > 0) {
            if (!body.empty()) body += "*";
            body += (k == 1) ? "x" : "x^" + std::to_string(k);
        }
        if (first) {
            os << (negative ? "-" : "") << body;
        } else {
            os << (negative ? " - " : " + ") << body;
        }
        first = false;
    }
    return os.str();
}

GaussianRationalPoly shift_poly(const GaussianRationalPoly& f, const GaussianRational& c) {
    // Horner in the shifted variable: (...(a_n (x+c) + a_{n-1})(x+c) + ...) + a_0.
    const GaussianRationalPoly x_plus_c(std::vector<GaussianRational>{c, 1});
    GaussianRationalPoly acc;
    const auto& a = f.coeffs();
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        acc *= x_plus_c;
        acc += GaussianRationalPoly::constant(*it);
    }
    return acc;
}

namespace {

const GaussianRational kHalf{mpq_class(1, 2)};
const GaussianRational kQuarter{mpq_class(1, 4)};

void require_real(const GaussianRationalPoly& f, const char* who) {
    if (!f.is_real()) throw NonRealInput(std::string(who) + ": polynomial has non-real coefficients");
}

// (1/2 - ix) and (1/2 + ix)
GaussianRationalPoly minus_factor() {
    return GaussianRationalPoly(std::vector<GaussianRational>{kHalf, -GaussianRational::i()});
}
GaussianRationalPoly plus_factor() {
    return GaussianRationalPoly(std::vector<GaussianRational>{kHalf, GaussianRational::i()});
}

}  // namespace

GaussianRationalPoly apply_h(const GaussianRationalPoly& f) {
    require_real(f, "apply_h");
    const GaussianRational i = GaussianRational::i();
    return kHalf * minus_factor() * shift_poly(f, i) + kHalf * plus_factor() * shift_poly(f, -i);
}

GaussianRationalPoly apply_R(const GaussianRationalPoly& f) {
    require_real(f, "apply_R");
    const GaussianRational i = GaussianRational::i();
    const GaussianRational half_i = kHalf * i;
    return half_i * minus_factor() * shift_poly(f, i) - half_i * plus_factor() * shift_poly(f, -i) +
           GaussianRationalPoly::x() * f;
}

GaussianRationalPoly commutator_residual(const GaussianRationalPoly& f) {
    require_real(f, "commutator_residual");
    const GaussianRationalPoly rf = apply_R(f);
    return apply_h(rf) - apply_R(apply_h(f)) - rf;
}

WFamily::WFamily() {
    cache_.push_back(GaussianRationalPoly::constant(1));
    cache_.push_back(GaussianRationalPoly::monomial(2, 1));
}

const GaussianRationalPoly& WFamily::get(std::size_t n) {
    std::lock_guard lock(mutex_);
    const GaussianRationalPoly two_x = GaussianRationalPoly::monomial(2, 1);
    while (cache_.size() <= n) {
        const std::size_t m = cache_.size() - 1;  // next is W_{m+1}
        const GaussianRational m_sq(static_cast<long>(m * m));
        cache_.push_back(two_x * cache_[m] - m_sq * cache_[m - 1]);
    }
    return cache_[n];
}

const GaussianRationalPoly& w_poly(std::size_t n) {
    static WFamily family;
    return family.get(n);
}

mpz_class factorial(unsigned long n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

double w_normalized(std::size_t n, double x) {
    const GaussianRational v = w_poly(n)(GaussianRational(mpq_class(x)));
    return mpq_class(v.re() / factorial(n)).get_d();
}

std::vector<mpq_class> generating_series(const mpq_class& x0, std::size_t N) {
    // (1+t^2)^(-1/2) = sum_k binom(-1/2, k) t^(2k); binom(-1/2, k) = binom(-1/2, k-1) * (1/2 - k) / k.
    std::vector<mpq_class> root(N + 1, 0);
    mpq_class b = 1;
    for (std::size_t k = 0; 2 * k <= N; ++k) {
        if (k > 0) b *= mpq_class(1 - 2 * static_cast<long>(k), 2 * static_cast<long>(k));
        root[2 * k] = b;
    }
    // a(t) = 2 x0 arctan t = 2 x0 sum_k (-1)^k t^(2k+1) / (2k+1).
    std::vector<mpq_class> a(N + 1, 0);
    for (std::size_t k = 0; 2 * k + 1 <= N; ++k) {
        a[2 * k + 1] = mpq_class(k % 2 == 0 ? 2 : -2, 2 * static_cast<long>(k) + 1) * x0;
    }
    // e(t) = exp(a(t)): e' = a' e gives n e_n = sum_{k=1..n} k a_k e_{n-k}.
    std::vector<mpq_class> e(N + 1, 0);
    e[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) {
        mpq_class acc = 0;
        for (std::size_t k = 1; k <= n; ++k) acc += mpq_class(static_cast<long>(k)) * a[k] * e[n - k];
        e[n] = acc / static_cast<long>(n);
    }
    std::vector<mpq_class> out(N + 1, 0);
    for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t k = 0; k <= n; ++k) out[n] += root[k] * e[n - k];
    }
    return out;
}

double generating_check(const mpq_class& x0, std::size_t N) {
    if (N < 1) throw DomainError("generating_check: N must be at least 1");
    const auto series = generating_series(x0, N);
    mpq_class worst = 0;
    for (std::size_t n = 0; n <= N; ++n) {
        const GaussianRational w = w_poly(n)(GaussianRational(x0));
        const mpq_class dev = abs(series[n] - w.re() / factorial(n));
        if (dev > worst) worst = dev;
    }
    return worst.get_d();
}

}  // namespace sequiv
