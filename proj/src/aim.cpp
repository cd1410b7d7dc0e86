#include "kgedp/aim.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kgedp::aim {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

Polynomial Polynomial::constant(const Rational& value) { return Polynomial(std::vector<Rational>{value}); }

Polynomial Polynomial::monomial(const Rational& coefficient, int degree) {
    if (degree < 0) throw std::domain_error("negative monomial degree");
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
    c.back() = coefficient;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int k) const {
    if (k < 0 || k > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Polynomial Polynomial::derivative() const {
    if (degree() < 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled_argument(const Rational& c) const {
    std::vector<Rational> out(coeffs_.size());
    Rational power = 1;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        out[k] = coeffs_[k] * power;
        power *= c;
    }
    return Polynomial(std::move(out));
}

Rational Polynomial::evaluate(const Rational& z) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    const Rational lead = leading();
    std::vector<Rational> out(coeffs_);
    for (auto& c : out) c /= lead;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const { return Rational(-1) * *this; }

Polynomial operator+(const Polynomial& x, const Polynomial& y) {
    std::vector<Rational> out(std::max(x.coeffs_.size(), y.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = x.coefficient(static_cast<int>(k)) + y.coefficient(static_cast<int>(k));
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& x, const Polynomial& y) { return x + (-y); }

Polynomial operator*(const Polynomial& x, const Polynomial& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<Rational> out(x.coeffs_.size() + y.coeffs_.size() - 1);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j) out[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& k, const Polynomial& p) {
    std::vector<Rational> out(p.coeffs_);
    for (auto& c : out) c *= k;
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial remainder = num;
    std::vector<Rational> quotient(std::max(0, num.degree() - den.degree() + 1));
    const Rational lead = den.leading();
    while (!remainder.is_zero() && remainder.degree() >= den.degree()) {
        const int shift = remainder.degree() - den.degree();
        const Rational factor = remainder.leading() / lead;
        quotient[static_cast<std::size_t>(shift)] = factor;
        remainder = remainder - Polynomial::monomial(factor, shift) * den;
    }
    return {Polynomial(std::move(quotient)), remainder};
}

std::string Polynomial::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        const Rational mag = abs(c);
        if (k == 0 || mag != 1) os << mag.get_str();
        if (k > 0) os << var;
        if (k > 1) os << '^' << k;
        first = false;
    }
    return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = Polynomial::divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

RationalFn::RationalFn(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Polynomial::constant(1);
        return;
    }
    const Polynomial g = gcd(num, den);
    num = Polynomial::divmod(num, g).first;
    den = Polynomial::divmod(den, g).first;
    const Rational lead = den.leading();
    num_ = Rational(1) / lead * num;
    den_ = den.monic();
}

RationalFn RationalFn::derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFn RationalFn::scaled_argument(const Rational& c) const {
    return {num_.scaled_argument(c), den_.scaled_argument(c)};
}

Rational RationalFn::evaluate(const Rational& z) const {
    const Rational d = den_.evaluate(z);
    if (d == 0) throw std::domain_error("rational function evaluated at a pole");
    return num_.evaluate(z) / d;
}

RationalFn operator+(const RationalFn& x, const RationalFn& y) {
    if (x.den_ == y.den_) return {x.num_ + y.num_, x.den_};
    return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
}

RationalFn operator-(const RationalFn& x, const RationalFn& y) { return x + Rational(-1) * y; }

RationalFn operator*(const RationalFn& x, const RationalFn& y) { return {x.num_ * y.num_, x.den_ * y.den_}; }

RationalFn operator*(const Rational& k, const RationalFn& f) { return {k * f.num_, f.den_}; }

std::string RationalFn::to_string(char var) const {
    if (den_.degree() == 0) return num_.to_string(var);
    return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

AimState seed(const Rational& tau, const Rational& eta, const Rational& beta_sq) {
    const Polynomial z = Polynomial::monomial(1, 1);
    AimState state;
    state.n = 0;
    state.lambda0 = RationalFn(Polynomial(std::vector<Rational>{-2 * (eta + 1), 2 * tau}), z);
    state.s0 = RationalFn(Polynomial::constant(2 * tau * (eta + 1) - beta_sq), z);
    state.lambda = state.lambda0;
    state.s = state.s0;
    return state;
}

AimState iterate(const AimState& state) {
    AimState next;
    next.n = state.n + 1;
    next.lambda0 = state.lambda0;
    next.s0 = state.s0;
    next.lambda = state.lambda.derivative() + state.lambda0 * state.lambda + state.s;
    next.s = state.s.derivative() + state.s0 * state.lambda;
    return next;
}

RationalFn termination_delta(const AimState& state, const AimState& previous) {
    if (state.n != previous.n + 1) throw std::invalid_argument("termination_delta needs consecutive states");
    return state.s * previous.lambda - previous.s * state.lambda;
}

Rational quantized_tau(const Rational& beta_sq, const Rational& eta, int n) {
    const Rational denominator = 2 * (eta + n + 1);
    if (denominator == 0) throw std::domain_error("eta + n + 1 = 0");
    Rational out = beta_sq / denominator;
    out.canonicalize();
    return out;
}

bool terminates(const Rational& tau, const Rational& eta, const Rational& beta_sq, int n) {
    if (n < 0) throw std::invalid_argument("negative quantum number");
    AimState previous = seed(tau, eta, beta_sq);
    for (int k = 0; k < n; ++k) previous = iterate(previous);
    return termination_delta(iterate(previous), previous).is_zero();
}

}  // namespace kgedp::aim
