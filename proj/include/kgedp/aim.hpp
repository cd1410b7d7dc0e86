#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace kgedp::aim {

using Rational = mpq_class;

/// Dense polynomial in z with exact rational coefficients, lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);

    static Polynomial constant(const Rational& value);
    static Polynomial monomial(const Rational& coefficient, int degree);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    Rational coefficient(int k) const;
    Rational leading() const;

    Polynomial derivative() const;
    /// p(c z).
    Polynomial scaled_argument(const Rational& c) const;
    Rational evaluate(const Rational& z) const;
    Polynomial monic() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& x, const Polynomial& y);
    friend Polynomial operator-(const Polynomial& x, const Polynomial& y);
    friend Polynomial operator*(const Polynomial& x, const Polynomial& y);
    friend Polynomial operator*(const Rational& k, const Polynomial& p);
    friend bool operator==(const Polynomial& x, const Polynomial& y) { return x.coeffs_ == y.coeffs_; }

    /// Quotient and remainder of Euclidean division. Throws std::domain_error for a zero divisor.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);

    std::string to_string(char var = 'z') const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// num/den kept in lowest terms with a monic denominator; zero is 0/1.
class RationalFn {
public:
    RationalFn() : den_(Polynomial::constant(1)) {}
    RationalFn(Polynomial num, Polynomial den);

    static RationalFn from_polynomial(Polynomial p) { return {std::move(p), Polynomial::constant(1)}; }

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    RationalFn derivative() const;
    /// f(c z).
    RationalFn scaled_argument(const Rational& c) const;
    Rational evaluate(const Rational& z) const;

    friend RationalFn operator+(const RationalFn& x, const RationalFn& y);
    friend RationalFn operator-(const RationalFn& x, const RationalFn& y);
    friend RationalFn operator*(const RationalFn& x, const RationalFn& y);
    friend RationalFn operator*(const Rational& k, const RationalFn& f);
    friend bool operator==(const RationalFn& x, const RationalFn& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }

    std::string to_string(char var = 'z') const;

private:
    Polynomial num_;
    Polynomial den_;
};

/// One step of the asymptotic iteration for f'' = lambda0 f' + s0 f.
struct AimState {
    int n = 0;
    RationalFn lambda0;
    RationalFn s0;
    RationalFn lambda;  // lambda_n
    RationalFn s;       // s_n
};

/// lambda0 = 2(tau z - (eta+1))/z,  s0 = (2 tau (eta+1) - beta^2)/z.
AimState seed(const Rational& tau, const Rational& eta, const Rational& beta_sq);

/// lambda_{n+1} = lambda_n' + lambda0 lambda_n + s_n,  s_{n+1} = s_n' + s0 lambda_n.
AimState iterate(const AimState& state);

/// s_n lambda_{n-1} - s_{n-1} lambda_n for consecutive states (state.n == previous.n + 1).
/// The termination condition s_n/lambda_n = s_{n-1}/lambda_{n-1} holds iff this is zero.
RationalFn termination_delta(const AimState& state, const AimState& previous);

/// tau_n = beta^2 / (2 (eta + n + 1)).
Rational quantized_tau(const Rational& beta_sq, const Rational& eta, int n);

/// Iterates to state n+1 and reports whether the delta between states n+1 and n
/// vanishes identically. For quantum number n this holds at tau = quantized_tau(n).
bool terminates(const Rational& tau, const Rational& eta, const Rational& beta_sq, int n);

}  // namespace kgedp::aim
