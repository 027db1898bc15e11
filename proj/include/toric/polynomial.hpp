#ifndef TORIC_POLYNOMIAL_HPP
#define TORIC_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/linalg.hpp"

namespace toric {

// Multivariate polynomial with rational coefficients.  Terms are keyed by
// exponent vectors in lexicographic order; zero coefficients are never stored.
class Polynomial {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rat>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(const Rat& c, int nvars);
    static Polynomial variable(int i, int nvars);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coeff(const Exponents& e) const;
    void add_term(const Exponents& e, const Rat& c);

    // -1 for the zero polynomial
    int total_degree() const;
    bool is_homogeneous() const;
    Polynomial homogeneous_part(int d) const;
    // drops all terms of total degree above d
    Polynomial truncated(int d) const;

    Rat evaluate(const RVec& xs) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rat& c);
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    std::string to_string(const std::string& var_prefix = "x") const;

private:
    int nvars_ = 0;
    TermMap terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Rat& c, Polynomial p);
Polynomial pow(const Polynomial& p, int e);

// Exact quotient p / d when the division leaves no remainder (lex-leading
// term elimination); nullopt otherwise.  d must be nonzero.
std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& d);

// Parses expressions like "d1^2 + 3*d1*d2 - 1/2" over variables
// <var_prefix>1 .. <var_prefix><nvars>.  Throws InputError on bad syntax.
Polynomial parse_polynomial(const std::string& expr, const std::string& var_prefix, int nvars);

// Quotient of polynomials with a nonzero denominator.  Construction cancels
// denominator factors dividing the numerator and scales so the denominator's
// lexicographically leading coefficient is 1.
class RationalFunction {
public:
    RationalFunction() = default;
    // factored form: denominator is the product of the given factors
    RationalFunction(Polynomial num, const std::vector<Polynomial>& den_factors);
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Rat evaluate(const RVec& xs) const; // throws MathError("Singular") on a pole
    bool operator==(const RationalFunction& o) const;

    std::string to_string(const std::string& var_prefix = "w") const;

private:
    void normalize(std::vector<Polynomial> den_factors);

    Polynomial num_;
    Polynomial den_;
};

} // namespace toric

#endif
