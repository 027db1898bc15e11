#include "toric/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace toric {

namespace {

int exp_degree(const Polynomial::Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

bool exp_divides(const Polynomial::Exponents& d, const Polynomial::Exponents& p) {
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > p[i]) return false;
    return true;
}

} // namespace

Polynomial Polynomial::constant(const Rat& c, int nvars) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int i, int nvars) {
    if (i < 0 || i >= nvars) throw InputError("variable index out of range");
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rat(1));
    return p;
}

Rat Polynomial::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rat& c) {
    if (static_cast<int>(e.size()) != nvars_) throw InputError("exponent vector of wrong length");
    if (c == 0) return;
    Rat& t = terms_[e];
    t += c;
    if (t == 0) terms_.erase(e);
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_degree(e));
    return d;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = exp_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (exp_degree(e) != d) return false;
    return true;
}

Polynomial Polynomial::homogeneous_part(int d) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
        if (exp_degree(e) == d) out.terms_[e] = c;
    return out;
}

Polynomial Polynomial::truncated(int d) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
        if (exp_degree(e) <= d) out.terms_[e] = c;
    return out;
}

Rat Polynomial::evaluate(const RVec& xs) const {
    if (static_cast<int>(xs.size()) != nvars_) throw InputError("wrong number of values");
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= xs[i];
        total += t;
    }
    return total;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw InputError("polynomials over different variable sets");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw InputError("polynomials over different variable sets");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, t] : terms_) t *= c;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars()) throw InputError("polynomials over different variable sets");
    Polynomial out(a.nvars());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            Polynomial::Exponents e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial operator*(const Rat& c, Polynomial p) {
    p *= c;
    return p;
}

Polynomial pow(const Polynomial& p, int e) {
    if (e < 0) throw InputError("negative polynomial power");
    Polynomial out = Polynomial::constant(Rat(1), p.nvars());
    for (int k = 0; k < e; ++k) out = out * p;
    return out;
}

std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& d) {
    if (d.is_zero()) throw InputError("division by the zero polynomial");
    if (p.nvars() != d.nvars()) throw InputError("polynomials over different variable sets");
    // repeatedly cancel the lex-leading term; an exact quotient exists iff the
    // leading term is divisible at every step and the remainder reaches zero
    const auto& dlead = *d.terms().rbegin();
    Polynomial rem = p, quot(p.nvars());
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms().rbegin();
        if (!exp_divides(dlead.first, rlead.first)) return std::nullopt;
        Polynomial::Exponents e = rlead.first;
        for (size_t i = 0; i < e.size(); ++i) e[i] -= dlead.first[i];
        Rat c = rlead.second / dlead.second;
        quot.add_term(e, c);
        Polynomial step(p.nvars());
        step.add_term(e, c);
        rem -= step * d;
    }
    return quot;
}

std::string Polynomial::to_string(const std::string& var_prefix) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // print highest lex term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rat c = it->second;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool has_var = exp_degree(it->first) > 0;
        if (!has_var || c != 1) {
            out << rat_to_string(c);
            if (has_var) out << "*";
        }
        bool first_var = true;
        for (int i = 0; i < nvars_; ++i) {
            int e = it->first[i];
            if (e == 0) continue;
            if (!first_var) out << "*";
            first_var = false;
            out << var_prefix << (i + 1);
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

namespace {

// recursive-descent parser over +, -, *, ^, parentheses, rational literals,
// and variables <prefix><index>
struct Parser {
    const std::string& s;
    const std::string& prefix;
    int nvars;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial out = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+'))
                out += term();
            else if (eat('-'))
                out -= term();
            else
                return out;
        }
    }

    Polynomial term() {
        Polynomial out = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                out = out * factor();
                continue;
            }
            // implicit multiplication before '(' or a variable
            if (pos < s.size() &&
                (s[pos] == '(' || s.compare(pos, prefix.size(), prefix) == 0)) {
                out = out * factor();
                continue;
            }
            return out;
        }
    }

    Polynomial factor() {
        Polynomial base = atom();
        skip();
        if (eat('^')) {
            skip();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) throw InputError("expected an exponent after '^'");
            return pow(base, std::stoi(s.substr(start, pos - start)));
        }
        return base;
    }

    Polynomial atom() {
        skip();
        if (eat('(')) {
            Polynomial inner = expr();
            if (!eat(')')) throw InputError("unbalanced parentheses in polynomial");
            return inner;
        }
        if (s.compare(pos, prefix.size(), prefix) == 0 && pos + prefix.size() < s.size() &&
            std::isdigit(static_cast<unsigned char>(s[pos + prefix.size()]))) {
            pos += prefix.size();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            int idx = std::stoi(s.substr(start, pos - start));
            if (idx < 1 || idx > nvars)
                throw InputError("variable index out of range in polynomial");
            return Polynomial::variable(idx - 1, nvars);
        }
        size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                  (s[pos] == '/' && pos > start)))
            ++pos;
        if (pos == start) throw InputError("unexpected token in polynomial");
        return Polynomial::constant(rat_from_string(s.substr(start, pos - start)), nvars);
    }
};

} // namespace

Polynomial parse_polynomial(const std::string& expr, const std::string& var_prefix, int nvars) {
    Parser p{expr, var_prefix, nvars};
    Polynomial out = p.expr();
    p.skip();
    if (p.pos != expr.size()) throw InputError("trailing characters in polynomial");
    return out;
}

RationalFunction::RationalFunction(Polynomial num, const std::vector<Polynomial>& den_factors)
    : num_(std::move(num)) {
    normalize(den_factors);
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)) {
    normalize({std::move(den)});
}

void RationalFunction::normalize(std::vector<Polynomial> den_factors) {
    for (const Polynomial& f : den_factors)
        if (f.is_zero()) throw MathError("Singular", "zero denominator in rational function");
    // cancel factors dividing the numerator; everything else multiplies out
    den_ = Polynomial::constant(Rat(1), num_.nvars());
    for (Polynomial& f : den_factors) {
        if (!num_.is_zero()) {
            if (auto q = try_divide(num_, f)) {
                num_ = *q;
                continue;
            }
        }
        den_ = den_ * f;
    }
    if (num_.is_zero()) {
        den_ = Polynomial::constant(Rat(1), num_.nvars());
        return;
    }
    Rat lead = den_.terms().rbegin()->second;
    den_ *= Rat(1) / lead;
    num_ *= Rat(1) / lead;
}

Rat RationalFunction::evaluate(const RVec& xs) const {
    Rat d = den_.evaluate(xs);
    if (d == 0) throw MathError("Singular", "rational function evaluated at a pole");
    return num_.evaluate(xs) / d;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

std::string RationalFunction::to_string(const std::string& var_prefix) const {
    std::string d = den_.to_string(var_prefix);
    if (d == "1") return num_.to_string(var_prefix);
    return "(" + num_.to_string(var_prefix) + ") / (" + d + ")";
}

} // namespace toric
