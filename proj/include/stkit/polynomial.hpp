#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stkit/numbers.hpp"
#include "stkit/symbol.hpp"

namespace stkit {

// Product of symbols with positive integer exponents. Factors are kept
// sorted by symbol id with no zero exponents, so equal monomials compare
// equal structurally.
class Monomial {
public:
    Monomial() = default;  // the monomial 1

    static Monomial var(Symbol s, uint32_t exp = 1);

    Monomial times(const Monomial& other) const;
    uint32_t exponent(Symbol s) const;
    int total_degree() const;
    bool is_one() const { return factors_.empty(); }
    const std::vector<std::pair<Symbol, uint32_t>>& factors() const { return factors_; }

    // Graded lexicographic order on symbol ids: compare total degree first,
    // then exponents along ascending ids (larger exponent on the smallest
    // differing id wins). Returns -1/0/+1.
    static int cmp(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    friend bool operator<(const Monomial& a, const Monomial& b) { return cmp(a, b) < 0; }

    std::string to_string(const SymbolTable& table) const;

private:
    std::vector<std::pair<Symbol, uint32_t>> factors_;
};

using Assignment = std::map<Symbol, Rational>;

// Sparse multivariate polynomial with exact integer coefficients over one
// symbol table. Terms are stored in descending monomial order with no zero
// coefficients, so the representation is canonical per mathematical
// polynomial.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(SymbolTablePtr table) : table_(std::move(table)) {}

    static Polynomial constant(SymbolTablePtr table, BigInt value);
    static Polynomial variable(SymbolTablePtr table, Symbol s);
    static Polynomial monomial(SymbolTablePtr table, Monomial m, BigInt coeff = 1);

    const SymbolTablePtr& table() const { return table_; }
    const std::vector<std::pair<Monomial, BigInt>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }
    int total_degree() const;

    // True when the polynomial is m_pos - m_neg with unit coefficients.
    bool is_pm_binomial(Monomial* pos = nullptr, Monomial* neg = nullptr) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Total order used to sort generator lists deterministically.
    static int cmp(const Polynomial& a, const Polynomial& b);

    // Flips the sign when the leading monomial has a negative coefficient.
    Polynomial sign_normalized() const;

    // Exact rational evaluation; throws when a symbol has no value.
    Rational evaluate(const Assignment& values) const;

    std::string to_string() const;
    static Polynomial parse(const SymbolTablePtr& table, const std::string& text);

private:
    SymbolTablePtr table_;
    std::vector<std::pair<Monomial, BigInt>> terms_;

    static void check_same_table(const Polynomial& a, const Polynomial& b);
    static Polynomial from_term_map(SymbolTablePtr table, std::map<Monomial, BigInt>&& m);
};

}  // namespace stkit
