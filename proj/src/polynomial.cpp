#include "stkit/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stkit {

Monomial Monomial::var(Symbol s, uint32_t exp) {
    Monomial m;
    if (exp > 0) m.factors_.emplace_back(s, exp);
    return m;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + other.factors_.size());
    size_t i = 0, j = 0;
    while (i < factors_.size() && j < other.factors_.size()) {
        if (factors_[i].first < other.factors_[j].first) {
            out.factors_.push_back(factors_[i++]);
        } else if (other.factors_[j].first < factors_[i].first) {
            out.factors_.push_back(other.factors_[j++]);
        } else {
            out.factors_.emplace_back(factors_[i].first, factors_[i].second + other.factors_[j].second);
            ++i, ++j;
        }
    }
    for (; i < factors_.size(); ++i) out.factors_.push_back(factors_[i]);
    for (; j < other.factors_.size(); ++j) out.factors_.push_back(other.factors_[j]);
    return out;
}

uint32_t Monomial::exponent(Symbol s) const {
    for (const auto& [sym, e] : factors_)
        if (sym == s) return e;
    return 0;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [sym, e] : factors_) d += static_cast<int>(e);
    return d;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
        if (a.factors_[i].first < b.factors_[j].first) return 1;   // a has the smaller id -> greater
        if (b.factors_[j].first < a.factors_[i].first) return -1;
        if (a.factors_[i].second != b.factors_[j].second)
            return a.factors_[i].second < b.factors_[j].second ? -1 : 1;
        ++i, ++j;
    }
    if (i < a.factors_.size()) return 1;
    if (j < b.factors_.size()) return -1;
    return 0;
}

std::string Monomial::to_string(const SymbolTable& table) const {
    if (factors_.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [sym, e] : factors_) {
        if (!first) out << '*';
        first = false;
        out << table.display(sym);
        if (e > 1) out << '^' << e;
    }
    return out.str();
}

Polynomial Polynomial::constant(SymbolTablePtr table, BigInt value) {
    Polynomial p(std::move(table));
    if (value != 0) p.terms_.emplace_back(Monomial(), std::move(value));
    return p;
}

Polynomial Polynomial::variable(SymbolTablePtr table, Symbol s) {
    return monomial(std::move(table), Monomial::var(s));
}

Polynomial Polynomial::monomial(SymbolTablePtr table, Monomial m, BigInt coeff) {
    Polynomial p(std::move(table));
    if (coeff != 0) p.terms_.emplace_back(std::move(m), std::move(coeff));
    return p;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

bool Polynomial::is_pm_binomial(Monomial* pos, Monomial* neg) const {
    if (terms_.size() != 2) return false;
    const auto& [m0, c0] = terms_[0];
    const auto& [m1, c1] = terms_[1];
    if (c0 == 1 && c1 == -1) {
        if (pos) *pos = m0;
        if (neg) *neg = m1;
        return true;
    }
    if (c0 == -1 && c1 == 1) {
        if (pos) *pos = m1;
        if (neg) *neg = m0;
        return true;
    }
    return false;
}

void Polynomial::check_same_table(const Polynomial& a, const Polynomial& b) {
    if (a.table_ != b.table_)
        throw std::invalid_argument("polynomial operands use different symbol tables");
}

Polynomial Polynomial::from_term_map(SymbolTablePtr table, std::map<Monomial, BigInt>&& m) {
    Polynomial p(std::move(table));
    p.terms_.reserve(m.size());
    for (auto it = m.rbegin(); it != m.rend(); ++it)
        if (it->second != 0) p.terms_.emplace_back(it->first, std::move(it->second));
    return p;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(table_);
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.terms_.emplace_back(m, -c);
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial::check_same_table(a, b);
    std::map<Monomial, BigInt> acc;
    for (const auto& [m, c] : a.terms_) acc[m] += c;
    for (const auto& [m, c] : b.terms_) acc[m] += c;
    return Polynomial::from_term_map(a.table_, std::move(acc));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial::check_same_table(a, b);
    std::map<Monomial, BigInt> acc;
    for (const auto& [m, c] : a.terms_) acc[m] += c;
    for (const auto& [m, c] : b.terms_) acc[m] -= c;
    return Polynomial::from_term_map(a.table_, std::move(acc));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial::check_same_table(a, b);
    std::map<Monomial, BigInt> acc;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) acc[ma.times(mb)] += ca * cb;
    return Polynomial::from_term_map(a.table_, std::move(acc));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    Polynomial::check_same_table(a, b);
    return a.terms_ == b.terms_;
}

int Polynomial::cmp(const Polynomial& a, const Polynomial& b) {
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        int c = Monomial::cmp(a.terms_[i].first, b.terms_[i].first);
        if (c != 0) return c;
        if (a.terms_[i].second != b.terms_[i].second)
            return a.terms_[i].second < b.terms_[i].second ? -1 : 1;
    }
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    return 0;
}

Polynomial Polynomial::sign_normalized() const {
    if (terms_.empty() || terms_.front().second > 0) return *this;
    return -*this;
}

Rational Polynomial::evaluate(const Assignment& values) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational term(c);
        for (const auto& [sym, e] : m.factors()) {
            auto it = values.find(sym);
            if (it == values.end())
                throw std::invalid_argument("no value assigned to symbol " + table_->display(sym));
            for (uint32_t k = 0; k < e; ++k) term *= it->second;
        }
        sum += term;
    }
    return sum;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            out << mag.str();
        } else {
            if (mag != 1) out << mag.str() << '*';
            out << m.to_string(*table_);
        }
    }
    return out.str();
}

namespace {

// One factor of a term: either an integer or "name" / "name^exp". The
// exponent is the trailing "^<digits>" only; a '^' followed by anything
// else belongs to the symbol name (displays like "p000^(1)" stay intact).
void parse_factor(const SymbolTablePtr& table, const std::string& tok, Monomial& mono, BigInt& coeff) {
    if (tok.empty()) throw std::invalid_argument("empty factor in polynomial text");
    bool all_digits = std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (all_digits) {
        coeff *= BigInt(tok);
        return;
    }
    std::string name = tok;
    uint32_t exp = 1;
    auto caret = tok.rfind('^');
    if (caret != std::string::npos && caret + 1 < tok.size()) {
        bool digits = true;
        for (size_t i = caret + 1; i < tok.size(); ++i)
            if (tok[i] < '0' || tok[i] > '9') digits = false;
        if (digits) {
            name = tok.substr(0, caret);
            exp = static_cast<uint32_t>(std::stoul(tok.substr(caret + 1)));
        }
    }
    if (name.empty()) throw std::invalid_argument("bad factor: " + tok);
    mono = mono.times(Monomial::var(table->intern(name), exp));
}

}  // namespace

Polynomial Polynomial::parse(const SymbolTablePtr& table, const std::string& text) {
    std::map<Monomial, BigInt> acc;
    size_t pos = 0;
    int sign = 1;
    // leading sign
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
    }
    if (text.substr(pos) == "0" || pos >= text.size()) {
        if (text.substr(pos) == "0") return Polynomial(table);
    }
    while (pos < text.size()) {
        size_t next = std::string::npos;
        int next_sign = 1;
        for (size_t i = pos; i + 2 < text.size(); ++i) {
            if (text[i] == ' ' && (text[i + 1] == '+' || text[i + 1] == '-') && text[i + 2] == ' ') {
                next = i;
                next_sign = text[i + 1] == '-' ? -1 : 1;
                break;
            }
        }
        std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        Monomial mono;
        BigInt coeff = sign;
        size_t start = 0;
        while (start <= term.size()) {
            size_t star = term.find('*', start);
            std::string tok = term.substr(start, star == std::string::npos ? std::string::npos : star - start);
            parse_factor(table, tok, mono, coeff);
            if (star == std::string::npos) break;
            start = star + 1;
        }
        acc[mono] += coeff;
        if (next == std::string::npos) break;
        pos = next + 3;
        sign = next_sign;
    }
    return from_term_map(table, std::move(acc));
}

}  // namespace stkit
