#include "momc/sym_polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace momc {

SymPolynomial SymPolynomial::constant(int rank, const Rat& c) {
    SymPolynomial p(rank);
    p.add_term(Exponents(rank, 0), c);
    return p;
}

SymPolynomial SymPolynomial::linear(const Character& chi) {
    SymPolynomial p(chi.rank());
    for (int i = 0; i < chi.rank(); ++i) {
        if (chi.coords[i] == 0) continue;
        Exponents e(chi.rank(), 0);
        e[i] = 1;
        p.add_term(e, Rat(chi.coords[i]));
    }
    return p;
}

void SymPolynomial::add_term(const Exponents& e, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::optional<int> SymPolynomial::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
        int d = std::accumulate(e.begin(), e.end(), 0);
        if (!deg) deg = d;
        else if (*deg != d) return std::nullopt;
    }
    return deg ? deg : std::optional<int>(0);
}

SymPolynomial SymPolynomial::operator+(const SymPolynomial& o) const {
    SymPolynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

SymPolynomial SymPolynomial::operator-(const SymPolynomial& o) const {
    SymPolynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

SymPolynomial SymPolynomial::operator-() const {
    SymPolynomial out(rank_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

SymPolynomial SymPolynomial::operator*(const SymPolynomial& o) const {
    SymPolynomial out(rank_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

SymPolynomial SymPolynomial::operator*(const Rat& c) const {
    SymPolynomial out(rank_);
    if (c == 0) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
    return out;
}

SymPolynomial SymPolynomial::pow(int e) const {
    if (e < 0) throw InputError("SymPolynomial::pow: negative exponent");
    SymPolynomial out = constant(rank_, 1);
    for (int i = 0; i < e; ++i) out = out * (*this);
    return out;
}

namespace {

std::string monomial_str(const SymPolynomial::Exponents& e) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << '*';
        first = false;
        os << 'x' << (i + 1);
        if (e[i] != 1) os << '^' << e[i];
    }
    return os.str();
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace

std::string SymPolynomial::str() const {
    if (terms_.empty()) return "0";
    // Print by descending total degree, earlier variables first.
    std::vector<std::pair<Exponents, Rat>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        int da = std::accumulate(a.first.begin(), a.first.end(), 0);
        int db = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << '-'; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono = monomial_str(e);
        if (mono.empty()) os << rat_str(a);
        else if (a == 1) os << mono;
        else os << rat_str(a) << '*' << mono;
    }
    return os.str();
}

} // namespace momc
