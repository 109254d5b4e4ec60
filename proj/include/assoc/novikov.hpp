#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "assoc/dual.hpp"
#include "assoc/rational.hpp"

namespace assoc {

// Truncation bound for a series: a finite exponent or +infinity.
// Operations on two series propagate the minimum of the two bounds.
struct Cutoff {
    bool finite = false;
    Rat value;  // meaningful only when finite

    static Cutoff infinity() { return Cutoff{}; }
    static Cutoff at(Rat v) {
        v.canonicalize();
        if (v < 0) throw std::domain_error("cutoff must be nonnegative");
        return Cutoff{true, std::move(v)};
    }

    bool allows(const Rat& e) const { return !finite || e < value; }

    friend Cutoff min(const Cutoff& a, const Cutoff& b) {
        if (!a.finite) return b;
        if (!b.finite) return a;
        return a.value <= b.value ? a : b;
    }
    friend bool operator==(const Cutoff& a, const Cutoff& b) {
        return a.finite == b.finite && (!a.finite || a.value == b.value);
    }
    friend bool operator!=(const Cutoff& a, const Cutoff& b) { return !(a == b); }

    std::string str() const { return finite ? rat_str(value) : std::string("inf"); }
};

// v(x): least exponent with nonzero coefficient, +infinity for the zero series.
struct Valuation {
    bool infinite = true;
    Rat v;  // meaningful only when finite

    static Valuation infinity() { return Valuation{}; }
    static Valuation at(Rat x) { return Valuation{false, std::move(x)}; }

    bool positive() const { return infinite || v > 0; }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite == b.infinite && (a.infinite || a.v == b.v);
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
    // infinity compares greater than every finite valuation
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.v < b.v;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite || b.infinite) return infinity();
        return at(a.v + b.v);
    }
    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

    std::string str() const { return infinite ? std::string("inf") : rat_str(v); }
};

// The non-archimedean norm 2^{-v}, as a double; 0 for the zero element.
inline double norm_of(const Valuation& v) {
    if (v.infinite) return 0.0;
    return std::pow(2.0, -v.v.get_d());
}

// Element of the truncated Novikov ring: finitely many terms c * q^e with
// exact coefficients, exponents rational and >= 0, strictly increasing,
// all below the cutoff. The empty term list is 0. Immutable in use: all
// operations return new values.
template <class C>
class BasicSeries {
  public:
    using Term = std::pair<Rat, C>;  // (exponent, coefficient)

    BasicSeries() : cutoff_(Cutoff::infinity()) {}
    explicit BasicSeries(Cutoff c) : cutoff_(std::move(c)) {}

    BasicSeries(std::vector<Term> terms, Cutoff c) : cutoff_(std::move(c)) {
        for (auto& t : terms) {
            t.first.canonicalize();
            coeff_ops<C>::canonicalize(t.second);
        }
        std::stable_sort(terms.begin(), terms.end(),
                         [](const Term& a, const Term& b) { return a.first < b.first; });
        for (auto& t : terms) {
            if (t.first < 0) throw std::domain_error("negative exponent in Novikov series");
            if (!cutoff_.allows(t.first)) continue;
            if (!terms_.empty() && terms_.back().first == t.first)
                terms_.back().second += t.second;
            else
                terms_.push_back(std::move(t));
            if (coeff_ops<C>::is_zero(terms_.back().second)) terms_.pop_back();
        }
    }

    static BasicSeries zero(Cutoff c = Cutoff::infinity()) { return BasicSeries(std::move(c)); }
    static BasicSeries one(Cutoff c = Cutoff::infinity()) { return monomial(C(1), Rat(0), std::move(c)); }
    static BasicSeries monomial(C coeff, Rat exp, Cutoff c = Cutoff::infinity()) {
        return BasicSeries({{std::move(exp), std::move(coeff)}}, std::move(c));
    }

    const std::vector<Term>& terms() const { return terms_; }
    const Cutoff& cutoff() const { return cutoff_; }
    bool is_zero() const { return terms_.empty(); }

    Valuation valuation() const {
        return terms_.empty() ? Valuation::infinity() : Valuation::at(terms_.front().first);
    }

    C coeff_at(const Rat& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Rat& x) { return t.first < x; });
        if (it != terms_.end() && it->first == e) return it->second;
        return C(0);
    }

    BasicSeries truncated(const Cutoff& c) const {
        BasicSeries r(min(cutoff_, c));
        for (const auto& t : terms_)
            if (r.cutoff_.allows(t.first)) r.terms_.push_back(t);
        return r;
    }

    BasicSeries operator-() const {
        BasicSeries r(cutoff_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.emplace_back(t.first, -t.second);
        return r;
    }

    friend BasicSeries operator+(const BasicSeries& a, const BasicSeries& b) {
        BasicSeries r(min(a.cutoff_, b.cutoff_));
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            Term t;
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first))
                t = *ia++;
            else if (ia == a.terms_.end() || ib->first < ia->first)
                t = *ib++;
            else {
                t = {ia->first, ia->second + ib->second};
                ++ia, ++ib;
            }
            if (!r.cutoff_.allows(t.first)) break;
            if (!coeff_ops<C>::is_zero(t.second)) r.terms_.push_back(std::move(t));
        }
        return r;
    }

    friend BasicSeries operator-(const BasicSeries& a, const BasicSeries& b) { return a + (-b); }

    friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
        BasicSeries r(min(a.cutoff_, b.cutoff_));
        std::vector<Term> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Rat e = ta.first + tb.first;
                if (!r.cutoff_.allows(e)) continue;
                acc.emplace_back(std::move(e), ta.second * tb.second);
            }
        return BasicSeries(std::move(acc), r.cutoff_);
    }

    BasicSeries scaled(const C& c) const {
        BasicSeries r(cutoff_);
        if (coeff_ops<C>::is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            C v = t.second * c;
            if (!coeff_ops<C>::is_zero(v)) r.terms_.emplace_back(t.first, std::move(v));
        }
        return r;
    }

    // Multiply every coefficient by 1/k (k a nonzero integer).
    BasicSeries scaled_by_int_inverse(long k) const {
        BasicSeries r(cutoff_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            r.terms_.emplace_back(t.first, coeff_ops<C>::div_int(t.second, k));
        return r;
    }

    // Shift every exponent by s >= 0 (multiplication by q^s).
    BasicSeries shifted(const Rat& s) const {
        if (s < 0) throw std::domain_error("negative exponent shift");
        BasicSeries r(cutoff_);
        for (const auto& t : terms_) {
            Rat e = t.first + s;
            if (r.cutoff_.allows(e)) r.terms_.emplace_back(std::move(e), t.second);
        }
        return r;
    }

    friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
        return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BasicSeries& a, const BasicSeries& b) { return !(a == b); }

    // Structural equality of term lists, ignoring the cutoff metadata.
    friend bool same_terms(const BasicSeries& a, const BasicSeries& b) {
        return a.terms_ == b.terms_;
    }

  private:
    std::vector<Term> terms_;
    Cutoff cutoff_;
};

using Series = BasicSeries<Rat>;
using DualSeries = BasicSeries<DualRat>;

// exp on the ideal of positive valuation: sum a^k / k!, truncated.
// Requires v(a) > 0; a nonzero argument needs a finite cutoff to terminate.
template <class C>
BasicSeries<C> exp_pos(const BasicSeries<C>& a) {
    if (!a.valuation().positive())
        throw std::domain_error("exp_pos: argument must have positive valuation");
    BasicSeries<C> r = BasicSeries<C>::one(a.cutoff());
    if (a.is_zero()) return r;
    if (!a.cutoff().finite)
        throw std::domain_error("exp_pos: nonzero argument needs a finite cutoff");
    BasicSeries<C> pw = BasicSeries<C>::one(a.cutoff());
    for (long k = 1;; ++k) {
        pw = (pw * a).scaled_by_int_inverse(k);  // running a^k / k!
        if (pw.is_zero()) break;
        r = r + pw;
    }
    return r;
}

// log on the multiplicative group 1 + positive-valuation ideal.
template <class C>
BasicSeries<C> log_unit(const BasicSeries<C>& u) {
    BasicSeries<C> x = u - BasicSeries<C>::one(u.cutoff());
    if (!x.valuation().positive())
        throw std::domain_error("log_unit: argument must lie in 1 + positive ideal");
    BasicSeries<C> r = BasicSeries<C>::zero(u.cutoff());
    if (x.is_zero()) return r;
    if (!u.cutoff().finite)
        throw std::domain_error("log_unit: nontrivial argument needs a finite cutoff");
    BasicSeries<C> pw = BasicSeries<C>::one(u.cutoff());
    for (long k = 1;; ++k) {
        pw = pw * x;  // x^k
        if (pw.is_zero()) break;
        BasicSeries<C> term = pw.scaled_by_int_inverse(k % 2 == 0 ? -k : k);
        r = r + term;
    }
    return r;
}

// Inverse of a unit u in 1 + positive ideal, via the geometric series.
template <class C>
BasicSeries<C> unit_inverse(const BasicSeries<C>& u) {
    BasicSeries<C> x = u - BasicSeries<C>::one(u.cutoff());
    if (!x.valuation().positive())
        throw std::domain_error("unit_inverse: argument must lie in 1 + positive ideal");
    BasicSeries<C> r = BasicSeries<C>::one(u.cutoff());
    if (x.is_zero()) return r;
    if (!u.cutoff().finite)
        throw std::domain_error("unit_inverse: nontrivial argument needs a finite cutoff");
    BasicSeries<C> pw = BasicSeries<C>::one(u.cutoff());
    for (;;) {
        pw = pw * (-x);
        if (pw.is_zero()) break;
        r = r + pw;
    }
    return r;
}

// Integer powers of elements of 1 + positive ideal; negative powers go
// through the truncated geometric inverse.
template <class C>
BasicSeries<C> unit_pow(const BasicSeries<C>& u, long k) {
    BasicSeries<C> base = u;
    if (!(u - BasicSeries<C>::one(u.cutoff())).valuation().positive())
        throw std::domain_error("unit_pow: argument must lie in 1 + positive ideal");
    if (k < 0) {
        base = unit_inverse(u);
        k = -k;
    }
    BasicSeries<C> r = BasicSeries<C>::one(u.cutoff());
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

// Human-readable form: "2*q^(3/2) + q^2 - q^(5/2)"; "0" for the zero series.
inline std::string series_str(const Series& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : s.terms()) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (e == 0) {
            os << rat_str(a);
            continue;
        }
        if (a != 1) os << rat_str(a) << "*";
        if (is_integer(e))
            os << "q^" << rat_str(e);
        else
            os << "q^(" << rat_str(e) << ")";
    }
    return os.str();
}

}  // namespace assoc
