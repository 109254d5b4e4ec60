#pragma once

#include "assoc/rational.hpp"

namespace assoc {

// First-order dual scalar a + b*eps with eps^2 = 0, over exact rationals.
// Used to verify wall-crossing identities to first order in a pairing vector.
struct DualRat {
    Rat re;
    Rat eps;

    DualRat() : re(0), eps(0) {}
    DualRat(const Rat& r) : re(r), eps(0) {}          // NOLINT(google-explicit-constructor)
    DualRat(Rat r, Rat e) : re(std::move(r)), eps(std::move(e)) {}
    DualRat(int r) : re(r), eps(0) {}                 // NOLINT(google-explicit-constructor)

    static DualRat infinitesimal(const Rat& e) { return DualRat(Rat(0), e); }

    bool is_zero() const { return re == 0 && eps == 0; }

    DualRat operator-() const { return DualRat(-re, -eps); }
    DualRat& operator+=(const DualRat& o) { re += o.re; eps += o.eps; return *this; }
    DualRat& operator-=(const DualRat& o) { re -= o.re; eps -= o.eps; return *this; }
    DualRat& operator*=(const DualRat& o) {
        eps = re * o.eps + eps * o.re;  // eps^2 truncated
        re = re * o.re;
        return *this;
    }

    friend DualRat operator+(DualRat a, const DualRat& b) { return a += b; }
    friend DualRat operator-(DualRat a, const DualRat& b) { return a -= b; }
    friend DualRat operator*(DualRat a, const DualRat& b) { return a *= b; }
    friend bool operator==(const DualRat& a, const DualRat& b) {
        return a.re == b.re && a.eps == b.eps;
    }
    friend bool operator!=(const DualRat& a, const DualRat& b) { return !(a == b); }

    // Inverse exists iff the real part is nonzero.
    DualRat inverse() const {
        if (re == 0) throw std::domain_error("DualRat: non-invertible (zero real part)");
        Rat i = 1 / re;
        return DualRat(i, -eps * i * i);
    }
};

inline DualRat operator*(const Rat& a, const DualRat& b) { return DualRat(a) * b; }

// Minimal coefficient-ring interface shared by Rat and DualRat.
template <class C>
struct coeff_ops;

template <>
struct coeff_ops<Rat> {
    static bool is_zero(const Rat& c) { return c == 0; }
    static Rat inverse(const Rat& c) {
        if (c == 0) throw std::domain_error("division by zero");
        return 1 / c;
    }
    static Rat div_int(const Rat& c, long k) { return c / Rat(k); }
    static void canonicalize(Rat& c) { c.canonicalize(); }
};

template <>
struct coeff_ops<DualRat> {
    static bool is_zero(const DualRat& c) { return c.is_zero(); }
    static DualRat inverse(const DualRat& c) { return c.inverse(); }
    static DualRat div_int(const DualRat& c, long k) {
        return DualRat(c.re / Rat(k), c.eps / Rat(k));
    }
    static void canonicalize(DualRat& c) {
        c.re.canonicalize();
        c.eps.canonicalize();
    }
};

}  // namespace assoc
