#pragma once

#include <ostream>
#include <stdexcept>

#include "m24/rational.hpp"

namespace m24 {

// Element of Q(i): re + im*i with exact rational parts.
struct QI {
    Rat re{0}, im{0};

    QI() = default;
    QI(long v) : re(v, 1) {}
    QI(const Rat& r) : re(r) {}
    QI(const Rat& r, const Rat& i) : re(r), im(i) {}

    static QI i_unit() { return QI(Rat(0), Rat(1)); }
    // i^k, exact
    static QI i_pow(long long k) {
        k %= 4; if (k < 0) k += 4;
        switch (k) {
            case 0: return QI(1);
            case 1: return QI(Rat(0), Rat(1));
            case 2: return QI(Rat(-1), Rat(0));
            default: return QI(Rat(0), Rat(-1));
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_rational() const { return im == 0; }

    QI& operator+=(const QI& o) { re += o.re; im += o.im; return *this; }
    QI& operator-=(const QI& o) { re -= o.re; im -= o.im; return *this; }
    QI operator-() const { return QI(-re, -im); }

    friend QI operator+(QI a, const QI& b) { a += b; return a; }
    friend QI operator-(QI a, const QI& b) { a -= b; return a; }
    friend QI operator*(const QI& a, const QI& b) {
        return QI(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const QI& a, const QI& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QI& a, const QI& b) { return !(a == b); }

    QI inverse() const {
        Rat n = re * re + im * im;
        if (n == 0) throw std::domain_error("QI: inverse of zero");
        return QI(re / n, -im / n);
    }

    friend std::ostream& operator<<(std::ostream& os, const QI& v) {
        os << v.re.get_str();
        if (v.im != 0) os << (v.im > 0 ? "+" : "") << v.im.get_str() << "i";
        return os;
    }
};

inline QI operator*(const Rat& a, const QI& b) { return QI(a * b.re, a * b.im); }

} // namespace m24
