#pragma once

// Deliberately naive curve arithmetic used only to cross-check the real
// implementation: O(p) inverse by scanning, scalar multiples by repeated
// addition, group enumeration by trying every (x, y).  Keep p tiny.

#include <cstdint>
#include <vector>

namespace oracle {

struct Pt {
    bool inf = true;
    long long x = 0, y = 0;
    bool operator==(const Pt&) const = default;
};

inline long long md(long long v, long long p) {
    v %= p;
    return v < 0 ? v + p : v;
}

inline long long inv_scan(long long a, long long p) {
    a = md(a, p);
    for (long long t = 1; t < p; ++t)
        if (md(a * t, p) == 1) return t;
    return -1;  // not invertible
}

inline Pt add(const Pt& P, const Pt& Q, long long a, long long p) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x && md(P.y + Q.y, p) == 0) return Pt{};
    long long lam;
    if (P.x == Q.x && P.y == Q.y)
        lam = md(md(3 * P.x % p * P.x + a, p) * inv_scan(2 * P.y, p), p);
    else
        lam = md(md(Q.y - P.y, p) * inv_scan(Q.x - P.x, p), p);
    const long long x3 = md(lam * lam - P.x - Q.x, p);
    const long long y3 = md(lam * (P.x - x3) - P.y, p);
    return Pt{false, x3, y3};
}

inline Pt mul(long long n, const Pt& P, long long a, long long p) {
    Pt r{};
    for (long long i = 0; i < n; ++i) r = add(r, P, a, p);
    return r;
}

// Every group element including the identity.
inline std::vector<Pt> enumerate(long long a, long long b, long long p) {
    std::vector<Pt> pts{Pt{}};
    for (long long x = 0; x < p; ++x) {
        const long long rhs = md(x * x % p * x + a * x + b, p);
        for (long long y = 0; y < p; ++y)
            if (md(y * y, p) == rhs) pts.push_back(Pt{false, x, y});
    }
    return pts;
}

inline long long order_of(const Pt& P, long long a, long long p) {
    Pt r = P;
    long long n = 1;
    while (!r.inf) {
        r = add(r, P, a, p);
        ++n;
    }
    return n;
}

}  // namespace oracle
