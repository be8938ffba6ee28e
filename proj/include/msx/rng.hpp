#pragma once

/// Deterministic 64-bit generator (splitmix64) so randomized verification
/// trials reproduce bit-for-bit across platforms and implementations.

#include <cstdint>
#include <string>
#include <vector>

#include "msx/scalar.hpp"

namespace msx {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Small rational with numerator in [-max, max] and denominator in [1, dmax].
    Rational rational(int max = 5, int dmax = 3) {
        return Rational(range(-max, max), range(1, dmax));
    }

    Rational nonzero_rational(int max = 5, int dmax = 3) {
        Rational r;
        do {
            r = rational(max, dmax);
        } while (r == 0);
        return r;
    }

    /// Random polynomial over `vars` with total degree <= deg; every
    /// coefficient drawn small, a fixed fraction of monomials kept.
    Polynomial polynomial(const std::vector<std::string>& vars, int deg) {
        Polynomial p;
        int nterms = range(1, 3);
        for (int t = 0; t < nterms; ++t) {
            Polynomial mono(rational());
            int d = range(0, deg);
            for (int i = 0; i < d; ++i) {
                if (vars.empty()) break;
                mono = mono * Polynomial::variable(vars[below(vars.size())]);
            }
            p = p + mono;
        }
        return p;
    }

private:
    std::uint64_t state_;
};

}  // namespace msx
