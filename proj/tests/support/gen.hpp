#pragma once

// Seed-pinned random differential polynomials for the property suites.

#include <random>
#include <vector>

#include "selfadjoint/expression.hpp"

namespace testgen {

using namespace selfadjoint;

class Gen {
  public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::mt19937& rng() { return rng_; }

    Rational coeff() {
        int num = range(-3, 3);
        if (num == 0)
            num = 1;
        return Rational(num, range(1, 3));
    }

    // A jet of total order <= max_order with dt <= max_dt.
    JetCoordinate random_jet(bool allow_v, int max_order, int max_dt) {
        JetCoordinate j;
        j.dep = allow_v && range(0, 2) == 0 ? "v" : "u";
        j.dt = range(0, max_dt);
        j.dx = range(0, max_order - j.dt);
        return j;
    }

    FunctionAtom random_atom() {
        switch (range(0, 2)) {
        case 0: return FunctionAtom{"f", true, true, 0, range(0, 1), nullptr};
        case 1: return FunctionAtom{"g", true, false, range(0, 1), 0, nullptr};
        default: return FunctionAtom{"c", false, false, 0, 0, nullptr};
        }
    }

    Monomial monomial(bool allow_v, int max_order, int max_dt, int max_factors) {
        Monomial m;
        m.coeff = coeff();
        int nf = range(0, max_factors);
        for (int i = 0; i < nf; ++i) {
            if (range(0, 3) == 0) {
                m.factors.push_back({Factor(random_atom()), range(1, 2)});
            } else {
                JetCoordinate j = random_jet(allow_v, max_order, max_dt);
                int exp = range(1, 2);
                if (j.is_base() && range(0, 4) == 0)
                    exp = -1; // Laurent power on a base coordinate
                m.factors.push_back({Factor(j), exp});
            }
        }
        return m;
    }

    Expression expression(int max_terms, bool allow_v = true, int max_order = 3, int max_dt = 1,
                          int max_factors = 3) {
        std::vector<Monomial> ms;
        int n = range(1, max_terms);
        for (int i = 0; i < n; ++i)
            ms.push_back(monomial(allow_v, max_order, max_dt, max_factors));
        return Expression::from_monomials(std::move(ms));
    }

  private:
    std::mt19937 rng_;
};

} // namespace testgen
