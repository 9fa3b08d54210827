#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "selfadjoint/rational.hpp"
#include "selfadjoint/symbols.hpp"

namespace selfadjoint {

struct FactorPower {
    Factor factor;
    int exp = 1;

    friend bool operator==(const FactorPower& a, const FactorPower& b) {
        return a.exp == b.exp && a.factor == b.factor;
    }
};

// One term of a differential polynomial: an exact rational coefficient times
// a power product of jet coordinates and function atoms. Factors are kept
// sorted descending, so the leading jet content decides term order. Negative
// exponents are legal only on base jet coordinates (Laurent powers like 1/u).
struct Monomial {
    Rational coeff;
    std::vector<FactorPower> factors;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.coeff == b.coeff && a.factors == b.factors;
    }
};

// -1 / 0 / 1 comparison of factor power products (coefficients ignored).
int compare_factors(const std::vector<FactorPower>& a, const std::vector<FactorPower>& b);

// A differential polynomial in normal form: terms pairwise distinct in their
// factor products, sorted ascending, zero coefficients dropped. All engine
// operations preserve the normal form, so structural equality is semantic
// equality.
class Expression {
  public:
    Expression() = default; // zero

    static Expression constant(const Rational& c);
    static Expression from_factor(Factor f, int exp = 1);
    static Expression from_monomials(std::vector<Monomial> monomials);

    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Coefficient of the exact power product `factors` (0 when absent).
    Rational coefficient_of(const std::vector<FactorPower>& factors) const;
    Rational coefficient_of(const Factor& single) const;

    Expression operator-() const;
    Expression scaled(const Rational& c) const;
    Expression pow(int exponent) const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);

    Expression& operator+=(const Expression& o) { return *this = *this + o; }
    Expression& operator-=(const Expression& o) { return *this = *this - o; }
    Expression& operator*=(const Expression& o) { return *this = *this * o; }

    // Division by a single invertible monomial (rational times powers of base
    // jet coordinates). Anything else throws EngineError.
    Expression divided_by(const Expression& divisor) const;

    friend bool operator==(const Expression&, const Expression&) = default;
    // Deterministic total order (used to sort condition systems).
    int compare(const Expression& o) const;

    // --- queries -----------------------------------------------------------
    bool contains_dep(const std::string& dep) const;
    bool contains_t_jet(const std::string& dep = "") const;
    // All jets of `dep` occurring anywhere, as (dt, dx) pairs.
    std::set<std::pair<int, int>> jets_of(const std::string& dep) const;
    int max_x_order(const std::string& dep) const;
    bool references_atom(const std::string& name) const;

    // --- structural rewrites ------------------------------------------------
    Expression substitute_jet(const JetCoordinate& coord, const Expression& value) const;
    Expression substitute_dependent(const std::string& from, const std::string& to) const;
    // Replaces every atom whose name is a key by the formal (dt, du)
    // derivative of the mapped value; one round, no recursion.
    Expression substitute_atoms(const std::map<std::string, Expression>& values) const;

    // Canonical text form; parses back to the same value.
    std::string str() const;

  private:
    std::vector<Monomial> terms_;
};

inline Expression operator*(const Rational& c, const Expression& e) { return e.scaled(c); }

// Convenience builders used throughout the engine and the tests.
Expression jet(const std::string& dep, int dt, int dx);
inline Expression u0() { return jet("u", 0, 0); }

enum class Indep { t, x };

// Partial derivative with respect to a jet coordinate, treating distinct jet
// coordinates as independent symbols. Differentiating by the base coordinate
// u additionally chains through atoms declared with argument u.
Expression partial_derivative(const Expression& e, const JetCoordinate& w);

// Partial derivative with respect to an independent variable: captures only
// the explicit t-dependence of atoms (jets are constants here); x yields 0.
Expression partial_derivative(const Expression& e, Indep v);

// Formal derivative of one atom in argument 't' or 'u'. Returns 0 when the
// symbol is not a declared argument; honors derivative links.
Expression atom_derivative(const FunctionAtom& a, char arg);

} // namespace selfadjoint
