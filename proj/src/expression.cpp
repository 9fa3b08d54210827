#include "selfadjoint/expression.hpp"

#include <algorithm>

#include "selfadjoint/errors.hpp"

namespace selfadjoint {

namespace {

bool factor_power_desc(const FactorPower& a, const FactorPower& b) {
    return compare_factor(a.factor, b.factor) > 0;
}

// Sort descending, merge equal factors, drop zero exponents, enforce the
// exponent and order-cap invariants.
void normalize_factors(std::vector<FactorPower>& fs) {
    std::sort(fs.begin(), fs.end(), factor_power_desc);
    std::vector<FactorPower> out;
    out.reserve(fs.size());
    for (auto& fp : fs) {
        if (!out.empty() && compare_factor(out.back().factor, fp.factor) == 0)
            out.back().exp += fp.exp;
        else
            out.push_back(fp);
    }
    std::erase_if(out, [](const FactorPower& fp) { return fp.exp == 0; });
    for (const auto& fp : out) {
        if (const auto* j = std::get_if<JetCoordinate>(&fp.factor)) {
            if (j->total_order() > kOrderCap)
                throw EngineError("jet order " + std::to_string(j->total_order()) +
                                  " exceeds order cap " + std::to_string(kOrderCap));
            if (!j->is_base() && fp.exp < 0)
                throw EngineError("negative power of derivative coordinate " + jet_str(*j));
        } else if (fp.exp < 0) {
            throw EngineError("negative power of function atom " +
                              std::get<FunctionAtom>(fp.factor).name);
        }
    }
    fs = std::move(out);
}

bool monomial_less(const Monomial& a, const Monomial& b) {
    return compare_factors(a.factors, b.factors) < 0;
}

} // namespace

int compare_factors(const std::vector<FactorPower>& a, const std::vector<FactorPower>& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = compare_factor(a[i].factor, b[i].factor))
            return c;
        if (a[i].exp != b[i].exp)
            return a[i].exp < b[i].exp ? -1 : 1;
    }
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    return 0;
}

Expression Expression::constant(const Rational& c) {
    Expression e;
    if (!c.is_zero())
        e.terms_.push_back(Monomial{c, {}});
    return e;
}

Expression Expression::from_factor(Factor f, int exp) {
    return from_monomials({Monomial{Rational(1), {FactorPower{std::move(f), exp}}}});
}

Expression Expression::from_monomials(std::vector<Monomial> monomials) {
    for (auto& m : monomials)
        normalize_factors(m.factors);
    std::sort(monomials.begin(), monomials.end(), monomial_less);
    Expression e;
    for (auto& m : monomials) {
        if (m.coeff.is_zero())
            continue;
        if (!e.terms_.empty() && compare_factors(e.terms_.back().factors, m.factors) == 0) {
            e.terms_.back().coeff += m.coeff;
            if (e.terms_.back().coeff.is_zero())
                e.terms_.pop_back();
        } else {
            e.terms_.push_back(std::move(m));
        }
    }
    return e;
}

Rational Expression::coefficient_of(const std::vector<FactorPower>& factors) const {
    for (const auto& t : terms_)
        if (compare_factors(t.factors, factors) == 0)
            return t.coeff;
    return Rational(0);
}

Rational Expression::coefficient_of(const Factor& single) const {
    return coefficient_of(std::vector<FactorPower>{FactorPower{single, 1}});
}

Expression Expression::operator-() const { return scaled(Rational(-1)); }

Expression Expression::scaled(const Rational& c) const {
    Expression e;
    if (c.is_zero())
        return e;
    e.terms_ = terms_;
    for (auto& t : e.terms_)
        t.coeff *= c;
    return e;
}

Expression operator+(const Expression& a, const Expression& b) {
    // Both inputs are normal forms; a single sorted merge keeps the result normal.
    Expression e;
    e.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = compare_factors(a.terms_[i].factors, b.terms_[j].factors);
        if (c < 0) {
            e.terms_.push_back(a.terms_[i++]);
        } else if (c > 0) {
            e.terms_.push_back(b.terms_[j++]);
        } else {
            Monomial m = a.terms_[i++];
            m.coeff += b.terms_[j++].coeff;
            if (!m.coeff.is_zero())
                e.terms_.push_back(std::move(m));
        }
    }
    for (; i < a.terms_.size(); ++i)
        e.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j)
        e.terms_.push_back(b.terms_[j]);
    return e;
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
    std::vector<Monomial> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ma : a.terms_) {
        for (const auto& mb : b.terms_) {
            Monomial m;
            m.coeff = ma.coeff * mb.coeff;
            m.factors = ma.factors;
            m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
            out.push_back(std::move(m));
        }
    }
    return Expression::from_monomials(std::move(out));
}

Expression Expression::pow(int exponent) const {
    if (exponent < 0) {
        return Expression::constant(Rational(1)).divided_by(*this).pow(-exponent);
    }
    Expression r = Expression::constant(Rational(1));
    for (int i = 0; i < exponent; ++i)
        r = r * *this;
    return r;
}

Expression Expression::divided_by(const Expression& divisor) const {
    if (divisor.terms_.size() != 1)
        throw EngineError("division is only defined by a single monomial");
    const Monomial& d = divisor.terms_.front();
    Monomial inverse;
    inverse.coeff = d.coeff.inverse();
    for (const auto& fp : d.factors) {
        const auto* j = std::get_if<JetCoordinate>(&fp.factor);
        if (!j || !j->is_base())
            throw EngineError("cannot divide by " + factor_str(fp.factor) +
                              "; only rational constants and base dependent variables are invertible");
        inverse.factors.push_back(FactorPower{fp.factor, -fp.exp});
    }
    Expression inv;
    inv.terms_.push_back(std::move(inverse));
    return *this * inv;
}

int Expression::compare(const Expression& o) const {
    size_t n = std::min(terms_.size(), o.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = compare_factors(terms_[i].factors, o.terms_[i].factors))
            return c;
        auto c = terms_[i].coeff <=> o.terms_[i].coeff;
        if (c != std::strong_ordering::equal)
            return c == std::strong_ordering::less ? -1 : 1;
    }
    if (terms_.size() != o.terms_.size())
        return terms_.size() < o.terms_.size() ? -1 : 1;
    return 0;
}

bool Expression::contains_dep(const std::string& dep) const {
    for (const auto& t : terms_)
        for (const auto& fp : t.factors)
            if (const auto* j = std::get_if<JetCoordinate>(&fp.factor); j && j->dep == dep)
                return true;
    return false;
}

bool Expression::contains_t_jet(const std::string& dep) const {
    for (const auto& t : terms_)
        for (const auto& fp : t.factors)
            if (const auto* j = std::get_if<JetCoordinate>(&fp.factor))
                if (j->dt > 0 && (dep.empty() || j->dep == dep))
                    return true;
    return false;
}

std::set<std::pair<int, int>> Expression::jets_of(const std::string& dep) const {
    std::set<std::pair<int, int>> out;
    for (const auto& t : terms_)
        for (const auto& fp : t.factors)
            if (const auto* j = std::get_if<JetCoordinate>(&fp.factor); j && j->dep == dep)
                out.insert({j->dt, j->dx});
    return out;
}

int Expression::max_x_order(const std::string& dep) const {
    int n = 0;
    for (const auto& [dt, dx] : jets_of(dep))
        if (dt == 0)
            n = std::max(n, dx);
    return n;
}

bool Expression::references_atom(const std::string& name) const {
    for (const auto& t : terms_)
        for (const auto& fp : t.factors)
            if (const auto* a = std::get_if<FunctionAtom>(&fp.factor); a && a->name == name)
                return true;
    return false;
}

namespace {

// Shared engine for factor substitution: every factor selected by `match` is
// replaced by value(factor)^exp, the rest of the monomial is kept.
template <typename MatchFn, typename ValueFn>
Expression substitute_factors(const Expression& e, MatchFn match, ValueFn value) {
    Expression result;
    for (const auto& t : e.terms()) {
        Expression term = Expression::constant(t.coeff);
        for (const auto& fp : t.factors) {
            if (match(fp.factor))
                term *= value(fp.factor).pow(fp.exp);
            else
                term *= Expression::from_factor(fp.factor, fp.exp);
        }
        result += term;
    }
    return result;
}

} // namespace

Expression Expression::substitute_jet(const JetCoordinate& coord, const Expression& value) const {
    return substitute_factors(
        *this,
        [&](const Factor& f) {
            const auto* j = std::get_if<JetCoordinate>(&f);
            return j && *j == coord;
        },
        [&](const Factor&) { return value; });
}

Expression Expression::substitute_dependent(const std::string& from, const std::string& to) const {
    return substitute_factors(
        *this,
        [&](const Factor& f) {
            const auto* j = std::get_if<JetCoordinate>(&f);
            return j && j->dep == from;
        },
        [&](const Factor& f) {
            JetCoordinate j = std::get<JetCoordinate>(f);
            j.dep = to;
            return Expression::from_factor(j);
        });
}

Expression Expression::substitute_atoms(const std::map<std::string, Expression>& values) const {
    return substitute_factors(
        *this,
        [&](const Factor& f) {
            const auto* a = std::get_if<FunctionAtom>(&f);
            return a && values.count(a->name) > 0;
        },
        [&](const Factor& f) {
            const auto& a = std::get<FunctionAtom>(f);
            Expression value = values.at(a.name);
            for (int i = 0; i < a.dt; ++i)
                value = partial_derivative(value, Indep::t);
            for (int i = 0; i < a.du; ++i)
                value = partial_derivative(value, JetCoordinate{"u", 0, 0});
            return value;
        });
}

// --- derivatives -------------------------------------------------------------

Expression atom_derivative(const FunctionAtom& a, char arg) {
    if (arg == 't' && !a.arg_t)
        return {};
    if (arg == 'u' && !a.arg_u)
        return {};
    if (a.link) {
        // Linked atoms are single-argument and always occur underived, so the
        // derivative in their argument is exactly the linked expression.
        return *a.link;
    }
    FunctionAtom d = a;
    if (arg == 't')
        ++d.dt;
    else
        ++d.du;
    return Expression::from_factor(std::move(d));
}

namespace {

// Product-rule walk shared by the jet and independent-variable partials.
// `factor_partial` maps one factor to its derivative expression.
template <typename Fn>
Expression product_rule(const Expression& e, Fn factor_partial) {
    Expression result;
    for (const auto& t : e.terms()) {
        for (size_t k = 0; k < t.factors.size(); ++k) {
            Expression d = factor_partial(t.factors[k].factor);
            if (d.is_zero())
                continue;
            Monomial rest;
            rest.coeff = t.coeff * Rational(t.factors[k].exp);
            for (size_t i = 0; i < t.factors.size(); ++i) {
                FactorPower fp = t.factors[i];
                if (i == k && --fp.exp == 0)
                    continue;
                rest.factors.push_back(std::move(fp));
            }
            result += Expression::from_monomials({std::move(rest)}) * d;
        }
    }
    return result;
}

} // namespace

Expression partial_derivative(const Expression& e, const JetCoordinate& w) {
    const bool chain_atoms = w == JetCoordinate{"u", 0, 0};
    return product_rule(e, [&](const Factor& f) -> Expression {
        if (const auto* j = std::get_if<JetCoordinate>(&f))
            return *j == w ? Expression::constant(Rational(1)) : Expression();
        if (chain_atoms)
            return atom_derivative(std::get<FunctionAtom>(f), 'u');
        return {};
    });
}

Expression partial_derivative(const Expression& e, Indep v) {
    if (v == Indep::x)
        return {};
    return product_rule(e, [&](const Factor& f) -> Expression {
        if (const auto* a = std::get_if<FunctionAtom>(&f))
            return atom_derivative(*a, 't');
        return {};
    });
}

Expression jet(const std::string& dep, int dt, int dx) {
    return Expression::from_factor(JetCoordinate{dep, dt, dx});
}

// --- rendering ---------------------------------------------------------------

namespace {

// Display order inside a monomial: atoms first, then jets, each ascending.
bool display_less(const FactorPower& a, const FactorPower& b) {
    if (is_atom(a.factor) != is_atom(b.factor))
        return is_atom(a.factor);
    return compare_factor(a.factor, b.factor) < 0;
}

std::string monomial_str(const Monomial& m) {
    Rational c = m.coeff.is_negative() ? -m.coeff : m.coeff;
    std::vector<FactorPower> fs = m.factors;
    std::sort(fs.begin(), fs.end(), display_less);

    std::vector<std::string> num, den;
    if (c.num() != 1)
        num.push_back(std::to_string(c.num()));
    if (c.den() != 1)
        den.push_back(std::to_string(c.den()));
    for (const auto& fp : fs) {
        std::string s = factor_str(fp.factor);
        int e = fp.exp < 0 ? -fp.exp : fp.exp;
        if (e != 1)
            s += "^" + std::to_string(e);
        (fp.exp < 0 ? den : num).push_back(std::move(s));
    }
    std::string out;
    if (num.empty()) {
        out = "1";
    } else {
        for (size_t i = 0; i < num.size(); ++i)
            out += (i ? "*" : "") + num[i];
    }
    if (!den.empty()) {
        out += "/";
        if (den.size() == 1) {
            out += den[0];
        } else {
            out += "(";
            for (size_t i = 0; i < den.size(); ++i)
                out += (i ? "*" : "") + den[i];
            out += ")";
        }
    }
    return out;
}

} // namespace

std::string Expression::str() const {
    if (terms_.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < terms_.size(); ++i) {
        const Monomial& m = terms_[i];
        if (i == 0)
            out += m.coeff.is_negative() ? "-" : "";
        else
            out += m.coeff.is_negative() ? " - " : " + ";
        out += monomial_str(m);
    }
    return out;
}

} // namespace selfadjoint
