#include "selfadjoint/symbols.hpp"

namespace selfadjoint {

namespace {

int cmp_int(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

int cmp_str(const std::string& a, const std::string& b) {
    int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

} // namespace

int compare(const JetCoordinate& a, const JetCoordinate& b) {
    if (int c = cmp_str(a.dep, b.dep))
        return c;
    if (int c = cmp_int(a.total_order(), b.total_order()))
        return c;
    return cmp_int(a.dx, b.dx);
}

int compare(const FunctionAtom& a, const FunctionAtom& b) {
    if (int c = cmp_str(a.name, b.name))
        return c;
    if (int c = cmp_int(a.dt, b.dt))
        return c;
    if (int c = cmp_int(a.du, b.du))
        return c;
    if (int c = cmp_int(a.arg_t ? 1 : 0, b.arg_t ? 1 : 0))
        return c;
    return cmp_int(a.arg_u ? 1 : 0, b.arg_u ? 1 : 0);
}

bool is_jet(const Factor& f) { return std::holds_alternative<JetCoordinate>(f); }
bool is_atom(const Factor& f) { return std::holds_alternative<FunctionAtom>(f); }

int compare_factor(const Factor& a, const Factor& b) {
    if (is_jet(a) != is_jet(b))
        return is_jet(a) ? 1 : -1;
    if (is_jet(a))
        return compare(std::get<JetCoordinate>(a), std::get<JetCoordinate>(b));
    return compare(std::get<FunctionAtom>(a), std::get<FunctionAtom>(b));
}

std::string jet_str(const JetCoordinate& j) {
    if (j.is_base())
        return j.dep;
    // Pure derivatives up to order four use letter runs; anything mixed or
    // higher uses the braced spelling.
    if (j.dx == 0 && j.dt <= 4)
        return j.dep + "_" + std::string(static_cast<size_t>(j.dt), 't');
    if (j.dt == 0 && j.dx <= 4)
        return j.dep + "_" + std::string(static_cast<size_t>(j.dx), 'x');
    std::string s = j.dep + "_{";
    if (j.dt > 0) {
        s += "t";
        if (j.dt > 1)
            s += "^" + std::to_string(j.dt);
    }
    if (j.dt > 0 && j.dx > 0)
        s += " ";
    if (j.dx > 0) {
        s += "x";
        if (j.dx > 1)
            s += "^" + std::to_string(j.dx);
    }
    return s + "}";
}

std::string atom_str(const FunctionAtom& a) {
    std::string s = a.name;
    if (a.dt > 0 || a.du > 0) {
        s += "_";
        s += std::string(static_cast<size_t>(a.dt), 't');
        s += std::string(static_cast<size_t>(a.du), 'u');
    }
    if (a.arg_t || a.arg_u) {
        s += "(";
        if (a.arg_t)
            s += "t";
        if (a.arg_t && a.arg_u)
            s += ",";
        if (a.arg_u)
            s += "u";
        s += ")";
    }
    return s;
}

std::string factor_str(const Factor& f) {
    return is_jet(f) ? jet_str(std::get<JetCoordinate>(f)) : atom_str(std::get<FunctionAtom>(f));
}

} // namespace selfadjoint
