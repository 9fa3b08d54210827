#pragma once

#include <memory>
#include <string>
#include <variant>

namespace selfadjoint {

class Expression;

// Jets u_{(i,j)} of total order dt+dx above this limit are rejected rather
// than silently truncated.
constexpr int kOrderCap = 8;

// A jet coordinate: the formal symbol for d^{dt+dx} w / dt^dt dx^dx, treated
// as an independent variable of the differential polynomial ring.
struct JetCoordinate {
    std::string dep; // "u" (physical) or "v" (adjoint)
    int dt = 0;
    int dx = 0;

    int total_order() const { return dt + dx; }
    bool is_base() const { return dt == 0 && dx == 0; }

    friend bool operator==(const JetCoordinate&, const JetCoordinate&) = default;
};

// Canonical order: (dep, total order, x-order).
int compare(const JetCoordinate& a, const JetCoordinate& b);

// An opaque coefficient function such as f(t,u), c1(t) or a constant a.
// dt/du count formal partial derivatives in the declared arguments; they are
// canonical because mixed partials commute. `link` optionally points at the
// expression this atom's first derivative rewrites to (see DerivativeLink in
// the grammar); it is attached at declaration time and is not part of the
// atom's identity.
struct FunctionAtom {
    std::string name;
    bool arg_t = false;
    bool arg_u = false;
    int dt = 0;
    int du = 0;
    std::shared_ptr<const Expression> link;

    bool is_constant() const { return !arg_t && !arg_u; }

    friend bool operator==(const FunctionAtom& a, const FunctionAtom& b) {
        return a.name == b.name && a.arg_t == b.arg_t && a.arg_u == b.arg_u && a.dt == b.dt &&
               a.du == b.du;
    }
};

// Canonical order: (name, dt, du), with argument lists as a final tie break.
int compare(const FunctionAtom& a, const FunctionAtom& b);

using Factor = std::variant<JetCoordinate, FunctionAtom>;

// Total order on factors. Function atoms sort below jet coordinates, so the
// jet content of a monomial dominates term ordering.
int compare_factor(const Factor& a, const Factor& b);

bool is_jet(const Factor& f);
bool is_atom(const Factor& f);

// "u", "u_xx", "v_t", "u_{t x^2}"
std::string jet_str(const JetCoordinate& j);
// "f(t,u)", "f_tu(t,u)", "c1(t)", "a"
std::string atom_str(const FunctionAtom& a);
std::string factor_str(const Factor& f);

} // namespace selfadjoint
