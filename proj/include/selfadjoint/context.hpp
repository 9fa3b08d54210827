#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selfadjoint/expression.hpp"

namespace selfadjoint {

// Symbol declarations for one problem: the physical dependent variable, the
// opaque coefficient functions with their argument lists, symbolic constants,
// and derivative links. The adjoint variable v is always implicitly declared.
class Context {
  public:
    enum class Kind { depvar, func, constant };

    struct Declaration {
        Kind kind = Kind::func;
        bool arg_t = false;
        bool arg_u = false;
        std::shared_ptr<const Expression> link; // derivative of the atom in its single argument
    };

    Context();

    void declare_depvar(const std::string& name);
    void declare_func(const std::string& name, bool arg_t, bool arg_u);
    void declare_const(const std::string& name);
    // Attach "name' = value". The source must be a declared single-argument
    // function that is not itself referenced by value through a link cycle.
    void declare_link(const std::string& name, const Expression& value);

    bool is_declared(const std::string& name) const { return decls_.count(name) > 0; }
    const Declaration* find(const std::string& name) const;

    bool is_depvar(const std::string& name) const;

    // Expression for the atom `name` with formal derivative counts, applying
    // the derivative link when one is declared. Throws InputError for
    // derivatives in non-arguments.
    Expression atom(const std::string& name, int dt = 0, int du = 0) const;

    std::vector<std::string> declared_names() const;

  private:
    std::map<std::string, Declaration> decls_;

    // True when the name is new; false when an identical declaration exists.
    bool check_new(const std::string& name, const Declaration& d) const;
};

} // namespace selfadjoint
