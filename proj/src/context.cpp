#include "selfadjoint/context.hpp"

#include "selfadjoint/errors.hpp"

namespace selfadjoint {

Context::Context() {
    // v is the reserved adjoint variable; every problem gets it for free.
    decls_["v"] = Declaration{Kind::depvar, false, false, nullptr};
}

// Re-declaring a name is allowed when the new declaration is identical, so
// auxiliary problem files can stay self-contained.
bool Context::check_new(const std::string& name, const Declaration& d) const {
    if (name == "t" || name == "x")
        throw InputError("'" + name + "' is a reserved independent variable");
    if (name.find('_') != std::string::npos)
        throw InputError("declared names must not contain '_' (reserved for derivative suffixes)");
    auto it = decls_.find(name);
    if (it == decls_.end())
        return true;
    const Declaration& mine = it->second;
    if (mine.kind == d.kind && mine.arg_t == d.arg_t && mine.arg_u == d.arg_u)
        return false;
    throw InputError("conflicting declarations for '" + name + "'");
}

void Context::declare_depvar(const std::string& name) {
    if (name == "v")
        return; // implicit, re-declaration is harmless
    if (name != "u")
        throw InputError("the physical dependent variable must be named 'u'");
    Declaration d{Kind::depvar, false, false, nullptr};
    if (check_new(name, d))
        decls_[name] = d;
}

void Context::declare_func(const std::string& name, bool arg_t, bool arg_u) {
    if (!arg_t && !arg_u)
        throw InputError("function '" + name + "' needs at least one argument; use 'const' otherwise");
    Declaration d{Kind::func, arg_t, arg_u, nullptr};
    if (check_new(name, d))
        decls_[name] = d;
}

void Context::declare_const(const std::string& name) {
    Declaration d{Kind::constant, false, false, nullptr};
    if (check_new(name, d))
        decls_[name] = d;
}

void Context::declare_link(const std::string& name, const Expression& value) {
    auto it = decls_.find(name);
    if (it == decls_.end())
        throw InputError("link source '" + name + "' is not declared");
    if (it->second.kind != Kind::func || (it->second.arg_t && it->second.arg_u))
        throw InputError("links require a single-argument function, got '" + name + "'");
    if (it->second.link) {
        if (*it->second.link == value)
            return;
        throw InputError("'" + name + "' already has a different link");
    }
    // Reject cycles: following links from the target must never reach `name`.
    std::vector<std::string> stack;
    for (const auto& t : value.terms())
        for (const auto& fp : t.factors)
            if (const auto* a = std::get_if<FunctionAtom>(&fp.factor))
                stack.push_back(a->name);
    std::map<std::string, bool> seen;
    while (!stack.empty()) {
        std::string cur = stack.back();
        stack.pop_back();
        if (seen[cur])
            continue;
        seen[cur] = true;
        if (cur == name)
            throw InputError("link for '" + name + "' would create a cycle");
        auto d = decls_.find(cur);
        if (d == decls_.end() || !d->second.link)
            continue;
        for (const auto& t : d->second.link->terms())
            for (const auto& fp : t.factors)
                if (const auto* a = std::get_if<FunctionAtom>(&fp.factor))
                    stack.push_back(a->name);
    }
    it->second.link = std::make_shared<const Expression>(value);
}

const Context::Declaration* Context::find(const std::string& name) const {
    auto it = decls_.find(name);
    return it == decls_.end() ? nullptr : &it->second;
}

bool Context::is_depvar(const std::string& name) const {
    const Declaration* d = find(name);
    return d && d->kind == Kind::depvar;
}

Expression Context::atom(const std::string& name, int dt, int du) const {
    const Declaration* d = find(name);
    if (!d)
        throw InputError("unknown symbol '" + name + "'");
    if (d->kind == Kind::depvar)
        throw InputError("'" + name + "' is a dependent variable, not a function");
    if (dt > 0 && !d->arg_t)
        throw InputError("'" + name + "' has no argument t");
    if (du > 0 && !d->arg_u)
        throw InputError("'" + name + "' has no argument u");
    FunctionAtom a{name, d->arg_t, d->arg_u, 0, 0, d->link};
    if (d->link && dt + du > 0) {
        // Linked atoms never appear derived: the first derivative is the
        // linked expression, further ones differentiate it.
        Expression e = *d->link;
        char arg = d->arg_t ? 't' : 'u';
        for (int i = 1; i < dt + du; ++i)
            e = arg == 't' ? partial_derivative(e, Indep::t)
                           : partial_derivative(e, JetCoordinate{"u", 0, 0});
        return e;
    }
    a.dt = dt;
    a.du = du;
    return Expression::from_factor(std::move(a));
}

std::vector<std::string> Context::declared_names() const {
    std::vector<std::string> out;
    for (const auto& [name, d] : decls_)
        out.push_back(name);
    return out;
}

} // namespace selfadjoint
