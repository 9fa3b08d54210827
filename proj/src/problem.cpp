#include "selfadjoint/problem.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "selfadjoint/errors.hpp"
#include "selfadjoint/parser.hpp"

namespace selfadjoint {

const EvolutionEquation& ProblemFile::require_equation() const {
    if (!equation)
        throw InputError("problem file has no [equation] section");
    return *equation;
}

const PointSymmetry& ProblemFile::require_symmetry() const {
    if (!symmetry)
        throw InputError("no [symmetry] section; provide one or pass --symmetry");
    return *symmetry;
}

const ConservedVector& ProblemFile::require_vector() const {
    if (!vector)
        throw InputError("no [vector] section; provide one or pass --vector");
    return *vector;
}

namespace {

struct Line {
    std::string text;
    int number;
};

struct RawSection {
    std::string name; // "" for the declarations block
    std::vector<Line> lines;
    std::string file;
};

struct RawFile {
    std::string name;
    std::vector<RawSection> sections; // first entry is the declarations block
};

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

RawFile split_sections(const std::string& name, const std::string& text) {
    RawFile rf;
    rf.name = name;
    rf.sections.push_back(RawSection{"", {}, name});
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string t = strip(line);
        if (size_t h = t.find('#'); h != std::string::npos)
            t = strip(t.substr(0, h));
        if (t.empty())
            continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ParseError(number, 1, "malformed section header in " + name);
            std::string sec = t.substr(1, t.size() - 2);
            if (sec != "equation" && sec != "symmetry" && sec != "vector" && sec != "bindings")
                throw ParseError(number, 1, "unknown section [" + sec + "] in " + name);
            rf.sections.push_back(RawSection{sec, {}, name});
            continue;
        }
        rf.sections.back().lines.push_back(Line{line, number});
    }
    return rf;
}

// "key = expression" -> (key, expression text, line)
std::tuple<std::string, std::string, int> key_value(const Line& l, const std::string& file) {
    size_t eq = l.text.find('=');
    if (eq == std::string::npos)
        throw ParseError(l.number, 1, "expected 'name = expression' in " + file);
    std::string key = strip(l.text.substr(0, eq));
    if (key.empty())
        throw ParseError(l.number, 1, "missing name before '=' in " + file);
    return {key, l.text.substr(eq + 1), l.number};
}

} // namespace

ProblemFile parse_problem(const std::vector<std::pair<std::string, std::string>>& sources) {
    std::vector<RawFile> files;
    for (const auto& [name, text] : sources)
        files.push_back(split_sections(name, text));

    // Declarations from every file first, in order, into one shared context,
    // so auxiliary sections may use the main file's symbols and vice versa.
    ProblemFile pf;
    pf.ctx.declare_depvar("u"); // every problem works over u
    for (const auto& rf : files) {
        const RawSection& decls = rf.sections.front();
        std::string block;
        int first_line = decls.lines.empty() ? 1 : decls.lines.front().number;
        int prev = first_line;
        for (const auto& l : decls.lines) {
            block.append(static_cast<size_t>(l.number - prev), '\n');
            block += l.text;
            prev = l.number;
        }
        parse_declarations(block, pf.ctx, first_line);
    }

    // Later files override earlier ones section-wise.
    std::map<std::string, const RawSection*> chosen;
    for (const auto& rf : files)
        for (const auto& sec : rf.sections)
            if (!sec.name.empty())
                chosen[sec.name] = &sec;

    if (auto it = chosen.find("equation"); it != chosen.end()) {
        const RawSection& sec = *it->second;
        if (sec.lines.empty())
            throw InputError("[equation] section in " + sec.file + " is empty");
        std::string text;
        for (const auto& l : sec.lines)
            text += l.text + " ";
        Expression f = parse_expression(text, pf.ctx, sec.lines.front().number);
        pf.equation = EvolutionEquation::make("u", f);
    }

    if (auto it = chosen.find("symmetry"); it != chosen.end()) {
        const RawSection& sec = *it->second;
        Expression xi, tau, eta;
        bool any = false;
        for (const auto& l : sec.lines) {
            auto [key, value, line] = key_value(l, sec.file);
            Expression e = parse_expression(value, pf.ctx, line);
            if (key == "xi")
                xi = e;
            else if (key == "tau")
                tau = e;
            else if (key == "eta")
                eta = e;
            else
                throw ParseError(line, 1, "unknown symmetry component '" + key + "'");
            any = true;
        }
        if (!any)
            throw InputError("[symmetry] section in " + sec.file + " is empty");
        pf.symmetry = PointSymmetry::make(xi, tau, eta);
    }

    if (auto it = chosen.find("vector"); it != chosen.end()) {
        const RawSection& sec = *it->second;
        std::optional<Expression> c0, c1;
        for (const auto& l : sec.lines) {
            auto [key, value, line] = key_value(l, sec.file);
            Expression e = parse_expression(value, pf.ctx, line);
            if (key == "C0")
                c0 = e;
            else if (key == "C1")
                c1 = e;
            else
                throw ParseError(line, 1, "unknown vector component '" + key + "'");
        }
        if (!c0 || !c1)
            throw InputError("[vector] section in " + sec.file + " needs both C0 and C1");
        pf.vector = make_conserved_vector(*c0, *c1);
    }

    if (auto it = chosen.find("bindings"); it != chosen.end()) {
        const RawSection& sec = *it->second;
        for (const auto& l : sec.lines) {
            auto [key, value, line] = key_value(l, sec.file);
            const Context::Declaration* d = pf.ctx.find(key);
            if (!d)
                throw ParseError(line, 1, "unknown symbol '" + key + "' in bindings");
            if (d->kind != Context::Kind::func)
                throw ParseError(line, 1, "only declared functions can be bound");
            for (const auto& [k, v] : pf.bindings)
                if (k == key)
                    throw ParseError(line, 1, "'" + key + "' is bound twice");
            pf.bindings.emplace_back(key, parse_expression(value, pf.ctx, line));
        }
    }

    return pf;
}

ProblemFile load_problem(const std::string& path, const std::vector<std::string>& aux_paths) {
    std::vector<std::pair<std::string, std::string>> sources;
    auto read = [](const std::string& p) {
        std::ifstream in(p);
        if (!in)
            throw InputError("cannot open '" + p + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    sources.emplace_back(path, read(path));
    for (const auto& p : aux_paths)
        sources.emplace_back(p, read(p));
    return parse_problem(sources);
}

} // namespace selfadjoint
