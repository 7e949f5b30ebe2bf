#include "vortexsym/workspace.hpp"

#include <algorithm>

namespace vortexsym {

Var Workspace::declare_var(const std::string& name, VarKind kind) {
    if (has_var(name)) throw Error("variable already declared: " + name);
    auto data = std::make_shared<VarData>();
    data->name = name;
    data->kind = kind;
    data->ordinal = static_cast<int>(vars_.size());
    vars_.emplace_back(Var(std::move(data)));
    return vars_.back();
}

void Workspace::declare_function(const std::string& name, int arity) {
    if (arity <= 0) throw Error("function arity must be positive: " + name);
    if (has_function(name, arity))
        throw Error("function already declared: " + name + "/" + std::to_string(arity));
    functions_.push_back(FunctionDecl{name, arity});
}

bool Workspace::has_var(const std::string& name) const {
    return std::any_of(vars_.begin(), vars_.end(),
                       [&](const Var& v) { return v.name() == name; });
}

Var Workspace::var(const std::string& name) const {
    for (const Var& v : vars_)
        if (v.name() == name) return v;
    throw Error("undeclared variable: " + name);
}

bool Workspace::has_function(const std::string& name, int arity) const {
    return std::any_of(functions_.begin(), functions_.end(), [&](const FunctionDecl& f) {
        return f.name == name && f.arity == arity;
    });
}

bool Workspace::has_function_name(const std::string& name) const {
    return std::any_of(functions_.begin(), functions_.end(),
                       [&](const FunctionDecl& f) { return f.name == name; });
}

}  // namespace vortexsym
