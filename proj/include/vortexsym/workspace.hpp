#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortexsym {

// Base error for everything the engine raises deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class VarKind {
    Independent,  // t, phi, flow parameters
    Dependent,    // k_i, n_j
    Jet,          // q_i = dk_i/dt, p_j = dn_j/dt
    SecondJet,    // q_{i,t}, p_{j,t}; transient, must cancel in prolongation
    Parameter,    // constants such as w, and function slot names
};

struct VarData {
    std::string name;
    VarKind kind;
    int ordinal;  // declaration index, fixes the canonical ordering
};

// Lightweight shared handle; identity is the underlying record.
class Var {
public:
    Var() = default;
    explicit Var(std::shared_ptr<const VarData> data) : data_(std::move(data)) {}

    bool valid() const { return static_cast<bool>(data_); }
    const std::string& name() const { return data_->name; }
    VarKind kind() const { return data_->kind; }
    int ordinal() const { return data_->ordinal; }

    bool operator==(const Var& o) const { return data_ == o.data_; }
    bool operator!=(const Var& o) const { return data_ != o.data_; }
    bool operator<(const Var& o) const {
        if (data_ == o.data_) return false;
        if (data_->ordinal != o.data_->ordinal) return data_->ordinal < o.data_->ordinal;
        return data_->name < o.data_->name;
    }

private:
    std::shared_ptr<const VarData> data_;
};

struct FunctionDecl {
    std::string name;
    int arity;
};

// Symbol table: variables and opaque function symbols live here. Names are
// unique among variables; function symbols are identified by (name, arity) so
// the same letter may appear with different argument lists in one workspace.
class Workspace {
public:
    Var declare_var(const std::string& name, VarKind kind);
    void declare_function(const std::string& name, int arity);

    bool has_var(const std::string& name) const;
    Var var(const std::string& name) const;  // throws Error when missing
    bool has_function(const std::string& name, int arity) const;
    bool has_function_name(const std::string& name) const;

    const std::vector<Var>& vars() const { return vars_; }
    const std::vector<FunctionDecl>& functions() const { return functions_; }

private:
    std::vector<Var> vars_;
    std::vector<FunctionDecl> functions_;
};

}  // namespace vortexsym
