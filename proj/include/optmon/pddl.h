#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace optmon::pddl {

inline constexpr const char *kRootType = "object";

struct TypedName {
    std::string name;
    std::string type = kRootType;
};

// A predicate applied to terms. Terms starting with '?' are variables.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    friend bool operator==(const Atom &, const Atom &) = default;
    friend auto operator<=>(const Atom &, const Atom &) = default;
};

std::string to_string(const Atom &atom);

struct PredicateSignature {
    std::string name;
    std::vector<TypedName> parameters;
};

struct EqualityConstraint {
    std::string lhs;
    std::string rhs;
    bool negated = false;
};

struct OperatorSchema {
    std::string name;
    std::vector<TypedName> parameters;
    std::vector<Atom> precondition;
    std::vector<EqualityConstraint> equalities;
    std::vector<Atom> add;
    std::vector<Atom> del;
};

struct TypeDecl {
    std::string name;
    std::string parent = kRootType;
};

struct DomainAst {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypeDecl> types;
    std::vector<TypedName> constants;
    std::vector<PredicateSignature> predicates;
    std::vector<OperatorSchema> operators;

    const PredicateSignature *find_predicate(std::string_view name) const;
    // True when `type` equals `ancestor` or transitively derives from it.
    bool is_subtype(std::string_view type, std::string_view ancestor) const;
};

struct ProblemAst {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> init;  // sorted, duplicates removed
    std::vector<Atom> goal;  // sorted, duplicates removed
};

// Accepts the :strips, :typing and :equality fragment. Throws ParseError
// (with line/column) on malformed input and UnsupportedRequirementError for
// any other requirement flag.
DomainAst parse_domain(std::string_view text);

// Validates predicates, arities, object names and argument types against
// `domain`; throws ParseError on the first inconsistency.
ProblemAst parse_problem(std::string_view text, const DomainAst &domain);

}  // namespace optmon::pddl
