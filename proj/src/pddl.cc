#include "optmon/pddl.h"

#include "optmon/errors.h"
#include "optmon/sexpr.h"

#include <algorithm>
#include <map>
#include <set>

namespace optmon::pddl {

using sexpr::Node;

std::string to_string(const Atom &atom) {
    std::string out = "(" + atom.predicate;
    for (const auto &arg : atom.args)
        out += " " + arg;
    out += ")";
    return out;
}

const PredicateSignature *DomainAst::find_predicate(std::string_view name) const {
    for (const auto &pred : predicates)
        if (pred.name == name)
            return &pred;
    return nullptr;
}

bool DomainAst::is_subtype(std::string_view type, std::string_view ancestor) const {
    if (ancestor == kRootType)
        return true;
    std::string current(type);
    // Bounded walk; declared hierarchies are acyclic (checked at parse time).
    for (std::size_t guard = 0; guard <= types.size() + 1; ++guard) {
        if (current == ancestor)
            return true;
        if (current == kRootType)
            return false;
        auto it = std::find_if(types.begin(), types.end(),
                               [&](const TypeDecl &t) { return t.name == current; });
        if (it == types.end())
            return false;
        current = it->parent;
    }
    return false;
}

namespace {

[[noreturn]] void fail(const Node &at, const std::string &message) {
    throw ParseError(message, at.line, at.column);
}

const std::string &expect_atom(const Node &node, const char *what) {
    if (!node.is_atom())
        fail(node, std::string("expected ") + what);
    return node.atom;
}

const Node &expect_list(const Node &node, const char *what) {
    if (!node.is_list)
        fail(node, std::string("expected ") + what);
    return node;
}

// Parses "a b - t c - u d" style lists; untyped names default to object.
std::vector<TypedName> parse_typed_list(const Node &list, std::size_t begin) {
    std::vector<TypedName> result;
    std::size_t pending_start = result.size();
    const auto &items = list.items;
    for (std::size_t i = begin; i < items.size(); ++i) {
        const Node &item = items[i];
        if (item.is_list) {
            if (item.has_head("either"))
                fail(item, "'either' types are not supported");
            fail(item, "unexpected list in typed list");
        }
        if (item.atom == "-") {
            if (i + 1 >= items.size())
                fail(item, "missing type after '-'");
            const Node &type = items[i + 1];
            if (type.is_list) {
                if (type.has_head("either"))
                    fail(type, "'either' types are not supported");
                fail(type, "expected a type name");
            }
            if (pending_start == result.size())
                fail(item, "'-' without preceding names");
            for (std::size_t k = pending_start; k < result.size(); ++k)
                result[k].type = type.atom;
            pending_start = result.size();
            ++i;
            continue;
        }
        result.push_back(TypedName{item.atom, kRootType});
    }
    return result;
}

Atom parse_atom(const Node &node) {
    expect_list(node, "an atom");
    if (node.items.empty())
        fail(node, "empty atom");
    Atom atom;
    atom.predicate = expect_atom(node.items.front(), "a predicate name");
    for (std::size_t i = 1; i < node.items.size(); ++i)
        atom.args.push_back(expect_atom(node.items[i], "a term"));
    return atom;
}

// Flattens an (and ...) conjunction or a single literal into its elements.
std::vector<const Node *> conjuncts(const Node &node) {
    std::vector<const Node *> out;
    if (node.is_list && node.items.empty())
        return out;
    if (node.has_head("and")) {
        for (std::size_t i = 1; i < node.items.size(); ++i) {
            auto inner = conjuncts(node.items[i]);
            out.insert(out.end(), inner.begin(), inner.end());
        }
        return out;
    }
    out.push_back(&node);
    return out;
}

void reject_non_strips(const Node &node, const char *where) {
    static const std::set<std::string> kUnsupported = {
        "or", "imply", "exists", "forall", "when", "increase", "decrease",
        "assign", "scale-up", "scale-down"};
    if (!node.is_list || node.items.empty() || !node.items.front().is_atom())
        return;
    const std::string &head = node.items.front().atom;
    // "at"/"over" are only temporal when followed by start, end or all; a
    // user predicate may be called "at".
    bool temporal = (head == "at" || head == "over") && node.items.size() == 3 &&
                    (node.items[1].is_atom("start") || node.items[1].is_atom("end") ||
                     node.items[1].is_atom("all"));
    if (kUnsupported.count(head) || temporal)
        fail(node, std::string("unsupported construct '") + node.items.front().atom +
                       "' in " + where);
}

class DomainParser {
public:
    DomainAst parse(const Node &root) {
        if (!root.has_head("define"))
            fail(root, "expected (define ...)");
        for (std::size_t i = 1; i < root.items.size(); ++i) {
            const Node &section = expect_list(root.items[i], "a domain section");
            if (section.items.empty() || !section.items.front().is_atom())
                fail(section, "malformed domain section");
            const std::string &head = section.items.front().atom;
            if (head == "domain") {
                if (section.items.size() != 2)
                    fail(section, "expected (domain <name>)");
                domain_.name = expect_atom(section.items[1], "a domain name");
            } else if (head == ":requirements") {
                parse_requirements(section);
            } else if (head == ":types") {
                parse_types(section);
            } else if (head == ":constants") {
                domain_.constants = parse_typed_list(section, 1);
            } else if (head == ":predicates") {
                parse_predicates(section);
            } else if (head == ":action") {
                parse_action(section);
            } else {
                fail(section, "unsupported domain section '" + head + "'");
            }
        }
        if (domain_.name.empty())
            fail(root, "missing (domain <name>)");
        check_types();
        return std::move(domain_);
    }

private:
    DomainAst domain_;

    void parse_requirements(const Node &section) {
        static const std::set<std::string> kAllowed = {":strips", ":typing",
                                                       ":equality"};
        for (std::size_t i = 1; i < section.items.size(); ++i) {
            const Node &req = section.items[i];
            const std::string &name = expect_atom(req, "a requirement flag");
            if (!kAllowed.count(name))
                throw UnsupportedRequirementError(name, req.line, req.column);
            domain_.requirements.push_back(name);
        }
    }

    bool has_requirement(const char *name) const {
        return std::find(domain_.requirements.begin(), domain_.requirements.end(),
                         name) != domain_.requirements.end();
    }

    void parse_types(const Node &section) {
        for (auto &typed : parse_typed_list(section, 1)) {
            if (typed.name == kRootType)
                continue;
            domain_.types.push_back(TypeDecl{typed.name, typed.type});
        }
    }

    void check_types() {
        std::set<std::string> known = {kRootType};
        for (const auto &t : domain_.types)
            known.insert(t.name);
        for (const auto &t : domain_.types) {
            if (!known.count(t.parent))
                domain_.types.push_back(TypeDecl{t.parent, kRootType});
            known.insert(t.parent);
        }
        for (const auto &t : domain_.types) {
            // Cycle check: walking parents must reach the root.
            std::string current = t.name;
            std::size_t steps = 0;
            while (current != kRootType) {
                auto it = std::find_if(
                    domain_.types.begin(), domain_.types.end(),
                    [&](const TypeDecl &d) { return d.name == current; });
                if (it == domain_.types.end() || ++steps > domain_.types.size())
                    throw ParseError("cyclic type hierarchy at '" + t.name + "'", 0, 0);
                current = it->parent;
            }
        }
        auto check = [&](const TypedName &n) {
            if (!known.count(n.type))
                throw ParseError("unknown type '" + n.type + "' for '" + n.name + "'",
                                 0, 0);
        };
        for (const auto &c : domain_.constants)
            check(c);
        for (const auto &p : domain_.predicates)
            for (const auto &param : p.parameters)
                check(param);
        for (const auto &op : domain_.operators)
            for (const auto &param : op.parameters)
                check(param);
    }

    void parse_predicates(const Node &section) {
        for (std::size_t i = 1; i < section.items.size(); ++i) {
            const Node &decl = expect_list(section.items[i], "a predicate declaration");
            if (decl.items.empty())
                fail(decl, "empty predicate declaration");
            PredicateSignature sig;
            sig.name = expect_atom(decl.items.front(), "a predicate name");
            sig.parameters = parse_typed_list(decl, 1);
            if (domain_.find_predicate(sig.name))
                fail(decl, "duplicate predicate '" + sig.name + "'");
            domain_.predicates.push_back(std::move(sig));
        }
    }

    void check_atom(const Node &at, const Atom &atom, const OperatorSchema &op) {
        const PredicateSignature *sig = domain_.find_predicate(atom.predicate);
        if (!sig)
            fail(at, "unknown predicate '" + atom.predicate + "'");
        if (sig->parameters.size() != atom.args.size())
            fail(at, "arity mismatch for '" + atom.predicate + "': expected " +
                         std::to_string(sig->parameters.size()) + ", got " +
                         std::to_string(atom.args.size()));
        for (const auto &arg : atom.args)
            check_term(at, arg, op);
    }

    void check_term(const Node &at, const std::string &term, const OperatorSchema &op) {
        if (!term.empty() && term[0] == '?') {
            bool bound = std::any_of(op.parameters.begin(), op.parameters.end(),
                                     [&](const TypedName &p) { return p.name == term; });
            if (!bound)
                fail(at, "variable " + term + " is not a parameter of '" + op.name + "'");
        } else {
            bool known = std::any_of(domain_.constants.begin(), domain_.constants.end(),
                                     [&](const TypedName &c) { return c.name == term; });
            if (!known)
                fail(at, "unknown constant '" + term + "' in '" + op.name + "'");
        }
    }

    void parse_precondition(const Node &node, OperatorSchema &op) {
        for (const Node *lit : conjuncts(node)) {
            reject_non_strips(*lit, "precondition");
            if (lit->has_head("not")) {
                if (lit->items.size() == 2 && lit->items[1].has_head("=")) {
                    add_equality(lit->items[1], op, true);
                    continue;
                }
                fail(*lit, "negative preconditions are not supported");
            }
            if (lit->has_head("=")) {
                add_equality(*lit, op, false);
                continue;
            }
            Atom atom = parse_atom(*lit);
            check_atom(*lit, atom, op);
            op.precondition.push_back(std::move(atom));
        }
    }

    void add_equality(const Node &node, OperatorSchema &op, bool negated) {
        if (!has_requirement(":equality"))
            fail(node, "'=' requires :equality");
        if (node.items.size() != 3)
            fail(node, "'=' takes exactly two terms");
        EqualityConstraint eq{expect_atom(node.items[1], "a term"),
                              expect_atom(node.items[2], "a term"), negated};
        check_term(node, eq.lhs, op);
        check_term(node, eq.rhs, op);
        op.equalities.push_back(std::move(eq));
    }

    void parse_effect(const Node &node, OperatorSchema &op) {
        for (const Node *lit : conjuncts(node)) {
            reject_non_strips(*lit, "effect");
            if (lit->has_head("not")) {
                if (lit->items.size() != 2)
                    fail(*lit, "malformed negative effect");
                Atom atom = parse_atom(lit->items[1]);
                check_atom(lit->items[1], atom, op);
                op.del.push_back(std::move(atom));
            } else {
                Atom atom = parse_atom(*lit);
                check_atom(*lit, atom, op);
                op.add.push_back(std::move(atom));
            }
        }
        auto unique = [](std::vector<Atom> &atoms) {
            std::sort(atoms.begin(), atoms.end());
            atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        };
        unique(op.add);
        unique(op.del);
        // An atom both added and deleted ends up true.
        std::vector<Atom> kept;
        std::set_difference(op.del.begin(), op.del.end(), op.add.begin(), op.add.end(),
                            std::back_inserter(kept));
        op.del = std::move(kept);
    }

    void parse_action(const Node &section) {
        if (section.items.size() < 2)
            fail(section, "expected an action name");
        OperatorSchema op;
        op.name = expect_atom(section.items[1], "an action name");
        for (const auto &existing : domain_.operators)
            if (existing.name == op.name)
                fail(section, "duplicate action '" + op.name + "'");
        for (std::size_t i = 2; i < section.items.size(); i += 2) {
            const std::string &key = expect_atom(section.items[i], "an action keyword");
            if (i + 1 >= section.items.size())
                fail(section.items[i], "missing value for " + key);
            const Node &value = section.items[i + 1];
            if (key == ":parameters") {
                expect_list(value, "a parameter list");
                op.parameters = parse_typed_list(value, 0);
                for (const auto &p : op.parameters)
                    if (p.name.empty() || p.name[0] != '?')
                        fail(value, "parameter '" + p.name + "' must start with '?'");
            } else if (key == ":precondition") {
                parse_precondition(value, op);
            } else if (key == ":effect") {
                parse_effect(value, op);
            } else {
                fail(section.items[i], "unsupported action keyword " + key);
            }
        }
        domain_.operators.push_back(std::move(op));
    }
};

std::vector<Atom> parse_ground_conjunction(const Node &node, const char *where) {
    std::vector<Atom> atoms;
    for (const Node *lit : conjuncts(node)) {
        reject_non_strips(*lit, where);
        if (lit->has_head("not"))
            fail(*lit, std::string("negative literals are not supported in ") + where);
        atoms.push_back(parse_atom(*lit));
    }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

}  // namespace

DomainAst parse_domain(std::string_view text) {
    return DomainParser().parse(sexpr::parse_one(text));
}

ProblemAst parse_problem(std::string_view text, const DomainAst &domain) {
    Node root = sexpr::parse_one(text);
    if (!root.has_head("define"))
        fail(root, "expected (define ...)");
    ProblemAst problem;
    const Node *init_node = nullptr;
    const Node *goal_node = nullptr;
    for (std::size_t i = 1; i < root.items.size(); ++i) {
        const Node &section = expect_list(root.items[i], "a problem section");
        if (section.items.empty() || !section.items.front().is_atom())
            fail(section, "malformed problem section");
        const std::string &head = section.items.front().atom;
        if (head == "problem") {
            if (section.items.size() != 2)
                fail(section, "expected (problem <name>)");
            problem.name = expect_atom(section.items[1], "a problem name");
        } else if (head == ":domain") {
            if (section.items.size() != 2)
                fail(section, "expected (:domain <name>)");
            problem.domain_name = expect_atom(section.items[1], "a domain name");
            if (problem.domain_name != domain.name)
                fail(section.items[1], "problem is for domain '" + problem.domain_name +
                                           "', not '" + domain.name + "'");
        } else if (head == ":objects") {
            problem.objects = parse_typed_list(section, 1);
        } else if (head == ":init") {
            init_node = &section;
        } else if (head == ":goal") {
            if (section.items.size() != 2)
                fail(section, "expected (:goal <formula>)");
            goal_node = &section.items[1];
        } else if (head == ":requirements") {
            // Problem-level requirement flags are redundant with the domain's.
        } else {
            fail(section, "unsupported problem section '" + head + "'");
        }
    }
    if (!goal_node)
        fail(root, "missing (:goal ...)");

    std::map<std::string, std::string> object_types;
    for (const auto &c : domain.constants)
        object_types[c.name] = c.type;
    for (const auto &o : problem.objects) {
        bool known_type = o.type == kRootType ||
                          std::any_of(domain.types.begin(), domain.types.end(),
                                      [&](const TypeDecl &t) { return t.name == o.type; });
        if (!known_type)
            fail(root, "unknown type '" + o.type + "' for object '" + o.name + "'");
        object_types[o.name] = o.type;
    }

    auto validate = [&](const Node &at, const Atom &atom) {
        const PredicateSignature *sig = domain.find_predicate(atom.predicate);
        if (!sig)
            fail(at, "unknown predicate '" + atom.predicate + "'");
        if (sig->parameters.size() != atom.args.size())
            fail(at, "arity mismatch for '" + atom.predicate + "': expected " +
                         std::to_string(sig->parameters.size()) + ", got " +
                         std::to_string(atom.args.size()));
        for (std::size_t k = 0; k < atom.args.size(); ++k) {
            auto it = object_types.find(atom.args[k]);
            if (it == object_types.end())
                fail(at, "unknown object '" + atom.args[k] + "' in " + to_string(atom));
            if (!domain.is_subtype(it->second, sig->parameters[k].type))
                fail(at, "type mismatch: '" + atom.args[k] + "' is " + it->second +
                             ", expected " + sig->parameters[k].type + " in " +
                             to_string(atom));
        }
    };

    if (init_node) {
        std::vector<Atom> init;
        for (std::size_t i = 1; i < init_node->items.size(); ++i) {
            const Node &lit = init_node->items[i];
            if (lit.has_head("not"))
                fail(lit, "negative literals are not allowed in :init");
            Atom atom = parse_atom(lit);
            validate(lit, atom);
            init.push_back(std::move(atom));
        }
        std::sort(init.begin(), init.end());
        init.erase(std::unique(init.begin(), init.end()), init.end());
        problem.init = std::move(init);
    }
    problem.goal = parse_ground_conjunction(*goal_node, "the goal");
    for (const Node *lit : conjuncts(*goal_node))
        validate(*lit, parse_atom(*lit));
    return problem;
}

}  // namespace optmon::pddl
