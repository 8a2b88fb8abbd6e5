#include "optmon/grounding.h"

#include "optmon/errors.h"
#include "optmon/io.h"

#include <algorithm>
#include <map>
#include <set>

namespace optmon {

namespace {

using pddl::Atom;

std::string atom_text(const std::string &predicate, const std::vector<std::string> &args) {
    std::string out = "(" + predicate;
    for (const auto &a : args)
        out += " " + a;
    return out + ")";
}

struct RawAction {
    std::string name;
    std::vector<std::string> pre, add, del;
};

class Grounder {
public:
    Grounder(const pddl::DomainAst &domain, const pddl::ProblemAst &problem,
             const GroundingOptions &options)
        : domain_(domain), problem_(problem), options_(options) {
        for (const auto &c : domain.constants)
            objects_.push_back(c);
        for (const auto &o : problem.objects)
            if (std::none_of(objects_.begin(), objects_.end(),
                             [&](const pddl::TypedName &x) { return x.name == o.name; }))
                objects_.push_back(o);
        for (const auto &op : domain.operators) {
            for (const auto &a : op.add)
                fluent_.insert(a.predicate);
            for (const auto &a : op.del)
                fluent_.insert(a.predicate);
        }
        for (const auto &a : problem.init)
            init_.insert(atom_text(a.predicate, a.args));
    }

    std::vector<RawAction> run() {
        for (const auto &op : domain_.operators)
            ground_operator(op);
        return std::move(result_);
    }

private:
    const pddl::DomainAst &domain_;
    const pddl::ProblemAst &problem_;
    const GroundingOptions &options_;
    std::vector<pddl::TypedName> objects_;
    std::set<std::string> fluent_;
    std::set<std::string> init_;
    std::vector<RawAction> result_;

    std::string resolve(const std::string &term, const pddl::OperatorSchema &op,
                        const std::vector<std::string> &binding) const {
        if (term.empty() || term[0] != '?')
            return term;
        for (std::size_t i = 0; i < op.parameters.size(); ++i)
            if (op.parameters[i].name == term)
                return binding[i];
        return term;
    }

    std::size_t bind_depth(const std::vector<std::string> &terms,
                           const pddl::OperatorSchema &op) const {
        std::size_t depth = 0;
        for (const auto &t : terms)
            for (std::size_t i = 0; i < op.parameters.size(); ++i)
                if (op.parameters[i].name == t)
                    depth = std::max(depth, i + 1);
        return depth;
    }

    void ground_operator(const pddl::OperatorSchema &op) {
        // Checks become active at the depth where their last variable is bound.
        std::vector<std::vector<const Atom *>> static_checks(op.parameters.size() + 1);
        for (const auto &p : op.precondition)
            if (!fluent_.count(p.predicate))
                static_checks[bind_depth(p.args, op)].push_back(&p);
        std::vector<std::vector<const pddl::EqualityConstraint *>> eq_checks(
            op.parameters.size() + 1);
        for (const auto &eq : op.equalities)
            eq_checks[bind_depth({eq.lhs, eq.rhs}, op)].push_back(&eq);

        std::vector<std::vector<std::string>> candidates;
        for (const auto &param : op.parameters) {
            std::vector<std::string> objs;
            for (const auto &o : objects_)
                if (domain_.is_subtype(o.type, param.type))
                    objs.push_back(o.name);
            candidates.push_back(std::move(objs));
        }
        std::vector<std::string> binding(op.parameters.size());
        extend(op, 0, binding, candidates, static_checks, eq_checks);
    }

    bool checks_hold(const pddl::OperatorSchema &op, const std::vector<std::string> &binding,
                     const std::vector<const Atom *> &statics,
                     const std::vector<const pddl::EqualityConstraint *> &eqs) const {
        for (const Atom *a : statics) {
            std::vector<std::string> args;
            for (const auto &t : a->args)
                args.push_back(resolve(t, op, binding));
            if (!init_.count(atom_text(a->predicate, args)))
                return false;
        }
        for (const auto *eq : eqs) {
            bool same = resolve(eq->lhs, op, binding) == resolve(eq->rhs, op, binding);
            if (same == eq->negated)
                return false;
        }
        return true;
    }

    void extend(const pddl::OperatorSchema &op, std::size_t depth,
                std::vector<std::string> &binding,
                const std::vector<std::vector<std::string>> &candidates,
                const std::vector<std::vector<const Atom *>> &static_checks,
                const std::vector<std::vector<const pddl::EqualityConstraint *>> &eq_checks) {
        if (!checks_hold(op, binding, static_checks[depth], eq_checks[depth]))
            return;
        if (depth == op.parameters.size()) {
            emit(op, binding);
            return;
        }
        for (const auto &obj : candidates[depth]) {
            binding[depth] = obj;
            extend(op, depth + 1, binding, candidates, static_checks, eq_checks);
        }
    }

    void emit(const pddl::OperatorSchema &op, const std::vector<std::string> &binding) {
        if (result_.size() >= options_.max_actions)
            throw ResourceLimitError("grounding exceeded the cap of " +
                                     std::to_string(options_.max_actions) + " actions");
        RawAction action;
        action.name = atom_text(op.name, binding);
        auto instantiate = [&](const std::vector<Atom> &atoms, std::vector<std::string> &out) {
            for (const auto &a : atoms) {
                std::vector<std::string> args;
                for (const auto &t : a.args)
                    args.push_back(resolve(t, op, binding));
                out.push_back(atom_text(a.predicate, args));
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        };
        instantiate(op.precondition, action.pre);
        instantiate(op.add, action.add);
        instantiate(op.del, action.del);
        std::vector<std::string> del;
        std::set_difference(action.del.begin(), action.del.end(), action.add.begin(),
                            action.add.end(), std::back_inserter(del));
        action.del = std::move(del);
        result_.push_back(std::move(action));
    }
};

std::vector<RawAction> prune_relaxed_unreachable(std::vector<RawAction> actions,
                                                 const std::set<std::string> &init) {
    std::set<std::string> reached = init;
    std::vector<bool> used(actions.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < actions.size(); ++i) {
            if (used[i])
                continue;
            if (std::all_of(actions[i].pre.begin(), actions[i].pre.end(),
                            [&](const std::string &f) { return reached.count(f) > 0; })) {
                used[i] = true;
                changed = true;
                for (const auto &f : actions[i].add)
                    reached.insert(f);
            }
        }
    }
    std::vector<RawAction> kept;
    for (std::size_t i = 0; i < actions.size(); ++i)
        if (used[i])
            kept.push_back(std::move(actions[i]));
    return kept;
}

}  // namespace

PlanningInstance ground(const pddl::DomainAst &domain, const pddl::ProblemAst &problem,
                        const GroundingOptions &options) {
    std::vector<RawAction> raw = Grounder(domain, problem, options).run();

    std::set<std::string> init_text, goal_text;
    for (const auto &a : problem.init)
        init_text.insert(atom_text(a.predicate, a.args));
    for (const auto &a : problem.goal)
        goal_text.insert(atom_text(a.predicate, a.args));
    if (options.prune_unreachable)
        raw = prune_relaxed_unreachable(std::move(raw), init_text);

    std::set<std::string> universe = init_text;
    universe.insert(goal_text.begin(), goal_text.end());
    for (const auto &a : raw) {
        universe.insert(a.pre.begin(), a.pre.end());
        universe.insert(a.add.begin(), a.add.end());
        universe.insert(a.del.begin(), a.del.end());
    }

    PlanningInstance instance;
    instance.facts.assign(universe.begin(), universe.end());
    std::map<std::string, FactId> index;
    for (std::size_t i = 0; i < instance.facts.size(); ++i)
        index.emplace(instance.facts[i], static_cast<FactId>(i));
    auto to_ids = [&](const auto &texts) {
        std::vector<FactId> ids;
        for (const auto &t : texts)
            ids.push_back(index.at(t));
        return make_fact_set(std::move(ids));
    };
    instance.init = to_ids(init_text);
    instance.goal = to_ids(goal_text);

    std::set<std::string> seen_names;
    for (auto &a : raw) {
        // Distinct bindings can only share a name if an operator is declared twice.
        if (!seen_names.insert(a.name).second)
            continue;
        instance.actions.push_back(
            GroundAction{a.name, to_ids(a.pre), to_ids(a.add), to_ids(a.del)});
    }
    instance.finalize();
    return instance;
}

PlanningInstance load_instance(const std::string &domain_text,
                               const std::string &problem_text,
                               const GroundingOptions &options) {
    auto domain = pddl::parse_domain(domain_text);
    auto problem = pddl::parse_problem(problem_text, domain);
    return ground(domain, problem, options);
}

PlanningInstance load_instance_files(const std::string &domain_path,
                                     const std::string &problem_path,
                                     const GroundingOptions &options) {
    return load_instance(read_file(domain_path), read_file(problem_path), options);
}

}  // namespace optmon
