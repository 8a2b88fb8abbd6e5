#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace optmon::sexpr {

// A parsed s-expression node. Atoms are lower-cased; PDDL is case-insensitive.
struct Node {
    bool is_list = false;
    std::string atom;
    std::vector<Node> items;
    std::size_t line = 0;
    std::size_t column = 0;

    bool is_atom() const { return !is_list; }
    bool is_atom(std::string_view text) const { return !is_list && atom == text; }
    // True for a list whose first element is the atom `head`.
    bool has_head(std::string_view head) const;
};

// Parses every top-level expression in `text`. ';' starts a line comment.
std::vector<Node> parse_all(std::string_view text);

// Parses exactly one top-level expression.
Node parse_one(std::string_view text);

std::string to_string(const Node &node);

}  // namespace optmon::sexpr
