#include "optmon/sexpr.h"

#include "optmon/errors.h"

#include <cctype>

namespace optmon::sexpr {

bool Node::has_head(std::string_view head) const {
    return is_list && !items.empty() && items.front().is_atom(head);
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::vector<Node> read_all() {
        std::vector<Node> nodes;
        skip_space();
        while (pos_ < text_.size()) {
            nodes.push_back(read_node());
            skip_space();
        }
        return nodes;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Node read_node() {
        Node node;
        node.line = line_;
        node.column = column_;
        char c = text_[pos_];
        if (c == ')')
            throw ParseError("unexpected ')'", line_, column_);
        if (c == '(') {
            node.is_list = true;
            advance();
            skip_space();
            while (true) {
                if (pos_ >= text_.size())
                    throw ParseError("unterminated list opened here", node.line,
                                     node.column);
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                node.items.push_back(read_node());
                skip_space();
            }
            return node;
        }
        while (pos_ < text_.size()) {
            char d = text_[pos_];
            if (d == '(' || d == ')' || d == ';' ||
                std::isspace(static_cast<unsigned char>(d)))
                break;
            node.atom.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
            advance();
        }
        return node;
    }
};

void write(const Node &node, std::string &out) {
    if (node.is_atom()) {
        out += node.atom;
        return;
    }
    out.push_back('(');
    for (std::size_t i = 0; i < node.items.size(); ++i) {
        if (i > 0)
            out.push_back(' ');
        write(node.items[i], out);
    }
    out.push_back(')');
}

}  // namespace

std::vector<Node> parse_all(std::string_view text) {
    return Reader(text).read_all();
}

Node parse_one(std::string_view text) {
    auto nodes = parse_all(text);
    if (nodes.empty())
        throw ParseError("empty input", 0, 0);
    if (nodes.size() > 1)
        throw ParseError("trailing content after expression", nodes[1].line,
                         nodes[1].column);
    return std::move(nodes.front());
}

std::string to_string(const Node &node) {
    std::string out;
    write(node, out);
    return out;
}

}  // namespace optmon::sexpr
