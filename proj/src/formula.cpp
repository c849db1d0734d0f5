#include "mpdpf/formula.hpp"

#include "mpdpf/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace mpdpf {

struct Formula::Node {
    enum class Kind { kNumber, kVariable, kUnary, kBinary, kCall } kind;
    double number = 0;
    std::string name; // variable or function name
    char op = 0;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;
using Node = Formula::Node;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr root = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string &why) const {
        throw ParameterError("formula error at position " + std::to_string(pos_) + ": " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::kBinary;
        n->op = op;
        n->args = {std::move(lhs), std::move(rhs)};
        return n;
    }

    NodePtr expression() {
        NodePtr lhs = term();
        while (true) {
            if (accept('+')) lhs = binary('+', lhs, term());
            else if (accept('-')) lhs = binary('-', lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (accept('*')) lhs = binary('*', lhs, unary());
            else if (accept('/')) lhs = binary('/', lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::kUnary;
            n->op = '-';
            n->args = {unary()};
            return n;
        }
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return binary('^', base, unary());
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of formula");
        if (accept('(')) {
            NodePtr inner = expression();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::string rest(text_.substr(pos_));
            char *end = nullptr;
            const double v = std::strtod(rest.c_str(), &end);
            if (end == rest.c_str()) fail("bad number");
            pos_ += static_cast<std::size_t>(end - rest.c_str());
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::kNumber;
            n->number = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            auto n = std::make_shared<Node>();
            n->name = std::string(text_.substr(start, pos_ - start));
            if (accept('(')) {
                n->kind = Node::Kind::kCall;
                if (!accept(')')) {
                    do {
                        n->args.push_back(expression());
                    } while (accept(','));
                    if (!accept(')')) fail("expected ')' after arguments");
                }
                const std::size_t want = n->name == "binom" ? 2 : 1;
                if (n->name != "sqrt" && n->name != "log2" && n->name != "ceil" && n->name != "floor" &&
                    n->name != "binom") {
                    fail("unknown function '" + n->name + "'");
                }
                if (n->args.size() != want) fail("wrong argument count for '" + n->name + "'");
            } else {
                n->kind = Node::Kind::kVariable;
            }
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double evaluate_node(const Node &n, const std::map<std::string, double> &vars) {
    switch (n.kind) {
    case Node::Kind::kNumber:
        return n.number;
    case Node::Kind::kVariable: {
        auto it = vars.find(n.name);
        if (it == vars.end()) throw ParameterError("formula uses unknown variable '" + n.name + "'");
        return it->second;
    }
    case Node::Kind::kUnary:
        return -evaluate_node(*n.args[0], vars);
    case Node::Kind::kBinary: {
        const double a = evaluate_node(*n.args[0], vars);
        const double b = evaluate_node(*n.args[1], vars);
        switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
        }
    }
    case Node::Kind::kCall: {
        const double a = evaluate_node(*n.args[0], vars);
        if (n.name == "sqrt") return std::sqrt(a);
        if (n.name == "log2") return std::log2(a);
        if (n.name == "ceil") return std::ceil(a);
        if (n.name == "floor") return std::floor(a);
        // binom over reals via lgamma, exact enough for the integer arguments used here
        const double k = evaluate_node(*n.args[1], vars);
        if (k < 0 || k > a) return 0.0;
        return std::round(std::exp(std::lgamma(a + 1) - std::lgamma(k + 1) - std::lgamma(a - k + 1)));
    }
    }
    return 0.0;
}

} // namespace

Formula Formula::parse(std::string_view text) {
    Formula f;
    f.text_ = std::string(text);
    f.root_ = Parser(text).parse();
    return f;
}

double Formula::evaluate(const std::map<std::string, double> &variables) const {
    return evaluate_node(*root_, variables);
}

} // namespace mpdpf
