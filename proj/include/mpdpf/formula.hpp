#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace mpdpf {

/**
 * A small arithmetic expression, e.g. "2*sqrt(N)*binom(p,m+1)^2*(lambda+log2(q))".
 *
 * Grammar: numbers, variables, + - * / ^ (right-associative), unary minus,
 * parentheses and the functions sqrt, log2, ceil, floor, binom(n, k).
 * Unknown variables are reported at evaluation time.
 */
class Formula {
public:
    /// Throws ParameterError on syntax errors.
    static Formula parse(std::string_view text);

    double evaluate(const std::map<std::string, double> &variables) const;
    const std::string &text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace mpdpf
