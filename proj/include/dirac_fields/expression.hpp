#ifndef DIRAC_FIELDS_EXPRESSION_HPP
#define DIRAC_FIELDS_EXPRESSION_HPP

// Closed-form scalar expressions in x, y, z and t for configuration files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Names: x, y, z, t, pi, e and the functions sin cos tan exp log sqrt abs
// tanh sinh cosh atan asin acos sign (one argument), atan2 min max pow (two).

#include <memory>
#include <string>

namespace dirac_fields {

class Expression {
public:
  Expression() = default;
  /// Throws std::invalid_argument with the offending position on a syntax error.
  explicit Expression(const std::string& source);

  double operator()(double x, double y, double z, double t) const;
  const std::string& source() const { return source_; }
  bool empty() const { return !root_; }
  /// True if the expression does not reference t.
  bool time_independent() const { return !uses_time_; }

  struct Node;

private:
  std::string source_;
  std::shared_ptr<const Node> root_;
  bool uses_time_ = false;
};

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_EXPRESSION_HPP
