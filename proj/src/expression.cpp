#include <dirac_fields/expression.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace dirac_fields {

struct Expression::Node {
  enum class Kind { constant, variable, neg, add, sub, mul, div, pow, call1, call2 } kind = Kind::constant;
  double value = 0.0;
  int variable = 0;
  double (*f1)(double) = nullptr;
  double (*f2)(double, double) = nullptr;
  std::shared_ptr<const Node> a, b;

  double eval(const double* vars) const {
    switch (kind) {
      case Kind::constant: return value;
      case Kind::variable: return vars[variable];
      case Kind::neg: return -a->eval(vars);
      case Kind::add: return a->eval(vars) + b->eval(vars);
      case Kind::sub: return a->eval(vars) - b->eval(vars);
      case Kind::mul: return a->eval(vars) * b->eval(vars);
      case Kind::div: return a->eval(vars) / b->eval(vars);
      case Kind::pow: return std::pow(a->eval(vars), b->eval(vars));
      case Kind::call1: return f1(a->eval(vars));
      case Kind::call2: return f2(a->eval(vars), b->eval(vars));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }
double fmin2(double a, double b) { return std::fmin(a, b); }
double fmax2(double a, double b) { return std::fmax(a, b); }

struct Function1 {
  const char* name;
  double (*f)(double);
};
struct Function2 {
  const char* name;
  double (*f)(double, double);
};

const Function1 kFunctions1[] = {
    {"sin", [](double v) { return std::sin(v); }},   {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},   {"exp", [](double v) { return std::exp(v); }},
    {"log", [](double v) { return std::log(v); }},   {"sqrt", [](double v) { return std::sqrt(v); }},
    {"abs", [](double v) { return std::abs(v); }},   {"tanh", [](double v) { return std::tanh(v); }},
    {"sinh", [](double v) { return std::sinh(v); }}, {"cosh", [](double v) { return std::cosh(v); }},
    {"atan", [](double v) { return std::atan(v); }}, {"asin", [](double v) { return std::asin(v); }},
    {"acos", [](double v) { return std::acos(v); }}, {"sign", sign},
};
const Function2 kFunctions2[] = {
    {"atan2", [](double a, double b) { return std::atan2(a, b); }},
    {"min", fmin2},
    {"max", fmax2},
    {"pow", [](double a, double b) { return std::pow(a, b); }},
};

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

  bool uses_time = false;

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr make(Node::Kind k, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make(Node::Kind::add, n, term());
      else if (accept('-')) n = make(Node::Kind::sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Node::Kind::mul, n, unary());
      else if (accept('/')) n = make(Node::Kind::div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        std::vector<NodePtr> args{expr()};
        while (accept(',')) args.push_back(expr());
        if (!accept(')')) fail("expected ')' after arguments of " + name);
        return call(name, args);
      }
      return symbol(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr symbol(const std::string& name) {
    auto n = std::make_shared<Node>();
    static const char* vars[] = {"x", "y", "z", "t"};
    for (int i = 0; i < 4; ++i) {
      if (name == vars[i]) {
        n->kind = Node::Kind::variable;
        n->variable = i;
        if (i == 3) uses_time = true;
        return n;
      }
    }
    if (name == "pi") n->value = M_PI;
    else if (name == "e") n->value = M_E;
    else fail("unknown name '" + name + "'");
    return n;
  }

  NodePtr call(const std::string& name, const std::vector<NodePtr>& args) {
    for (const auto& f : kFunctions1) {
      if (name != f.name) continue;
      if (args.size() != 1) fail(name + " takes one argument");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::call1;
      n->f1 = f.f;
      n->a = args[0];
      return n;
    }
    for (const auto& f : kFunctions2) {
      if (name != f.name) continue;
      if (args.size() != 2) fail(name + " takes two arguments");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::call2;
      n->f2 = f.f;
      n->a = args[0];
      n->b = args[1];
      return n;
    }
    fail("unknown function '" + name + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& source) : source_(source) {
  Parser p(source_);
  root_ = p.parse();
  uses_time_ = p.uses_time;
}

double Expression::operator()(double x, double y, double z, double t) const {
  if (!root_) return 0.0;
  const double vars[4] = {x, y, z, t};
  return root_->eval(vars);
}

}  // namespace dirac_fields
