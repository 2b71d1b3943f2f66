#include "nevlab/ledger.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "nevlab/types.hpp"

namespace nevlab {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::map<std::string, double>& vars) : s_(text), vars_(vars) {}

  double parse() {
    const double v = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw NumericError(ErrorKind::InvalidArgument,
                       "formula '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  double expression() {
    double v = term();
    while (true) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }

  // -x^2 is -(x^2); the exponent may carry its own sign and is right
  // associative.
  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  double power() {
    const double base = primary();
    if (accept('^')) return std::pow(base, unary());
    return base;
  }

  double primary() {
    skip();
    if (accept('(')) {
      const double v = expression();
      expect(')');
      return v;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (accept('(')) {
        const double a = expression();
        if (name == "max") {
          expect(',');
          const double b = expression();
          expect(')');
          return std::max(a, b);
        }
        expect(')');
        if (name == "log") return std::log(a);
        if (name == "exp") return std::exp(a);
        if (name == "sqrt") return std::sqrt(a);
        fail("unknown function " + name);
      }
      auto it = vars_.find(name);
      if (it == vars_.end()) fail("unknown name " + name);
      return it->second;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  const std::map<std::string, double>& vars_;
  std::size_t pos_ = 0;
};

const std::vector<LedgerEntry>& formulas() {
  static const std::vector<LedgerEntry> table{
      {"c2", 0.0, "(7/delta)/2", false},
      {"c3", 0.0, "(7/delta)*(log(c1) + 0.0824) + 0.0824", false},
      {"c4", 0.0, "log(c2 + c3/log(16)) - log(0.0426)", false},
      {"c5", 0.0,
       "2*c4 + 4*log(1.0824) + 2*max(0, log(1/((7/2 - 2*delta)*0.012))) + 24*log((7/2 - 2*delta)/delta) + 2328",
       false},
      {"c6", 0.0, "2*(7 - 7*delta)/delta", false},
      {"c7", 0.0, "((7 - 7*delta)/delta)*c5", false},
      {"c8", 0.0, "c7", true},
  };
  return table;
}

}  // namespace

double evaluate_formula(const std::string& formula, const std::map<std::string, double>& variables) {
  return Parser(formula, variables).parse();
}

const LedgerEntry& ConstantsLedger::entry(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw NumericError(ErrorKind::InvalidArgument, "no ledger constant named " + name);
}

double ConstantsLedger::value(const std::string& name) const {
  if (name == "delta") return delta;
  if (name == "c1") return c1;
  return entry(name).value;
}

double ConstantsLedger::log_value(const std::string& name) const {
  if (name == "delta") return std::log(delta);
  if (name == "c1") return std::log(c1);
  const LedgerEntry& e = entry(name);
  return e.log_scale ? e.value : std::log(e.value);
}

ConstantsLedger derive_constants(double c1, double delta) {
  if (!(c1 > 0.0) || !std::isfinite(c1)) throw NumericError(ErrorKind::InvalidArgument, "c1 must be positive");
  if (!(delta > 0.0 && delta < 0.125)) {
    throw NumericError(ErrorKind::InvalidArgument, "delta must lie in (0, 1/8)");
  }
  ConstantsLedger ledger;
  ledger.c1 = c1;
  ledger.delta = delta;
  std::map<std::string, double> vars{{"delta", delta}, {"c1", c1}};
  for (LedgerEntry e : formulas()) {
    e.value = evaluate_formula(e.formula, vars);
    vars[e.log_scale ? "log_" + e.name : e.name] = e.value;
    ledger.entries.push_back(e);
  }
  return ledger;
}

double ledger_consistency(const ConstantsLedger& ledger) {
  std::map<std::string, double> vars{{"delta", ledger.delta}, {"c1", ledger.c1}};
  double worst = 0.0;
  for (const auto& e : ledger.entries) {
    const double again = evaluate_formula(e.formula, vars);
    const double scale = std::max(std::abs(e.value), 1e-300);
    worst = std::max(worst, std::abs(again - e.value) / scale);
    vars[e.log_scale ? "log_" + e.name : e.name] = e.value;
  }
  return worst;
}

}  // namespace nevlab
