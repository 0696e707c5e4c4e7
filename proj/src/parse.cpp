#include "autoseries/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace autoseries {
namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  real parse() {
    const real value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  real expression() {
    real value = term();
    for (;;) {
      skip_space();
      if (consume('+')) {
        value += term();
      } else if (consume('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  real term() {
    real value = factor();
    for (;;) {
      skip_space();
      if (consume('*')) {
        value *= factor();
      } else if (consume('/')) {
        const real divisor = factor();
        if (divisor == 0) fail("division by zero");
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  real factor() {
    skip_space();
    if (consume('-')) return -factor();
    if (consume('+')) return factor();
    if (consume('(')) {
      const real value = expression();
      skip_space();
      if (!consume(')')) fail("expected ')'");
      return value;
    }
    if (keyword("sqrt2")) return std::numbers::sqrt2_v<real>;
    if (keyword("pi")) return std::numbers::pi_v<real>;
    if (keyword("sqrt")) {
      skip_space();
      if (!consume('(')) fail("expected '(' after sqrt");
      const real arg = expression();
      skip_space();
      if (!consume(')')) fail("expected ')'");
      if (arg < 0) fail("sqrt of a negative number");
      return std::sqrt(arg);
    }
    return number();
  }

  real number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (start == pos_) fail("expected a number");
    const std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const real value = std::strtold(token.c_str(), &end);
    if (end != token.c_str() + token.size()) fail("malformed number '" + token + "'");
    return value;
  }

  bool keyword(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t after = pos_ + word.size();
    if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after]))) return false;
    pos_ = after;
    return true;
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw UsageError("cannot parse '" + std::string(text_) + "': " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

real parse_real(std::string_view text) {
  const real value = ExpressionParser(text).parse();
  if (!std::isfinite(value)) throw UsageError("'" + std::string(text) + "' is not finite");
  return value;
}

std::vector<real> parse_real_list(std::string_view text) {
  std::vector<real> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    values.push_back(parse_real(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace autoseries
