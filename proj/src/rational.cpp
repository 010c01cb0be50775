#include "mgame/rational.hpp"

#include <cctype>

#include "mgame/error.hpp"

namespace mgame {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  fail(ErrorKind::kParse, "not an exact number: \"" + std::string(text) + "\"");
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) bad_number(whole);
  mpz_class z(std::string(text), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(whole);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), whole);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) bad_number(whole);
    mpz_class den(std::string(den_text), 10);
    if (den == 0) fail(ErrorKind::kParse, "zero denominator in \"" + std::string(whole) + "\"");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if (int_part.empty() && frac_part.empty()) bad_number(whole);
    if (!int_part.empty() && !all_digits(int_part)) bad_number(whole);
    if (!frac_part.empty() && !all_digits(frac_part)) bad_number(whole);
    std::string digits = std::string(int_part.empty() ? "0" : int_part) + std::string(frac_part);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    Rational r(negative ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
  }

  return Rational(parse_integer(text, whole));
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int places) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Rational scaled = abs(value) * scale;
  // round half away from zero
  mpz_class q = scaled.get_num() / scaled.get_den();
  Rational rem = scaled - Rational(q);
  if (rem * 2 >= 1) q += 1;
  std::string digits = q.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<size_t>(places)) {
      digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<size_t>(places), ".");
  }
  if (value < 0 && q != 0) digits.insert(0, "-");
  return digits;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace mgame
