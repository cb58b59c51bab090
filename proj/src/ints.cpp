#include "cayley/ints.hpp"

#include <sstream>
#include <stdexcept>

namespace cayley {

Rat rat_from_string(const std::string& text) {
  std::string s = text;
  // strip spaces
  std::string t;
  for (char c : s)
    if (c != ' ') t.push_back(c);
  s = t;
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    if (tail.empty()) tail = "0";
    for (char c : tail)
      if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal '" + text + "'");
    bool negative = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    Int scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Int value = Int(head) * scale + Int(tail);
    if (negative) value = -value;
    return Rat(value, scale);
  }
  return Rat(Int(s));
}

std::string rat_to_string(const Rat& value) {
  std::ostringstream out;
  if (rat_den(value) == 1) {
    out << rat_num(value);
  } else {
    out << rat_num(value) << "/" << rat_den(value);
  }
  return out.str();
}

Int rat_num(const Rat& value) { return boost::multiprecision::numerator(value); }
Int rat_den(const Rat& value) { return boost::multiprecision::denominator(value); }

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::invalid_argument("floor_div by zero");
  Int q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

Int rat_floor(const Rat& value) { return floor_div(rat_num(value), rat_den(value)); }

Int rat_ceil(const Rat& value) { return -rat_floor(-value); }

IntVec vec_add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec vec_neg(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Int vec_dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Int r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

Rat rat_dot(const RatVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Rat r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * Rat(b[i]);
  return r;
}

Rat rat_dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Rat r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

RatVec to_rat_vec(const IntVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

namespace {
template <typename V>
std::string join_vec(const V& a, std::string (*fmt)(const typename V::value_type&)) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += fmt(a[i]);
  }
  out += ")";
  return out;
}
std::string int_fmt(const Int& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}
std::string rat_fmt(const Rat& v) { return rat_to_string(v); }
}  // namespace

std::string vec_to_string(const IntVec& a) { return join_vec(a, int_fmt); }
std::string vec_to_string(const RatVec& a) { return join_vec(a, rat_fmt); }

}  // namespace cayley
