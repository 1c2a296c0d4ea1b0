#include "stagger/rational.hpp"

#include <stdexcept>

#include "stagger/errors.hpp"

namespace stagger {

Rat rat_mod(const Rat& r, const Rat& m) {
  if (m <= 0) throw InputError("rat_mod: modulus must be positive");
  Rat q = r / m;
  Rat out = r - Rat(rat_floor(q)) * m;
  // Guard against a boundary case where r/m is exactly integral.
  if (out < 0) out += m;
  if (out >= m) out -= m;
  return out;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw InputError("parse_rat: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    try {
      BigInt d(den);
      if (d == 0) throw InputError("parse_rat: zero denominator in '" + s + "'");
      return make_rat(BigInt(num), d);
    } catch (const std::invalid_argument&) {
      throw InputError("parse_rat: malformed rational '" + s + "'");
    }
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (tail.empty()) tail = "0";
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    try {
      BigInt ip(head), fp(tail);
      BigInt den = 1;
      for (std::size_t k = 0; k < tail.size(); ++k) den *= 10;
      BigInt num = ip * den + fp;
      if (neg) num = -num;
      return make_rat(num, den);
    } catch (const std::invalid_argument&) {
      throw InputError("parse_rat: malformed decimal '" + s + "'");
    }
  }
  try {
    return Rat(BigInt(s));
  } catch (const std::invalid_argument&) {
    throw InputError("parse_rat: malformed number '" + s + "'");
  }
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace stagger
