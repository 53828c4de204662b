#include "rwre/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace rwre {

namespace {

std::int64_t parse_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t pos = 0;
  long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters in number '" + s + "'");
  return v;
}

}  // namespace

Rat64 parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::int64_t n = parse_int(s.substr(0, slash));
    std::int64_t d = parse_int(s.substr(slash + 1));
    return Rat64(n, d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ipart = s.substr(0, dot);
    std::string fpart = s.substr(dot + 1);
    if (fpart.size() > 15) fpart = fpart.substr(0, 15);
    bool neg = !ipart.empty() && ipart[0] == '-';
    std::int64_t whole = ipart.empty() || ipart == "-" || ipart == "+" ? 0 : parse_int(ipart);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
    std::int64_t frac = fpart.empty() ? 0 : parse_int(fpart);
    if (frac < 0) throw std::invalid_argument("malformed decimal '" + text + "'");
    std::int64_t num = (whole < 0 ? -whole : whole) * den + frac;
    if (neg || whole < 0) num = -num;
    return Rat64(num, den);
  }
  return Rat64(parse_int(s));
}

std::vector<std::int64_t> gcd_normalize(const std::vector<Rat64>& ell) {
  if (ell.empty()) throw std::invalid_argument("empty direction vector");
  bool all_zero = true;
  std::int64_t lcm = 1;
  for (const Rat64& r : ell) {
    if (!r.is_zero()) all_zero = false;
    lcm = std::lcm(lcm, r.den);
  }
  if (all_zero) throw std::invalid_argument("direction vector must be nonzero");

  std::vector<std::int64_t> out(ell.size());
  std::int64_t g = 0;
  for (std::size_t i = 0; i < ell.size(); ++i) {
    out[i] = ell[i].num * (lcm / ell[i].den);
    g = std::gcd(g, out[i] < 0 ? -out[i] : out[i]);
  }
  for (auto& v : out) v /= g;
  return out;
}

}  // namespace rwre
