#include "qtb/scalar.hpp"

#include <cctype>
#include <sstream>

namespace qtb {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw config_error("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw config_error("not a rational literal: '" + text + "'");
  }
  Rational q;
  if (q.set_str(text, 10) != 0) throw config_error("malformed rational literal: '" + text + "'");
  if (q.get_den() == 0) throw config_error("zero denominator in rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

static Real parse_real_component(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    Rational q = parse_rational(text);
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
  }
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw config_error("malformed numeric literal: '" + text + "'");
  }
}

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw config_error("empty numeric literal");
  auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_real_component(text));
  return Complex(parse_real_component(text.substr(0, comma)),
                 parse_real_component(text.substr(comma + 1)));
}

std::string complex_str(const Complex& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x.real();
  if (x.imag() != 0) {
    os << (x.imag() < 0 ? "-" : "+");
    Real im = x.imag() < 0 ? Real(-x.imag()) : Real(x.imag());
    os << im << "i";
  }
  return os.str();
}

}  // namespace qtb
