#include "qtb/report.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

namespace qtb {

json complex_json(const Complex& x, int digits) { return complex_str(x, digits); }

json complex_list_json(const std::vector<Complex>& xs, int digits) {
  json arr = json::array();
  for (const Complex& x : xs) arr.push_back(complex_json(x, digits));
  return arr;
}

void sort_canonical(std::vector<Complex>& xs) {
  std::sort(xs.begin(), xs.end(), [](const Complex& a, const Complex& b) {
    Real ma = abs(a), mb = abs(b);
    if (ma != mb) return ma < mb;
    Real aa = atan2(a.imag(), a.real()), ab = atan2(b.imag(), b.real());
    return aa < ab;
  });
}

void emit_report(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << std::endl;
  } else {
    std::ofstream f(out_path);
    if (!f) throw config_error("cannot open output path: " + out_path);
    f << report.dump(2) << std::endl;
  }
}

}  // namespace qtb
