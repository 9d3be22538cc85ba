#pragma once

// Independent reference implementations on plain strings and small arrays.
// They share no code with the library.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace oracle {

inline char inv(char c) { return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c)) : static_cast<char>(std::tolower(c)); }

inline std::string reduce(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '1') continue;
    if (!out.empty() && out.back() == inv(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string inverse(const std::string& s) {
  std::string out(s.rbegin(), s.rend());
  for (char& c : out) c = inv(c);
  return out;
}

// images maps each lowercase generator to its image.
inline std::string substitute(const std::map<char, std::string>& images, const std::string& w) {
  std::string out;
  for (char c : w) {
    if (std::islower(static_cast<unsigned char>(c))) {
      out += images.at(c);
    } else {
      out += inverse(images.at(static_cast<char>(std::tolower(c))));
    }
  }
  return reduce(out);
}

inline std::string iterate(const std::map<char, std::string>& images, std::string w, int k) {
  for (int i = 0; i < k; ++i) w = substitute(images, w);
  return w;
}

// Order a < A < b < B < ...
inline int key(char c) {
  const int base = 2 * (std::tolower(static_cast<unsigned char>(c)) - 'a');
  return std::isupper(static_cast<unsigned char>(c)) ? base + 1 : base;
}

inline bool less(const std::string& u, const std::string& v) {
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end(),
                                      [](char x, char y) { return key(x) < key(y); });
}

inline std::string cyclic_reduce(const std::string& w) {
  const std::string s = reduce(w);
  std::size_t i = 0, j = s.size();
  while (j - i >= 2 && s[i] == inv(s[j - 1])) {
    ++i;
    --j;
  }
  return s.substr(i, j - i);
}

inline std::string cyclic_canon(const std::string& w) {
  std::string s = reduce(w);
  while (s.size() >= 2 && s.front() == inv(s.back())) s = s.substr(1, s.size() - 2);
  std::string best = s;
  for (std::size_t r = 1; r < s.size(); ++r) {
    const std::string rot = s.substr(r) + s.substr(0, r);
    if (less(rot, best)) best = rot;
  }
  return best;
}

inline double root2(double a, double b, double c, double d) {
  const double tr = a + d, det = a * d - b * c;
  return (tr + std::sqrt(tr * tr - 4 * det)) / 2;
}

// Largest real root of det(xI - M) for a 3x3 matrix by bisection.
inline double root3(const std::array<std::array<double, 3>, 3>& m) {
  auto det = [&m](double x) {
    std::array<std::array<double, 3>, 3> a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? x : 0.0) - m[i][j];
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double hi = 1.0;
  for (const auto& row : m)
    for (double x : row) hi += std::abs(x);
  double lo = hi;
  // Walk down to the largest sign change.
  const double step = hi / 4096;
  while (lo > -hi && (det(lo) > 0) == (det(hi) > 0)) lo -= step;
  double a = lo, b = lo + step;
  for (int it = 0; it < 200; ++it) {
    const double mid = (a + b) / 2;
    ((det(mid) > 0) == (det(b) > 0) ? b : a) = mid;
  }
  return (a + b) / 2;
}

// Some boolean power M^k, k <= limit, is entrywise positive.
template <std::size_t N>
bool positive_power(const std::array<std::array<int, N>, N>& m, int limit) {
  std::array<std::array<bool, N>, N> p{}, b{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) p[i][j] = b[i][j] = m[i][j] != 0;
  for (int k = 1; k <= limit; ++k) {
    bool all = true;
    for (const auto& row : p)
      for (bool x : row) all = all && x;
    if (all) return true;
    std::array<std::array<bool, N>, N> q{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t l = 0; l < N; ++l) q[i][j] = q[i][j] || (p[i][l] && b[l][j]);
    p = q;
  }
  return false;
}

}  // namespace oracle
