#include "freedyn/word.hpp"

#include <algorithm>
#include <sstream>

#include "freedyn/error.hpp"

namespace freedyn {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::UnknownLetter: return "UnknownLetter";
    case Errc::BasisMismatch: return "BasisMismatch";
    case Errc::Parse: return "ParseError";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::InvalidMarking: return "InvalidMarking";
    case Errc::InvalidTree: return "InvalidTree";
    case Errc::NotCore: return "NotCore";
    case Errc::Forest: return "Forest";
    case Errc::NotInjectiveWitness: return "NotInjectiveWitness";
    case Errc::TrivialImage: return "TrivialImage";
    case Errc::DegenerateEdge: return "DegenerateEdge";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::SurjectiveInput: return "SurjectiveInput";
    case Errc::FoldBudgetExceeded: return "FoldBudgetExceeded";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::TrivialPullback: return "TrivialPullback";
    case Errc::UnsupportedSplitting: return "UnsupportedSplitting";
    case Errc::ZeroLength: return "ZeroLength";
    case Errc::Precondition: return "PreconditionViolated";
  }
  return "Unknown";
}

char letter_symbol(Letter x) noexcept {
  const char base = x > 0 ? 'a' : 'A';
  return static_cast<char>(base + generator_index(x));
}

Basis::Basis(int rank) : rank_(rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw Error(Errc::Precondition, "basis rank must be in [1, 26], got " + std::to_string(rank));
  }
}

Letter Basis::letter(char symbol) const {
  Letter x = 0;
  if (symbol >= 'a' && symbol <= 'z') {
    x = generator_letter(symbol - 'a');
  } else if (symbol >= 'A' && symbol <= 'Z') {
    x = -generator_letter(symbol - 'A');
  }
  if (!contains(x)) {
    throw Error(Errc::UnknownLetter, std::string("symbol '") + symbol + "' is not in the rank-" +
                                         std::to_string(rank_) + " alphabet");
  }
  return x;
}

std::vector<Letter> Basis::alphabet() const {
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(2 * rank_));
  for (int i = 0; i < rank_; ++i) {
    out.push_back(generator_letter(i));
    out.push_back(-generator_letter(i));
  }
  return out;
}

Word Word::reduce(std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (Letter x : raw) {
    if (!stack.empty() && stack.back() == -x) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(std::move(stack));
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& x : out) x = -x;
  return Word(std::move(out));
}

Word Word::prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word operator*(const Word& u, const Word& v) {
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() &&
         u.letters_[u.size() - 1 - cancel] == -v.letters_[cancel]) {
    ++cancel;
  }
  std::vector<Letter> out;
  out.reserve(u.size() + v.size() - 2 * cancel);
  out.insert(out.end(), u.letters_.begin(), u.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), v.letters_.end());
  return Word(std::move(out));
}

namespace {

std::strong_ordering shortlex(std::span<const Letter> u, std::span<const Letter> v) {
  if (u.size() != v.size()) return u.size() <=> v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return letter_rank(u[i]) <=> letter_rank(v[i]);
  }
  return std::strong_ordering::equal;
}

// Start index of the least rotation (two-candidate scan, linear time).
std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n < 2) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const int a = letter_rank(s[(i + k) % n]);
    const int b = letter_rank(s[(j + k) % n]);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

}  // namespace

std::strong_ordering operator<=>(const Word& u, const Word& v) { return shortlex(u.letters_, v.letters_); }

Word reduce(std::string_view raw, const Basis& basis) {
  if (raw == "1") return {};
  std::vector<Letter> letters;
  letters.reserve(raw.size());
  for (char c : raw) letters.push_back(basis.letter(c));
  return Word::reduce(letters);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  out.reserve(w.size());
  for (Letter x : w.letters()) out.push_back(letter_symbol(x));
  return out;
}

std::size_t common_prefix_length(std::span<const Letter> u, std::span<const Letter> v) {
  const auto [iu, iv] = std::mismatch(u.begin(), u.end(), v.begin(), v.end());
  return static_cast<std::size_t>(iu - u.begin());
}

Word CyclicWord::word() const { return Word::reduce(letters_); }

CyclicWord CyclicWord::inverse() const { return cyclic_reduce(word().inverse()); }

std::strong_ordering operator<=>(const CyclicWord& u, const CyclicWord& v) {
  return shortlex(u.letters_, v.letters_);
}

CyclicWord cyclic_reduce(const Word& w) {
  auto letters = w.letters();
  std::size_t lo = 0, hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
    ++lo;
    --hi;
  }
  auto core = letters.subspan(lo, hi - lo);
  const std::size_t start = least_rotation(core);
  CyclicWord out;
  out.letters_.reserve(core.size());
  out.letters_.insert(out.letters_.end(), core.begin() + static_cast<std::ptrdiff_t>(start), core.end());
  out.letters_.insert(out.letters_.end(), core.begin(), core.begin() + static_cast<std::ptrdiff_t>(start));
  return out;
}

std::string to_string(const CyclicWord& w) { return to_string(w.word()); }

Endomorphism::Endomorphism(Basis basis, std::vector<Word> images)
    : basis_(basis), images_(std::move(images)) {
  if (images_.size() != static_cast<std::size_t>(basis_.rank())) {
    throw Error(Errc::BasisMismatch, "expected " + std::to_string(basis_.rank()) + " images, got " +
                                         std::to_string(images_.size()));
  }
  for (const Word& w : images_) {
    for (Letter x : w.letters()) {
      if (!basis_.contains(x)) throw Error(Errc::UnknownLetter, "image letter outside the basis");
    }
  }
}

Endomorphism Endomorphism::identity(Basis basis) {
  std::vector<Word> images;
  for (int i = 0; i < basis.rank(); ++i) images.push_back(Word::generator(i));
  return Endomorphism(basis, std::move(images));
}

bool Endomorphism::has_trivial_image() const {
  return std::any_of(images_.begin(), images_.end(), [](const Word& w) { return w.empty(); });
}

std::size_t Endomorphism::total_image_length() const {
  std::size_t n = 0;
  for (const Word& w : images_) n += w.size();
  return n;
}

Word apply(const Endomorphism& phi, std::span<const Letter> w) {
  std::vector<Letter> stack;
  auto push = [&stack](Letter x) {
    if (!stack.empty() && stack.back() == -x) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  };
  for (Letter x : w) {
    if (!phi.basis().contains(x)) throw Error(Errc::BasisMismatch, "word letter outside the basis");
    const auto img = phi.image(generator_index(x)).letters();
    if (x > 0) {
      for (Letter y : img) push(y);
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) push(-*it);
    }
  }
  return Word::reduce(stack);
}

Word apply(const Endomorphism& phi, const Word& w) { return apply(phi, w.letters()); }

Endomorphism compose(const Endomorphism& phi, const Endomorphism& psi) {
  if (phi.basis() != psi.basis()) throw Error(Errc::BasisMismatch, "compose: bases differ");
  std::vector<Word> images;
  images.reserve(psi.images().size());
  for (const Word& w : psi.images()) images.push_back(apply(phi, w));
  return Endomorphism(phi.basis(), std::move(images));
}

Endomorphism power(const Endomorphism& phi, int k) {
  if (k < 0) throw Error(Errc::Precondition, "power: exponent must be nonnegative");
  Endomorphism out = Endomorphism::identity(phi.basis());
  for (int i = 0; i < k; ++i) out = compose(phi, out);
  return out;
}

std::string to_string(const Endomorphism& phi) {
  std::ostringstream os;
  os << "rank " << phi.rank() << '\n';
  for (int i = 0; i < phi.rank(); ++i) {
    os << letter_symbol(generator_letter(i)) << " -> " << to_string(phi.image(i)) << '\n';
  }
  return os.str();
}

}  // namespace freedyn
