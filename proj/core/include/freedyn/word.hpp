#pragma once

// Exact word algebra in a free group F_n: freely reduced words, cyclic
// conjugacy-class representatives, and endomorphisms given by generator
// images.
//
// Generators are the first n lowercase letters; the uppercase letter denotes
// the inverse.  Internally a letter is a signed integer: generator i is
// +(i+1) and its inverse is -(i+1).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freedyn {

using Letter = std::int32_t;

constexpr Letter inverse(Letter x) noexcept { return -x; }
constexpr int generator_index(Letter x) noexcept { return (x > 0 ? x : -x) - 1; }
constexpr Letter generator_letter(int i) noexcept { return static_cast<Letter>(i + 1); }

// Position in the total order a < A < b < B < ...
constexpr int letter_rank(Letter x) noexcept { return 2 * generator_index(x) + (x < 0 ? 1 : 0); }

char letter_symbol(Letter x) noexcept;

class Basis {
 public:
  static constexpr int kMaxRank = 26;

  explicit Basis(int rank);

  int rank() const noexcept { return rank_; }
  bool contains(Letter x) const noexcept { return x != 0 && generator_index(x) < rank_; }

  // Parses one symbol; throws Errc::UnknownLetter outside the alphabet.
  Letter letter(char symbol) const;

  // a, A, b, B, ... in letter_rank order.
  std::vector<Letter> alphabet() const;

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  int rank_;
};

// A freely reduced word.  The empty word is the identity.
class Word {
 public:
  Word() = default;

  // Freely reduces an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw);
  static Word generator(int i) { return Word(std::vector<Letter>{generator_letter(i)}); }

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word prefix(std::size_t n) const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;
  // Shortlex under a < A < b < B < ...
  friend std::strong_ordering operator<=>(const Word& u, const Word& v);

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}

  std::vector<Letter> letters_;
};

// Parses and freely reduces a word such as "abBA"; "1" and "" are the
// identity.  Throws Errc::UnknownLetter for symbols outside the basis.
Word reduce(std::string_view raw, const Basis& basis);

std::string to_string(const Word& w);

// Length of the longest common prefix.
std::size_t common_prefix_length(std::span<const Letter> u, std::span<const Letter> v);

// Cyclically reduced word stored in its least rotation under a < A < b < B,
// so equality is equality of conjugacy classes.  [g] and [g^-1] are distinct.
class CyclicWord {
 public:
  CyclicWord() = default;

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  // Some representative of the class as a Word (the stored rotation).
  Word word() const;
  CyclicWord inverse() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend std::strong_ordering operator<=>(const CyclicWord& u, const CyclicWord& v);

  friend CyclicWord cyclic_reduce(const Word& w);

 private:
  std::vector<Letter> letters_;
};

CyclicWord cyclic_reduce(const Word& w);
std::string to_string(const CyclicWord& w);

class Endomorphism {
 public:
  Endomorphism(Basis basis, std::vector<Word> images);

  static Endomorphism identity(Basis basis);

  const Basis& basis() const noexcept { return basis_; }
  int rank() const noexcept { return basis_.rank(); }
  const std::vector<Word>& images() const noexcept { return images_; }
  const Word& image(int i) const { return images_.at(static_cast<std::size_t>(i)); }

  bool has_trivial_image() const;
  std::size_t total_image_length() const;

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  Basis basis_;
  std::vector<Word> images_;
};

Word apply(const Endomorphism& phi, const Word& w);
Word apply(const Endomorphism& phi, std::span<const Letter> w);

// (phi o psi)(x) = phi(psi(x)).  Throws Errc::BasisMismatch.
Endomorphism compose(const Endomorphism& phi, const Endomorphism& psi);
Endomorphism power(const Endomorphism& phi, int k);

std::string to_string(const Endomorphism& phi);

}  // namespace freedyn
