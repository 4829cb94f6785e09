#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bubblescope/random.hpp"

namespace bubblescope {

/// Generator index >= 1 with exponent sign +1 or -1.
struct Letter {
  int gen = 1;
  int sign = 1;
  bool operator==(const Letter& o) const noexcept { return gen == o.gen && sign == o.sign; }
  bool operator<(const Letter& o) const noexcept {
    return gen != o.gen ? gen < o.gen : sign < o.sign;
  }
};

struct Word {
  std::vector<Letter> letters;

  [[nodiscard]] std::size_t size() const noexcept { return letters.size(); }
  [[nodiscard]] bool empty() const noexcept { return letters.empty(); }
  bool operator==(const Word& o) const noexcept { return letters == o.letters; }
  bool operator<(const Word& o) const noexcept { return letters < o.letters; }
};

/// g^power as a word (power may be negative or zero).
[[nodiscard]] Word power(int gen, int exponent);
/// Concatenation without reduction.
[[nodiscard]] Word concat(const Word& a, const Word& b);
[[nodiscard]] Word operator*(const Word& a, const Word& b);
[[nodiscard]] Word inverse(const Word& w);

/// Free reduction (stack based).
[[nodiscard]] Word reduce(const Word& w);
[[nodiscard]] bool is_reduced(const Word& w) noexcept;

struct CyclicReduction {
  Word core;
  Word conjugator;
};
/// w = conjugator * core * conjugator^{-1} in the free group, core cyclically reduced.
[[nodiscard]] CyclicReduction cyclic_reduce(const Word& w);

/// True iff b is a cyclic rotation of a (doubled-word search).
[[nodiscard]] bool is_rotation(const Word& a, const Word& b);

/// Conjugacy in the free group.
[[nodiscard]] bool conjugate_test(const Word& u, const Word& v);

/// Parses whitespace-separated tokens `name[^exp]`, where name is a letter
/// followed by a positive index ("a1", "b2^-1"). Free-group words use the
/// index as the generator; `x` without an index means generator 1.
[[nodiscard]] Word parse_word(const std::string& text);
[[nodiscard]] std::string to_string(const Word& w);

/// Word over a_1, b_1, ..., a_g, b_g; a_i is generator 2i-1 and b_i is 2i.
struct SurfaceWord {
  int genus = 1;
  Word word;
};

/// Parses tokens a<i>, b<i> with optional exponents.
[[nodiscard]] SurfaceWord parse_surface_word(const std::string& text, int genus);
/// [a_1, b_1] ... [a_g, b_g] with [a, b] = a b a^{-1} b^{-1}.
[[nodiscard]] SurfaceWord surface_relator(int genus);
[[nodiscard]] SurfaceWord surface_a(int i, int genus);
[[nodiscard]] SurfaceWord surface_b(int i, int genus);
[[nodiscard]] SurfaceWord operator*(const SurfaceWord& a, const SurfaceWord& b);

/// a_i -> alpha_i, b_i -> 1, reduced.
[[nodiscard]] Word tau(const SurfaceWord& w);

struct FamilyMember {
  int k = 2;
  int ell = 0;
  /// a1 a2^{-ell} a1^{k-1} a2^{ell}, reduced.
  Word word;
  /// beta_1..beta_k with word = prod beta_i a1 beta_i^{-1}.
  std::vector<Word> conjugators;
};

[[nodiscard]] std::vector<FamilyMember> decomposition_family(int k, int ell_min, int ell_max);

/// Product of beta_i a1 beta_i^{-1}, reduced; equals member.word when the witness is valid.
[[nodiscard]] Word witness_product(const FamilyMember& member);

/// Componentwise sum of parts equals total. Throws on arity mismatch.
[[nodiscard]] bool abelian_decomposition_check(const std::vector<long>& total,
                                               const std::vector<std::vector<long>>& parts);

/// All reduced words of length <= max_len over generators 1..gens, in
/// shortlex order.
[[nodiscard]] std::vector<Word> enumerate_reduced_words(int gens, int max_len);

/// Exhaustive search for w with |w| <= max_len and reduce(w u w^{-1}) = reduce(v).
[[nodiscard]] bool conjugate_bruteforce(const Word& u, const Word& v, int gens, int max_len);

/// Uniform random reduced word of the given length.
[[nodiscard]] Word random_reduced_word(int gens, int length, Philox& rng);

}  // namespace bubblescope
