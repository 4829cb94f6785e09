#include "bubblescope/freegrp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bubblescope/error.hpp"

namespace bubblescope {

Word power(int gen, int exponent) {
  if (gen < 1) throw InvalidArgument("generator index must be >= 1");
  Word w;
  const int sign = exponent < 0 ? -1 : 1;
  for (int i = 0; i < std::abs(exponent); ++i) w.letters.push_back({gen, sign});
  return w;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

Word operator*(const Word& a, const Word& b) { return concat(a, b); }

Word inverse(const Word& w) {
  Word r;
  r.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back({it->gen, -it->sign});
  return r;
}

Word reduce(const Word& w) {
  Word r;
  r.letters.reserve(w.size());
  for (const Letter& l : w.letters) {
    if (!r.letters.empty() && r.letters.back().gen == l.gen && r.letters.back().sign == -l.sign)
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  return r;
}

bool is_reduced(const Word& w) noexcept {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w.letters[i].gen == w.letters[i - 1].gen && w.letters[i].sign == -w.letters[i - 1].sign)
      return false;
  return true;
}

CyclicReduction cyclic_reduce(const Word& w) {
  const Word r = reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r.letters[lo].gen == r.letters[hi - 1].gen &&
         r.letters[lo].sign == -r.letters[hi - 1].sign) {
    ++lo;
    --hi;
  }
  CyclicReduction c;
  c.conjugator.letters.assign(r.letters.begin(), r.letters.begin() + static_cast<std::ptrdiff_t>(lo));
  c.core.letters.assign(r.letters.begin() + static_cast<std::ptrdiff_t>(lo),
                        r.letters.begin() + static_cast<std::ptrdiff_t>(hi));
  return c;
}

bool is_rotation(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::vector<Letter> doubled = a.letters;
  doubled.insert(doubled.end(), a.letters.begin(), a.letters.end());
  return std::search(doubled.begin(), doubled.end(),
                     std::boyer_moore_horspool_searcher(b.letters.begin(), b.letters.end(),
                                                        [](const Letter& l) {
                                                          return std::hash<int>()(l.gen * 2 + (l.sign > 0));
                                                        })) != doubled.end();
}

bool conjugate_test(const Word& u, const Word& v) {
  return is_rotation(cyclic_reduce(u).core, cyclic_reduce(v).core);
}

namespace {

struct Token {
  char name;
  int index;
  int exponent;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::size_t i = 0;
    if (!std::isalpha(static_cast<unsigned char>(tok[i])))
      throw InvalidArgument("bad word token '" + tok + "'");
    Token t{tok[i++], 1, 1};
    std::size_t start = i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    if (i > start) t.index = std::stoi(tok.substr(start, i - start));
    if (t.index < 1) throw InvalidArgument("generator index must be >= 1 in '" + tok + "'");
    if (i < tok.size()) {
      if (tok[i] != '^' || i + 1 == tok.size()) throw InvalidArgument("bad exponent in '" + tok + "'");
      std::size_t used = 0;
      try {
        t.exponent = std::stoi(tok.substr(i + 1), &used);
      } catch (const std::exception&) {
        throw InvalidArgument("bad exponent in '" + tok + "'");
      }
      if (i + 1 + used != tok.size()) throw InvalidArgument("bad exponent in '" + tok + "'");
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace

Word parse_word(const std::string& text) {
  Word w;
  for (const Token& t : tokenize(text)) w = concat(w, power(t.index, t.exponent));
  return w;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w.letters[j] == w.letters[i]) ++j;
    const int e = static_cast<int>(j - i) * w.letters[i].sign;
    if (!first) out << ' ';
    first = false;
    out << 'a' << w.letters[i].gen;
    if (e != 1) out << '^' << e;
    i = j;
  }
  return out.str();
}

SurfaceWord parse_surface_word(const std::string& text, int genus) {
  SurfaceWord s{genus, {}};
  for (const Token& t : tokenize(text)) {
    if (t.name != 'a' && t.name != 'b') throw InvalidArgument("surface generators are a<i>, b<i>");
    if (t.index > genus) throw InvalidArgument("generator index exceeds the genus");
    const int gen = t.name == 'a' ? 2 * t.index - 1 : 2 * t.index;
    s.word = concat(s.word, power(gen, t.exponent));
  }
  return s;
}

SurfaceWord surface_a(int i, int genus) {
  if (i < 1 || i > genus) throw InvalidArgument("surface generator index out of range");
  return {genus, power(2 * i - 1, 1)};
}

SurfaceWord surface_b(int i, int genus) {
  if (i < 1 || i > genus) throw InvalidArgument("surface generator index out of range");
  return {genus, power(2 * i, 1)};
}

SurfaceWord operator*(const SurfaceWord& a, const SurfaceWord& b) {
  if (a.genus != b.genus) throw InvalidArgument("surface words of different genus");
  return {a.genus, concat(a.word, b.word)};
}

SurfaceWord surface_relator(int genus) {
  if (genus < 1) throw InvalidArgument("genus must be >= 1");
  SurfaceWord s{genus, {}};
  for (int i = 1; i <= genus; ++i) {
    const Word a = power(2 * i - 1, 1), b = power(2 * i, 1);
    s.word = s.word * a * b * inverse(a) * inverse(b);
  }
  return s;
}

Word tau(const SurfaceWord& w) {
  Word out;
  for (const Letter& l : w.word.letters) {
    if (l.gen > 2 * w.genus) throw InvalidArgument("surface generator index exceeds 2g");
    if (l.gen % 2 == 1) out.letters.push_back({(l.gen + 1) / 2, l.sign});
  }
  return reduce(out);
}

std::vector<FamilyMember> decomposition_family(int k, int ell_min, int ell_max) {
  if (k < 2) throw InvalidArgument("decomposition_family needs k >= 2");
  std::vector<FamilyMember> out;
  for (int ell = ell_min; ell <= ell_max; ++ell) {
    FamilyMember m;
    m.k = k;
    m.ell = ell;
    m.word = reduce(power(1, 1) * power(2, -ell) * power(1, k - 1) * power(2, ell));
    m.conjugators.push_back(Word{});
    for (int i = 2; i <= k; ++i) m.conjugators.push_back(power(2, -ell));
    out.push_back(std::move(m));
  }
  return out;
}

Word witness_product(const FamilyMember& member) {
  Word w;
  const Word a1 = power(1, 1);
  for (const Word& b : member.conjugators) w = w * b * a1 * inverse(b);
  return reduce(w);
}

bool abelian_decomposition_check(const std::vector<long>& total,
                                 const std::vector<std::vector<long>>& parts) {
  std::vector<long> sum(total.size(), 0);
  for (const auto& p : parts) {
    if (p.size() != total.size()) throw InvalidArgument("tuple arity mismatch");
    for (std::size_t i = 0; i < p.size(); ++i) sum[i] += p[i];
  }
  return sum == total;
}

std::vector<Word> enumerate_reduced_words(int gens, int max_len) {
  std::vector<Word> all{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = all.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int g = 1; g <= gens; ++g)
        for (int s : {1, -1}) {
          const Word& w = all[i];
          if (!w.empty() && w.letters.back().gen == g && w.letters.back().sign == -s) continue;
          Word x = w;
          x.letters.push_back({g, s});
          all.push_back(std::move(x));
        }
    begin = end;
  }
  return all;
}

bool conjugate_bruteforce(const Word& u, const Word& v, int gens, int max_len) {
  const Word target = reduce(v);
  for (const Word& w : enumerate_reduced_words(gens, max_len))
    if (reduce(w * u * inverse(w)) == target) return true;
  return false;
}

Word random_reduced_word(int gens, int length, Philox& rng) {
  Word w;
  while (static_cast<int>(w.size()) < length) {
    const int g = 1 + static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(gens));
    const int s = (rng.next_u32() & 1u) ? 1 : -1;
    if (!w.empty() && w.letters.back().gen == g && w.letters.back().sign == -s) continue;
    w.letters.push_back({g, s});
  }
  return w;
}

}  // namespace bubblescope
