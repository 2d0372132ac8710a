#include <algorithm>
#include <map>

#include "cf/algebra.hpp"
#include "cf/error.hpp"

namespace cf {

FreeKind parse_free_kind(const std::string& s) {
  if (s == "assoc_noncomm") return FreeKind::AssocNoncomm;
  if (s == "assoc_comm") return FreeKind::AssocComm;
  if (s == "lie") return FreeKind::Lie;
  throw ValidationError("invalid kind", "expected assoc_noncomm, assoc_comm or lie, got \"" + s + "\"");
}

std::string free_kind_name(FreeKind k) {
  switch (k) {
    case FreeKind::AssocNoncomm: return "assoc_noncomm";
    case FreeKind::AssocComm: return "assoc_comm";
    case FreeKind::Lie: return "lie";
  }
  return "";
}

namespace {

using Word = std::string;
using Poly = std::map<Word, Integer>;

std::vector<std::string> letter_names(Index rank) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (Index i = 0; i < rank; ++i) out.push_back(rank <= 4 ? small[i] : "x" + std::to_string(i + 1));
  return out;
}

bool by_degree(const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; }

void all_words(Index rank, std::size_t len, bool sorted_only, std::vector<Word>& out) {
  Word w(len, 'a');
  if (len == 0) {
    out.push_back(w);
    return;
  }
  for (;;) {
    bool ok = true;
    if (sorted_only)
      for (std::size_t i = 1; i < len && ok; ++i) ok = w[i - 1] <= w[i];
    if (ok) out.push_back(w);
    std::size_t p = len;
    while (p > 0) {
      --p;
      if (w[p] + 1 < 'a' + rank) {
        ++w[p];
        for (std::size_t q = p + 1; q < len; ++q) w[q] = 'a';
        break;
      }
      if (p == 0) return;
    }
  }
}

// Duval's generation of Lyndon words of length at most n in lexicographic order.
std::vector<Word> lyndon_words(Index rank, std::size_t n) {
  std::vector<Word> out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    Word s;
    for (int c : w) s.push_back(static_cast<char>('a' + c));
    out.push_back(s);
    const std::size_t m = w.size();
    while (w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == rank - 1) w.pop_back();
  }
  return out;
}

// Longest proper suffix that is again a Lyndon word.
std::size_t standard_split(const Word& w, const std::map<Word, Index>& lyndon) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (lyndon.count(w.substr(k))) return k;
  return w.size();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      Integer& c = out[u + v];
      c += x * y;
      if (c == 0) out.erase(u + v);
    }
  return out;
}

void poly_axpy(Poly& p, const Integer& s, const Poly& q) {
  for (const auto& [w, c] : q) {
    Integer& e = p[w];
    e += s * c;
    if (e == 0) p.erase(w);
  }
}

std::string lie_label(const Word& w, const std::map<Word, Index>& lyndon, const std::vector<std::string>& names) {
  if (w.size() == 1) return names[static_cast<std::size_t>(w[0] - 'a')];
  const std::size_t k = standard_split(w, lyndon);
  return "[" + lie_label(w.substr(0, k), lyndon, names) + "," + lie_label(w.substr(k), lyndon, names) + "]";
}

std::string monomial_label(const Word& w, bool commutative, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  if (!commutative) {
    for (char c : w) out += names[static_cast<std::size_t>(c - 'a')];
    return out;
  }
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    out += names[static_cast<std::size_t>(w[i] - 'a')];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace

FreeBasis free_basis(const FreeTruncationSpec& spec) {
  if (spec.rank < 1) throw ValidationError("invalid spec", "rank must be at least 1");
  if (spec.rank > 26) throw ValidationError("invalid spec", "rank must be at most 26");
  if (spec.degree_bound < 2) throw ValidationError("invalid spec", "degree_bound must be at least 2");
  const std::size_t top = static_cast<std::size_t>(spec.degree_bound - 1);
  const bool lie = spec.kind == FreeKind::Lie;
  const bool comm = spec.kind == FreeKind::AssocComm;
  const std::vector<std::string> names = letter_names(spec.rank);
  FreeBasis out;
  if (lie) {
    out.words = lyndon_words(spec.rank, top);
    std::sort(out.words.begin(), out.words.end(), by_degree);
  } else {
    for (std::size_t len = spec.unital ? 0 : 1; len <= top; ++len) all_words(spec.rank, len, comm, out.words);
  }
  std::map<Word, Index> lyndon;
  if (lie)
    for (std::size_t i = 0; i < out.words.size(); ++i) lyndon[out.words[i]] = static_cast<Index>(i);
  for (const Word& w : out.words) out.labels.push_back(lie ? lie_label(w, lyndon, names) : monomial_label(w, comm, names));
  out.graded_dims.assign(top, 0);
  for (const Word& w : out.words)
    if (!w.empty()) ++out.graded_dims[w.size() - 1];
  return out;
}

FreeTruncation truncated_free(const FreeTruncationSpec& spec) {
  const FreeBasis fb = free_basis(spec);
  const std::size_t top = static_cast<std::size_t>(spec.degree_bound - 1);
  const bool lie = spec.kind == FreeKind::Lie;
  const bool comm = spec.kind == FreeKind::AssocComm;
  const bool unital = spec.unital && !lie;
  const std::vector<Word>& basis = fb.words;
  std::map<Word, Index> lyndon;
  std::map<Word, Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<Index>(i);
  if (lie) lyndon = index;

  const Index n = static_cast<Index>(basis.size());
  FreeTruncation out;
  AlgebraPresentation& a = out.algebra;
  a.module = FgModule::free(spec.scalars, n);
  a.mult.assign(static_cast<std::size_t>(n), std::vector<Element>(static_cast<std::size_t>(n), a.module.zero()));
  a.flags.associative = !lie;
  a.flags.commutative = comm;
  a.flags.lie = lie;
  std::vector<int> degrees;
  for (const Word& w : basis) degrees.push_back(static_cast<int>(w.size()));
  a.flags.degrees = degrees;
  if (unital) a.flags.identity = unit_vector(n, index.at(""));
  a.labels = fb.labels;
  out.words = basis;
  out.graded_dims = fb.graded_dims;

  auto reduce_scalar = [&](Element& e) {
    for (Index k = 0; k < e.size(); ++k) e(k) = spec.scalars.reduce(e(k));
  };

  if (!lie) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        Word w = basis[static_cast<std::size_t>(i)] + basis[static_cast<std::size_t>(j)];
        if (w.size() > top) continue;
        if (comm) std::sort(w.begin(), w.end());
        a.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = unit_vector(n, index.at(w));
      }
    return out;
  }

  // Standard bracketing P_w expands as w plus lexicographically larger words of the same length.
  std::vector<Poly> expansion(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Word& w = basis[static_cast<std::size_t>(i)];
    if (w.size() == 1) {
      expansion[static_cast<std::size_t>(i)] = {{w, 1}};
      continue;
    }
    const std::size_t k = standard_split(w, lyndon);
    const Poly& u = expansion[static_cast<std::size_t>(index.at(w.substr(0, k)))];
    const Poly& v = expansion[static_cast<std::size_t>(index.at(w.substr(k)))];
    Poly p = poly_mul(u, v);
    poly_axpy(p, -1, poly_mul(v, u));
    expansion[static_cast<std::size_t>(i)] = p;
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const std::size_t len = basis[static_cast<std::size_t>(i)].size() + basis[static_cast<std::size_t>(j)].size();
      if (len > top) continue;
      const Poly& u = expansion[static_cast<std::size_t>(i)];
      const Poly& v = expansion[static_cast<std::size_t>(j)];
      Poly p = poly_mul(u, v);
      poly_axpy(p, -1, poly_mul(v, u));
      Element e = a.module.zero();
      while (!p.empty()) {
        const Word w = p.begin()->first;
        const Integer c = p.begin()->second;
        auto it = lyndon.find(w);
        if (it == lyndon.end()) throw std::logic_error("bracket reduction reached a non-Lyndon leading word");
        e(it->second) += c;
        poly_axpy(p, -c, expansion[static_cast<std::size_t>(it->second)]);
      }
      reduce_scalar(e);
      a.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
    }
  return out;
}

}  // namespace cf
