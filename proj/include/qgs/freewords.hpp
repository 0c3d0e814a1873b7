#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qgs::freewords {

enum class Role : char { B = 'b', X = 'x', A = 'a', Other = 'o' };

/// Interning tables for one symbolic computation.
///
/// A primitive is an atom (a mean-zero element of one factor algebra) or
/// Gen(s), the generator applied to the circled string s. A string is a
/// nonempty run of primitives from one algebra; the letter L(s) = s - phi(s)
/// is its circled version. phi of a single primitive is 0, so only strings
/// of length >= 2 carry a phi-symbol.
class Calculus {
 public:
  int atom(const std::string& name, int algebra, Role role = Role::Other, bool starred = false);
  int gen(int string_id);
  int string_of(const std::vector<int>& primitives);

  int algebra_of_string(int s) const { return strings_[static_cast<std::size_t>(s)].algebra; }
  const std::vector<int>& primitives(int s) const { return strings_[static_cast<std::size_t>(s)].prims; }
  bool has_phi(int s) const { return primitives(s).size() >= 2; }
  /// True if the string mentions an atom of the given role, looking inside Gen.
  bool mentions(int s, Role role) const;
  /// String id of s*, reversing order and starring every primitive.
  int star_string(int s);

  std::string render_string(int s) const;

 private:
  struct Prim {
    bool is_gen = false;
    std::string name;
    int algebra = 0;
    Role role = Role::Other;
    bool starred = false;
    int inner = -1;  // string id for Gen
  };
  struct Str {
    std::vector<int> prims;
    int algebra = 0;
  };
  int star_prim(int p);
  std::string render_prim(int p) const;

  std::vector<Prim> prims_;
  std::map<std::tuple<bool, std::string, int, char, bool, int>, int> prim_index_;
  std::vector<Str> strings_;
  std::map<std::vector<int>, int> string_index_;
  std::map<int, int> star_cache_;
};

/// Reduced word: letters L(s_1)...L(s_r) with neighbouring algebras distinct.
using Word = std::vector<int>;
/// Product of phi-symbols, as sorted string ids.
using Monomial = std::vector<int>;

/// Shorter words first, then ids; ids are assigned in a deterministic
/// interning order, so the normal form is unique within one Calculus.
struct TermOrder {
  bool operator()(const std::pair<Word, Monomial>& x, const std::pair<Word, Monomial>& y) const;
};

/// Formal linear combination of (phi-monomial) x (reduced word) with integer coefficients.
class Expr {
 public:
  void add(const Word& w, const Monomial& m, std::int64_t c);
  void add(const Expr& other, std::int64_t scale = 1);
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const auto& terms() const { return terms_; }
  bool operator==(const Expr& other) const { return terms_ == other.terms_; }

 private:
  std::map<std::pair<Word, Monomial>, std::int64_t, TermOrder> terms_;
};

Expr unit();
/// A reduced word of atoms, one letter per atom. Throws DomainError if two
/// neighbouring atoms share an algebra.
Expr word_of_atoms(Calculus& calc, const std::vector<int>& atoms);
Expr multiply(Calculus& calc, const Expr& x, const Expr& y);
/// b x a, expanded at every same-algebra junction.
Expr reduce_product(Calculus& calc, const std::vector<int>& b, const std::vector<int>& x, const std::vector<int>& a);
/// Leibniz: Delta(L(s_1)...L(s_r)) = sum_i ... L(Gen(s_i)) ..., Delta(1) = 0.
Expr apply_generator(Calculus& calc, const Expr& e);
/// Reverses words and strings and stars every primitive and phi-symbol.
Expr adjoint(Calculus& calc, const Expr& e);
std::vector<int> adjoint_atoms(Calculus& calc, const std::vector<int>& atoms);

struct PsiParts {
  Expr part[4];  // b D(xa), -D(bxa), -b D(x) a, D(bx) a
  Expr total;
};

/// b Delta(x a) - Delta(b x a) - b Delta(x) a + Delta(b x) a.
PsiParts psi_map(Calculus& calc, const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& x);

/// Terms split by whether the word carries x-material.
struct Split {
  Expr with_x, without_x;
};
Split split_by_x(const Calculus& calc, const Expr& e);

struct Pattern {
  std::vector<int> b, x, a;  // algebra index per letter
};

struct Ledger {
  Expr part[4];     // x-free words contributed by each of the four Psi terms
  Expr remainder;   // x-free part of LHS - main sum
  std::size_t max_word_length = 0;
};

struct IdentityCheck {
  Pattern pattern;
  std::size_t lhs_terms = 0;
  std::size_t main_terms = 0;
  std::size_t main_indices = 0;   // number of i contributing to the main sum
  std::size_t residual_terms = 0;
  std::size_t ledger_terms = 0;
  std::size_t max_ledger_length = 0;
  bool lhs_zero = false;
  bool pass = false;
};

struct IdentityDetail {
  IdentityCheck check;
  Calculus calc;
  std::vector<int> b, x, a;  // atom ids
  PsiParts lhs;
  Expr main;
  Expr residual;
  Ledger ledger;
};

struct PatternLimits {
  unsigned n_max = 4, m_max = 3, k_max = 3;
  unsigned algebras = 3;
};

/// Full symbolic comparison of Psi(x) with its main sum plus finite-rank remainder.
IdentityDetail verify_identity_detail(const Pattern& pattern, const PatternLimits& limits = {});
IdentityCheck verify_identity_57(const Pattern& pattern, const PatternLimits& limits = {});

/// Every type pattern with 1 <= n <= n_max and 0 <= m, k <= max over the given
/// number of algebras, neighbours within each word distinct.
std::vector<Pattern> enumerate_patterns(const PatternLimits& limits);

struct SweepReport {
  std::size_t patterns = 0;
  std::size_t passed = 0;
  std::size_t residual_failures = 0;
  std::size_t length_failures = 0;
  std::size_t long_patterns = 0;       // n > k + m - 1
  std::size_t long_nonzero = 0;        // of those, Psi(x) not identically zero
  std::size_t long_nonzero_x = 0;      // of those, Psi(x) with x-bearing words
  std::size_t max_ledger_length_excess = 0;
  std::vector<IdentityCheck> failures;  // first few failing cells
};

SweepReport verify_all(const PatternLimits& limits, unsigned threads = 1);

/// 2 ledger_hs + 2 (k+m-1)^2 K^{m+k} C^{2m} D^{2k} max_i per_algebra_hs[i].
double hs_propagation_bound(const std::map<int, double>& per_algebra_hs, double K, double C, double D, unsigned m,
                            unsigned k, double ledger_hs);

std::string render(const Calculus& calc, const Expr& e);
std::string render_pattern(const Pattern& p);

}  // namespace qgs::freewords
