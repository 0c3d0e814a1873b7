#include "qgs/freewords.hpp"

#include "qgs/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>
#include <tuple>

namespace qgs::freewords {

// ---------------------------------------------------------------- Calculus

int Calculus::atom(const std::string& name, int algebra, Role role, bool starred) {
  auto key = std::make_tuple(false, name, algebra, static_cast<char>(role), starred, -1);
  if (auto it = prim_index_.find(key); it != prim_index_.end()) return it->second;
  int id = static_cast<int>(prims_.size());
  prims_.push_back({false, name, algebra, role, starred, -1});
  prim_index_.emplace(key, id);
  return id;
}

int Calculus::gen(int string_id) {
  int algebra = algebra_of_string(string_id);
  auto key = std::make_tuple(true, std::string(), algebra, static_cast<char>(Role::Other), false, string_id);
  if (auto it = prim_index_.find(key); it != prim_index_.end()) return it->second;
  int id = static_cast<int>(prims_.size());
  prims_.push_back({true, "", algebra, Role::Other, false, string_id});
  prim_index_.emplace(key, id);
  return id;
}

int Calculus::string_of(const std::vector<int>& primitives) {
  if (primitives.empty()) throw DomainError("empty string");
  if (auto it = string_index_.find(primitives); it != string_index_.end()) return it->second;
  int algebra = prims_[static_cast<std::size_t>(primitives.front())].algebra;
  for (int p : primitives)
    if (prims_[static_cast<std::size_t>(p)].algebra != algebra)
      throw ConsistencyError("string mixes algebras");
  int id = static_cast<int>(strings_.size());
  strings_.push_back({primitives, algebra});
  string_index_.emplace(primitives, id);
  return id;
}

bool Calculus::mentions(int s, Role role) const {
  for (int p : primitives(s)) {
    const Prim& pr = prims_[static_cast<std::size_t>(p)];
    if (pr.is_gen ? mentions(pr.inner, role) : pr.role == role) return true;
  }
  return false;
}

int Calculus::star_prim(int p) {
  Prim pr = prims_[static_cast<std::size_t>(p)];
  if (pr.is_gen) return gen(star_string(pr.inner));
  return atom(pr.name, pr.algebra, pr.role, !pr.starred);
}

int Calculus::star_string(int s) {
  if (auto it = star_cache_.find(s); it != star_cache_.end()) return it->second;
  std::vector<int> ps = primitives(s);
  std::reverse(ps.begin(), ps.end());
  for (int& p : ps) p = star_prim(p);
  int r = string_of(ps);
  star_cache_[s] = r;
  star_cache_[r] = s;
  return r;
}

std::string Calculus::render_prim(int p) const {
  const Prim& pr = prims_[static_cast<std::size_t>(p)];
  if (!pr.is_gen) return pr.starred ? pr.name + "*" : pr.name;
  std::string out = "D[";
  const auto& inner = primitives(pr.inner);
  for (std::size_t i = 0; i < inner.size(); ++i) out += (i ? " " : "") + render_prim(inner[i]);
  return out + "]";
}

std::string Calculus::render_string(int s) const {
  const auto& ps = primitives(s);
  if (ps.size() == 1) return render_prim(ps[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ' ';
    out += render_prim(ps[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------- Expr

bool TermOrder::operator()(const std::pair<Word, Monomial>& x, const std::pair<Word, Monomial>& y) const {
  if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
  if (x.first != y.first) return x.first < y.first;
  if (x.second.size() != y.second.size()) return x.second.size() < y.second.size();
  return x.second < y.second;
}

void Expr::add(const Word& w, const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({w, m}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Expr::add(const Expr& other, std::int64_t scale) {
  for (const auto& [key, c] : other.terms_) add(key.first, key.second, c * scale);
}

Expr unit() {
  Expr e;
  e.add({}, {}, 1);
  return e;
}

namespace {

Monomial merge(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Word concat(const Word& a, std::size_t a_len, const Word& b, std::size_t b_from) {
  Word r(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(a_len));
  r.insert(r.end(), b.begin() + static_cast<std::ptrdiff_t>(b_from), b.end());
  return r;
}

// Adds c * m * (u v) in reduced form. At a same-algebra junction,
// L(s)L(t) = L(st) - phi(t)L(s) - phi(s)L(t) + (phi(st) - phi(s)phi(t)),
// and the scalar part recurses into the shortened words.
void mult_words(Calculus& calc, const Word& u, const Word& v, const Monomial& m, std::int64_t c, Expr& out) {
  if (u.empty() || v.empty() || calc.algebra_of_string(u.back()) != calc.algebra_of_string(v.front())) {
    out.add(concat(u, u.size(), v, 0), m, c);
    return;
  }
  const int s = u.back(), t = v.front();
  std::vector<int> st = calc.primitives(s);
  const auto& tp = calc.primitives(t);
  st.insert(st.end(), tp.begin(), tp.end());
  const int fused = calc.string_of(st);

  Word w = concat(u, u.size() - 1, v, 0);
  w[u.size() - 1] = fused;
  out.add(w, m, c);
  if (calc.has_phi(t)) out.add(concat(u, u.size(), v, 1), merge(m, {t}), -c);
  if (calc.has_phi(s)) out.add(concat(u, u.size() - 1, v, 0), merge(m, {s}), -c);

  Word u2(u.begin(), u.end() - 1), v2(v.begin() + 1, v.end());
  mult_words(calc, u2, v2, merge(m, {fused}), c, out);
  if (calc.has_phi(s) && calc.has_phi(t)) mult_words(calc, u2, v2, merge(m, merge({s}, {t})), -c, out);
}

}  // namespace

Expr word_of_atoms(Calculus& calc, const std::vector<int>& atoms) {
  Word w;
  for (int a : atoms) {
    int s = calc.string_of({a});
    if (!w.empty() && calc.algebra_of_string(w.back()) == calc.algebra_of_string(s))
      throw DomainError("word is not reduced: neighbouring letters share an algebra");
    w.push_back(s);
  }
  Expr e;
  e.add(w, {}, 1);
  return e;
}

Expr multiply(Calculus& calc, const Expr& x, const Expr& y) {
  Expr out;
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) mult_words(calc, kx.first, ky.first, merge(kx.second, ky.second), cx * cy, out);
  return out;
}

Expr reduce_product(Calculus& calc, const std::vector<int>& b, const std::vector<int>& x, const std::vector<int>& a) {
  return multiply(calc, multiply(calc, word_of_atoms(calc, b), word_of_atoms(calc, x)), word_of_atoms(calc, a));
}

Expr apply_generator(Calculus& calc, const Expr& e) {
  Expr out;
  for (const auto& [key, c] : e.terms()) {
    const Word& w = key.first;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Word v = w;
      v[i] = calc.string_of({calc.gen(w[i])});
      out.add(v, key.second, c);
    }
  }
  return out;
}

Expr adjoint(Calculus& calc, const Expr& e) {
  Expr out;
  for (const auto& [key, c] : e.terms()) {
    Word w(key.first.rbegin(), key.first.rend());
    for (int& s : w) s = calc.star_string(s);
    Monomial m = key.second;
    for (int& s : m) s = calc.star_string(s);
    std::sort(m.begin(), m.end());
    out.add(w, m, c);
  }
  return out;
}

std::vector<int> adjoint_atoms(Calculus& calc, const std::vector<int>& atoms) {
  std::vector<int> out;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) out.push_back(calc.primitives(calc.star_string(calc.string_of({*it})))[0]);
  return out;
}

PsiParts psi_map(Calculus& calc, const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& x) {
  Expr A = word_of_atoms(calc, a), B = word_of_atoms(calc, b), X = word_of_atoms(calc, x);
  PsiParts p;
  p.part[0] = multiply(calc, B, apply_generator(calc, multiply(calc, X, A)));
  p.part[1].add(apply_generator(calc, multiply(calc, multiply(calc, B, X), A)), -1);
  p.part[2].add(multiply(calc, multiply(calc, B, apply_generator(calc, X)), A), -1);
  p.part[3] = multiply(calc, apply_generator(calc, multiply(calc, B, X)), A);
  for (const auto& e : p.part) p.total.add(e);
  return p;
}

Split split_by_x(const Calculus& calc, const Expr& e) {
  Split s;
  for (const auto& [key, c] : e.terms()) {
    bool has_x = std::any_of(key.first.begin(), key.first.end(), [&](int str) { return calc.mentions(str, Role::X); });
    (has_x ? s.with_x : s.without_x).add(key.first, key.second, c);
  }
  return s;
}

// ---------------------------------------------------------------- identity

namespace {

void check_pattern(const Pattern& p, const PatternLimits& limits) {
  if (p.x.size() > limits.n_max || p.a.size() > limits.m_max || p.b.size() > limits.k_max)
    throw ResourceError("pattern " + render_pattern(p) + " exceeds the configured word-length limits");
  for (const auto* w : {&p.b, &p.x, &p.a}) {
    for (std::size_t i = 0; i < w->size(); ++i) {
      int alg = (*w)[i];
      if (alg < 0 || static_cast<unsigned>(alg) >= limits.algebras)
        throw DomainError("pattern uses an algebra index outside the configured range");
      if (i && (*w)[i - 1] == alg) throw DomainError("pattern word is not reduced");
    }
  }
}

std::vector<int> make_atoms(Calculus& calc, const std::vector<int>& algebras, char prefix, Role role) {
  std::vector<int> out;
  for (std::size_t i = 0; i < algebras.size(); ++i)
    out.push_back(calc.atom(std::string(1, prefix) + std::to_string(i + 1), algebras[i], role));
  return out;
}

std::size_t max_length(const Expr& e) {
  std::size_t r = 0;
  for (const auto& [key, c] : e.terms()) r = std::max(r, key.first.size());
  return r;
}

}  // namespace

IdentityDetail verify_identity_detail(const Pattern& pattern, const PatternLimits& limits) {
  check_pattern(pattern, limits);
  IdentityDetail d;
  Calculus& calc = d.calc;
  d.b = make_atoms(calc, pattern.b, 'b', Role::B);
  d.x = make_atoms(calc, pattern.x, 'x', Role::X);
  d.a = make_atoms(calc, pattern.a, 'a', Role::A);
  d.lhs = psi_map(calc, d.a, d.b, d.x);

  const long n = static_cast<long>(d.x.size()), m = static_cast<long>(d.a.size()), k = static_cast<long>(d.b.size());
  // 1-based accessors into the three words
  auto B = [&](long j) { return d.b[static_cast<std::size_t>(j - 1)]; };
  auto X = [&](long j) { return d.x[static_cast<std::size_t>(j - 1)]; };
  auto A = [&](long j) { return d.a[static_cast<std::size_t>(j - 1)]; };
  auto alg = [&](std::vector<int> const& w, long j) { return w[static_cast<std::size_t>(j - 1)]; };

  for (long i = std::max(1L, n - m + 1); i <= std::min(n, k); ++i) {
    const int ai = alg(pattern.x, i);
    if (alg(pattern.b, k - i + 1) != ai || alg(pattern.a, n - i + 1) != ai) continue;
    Monomial pre;
    bool vanishes = false;
    for (long j = 1; j < i && !vanishes; ++j) {
      if (alg(pattern.b, k - j + 1) != alg(pattern.x, j)) vanishes = true;
      else pre.push_back(calc.string_of({B(k - j + 1), X(j)}));
    }
    for (long j = i + 1; j <= n && !vanishes; ++j) {
      if (alg(pattern.x, j) != alg(pattern.a, n - j + 1)) vanishes = true;
      else pre.push_back(calc.string_of({X(j), A(n - j + 1)}));
    }
    if (vanishes) continue;
    std::sort(pre.begin(), pre.end());
    ++d.check.main_indices;

    const int bp = B(k - i + 1), xp = X(i), ap = A(n - i + 1);
    const int psi_letters[4] = {
        calc.string_of({bp, calc.gen(calc.string_of({xp, ap}))}),
        calc.string_of({calc.gen(calc.string_of({bp, xp, ap}))}),
        calc.string_of({bp, calc.gen(calc.string_of({xp})), ap}),
        calc.string_of({calc.gen(calc.string_of({bp, xp})), ap}),
    };
    const int signs[4] = {1, -1, -1, 1};
    Word left, right;
    for (long j = 1; j <= k - i; ++j) left.push_back(calc.string_of({B(j)}));
    for (long j = n - i + 2; j <= m; ++j) right.push_back(calc.string_of({A(j)}));
    for (int t = 0; t < 4; ++t) {
      Word w = left;
      w.push_back(psi_letters[t]);
      w.insert(w.end(), right.begin(), right.end());
      d.main.add(w, pre, signs[t]);
    }
  }

  Split total = split_by_x(calc, d.lhs.total);
  d.residual = total.with_x;
  d.residual.add(d.main, -1);
  for (int t = 0; t < 4; ++t) d.ledger.part[t] = split_by_x(calc, d.lhs.part[t]).without_x;
  d.ledger.remainder = total.without_x;
  d.ledger.max_word_length = max_length(d.ledger.remainder);
  for (const auto& p : d.ledger.part) d.ledger.max_word_length = std::max(d.ledger.max_word_length, max_length(p));

  IdentityCheck& c = d.check;
  c.pattern = pattern;
  c.lhs_terms = d.lhs.total.size();
  c.main_terms = d.main.size();
  c.residual_terms = d.residual.size();
  c.ledger_terms = d.ledger.remainder.size();
  c.max_ledger_length = d.ledger.max_word_length;
  c.lhs_zero = d.lhs.total.empty();
  c.pass = d.residual.empty() && c.max_ledger_length <= static_cast<std::size_t>(m + k);
  return d;
}

IdentityCheck verify_identity_57(const Pattern& pattern, const PatternLimits& limits) {
  return verify_identity_detail(pattern, limits).check;
}

std::vector<Pattern> enumerate_patterns(const PatternLimits& limits) {
  const int r = static_cast<int>(limits.algebras);
  // reduced type sequences of each length, in lexicographic order
  std::vector<std::vector<std::vector<int>>> words(std::max({limits.n_max, limits.m_max, limits.k_max}) + 1);
  words[0] = {{}};
  for (std::size_t len = 1; len < words.size(); ++len)
    for (const auto& w : words[len - 1])
      for (int c = 0; c < r; ++c)
        if (w.empty() || w.back() != c) {
          auto v = w;
          v.push_back(c);
          words[len].push_back(v);
        }
  std::vector<Pattern> out;
  for (unsigned n = 1; n <= limits.n_max; ++n)
    for (unsigned m = 0; m <= limits.m_max; ++m)
      for (unsigned k = 0; k <= limits.k_max; ++k)
        for (const auto& x : words[n])
          for (const auto& a : words[m])
            for (const auto& b : words[k]) out.push_back({b, x, a});
  return out;
}

SweepReport verify_all(const PatternLimits& limits, unsigned threads) {
  std::vector<Pattern> patterns = enumerate_patterns(limits);
  std::vector<IdentityCheck> checks(patterns.size());
  std::vector<unsigned char> long_nonzero_x(patterns.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < patterns.size(); i = next++) {
      IdentityDetail d = verify_identity_detail(patterns[i], limits);
      checks[i] = d.check;
      long_nonzero_x[i] = !split_by_x(d.calc, d.lhs.total).with_x.empty();
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepReport rep;
  rep.patterns = patterns.size();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const IdentityCheck& c = checks[i];
    const std::size_t n = c.pattern.x.size(), m = c.pattern.a.size(), k = c.pattern.b.size();
    if (c.pass) ++rep.passed;
    if (c.residual_terms) ++rep.residual_failures;
    if (c.max_ledger_length > m + k) {
      ++rep.length_failures;
      rep.max_ledger_length_excess = std::max(rep.max_ledger_length_excess, c.max_ledger_length - (m + k));
    }
    if (n + 1 > m + k) {
      ++rep.long_patterns;
      if (!c.lhs_zero) ++rep.long_nonzero;
      if (long_nonzero_x[i]) ++rep.long_nonzero_x;
    }
    if (!c.pass && rep.failures.size() < 10) rep.failures.push_back(c);
  }
  return rep;
}

double hs_propagation_bound(const std::map<int, double>& per_algebra_hs, double K, double C, double D, unsigned m,
                            unsigned k, double ledger_hs) {
  if (K < 0 || C < 0 || D < 0 || ledger_hs < 0) throw DomainError("hs_propagation_bound needs nonnegative inputs");
  double mx = 0;
  for (const auto& [alg, v] : per_algebra_hs) {
    if (v < 0) throw DomainError("hs_propagation_bound needs nonnegative inputs");
    mx = std::max(mx, v);
  }
  const double len = static_cast<double>(k + m) - 1.0;
  return 2.0 * ledger_hs + 2.0 * len * len * std::pow(K, m + k) * std::pow(C, 2.0 * m) * std::pow(D, 2.0 * k) * mx;
}

std::string render(const Calculus& calc, const Expr& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : e.terms()) {
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    bool bare = true;
    if (std::llabs(c) != 1) {
      os << std::llabs(c);
      bare = false;
    }
    for (int s : key.second) {
      os << (bare ? "" : " ") << "phi" << calc.render_string(s);
      bare = false;
    }
    if (key.first.empty() && bare) os << "1";
    for (int s : key.first) {
      os << (bare ? "" : " ") << calc.render_string(s);
      bare = false;
    }
  }
  return os.str();
}

std::string render_pattern(const Pattern& p) {
  auto word = [](const std::vector<int>& w) {
    if (w.empty()) return std::string("-");
    std::string s;
    for (int a : w) s += std::to_string(a);
    return s;
  };
  return "b=" + word(p.b) + " x=" + word(p.x) + " a=" + word(p.a);
}

}  // namespace qgs::freewords
