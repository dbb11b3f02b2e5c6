#include "lentropy/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace lentropy::shifts {

namespace {

constexpr std::size_t max_states = 64;
constexpr std::size_t max_independence_positions = 24;
const std::string symbol_pool = "0123456789abcdefghijklmnopqrstuvwxyz";

std::uint64_t image(std::uint64_t set, const std::vector<std::uint64_t>& rows) {
  std::uint64_t out = 0;
  while (set) {
    out |= rows[static_cast<std::size_t>(__builtin_ctzll(set))];
    set &= set - 1;
  }
  return out;
}

std::vector<std::uint64_t> multiply(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = image(a[i], b);
  return out;
}

bool contains_any(const std::string& w, const std::vector<std::string>& forbidden) {
  return std::any_of(forbidden.begin(), forbidden.end(),
                     [&](const std::string& f) { return w.find(f) != std::string::npos; });
}

void check_alphabet(const std::string& alphabet) {
  if (alphabet.empty()) throw ValidationError("sft: empty alphabet");
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("sft: repeated alphabet symbol");
  }
}

// Left-to-right propagation of the set of states compatible with the
// placements seen so far.
class Frontier {
 public:
  explicit Frontier(const Sft& s) : s_(&s) {}

  bool place(std::int64_t p, const std::string& word) {
    if (!started_) {
      started_ = true;
      pos_ = p;
      reach_ = all_states();
    } else if (!advance_to(p)) {
      return false;
    }
    reach_ &= s_->starting_with(word[0]);
    for (std::size_t k = 1; k < word.size(); ++k) {
      if (pending_.size() < k) pending_.resize(k, all_states());
      pending_[k - 1] &= s_->starting_with(word[k]);
      if (!pending_[k - 1]) return false;
    }
    return reach_ != 0;
  }

  bool finish() const {
    Frontier copy = *this;
    return !started_ || copy.advance_to(pos_ + static_cast<std::int64_t>(pending_.size()));
  }

  auto key() const { return std::make_tuple(reach_, pending_); }

 private:
  bool advance_to(std::int64_t p) {
    while (pos_ < p) {
      if (!pending_.empty()) {
        reach_ = s_->advance(reach_, 1) & pending_.front();
        pending_.erase(pending_.begin());
        ++pos_;
      } else {
        reach_ = s_->advance(reach_, static_cast<std::uint64_t>(p - pos_));
        pos_ = p;
      }
      if (!reach_) return false;
    }
    return true;
  }

  std::uint64_t all_states() const {
    const std::size_t n = s_->states().size();
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  const Sft* s_;
  bool started_ = false;
  std::int64_t pos_ = 0;
  std::uint64_t reach_ = 0;
  std::vector<std::uint64_t> pending_;
};

}  // namespace

Sft Sft::from_forbidden(const std::string& alphabet, const std::vector<std::string>& forbidden) {
  check_alphabet(alphabet);
  std::size_t longest = 0;
  for (const auto& f : forbidden) {
    if (f.empty()) throw ValidationError("sft: empty forbidden word");
    for (char c : f) {
      if (alphabet.find(c) == std::string::npos) throw ValidationError("sft: forbidden word uses unknown symbol");
    }
    longest = std::max(longest, f.size());
  }
  const std::size_t m = std::max<std::size_t>(1, longest > 0 ? longest - 1 : 1);

  std::vector<std::string> words{""};
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::string> next;
    for (const auto& w : words) {
      for (char c : alphabet) {
        std::string e = w + c;
        if (!contains_any(e, forbidden)) next.push_back(std::move(e));
      }
    }
    if (next.size() > max_states) throw ResourceError("sft: more than 64 block states");
    words = std::move(next);
  }
  std::vector<std::uint64_t> adj(words.size(), 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (words[i].substr(1) == words[j].substr(0, m - 1) && !contains_any(words[i] + words[j].back(), forbidden)) {
        adj[i] |= std::uint64_t{1} << j;
      }
    }
  }
  Sft s;
  s.alphabet_ = alphabet;
  s.block_ = m;
  s.finish(std::move(words), std::move(adj));
  return s;
}

Sft Sft::from_adjacency(const std::string& alphabet, const std::vector<std::vector<bool>>& adjacency) {
  check_alphabet(alphabet);
  if (alphabet.size() > max_states) throw ResourceError("sft: more than 64 symbols");
  if (adjacency.size() != alphabet.size()) throw ValidationError("sft: adjacency size mismatch");
  std::vector<std::string> states;
  std::vector<std::uint64_t> adj(alphabet.size(), 0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    states.emplace_back(1, alphabet[i]);
    if (adjacency[i].size() != alphabet.size()) throw ValidationError("sft: adjacency size mismatch");
    for (std::size_t j = 0; j < alphabet.size(); ++j) {
      if (adjacency[i][j]) adj[i] |= std::uint64_t{1} << j;
    }
  }
  Sft s;
  s.alphabet_ = alphabet;
  s.finish(std::move(states), std::move(adj));
  return s;
}

void Sft::finish(std::vector<std::string> states, std::vector<std::uint64_t> adj) {
  const std::size_t n = states.size();
  std::uint64_t alive = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (bool changed = true; changed;) {
    changed = false;
    std::uint64_t has_pred = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive >> i & 1) has_pred |= adj[i] & alive;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if ((alive >> i & 1) && (!(adj[i] & alive) || !(has_pred >> i & 1))) {
        alive &= ~(std::uint64_t{1} << i);
        changed = true;
      }
    }
  }
  std::vector<std::size_t> index(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (alive >> i & 1) {
      index[i] = states_.size();
      states_.push_back(states[i]);
    }
  }
  pruned_ = states_.size() != n;
  adj_.assign(states_.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (index[i] == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (index[j] != n && (adj[i] >> j & 1)) adj_[index[i]] |= std::uint64_t{1} << index[j];
    }
  }
  powers_.push_back(adj_);
  for (int i = 1; i < 64; ++i) powers_.push_back(multiply(powers_.back(), powers_.back()));
}

bool Sft::irreducible() const {
  const std::size_t n = states_.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t seen = adj_[i], frontier = adj_[i];
    while (frontier) {
      const std::uint64_t next = image(frontier, adj_) & ~seen;
      seen |= next;
      frontier = next;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(seen >> j & 1)) return false;
    }
  }
  return true;
}

std::uint64_t Sft::advance(std::uint64_t set, std::uint64_t steps) const {
  for (std::size_t i = 0; steps && set; ++i, steps >>= 1) {
    if (steps & 1) set = image(set, powers_[i]);
  }
  return set;
}

std::uint64_t Sft::starting_with(char c) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i][0] == c) out |= std::uint64_t{1} << i;
  }
  return out;
}

bool Sft::admissible(const std::string& word) const {
  Frontier f(*this);
  return f.place(0, word) && f.finish();
}

void Sft::validate(const Cylinder& c) const {
  if (c.word.empty()) throw ValidationError("cylinder: empty word");
  for (char ch : c.word) {
    if (alphabet_.find(ch) == std::string::npos) {
      throw ValidationError(std::string("cylinder: unknown symbol '") + ch + "'");
    }
  }
  if (!admissible(c.word)) throw ValidationError("cylinder: word '" + c.word + "' is not admissible");
}

double Sft::word_count(std::size_t k) const {
  if (k == 0) return 1;
  if (k < block_) {
    std::set<std::string> prefixes;
    for (const auto& s : states_) prefixes.insert(s.substr(0, k));
    return static_cast<double>(prefixes.size());
  }
  const std::size_t n = states_.size();
  std::vector<double> v(n, 1.0);
  for (std::size_t step = block_; step < k; ++step) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (adj_[i] >> j & 1) w[i] += v[j];
      }
    }
    v = std::move(w);
  }
  double total = 0;
  for (double x : v) total += x;
  return total;
}

Sft full_shift(std::size_t k) {
  if (k == 0 || k > symbol_pool.size()) throw ValidationError("full_shift: unsupported alphabet size");
  return Sft::from_forbidden(symbol_pool.substr(0, k), {});
}

Sft golden_mean() { return Sft::from_forbidden("01", {"11"}); }

Sft cycle(std::size_t n) {
  if (n == 0 || n > symbol_pool.size()) throw ValidationError("cycle: unsupported length");
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) adj[i][(i + 1) % n] = true;
  return Sft::from_adjacency(symbol_pool.substr(0, n), adj);
}

Sft self_loop() { return Sft::from_adjacency("a", {{true}}); }

bool consistent(const Sft& s, const std::vector<Placement>& constraints) {
  std::vector<std::pair<std::int64_t, const std::string*>> placed;
  for (const auto& c : constraints) {
    s.validate(c.cylinder);
    placed.emplace_back(c.position + c.cylinder.anchor, &c.cylinder.word);
  }
  std::stable_sort(placed.begin(), placed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Frontier f(s);
  for (const auto& [p, w] : placed) {
    if (!f.place(p, *w)) return false;
  }
  return f.finish();
}

namespace {

class IndependenceSearch {
 public:
  IndependenceSearch(const Sft& s, std::vector<std::int64_t> f, const Cylinder& u, const Cylinder& v)
      : s_(s), f_(std::move(f)), u_(u), v_(v) {}

  bool run() {
    if (u_.anchor != v_.anchor) return run_plain();
    return extend(0, Frontier(s_));
  }

 private:
  // Positions and anchors agree in order, so the frontier state summarizes
  // the prefix; states already known to extend are memoized.
  bool extend(std::size_t i, const Frontier& fr) {
    if (i == f_.size()) return fr.finish();
    auto key = std::make_tuple(i, fr.key());
    if (good_.count(key)) return true;
    for (const Cylinder* c : {&u_, &v_}) {
      Frontier next = fr;
      if (!next.place(f_[i] + c->anchor, c->word) || !next.finish()) return false;
      if (!extend(i + 1, next)) return false;
    }
    good_.insert(key);
    return true;
  }

  bool run_plain() {
    std::vector<Placement> prefix;
    return extend_plain(prefix);
  }

  bool extend_plain(std::vector<Placement>& prefix) {
    if (prefix.size() == f_.size()) return true;
    for (const Cylinder* c : {&u_, &v_}) {
      prefix.push_back(Placement{f_[prefix.size()], *c});
      const bool ok = consistent(s_, prefix) && extend_plain(prefix);
      prefix.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  const Sft& s_;
  std::vector<std::int64_t> f_;
  const Cylinder& u_;
  const Cylinder& v_;
  std::set<std::tuple<std::size_t, std::tuple<std::uint64_t, std::vector<std::uint64_t>>>> good_;
};

bool independent_unchecked(const Sft& s, std::vector<std::int64_t> f, const Cylinder& u, const Cylinder& v) {
  return IndependenceSearch(s, std::move(f), u, v).run();
}

}  // namespace

bool is_independence_set(const Sft& s, const std::vector<std::int64_t>& f, const Cylinder& u, const Cylinder& v) {
  s.validate(u);
  s.validate(v);
  std::vector<std::int64_t> sorted = f;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() > max_independence_positions) throw ResourceError("is_independence_set: |F| above 24");
  return independent_unchecked(s, std::move(sorted), u, v);
}

DensityResult max_independence_density(const Sft& s, const Cylinder& u, const Cylinder& v, std::size_t n) {
  if (n == 0) throw DomainError("max_independence_density: n must be positive");
  s.validate(u);
  s.validate(v);
  DensityResult out;
  const auto len = static_cast<std::int64_t>(n);
  if (n > 12) {
    out.exact = false;
    for (std::int64_t p = 0; p < len && out.positions.size() < max_independence_positions; ++p) {
      out.positions.push_back(p);
      if (!independent_unchecked(s, out.positions, u, v)) out.positions.pop_back();
    }
  } else {
    // Depth-first in lexicographic order; subsets of independence sets are
    // independence sets, so dependent prefixes are cut.
    std::vector<std::int64_t> current;
    auto search = [&](auto&& self, std::int64_t next) -> void {
      if (current.size() > out.positions.size()) out.positions = current;
      for (std::int64_t p = next; p < len; ++p) {
        if (current.size() + static_cast<std::size_t>(len - p) <= out.positions.size()) return;
        current.push_back(p);
        if (independent_unchecked(s, current, u, v)) self(self, p + 1);
        current.pop_back();
      }
    };
    search(search, 0);
  }
  out.density = Rational(static_cast<long>(out.positions.size()), static_cast<long>(n));
  out.density.canonicalize();
  return out;
}

IeVerdict ie_pair_verdict(const Sft& s, const Cylinder& u, const Cylinder& v, const Rational& r, std::size_t l_max) {
  if (r <= 0 || r > 1) throw DomainError("ie_pair_verdict: r must lie in (0,1]");
  if (l_max == 0) throw DomainError("ie_pair_verdict: l_max must be positive");
  IeVerdict out;
  out.r = r;
  for (std::size_t len = 1; len <= l_max; ++len) {
    out.max_sizes.push_back(max_independence_density(s, u, v, len).positions.size());
  }
  for (std::size_t l = 1; l <= l_max; ++l) {
    bool found = false;
    for (std::size_t len = l; len <= l_max && !found; ++len) {
      found = Rational(static_cast<long>(out.max_sizes[len - 1])) >= r * static_cast<long>(len);
    }
    if (!found) {
      out.failing_l = l;
      return out;
    }
  }
  out.positive = true;
  return out;
}

EntropyResult sft_entropy(const Sft& s, double tol) {
  if (!(tol > 0)) throw DomainError("sft_entropy: tol must be positive");
  const std::size_t n = s.states().size();
  if (n == 0) throw DomainError("sft_entropy: the shift is empty");
  EntropyResult out;
  out.reducible = !s.irreducible();
  // Power iteration on A + I: same Perron vector, and the shift by one
  // removes the periodic part of the spectrum from the top.
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0;
  for (std::size_t it = 1; it <= 1'000'000; ++it) {
    std::vector<double> y(x);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (s.successors(i) >> j & 1) y[i] += x[j];
      }
    }
    double dot = 0, norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += x[i] * y[i];
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    out.iterations = it;
    if (it > 1 && std::abs(dot - lambda) < tol) {
      lambda = dot;
      break;
    }
    lambda = dot;
  }
  out.value = std::log(lambda - 1.0);
  return out;
}

double word_count_slope(const Sft& s, std::size_t k) {
  if (k == 0) throw DomainError("word_count_slope: k must be positive");
  return std::log(s.word_count(k)) / static_cast<double>(k);
}

}  // namespace lentropy::shifts
