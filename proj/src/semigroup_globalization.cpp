#include "pglob/semigroup_globalization.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <thread>

#include "pglob/partial_algebra.hpp"

namespace pglob {

SemigroupPartialAction::SemigroupPartialAction(PartialAction pa, FiniteSemigroup s)
    : pa_(std::move(pa)), s_(std::move(s)), ug_(pa_) {
  if (pa_.carrier_size() != s_.size()) {
    throw PreconditionError("semigroup action: carrier sizes differ");
  }
  if (auto r = check_action_compatibility(pa_, s_.as_algebra()); !r.valid()) {
    throw AxiomError(std::move(r));
  }
  const std::size_t k = ug_.size();
  const std::size_t m = pa_.group().size();
  reductions_.assign(k * k, {});
  for (ClassId a = 0; a < k; ++a) {
    for (ClassId b = 0; b < k; ++b) {
      for (Elem x = 0; x < m; ++x) {
        Elem sa = ug_.slot(a, x);
        Elem sb = ug_.slot(b, x);
        if (sa != kUndefined && sb != kUndefined) {
          reductions_[a * k + b].push_back({x, ug_.class_of(x, s_.mul(sa, sb))});
        }
      }
    }
  }
  expansions_.assign(k, {});
  for (ClassId c = 0; c < k; ++c) {
    for (Elem x = 0; x < m; ++x) {
      Elem e = ug_.slot(c, x);
      if (e == kUndefined) {
        continue;
      }
      for (Elem p = 0; p < s_.size(); ++p) {
        for (Elem q = 0; q < s_.size(); ++q) {
          if (s_.mul(p, q) == e) {
            expansions_[c].push_back({x, p, q, ug_.class_of(x, p), ug_.class_of(x, q)});
          }
        }
      }
    }
  }
}

ValidationReport check_ideal_domains(const SemigroupPartialAction& spa) {
  ValidationReport report;
  const auto& pa = spa.action();
  const auto& s = spa.semigroup();
  for (Elem x = 0; x < spa.group().size(); ++x) {
    std::vector<bool> in(s.size(), false);
    auto d = pa.domain(x);
    for (Elem a : d) {
      in[a] = true;
    }
    for (Elem a : d) {
      for (Elem t = 0; t < s.size(); ++t) {
        if (!in[s.mul(t, a)]) {
          report.axiom("ideal",
                       "D_" + spa.group().name(x) + ": " + s.name(t) + s.name(a) + " = " +
                           s.name(s.mul(t, a)) + " outside the domain",
                       {x, t, a, 0});
          return report;
        }
        if (!in[s.mul(a, t)]) {
          report.axiom("ideal",
                       "D_" + spa.group().name(x) + ": " + s.name(a) + s.name(t) + " = " +
                           s.name(s.mul(a, t)) + " outside the domain",
                       {x, t, a, 1});
          return report;
        }
      }
    }
  }
  return report;
}

namespace {

void require_ideals(const SemigroupPartialAction& spa, const char* who) {
  if (auto r = check_ideal_domains(spa); !r.valid()) {
    throw PreconditionError(std::string(who) + ": domains are not ideals: " + r.summary());
  }
}

CriterionWitness evaluate(const SemigroupPartialAction& spa, Elem x, Elem u, Elem s, Elem t) {
  const auto& pa = spa.action();
  const auto& S = spa.semigroup();
  const Elem xi = spa.group().inv(x);
  Elem a = pa.act(xi, S.mul(s, u));
  ensure(a != kUndefined, "criterion: su left the domain");
  Elem lhs = pa.act(x, S.mul(a, t));
  Elem c = pa.act(xi, u);
  ensure(c != kUndefined, "criterion: u outside the domain");
  Elem e = pa.act(x, S.mul(c, t));
  ensure(lhs != kUndefined && e != kUndefined, "criterion: side undefined");
  return CriterionWitness{x, u, s, t, lhs, S.mul(s, e)};
}

/// Runs fn(begin, end) over [0, n) split into contiguous chunks.
template <class Fn>
void run_chunks(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    fn(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> workers;
  std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    std::size_t begin = std::min(n, j * chunk);
    std::size_t end = std::min(n, begin + chunk);
    workers.emplace_back([&fn, begin, end, j] { fn(begin, end, j); });
  }
  for (auto& w : workers) {
    w.join();
  }
}

}  // namespace

CriterionVerdict check_criterion(const SemigroupPartialAction& spa, unsigned jobs) {
  require_ideals(spa, "check_criterion");
  std::vector<std::pair<Elem, Elem>> cases;
  for (Elem x = 0; x < spa.group().size(); ++x) {
    for (Elem u : spa.action().domain(x)) {
      cases.emplace_back(x, u);
    }
  }
  const auto n = static_cast<Elem>(spa.semigroup().size());
  std::vector<std::optional<CriterionWitness>> found(std::max(1u, jobs));
  run_chunks(cases.size(), jobs, [&](std::size_t begin, std::size_t end, unsigned j) {
    for (std::size_t i = begin; i < end; ++i) {
      for (Elem s = 0; s < n; ++s) {
        for (Elem t = 0; t < n; ++t) {
          auto w = evaluate(spa, cases[i].first, cases[i].second, s, t);
          if (w.lhs != w.rhs) {
            found[j] = w;
            return;
          }
        }
      }
    }
  });
  for (auto& f : found) {
    if (f) {
      return CriterionVerdict{false, f};
    }
  }
  return {};
}

std::vector<CriterionWitness> criterion_violations(const SemigroupPartialAction& spa) {
  require_ideals(spa, "criterion_violations");
  std::vector<CriterionWitness> out;
  const auto n = static_cast<Elem>(spa.semigroup().size());
  for (Elem x = 0; x < spa.group().size(); ++x) {
    for (Elem u : spa.action().domain(x)) {
      for (Elem s = 0; s < n; ++s) {
        for (Elem t = 0; t < n; ++t) {
          auto w = evaluate(spa, x, u, s, t);
          if (w.lhs != w.rhs) {
            out.push_back(w);
          }
        }
      }
    }
  }
  return out;
}

SufficientConditions check_sufficient_conditions(const SemigroupPartialAction& spa) {
  require_ideals(spa, "check_sufficient_conditions");
  const auto& S = spa.semigroup();
  const Elem one = spa.group().identity();
  SufficientConditions out;
  out.inverse_ambient = S.is_inverse();
  out.all_idempotent = out.all_weakly_reductive = out.all_unital = true;
  for (Elem x = 0; x < spa.group().size(); ++x) {
    auto d = spa.action().domain(x);
    std::vector<bool> in(S.size(), false);
    for (Elem a : d) {
      in[a] = true;
    }
    DomainProperties p;
    p.x = x;

    std::vector<bool> product(S.size(), false);
    for (Elem a : d) {
      for (Elem b : d) {
        product[S.mul(a, b)] = true;
      }
    }
    p.idempotent = std::all_of(d.begin(), d.end(), [&](Elem a) { return product[a]; });

    p.weakly_reductive = true;
    for (std::size_t i = 0; i < d.size() && p.weakly_reductive; ++i) {
      for (std::size_t j = i + 1; j < d.size() && p.weakly_reductive; ++j) {
        Elem a = d[i], b = d[j];
        bool separated = std::any_of(d.begin(), d.end(), [&](Elem c) {
          return S.mul(c, a) != S.mul(c, b) || S.mul(a, c) != S.mul(b, c);
        });
        p.weakly_reductive = separated;
      }
    }

    std::vector<Elem> units;
    for (Elem e = 0; e < S.size(); ++e) {
      if (!S.is_idempotent(e) || !S.is_central(e)) {
        continue;
      }
      std::vector<bool> es(S.size(), false);
      for (Elem t = 0; t < S.size(); ++t) {
        es[S.mul(e, t)] = true;
      }
      if (es == in) {
        units.push_back(e);
      }
    }
    ensure(units.size() <= 1, "unital domain with two distinct identities");
    p.unital = !units.empty();
    if (p.unital) {
      p.unit = units.front();
    }

    if (x != one) {
      out.all_idempotent = out.all_idempotent && p.idempotent;
      out.all_weakly_reductive = out.all_weakly_reductive && p.weakly_reductive;
    }
    out.all_unital = out.all_unital && p.unital;
    out.per_element.push_back(p);
  }
  return out;
}

UWord apply_step(const SemigroupPartialAction& spa, const UWord& w, const RewriteStep& step) {
  const auto& ug = spa.ug();
  const auto& S = spa.semigroup();
  if (step.slot >= spa.group().size() || step.s >= S.size() || step.t >= S.size()) {
    throw std::invalid_argument("rewrite step out of range");
  }
  UWord out;
  if (step.dir == RewriteStep::Dir::reduce) {
    if (step.pos + 1 >= w.size() || ug.slot(w[step.pos], step.slot) != step.s ||
        ug.slot(w[step.pos + 1], step.slot) != step.t) {
      throw std::invalid_argument("reduction does not apply at position " +
                                  std::to_string(step.pos));
    }
    out.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(step.pos));
    out.push_back(ug.class_of(step.slot, S.mul(step.s, step.t)));
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(step.pos) + 2, w.end());
  } else {
    if (step.pos >= w.size() || w[step.pos] != ug.class_of(step.slot, S.mul(step.s, step.t))) {
      throw std::invalid_argument("expansion does not apply at position " +
                                  std::to_string(step.pos));
    }
    out.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(step.pos));
    out.push_back(ug.class_of(step.slot, step.s));
    out.push_back(ug.class_of(step.slot, step.t));
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(step.pos) + 1, w.end());
  }
  return out;
}

std::vector<UWord> replay_steps(const SemigroupPartialAction& spa, const UWord& start,
                                const std::vector<RewriteStep>& steps) {
  std::vector<UWord> words{start};
  for (const auto& step : steps) {
    words.push_back(apply_step(spa, words.back(), step));
  }
  return words;
}

bool replay_trace(const SemigroupPartialAction& spa, const RewriteTrace& trace) {
  try {
    return replay_steps(spa, trace.start, trace.steps) == trace.words;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

namespace {

void check_letters(const SemigroupPartialAction& spa, const UWord& w) {
  if (w.empty()) {
    throw PreconditionError("word must be nonempty");
  }
  for (ClassId c : w) {
    if (c >= spa.ug().size()) {
      throw PreconditionError("word letter is not a class of this action");
    }
  }
}

}  // namespace

bool is_irreducible(const SemigroupPartialAction& spa, const UWord& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!spa.reductions(w[i], w[i + 1]).empty()) {
      return false;
    }
  }
  return true;
}

RewriteTrace normalize_word(const SemigroupPartialAction& spa, const UWord& w) {
  check_letters(spa, w);
  const auto& ug = spa.ug();
  RewriteTrace trace;
  trace.start = w;
  trace.words.push_back(w);
  UWord current = w;
  while (true) {
    bool reduced = false;
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      const auto& rs = spa.reductions(current[i], current[i + 1]);
      if (rs.empty()) {
        continue;
      }
      Elem x = rs.front().slot;
      RewriteStep step{i, RewriteStep::Dir::reduce, x, ug.slot(current[i], x),
                       ug.slot(current[i + 1], x)};
      current = apply_step(spa, current, step);
      trace.steps.push_back(step);
      trace.words.push_back(current);
      reduced = true;
      break;
    }
    if (!reduced) {
      return trace;
    }
  }
}

UWord parse_word(const SemigroupPartialAction& spa, std::string_view text) {
  UWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '[') {
      throw std::invalid_argument("word syntax: expected '[' at offset " + std::to_string(i));
    }
    std::size_t close = text.find(']', i);
    if (close == std::string_view::npos) {
      throw std::invalid_argument("word syntax: unterminated letter at offset " +
                                  std::to_string(i));
    }
    auto letter = text.substr(i, close - i + 1);
    auto c = spa.ug().parse_name(letter);
    if (!c) {
      throw std::invalid_argument("unknown letter " + std::string(letter));
    }
    w.push_back(*c);
    i = close + 1;
  }
  if (w.empty()) {
    throw std::invalid_argument("word must be nonempty");
  }
  return w;
}

std::string render_word(const SemigroupPartialAction& spa, const UWord& w) {
  std::string out;
  for (ClassId c : w) {
    out += spa.ug().name(c);
  }
  return out;
}

std::string render_step(const SemigroupPartialAction& spa, const RewriteStep& step) {
  const auto& S = spa.semigroup();
  std::string slot = spa.group().name(step.slot);
  std::string pair = "[" + slot + "," + S.name(step.s) + "][" + slot + "," + S.name(step.t) + "]";
  std::string single = "[" + slot + "," + S.name(S.mul(step.s, step.t)) + "]";
  if (step.dir == RewriteStep::Dir::reduce) {
    return "reduce at " + std::to_string(step.pos) + ": " + pair + " -> " + single;
  }
  return "expand at " + std::to_string(step.pos) + ": " + single + " -> " + pair;
}

namespace {

/// The word itself plus every one-letter reduct of a two-letter word.
std::vector<UWord> reducts_of_pair(const SemigroupPartialAction& spa, const UWord& w) {
  std::vector<UWord> out{w};
  if (w.size() == 2) {
    for (const auto& r : spa.reductions(w[0], w[1])) {
      out.push_back(UWord{r.result});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool joinable(const SemigroupPartialAction& spa, const UWord& a, const UWord& b) {
  auto ra = reducts_of_pair(spa, a);
  auto rb = reducts_of_pair(spa, b);
  std::vector<UWord> common;
  std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(common));
  return !common.empty();
}

}  // namespace

ConfluenceVerdict check_weak_confluence(const SemigroupPartialAction& spa, unsigned jobs) {
  require_ideals(spa, "check_weak_confluence");
  const auto k = static_cast<ClassId>(spa.ug().size());
  const unsigned workers = std::max(1u, jobs);
  std::vector<std::optional<CriticalPair>> found(workers);
  std::vector<std::size_t> counted(workers, 0);
  run_chunks(k, workers, [&](std::size_t begin, std::size_t end, unsigned j) {
    auto report = [&](UWord word, UWord left, UWord right) {
      auto ln = normalize_word(spa, left).end();
      auto rn = normalize_word(spa, right).end();
      found[j] = CriticalPair{std::move(word), std::move(left), std::move(right), ln, rn};
    };
    for (auto a = static_cast<ClassId>(begin); a < end; ++a) {
      for (ClassId b = 0; b < k; ++b) {
        const auto& ab = spa.reductions(a, b);
        for (std::size_t i = 1; i < ab.size(); ++i) {
          ++counted[j];
          if (ab[i].result != ab[0].result) {
            report({a, b}, {ab[0].result}, {ab[i].result});
            return;
          }
        }
        if (ab.empty()) {
          continue;
        }
        for (ClassId c = 0; c < k; ++c) {
          const auto& bc = spa.reductions(b, c);
          for (const auto& r1 : ab) {
            for (const auto& r2 : bc) {
              ++counted[j];
              UWord left{r1.result, c};
              UWord right{a, r2.result};
              if (!joinable(spa, left, right)) {
                report({a, b, c}, left, right);
                return;
              }
            }
          }
        }
      }
    }
  });
  ConfluenceVerdict verdict;
  for (unsigned j = 0; j < workers; ++j) {
    verdict.configurations += counted[j];
  }
  for (auto& f : found) {
    if (f) {
      verdict.confluent = false;
      verdict.witness = std::move(f);
      break;
    }
  }
  ensure(verdict.confluent == check_criterion(spa).holds,
         "weak confluence verdict disagrees with the criterion");
  return verdict;
}

namespace {

class NormalFormSearch {
 public:
  NormalFormSearch(const SemigroupPartialAction& spa, std::size_t max_len)
      : spa_(spa), k_(spa.ug().size()), max_len_(max_len) {
    if (k_ > 64) {
      throw PreconditionError("unique normal form check supports at most 64 classes");
    }
    red_.assign(k_ * k_, 0);
    for (ClassId a = 0; a < k_; ++a) {
      for (ClassId b = 0; b < k_; ++b) {
        for (const auto& r : spa.reductions(a, b)) {
          red_[a * k_ + b] |= std::uint64_t{1} << r.result;
        }
      }
    }
    table_.assign(max_len * max_len, 0);
  }

  NormalFormVerdict run() {
    word_.clear();
    extend();
    return verdict_;
  }

  /// Distinct normal forms of the current word, stopping at `limit`.
  std::vector<UWord> normal_forms(std::size_t limit) {
    std::vector<UWord> found;
    UWord current;
    segment(0, current, found, limit);
    return found;
  }

  void load(const UWord& w) {
    word_.clear();
    for (ClassId c : w) {
      word_.push_back(c);
      fill_column();
    }
  }

 private:
  std::uint64_t& cell(std::size_t i, std::size_t j) { return table_[i * max_len_ + j]; }

  std::uint64_t combine(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    for (std::uint64_t x = a; x; x &= x - 1) {
      auto p = static_cast<std::size_t>(std::countr_zero(x));
      for (std::uint64_t y = b; y; y &= y - 1) {
        out |= red_[p * k_ + static_cast<std::size_t>(std::countr_zero(y))];
      }
    }
    return out;
  }

  void fill_column() {
    std::size_t j = word_.size() - 1;
    cell(j, j) = std::uint64_t{1} << word_[j];
    for (std::size_t i = j; i-- > 0;) {
      std::uint64_t acc = 0;
      for (std::size_t m = i; m < j; ++m) {
        acc |= combine(cell(i, m), cell(m + 1, j));
      }
      cell(i, j) = acc;
    }
  }

  void segment(std::size_t i, UWord& current, std::vector<UWord>& found, std::size_t limit) {
    if (found.size() >= limit) {
      return;
    }
    if (i == word_.size()) {
      if (std::find(found.begin(), found.end(), current) == found.end()) {
        found.push_back(current);
      }
      return;
    }
    for (std::size_t j = i; j < word_.size(); ++j) {
      for (std::uint64_t bits = cell(i, j); bits; bits &= bits - 1) {
        auto c = static_cast<ClassId>(std::countr_zero(bits));
        if (!current.empty() && red_[current.back() * k_ + c] != 0) {
          continue;
        }
        current.push_back(c);
        segment(j + 1, current, found, limit);
        current.pop_back();
        if (found.size() >= limit) {
          return;
        }
      }
    }
  }

  void extend() {
    for (ClassId c = 0; c < k_ && verdict_.unique; ++c) {
      word_.push_back(c);
      fill_column();
      ++verdict_.words_checked;
      bool reducible = false;
      for (std::size_t i = 0; i + 1 < word_.size() && !reducible; ++i) {
        reducible = red_[word_[i] * k_ + word_[i + 1]] != 0;
      }
      if (reducible) {
        auto nfs = normal_forms(2);
        if (nfs.size() > 1) {
          verdict_.unique = false;
          verdict_.word = UWord(word_.begin(), word_.end());
          verdict_.normal_forms = std::pair{nfs[0], nfs[1]};
        }
      }
      if (verdict_.unique && word_.size() < max_len_) {
        extend();
      }
      word_.pop_back();
    }
  }

  const SemigroupPartialAction& spa_;
  std::size_t k_;
  std::size_t max_len_;
  std::vector<std::uint64_t> red_;
  std::vector<std::uint64_t> table_;
  std::vector<ClassId> word_;
  NormalFormVerdict verdict_;
};

}  // namespace

NormalFormVerdict check_unique_normal_forms(const SemigroupPartialAction& spa,
                                            std::size_t max_len) {
  if (max_len < 1) {
    throw PreconditionError("check_unique_normal_forms: max_len must be at least 1");
  }
  return NormalFormSearch(spa, max_len).run();
}

std::vector<UWord> all_normal_forms(const SemigroupPartialAction& spa, const UWord& w) {
  check_letters(spa, w);
  std::set<UWord> seen{w};
  std::vector<UWord> frontier{w};
  std::set<UWord> normal;
  while (!frontier.empty()) {
    std::vector<UWord> next;
    for (const auto& u : frontier) {
      bool irreducible = true;
      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        for (const auto& r : spa.reductions(u[i], u[i + 1])) {
          irreducible = false;
          UWord v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i));
          v.push_back(r.result);
          v.insert(v.end(), u.begin() + static_cast<std::ptrdiff_t>(i) + 2, u.end());
          if (seen.insert(v).second) {
            next.push_back(std::move(v));
          }
        }
      }
      if (irreducible) {
        normal.insert(u);
      }
    }
    frontier = std::move(next);
  }
  return {normal.begin(), normal.end()};
}

namespace {

struct UWordNeighbors {
  const SemigroupPartialAction& spa;

  void operator()(const UWord& w, std::size_t max_len,
                  std::vector<std::pair<RewriteStep, UWord>>& out) const {
    const auto& ug = spa.ug();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i + 1 < w.size()) {
        for (const auto& r : spa.reductions(w[i], w[i + 1])) {
          UWord v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
          v.push_back(r.result);
          v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
          out.emplace_back(RewriteStep{i, RewriteStep::Dir::reduce, r.slot,
                                       ug.slot(w[i], r.slot), ug.slot(w[i + 1], r.slot)},
                           std::move(v));
        }
      }
      if (w.size() < max_len) {
        for (const auto& e : spa.expansions(w[i])) {
          UWord v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
          v.push_back(e.left);
          v.push_back(e.right);
          v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
          out.emplace_back(RewriteStep{i, RewriteStep::Dir::expand, e.slot, e.s, e.t},
                           std::move(v));
        }
      }
    }
  }
};

}  // namespace

std::vector<ClassId> collapse_labels(const SemigroupPartialAction& spa, std::size_t max_len) {
  if (max_len < 1) {
    throw PreconditionError("collapse search: max_len must be at least 1");
  }
  require_ideals(spa, "collapse search");
  return letter_components<RewriteStep>(spa.ug().size(), max_len, UWordNeighbors{spa});
}

CollapseReport find_collapse_witness(const SemigroupPartialAction& spa, std::size_t max_len) {
  auto labels = collapse_labels(spa, max_len);
  CollapseReport report;
  report.max_len = max_len;
  const auto k = static_cast<ClassId>(spa.ug().size());
  for (ClassId root = 0; root < k; ++root) {
    std::vector<ClassId> group;
    for (ClassId c = 0; c < k; ++c) {
      if (labels[c] == root) {
        group.push_back(c);
      }
    }
    if (group.size() < 2) {
      continue;
    }
    for (ClassId c : group) {
      if (c == root) {
        continue;
      }
      auto d = shortest_derivation<RewriteStep>(UWord{c}, UWord{root}, max_len,
                                                UWordNeighbors{spa});
      ensure(d.has_value(), "collapse search: merged classes without a derivation");
      report.chains.push_back(CollapseChain{c, root, std::move(*d)});
    }
    report.groups.push_back(std::move(group));
  }
  return report;
}

UnitalGlobalization build_unital_globalization(const SemigroupPartialAction& spa) {
  auto cond = check_sufficient_conditions(spa);
  const auto& g = spa.group();
  const auto& S = spa.semigroup();
  const auto& pa = spa.action();
  const auto& ug = spa.ug();
  for (const auto& p : cond.per_element) {
    if (!p.unital) {
      throw NotUnitalError(p.x, "D_" + g.name(p.x) +
                                    " is not of the form eS for a central idempotent e");
    }
  }
  std::vector<Elem> unit(g.size());
  for (const auto& p : cond.per_element) {
    unit[p.x] = *p.unit;
  }

  for (Elem x = 0; x < g.size(); ++x) {
    for (Elem y = 0; y < g.size(); ++y) {
      Elem lhs = pa.act(x, S.mul(unit[g.inv(x)], unit[y]));
      ensure(lhs != kUndefined && lhs == S.mul(unit[x], unit[g.mul(x, y)]),
             "unital globalization: x(1_{x^-1} 1_y) != 1_x 1_{xy}");
    }
  }

  auto star = [&](Elem x, Elem s, Elem y, Elem t) {
    Elem inner = S.mul(unit[g.mul(g.inv(y), x)], t);
    Elem moved = pa.act(g.mul(g.inv(x), y), inner);
    ensure(moved != kUndefined, "unital globalization: product leaves the domain");
    return ug.class_of(x, S.mul(s, moved));
  };

  const std::size_t k = ug.size();
  CayleyTable table{k, std::vector<Elem>(k * k, 0)};
  for (ClassId c = 0; c < k; ++c) {
    for (ClassId d = 0; d < k; ++d) {
      const auto& cc = ug.cls(c);
      const auto& dd = ug.cls(d);
      ClassId value = star(cc.rep_slot, cc.rep_elem, dd.rep_slot, dd.rep_elem);
      for (auto [x, s] : cc.members) {
        for (auto [y, t] : dd.members) {
          ensure(star(x, s, y, t) == value, "unital globalization: product not well-defined");
        }
      }
      table.cells[c * k + d] = value;
    }
  }

  std::optional<FiniteSemigroup> product;
  try {
    product.emplace(ug.names(), table);
  } catch (const AxiomError& e) {
    throw InvariantViolation(std::string("unital globalization: ") + e.what());
  }

  auto iota = ug.embedding();
  for (Elem s = 0; s < S.size(); ++s) {
    for (Elem t = 0; t < S.size(); ++t) {
      ensure(product->mul(iota[s], iota[t]) == iota[S.mul(s, t)],
             "unital globalization: [1,-] is not a homomorphism");
    }
  }
  std::vector<bool> in_image(k, false);
  for (Elem s = 0; s < S.size(); ++s) {
    ensure(!in_image[iota[s]], "unital globalization: [1,-] is not injective");
    in_image[iota[s]] = true;
  }
  for (ClassId c = 0; c < k; ++c) {
    for (Elem s = 0; s < S.size(); ++s) {
      ensure(in_image[product->mul(c, iota[s])] && in_image[product->mul(iota[s], c)],
             "unital globalization: [1,S] is not an ideal");
    }
  }
  for (Elem z = 0; z < g.size(); ++z) {
    for (ClassId c = 0; c < k; ++c) {
      for (ClassId d = 0; d < k; ++d) {
        ensure(ug.act(z, product->mul(c, d)) == product->mul(ug.act(z, c), ug.act(z, d)),
               "unital globalization: action is not by automorphisms");
      }
    }
  }
  for (Elem x = 0; x < g.size(); ++x) {
    for (Elem s = 0; s < S.size(); ++s) {
      for (Elem t = 0; t < S.size(); ++t) {
        ensure(product->mul(ug.class_of(x, s), ug.class_of(x, t)) == ug.class_of(x, S.mul(s, t)),
               "unital globalization: [x,s]*[x,t] != [x,st]");
      }
    }
  }
  auto action = ug.as_action();
  ensure(verify_globalization(pa, action, iota).valid(),
         "unital globalization: not a globalization");
  if (S.is_inverse()) {
    ensure(product->is_inverse(), "unital globalization: product of an inverse semigroup is not inverse");
  }
  return UnitalGlobalization{std::move(*product), std::move(iota), std::move(unit),
                             std::move(action)};
}

}  // namespace pglob
