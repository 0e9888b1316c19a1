#pragma once

// Bounded breadth-first exploration of flat words under a symmetric step
// relation. Used for both the class-letter rewriting system and the
// free-product letters of an amalgam.

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pglob {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Letter l : w) {
      h ^= l + 1;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Words interned to dense ids.
class WordStore {
 public:
  std::pair<std::uint32_t, bool> intern(const Word& w) {
    auto [it, inserted] = ids_.try_emplace(w, static_cast<std::uint32_t>(words_.size()));
    if (inserted) {
      words_.push_back(w);
    }
    return {it->second, inserted};
  }
  [[nodiscard]] std::optional<std::uint32_t> find(const Word& w) const {
    auto it = ids_.find(w);
    if (it == ids_.end()) {
      return std::nullopt;
    }
    return it->second;
  }
  [[nodiscard]] const Word& word(std::uint32_t id) const { return words_[id]; }
  [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_map<Word, std::uint32_t, WordHash> ids_;
  std::vector<Word> words_;
};

template <class Step>
struct Derivation {
  Word start;
  std::vector<Step> steps;
  /// words[0] == start and words[i + 1] results from steps[i].
  std::vector<Word> words;

  [[nodiscard]] const Word& end() const { return words.back(); }
};

/// `Neighbors` is callable as nb(const Word&, std::size_t max_len,
/// std::vector<std::pair<Step, Word>>& out) and appends every one-step
/// neighbour of length at most max_len in a fixed order.

/// Labels every one-letter word by the least letter whose word lies in the
/// same component of the bounded step graph.
template <class Step, class Neighbors>
std::vector<Letter> letter_components(std::size_t letters, std::size_t max_len, Neighbors&& nb) {
  std::vector<Letter> label(letters);
  WordStore store;
  std::vector<Letter> component;  // per word id
  std::vector<std::pair<Step, Word>> out;
  for (Letter l = 0; l < letters; ++l) {
    Word w{l};
    if (auto id = store.find(w)) {
      label[l] = component[*id];
      continue;
    }
    label[l] = l;
    store.intern(w);
    component.push_back(l);
    std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(store.size() - 1)};
    while (!queue.empty()) {
      std::uint32_t id = queue.front();
      queue.pop_front();
      out.clear();
      Word current = store.word(id);
      nb(current, max_len, out);
      for (auto& [step, next] : out) {
        auto [nid, fresh] = store.intern(next);
        if (fresh) {
          component.push_back(l);
          queue.push_back(nid);
        }
      }
    }
  }
  return label;
}

/// Shortest derivation from `from` to `to` through words of length at most
/// max_len, ties broken by neighbour order.
template <class Step, class Neighbors>
std::optional<Derivation<Step>> shortest_derivation(const Word& from, const Word& to,
                                                    std::size_t max_len, Neighbors&& nb) {
  WordStore store;
  std::vector<std::pair<std::uint32_t, std::optional<Step>>> parent;
  store.intern(from);
  parent.emplace_back(0, std::nullopt);
  std::deque<std::uint32_t> queue{0};
  std::optional<std::uint32_t> hit;
  if (from == to) {
    hit = 0;
  }
  std::vector<std::pair<Step, Word>> out;
  while (!queue.empty() && !hit) {
    std::uint32_t id = queue.front();
    queue.pop_front();
    out.clear();
    Word current = store.word(id);
    nb(current, max_len, out);
    for (auto& [step, next] : out) {
      auto [nid, fresh] = store.intern(next);
      if (!fresh) {
        continue;
      }
      parent.emplace_back(id, step);
      if (next == to) {
        hit = nid;
        break;
      }
      queue.push_back(nid);
    }
  }
  if (!hit) {
    return std::nullopt;
  }
  Derivation<Step> d;
  d.start = from;
  std::vector<std::uint32_t> path;
  for (std::uint32_t id = *hit; id != 0; id = parent[id].first) {
    path.push_back(id);
  }
  d.words.push_back(from);
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    d.steps.push_back(*parent[*it].second);
    d.words.push_back(store.word(*it));
  }
  return d;
}

}  // namespace pglob
