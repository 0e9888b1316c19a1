#include "pglob/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pglob {

std::size_t Term::length() const {
  std::size_t n = 1;
  for (const auto& a : args) {
    n += a.length();
  }
  return n;
}

std::size_t Term::depth() const {
  if (is_letter()) {
    return 0;
  }
  std::size_t d = 0;
  for (const auto& a : args) {
    d = std::max(d, a.depth());
  }
  return d + 1;
}

void check_term(const FinitePartialAlgebra& alg, const Term& w) {
  if (w.is_letter()) {
    if (w.letter >= alg.size()) {
      throw PreconditionError("term: letter out of range");
    }
    return;
  }
  if (w.op >= alg.op_count() || w.args.size() != alg.arity(w.op)) {
    throw PreconditionError("term: operation symbol does not fit the signature");
  }
  for (const auto& a : w.args) {
    check_term(alg, a);
  }
}

Elem term_value(const FinitePartialAlgebra& alg, const Term& w) {
  if (w.is_letter()) {
    return w.letter;
  }
  std::vector<Elem> values(w.args.size());
  for (std::size_t i = 0; i < w.args.size(); ++i) {
    values[i] = term_value(alg, w.args[i]);
    if (values[i] == kUndefined) {
      return kUndefined;
    }
  }
  return alg.apply(w.op, values);
}

Term evaluation_normal_form(const FinitePartialAlgebra& alg, const Term& w) {
  if (w.is_letter()) {
    return w;
  }
  std::vector<Term> children;
  children.reserve(w.args.size());
  bool all_letters = true;
  for (const auto& a : w.args) {
    children.push_back(evaluation_normal_form(alg, a));
    all_letters = all_letters && children.back().is_letter();
  }
  if (all_letters) {
    std::vector<Elem> values(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
      values[i] = children[i].letter;
    }
    Elem v = alg.apply(w.op, values);
    if (v != kUndefined) {
      return Term::leaf(v);
    }
  }
  return Term::apply(w.op, std::move(children));
}

bool related_by_evaluation(const FinitePartialAlgebra& alg, const Term& a, const Term& b) {
  Elem va = term_value(alg, a);
  if (va != kUndefined && va == term_value(alg, b)) {
    return true;
  }
  if (a.is_letter() || b.is_letter() || a.op != b.op) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!related_by_evaluation(alg, a.args[i], b.args[i])) {
      return false;
    }
  }
  return true;
}

std::optional<Term> extend_action_to_term(const PartialAction& pa, Elem x, const Term& w) {
  if (w.is_letter()) {
    Elem b = pa.act(x, w.letter);
    if (b == kUndefined) {
      return std::nullopt;
    }
    return Term::leaf(b);
  }
  std::vector<Term> moved;
  moved.reserve(w.args.size());
  for (const auto& a : w.args) {
    auto m = extend_action_to_term(pa, x, a);
    if (!m) {
      return std::nullopt;
    }
    moved.push_back(std::move(*m));
  }
  return Term::apply(w.op, std::move(moved));
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, const FinitePartialAlgebra& alg) : text_(text), alg_(alg) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) {
      fail("trailing input");
    }
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("term syntax error at offset " + std::to_string(pos_) + ": " +
                                what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           text_[pos_] != ',' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected a letter or an operation symbol");
    }
    return text_.substr(start, pos_ - start);
  }

  std::optional<std::size_t> op_index(std::string_view tok) const {
    if (tok.size() < 2 || tok[0] != 'f') {
      return std::nullopt;
    }
    std::size_t k = 0;
    for (char c : tok.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        return std::nullopt;
      }
      k = k * 10 + static_cast<std::size_t>(c - '0');
    }
    if (k >= alg_.op_count()) {
      return std::nullopt;
    }
    return k;
  }

  Term term() {
    std::string_view tok = token();
    skip_space();
    bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (!call) {
      if (auto a = alg_.index_of(tok)) {
        return Term::leaf(*a);
      }
      if (auto k = op_index(tok); k && alg_.arity(*k) == 0) {
        return Term::apply(*k, {});
      }
      fail("unknown letter '" + std::string(tok) + "'");
    }
    auto k = op_index(tok);
    if (!k) {
      fail("unknown operation '" + std::string(tok) + "'");
    }
    ++pos_;
    std::vector<Term> args;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      ++pos_;
    } else {
      while (true) {
        args.push_back(term());
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < text_.size() && text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    if (args.size() != alg_.arity(*k)) {
      fail("operation f" + std::to_string(*k) + " takes " + std::to_string(alg_.arity(*k)) +
           " arguments");
    }
    return Term::apply(*k, std::move(args));
  }

  std::string_view text_;
  const FinitePartialAlgebra& alg_;
  std::size_t pos_ = 0;
};

void enumerate_into(const FinitePartialAlgebra& alg, std::size_t depth,
                    std::vector<std::vector<Term>>& by_depth) {
  // by_depth[d] holds the terms of depth exactly d.
  by_depth.assign(depth + 1, {});
  for (Elem a = 0; a < alg.size(); ++a) {
    by_depth[0].push_back(Term::leaf(a));
  }
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Term> upto;
    for (std::size_t e = 0; e < d; ++e) {
      upto.insert(upto.end(), by_depth[e].begin(), by_depth[e].end());
    }
    for (std::size_t op = 0; op < alg.op_count(); ++op) {
      const unsigned n = alg.arity(op);
      if (n == 0) {
        if (d == 1) {
          by_depth[1].push_back(Term::apply(op, {}));
        }
        continue;
      }
      std::vector<std::size_t> idx(n, 0);
      while (true) {
        std::vector<Term> args;
        bool deep = false;
        for (unsigned i = 0; i < n; ++i) {
          args.push_back(upto[idx[i]]);
          deep = deep || upto[idx[i]].depth() == d - 1;
        }
        if (deep) {
          by_depth[d].push_back(Term::apply(op, std::move(args)));
        }
        unsigned i = 0;
        while (i < n && ++idx[i] == upto.size()) {
          idx[i] = 0;
          ++i;
        }
        if (i == n) {
          break;
        }
      }
    }
  }
}

}  // namespace

Term parse_term(std::string_view text, const FinitePartialAlgebra& alg) {
  return TermParser(text, alg).parse();
}

std::string render_term(const Term& w, const std::vector<std::string>& names) {
  if (w.is_letter()) {
    return names[w.letter];
  }
  std::string out = "f" + std::to_string(w.op) + "(";
  for (std::size_t i = 0; i < w.args.size(); ++i) {
    out += (i ? "," : "") + render_term(w.args[i], names);
  }
  return out + ")";
}

std::vector<Term> enumerate_terms(const FinitePartialAlgebra& alg, std::size_t depth) {
  std::vector<std::vector<Term>> by_depth;
  enumerate_into(alg, depth, by_depth);
  std::vector<Term> out;
  for (auto& level : by_depth) {
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace pglob
