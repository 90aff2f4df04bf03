#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bstar/formula.hpp"
#include "bstar/interp.hpp"
#include "bstar/structure.hpp"

namespace bstar {

/// Parse failure with position information.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, int line, int column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line(line),
        column(column) {}
  int line, column;
};

namespace dsl {

struct Token {
  std::string text;
  int line = 1, column = 1;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') advance(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      advance(c);
      ++i;
      continue;
    }
    if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({"!=", line, col});
      advance(c);
      advance('=');
      i += 2;
      continue;
    }
    if (std::string("(){}[];=").find(c) != std::string::npos) {
      out.push_back({std::string(1, c), line, col});
      advance(c);
      ++i;
      continue;
    }
    int start_col = col;
    std::string word;
    while (i < text.size()) {
      char d = text[i];
      if (std::isspace(static_cast<unsigned char>(d)) ||
          std::string("(){}[];=,#").find(d) != std::string::npos)
        break;
      word += d;
      advance(d);
      ++i;
    }
    out.push_back({word, line, start_col});
  }
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }

  const Token& peek() const {
    if (done()) throw parse_error("unexpected end of input", last_line(), last_col());
    return tokens_[pos_];
  }

  Token next() {
    Token t = peek();
    ++pos_;
    return t;
  }

  Token expect(const std::string& text) {
    Token t = next();
    if (t.text != text) throw parse_error("expected '" + text + "', found '" + t.text + "'", t.line, t.column);
    return t;
  }

  bool accept(const std::string& text) {
    if (!done() && tokens_[pos_].text == text) {
      ++pos_;
      return true;
    }
    return false;
  }

  int expect_int() {
    Token t = next();
    try {
      std::size_t used = 0;
      int v = std::stoi(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw parse_error("expected an integer, found '" + t.text + "'", t.line, t.column);
    }
  }

 private:
  int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }
  int last_col() const { return tokens_.empty() ? 1 : tokens_.back().column; }
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Arithmetic terms over one bound index variable, for countable families.
// ---------------------------------------------------------------------------

struct IndexTerm {
  // value = scale * k + offset, or a constant when scale = 0
  int scale = 0, offset = 0;
  int eval(int k) const { return scale * k + offset; }
};

inline IndexTerm parse_index_term(TokenStream& ts, const std::string& var) {
  Token t = ts.peek();
  if (t.text == "(") {
    ts.next();
    Token op = ts.next();
    IndexTerm a = parse_index_term(ts, var);
    IndexTerm b = parse_index_term(ts, var);
    ts.expect(")");
    if (op.text == "+") return {a.scale + b.scale, a.offset + b.offset};
    if (op.text == "*") {
      if (a.scale != 0 && b.scale != 0)
        throw parse_error("index terms must stay linear", op.line, op.column);
      if (a.scale == 0) return {a.offset * b.scale, a.offset * b.offset};
      return {b.offset * a.scale, b.offset * a.offset};
    }
    throw parse_error("unknown index operator '" + op.text + "'", op.line, op.column);
  }
  ts.next();
  if (t.text == var) return {1, 0};
  try {
    return {0, std::stoi(t.text)};
  } catch (...) {
    throw parse_error("expected '" + var + "' or an integer, found '" + t.text + "'", t.line,
                      t.column);
  }
}

// ---------------------------------------------------------------------------
// Forcing-language formulas, prefix notation.
// ---------------------------------------------------------------------------

inline bool parse_polarity(TokenStream& ts) {
  Token t = ts.next();
  if (t.text == "=") return true;
  if (t.text == "!=") return false;
  throw parse_error("expected '=' or '!=', found '" + t.text + "'", t.line, t.column);
}

/// Parses one formula; `var` names the enclosing family index, if any, and
/// `k` carries its value during instantiation.
inline FormulaPtr parse_formula_rec(TokenStream& ts, int ell, const Signature* sig,
                                    const std::string& var, int k);

inline FormulaPtr parse_formula_list_junction(TokenStream& ts, int ell, const Signature* sig,
                                              const std::string& var, int k, bool conj) {
  std::vector<FormulaPtr> parts;
  while (!ts.accept(")")) parts.push_back(parse_formula_rec(ts, ell, sig, var, k));
  return conj ? Formula::fin_and(ell, std::move(parts)) : Formula::fin_or(ell, std::move(parts));
}

inline FormulaPtr parse_formula_rec(TokenStream& ts, int ell, const Signature* sig,
                                    const std::string& var, int k) {
  Token open = ts.expect("(");
  Token head = ts.next();
  auto idx = [&](void) { return parse_index_term(ts, var).eval(k); };

  if (head.text == "comp") {
    int i = ts.expect_int();
    int j = ts.expect_int();
    int m = idx();
    int n = idx();
    bool pos = parse_polarity(ts);
    ts.expect(")");
    return Formula::comp(ell, i, j, m, n, pos);
  }
  if (head.text == "val") {
    int i = ts.expect_int();
    int m = idx();
    int n = idx();
    bool pos = true;
    if (!ts.accept(")")) {
      pos = parse_polarity(ts);
      ts.expect(")");
    }
    return Formula::val(ell, i, m, n, pos);
  }
  if (head.text == "rel" || head.text == "nrel") {
    int i = ts.expect_int();
    Token name = ts.next();
    if (!sig) throw parse_error("no signature in scope for relation atoms", name.line, name.column);
    auto sym = sig->index_of(name.text);
    if (!sym) throw parse_error("unknown relation '" + name.text + "'", name.line, name.column);
    std::vector<Elem> args;
    while (!ts.accept(")")) args.push_back(idx());
    if (static_cast<int>(args.size()) != sig->arity(*sym))
      throw parse_error("arity mismatch for '" + name.text + "'", name.line, name.column);
    return Formula::rel(ell, i, *sym, std::move(args), head.text == "rel");
  }
  if (head.text == "and") return parse_formula_list_junction(ts, ell, sig, var, k, true);
  if (head.text == "or") return parse_formula_list_junction(ts, ell, sig, var, k, false);
  if (head.text == "and*" || head.text == "or*") {
    Token v = ts.next();
    // Snapshot the body tokens so the generator can re-instantiate them.
    std::vector<Token> body;
    int depth = 0;
    for (;;) {
      Token t = ts.next();
      if (t.text == "(") ++depth;
      if (t.text == ")") {
        if (depth == 0) break;
        --depth;
      }
      body.push_back(t);
    }
    if (body.empty() || body.front().text != "(")
      throw parse_error("a countable family needs a parenthesized body", v.line, v.column);
    auto shared_body = std::make_shared<std::vector<Token>>(std::move(body));
    auto shared_sig = sig ? std::make_shared<Signature>(*sig) : nullptr;
    std::string vn = v.text;
    std::string label = vn + " ...";
    auto gen = make_generator(
        [shared_body, shared_sig, vn, ell](int n) {
          TokenStream sub(*shared_body);
          return parse_formula_rec(sub, ell, shared_sig ? shared_sig.get() : nullptr, vn, n);
        },
        std::nullopt, label);
    return head.text == "and*" ? Formula::count_and(ell, std::move(gen))
                               : Formula::count_or(ell, std::move(gen));
  }
  throw parse_error("unknown formula head '" + head.text + "'", head.line, head.column);
}

}  // namespace dsl

/// Parses one forcing-language formula in prefix notation.
inline FormulaPtr parse_formula(const std::string& text, int ell, const Signature* sig = nullptr) {
  dsl::TokenStream ts(dsl::tokenize(text));
  FormulaPtr f = dsl::parse_formula_rec(ts, ell, sig, "", 0);
  if (!ts.done()) {
    dsl::Token t = ts.peek();
    throw parse_error("trailing input after formula", t.line, t.column);
  }
  return f;
}

/// Parses a condition like "(5,3);(3)".
inline Condition parse_condition(const std::string& text) {
  std::vector<InjectiveTuple> parts;
  dsl::TokenStream ts(dsl::tokenize(text));
  for (;;) {
    ts.expect("(");
    std::vector<Elem> entries;
    while (!ts.accept(")")) entries.push_back(ts.expect_int());
    parts.emplace_back(entries);
    if (ts.done()) break;
    ts.expect(";");
  }
  return Condition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Structure and interpretation declarations.
// ---------------------------------------------------------------------------

struct DslEnvironment {
  std::vector<RelationSymbol> pending_relations;
  std::map<std::string, StructureOracle> structures;
  std::map<std::string, Interpretation> interpretations;
};

namespace dsl {

/// First-order formulas evaluated over a structure, used by interpretation
/// declarations. Variables name tuple entries (`x0`, `y1`, `t2_0`) or bound
/// indices of the bounded quantifiers.
struct EvalContext {
  const StructureOracle* world;
  const TupleArgs* args;
  const EvalBounds* bounds;
  std::map<std::string, Elem>* vars;
};

inline std::optional<Elem> term_value(const Token& t, const EvalContext& cx) {
  const std::string& s = t.text;
  auto entry = [&](std::size_t tup, std::size_t pos) -> std::optional<Elem> {
    if (tup >= cx.args->size() || pos >= (*cx.args)[tup].size()) return std::nullopt;
    return (*cx.args)[tup][pos];
  };
  if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-')) {
    try {
      return std::stoi(s);
    } catch (...) {
      throw parse_error("bad numeric term '" + s + "'", t.line, t.column);
    }
  }
  auto it = cx.vars->find(s);
  if (it != cx.vars->end()) return it->second;
  if (s.size() >= 2 && (s[0] == 'x' || s[0] == 'y')) {
    std::size_t pos = static_cast<std::size_t>(std::stoul(s.substr(1)));
    return entry(s[0] == 'x' ? 0 : 1, pos);
  }
  if (s.size() >= 4 && s[0] == 't') {
    auto sep = s.find('_');
    if (sep != std::string::npos) {
      std::size_t tup = static_cast<std::size_t>(std::stoul(s.substr(1, sep - 1)));
      std::size_t pos = static_cast<std::size_t>(std::stoul(s.substr(sep + 1)));
      return entry(tup, pos);
    }
  }
  throw parse_error("unknown term '" + s + "'", t.line, t.column);
}

inline Truth eval_fo(TokenStream& ts, const EvalContext& cx) {
  Token open = ts.expect("(");
  Token head = ts.next();
  if (head.text == "rel" || head.text == "nrel") {
    Token name = ts.next();
    auto sym = cx.world->signature().index_of(name.text);
    if (!sym) throw parse_error("unknown relation '" + name.text + "'", name.line, name.column);
    std::vector<Elem> vals;
    bool missing = false;
    while (!ts.accept(")")) {
      auto v = term_value(ts.next(), cx);
      if (!v) missing = true;
      else vals.push_back(*v);
    }
    if (missing) return Truth::is_false;  // a tuple entry is absent: not in the relation
    if (static_cast<int>(vals.size()) != cx.world->signature().arity(*sym))
      throw parse_error("arity mismatch for '" + name.text + "'", name.line, name.column);
    Truth t = cx.world->query(*sym, vals);
    return head.text == "rel" ? t : truth_not(t);
  }
  if (head.text == "=" || head.text == "!=") {
    auto a = term_value(ts.next(), cx);
    auto b = term_value(ts.next(), cx);
    ts.expect(")");
    if (!a || !b) return Truth::is_false;
    Truth t = truth_of(*a == *b);
    return head.text == "=" ? t : truth_not(t);
  }
  if (head.text == "not") {
    Truth t = eval_fo(ts, cx);
    ts.expect(")");
    return truth_not(t);
  }
  if (head.text == "and" || head.text == "or") {
    bool conj = head.text == "and";
    Truth acc = conj ? Truth::is_true : Truth::is_false;
    while (!ts.accept(")")) {
      Truth t = eval_fo(ts, cx);
      acc = conj ? truth_and(acc, t) : truth_or(acc, t);
    }
    return acc;
  }
  if (head.text == "exists" || head.text == "forall") {
    Token v = ts.next();
    // Snapshot the body for the bounded sweep.
    std::vector<Token> body;
    int depth = 0;
    for (;;) {
      Token t = ts.next();
      if (t.text == "(") ++depth;
      if (t.text == ")") {
        if (depth == 0) break;
        --depth;
      }
      body.push_back(t);
    }
    bool existential = head.text == "exists";
    Truth acc = existential ? Truth::is_false : Truth::is_true;
    for (Elem e = 0; e < cx.bounds->search; ++e) {
      (*cx.vars)[v.text] = e;
      TokenStream sub(body);
      Truth t = eval_fo(sub, cx);
      acc = existential ? truth_or(acc, t) : truth_and(acc, t);
      if (existential && is_true(acc)) break;
      if (!existential && is_false(acc)) break;
    }
    cx.vars->erase(v.text);
    return acc;
  }
  throw parse_error("unknown head '" + head.text + "'", head.line, head.column);
}

/// A definable relation backed by first-order DSL text; expected tuple count
/// and length checks happen before evaluation.
inline DefinableRelation fo_relation(std::string text, int tuple_count,
                                     std::vector<int> tuple_lengths, std::string label) {
  auto tokens = std::make_shared<std::vector<Token>>(tokenize(text));
  return {ComplexityTag{1, ComplexityTag::Side::Sigma}, std::move(label),
          [tokens, tuple_count, tuple_lengths](const StructureOracle& world, const TupleArgs& args,
                                               const EvalBounds& b) -> Truth {
            if (static_cast<int>(args.size()) != tuple_count) return Truth::is_false;
            for (std::size_t i = 0; i < tuple_lengths.size(); ++i)
              if (tuple_lengths[i] >= 0 &&
                  args[i].size() != static_cast<std::size_t>(tuple_lengths[i]))
                return Truth::is_false;
            std::map<std::string, Elem> vars;
            EvalContext cx{&world, &args, &b, &vars};
            TokenStream ts(*tokens);
            return eval_fo(ts, cx);
          }};
}

}  // namespace dsl

/// Loads declarations into an environment: relation symbols, structures
/// (built-in generators or finite tables), and interpretations.
inline void load_declarations(const std::string& text, DslEnvironment& env) {
  dsl::TokenStream ts(dsl::tokenize(text));
  while (!ts.done()) {
    dsl::Token head = ts.next();
    if (head.text == "rel") {
      dsl::Token name = ts.next();
      int arity = ts.expect_int();
      env.pending_relations.push_back({name.text, arity});
      continue;
    }
    if (head.text == "structure") {
      dsl::Token name = ts.next();
      dsl::Token kind = ts.next();
      if (kind.text == "builtin") {
        dsl::Token gen = ts.next();
        StructureOracle s;
        if (gen.text == "pureset") s = make_pure_set();
        else if (gen.text == "dlo") s = make_dense_order();
        else if (gen.text == "omega") s = make_omega_order();
        else if (gen.text == "zring") s = make_integer_ring();
        else if (gen.text == "qring") s = make_rational_ring();
        else if (gen.text == "pairs") s = make_matched_pairs();
        else if (gen.text == "classpoints") s = make_class_points();
        else
          throw parse_error("unknown generator '" + gen.text + "'", gen.line, gen.column);
        env.structures.emplace(name.text, s.renamed(name.text));
        continue;
      }
      if (kind.text == "table") {
        Signature sig(env.pending_relations);
        ts.expect("{");
        std::vector<std::pair<int, std::vector<Elem>>> facts;
        Elem size = 0;
        while (!ts.accept("}")) {
          dsl::Token rel = ts.next();
          auto sym = sig.index_of(rel.text);
          if (!sym) throw parse_error("unknown relation '" + rel.text + "'", rel.line, rel.column);
          ts.expect("(");
          std::vector<Elem> tuple;
          while (!ts.accept(")")) {
            tuple.push_back(ts.expect_int());
            size = std::max(size, tuple.back() + 1);
          }
          facts.push_back({*sym, std::move(tuple)});
        }
        env.structures.emplace(name.text, make_finite_table(name.text, sig, std::move(facts), size));
        continue;
      }
      throw parse_error("expected 'builtin' or 'table'", kind.line, kind.column);
    }
    if (head.text == "interp") {
      dsl::Token name = ts.next();
      ts.expect("{");
      Interpretation I;
      I.name = name.text;
      int dom_len = -1;
      std::vector<std::pair<std::string, std::string>> rel_texts;
      std::string dom_text, sim_text;
      while (!ts.accept("}")) {
        dsl::Token field = ts.next();
        auto take_sexpr = [&ts]() {
          std::vector<dsl::Token> body;
          int depth = 0;
          dsl::Token open = ts.expect("(");
          body.push_back(open);
          ++depth;
          while (depth > 0) {
            dsl::Token t = ts.next();
            if (t.text == "(") ++depth;
            if (t.text == ")") --depth;
            body.push_back(t);
          }
          std::string s;
          for (const auto& t : body) s += t.text + " ";
          return s;
        };
        if (field.text == "dom") {
          ts.expect("[");
          dom_len = ts.expect_int();
          ts.expect("]");
          ts.expect("=");
          dom_text = take_sexpr();
          ts.accept(";");
          continue;
        }
        if (field.text == "sim") {
          ts.expect("=");
          sim_text = take_sexpr();
          ts.accept(";");
          continue;
        }
        if (field.text == "rel") {
          dsl::Token rn = ts.next();
          ts.expect("=");
          rel_texts.push_back({rn.text, take_sexpr()});
          ts.accept(";");
          continue;
        }
        throw parse_error("unknown interpretation field '" + field.text + "'", field.line,
                          field.column);
      }
      if (dom_len < 0 || dom_text.empty() || sim_text.empty())
        throw parse_error("an interpretation needs dom[k] and sim", head.line, head.column);
      I.dom = dsl::fo_relation(dom_text, 1, {dom_len}, name.text + ".dom");
      I.sim = dsl::fo_relation(sim_text, 2, {dom_len, dom_len}, name.text + ".sim");
      std::vector<RelationSymbol> syms;
      for (const auto& [rn, txt] : rel_texts) {
        // Arity defaults to the declared relation arity when known, else 2.
        int arity = 2;
        for (const auto& r : env.pending_relations)
          if (r.name == rn) arity = r.arity;
        syms.push_back({rn, arity});
        I.rels.push_back(dsl::fo_relation(
            txt, arity, std::vector<int>(static_cast<std::size_t>(arity), dom_len),
            name.text + "." + rn));
      }
      I.target_sig = Signature(syms);
      I.complexity = {1, ComplexityTag::Side::Sigma};
      env.interpretations.emplace(name.text, std::move(I));
      continue;
    }
    throw parse_error("unknown declaration '" + head.text + "'", head.line, head.column);
  }
}

}  // namespace bstar
