#include <fstream>
#include <set>
#include <sstream>

#include "qvla/cli.hpp"

namespace qvla::cli {

namespace {

struct Cursor {
  std::string source;
  int line = 0;
  std::string text;

  [[noreturn]] void fail(size_t col, const std::string& what) const {
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col + 1) + ": " + what);
  }
  size_t col_of(const std::string& token) const {
    size_t p = text.find(token);
    return p == std::string::npos ? 0 : p;
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// split at + / - outside parentheses; signs stay with their term
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    // '^-' is an exponent sign, not a term boundary
    bool boundary = depth == 0 && (c == '+' || c == '-') && !(i > 0 && s[i - 1] == '^');
    if (boundary && !trim(cur).empty()) {
      out.push_back(trim(cur));
      cur.clear();
    }
    cur += c;
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

struct Parser {
  Cursor cur;
  QVLA q;
  bool have_field = false;
  std::map<std::string, Family> fams;
  std::map<std::string, std::string> basis;
  std::map<std::pair<GeneratorIndex, GeneratorIndex>, std::vector<StructureEntry>> table;
  std::map<std::string, std::vector<Rule>> rules;

  GeneratorIndex generator(const std::string& tok) {
    GeneratorIndex g;
    size_t br = tok.find('[');
    g.family = tok.substr(0, br);
    auto it = fams.find(g.family);
    if (it == fams.end()) cur.fail(cur.col_of(tok), "undeclared family '" + g.family + "'");
    if (br != std::string::npos) {
      if (tok.back() != ']') cur.fail(cur.col_of(tok), "unterminated parameter list in '" + tok + "'");
      std::istringstream in(tok.substr(br + 1, tok.size() - br - 2));
      for (std::string p; std::getline(in, p, ',');) {
        try {
          g.params.push_back(std::stoi(p));
        } catch (...) {
          cur.fail(cur.col_of(tok), "bad parameter '" + p + "'");
        }
      }
    }
    const Family& f = it->second;
    if (int(g.params.size()) != f.arity)
      cur.fail(cur.col_of(tok), "family '" + f.name + "' takes " + std::to_string(f.arity) + " parameters");
    if (f.arity > 0 && std::find(f.window.begin(), f.window.end(), g.params) == f.window.end())
      cur.fail(cur.col_of(tok), "generator '" + tok + "' outside the declared window");
    return g;
  }

  Scalar scalar(const std::string& s) {
    try {
      return parse_scalar(s, q.spec);
    } catch (const InputError& e) {
      cur.fail(cur.col_of(s), e.what());
    }
  }

  GroupElem group(const std::string& s) {
    try {
      return parse_group(s, q.spec);
    } catch (const InputError& e) {
      cur.fail(cur.col_of(s), std::string("not an element of Gamma: ") + e.what());
    }
  }

  // "[-] [coeff *] rest"
  std::pair<Scalar, std::string> coefficient(const std::string& term) {
    std::string t = trim(term);
    Scalar sign(1);
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
      if (t[0] == '-') sign = Scalar(-1);
      t = trim(t.substr(1));
    }
    int depth = 0;
    size_t star = std::string::npos;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      if (t[i] == ')') --depth;
      if (t[i] == '*' && depth == 0) star = i;
    }
    if (star == std::string::npos) return {sign, t};
    return {sign * scalar(trim(t.substr(0, star))), trim(t.substr(star + 1))};
  }

  GenComb gen_comb(const std::string& s) {
    GenComb out;
    for (const auto& term : split_terms(s)) {
      auto [c, rest] = coefficient(term);
      out.add(generator(rest), c);
    }
    return out;
  }

  // [D | D^n] gen@group
  std::pair<CurrentKey, Scalar> current_term(const std::string& term) {
    auto [c, rest] = coefficient(term);
    int n = 0;
    if (rest.rfind("D", 0) == 0 && rest.size() > 1 && (rest[1] == ' ' || rest[1] == '^')) {
      size_t sp = rest.find(' ');
      if (sp == std::string::npos) cur.fail(cur.col_of(rest), "derivative without a current");
      n = rest[1] == '^' ? std::stoi(rest.substr(2, sp - 2)) : 1;
      rest = trim(rest.substr(sp));
    }
    size_t at = rest.find('@');
    if (at == std::string::npos) cur.fail(cur.col_of(rest), "expected gen@group in '" + rest + "'");
    return {CurrentKey{generator(trim(rest.substr(0, at))), group(trim(rest.substr(at + 1))), n}, c};
  }

  void line(const std::string& raw) {
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) return;
    auto w = words(s);
    const std::string& kw = w[0];
    auto need_field = [&] {
      if (!have_field) cur.fail(0, "'" + kw + "' before the field line");
    };
    auto kv = [&](const std::string& tok, const std::string& key) -> std::optional<std::string> {
      if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
      return std::nullopt;
    };
    auto integer = [&](const std::string& v, const std::string& tok) {
      try {
        size_t used = 0;
        int r = std::stoi(v, &used);
        if (used == v.size()) return r;
      } catch (...) {
      }
      cur.fail(cur.col_of(tok), "expected an integer in '" + tok + "'");
    };
    if (kw == "name") {
      q.name = trim(s.substr(4));
    } else if (kw == "epsilon") {
      if (w.size() != 2) cur.fail(0, "epsilon takes one integer");
      q.epsilon = integer(w[1], w[1]);
    } else if (kw == "field") {
      for (size_t i = 1; i < w.size(); ++i) {
        if (auto v = kv(w[i], "T")) q.spec.T = integer(*v, w[i]);
        else if (auto v2 = kv(w[i], "params")) q.spec.k = integer(*v2, w[i]);
        else cur.fail(cur.col_of(w[i]), "unknown field option '" + w[i] + "'");
      }
      if (q.spec.T < 1 || q.spec.k < 0) cur.fail(0, "need T >= 1 and params >= 0");
      have_field = true;
    } else if (kw == "family") {
      need_field();
      if (w.size() < 2) cur.fail(0, "family needs a name");
      Family f{w[1], 0, false, 1, {}};
      int lo = 0, hi = -1;
      for (size_t i = 2; i < w.size(); ++i) {
        if (w[i] == "central") f.central = true;
        else if (auto v = kv(w[i], "arity")) f.arity = integer(*v, w[i]);
        else if (auto v2 = kv(w[i], "weight")) f.weight = integer(*v2, w[i]);
        else if (auto v3 = kv(w[i], "window")) {
          size_t dots = v3->find("..");
          if (dots == std::string::npos) cur.fail(cur.col_of(w[i]), "window is LO..HI");
          lo = integer(v3->substr(0, dots), w[i]);
          hi = integer(v3->substr(dots + 2), w[i]);
        } else cur.fail(cur.col_of(w[i]), "unknown family option '" + w[i] + "'");
      }
      if (fams.count(f.name)) cur.fail(cur.col_of(w[1]), "family '" + f.name + "' declared twice");
      if (f.arity > 0) {
        if (hi < lo) cur.fail(0, "a family with parameters needs window=LO..HI");
        std::vector<int> p(f.arity, lo);
        for (;;) {
          f.window.push_back(p);
          int k = f.arity - 1;
          while (k >= 0 && p[k] == hi) p[k--] = lo;
          if (k < 0) break;
          ++p[k];
        }
      }
      fams[f.name] = f;
      q.families.push_back(f);
    } else if (kw == "basis") {
      if (w.size() != 3) cur.fail(0, "basis FAMILY all|none|const|odd|even");
      if (!fams.count(w[1])) cur.fail(cur.col_of(w[1]), "undeclared family '" + w[1] + "'");
      static const std::set<std::string> kinds{"all", "none", "const", "odd", "even"};
      if (!kinds.count(w[2])) cur.fail(cur.col_of(w[2]), "unknown basis kind '" + w[2] + "'");
      basis[w[1]] = w[2];
    } else if (kw == "entry") {
      need_field();
      size_t colon = s.find(':');
      if (colon == std::string::npos) cur.fail(0, "entry A B alpha=G beta=G i=I j=J : VALUE");
      auto h = words(s.substr(0, colon));
      if (h.size() < 3) cur.fail(0, "entry needs two generators");
      GeneratorIndex a = generator(h[1]), b = generator(h[2]);
      StructureEntry e{q.one(), q.one(), 0, 0, {}};
      for (size_t i = 3; i < h.size(); ++i) {
        if (auto v = kv(h[i], "alpha")) e.alpha = group(*v);
        else if (auto v2 = kv(h[i], "beta")) e.beta = group(*v2);
        else if (auto v3 = kv(h[i], "i")) e.i = integer(*v3, h[i]);
        else if (auto v4 = kv(h[i], "j")) e.j = integer(*v4, h[i]);
        else cur.fail(cur.col_of(h[i]), "unknown entry option '" + h[i] + "'");
      }
      if (e.i < 0 || e.j < 0) cur.fail(0, "orders i, j must be nonnegative");
      e.value = gen_comb(s.substr(colon + 1));
      table[{a, b}].push_back(e);
    } else if (kw == "rule") {
      need_field();
      size_t colon = s.find(':');
      if (colon == std::string::npos || w.size() < 3) cur.fail(0, "rule NAME : TERM {+|- TERM}");
      auto terms = split_terms(s.substr(colon + 1));
      CurrentExpr e;
      e.twist = q.epsilon;
      e.kind = CurrentKind::Scaled;
      CurrentKey source;
      for (size_t i = 0; i < terms.size(); ++i) {
        auto [k, c] = current_term(terms[i]);
        if (i == 0) source = k;
        e.terms.add(k, c);
      }
      if (e.terms.coeff(source).is_zero()) cur.fail(cur.col_of(terms[0]), "the leading term cancels");
      rules[w[1]].push_back(Rule{source, e});
    } else {
      cur.fail(0, "unknown keyword '" + kw + "'");
    }
  }

  QVLA finish() {
    if (!have_field) cur.fail(0, "missing field line");
    if (q.families.empty()) cur.fail(0, "no families");
    if (q.name.empty()) q.name = cur.source;
    auto tab = std::make_shared<decltype(table)>(std::move(table));
    q.structure = [tab](const GeneratorIndex& a, const GeneratorIndex& b) {
      auto it = tab->find({a, b});
      return it == tab->end() ? std::vector<StructureEntry>{} : it->second;
    };
    const int eps = q.epsilon;
    for (auto& [name, list] : rules) {
      // rule expressions are built under the final epsilon
      for (auto& r : list) r.expr.twist = eps;
      auto shared = std::make_shared<std::vector<Rule>>(list);
      q.relations.push_back({name, [shared](const GeneratorIndex& a) {
                               std::vector<Rule> out;
                               for (const auto& r : *shared)
                                 if (r.source.a == a) out.push_back(r);
                               return out;
                             }});
    }
    auto kinds = std::make_shared<std::map<std::string, std::string>>(basis);
    q.in_g_basis = [kinds, eps](const GMode& x) {
      auto it = kinds->find(x.a.family);
      if (it == kinds->end() || it->second == "all") return true;
      if (it->second == "none") return false;
      if (it->second == "const") return x.m == eps - 1;
      return (std::abs(x.m) % 2 == 1) == (it->second == "odd");
    };
    return q;
  }
};

}  // namespace

QVLA parse_spec(const std::string& text, const std::string& source) {
  Parser p;
  p.cur.source = source;
  std::istringstream in(text);
  std::string raw;
  bool header = false;
  while (std::getline(in, raw)) {
    ++p.cur.line;
    p.cur.text = raw;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (!header) {
      if (s != "qvla-spec v1") p.cur.fail(0, "expected header 'qvla-spec v1'");
      header = true;
      continue;
    }
    p.line(raw);
  }
  if (!header) throw InputError(source + ": empty file");
  return p.finish();
}

QVLA parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path);
}

}  // namespace qvla::cli
