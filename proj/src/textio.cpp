#include "opdkit/textio.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace opdkit::io {

using opd::Profile;
using smc::Sequence;

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

struct Cursor {
  const std::vector<Line>& lines;
  size_t pos = 0;
  bool done() const { return pos >= lines.size(); }
  const Line& peek() const { return lines[pos]; }
  const Line& next() { return lines[pos++]; }
};

int expect_int(const Line& l, const std::string& tok) {
  try {
    size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw parse_error(l.number, "expected an integer, got '" + tok + "'");
  }
}

// Reads "( a b c )" starting at index i; returns the names and advances i.
std::vector<std::string> read_group(const Line& l, size_t& i) {
  if (i >= l.tokens.size() || l.tokens[i] != "(")
    throw parse_error(l.number, "expected '('");
  ++i;
  std::vector<std::string> out;
  while (i < l.tokens.size() && l.tokens[i] != ")") out.push_back(l.tokens[i++]);
  if (i >= l.tokens.size()) throw parse_error(l.number, "expected ')'");
  ++i;
  return out;
}

std::string id_name_of_sequence(const Sequence& s, const std::vector<std::string>& colours) {
  return "id" + smc::sequence_name(s, colours);
}

// Reference names: identities and units print under their canonical
// implicit names, everything else under its own.
std::string arrow_ref(const cat::FinCategory& c, int a) {
  if (c.is_identity(a))
    return "id_" + c.objects[static_cast<size_t>(c.arrows[static_cast<size_t>(a)].dom)];
  return c.arrows[static_cast<size_t>(a)].name;
}

std::string mor_ref(const smc::BoundedSMC& m, int f) {
  if (m.is_identity(f))
    return id_name_of_sequence(m.objects[static_cast<size_t>(m.mors[static_cast<size_t>(f)].dom)],
                               m.colours);
  return m.mors[static_cast<size_t>(f)].name;
}

std::string op_ref(const opd::FinOperad& p, int o) {
  const auto& op = p.ops[static_cast<size_t>(o)];
  if (op.arity() == 1 && p.unit[static_cast<size_t>(op.output)] == o)
    return "id_" + p.colours[static_cast<size_t>(op.output)];
  return op.name;
}

// ---------------------------------------------------------------------------
// Category block

struct CategoryBlock {
  cat::CatPtr category;
};

// Consumes objects/arrow/compose lines until a token outside the block.
CategoryBlock parse_category_block(Cursor& cur) {
  cat::CategoryBuilder b;
  bool saw_objects = false;
  while (!cur.done()) {
    const Line& l = cur.peek();
    const std::string& head = l.tokens[0];
    if (head == "objects:") {
      cur.next();
      saw_objects = true;
      for (size_t i = 1; i < l.tokens.size(); ++i) b.object(l.tokens[i]);
    } else if (head == "arrow") {
      cur.next();
      // arrow f: a -> b
      if (l.tokens.size() != 5 || l.tokens[3] != "->" || l.tokens[1].back() != ':')
        throw parse_error(l.number, "expected 'arrow <id>: <obj> -> <obj>'");
      b.arrow(l.tokens[1].substr(0, l.tokens[1].size() - 1), l.tokens[2], l.tokens[4]);
    } else if (head == "compose") {
      cur.next();
      if (l.tokens.size() != 5 || l.tokens[3] != "=")
        throw parse_error(l.number, "expected 'compose <g> <f> = <h>'");
      b.compose(l.tokens[1], l.tokens[2], l.tokens[4]);
    } else {
      break;
    }
  }
  if (!saw_objects) throw parse_error(cur.done() ? 0 : cur.peek().number, "missing 'objects:' line");
  return CategoryBlock{b.build()};
}

void print_category_block(std::ostream& os, const cat::FinCategory& c) {
  os << "objects:";
  for (const auto& o : c.objects) os << ' ' << o;
  os << '\n';
  for (int a = 0; a < c.num_arrows(); ++a) {
    if (c.is_identity(a)) continue;
    const auto& ar = c.arrows[static_cast<size_t>(a)];
    os << "arrow " << ar.name << ": " << c.objects[static_cast<size_t>(ar.dom)] << " -> "
       << c.objects[static_cast<size_t>(ar.cod)] << '\n';
  }
  std::vector<std::string> lines;
  for (int f = 0; f < c.num_arrows(); ++f) {
    if (c.is_identity(f)) continue;
    const auto& af = c.arrows[static_cast<size_t>(f)];
    for (int g : c.arrows_from(af.cod)) {
      if (c.is_identity(g)) continue;
      lines.push_back("compose " + arrow_ref(c, g) + " " + arrow_ref(c, f) + " = " +
                      arrow_ref(c, c.compose(g, f)));
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l << '\n';
}

// ---------------------------------------------------------------------------
// Operad block

opd::OpdPtr parse_operad_block(Cursor& cur, int arity_bound) {
  auto p = std::make_shared<opd::FinOperad>();
  std::map<std::string, int> colour_idx, op_idx;
  struct SubstLine {
    int line;
    std::string outer;
    std::vector<std::string> inners;
    std::string result;
  };
  struct ActLine {
    int line;
    std::string op;
    std::vector<int> images;
    std::string result;
  };
  std::vector<SubstLine> substs;
  std::vector<ActLine> acts;
  struct OpLine {
    int line;
    std::string name;
    std::vector<std::string> inputs;
    std::string output;
  };
  std::vector<OpLine> ops;
  std::vector<std::string> colours;

  while (!cur.done()) {
    const Line& l = cur.peek();
    const std::string& head = l.tokens[0];
    if (head == "colours:") {
      cur.next();
      for (size_t i = 1; i < l.tokens.size(); ++i) colours.push_back(l.tokens[i]);
    } else if (head == "op") {
      cur.next();
      // op m: ( a b ) -> c
      if (l.tokens.size() < 5 || l.tokens[1].back() != ':')
        throw parse_error(l.number, "expected 'op <id>: ( c ... ) -> c'");
      size_t i = 2;
      auto inputs = read_group(l, i);
      if (i + 2 != l.tokens.size() || l.tokens[i] != "->")
        throw parse_error(l.number, "expected '-> <colour>' after the profile");
      ops.push_back(OpLine{l.number, l.tokens[1].substr(0, l.tokens[1].size() - 1), inputs,
                           l.tokens[i + 1]});
    } else if (head == "subst") {
      cur.next();
      // subst outer [ i1 i2 ] = res
      size_t i = 2;
      if (l.tokens.size() < 5 || l.tokens[i] != "[")
        throw parse_error(l.number, "expected 'subst <outer> [ <inner> ... ] = <op>'");
      ++i;
      std::vector<std::string> inners;
      while (i < l.tokens.size() && l.tokens[i] != "]") inners.push_back(l.tokens[i++]);
      if (i + 3 != l.tokens.size() || l.tokens[i] != "]" || l.tokens[i + 1] != "=")
        throw parse_error(l.number, "expected '] = <op>'");
      substs.push_back(SubstLine{l.number, l.tokens[1], inners, l.tokens[i + 2]});
    } else if (head == "act") {
      cur.next();
      // act op perm 2 1 = res
      if (l.tokens.size() < 5 || l.tokens[2] != "perm")
        throw parse_error(l.number, "expected 'act <op> perm <images...> = <op>'");
      std::vector<int> images;
      size_t i = 3;
      while (i < l.tokens.size() && l.tokens[i] != "=") images.push_back(expect_int(l, l.tokens[i++]));
      if (i + 2 != l.tokens.size()) throw parse_error(l.number, "expected '= <op>'");
      acts.push_back(ActLine{l.number, l.tokens[1], images, l.tokens[i + 1]});
    } else {
      break;
    }
  }

  p->init(colours, arity_bound);
  for (int i = 0; i < static_cast<int>(colours.size()); ++i) {
    if (!colour_idx.emplace(colours[static_cast<size_t>(i)], i).second)
      throw input_error("duplicate colour: " + colours[static_cast<size_t>(i)]);
  }
  auto colour_of = [&](const std::string& n, int line) {
    auto it = colour_idx.find(n);
    if (it == colour_idx.end())
      throw input_error("line " + std::to_string(line) + ": unknown colour " + n);
    return it->second;
  };
  // Implicit units first.
  for (int c = 0; c < static_cast<int>(colours.size()); ++c) {
    const std::string nm = "id_" + colours[static_cast<size_t>(c)];
    op_idx[nm] = p->add_op(nm, {c}, c);
    p->set_unit(c, op_idx[nm]);
  }
  for (const auto& o : ops) {
    if (op_idx.count(o.name))
      throw input_error("line " + std::to_string(o.line) + ": duplicate or reserved op " + o.name);
    Profile profile;
    for (const auto& n : o.inputs) profile.push_back(colour_of(n, o.line));
    op_idx[o.name] = p->add_op(o.name, profile, colour_of(o.output, o.line));
  }
  auto op_of = [&](const std::string& n, int line) {
    auto it = op_idx.find(n);
    if (it == op_idx.end())
      throw input_error("line " + std::to_string(line) + ": unknown op " + n);
    return it->second;
  };
  for (const auto& s : substs) {
    const int outer = op_of(s.outer, s.line);
    std::vector<int> inners;
    for (const auto& n : s.inners) inners.push_back(op_of(n, s.line));
    const int result = op_of(s.result, s.line);
    // Typing checks.
    const auto& oop = p->ops[static_cast<size_t>(outer)];
    if (static_cast<int>(inners.size()) != oop.arity())
      throw input_error("line " + std::to_string(s.line) + ": subst arity mismatch");
    for (size_t k = 0; k < inners.size(); ++k)
      if (p->ops[static_cast<size_t>(inners[k])].output != oop.profile[k])
        throw input_error("line " + std::to_string(s.line) + ": subst colour mismatch at slot " +
                          std::to_string(k + 1));
    p->set_subst(outer, inners, result);
  }
  for (const auto& a : acts) {
    const int op = op_of(a.op, a.line);
    perm::Permutation rho;
    try {
      rho = perm::Permutation(a.images);
    } catch (const input_error& e) {
      throw input_error("line " + std::to_string(a.line) + ": " + e.what());
    }
    if (rho.size() != p->ops[static_cast<size_t>(op)].arity())
      throw input_error("line " + std::to_string(a.line) + ": act arity mismatch");
    p->set_act(op, rho, op_of(a.result, a.line));
  }

  // Inferred entries: unit laws and identity actions, then forced
  // completions on singleton multihoms.
  p->freeze();
  for (int o = 0; o < p->num_ops(); ++o) {
    const auto& op = p->ops[static_cast<size_t>(o)];
    p->set_subst(p->unit[static_cast<size_t>(op.output)], {o}, o);
    std::vector<int> units;
    for (int c : op.profile) units.push_back(p->unit[static_cast<size_t>(c)]);
    p->set_subst(o, units, o);
    p->set_act(o, perm::Permutation::id(op.arity()), o);
    for (const auto& rho : perm::all_permutations(op.arity())) {
      if (p->act(o, rho) >= 0) continue;
      Profile permuted(op.profile.size());
      for (int i = 1; i <= op.arity(); ++i)
        permuted[static_cast<size_t>(i) - 1] = op.profile[static_cast<size_t>(rho(i)) - 1];
      const auto& candidates = p->multihom(permuted, op.output);
      if (candidates.size() == 1) p->set_act(o, rho, candidates.front());
    }
  }
  return p;
}

void print_operad_block(std::ostream& os, const opd::FinOperad& p) {
  os << "colours:";
  for (const auto& c : p.colours) os << ' ' << c;
  os << '\n';
  std::vector<bool> is_unit(static_cast<size_t>(p.num_ops()), false);
  for (int u : p.unit) is_unit[static_cast<size_t>(u)] = true;
  for (int o = 0; o < p.num_ops(); ++o) {
    if (is_unit[static_cast<size_t>(o)]) continue;
    const auto& op = p.ops[static_cast<size_t>(o)];
    os << "op " << op.name << ": (";
    for (int c : op.profile) os << ' ' << p.colours[static_cast<size_t>(c)];
    os << " ) -> " << p.colours[static_cast<size_t>(op.output)] << '\n';
  }
  // Substitutions other than the inferred unit laws, then actions; both
  // sorted for a canonical order that survives re-parsing.
  std::vector<std::string> lines;
  for (int o = 0; o < p.num_ops(); ++o) {
    const auto& op = p.ops[static_cast<size_t>(o)];
    const int n = op.arity();
    opd::for_each_inner_tuple(p, op.profile, p.arity_bound, [&](const std::vector<int>& inners, int) {
      bool all_units = true;
      for (int q : inners) all_units = all_units && is_unit[static_cast<size_t>(q)];
      const int res = p.subst(o, inners);
      const bool inferred = all_units || (is_unit[static_cast<size_t>(o)] && n == 1);
      if (res >= 0 && !inferred) {
        std::string line = "subst " + op_ref(p, o) + " [";
        for (int q : inners) line += " " + op_ref(p, q);
        lines.push_back(line + " ] = " + op_ref(p, res));
      }
    });
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l << '\n';
  lines.clear();
  for (int o = 0; o < p.num_ops(); ++o) {
    const auto& op = p.ops[static_cast<size_t>(o)];
    for (const auto& rho : perm::all_permutations(op.arity())) {
      if (rho.is_identity()) continue;
      const int res = p.act(o, rho);
      if (res < 0) continue;
      std::string line = "act " + op_ref(p, o) + " perm";
      for (int v : rho.images) line += " " + std::to_string(v);
      lines.push_back(line + " = " + op_ref(p, res));
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l << '\n';
}

// ---------------------------------------------------------------------------
// SMC block

smc::SmcPtr parse_smc_block(Cursor& cur, int bound) {
  std::vector<std::string> colours;
  struct MorLine {
    int line;
    std::string name;
    std::vector<std::string> dom, cod;
  };
  struct PairLine {
    int line;
    std::string a, b, result;
  };
  struct SymLine {
    int line;
    std::vector<int> images;
    std::vector<std::string> on;
    std::string result;
  };
  std::vector<MorLine> mors;
  std::vector<PairLine> composes, tensors;
  std::vector<SymLine> syms;

  while (!cur.done()) {
    const Line& l = cur.peek();
    const std::string& head = l.tokens[0];
    if (head == "colours:") {
      cur.next();
      for (size_t i = 1; i < l.tokens.size(); ++i) colours.push_back(l.tokens[i]);
    } else if (head == "mor") {
      cur.next();
      if (l.tokens.size() < 6 || l.tokens[1].back() != ':')
        throw parse_error(l.number, "expected 'mor <id>: ( c ... ) -> ( c ... )'");
      size_t i = 2;
      auto dom = read_group(l, i);
      if (i >= l.tokens.size() || l.tokens[i] != "->")
        throw parse_error(l.number, "expected '->'");
      ++i;
      auto cod = read_group(l, i);
      if (i != l.tokens.size()) throw parse_error(l.number, "unexpected trailing tokens");
      mors.push_back(MorLine{l.number, l.tokens[1].substr(0, l.tokens[1].size() - 1), dom, cod});
    } else if (head == "compose" || head == "tensor") {
      cur.next();
      if (l.tokens.size() != 5 || l.tokens[3] != "=")
        throw parse_error(l.number, "expected '" + head + " <f> <g> = <h>'");
      (head == "compose" ? composes : tensors)
          .push_back(PairLine{l.number, l.tokens[1], l.tokens[2], l.tokens[4]});
    } else if (head == "sym") {
      cur.next();
      if (l.tokens.size() < 6 || l.tokens[1] != "perm")
        throw parse_error(l.number, "expected 'sym perm <images...> on ( c ... ) = <mor>'");
      std::vector<int> images;
      size_t i = 2;
      while (i < l.tokens.size() && l.tokens[i] != "on") images.push_back(expect_int(l, l.tokens[i++]));
      if (i >= l.tokens.size()) throw parse_error(l.number, "expected 'on'");
      ++i;
      auto on = read_group(l, i);
      if (i + 2 != l.tokens.size() || l.tokens[i] != "=")
        throw parse_error(l.number, "expected '= <mor>'");
      syms.push_back(SymLine{l.number, images, on, l.tokens[i + 1]});
    } else {
      break;
    }
  }

  auto m = std::make_shared<smc::BoundedSMC>();
  m->init(colours, bound);
  std::map<std::string, int> colour_idx, mor_idx;
  for (int i = 0; i < static_cast<int>(colours.size()); ++i) {
    if (!colour_idx.emplace(colours[static_cast<size_t>(i)], i).second)
      throw input_error("duplicate colour: " + colours[static_cast<size_t>(i)]);
  }
  auto seq_of = [&](const std::vector<std::string>& names, int line) {
    Sequence s;
    for (const auto& n : names) {
      auto it = colour_idx.find(n);
      if (it == colour_idx.end())
        throw input_error("line " + std::to_string(line) + ": unknown colour " + n);
      s.push_back(it->second);
    }
    const int obj = m->object_of(s);
    if (obj < 0)
      throw input_error("line " + std::to_string(line) + ": sequence exceeds the bound");
    return obj;
  };
  // Implicit identities.
  for (int obj = 0; obj < m->num_objects(); ++obj) {
    const std::string nm = id_name_of_sequence(m->objects[static_cast<size_t>(obj)], colours);
    mor_idx[nm] = m->add_mor(nm, obj, obj);
    m->set_identity(obj, mor_idx[nm]);
  }
  for (const auto& mo : mors) {
    if (mor_idx.count(mo.name))
      throw input_error("line " + std::to_string(mo.line) + ": duplicate or reserved mor " + mo.name);
    mor_idx[mo.name] = m->add_mor(mo.name, seq_of(mo.dom, mo.line), seq_of(mo.cod, mo.line));
  }
  m->freeze();
  auto mor_of = [&](const std::string& n, int line) {
    auto it = mor_idx.find(n);
    if (it == mor_idx.end())
      throw input_error("line " + std::to_string(line) + ": unknown mor " + n);
    return it->second;
  };
  for (const auto& pl : composes) {
    const int g = mor_of(pl.a, pl.line);
    const int f = mor_of(pl.b, pl.line);
    if (m->mors[static_cast<size_t>(f)].cod != m->mors[static_cast<size_t>(g)].dom)
      throw input_error("line " + std::to_string(pl.line) + ": cod of " + pl.b +
                        " is not dom of " + pl.a);
    m->set_compose(g, f, mor_of(pl.result, pl.line));
  }
  for (const auto& pl : tensors) {
    const int f = mor_of(pl.a, pl.line);
    const int g = mor_of(pl.b, pl.line);
    m->set_tensor(f, g, mor_of(pl.result, pl.line));
  }
  for (const auto& sl : syms) {
    perm::Permutation rho;
    try {
      rho = perm::Permutation(sl.images);
    } catch (const input_error& e) {
      throw input_error("line " + std::to_string(sl.line) + ": " + e.what());
    }
    const int obj = seq_of(sl.on, sl.line);
    if (rho.size() != static_cast<int>(m->objects[static_cast<size_t>(obj)].size()))
      throw input_error("line " + std::to_string(sl.line) + ": permutation size mismatch");
    m->set_sym(rho, obj, mor_of(sl.result, sl.line));
  }

  // Inferred entries: identity composites, unit tensors, identity
  // symmetries, then forced completions on singleton homs.
  for (int f = 0; f < m->num_mors(); ++f) {
    const auto& mf = m->mors[static_cast<size_t>(f)];
    m->set_compose(m->identity[static_cast<size_t>(mf.cod)], f, f);
    m->set_compose(f, m->identity[static_cast<size_t>(mf.dom)], f);
    const int id_empty = m->identity[static_cast<size_t>(m->object_of({}))];
    m->set_tensor(f, id_empty, f);
    m->set_tensor(id_empty, f, f);
  }
  for (int a = 0; a < m->num_objects(); ++a) {
    for (int b = 0; b < m->num_objects(); ++b) {
      const int ab = m->concat(a, b);
      if (ab >= 0)
        m->set_tensor(m->identity[static_cast<size_t>(a)], m->identity[static_cast<size_t>(b)],
                      m->identity[static_cast<size_t>(ab)]);
    }
    const auto& seq = m->objects[static_cast<size_t>(a)];
    m->set_sym(perm::Permutation::id(static_cast<int>(seq.size())), a,
               m->identity[static_cast<size_t>(a)]);
    for (const auto& rho : perm::all_permutations(static_cast<int>(seq.size()))) {
      if (m->sym(rho, a) >= 0) continue;
      const int cod = m->object_of(perm::act_on_sequence(rho, seq));
      if (m->hom(a, cod).size() == 1) m->set_sym(rho, a, m->hom(a, cod).front());
    }
  }
  return m;
}

void print_smc_block(std::ostream& os, const smc::BoundedSMC& m) {
  os << "colours:";
  for (const auto& c : m.colours) os << ' ' << c;
  os << '\n';
  for (int mor = 0; mor < m.num_mors(); ++mor) {
    if (m.is_identity(mor)) continue;
    const auto& mm = m.mors[static_cast<size_t>(mor)];
    os << "mor " << mm.name << ": (";
    for (int c : m.objects[static_cast<size_t>(mm.dom)]) os << ' ' << m.colours[static_cast<size_t>(c)];
    os << " ) -> (";
    for (int c : m.objects[static_cast<size_t>(mm.cod)]) os << ' ' << m.colours[static_cast<size_t>(c)];
    os << " )\n";
  }
  std::vector<std::string> lines;
  for (int f = 0; f < m.num_mors(); ++f) {
    if (m.is_identity(f)) continue;
    const auto& mf = m.mors[static_cast<size_t>(f)];
    for (int cod2 = 0; cod2 < m.num_objects(); ++cod2)
      for (int g : m.hom(mf.cod, cod2)) {
        if (m.is_identity(g)) continue;
        const int gf = m.compose(g, f);
        if (gf < 0) continue;
        lines.push_back("compose " + mor_ref(m, g) + " " + mor_ref(m, f) + " = " +
                        mor_ref(m, gf));
      }
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l << '\n';
  lines.clear();
  const int id_empty = m.identity[static_cast<size_t>(m.object_of({}))];
  m.visit_tensors([&](int f, int g, int fg) {
    if (f == id_empty || g == id_empty) return;
    if (m.is_identity(f) && m.is_identity(g)) return;
    lines.push_back("tensor " + mor_ref(m, f) + " " + mor_ref(m, g) + " = " + mor_ref(m, fg));
  });
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l << '\n';
  lines.clear();
  for (const auto& [key, s] : m.sym_table()) {
    perm::Permutation rho;
    rho.images = key.second;
    if (rho.is_identity()) continue;
    std::string line = "sym perm";
    for (int v : rho.images) line += " " + std::to_string(v);
    line += " on (";
    for (int c : m.objects[static_cast<size_t>(key.first)])
      line += " " + m.colours[static_cast<size_t>(c)];
    lines.push_back(line + " ) = " + mor_ref(m, s));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l << '\n';
}

}  // namespace

Model parse_model(const std::string& text) {
  const auto lines = tokenize(text);
  Cursor cur{lines};
  if (cur.done()) throw parse_error(0, "empty model file");
  const Line& header = cur.next();
  const std::string& kind = header.tokens[0];
  Model out;

  auto finish_validation = [](const CheckReport& r) {
    if (!r.verdict) throw validation_error(r.to_json());
  };

  if (kind == "category") {
    if (header.tokens.size() != 2) throw parse_error(header.number, "expected 'category <name>'");
    out.kind = Model::Kind::category;
    out.name = header.tokens[1];
    out.category = parse_category_block(cur).category;
    if (!cur.done()) throw parse_error(cur.peek().number, "unexpected line in a category file");
    finish_validation(cat::validate_category(*out.category));
  } else if (kind == "operad") {
    if (header.tokens.size() != 4 || header.tokens[2] != "arity")
      throw parse_error(header.number, "expected 'operad <name> arity <A>'");
    out.kind = Model::Kind::operad;
    out.name = header.tokens[1];
    out.operad = parse_operad_block(cur, expect_int(header, header.tokens[3]));
    if (!cur.done()) throw parse_error(cur.peek().number, "unexpected line in an operad file");
    finish_validation(opd::validate_operad(*out.operad));
  } else if (kind == "smc") {
    if (header.tokens.size() != 4 || header.tokens[2] != "bound")
      throw parse_error(header.number, "expected 'smc <name> bound <L>'");
    out.kind = Model::Kind::smc;
    out.name = header.tokens[1];
    out.smc = parse_smc_block(cur, expect_int(header, header.tokens[3]));
    if (!cur.done()) throw parse_error(cur.peek().number, "unexpected line in an smc file");
    finish_validation(smc::validate_smc(*out.smc));
  } else if (kind == "pinned") {
    if (header.tokens.size() != 2) throw parse_error(header.number, "expected 'pinned <name>'");
    out.kind = Model::Kind::pinned;
    out.name = header.tokens[1];
    if (cur.done() || cur.peek().tokens[0] != "category")
      throw parse_error(cur.done() ? 0 : cur.peek().number, "expected a category block");
    cur.next();
    out.category = parse_category_block(cur).category;
    if (cur.done() || cur.peek().tokens[0] != "smc")
      throw parse_error(cur.done() ? 0 : cur.peek().number, "expected an smc block");
    const Line& smc_header = cur.next();
    if (smc_header.tokens.size() != 4 || smc_header.tokens[2] != "bound")
      throw parse_error(smc_header.number, "expected 'smc <name> bound <L>'");
    out.smc = parse_smc_block(cur, expect_int(smc_header, smc_header.tokens[3]));
    std::vector<int> pin(static_cast<size_t>(out.category->num_arrows()), -1);
    while (!cur.done()) {
      const Line& l = cur.next();
      if (l.tokens[0] != "pin" || l.tokens.size() != 4 || l.tokens[2] != "=")
        throw parse_error(l.number, "expected 'pin <arrow> = <mor>'");
      int arrow = -1, mor = -1;
      arrow = out.category->arrow_index(l.tokens[1]);
      for (int i = 0; i < out.smc->num_mors(); ++i)
        if (out.smc->mors[static_cast<size_t>(i)].name == l.tokens[3]) mor = i;
      if (mor < 0) throw input_error("line " + std::to_string(l.number) + ": unknown mor " + l.tokens[3]);
      pin[static_cast<size_t>(arrow)] = mor;
    }
    // Identity arrows pin to identity morphisms automatically.
    for (int a = 0; a < out.category->num_arrows(); ++a) {
      if (pin[static_cast<size_t>(a)] >= 0) continue;
      if (!out.category->is_identity(a))
        throw input_error("missing pin for arrow " +
                          out.category->arrows[static_cast<size_t>(a)].name);
      const int obj = out.category->arrows[static_cast<size_t>(a)].dom;
      const int target_obj = out.smc->object_of({obj});
      if (target_obj < 0) throw input_error("pin category objects do not match the smc colours");
      pin[static_cast<size_t>(a)] = out.smc->identity[static_cast<size_t>(target_obj)];
    }
    finish_validation(smc::validate_smc(*out.smc));
    out.pinned = smc::build_pinned(out.category, out.smc, pin);
    finish_validation(smc::validate_pinned(*out.pinned));
  } else if (kind == "substitude") {
    if (header.tokens.size() != 2) throw parse_error(header.number, "expected 'substitude <name>'");
    out.kind = Model::Kind::substitude;
    out.name = header.tokens[1];
    if (cur.done() || cur.peek().tokens[0] != "category")
      throw parse_error(cur.done() ? 0 : cur.peek().number, "expected a category block");
    cur.next();
    out.category = parse_category_block(cur).category;
    if (cur.done() || cur.peek().tokens[0] != "operad")
      throw parse_error(cur.done() ? 0 : cur.peek().number, "expected an operad block");
    const Line& op_header = cur.next();
    if (op_header.tokens.size() != 4 || op_header.tokens[2] != "arity")
      throw parse_error(op_header.number, "expected 'operad <name> arity <A>'");
    out.operad = parse_operad_block(cur, expect_int(op_header, op_header.tokens[3]));
    opd::PinnedOperad po;
    po.pins = out.category;
    po.body = out.operad;
    // Colour map by name matching.
    po.colour_map.reserve(out.category->objects.size());
    for (const auto& obj : out.category->objects) po.colour_map.push_back(out.operad->colour_index(obj));
    po.arrow_map.assign(static_cast<size_t>(out.category->num_arrows()), -1);
    while (!cur.done()) {
      const Line& l = cur.next();
      if (l.tokens[0] != "pin" || l.tokens.size() != 4 || l.tokens[2] != "=")
        throw parse_error(l.number, "expected 'pin <arrow> = <op>'");
      po.arrow_map[static_cast<size_t>(out.category->arrow_index(l.tokens[1]))] =
          out.operad->op_index(l.tokens[3]);
    }
    for (int a = 0; a < out.category->num_arrows(); ++a) {
      if (po.arrow_map[static_cast<size_t>(a)] >= 0) continue;
      if (!out.category->is_identity(a))
        throw input_error("missing pin for arrow " +
                          out.category->arrows[static_cast<size_t>(a)].name);
      po.arrow_map[static_cast<size_t>(a)] =
          out.operad->unit[static_cast<size_t>(po.colour_map[static_cast<size_t>(
              out.category->arrows[static_cast<size_t>(a)].dom)])];
    }
    finish_validation(opd::validate_operad(*out.operad));
    finish_validation(opd::validate_pinned_operad(po));
    out.substitude = po;
  } else {
    throw parse_error(header.number, "unknown model kind '" + kind + "'");
  }
  return out;
}

std::string print_model(const Model& m) {
  std::ostringstream os;
  switch (m.kind) {
    case Model::Kind::category:
      os << "category " << m.name << '\n';
      print_category_block(os, *m.category);
      break;
    case Model::Kind::operad:
      os << "operad " << m.name << " arity " << m.operad->arity_bound << '\n';
      print_operad_block(os, *m.operad);
      break;
    case Model::Kind::smc:
      os << "smc " << m.name << " bound " << m.smc->bound << '\n';
      print_smc_block(os, *m.smc);
      break;
    case Model::Kind::pinned: {
      os << "pinned " << m.name << '\n';
      os << "category " << m.name << "_pins\n";
      print_category_block(os, *m.pinned->base);
      os << "smc " << m.name << "_smc bound " << m.pinned->target->bound << '\n';
      print_smc_block(os, *m.pinned->target);
      const auto& c = *m.pinned->base;
      for (int a = 0; a < c.num_arrows(); ++a) {
        if (c.is_identity(a)) continue;
        os << "pin " << c.arrows[static_cast<size_t>(a)].name << " = "
           << mor_ref(*m.pinned->target, m.pinned->arrow_pin[static_cast<size_t>(a)]) << '\n';
      }
      break;
    }
    case Model::Kind::substitude: {
      os << "substitude " << m.name << '\n';
      os << "category " << m.name << "_pins\n";
      print_category_block(os, *m.substitude->pins);
      os << "operad " << m.name << "_body arity " << m.substitude->body->arity_bound << '\n';
      print_operad_block(os, *m.substitude->body);
      const auto& c = *m.substitude->pins;
      for (int a = 0; a < c.num_arrows(); ++a) {
        if (c.is_identity(a)) continue;
        os << "pin " << c.arrows[static_cast<size_t>(a)].name << " = "
           << op_ref(*m.substitude->body, m.substitude->arrow_map[static_cast<size_t>(a)]) << '\n';
      }
      break;
    }
  }
  return os.str();
}

Model model_of_category(const cat::CatPtr& c, std::string name) {
  Model m;
  m.kind = Model::Kind::category;
  m.name = std::move(name);
  m.category = c;
  return m;
}

Model model_of_operad(const opd::OpdPtr& p, std::string name) {
  Model m;
  m.kind = Model::Kind::operad;
  m.name = std::move(name);
  m.operad = p;
  return m;
}

Model model_of_smc(const smc::SmcPtr& s, std::string name) {
  Model m;
  m.kind = Model::Kind::smc;
  m.name = std::move(name);
  m.smc = s;
  return m;
}

Model model_of_pinned(const smc::PinnedSMC& p, std::string name) {
  Model m;
  m.kind = Model::Kind::pinned;
  m.name = std::move(name);
  m.category = p.base;
  m.smc = p.target;
  m.pinned = p;
  return m;
}

Model model_of_substitude(const opd::PinnedOperad& s, std::string name) {
  Model m;
  m.kind = Model::Kind::substitude;
  m.name = std::move(name);
  m.category = s.pins;
  m.operad = s.body;
  m.substitude = s;
  return m;
}

}  // namespace opdkit::io
