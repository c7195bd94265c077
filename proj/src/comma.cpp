#include <algorithm>
#include <map>
#include <set>

#include "opdkit/adjunctions.hpp"

namespace opdkit::adj {

using perm::Permutation;
using smc::BoundedSMC;
using smc::Sequence;

namespace {

// A w-image object: a tensor decomposition of g into factors with singleton
// codomains, one factor per entry of cod(g).
using Decomposition = std::vector<int>;

struct CommaWorkspace {
  const BoundedSMC& m;
  std::vector<bool> iso;
  std::vector<int> inverse;
  std::vector<std::vector<int>> isos_from;                 // per object
  std::map<int, std::vector<std::pair<int, int>>> tensor_pairs;  // fg -> (f, g)

  explicit CommaWorkspace(const BoundedSMC& m_, const cat::FinCategory& m_cat) : m(m_) {
    iso.assign(static_cast<size_t>(m.num_mors()), false);
    inverse.assign(static_cast<size_t>(m.num_mors()), -1);
    isos_from.assign(static_cast<size_t>(m.num_objects()), {});
    for (int f = 0; f < m.num_mors(); ++f) {
      const auto inv = cat::inverse_of(m_cat, f);
      if (inv) {
        iso[static_cast<size_t>(f)] = true;
        inverse[static_cast<size_t>(f)] = *inv;
        isos_from[static_cast<size_t>(m.mors[static_cast<size_t>(f)].dom)].push_back(f);
      }
    }
    m.visit_tensors([&](int f, int g, int fg) { tensor_pairs[fg].emplace_back(f, g); });
  }

  // All decompositions of g into singleton-codomain factors.
  void decompositions(int g, const std::function<void(const Decomposition&)>& visit) const {
    Decomposition acc;
    rec_decompose(g, acc, visit);
  }

  // As above, but with a prescribed sequence of domain block sizes and
  // prescribed factor codomain objects.
  void decompositions_shaped(int g, const std::vector<int>& dom_sizes,
                             const std::vector<int>& cods,
                             const std::function<void(const Decomposition&)>& visit) const {
    Decomposition acc;
    rec_shaped(g, 0, dom_sizes, cods, acc, visit);
  }

 private:
  void rec_decompose(int g, Decomposition& acc,
                     const std::function<void(const Decomposition&)>& visit) const {
    const auto& mg = m.mors[static_cast<size_t>(g)];
    const auto& cod_seq = m.objects[static_cast<size_t>(mg.cod)];
    if (cod_seq.empty()) {
      if (g == m.identity[static_cast<size_t>(m.object_of({}))]) visit(acc);
      return;
    }
    auto it = tensor_pairs.find(g);
    if (it == tensor_pairs.end()) return;
    for (const auto& [u, v] : it->second) {
      if (m.objects[static_cast<size_t>(m.mors[static_cast<size_t>(u)].cod)].size() != 1) continue;
      acc.push_back(u);
      rec_decompose(v, acc, visit);
      acc.pop_back();
    }
  }

  void rec_shaped(int g, size_t slot, const std::vector<int>& dom_sizes,
                  const std::vector<int>& cods, Decomposition& acc,
                  const std::function<void(const Decomposition&)>& visit) const {
    if (slot == dom_sizes.size()) {
      if (g == m.identity[static_cast<size_t>(m.object_of({}))]) visit(acc);
      return;
    }
    auto it = tensor_pairs.find(g);
    if (it == tensor_pairs.end()) return;
    for (const auto& [u, v] : it->second) {
      const auto& mu = m.mors[static_cast<size_t>(u)];
      if (static_cast<int>(m.objects[static_cast<size_t>(mu.dom)].size()) !=
          dom_sizes[slot])
        continue;
      if (mu.cod != cods[slot]) continue;
      acc.push_back(u);
      rec_shaped(v, slot + 1, dom_sizes, cods, acc, visit);
      acc.pop_back();
    }
  }
};

}  // namespace

CheckReport comma_condition_check(const smc::PinnedSMC& tau) {
  CheckReport r = CheckReport::pass("comma_condition_check", tau.bound());
  const BoundedSMC& m = *tau.target;
  const BoundedSMC& sc = *tau.free->smc;

  ++r.coverage.checked;
  if (!cat::is_groupoid(*tau.base))
    return CheckReport::fail(r.check, r.bound, json{{"law", "pin category is not a groupoid"}});

  const auto m_cat = smc::as_category(m);
  const auto sc_cat = smc::as_category(sc);
  CommaWorkspace ws(m, *m_cat);

  std::vector<bool> sc_iso(static_cast<size_t>(sc.num_mors()), false);
  for (int f = 0; f < sc.num_mors(); ++f) sc_iso[static_cast<size_t>(f)] = cat::is_iso(*sc_cat, f);

  bool ess_surj = true, full = true, faithful = true;
  json direct_witness;

  // --- Essential surjectivity of w -----------------------------------------
  for (int g = 0; g < m.num_mors() && ess_surj; ++g) {
    ++r.coverage.checked;
    const auto& mg = m.mors[static_cast<size_t>(g)];
    bool covered = false;
    for (int a : ws.isos_from[static_cast<size_t>(mg.dom)]) {
      for (int b : ws.isos_from[static_cast<size_t>(mg.cod)]) {
        const int conj = m.compose(b, m.compose(g, ws.inverse[static_cast<size_t>(a)]));
        bool decomposable = false;
        ws.decompositions(conj, [&](const Decomposition&) { decomposable = true; });
        if (decomposable) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) {
      ess_surj = false;
      direct_witness = json{{"law", "w not essentially surjective"},
                            {"mor", mg.name}};
    }
  }

  // --- Fullness and faithfulness of w --------------------------------------
  for (int g1 = 0; g1 < m.num_mors() && full && faithful; ++g1) {
    const auto& mg1 = m.mors[static_cast<size_t>(g1)];
    std::vector<Decomposition> d1s;
    ws.decompositions(g1, [&](const Decomposition& d) { d1s.push_back(d); });
    if (d1s.empty()) continue;

    for (int a : ws.isos_from[static_cast<size_t>(mg1.dom)]) {
      if (!full || !faithful) break;
      for (int b : ws.isos_from[static_cast<size_t>(mg1.cod)]) {
        if (!full || !faithful) break;
        const int g2 = m.compose(b, m.compose(g1, ws.inverse[static_cast<size_t>(a)]));
        std::vector<Decomposition> d2s;
        ws.decompositions(g2, [&](const Decomposition& d) { d2s.push_back(d); });
        if (d2s.empty()) continue;

        // Candidate labelled permutations downstairs: S C isomorphisms over b.
        const int cod1 = mg1.cod;
        const int cod2 = m.mors[static_cast<size_t>(g2)].cod;
        std::vector<int> b_lifts;
        for (int f : sc.hom(cod1, cod2))
          if (sc_iso[static_cast<size_t>(f)] && tau.tau[static_cast<size_t>(f)] == b)
            b_lifts.push_back(f);

        for (const auto& d1 : d1s) {
          if (!full || !faithful) break;
          for (const auto& d2 : d2s) {
            ++r.coverage.checked;
            // Count preimages of (a, b) in Hom(S(d1), S(d2)).
            std::uint64_t preimages = 0;
            for (int lift : b_lifts) {
              const auto& lp = tau.free->mor_data[static_cast<size_t>(lift)];
              const Permutation& rho = lp.rho;
              const int n = rho.size();
              // Component condition determines everything except the f_j.
              // a must equal sym(block_perm(rho, cod_sizes)) o ((x)_j f_j).
              std::vector<int> cod_sizes(static_cast<size_t>(n));
              std::vector<int> dom_sizes(static_cast<size_t>(n));
              std::vector<int> cods(static_cast<size_t>(n));
              bool shape_ok = true;
              for (int j = 1; j <= n; ++j) {
                const int u1 = d1[static_cast<size_t>(j) - 1];
                const int u2 = d2[static_cast<size_t>(rho(j)) - 1];
                const int z1 = m.mors[static_cast<size_t>(u1)].dom;
                const int z2 = m.mors[static_cast<size_t>(u2)].dom;
                dom_sizes[static_cast<size_t>(j) - 1] =
                    static_cast<int>(m.objects[static_cast<size_t>(z1)].size());
                cod_sizes[static_cast<size_t>(j) - 1] =
                    static_cast<int>(m.objects[static_cast<size_t>(z2)].size());
                cods[static_cast<size_t>(j) - 1] = z2;
                if (dom_sizes[static_cast<size_t>(j) - 1] != cod_sizes[static_cast<size_t>(j) - 1])
                  shape_ok = false;
              }
              if (!shape_ok) continue;
              const int bp_sym =
                  m.sym(perm::block_perm(rho, cod_sizes),
                        [&] {
                          Sequence s;
                          for (int j = 1; j <= n; ++j) {
                            const auto& zseq = m.objects[static_cast<size_t>(cods[static_cast<size_t>(j) - 1])];
                            s.insert(s.end(), zseq.begin(), zseq.end());
                          }
                          return m.object_of(s);
                        }());
              if (bp_sym < 0) continue;
              // (x)_j f_j = sym^-1 o a.
              const int assembled = m.compose(ws.inverse[static_cast<size_t>(bp_sym)], a);
              ws.decompositions_shaped(assembled, dom_sizes, cods, [&](const Decomposition& fs) {
                // Square condition per factor, and each f_j must be iso.
                for (int j = 1; j <= n; ++j) {
                  const int fj = fs[static_cast<size_t>(j) - 1];
                  if (!ws.iso[static_cast<size_t>(fj)]) return;
                  const int u1 = d1[static_cast<size_t>(j) - 1];
                  const int u2 = d2[static_cast<size_t>(rho(j)) - 1];
                  const int gamma = lp.labels[static_cast<size_t>(j) - 1];
                  const int lhs = m.compose(u2, fj);
                  const int rhs = m.compose(tau.arrow_pin[static_cast<size_t>(gamma)], u1);
                  if (lhs != rhs) return;
                }
                ++preimages;
              });
            }
            if (preimages == 0 && full) {
              full = false;
              if (direct_witness.is_null())
                direct_witness = json{{"law", "w not full"},
                                      {"mor", mg1.name},
                                      {"iso", json{m.mors[static_cast<size_t>(a)].name,
                                                   m.mors[static_cast<size_t>(b)].name}}};
            } else if (preimages > 1 && faithful) {
              faithful = false;
              if (direct_witness.is_null())
                direct_witness = json{{"law", "w not faithful"},
                                      {"mor", mg1.name},
                                      {"iso", json{m.mors[static_cast<size_t>(a)].name,
                                                   m.mors[static_cast<size_t>(b)].name}}};
            }
          }
        }
      }
    }
  }

  const bool direct = ess_surj && full && faithful;

  // --- Decomposed criteria ---------------------------------------------------
  const auto hered = hereditary_core(tau);
  const auto isoff = iso_core_equivalence_check(tau);
  r.coverage += hered.coverage;
  r.coverage += isoff.coverage;
  const bool decomposed = hered.injective && hered.surjective && isoff.verdict;

  if (direct != decomposed)
    throw internal_error(
        "comma-category criterion disagrees with its decomposition (epsilon "
        "injective/surjective + iso-core equivalence); direct=" +
        std::to_string(direct) + " decomposed=" + std::to_string(decomposed));

  if (!direct) {
    r.verdict = false;
    r.witness = json{{"direct", direct_witness},
                     {"epsilon_injective", hered.injective},
                     {"epsilon_surjective", hered.surjective},
                     {"iso_core_equivalence", isoff.verdict}};
  }
  return r;
}

}  // namespace opdkit::adj
