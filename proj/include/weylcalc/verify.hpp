#ifndef WEYLCALC_VERIFY_HPP
#define WEYLCALC_VERIFY_HPP

// Named identity checks, verification suites and conjecture comparisons.
// An identity is a (name, params) pair; make_check turns it into a closure
// that computes a normal form in the appropriate algebra.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "weylcalc/calculus.hpp"
#include "weylcalc/connections.hpp"
#include "weylcalc/ncalg.hpp"
#include "weylcalc/report.hpp"
#include "weylcalc/weyl.hpp"

namespace weylcalc {

/// Shared root systems and algebras, optionally backed by the on-disk cache.
class Workspace {
 public:
  explicit Workspace(Limits limits = {}, std::filesystem::path cache_dir = {})
      : limits_(limits), cache_dir_(std::move(cache_dir)) {}

  const Limits& limits() const { return limits_; }
  const std::filesystem::path& cache_dir() const { return cache_dir_; }

  std::shared_ptr<const RootSystem> root_system(RootType t, int rank) {
    if (t == RootType::G2) rank = 2;
    std::lock_guard lock(mu_);
    auto& slot = systems_[{t, rank}];
    if (!slot) slot = std::make_shared<const RootSystem>(build_root_system(t, rank));
    return slot;
  }

  /// kind: quad, quar, woronowicz, anticomm (of quad), anticomm-quad, anticomm-quar.
  AlgebraPtr algebra(RootType t, int rank, const std::string& kind) {
    if (t == RootType::G2) rank = 2;
    auto rs = root_system(t, rank);
    const std::string k = kind == "anticomm" ? "anticomm-quad" : kind;
    {
      std::lock_guard lock(mu_);
      auto it = algebras_.find({t, rank, k});
      if (it != algebras_.end()) return it->second;
    }
    std::shared_ptr<AlgebraHandle> h;
    if (k == "quad") {
      h = std::make_shared<AlgebraHandle>(rs->labels(), quad_relations(*rs), AlgebraKind::quad, "quad", limits_);
    } else if (k == "quar") {
      if (t != RootType::B) throw UnsupportedRootSystem("the quartic algebra is defined for type B");
      auto rels = quad_relations(*rs);
      for (auto& r : quartic_relations_B(*rs)) rels.push_back(std::move(r));
      h = std::make_shared<AlgebraHandle>(rs->labels(), std::move(rels), AlgebraKind::quar, "quar", limits_);
    } else if (k == "woronowicz") {
      h = std::make_shared<AlgebraHandle>(rs->labels(), rack_of(*rs), limits_);
    } else if (k == "anticomm-quad" || k == "anticomm-quar") {
      auto base = algebra(t, rank, k.substr(9));
      h = std::make_shared<AlgebraHandle>(rs->labels(), anticommutative_relations(*base),
                                          AlgebraKind::anticommutative, k, limits_);
    } else {
      throw std::invalid_argument("unknown algebra kind '" + kind + "'");
    }
    if (!cache_dir_.empty() && h->ideal_presented()) h->bind_cache(cache_dir_, to_string(t), rank);
    std::lock_guard lock(mu_);
    auto [it, inserted] = algebras_.emplace(std::make_tuple(t, rank, k), h);
    return it->second;
  }

  /// The quotient on abstract generators t1..tn presented by `relations`; never cached on disk.
  AlgebraPtr presented(std::vector<std::string> labels, std::vector<NCPoly> relations, const std::string& name) {
    return std::make_shared<const AlgebraHandle>(std::move(labels), std::move(relations), AlgebraKind::presented, name,
                                                 limits_);
  }

 private:
  Limits limits_;
  std::filesystem::path cache_dir_;
  std::mutex mu_;
  std::map<std::pair<RootType, int>, std::shared_ptr<const RootSystem>> systems_;
  std::map<std::tuple<RootType, int, std::string>, AlgebraPtr> algebras_;
};

struct Outcome {
  bool pass = false;
  std::optional<std::string> witness;
};

struct Check {
  std::string name;
  json params;
  std::function<Outcome()> run;
};

struct VerificationReport {
  std::string name;
  json params;
  bool pass = false;
  std::optional<std::string> witness;
  double seconds = 0;

  IdentityRecord record() const { return {name, params, pass, witness}; }
};

class UnknownIdentity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline constexpr std::size_t kWitnessChars = 400;

inline std::string clip(std::string s) {
  if (s.size() > kWitnessChars) s = s.substr(0, kWitnessChars) + " ...";
  return s;
}

inline Outcome zero_in(const AlgebraHandle& h, const NCPoly& x) {
  NCPoly nf = h.normal_form(x);
  if (nf.is_zero()) return {true, std::nullopt};
  return {false, clip(nf.to_string(h.labels()))};
}

inline Outcome vanishes_in(const AlgebraHandle& h, const NCPoly& x) {
  if (h.ideal_presented()) return zero_in(h, x);
  if (h.vanishes(x)) return {true, std::nullopt};
  return {false, clip("nonzero image under the antisymmetrizer: " + x.to_string(h.labels()))};
}

inline Outcome nonzero_in(const AlgebraHandle& h, const NCPoly& x) {
  NCPoly nf = h.normal_form(x);
  if (!nf.is_zero()) return {true, std::nullopt};
  return {false, std::string("normal form is 0")};
}

inline Outcome equal_in(const AlgebraHandle& h, const NCPoly& x, const NCPoly& y) { return zero_in(h, x - y); }

inline std::vector<int> letters_of(const json& p) { return p.at("letters").get<std::vector<int>>(); }

inline RootType type_of(const json& p) { return parse_root_type(p.at("type").get<std::string>()); }

inline int rank_of(const json& p) { return p.value("rank", 2); }

inline json system_params(const RootSystem& rs) { return json{{"type", to_string(rs.type())}, {"rank", rs.rank()}}; }

inline json with(json base, const json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) base[it.key()] = it.value();
  return base;
}

/// Injective sequences of length k from 1..n, in lex order.
inline std::vector<std::vector<int>> arrangements(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = 1; x <= n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      used[static_cast<std::size_t>(x)] = 1;
      cur.push_back(x);
      rec();
      cur.pop_back();
      used[static_cast<std::size_t>(x)] = 0;
    }
  };
  rec();
  return out;
}

inline std::vector<int> iota_letters(int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return v;
}

/// theta family used by an identity: "theta" (the explicit sums) or "theta_general".
inline std::vector<NCPoly> family_of(const RootSystem& rs, const std::string& family) {
  if (family == "theta") return theta_family(rs);
  if (family == "theta_general") {
    std::vector<NCPoly> out;
    for (int a = 1; a <= rs.rank(); ++a) out.push_back(theta_general(rs, a));
    return out;
  }
  if (family == "eta") return g2_etas();
  throw std::invalid_argument("unknown connection family '" + family + "'");
}

inline const NCPoly& member(const std::vector<NCPoly>& fam, int i) {
  if (i < 1 || static_cast<std::size_t>(i) > fam.size()) throw std::out_of_range("connection index out of range");
  return fam[static_cast<std::size_t>(i - 1)];
}

/// elementary / top_product / hat_sum / square_remark for a theta family.
inline NCPoly family_element(const std::vector<NCPoly>& thetas, const json& p) {
  const std::string e = p.at("element").get<std::string>();
  if (e == "elementary") return elementary_element(thetas, p.at("k").get<std::size_t>());
  if (e == "top_product") return top_product_element(thetas);
  if (e == "hat_sum") return hat_sum_element(thetas);
  if (e == "square_remark") return square_remark_element(thetas);
  if (e == "anticomm") return anticommutator(member(thetas, p.at("i").get<int>()), member(thetas, p.at("j").get<int>()));
  throw std::invalid_argument("unknown element '" + e + "'");
}

}  // namespace detail

/// Builds the check for one identity instance. Every params object carries "type" and "rank".
inline Check make_check(Workspace& ws, const std::string& name, json params) {
  using namespace detail;
  const RootType t = type_of(params);
  const int rank = t == RootType::G2 ? 2 : rank_of(params);
  params["rank"] = rank;
  auto rs = ws.root_system(t, rank);
  auto quad = [&ws, t, rank] { return ws.algebra(t, rank, "quad"); };
  auto need = [&](RootType want) {
    if (t != want) throw UnsupportedRootSystem(name + " is stated for type " + to_string(want));
  };
  const json p = params;
  std::function<Outcome()> run;

  if (name == "cyclic") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), cyclic_element(*rs, letters_of(p))); };
  } else if (name == "cyclic_derivation") {
    // the derivation route and the direct element agree in the quotient
    need(RootType::A);
    run = [=, &ws] {
      auto h = quad();
      auto a = letters_of(p);
      return equal_in(*h, cyclic_by_derivations(*rs, a), cyclic_element(*rs, a));
    };
  } else if (name == "chain") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), chain_element(*rs, letters_of(p))); };
  } else if (name == "telescoping") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), telescoping_element(*rs, letters_of(p))); };
  } else if (name == "power_sum") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), power_sum_element(theta_family(*rs), p.at("m").get<std::size_t>())); };
  } else if (name == "top_product") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), top_product_element(theta_family(*rs))); };
  } else if (name == "hat_expansion") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), hat_expansion_element(*rs, p.at("k").get<int>())); };
  } else if (name == "elementary") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), elementary_element(theta_family(*rs), p.at("k").get<std::size_t>())); };
  } else if (name == "hat_sum") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), hat_sum_element(theta_family(*rs))); };
  } else if (name == "square_remark") {
    need(RootType::A);
    run = [=, &ws] { return zero_in(*quad(), square_remark_element(theta_family(*rs))); };
  } else if (name == "anticomm") {
    run = [=, &ws] {
      auto fam = family_of(*rs, p.value("family", t == RootType::G2 ? "eta" : "theta"));
      return zero_in(*quad(), anticommutator(member(fam, p.at("i").get<int>()), member(fam, p.at("j").get<int>())));
    };
  } else if (name == "flat") {
    run = [=, &ws] {
      auto fam = family_of(*rs, p.value("family", t == RootType::G2 ? "eta" : "theta"));
      const NCPoly& x = member(fam, p.at("i").get<int>());
      // theta_i gives the connection -theta_i; the G2 forms are connections as given
      NCPoly eta = p.value("family", t == RootType::G2 ? "eta" : "theta") == "eta" ? x : -x;
      NCPoly f = curvature(*quad(), eta);
      if (f.is_zero()) return Outcome{true, std::nullopt};
      return Outcome{false, clip(f.to_string(rs->labels()))};
    };
  } else if (name == "theta_general") {
    run = [=, &ws] {
      int a = p.at("alpha").get<int>();
      NCPoly x = theta_general(*rs, a);
      NCPoly y = theta_i(*rs, a);
      if (x == y) return Outcome{true, std::nullopt};
      return Outcome{false, clip(x.to_string(rs->labels()) + " != " + y.to_string(rs->labels()))};
    };
  } else if (name == "d_embedding") {
    need(RootType::D);
    run = [=, &ws] {
      auto a_rs = ws.root_system(RootType::A, rs->letters() - 1);
      auto hd = quad();
      const std::string part = p.at("part").get<std::string>();
      if (part == "E_relations") {
        for (const auto& r : d_embedding_relations(*rs)) {
          Outcome o = zero_in(*hd, r);
          if (!o.pass) return o;
        }
        return Outcome{true, std::nullopt};
      }
      if (part == "iota") {
        for (const auto& r : quad_relations(*a_rs)) {
          Outcome o = zero_in(*hd, embed_a_in_d(*a_rs, *rs, r));
          if (!o.pass) return o;
        }
        return Outcome{true, std::nullopt};
      }
      if (part == "pi") {
        auto ha = ws.algebra(RootType::A, rs->letters() - 1, "quad");
        for (const auto& r : quad_relations(*rs)) {
          Outcome o = zero_in(*ha, project_d_to_a(*rs, *a_rs, r));
          if (!o.pass) return o;
        }
        return Outcome{true, std::nullopt};
      }
      if (part == "pi_iota") {
        for (std::size_t g = 0; g < a_rs->generator_count(); ++g) {
          NCPoly e = NCPoly::generator(static_cast<Gen>(g));
          NCPoly back = project_d_to_a(*rs, *a_rs, embed_a_in_d(*a_rs, *rs, e));
          if (!(back == e)) return Outcome{false, clip(back.to_string(a_rs->labels()))};
        }
        return Outcome{true, std::nullopt};
      }
      if (part == "theta") {
        for (int j = 1; j <= rs->letters(); ++j) {
          NCPoly x = embed_a_in_d(*a_rs, *rs, theta_i(*a_rs, j));
          if (!(x == theta_i(*rs, j))) return Outcome{false, clip(x.to_string(rs->labels()))};
        }
        return Outcome{true, std::nullopt};
      }
      throw std::invalid_argument("unknown d_embedding part '" + part + "'");
    };
  } else if (name == "d_family") {
    need(RootType::D);
    run = [=, &ws] { return zero_in(*quad(), family_element(theta_family(*rs), p)); };
  } else if (name == "b_family") {
    need(RootType::B);
    run = [=, &ws] { return zero_in(*ws.algebra(t, rank, "quar"), family_element(theta_family(*rs), p)); };
  } else if (name == "g2_relations") {
    need(RootType::G2);
    run = [=, &ws] {
      const std::string part = p.at("part").get<std::string>();
      auto h = quad();
      if (part == "listed") {
        // each listed element is fixed by the braiding
        Rack rack = rack_of(*rs);
        auto rels = g2_listed_relations();
        const auto& r = rels.at(p.at("item").get<std::size_t>() - 1);
        TensorVector v = TensorVector::from(r);
        TensorVector w = psi_i(rack, v, 1);
        if (w == v) return Outcome{true, std::nullopt};
        return Outcome{false, clip((w.coords - v.coords).to_string(rs->labels()))};
      }
      if (part == "span") {
        // the listed elements span the whole kernel of id - Psi
        auto listed = g2_listed_relations();
        const std::size_t g = rs->generator_count();
        std::vector<linalg::SparseVector> rows;
        for (const auto& r : listed) {
          linalg::SparseVector v;
          for (const auto& [w, c] : r.terms()) v.push_back({word_index(w, g), c});
          linalg::canonicalize(v);
          rows.push_back(std::move(v));
        }
        std::size_t listed_rank = linalg::rank(linalg::SparseMatrix::from_rows(rows, g * g));
        std::size_t kernel_dim = quad_relations(*rs).size();
        if (listed_rank == kernel_dim) return Outcome{true, std::nullopt};
        return Outcome{false, "listed rank " + std::to_string(listed_rank) + ", kernel dimension " +
                                  std::to_string(kernel_dim)};
      }
      if (part == "h1") {
        auto res = h1(*h);
        std::vector<NCPoly> expect{NCPoly::generator(0) + NCPoly::generator(2) + NCPoly::generator(4),
                                   NCPoly::generator(1) + NCPoly::generator(3) + NCPoly::generator(5)};
        if (res.basis == expect) return Outcome{true, std::nullopt};
        std::string s;
        for (const auto& b : res.basis) s += "[" + b.to_string(rs->labels()) + "] ";
        return Outcome{false, clip(s)};
      }
      throw std::invalid_argument("unknown g2_relations part '" + part + "'");
    };
  } else if (name == "quartic_quad_nonzero") {
    need(RootType::B);
    run = [=, &ws] {
      auto q = quartic_relations_B(*rs);
      return nonzero_in(*quad(), q.at(p.at("item").get<std::size_t>() - 1));
    };
  } else if (name == "quartic_woronowicz") {
    need(RootType::B);
    run = [=, &ws] {
      auto q = quartic_relations_B(*rs);
      return vanishes_in(*ws.algebra(t, rank, "woronowicz"), q.at(p.at("item").get<std::size_t>() - 1));
    };
  } else if (name == "h1_dimension") {
    run = [=, &ws] {
      auto res = h1(*quad());
      std::size_t expect = rs->simply_laced() ? 1 : 2;
      if (res.dimension == expect) return Outcome{true, std::nullopt};
      return Outcome{false, "dimension " + std::to_string(res.dimension)};
    };
  } else {
    throw UnknownIdentity("unknown identity '" + name + "'");
  }
  return {name, std::move(params), std::move(run)};
}

inline VerificationReport run_check(const Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o = c.run();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {c.name, c.params, o.pass, o.witness, s};
}

inline VerificationReport verify_identity(Workspace& ws, const std::string& name, const json& params) {
  return run_check(make_check(ws, name, params));
}

/// Runs checks on `jobs` threads; results keep the input order. The first
/// exception (e.g. CapExceeded) is rethrown after all workers stop.
inline std::vector<VerificationReport> run_checks(const std::vector<Check>& checks, std::size_t jobs = 1) {
  std::vector<VerificationReport> out(checks.size());
  if (jobs <= 1 || checks.size() <= 1) {
    for (std::size_t i = 0; i < checks.size(); ++i) out[i] = run_check(checks[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next++;
      if (i >= checks.size()) return;
      try {
        out[i] = run_check(checks[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = checks.size();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < std::min(jobs, checks.size()); ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

struct SuiteTarget {
  RootType type;
  int rank;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "lemma5.1", "lemma5.2", "lemma5.3", "lemma5.4", "lemma5.5", "cor5.1",     "cor5.2",   "thm5.1",
      "prop5.1",  "prop3.2",  "thetas",   "example3.1", "remark2.3", "square_remark", "conj5.1", "cohomology", "all"};
  return names;
}

/// The systems a suite runs on when none is given.
inline std::vector<SuiteTarget> default_targets(const std::string& suite) {
  using R = RootType;
  if (suite == "lemma5.1" || suite == "lemma5.5") return {{R::A, 3}};
  if (suite == "lemma5.2") return {{R::A, 3}, {R::A, 4}};
  if (suite == "lemma5.3" || suite == "lemma5.4" || suite == "thm5.1" || suite == "square_remark" ||
      suite == "cor5.1") {
    return {{R::A, 2}, {R::A, 3}};
  }
  if (suite == "prop5.1" || suite == "cor5.2") return {{R::D, 3}, {R::D, 4}};
  if (suite == "prop3.2" || suite == "thetas") return {{R::A, 2}, {R::A, 3}, {R::B, 2}, {R::B, 3}, {R::D, 3}};
  if (suite == "example3.1") return {{R::G2, 2}};
  if (suite == "remark2.3" || suite == "conj5.1") return {{R::B, 2}, {R::B, 3}};
  if (suite == "cohomology") {
    return {{R::A, 2}, {R::A, 3}, {R::D, 3}, {R::D, 4}, {R::B, 2}, {R::B, 3}, {R::G2, 2}};
  }
  throw UnknownIdentity("unknown suite '" + suite + "'");
}

/// Identity instances of one suite on one root system.
inline std::vector<Check> suite_checks(Workspace& ws, const std::string& suite, RootType t, int rank) {
  using namespace detail;
  if (suite == "all") throw std::invalid_argument("expand 'all' with all_checks");
  default_targets(suite);  // rejects unknown names
  if (t == RootType::G2) rank = 2;
  auto rs = ws.root_system(t, rank);
  const json sys = system_params(*rs);
  const int n = rs->letters();
  std::vector<Check> out;
  auto add = [&](const std::string& name, const json& extra) { out.push_back(make_check(ws, name, with(sys, extra))); };
  auto need = [&](std::initializer_list<RootType> ok) {
    for (auto x : ok) {
      if (x == t) return;
    }
    throw UnsupportedRootSystem("suite " + suite + " does not apply to " + rs->name());
  };

  if (suite == "lemma5.1") {
    need({RootType::A});
    for (int k = 3; k <= n; ++k) {
      auto tuples = n <= 4 ? arrangements(n, k) : std::vector<std::vector<int>>{iota_letters(k)};
      for (const auto& a : tuples) add("cyclic", {{"letters", a}});
      add("cyclic_derivation", {{"letters", iota_letters(k)}});
    }
  } else if (suite == "lemma5.2") {
    need({RootType::A});
    for (int k = 3; k + 1 <= n; ++k) add("chain", {{"letters", iota_letters(k + 1)}});
  } else if (suite == "lemma5.3") {
    need({RootType::A});
    add("top_product", json::object());
  } else if (suite == "lemma5.4") {
    need({RootType::A});
    for (int k = 1; k <= n; ++k) add("hat_expansion", {{"k", k}});
  } else if (suite == "lemma5.5") {
    need({RootType::A});
    for (int m = 3; m <= n; ++m) {
      auto tuples = n <= 4 ? arrangements(n, m) : std::vector<std::vector<int>>{iota_letters(m)};
      for (const auto& a : tuples) add("telescoping", {{"letters", a}});
    }
  } else if (suite == "cor5.1") {
    need({RootType::A});
    const std::size_t m_max = n <= 3 ? 2 : 1;
    for (std::size_t m = 1; m <= m_max; ++m) add("power_sum", {{"m", m}});
  } else if (suite == "thm5.1") {
    need({RootType::A});
    for (int k = 1; k <= n; ++k) add("elementary", {{"k", k}});
    add("top_product", json::object());
    add("hat_sum", json::object());
  } else if (suite == "square_remark") {
    need({RootType::A});
    add("square_remark", json::object());
  } else if (suite == "prop5.1") {
    need({RootType::D});
    for (const char* part : {"E_relations", "iota", "pi", "pi_iota", "theta"}) add("d_embedding", {{"part", part}});
  } else if (suite == "cor5.2") {
    need({RootType::D});
    // degree 8 of D4 and beyond is out of reach; stop at degree 6 there
    const int k_max = n <= 3 ? n : 3;
    for (int k = 1; k <= k_max; ++k) add("d_family", {{"element", "elementary"}, {"k", k}});
    add("d_family", {{"element", "top_product"}});
    add("d_family", {{"element", "hat_sum"}});
  } else if (suite == "thetas" || suite == "prop3.2") {
    need({RootType::A, RootType::B, RootType::D});
    const std::string fam = suite == "thetas" ? "theta" : "theta_general";
    const int count = suite == "thetas" ? n : rs->rank();
    for (int i = 1; i <= count; ++i) {
      for (int j = i + 1; j <= count; ++j) add("anticomm", {{"family", fam}, {"i", i}, {"j", j}});
    }
    for (int i = 1; i <= count; ++i) add("flat", {{"family", fam}, {"i", i}});
    if (suite == "prop3.2") {
      for (int a = 1; a <= rs->rank(); ++a) add("theta_general", {{"alpha", a}});
    }
  } else if (suite == "example3.1") {
    need({RootType::G2});
    for (std::size_t i = 1; i <= g2_listed_relations().size(); ++i) add("g2_relations", {{"part", "listed"}, {"item", i}});
    add("g2_relations", {{"part", "span"}});
    add("g2_relations", {{"part", "h1"}});
    add("flat", {{"family", "eta"}, {"i", 1}});
    add("flat", {{"family", "eta"}, {"i", 2}});
    add("anticomm", {{"family", "eta"}, {"i", 1}, {"j", 2}});
  } else if (suite == "remark2.3") {
    need({RootType::B});
    for (std::size_t i = 1; i <= quartic_relations_B(*rs).size(); ++i) {
      add("quartic_quad_nonzero", {{"item", i}});
      add("quartic_woronowicz", {{"item", i}});
    }
  } else if (suite == "conj5.1") {
    need({RootType::B});
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) add("b_family", {{"element", "anticomm"}, {"i", i}, {"j", j}});
    }
    for (int k = 1; k <= n; ++k) add("b_family", {{"element", "elementary"}, {"k", k}});
  } else if (suite == "cohomology") {
    add("h1_dimension", json::object());
  }
  return out;
}

/// Every suite on its default systems.
inline std::vector<Check> all_checks(Workspace& ws) {
  std::vector<Check> out;
  for (const auto& s : suite_names()) {
    if (s == "all") continue;
    for (const auto& target : default_targets(s)) {
      for (auto& c : suite_checks(ws, s, target.type, target.rank)) out.push_back(std::move(c));
    }
  }
  return out;
}

// Conjecture comparisons.

struct ConjectureRow {
  std::size_t degree;
  std::size_t left;
  std::size_t right;
  bool agree;
};

struct ConjectureResult {
  std::string which;
  std::string system;
  std::string left_name;
  std::string right_name;
  std::vector<ConjectureRow> rows;
  bool consistent = true;
  std::vector<std::string> notes;
};

/// The algebra on t1..tn presented by the relations conjectured to be complete
/// for the theta family: anticommutators, e_k(t^2), and for A and D also the
/// top product and the alternating sum of the products with one factor omitted.
inline std::vector<NCPoly> model_relations(std::size_t n, bool with_products) {
  std::vector<NCPoly> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(NCPoly::generator(static_cast<Gen>(i)));
  std::vector<NCPoly> rels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) rels.push_back(anticommutator(t[i], t[j]));
  }
  for (std::size_t k = 1; k <= n; ++k) rels.push_back(elementary_element(t, k));
  if (with_products) {
    rels.push_back(top_product_element(t));
    rels.push_back(hat_sum_element(t));
  }
  return rels;
}

inline ConjectureResult check_conjecture(Workspace& ws, const std::string& which, RootType t, int rank,
                                         std::size_t d_max) {
  if (t == RootType::G2) rank = 2;
  auto rs = ws.root_system(t, rank);
  ConjectureResult res;
  res.which = which;
  res.system = rs->name();
  std::vector<std::size_t> left, right;
  // bounds that hold by construction, used as consistency checks
  std::vector<std::size_t> left_bound, right_bound;
  const std::size_t g = rs->generator_count();

  auto free_dims = [&](std::size_t gens) {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d <= d_max; ++d) {
      auto p = checked_power(gens, d);
      out.push_back(p ? static_cast<std::size_t>(*p) : SIZE_MAX);
    }
    return out;
  };

  if (which == "2.1" || which == "2.2") {
    const std::string kind = which == "2.1" ? "quad" : "quar";
    if (which == "2.1" && !rs->simply_laced()) res.notes.push_back("stated for simply-laced systems");
    if (which == "2.2" && t != RootType::B) throw UnsupportedRootSystem("conjecture 2.2 is stated for type B");
    res.left_name = "woronowicz";
    res.right_name = kind;
    auto hw = ws.algebra(t, rank, "woronowicz");
    auto hq = ws.algebra(t, rank, kind);
    left = hilbert_dims(*hw, d_max);
    right = hilbert_dims(*hq, d_max);
    // the Woronowicz algebra is a quotient of the presented one
    left_bound = right;
    right_bound = free_dims(g);
  } else if (which == "5.1") {
    if (t == RootType::G2) throw UnsupportedRootSystem("conjecture 5.1 is stated for types A, B, D");
    const std::string kind = t == RootType::B ? "quar" : "quad";
    auto h = ws.algebra(t, rank, kind);
    auto thetas = theta_family(*rs);
    const std::size_t n = thetas.size();
    res.left_name = "theta subalgebra of " + kind;
    res.right_name = "model on t1..t" + std::to_string(n);
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("t" + std::to_string(i));
    auto model = ws.presented(labels, model_relations(n, t != RootType::B), "model5.1");
    left = subalgebra_dims(*h, thetas, d_max);
    right = hilbert_dims(*model, d_max);
    // the thetas satisfy the model relations, so their span is a quotient of the model
    left_bound = right;
    right_bound = free_dims(n);
    auto ambient = hilbert_dims(*h, d_max);
    for (std::size_t d = 0; d <= d_max; ++d) {
      if (left[d] > ambient[d]) {
        res.consistent = false;
        res.notes.push_back("subalgebra exceeds the algebra in degree " + std::to_string(d));
      }
    }
  } else {
    throw UnknownIdentity("unknown conjecture '" + which + "'");
  }

  for (std::size_t d = 0; d <= d_max; ++d) {
    res.rows.push_back({d, left[d], right[d], left[d] == right[d]});
    if (left[d] > left_bound[d]) {
      res.consistent = false;
      res.notes.push_back(res.left_name + " exceeds " + res.right_name + " in degree " + std::to_string(d));
    }
    if (right[d] > right_bound[d]) {
      res.consistent = false;
      res.notes.push_back(res.right_name + " exceeds the free algebra in degree " + std::to_string(d));
    }
  }
  return res;
}

inline json conjecture_details(const ConjectureResult& r) {
  json table = json::array();
  for (const auto& row : r.rows) {
    table.push_back({{"degree", row.degree}, {"left", row.left}, {"right", row.right}, {"agree", row.agree}});
  }
  bool all = std::all_of(r.rows.begin(), r.rows.end(), [](const ConjectureRow& x) { return x.agree; });
  return json{{"left", r.left_name}, {"right", r.right_name}, {"table", table},
              {"agree_all", all},    {"consistent", r.consistent}, {"notes", r.notes}};
}

}  // namespace weylcalc

#endif  // WEYLCALC_VERIFY_HPP
