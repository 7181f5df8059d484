#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "voa/diffcomm.hpp"
#include "voa/errors.hpp"
#include "voa/ideals.hpp"
#include "voa/lifilt.hpp"
#include "voa/orbifold.hpp"
#include "voa/products.hpp"
#include "voa/recovery.hpp"
#include "voa/report.hpp"

namespace {

using voa::ordered_json;

struct RunConfig {
  int rank = 1;
  std::string level = "1";
  int cutoff = 8;
  long seed = 0;
  bool json = false;
  int max_gen_degree = 4;
  int max_pair_degree = 4;
};

ordered_json config_json(const RunConfig& cfg, const std::string& command) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["rank"] = cfg.rank;
  j["level"] = cfg.level;
  j["cutoff"] = cfg.cutoff;
  j["seed"] = cfg.seed;
  return j;
}

std::string cell_str(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// arrays of records render as aligned columns; anything else as key: value
void print_table(const std::string& key, const ordered_json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (size_t i = 0; i < cols.size(); ++i) {
      std::string s = row.contains(cols[i]) ? cell_str(row[cols[i]]) : "";
      width[i] = std::max(width[i], s.size());
      line.push_back(std::move(s));
    }
    cells.push_back(std::move(line));
  }
  std::cout << key << ":\n";
  auto print_line = [&](const std::vector<std::string>& line) {
    std::cout << " ";
    for (size_t i = 0; i < line.size(); ++i) {
      std::cout << " " << line[i];
      if (i + 1 < line.size())
        std::cout << std::string(width[i] - line[i].size(), ' ');
    }
    std::cout << "\n";
  };
  print_line(cols);
  for (const auto& line : cells) print_line(line);
}

void emit(const RunConfig& cfg, const ordered_json& j) {
  if (cfg.json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    bool tabular = value.is_array() && !value.empty() &&
                   std::all_of(value.begin(), value.end(),
                               [](const ordered_json& e) { return e.is_object(); });
    if (tabular)
      print_table(key, value);
    else
      std::cout << key << ": " << cell_str(value) << "\n";
  }
}

int finish(const RunConfig& cfg, ordered_json j, bool pass) {
  j["pass"] = pass;
  emit(cfg, j);
  return pass ? 0 : 1;
}

// identity-specific total-degree budget so no intermediate product can
// overflow the model cutoff
int identity_budget(voa::IdentityName id, int cutoff) {
  switch (id) {
    case voa::IdentityName::conformal_weight:
      return cutoff - 2;
    case voa::IdentityName::quasicomm:
    case voa::IdentityName::skew:
    case voa::IdentityName::sesquilinearity:
    case voa::IdentityName::translation:
    case voa::IdentityName::vacuum:  // checks a_(-2) 1 = d a, one degree up
      return cutoff - 1;
    default:
      return cutoff;
  }
}

int run_axioms(const RunConfig& cfg, const voa::Model& m) {
  if (cfg.cutoff < 4) throw CLI::ValidationError("axioms needs --cutoff >= 4");
  ordered_json out = config_json(cfg, "axioms");
  ordered_json rows = ordered_json::array();
  bool pass = true;
  std::mt19937_64 rng(static_cast<unsigned long long>(cfg.seed));

  for (voa::IdentityName id : voa::all_identities()) {
    int arity = voa::identity_arity(id);
    int budget = identity_budget(id, cfg.cutoff);
    long checked = 0;
    ordered_json failures = ordered_json::array();
    auto run_one = [&](const std::vector<voa::FockState>& args) {
      voa::CheckReport r = voa::check_identity(m, id, args);
      ++checked;
      if (!r.pass) {
        pass = false;
        if (failures.size() < 5) failures.push_back(r.details);
      }
    };

    // exhaustive sweep over basis tuples of bounded total degree
    int exhaustive_budget = std::min(budget, 6);
    std::function<void(int, int, std::vector<voa::FockState>&)> sweep =
        [&](int slot, int left, std::vector<voa::FockState>& args) {
          if (slot == arity) {
            run_one(args);
            return;
          }
          for (int d = 0; d <= left; ++d) {
            for (int i = 0; i < m.dim(d); ++i) {
              args.push_back(m.basis_state(d, i));
              sweep(slot + 1, left - d, args);
              args.pop_back();
            }
          }
        };
    std::vector<voa::FockState> args;
    sweep(0, exhaustive_budget, args);

    // seeded random extension when the budget exceeds the exhaustive range
    long random_checked = 0;
    if (budget > exhaustive_budget && arity > 0) {
      for (int t = 0; t < 200; ++t) {
        std::vector<voa::FockState> sample;
        int left = budget;
        for (int slot = 0; slot < arity; ++slot) {
          std::uniform_int_distribution<int> dd(0, left);
          int d = dd(rng);
          std::uniform_int_distribution<int> di(0, m.dim(d) - 1);
          sample.push_back(m.basis_state(d, di(rng)));
          left -= d;
        }
        run_one(sample);
        ++random_checked;
      }
    }

    ordered_json row;
    row["identity"] = voa::identity_str(id);
    row["checked"] = checked;
    row["random"] = random_checked;
    row["pass"] = failures.empty();
    if (!failures.empty()) row["failures"] = failures;
    rows.push_back(std::move(row));
  }
  out["identities"] = std::move(rows);
  return finish(cfg, std::move(out), pass);
}

int run_dims(const RunConfig& cfg, const voa::Model& m) {
  ordered_json out = config_json(cfg, "dims");
  ordered_json rows = ordered_json::array();
  bool pass = true;
  voa::DiffAlgebra* poly = nullptr;
  voa::DiffAlgebra poly_store(cfg.cutoff);
  if (cfg.rank == 1) poly = &poly_store;
  for (int d = 0; d <= cfg.cutoff; ++d) {
    ordered_json row;
    row["degree"] = d;
    row["dim"] = m.dim(d);
    if (poly) {
      row["poly_dim"] = poly->dim(d);
      if (poly->dim(d) != m.dim(d)) pass = false;
    }
    rows.push_back(std::move(row));
  }
  out["dims"] = std::move(rows);
  return finish(cfg, std::move(out), pass);
}

int run_li(const RunConfig& cfg, const voa::Model& m) {
  ordered_json out = config_json(cfg, "li");
  bool pass = true;
  voa::Filtration filt(m, cfg.cutoff);

  // product and derivative laws on every piece within a small window
  int law_budget = std::min(cfg.cutoff, 8);
  bool product_law = true, derivative_law = true;
  for (int deg = 0; deg <= law_budget; ++deg) {
    for (int n = 0; n <= deg; ++n) {
      const voa::Subspace& piece = filt.piece(n, deg);
      for (const auto& row : piece.rows()) {
        voa::FockState x = m.from_vector(row, deg);
        if (deg + 1 <= law_budget &&
            !filt.piece(n + 1, deg + 1).member(
                m.to_vector(m.derivative(x), deg + 1)))
          derivative_law = false;
        for (int deg2 = 0; deg + deg2 <= law_budget; ++deg2) {
          for (int n2 = 0; n2 <= deg2; ++n2) {
            for (const auto& row2 : filt.piece(n2, deg2).rows()) {
              voa::FockState y = m.from_vector(row2, deg2);
              if (!filt.piece(n + n2, deg + deg2)
                       .member(m.to_vector(voa::nop(m, x, y), deg + deg2)))
                product_law = false;
            }
          }
        }
      }
    }
  }
  out["product_law"] = product_law;
  out["derivative_law"] = derivative_law;
  pass = pass && product_law && derivative_law;

  ordered_json grok_rows = ordered_json::array();
  int grok_budget = std::min(cfg.cutoff, 6);
  for (int i = 0; i <= grok_budget; ++i) {
    for (int j = i; i + j + 1 <= grok_budget; ++j) {
      voa::CheckReport r = voa::check_grok(filt, i, j, grok_budget);
      grok_rows.push_back(ordered_json{{"i", i}, {"j", j}, {"pass", r.pass}});
      if (!r.pass) pass = false;
    }
  }
  out["grok"] = std::move(grok_rows);

  std::vector<voa::FockState> gens;
  for (int f = 0; f < m.rank(); ++f) gens.push_back(m.generator(f));
  voa::StrongGenReport sg = voa::strong_gen_test(m, gens, cfg.cutoff, nullptr, &filt);
  out["strong_gen"] = ordered_json{{"pass", sg.pass},
                                   {"gr_pass", sg.gr_pass},
                                   {"agree", sg.agree},
                                   {"dims", sg.reach_dims}};
  pass = pass && sg.pass && sg.agree;

  if (cfg.rank == 1) {
    voa::CheckReport cmp = voa::gr_to_diffcomm(filt, cfg.cutoff - 1);
    out["gr_to_poly"] = ordered_json{{"pass", cmp.pass},
                                     {"cells", cmp.details["cells_checked"]}};
    pass = pass && cmp.pass;
  }
  return finish(cfg, std::move(out), pass);
}

int run_ideal(const RunConfig& cfg, const voa::Model& m) {
  ordered_json out = config_json(cfg, "ideal");
  bool pass = true;
  voa::Filtration filt(m, cfg.cutoff);
  ordered_json rows = ordered_json::array();
  // generators up to half the window: a closure needs about twice its
  // generator degree of headroom before the fullness evidence can appear
  int max_deg = std::min(4, cfg.cutoff / 2);
  for (int deg = 1; deg <= max_deg; ++deg) {
    for (int i = 0; i < m.dim(deg); ++i) {
      voa::FockState x = m.basis_state(deg, i);
      voa::IdealFamily I =
          voa::ideal_closure(m, {x}, voa::IdealSide::right, cfg.cutoff);
      auto witness = voa::is_full(filt, I);
      ordered_json row;
      row["x"] = x.str();
      row["witness"] = witness ? ordered_json(*witness) : ordered_json(nullptr);
      std::vector<int> dims;
      for (int d = 0; d <= cfg.cutoff; ++d) dims.push_back(I.family.slice(d).dim());
      row["dims"] = dims;
      if (!witness) pass = false;
      rows.push_back(std::move(row));
    }
  }
  out["closures"] = std::move(rows);

  voa::FockState b = m.generator(0);
  voa::IdealFamily Ib = voa::ideal_closure(m, {b}, voa::IdealSide::right, cfg.cutoff);
  voa::CheckReport audit = voa::audit_closed(m, Ib);
  out["audit_closed"] = audit.pass;
  pass = pass && audit.pass;
  voa::GradedFamily xv = voa::xv_span(m, {b}, cfg.cutoff);
  ordered_json gap = ordered_json::array();
  for (int d = 0; d <= cfg.cutoff; ++d)
    gap.push_back(Ib.family.slice(d).dim() - xv.slice(d).dim());
  out["closure_minus_xv"] = std::move(gap);
  voa::CheckReport sg = voa::ideal_strong_gen_test(filt, Ib.family, {b});
  out["strong_gen"] =
      ordered_json{{"pass", sg.pass}, {"agree", sg.details["agree"]}};
  pass = pass && sg.details["agree"].get<bool>();
  return finish(cfg, std::move(out), pass);
}

int run_recover(const RunConfig& cfg, const voa::Model& m) {
  if (cfg.cutoff < voa::required_cutoff(1, cfg.max_pair_degree - 1))
    throw CLI::ValidationError(
        "recover at --max-pair-degree " + std::to_string(cfg.max_pair_degree) +
        " needs --cutoff >= " +
        std::to_string(voa::required_cutoff(1, cfg.max_pair_degree - 1)));
  ordered_json out = config_json(cfg, "recover");
  out["max_pair_degree"] = cfg.max_pair_degree;
  bool pass = true;
  ordered_json rows = ordered_json::array();
  long audited = 0;
  voa::BracketAudit::reset_violations();
  for (int da = 1; da < cfg.max_pair_degree; ++da) {
    for (int db = 1; da + db <= cfg.max_pair_degree; ++db) {
      for (int i = 0; i < m.dim(da); ++i) {
        for (int j = 0; j < m.dim(db); ++j) {
          voa::FockState a = m.basis_state(da, i), b = m.basis_state(db, j);
          voa::RecoveryResult rec;
          {
            voa::BracketAudit audit;
            rec = voa::recover_bracket(m, a, b);
            ++audited;
          }
          voa::LambdaPoly direct = voa::lambda_bracket(m, a, b);
          bool equal = rec.bracket == direct;
          if (!equal) pass = false;
          ordered_json row;
          row["a"] = a.str();
          row["b"] = b.str();
          row["equal"] = equal;
          row["u"] = rec.u_used ? ordered_json(rec.u_used->str())
                                : ordered_json(nullptr);
          row["self_identity"] = rec.used_self_identity;
          rows.push_back(std::move(row));
        }
      }
    }
  }
  out["pairs"] = std::move(rows);
  out["audited_calls"] = audited;
  out["bracket_violations"] = voa::BracketAudit::violations();
  if (voa::BracketAudit::violations() != 0) pass = false;
  ordered_json dets = ordered_json::array();
  for (int n = 0; n <= 6; ++n) {
    voa::Scalar det = voa::determinant(voa::recovery_matrix(n));
    dets.push_back(ordered_json{{"n", n}, {"det", det.str()}});
    if (det.is_zero()) pass = false;
  }
  out["system_determinants"] = std::move(dets);
  return finish(cfg, std::move(out), pass);
}

int run_orbifold(const RunConfig& cfg, const voa::Model& m) {
  ordered_json out = config_json(cfg, "orbifold");
  out["max_gen_degree"] = cfg.max_gen_degree;
  bool pass = true;
  voa::GroupAction G = voa::GroupAction::sign_flip(m);

  voa::GradedFamily U = voa::invariant_family(m, G, cfg.cutoff);
  std::vector<int> by_char = voa::invariant_dims_by_character(m, G, cfg.cutoff);
  ordered_json dims = ordered_json::array();
  for (int d = 0; d <= cfg.cutoff; ++d) {
    dims.push_back(ordered_json{
        {"degree", d}, {"dim", U.slice(d).dim()}, {"character", by_char[d]}});
    if (U.slice(d).dim() != by_char[d]) pass = false;
  }
  out["invariant_dims"] = std::move(dims);

  voa::SearchResult search =
      voa::strong_gen_search(m, G, cfg.cutoff, cfg.max_gen_degree);
  ordered_json gens = ordered_json::array();
  for (size_t i = 0; i < search.generators.size(); ++i)
    gens.push_back(ordered_json{{"degree", search.generator_degrees[i]},
                                {"state", search.generators[i].str()}});
  out["generators"] = std::move(gens);
  out["search_pass"] = search.test.pass;
  pass = pass && search.test.pass;

  // rewrite every invariant basis element of low degree through the found X
  ordered_json rewrites = ordered_json::array();
  int rw_budget = std::min(cfg.cutoff, 6);
  for (int d = 1; d <= rw_budget; ++d) {
    for (const auto& row : U.slice(d).rows()) {
      voa::FockState u = m.from_vector(row, d);
      auto witness = voa::xv_vx_membership(m, u, search.generators, cfg.cutoff);
      ordered_json rj;
      rj["u"] = u.str();
      if (!witness) {
        rj["witness"] = false;
        pass = false;
      } else {
        voa::RewriteResult rw =
            voa::hilbert_rewrite(m, G, u, search.generators, *witness);
        bool evaluates =
            voa::evaluate_rewrite(m, search.generators, *rw.tree) == u;
        rj["witness"] = true;
        rj["complete"] = rw.complete;
        rj["evaluates"] = evaluates;
        if (!rw.complete || !evaluates) pass = false;
      }
      rewrites.push_back(std::move(rj));
    }
  }
  out["rewrites"] = std::move(rewrites);
  return finish(cfg, std::move(out), pass);
}

int run_counterexample(const RunConfig& cfg) {
  ordered_json out = config_json(cfg, "counterexample");
  bool pass = true;
  voa::DiffAlgebra A(cfg.cutoff);
  voa::DiffAlgebra::GrowthResult growth = A.generator_growth(cfg.cutoff);
  ordered_json rows = ordered_json::array();
  for (const auto& g : growth.rows) {
    rows.push_back(ordered_json{{"weight", g.weight},
                                {"invariant_dim", g.invariant_dim},
                                {"reachable_dim", g.reachable_dim},
                                {"new_generators", g.new_generators}});
    if (g.weight >= 2 && g.weight % 2 == 0 && g.new_generators < 1) pass = false;
    if (g.weight % 2 == 1 && g.new_generators != 0) pass = false;
  }
  out["growth"] = std::move(rows);
  return finish(cfg, std::move(out), pass);
}

int run_chain(const RunConfig& cfg, const voa::Model& m) {
  ordered_json out = config_json(cfg, "chain");
  bool pass = true;
  voa::Filtration filt(m, cfg.cutoff);
  voa::FockState b = m.generator(0);

  std::vector<std::vector<voa::FockState>> derivative_chain;
  int kmax = std::min(3, cfg.cutoff - 2);
  for (int k = 0; k <= kmax; ++k) {
    std::vector<voa::FockState> X;
    for (int j = 0; j <= k; ++j) X.push_back(m.derivative_pow(b, j));
    derivative_chain.push_back(std::move(X));
  }
  voa::ChainReport r1 =
      voa::chain_experiment(filt, derivative_chain, voa::IdealSide::right, cfg.cutoff);
  out["derivative_chain"] = voa::chain_json(r1);
  pass = pass && r1.pass;

  std::vector<std::vector<voa::FockState>> constant_chain(3, {b});
  voa::ChainReport r2 =
      voa::chain_experiment(filt, constant_chain, voa::IdealSide::right, cfg.cutoff);
  out["constant_chain"] = voa::chain_json(r2);
  pass = pass && r2.pass && r2.stable_from == 0;
  return finish(cfg, std::move(out), pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact free-boson vertex algebra experiments"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--rank", cfg.rank, "number of boson flavors")
      ->check(CLI::Range(1, 4));
  app.add_option("--level", cfg.level, "level (rational p/q) scaling the form");
  app.add_option("--cutoff", cfg.cutoff, "maximum tracked weight")
      ->check(CLI::Range(2, 24));
  app.add_option("--seed", cfg.seed, "seed for randomized sweeps");
  app.add_flag("--json", cfg.json, "emit a JSON report");
  app.add_option("--max-gen-degree", cfg.max_gen_degree,
                 "generator search degree bound (orbifold)");
  app.add_option("--max-pair-degree", cfg.max_pair_degree,
                 "total degree bound on recovered pairs (recover)");
  app.fallthrough();

  auto* axioms = app.add_subcommand("axioms", "verify the identity suite");
  auto* dims = app.add_subcommand("dims", "graded dimension tables");
  auto* li = app.add_subcommand("li", "filtration laws and strong generation");
  auto* ideal = app.add_subcommand("ideal", "ideal closures and fullness");
  auto* recover = app.add_subcommand("recover", "bracket recovery from the product");
  auto* orbifold = app.add_subcommand("orbifold", "invariants, search, rewriting");
  auto* counterexample =
      app.add_subcommand("counterexample", "commutative generator growth");
  auto* chain = app.add_subcommand("chain", "ascending ideal chains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  // a level or rank the model rejects is a usage problem, not a runtime one
  std::optional<voa::Model> m;
  try {
    voa::Scalar level = voa::Scalar::from_string(cfg.level);
    if (!counterexample->parsed()) m.emplace(cfg.rank, level, cfg.cutoff);
  } catch (const voa::StructuralError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (counterexample->parsed()) return run_counterexample(cfg);
    if (axioms->parsed()) return run_axioms(cfg, *m);
    if (dims->parsed()) return run_dims(cfg, *m);
    if (li->parsed()) return run_li(cfg, *m);
    if (ideal->parsed()) return run_ideal(cfg, *m);
    if (recover->parsed()) return run_recover(cfg, *m);
    if (orbifold->parsed()) return run_orbifold(cfg, *m);
    if (chain->parsed()) return run_chain(cfg, *m);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const voa::CutoffError& e) {
    std::cerr << "cutoff overflow: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
