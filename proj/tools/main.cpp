#include "hypershift/hypershift.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Global {
  std::string mode = "accelerated";
  std::string density;
  int precision = 0;
  std::uint64_t budget = 0;
  std::uint64_t k_start = 0;
};

int exit_code(hs_status st) {
  if (st == HS_OK) return 0;
  if (st == HS_OUT_OF_REACH || st == HS_BUDGET_EXCEEDED) return 2;
  return 1;
}

void emit(const std::string& path, const char* text) {
  if (!text) return;
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int finish(hs_status st, char* text, const std::string& path) {
  emit(path, text);
  hs_string_free(text);
  if (st != HS_OK) {
    std::fprintf(stderr, "hypershift: %s: %s\n", hs_status_name(st), hs_last_error());
  }
  return exit_code(st);
}

// Accepts counts written as 1e6 or 2.5e7 as well as plain integers.
const CLI::Validator kCount(
    [](std::string& v) -> std::string {
      try {
        std::size_t used = 0;
        long double x = std::stold(v, &used);
        if (used != v.size() || x < 0 || x > 1.8e19L || x != static_cast<std::uint64_t>(x)) {
          return "expected a non-negative integer count, got " + v;
        }
        v = std::to_string(static_cast<std::uint64_t>(x));
        return {};
      } catch (const std::exception&) {
        return "expected a non-negative integer count, got " + v;
      }
    },
    "COUNT");

struct Handle {
  hs_schedule* s = nullptr;
  ~Handle() { hs_schedule_free(s); }
};

hs_status open(const Global& g, Handle& h) {
  hs_config c{};
  c.mode = g.mode.c_str();
  c.density = g.density.empty() ? nullptr : g.density.c_str();
  c.precision_digits = g.precision;
  c.budget = g.budget;
  c.k_start = g.k_start;
  return hs_schedule_create(&c, &h.s);
}

std::vector<std::string> read_grid(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common hypercyclic vector for zB, |z| > 1: schedules, blocks and witnesses"};
  app.set_config("--config", "", "key = value file; command-line flags win");
  app.require_subcommand(1);
  Global g;
  app.add_option("--mode", g.mode, "faithful | complex | accelerated | accelerated-complex")
      ->capture_default_str();
  app.add_option("--density", g.density, "lnln | lnlnln | ln | const:C");
  app.add_option("--precision", g.precision, "working digits")->envname("HYPERSHIFT_PRECISION");
  app.add_option("--budget", g.budget, "cycle starts scanned per step")->transform(kCount);
  app.add_option("--k-start", g.k_start, "first index (a cycle start)");

  std::string out;
  int rc = 0;

  auto* targets = app.add_subcommand("targets", "target vectors v_l");
  targets->fallthrough();
  auto* dump = targets->add_subcommand("dump", "CSV of v_from .. v_to");
  dump->fallthrough();
  std::uint64_t from = 1, to = 20;
  dump->add_option("--from", from)->capture_default_str();
  dump->add_option("--to", to)->capture_default_str();
  dump->add_option("--out", out);
  dump->callback([&] {
    char* text = nullptr;
    hs_status st = hs_targets_csv(from, to, &text);
    rc = finish(st, text, out);
  });

  auto* schedule = app.add_subcommand("schedule", "the index schedule");
  schedule->fallthrough();
  auto* build = schedule->add_subcommand("build", "step summaries (JSON) and entries (CSV)");
  build->fallthrough();
  unsigned upto_step = 2;
  std::uint64_t entries_upto = 0;
  build->add_option("--upto-step", upto_step)->capture_default_str();
  build->add_option("--entries-upto", entries_upto, "also write entries k_start..K");
  build->add_option("--out", out, "output prefix: PREFIX.json, PREFIX.csv");
  build->callback([&] {
    Handle h;
    hs_status st = open(g, h);
    if (st != HS_OK) {
      rc = finish(st, nullptr, "");
      return;
    }
    char* json = nullptr;
    st = hs_steps_json(h.s, upto_step, &json);
    rc = finish(st, json, out.empty() ? "" : out + ".json");
    if (entries_upto) {
      char* csv = nullptr;
      hs_status st2 = hs_entries_csv(h.s, 0, entries_upto, &csv);
      int rc2 = finish(st2, csv, out.empty() ? "" : out + ".csv");
      if (rc == 0) rc = rc2;
    }
  });

  auto* hvector = app.add_subcommand("hvector", "the vector f");
  hvector->fallthrough();
  auto* blocks = hvector->add_subcommand("blocks", "per-block CSV");
  blocks->fallthrough();
  std::uint64_t upto_k = 40;
  blocks->add_option("--upto", upto_k)->capture_default_str();
  blocks->add_option("--out", out);
  blocks->callback([&] {
    Handle h;
    hs_status st = open(g, h);
    char* text = nullptr;
    if (st == HS_OK) st = hs_blocks_csv(h.s, upto_k, &text);
    rc = finish(st, text, out);
  });
  auto* mat = hvector->add_subcommand("materialize", "coordinates of a block prefix");
  mat->fallthrough();
  std::uint64_t nblocks = 10, len = 256;
  mat->add_option("--blocks", nblocks)->capture_default_str();
  mat->add_option("--len", len)->capture_default_str();
  mat->add_option("--out", out);
  mat->callback([&] {
    Handle h;
    hs_status st = open(g, h);
    char* text = nullptr;
    if (st == HS_OK) st = hs_materialize_csv(h.s, nblocks, len, &text);
    rc = finish(st, text, out);
  });

  auto* verify = app.add_subcommand("verify", "witness searches");
  verify->fallthrough();
  hs_search search{};
  auto add_search = [&](CLI::App* c) {
    c->add_option("--min-index", search.min_index, "only indices above this");
    c->add_option("--segment-budget", search.segment_budget)->transform(kCount);
    c->add_option("--max-step", search.max_step);
  };
  auto* orbit = verify->add_subcommand("orbit", "witness for z and v_l (JSON)");
  orbit->fallthrough();
  std::string z;
  std::uint64_t l = 1;
  orbit->add_option("--z", z, "RE,IM or MOD@TURNS")->required();
  orbit->add_option("--l", l)->capture_default_str();
  orbit->add_option("--out", out);
  add_search(orbit);
  orbit->callback([&] {
    Handle h;
    hs_status st = open(g, h);
    char* text = nullptr;
    if (st == HS_OK) st = hs_verify_orbit_json(h.s, z.c_str(), l, &search, &text);
    rc = finish(st, text, out);
  });
  auto* cover = verify->add_subcommand("covering", "index with |s - (x_k + alpha_l/M_k)| < delta/M_k");
  cover->fallthrough();
  std::string sval, delta = "0.05";
  cover->add_option("--l", l)->capture_default_str();
  cover->add_option("--s", sval)->required();
  cover->add_option("--delta", delta)->capture_default_str();
  cover->add_option("--out", out);
  add_search(cover);
  cover->callback([&] {
    Handle h;
    hs_status st = open(g, h);
    char* text = nullptr;
    if (st == HS_OK) st = hs_verify_covering_json(h.s, l, sval.c_str(), delta.c_str(), &search, &text);
    rc = finish(st, text, out);
  });
  auto* dens = verify->add_subcommand("density", "witness table over a grid of z (CSV)");
  dens->fallthrough();
  std::string grid;
  std::uint64_t lmax = 10;
  dens->add_option("--grid", grid, "one z per line")->required();
  dens->add_option("--lmax", lmax)->capture_default_str();
  dens->add_option("--out", out);
  add_search(dens);
  dens->callback([&] {
    Handle h;
    hs_status st = open(g, h);
    char* text = nullptr;
    if (st == HS_OK) {
      std::vector<std::string> zs = read_grid(grid);
      std::vector<const char*> ptrs;
      for (const auto& s : zs) ptrs.push_back(s.c_str());
      st = hs_verify_density_csv(h.s, ptrs.data(), ptrs.size(), lmax, &search, &text);
    }
    rc = finish(st, text, out);
  });
  auto* div = verify->add_subcommand("divergence", "partial sums of 1/M_k along j(k) = l");
  div->fallthrough();
  std::uint64_t horizon = 10000;
  div->add_option("--l", l)->capture_default_str();
  div->add_option("--horizon", horizon)->capture_default_str();
  div->add_option("--out", out);
  div->callback([&] {
    Handle h;
    hs_status st = open(g, h);
    char* text = nullptr;
    if (st == HS_OK) st = hs_divergence_json(h.s, l, horizon, &text);
    rc = finish(st, text, out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hypershift: %s\n", e.what());
    return 1;
  }
  return rc;
}
