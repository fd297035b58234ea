#include "hypershift/hypershift.h"

#include "errors.hpp"
#include "report.hpp"
#include "verify.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

using namespace hypershift;

struct hs_schedule {
  std::unique_ptr<Schedule> schedule;
  std::unique_ptr<Verifier> verifier;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
hs_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<hs_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HS_INTERNAL;
  }
}

ScheduleConfig make_config(const hs_config* c) {
  std::string mode = c && c->mode ? c->mode : "accelerated";
  ScheduleConfig cfg;
  if (mode == "faithful" || mode == "faithful-real") {
    cfg = ScheduleConfig::faithful_real();
  } else if (mode == "complex" || mode == "faithful-complex") {
    cfg = ScheduleConfig::faithful_complex();
  } else if (mode == "accelerated" || mode == "accelerated-complex") {
    cfg = ScheduleConfig::accelerated(Density::constant(1, 1), mode == "accelerated-complex");
  } else {
    fail(ErrorCode::InvalidArgument, "unknown mode '" + mode + "'");
  }
  if (c) {
    if (c->density && *c->density) cfg.density = Density::parse(c->density);
    if (c->precision_digits) cfg.precision_digits = c->precision_digits;
    if (c->budget) cfg.budget = c->budget;
    if (c->k_start) cfg.k_start = c->k_start;
  }
  cfg.validate();
  return cfg;
}

SearchOptions make_search(const hs_search* o) {
  SearchOptions s;
  if (o) {
    s.K = o->min_index;
    if (o->segment_budget) s.segment_budget = o->segment_budget;
    if (o->max_step) s.max_step = o->max_step;
  }
  return s;
}

Multiplier parse_z(const char* z) {
  require(z != nullptr, "z is required");
  std::string t = z;
  auto at = t.find('@');
  if (at != std::string::npos) return Multiplier::polar(t.substr(0, at), t.substr(at + 1));
  return Multiplier::parse(t);
}

void check(hs_schedule* s, char** out) {
  require(s != nullptr && s->schedule, "null schedule handle");
  require(out != nullptr, "null output pointer");
  *out = nullptr;
}

}  // namespace

extern "C" {

const char* hs_version(void) { return "0.1.0"; }

const char* hs_status_name(hs_status s) {
  if (s == HS_OK) return "Ok";
  if (s < HS_OK || s > HS_INTERNAL) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(static_cast<int>(s)));
}

const char* hs_last_error(void) { return g_last_error.c_str(); }

void hs_string_free(char* s) { std::free(s); }

hs_status hs_schedule_create(const hs_config* cfg, hs_schedule** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = nullptr;
    auto h = std::make_unique<hs_schedule>();
    h->schedule = std::make_unique<Schedule>(make_config(cfg));
    h->verifier = std::make_unique<Verifier>(*h->schedule);
    *out = h.release();
    return HS_OK;
  });
}

void hs_schedule_free(hs_schedule* s) { delete s; }

hs_status hs_schedule_config_json(hs_schedule* s, char** out) {
  return guarded([&] {
    check(s, out);
    *out = dup(config_json(s->schedule->config()) + "\n");
    return HS_OK;
  });
}

hs_status hs_targets_csv(uint64_t from, uint64_t to, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = dup(targets_csv(from, to));
    return HS_OK;
  });
}

hs_status hs_entries_csv(hs_schedule* s, uint64_t from, uint64_t to, char** out) {
  return guarded([&] {
    check(s, out);
    *out = dup(entries_csv(*s->schedule, from, to));
    return HS_OK;
  });
}

hs_status hs_steps_json(hs_schedule* s, unsigned upto_step, char** out) {
  return guarded([&] {
    check(s, out);
    require(upto_step >= 1, "upto_step must be >= 1");
    unsigned reached = 0;
    *out = dup(steps_json(*s->schedule, upto_step, &reached));
    if (reached < upto_step) {
      g_last_error = "step " + std::to_string(reached + 1) + " did not end within the budget";
      return HS_BUDGET_EXCEEDED;
    }
    return HS_OK;
  });
}

hs_status hs_blocks_csv(hs_schedule* s, uint64_t upto_k, char** out) {
  return guarded([&] {
    check(s, out);
    *out = dup(blocks_csv(s->verifier->vector(), upto_k));
    return HS_OK;
  });
}

hs_status hs_materialize_csv(hs_schedule* s, uint64_t blocks, uint64_t len, char** out) {
  return guarded([&] {
    check(s, out);
    *out = dup(materialize_csv(s->verifier->vector(), blocks, len));
    return HS_OK;
  });
}

hs_status hs_verify_orbit_json(hs_schedule* s, const char* z, uint64_t l, const hs_search* opt,
                               char** out) {
  return guarded([&] {
    check(s, out);
    Witness w = s->verifier->hypercyclicity_check(parse_z(z), l, make_search(opt));
    *out = dup(witness_json(*s->schedule, w));
    return HS_OK;
  });
}

hs_status hs_verify_covering_json(hs_schedule* s, uint64_t l, const char* value,
                                  const char* delta, const hs_search* opt, char** out) {
  return guarded([&] {
    check(s, out);
    require(value && delta, "value and delta are required");
    Index k = s->verifier->covering_check(l, parse_real(value), parse_real(delta),
                                          make_search(opt));
    *out = dup(covering_json(*s->schedule, l, value, delta, k));
    return HS_OK;
  });
}

hs_status hs_verify_density_csv(hs_schedule* s, const char* const* grid, size_t n,
                                uint64_t l_max, const hs_search* opt, char** out) {
  return guarded([&] {
    check(s, out);
    std::vector<Multiplier> zs;
    for (size_t i = 0; i < n; ++i) zs.push_back(parse_z(grid[i]));
    *out = dup(demo_csv(s->verifier->density_demo(zs, l_max, make_search(opt))));
    return HS_OK;
  });
}

hs_status hs_divergence_json(hs_schedule* s, uint64_t l, uint64_t horizon, char** out) {
  return guarded([&] {
    check(s, out);
    *out = dup(divergence_json(*s->schedule, s->verifier->divergence_report(l, horizon)));
    return HS_OK;
  });
}

}  // extern "C"
