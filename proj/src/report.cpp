#include "report.hpp"

#include "errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace hypershift {

using nlohmann::ordered_json;

namespace {

constexpr const char* kAlgorithms = "schedule:fixed-point-y,checkpointed;targets:ramped-dyadic-levels";
constexpr const char* kVersion = "0.1.0";

std::string num(long double v, int digits = 21) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return buf;
}

ordered_json bracket_obj(const TerminationBracket& b) {
  return ordered_json::parse(bracket_json(b));
}

ordered_json with_header(const ScheduleConfig& cfg) {
  ordered_json j;
  j["version"] = kVersion;
  j["version_hash"] = version_hash();
  j["config"] = ordered_json::parse(config_json(cfg));
  return j;
}

}  // namespace

std::string version_hash() {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* p = kAlgorithms; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_json(const ScheduleConfig& cfg) {
  ordered_json j;
  j["mode"] = cfg.mode_name();
  j["density"] = cfg.density.name();
  j["k_start"] = cfg.k_start.value_or(cfg.density.default_k_start());
  j["precision_digits"] = cfg.precision_digits;
  j["budget"] = cfg.budget;
  return j.dump();
}

std::string targets_csv(Index from, Index to) {
  require(from >= 1 && from <= to, "target range must satisfy 1 <= from <= to");
  std::string out = "l,coords,alpha,eps\n";
  for (Index l = from; l <= to; ++l) out += target_csv_row(enumerate(l)) + "\n";
  return out;
}

std::string entries_csv(Schedule& s, Index from, Index to) {
  std::string out = "k,q,j,M,y,theta,x,log_r\n";
  from = std::max(from, s.k_start());
  for (Index k = from; k <= to; ++k) {
    ScheduleEntry e = s.entry(k);
    out += std::to_string(k) + "," + std::to_string(e.q) + "," + std::to_string(e.j) + "," +
           e.M.str() + "," + e.y().str(30) + "," + (e.has_theta ? e.theta().str(30) : "0") + "," +
           e.x.str(30) + "," + e.log_r.str(30) + "\n";
  }
  return out;
}

std::string steps_json(Schedule& s, unsigned upto, unsigned* reached) {
  ordered_json j = with_header(s.config());
  ordered_json steps = ordered_json::array();
  unsigned ok = 0;
  std::string status = "ok";
  for (unsigned q = 1; q <= upto; ++q) {
    auto rec = s.try_step(q);
    if (!rec) {
      status = "BudgetExceeded";
      break;
    }
    ordered_json r;
    r["q"] = rec->q;
    r["N"] = rec->N;
    r["M_N"] = rec->M_N.str();
    r["d"] = rec->d.str();
    r["complete"] = rec->complete;
    r["cycle_starts"] = rec->cycle_starts;
    r["rounding_terms"] = rec->rounding_terms;
    if (rec->complete) {
      r["end_index"] = rec->end_index;
      r["M_end"] = rec->M_end.str();
      r["y_end"] = Interval::dyadic(rec->Y_end, -static_cast<long>(s.frac_bits())).str(30);
    } else {
      r["reach_end"] = rec->reach_end;
      if (rec->bracket) r["bracket"] = bracket_obj(*rec->bracket);
    }
    steps.push_back(r);
    if (!rec->complete) {
      status = q < upto ? "BudgetExceeded" : "incomplete";
      break;
    }
    ok = q;
  }
  j["steps"] = steps;
  j["status"] = status;
  if (reached) *reached = ok;
  return j.dump(2) + "\n";
}

std::string blocks_csv(HyperVector& h, Index upto) {
  std::string out = "k,M_k,width,j,log_amp,phase\n";
  for (Index k = h.schedule().k_start(); k <= upto; ++k) {
    out += HyperVector::block_csv_row(h.block(k)) + "\n";
  }
  return out;
}

std::string materialize_csv(HyperVector& h, std::size_t blocks, std::size_t len) {
  auto v = h.materialize(blocks, len);
  std::string out = "i,re,im\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += std::to_string(i) + "," + num(v[i].real()) + "," + num(v[i].imag()) + "\n";
  }
  return out;
}

std::string witness_json(const Schedule& s, const Witness& w) {
  ordered_json j = with_header(s.config());
  j["z"] = w.z;
  j["l"] = w.l;
  j["k"] = w.k;
  j["step"] = w.q;
  j["M"] = w.M.str();
  j["log_dist_upper"] = num(w.log_dist.upper());
  j["lemma_gap_upper"] = num(w.lemma_gap.upper());
  j["eps"] = num(w.eps);
  j["margin"] = num(w.margin);
  return j.dump(2) + "\n";
}

std::string covering_json(Schedule& s, Index l, const std::string& sv, const std::string& delta,
                          Index k) {
  ordered_json j = with_header(s.config());
  ScheduleEntry e = s.entry(k);
  j["l"] = l;
  j["s"] = sv;
  j["delta"] = delta;
  j["k"] = k;
  j["M"] = e.M.str();
  j["y"] = e.y().str(30);
  j["x"] = e.x.str(30);
  return j.dump(2) + "\n";
}

std::string demo_csv(const std::vector<DemoCell>& cells) {
  std::string out = "z,l,status,k,M,log_dist_upper,margin\n";
  for (const auto& c : cells) {
    out += "\"" + c.z + "\"," + std::to_string(c.l) + "," + c.status + ",";
    if (c.witness) {
      out += std::to_string(c.witness->k) + "," + c.witness->M.str() + "," +
             num(c.witness->log_dist.upper()) + "," + num(c.witness->margin);
    } else {
      out += ",,,";
    }
    out += "\n";
  }
  return out;
}

std::string divergence_json(const Schedule& s, const DivergenceReport& r) {
  ordered_json j = with_header(s.config());
  j["l"] = r.l;
  j["horizon"] = r.horizon;
  ordered_json orbit = ordered_json::array();
  for (const auto& [k, v] : r.orbit) orbit.push_back({{"k", k}, {"sum", num(v)}});
  ordered_json minorant = ordered_json::array();
  for (const auto& [k, v] : r.minorant) minorant.push_back({{"s", k}, {"sum", num(v)}});
  j["orbit"] = orbit;
  j["minorant"] = minorant;
  return j.dump(2) + "\n";
}

}  // namespace hypershift
