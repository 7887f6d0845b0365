#include "torsionlab/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace torsionlab {

using ordered_json = nlohmann::ordered_json;

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

ordered_json torsion_json(const TorsionRecord& r) {
  ordered_json o;
  o["n"] = r.n;
  o["j"] = r.j;
  o["N"] = r.N;
  o["log_magnitude"] = r.log_magnitude;
  if (r.value_re) o["value_re"] = *r.value_re;
  if (r.value_im) o["value_im"] = *r.value_im;
  o["provenance"] = r.provenance;
  return o;
}

ordered_json rep_json(const RepRecord& r) {
  ordered_json o;
  o["kind"] = r.kind;
  o["n"] = r.n;
  if (r.k) o["k"] = *r.k;
  if (r.j) o["j"] = *r.j;
  if (r.u) o["u"] = *r.u;
  if (r.xi) o["xi"] = {{"numer", r.xi->first}, {"denom", r.xi->second}};
  if (r.p_k) o["p_k"] = *r.p_k;
  ordered_json imgs = ordered_json::object();
  for (const auto& im : r.images) {
    ordered_json m = ordered_json::array();
    for (int e = 0; e < 4; ++e)
      m.push_back(ordered_json::array({im.entries[2 * e], im.entries[2 * e + 1]}));
    imgs[im.generator] = m;
  }
  o["images"] = imgs;
  o["max_residual"] = r.max_residual;
  o["irreducible"] = r.irreducible;
  o["metabelian"] = r.metabelian_tag;
  return o;
}

ordered_json asym_json(const AsymptoticsReport& rep) {
  ordered_json o;
  o["n"] = rep.n;
  o["j"] = rep.j;
  o["p_k"] = rep.p_k;
  o["predicted_limit"] = rep.predicted_limit;
  ordered_json seq = ordered_json::array();
  for (size_t i = 0; i < rep.N.size(); ++i)
    seq.push_back(ordered_json{{"N", rep.N[i]},
                               {"value", rep.sequence[i]},
                               {"abs_error", rep.abs_error[i]}});
  o["sequence"] = seq;
  o["decay_exponent"] = rep.decay_exponent;
  return o;
}

}  // namespace

std::string to_json(const TorsionRecord& r) { return torsion_json(r).dump(); }

std::string to_json(const std::vector<RepRecord>& reps) {
  ordered_json a = ordered_json::array();
  for (const auto& r : reps) a.push_back(rep_json(r));
  return a.dump();
}

std::string to_json(const AsymptoticsReport& rep) { return asym_json(rep).dump(); }

std::string to_json(const std::vector<AsymptoticsReport>& reps) {
  ordered_json a = ordered_json::array();
  for (const auto& r : reps) a.push_back(asym_json(r));
  return a.dump();
}

std::string to_json(const LimitSet& ls, int n) {
  ordered_json o;
  o["n"] = n;
  ordered_json a = ordered_json::array();
  for (const auto& l : ls.limits)
    a.push_back(ordered_json{{"exact", l.to_string()},
                             {"p_k", l.p_k},
                             {"value", l.value()}});
  o["limits"] = a;
  o["minimum"] = {{"exact", ls.minimum.to_string()},
                  {"p_k", ls.minimum.p_k},
                  {"value", ls.minimum.value()}};
  return o.dump();
}

std::string to_csv(const TorsionRecord& r) {
  std::ostringstream out;
  out << "n,j,N,log_magnitude,value_re,value_im,provenance\n";
  out << r.n << "," << r.j << "," << r.N << "," << format_full(r.log_magnitude) << ",";
  if (r.value_re) out << format_full(*r.value_re);
  out << ",";
  if (r.value_im) out << format_full(*r.value_im);
  out << "," << r.provenance << "\n";
  return out.str();
}

std::string to_csv(const std::vector<AsymptoticsReport>& reps) {
  std::ostringstream out;
  out << "N,seq,limit,abs_error\n";
  for (const auto& rep : reps) {
    if (reps.size() > 1)
      out << "# n=" << rep.n << " j=" << rep.j << " p_k=" << rep.p_k << "\n";
    for (size_t i = 0; i < rep.N.size(); ++i)
      out << rep.N[i] << "," << format_full(rep.sequence[i]) << ","
          << format_full(rep.predicted_limit) << "," << format_full(rep.abs_error[i])
          << "\n";
  }
  return out.str();
}

std::string to_table(const TorsionRecord& r) {
  std::ostringstream out;
  out << "n=" << r.n << " j=" << r.j << " N=" << r.N << "\n";
  out << "log_magnitude  " << format_sig12(r.log_magnitude) << "\n";
  if (r.value_re) {
    const double im = r.value_im.value_or(0.0);
    out << "value          " << format_sig12(*r.value_re) << (im < 0 ? " - " : " + ")
        << format_sig12(im < 0 ? -im : im) << "i\n";
  }
  out << "provenance     " << r.provenance << "\n";
  return out.str();
}

std::string to_table(const std::vector<RepRecord>& reps) {
  std::ostringstream out;
  for (const auto& r : reps) {
    if (r.kind == "metabelian") {
      out << "metabelian k=" << *r.k << "  u_k=" << format_sig12(*r.u)
          << "  residual=" << format_sig12(r.max_residual)
          << "  irreducible=" << (r.irreducible ? "yes" : "no")
          << "  metabelian=" << (r.metabelian_tag ? "yes" : "no") << "\n";
    } else {
      out << "surgery    j=" << *r.j << "  xi=exp(i*pi*" << r.xi->first << "/"
          << r.xi->second << ")  p_k=" << *r.p_k
          << "  residual=" << format_sig12(r.max_residual)
          << "  irreducible=" << (r.irreducible ? "yes" : "no") << "\n";
    }
  }
  return out.str();
}

std::string to_table(const std::vector<AsymptoticsReport>& reps) {
  std::ostringstream out;
  for (const auto& rep : reps) {
    out << "n=" << rep.n << " j=" << rep.j << " p_k=" << rep.p_k
        << " predicted_limit=" << format_sig12(rep.predicted_limit)
        << " decay_exponent=" << format_sig12(rep.decay_exponent) << "\n";
    out << "     N  log|Tor|/(2N)   abs_error\n";
    for (size_t i = 0; i < rep.N.size(); ++i) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%6lld  %-14.12g  %.12g\n",
                    static_cast<long long>(rep.N[i]), rep.sequence[i], rep.abs_error[i]);
      out << buf;
    }
  }
  return out.str();
}

std::string to_table(const LimitSet& ls, int n) {
  std::ostringstream out;
  out << "limit set for n=" << n << ":\n";
  for (const auto& l : ls.limits)
    out << "  " << l.to_string() << " = " << format_sig12(l.value()) << "\n";
  out << "minimum: " << ls.minimum.to_string() << " = "
      << format_sig12(ls.minimum.value()) << "\n";
  return out.str();
}

}  // namespace torsionlab
