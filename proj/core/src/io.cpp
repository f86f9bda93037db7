#include "chieq/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace chieq {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_timeseries_csv(std::ostream& os, const TimeSeries& ts) {
  os << "step,t,E,F,q_residual_inf,mass,balance_defect,iters\n";
  for (const auto& r : ts.records) {
    os << r.step << ',' << format_double(r.t) << ',' << format_double(r.energy)
       << ',' << format_double(r.modified_energy) << ','
       << format_double(r.q_residual_inf) << ',' << format_double(r.mass) << ','
       << format_double(r.balance_defect) << ',' << r.iterations << '\n';
  }
}

void write_timeseries_csv(const std::filesystem::path& path,
                          const TimeSeries& ts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_timeseries_csv(out, ts);
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  const bool two_d = f.grid()->dim() == 2;
  out << (two_d ? "x,y,phi\n" : "x,phi\n");
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(f.grid()->coordinate(i, 0));
    if (two_d) out << ',' << format_double(f.grid()->coordinate(i, 1));
    out << ',' << format_double(f[i]) << '\n';
  }
}

void write_verdicts_json(const std::filesystem::path& path, const TimeSeries& ts,
                         std::span<const Verdict> verdicts) {
  nlohmann::json doc;
  doc["run"] = {
      {"tableau", ts.meta.tableau}, {"dt", ts.meta.dt},
      {"dim", ts.meta.dim},         {"n", ts.meta.n},
      {"length", ts.meta.length},   {"M", ts.meta.mobility},
      {"eps", ts.meta.eps},         {"C", ts.meta.stabilization},
      {"seed", ts.meta.seed},       {"tol", ts.meta.solver.tol},
      {"max_iter", ts.meta.solver.max_iter},
      {"steps_recorded", ts.records.size() - 1},
  };
  doc["status"] = to_string(ts.status);
  if (ts.failed_step >= 0) doc["failed_step"] = ts.failed_step;
  doc["verdicts"] = nlohmann::json::array();
  for (const auto& v : verdicts) {
    doc["verdicts"].push_back({{"name", v.name},
                               {"pass", v.pass},
                               {"observed", v.observed},
                               {"threshold", v.threshold},
                               {"detail", v.detail}});
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace chieq
