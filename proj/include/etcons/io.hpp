#ifndef ETCONS_IO_HPP
#define ETCONS_IO_HPP

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>

#include "etcons/analysis.hpp"
#include "etcons/engine.hpp"
#include "etcons/trigger.hpp"

namespace etcons {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : "none"; }

/// Columns t, y1..yN, z1..zN, v1..vN, u1..uN.
inline void write_trace_csv(std::ostream& os, const Trace& tr) {
  const auto n = tr.agents();
  os << "t";
  for (const char* name : {"y", "z", "v", "u"})
    for (std::size_t i = 1; i <= n; ++i) os << ',' << name << i;
  os << '\n';
  for (std::size_t k = 0; k < tr.samples(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    os << format_double(tr.times[k]);
    for (const auto* m : {&tr.y, &tr.z, &tr.v, &tr.u})
      for (Eigen::Index c = 0; c < m->cols(); ++c) os << ',' << format_double((*m)(r, c));
    os << '\n';
  }
}

/// Columns agent (1-based), kind, time.
inline void write_events_csv(std::ostream& os, const EventLog& log) {
  os << "agent,kind,time\n";
  for (const auto& e : log) os << e.agent + 1 << ',' << to_string(e.kind) << ',' << format_double(e.time) << '\n';
}

/// Long format for plotting tools: t, agent, variable, value.
inline void write_long_csv(std::ostream& os, const Trace& tr) {
  os << "t,agent,variable,value\n";
  for (std::size_t k = 0; k < tr.samples(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    const auto t = format_double(tr.times[k]);
    const std::pair<const char*, const Eigen::MatrixXd*> series[] = {{"y", &tr.y}, {"z", &tr.z}, {"v", &tr.v}, {"u", &tr.u}};
    for (const auto& [name, m] : series)
      for (Eigen::Index c = 0; c < m->cols(); ++c)
        os << t << ',' << c + 1 << ',' << name << ',' << format_double((*m)(r, c)) << '\n';
  }
}

struct SweepRow {
  double c0 = 0.0;
  double c_comm0 = 0.0;
  double tail_radius = 0.0;
  std::optional<double> min_interval_ctrl;
  std::optional<double> min_interval_comm;
  std::size_t events_ctrl = 0;
  std::size_t events_comm = 0;
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "c0,c_comm0,tail_radius,min_interval_ctrl,min_interval_comm,events_ctrl,events_comm\n";
  for (const auto& r : rows) {
    os << format_double(r.c0) << ',' << format_double(r.c_comm0) << ',' << format_double(r.tail_radius) << ','
       << format_optional(r.min_interval_ctrl) << ',' << format_optional(r.min_interval_comm) << ',' << r.events_ctrl
       << ',' << r.events_comm << '\n';
  }
}

}  // namespace etcons

#endif  // ETCONS_IO_HPP
