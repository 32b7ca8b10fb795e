#include "swoco/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "swoco/csv.hpp"

namespace swoco {

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("log_spaced: need 0 < lo <= hi");
  }
  if (n < 1) throw std::invalid_argument("log_spaced: need n >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(i == n - 1 ? hi : std::exp(llo + f * (lhi - llo)));
  }
  return out;
}

namespace {

SweepRow run_point(const GameConfig& base, double S, long j, int repetitions) {
  SweepRow row;
  row.S = S;
  row.regime = adversary_threshold_c(S, base.D, base.T).regime;
  row.upper_bound = convex_regret_bound(S, base.D, base.G, base.T);
  row.lower_bound = adaptive_regret_floor(S, base.D, base.G, base.T);
  bool first = true;
  for (int i = 0; i < repetitions; ++i) {
    GameConfig cfg = base;
    cfg.S = S;
    cfg.seed = base.seed + static_cast<std::uint64_t>(j) * 1000000ull +
               static_cast<std::uint64_t>(i);
    const Transcript tr = run_game(cfg);
    const double r = regret(tr);
    const double sw = switching_cost(tr);
    if (first || r > row.regret) row.regret = r;
    if (first || sw > row.switch_cost) row.switch_cost = sw;
    if (sw > S * (1.0 + 1e-9)) row.compliant = false;
    first = false;
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.budgets.empty()) {
    throw std::invalid_argument("run_sweep: empty budget grid");
  }
  if (spec.repetitions < 1) {
    throw std::invalid_argument("run_sweep: repetitions must be >= 1");
  }
  std::vector<double> grid = spec.budgets;
  std::sort(grid.begin(), grid.end());

  std::vector<std::future<SweepRow>> futures;
  futures.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    futures.push_back(std::async(std::launch::async, run_point, spec.base,
                                 grid[j], static_cast<long>(j),
                                 spec.repetitions));
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "S,regime,regret,switch_cost,upper_bound,lower_bound,compliant\n";
  for (const auto& r : rows) {
    os << fmt17(r.S) << ',' << regime_name(r.regime) << ',' << fmt17(r.regret)
       << ',' << fmt17(r.switch_cost) << ',' << fmt17(r.upper_bound) << ','
       << fmt17(r.lower_bound) << ',' << (r.compliant ? 1 : 0) << "\n";
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_sweep_csv(rows, os);
  return os.str();
}

namespace {

BudgetRegime regime_from_name(const std::string& s) {
  if (s == "large") return BudgetRegime::kLarge;
  if (s == "mid") return BudgetRegime::kMid;
  if (s == "small") return BudgetRegime::kSmall;
  throw std::invalid_argument("read_sweep_csv: unknown regime '" + s + "'");
}

}  // namespace

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) {
    throw std::invalid_argument("read_sweep_csv: empty input");
  }
  if (split_csv_line(line) !=
      std::vector<std::string>{"S", "regime", "regret", "switch_cost",
                               "upper_bound", "lower_bound", "compliant"}) {
    throw std::invalid_argument("read_sweep_csv: unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) {
      throw std::invalid_argument("read_sweep_csv: malformed row");
    }
    SweepRow r;
    r.S = std::stod(f[0]);
    r.regime = regime_from_name(f[1]);
    r.regret = std::stod(f[2]);
    r.switch_cost = std::stod(f[3]);
    r.upper_bound = std::stod(f[4]);
    r.lower_bound = std::stod(f[5]);
    if (f[6] != "0" && f[6] != "1") {
      throw std::invalid_argument("read_sweep_csv: compliant must be 0 or 1");
    }
    r.compliant = f[6] == "1";
    rows.push_back(r);
  }
  return rows;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long n = 0;
  for (const auto& [x, y] : xy) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw std::invalid_argument("fit_loglog_slope: requires positive pairs");
    }
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("fit_loglog_slope: need >= 2 points");
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
  }
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

namespace {

struct LogMap {
  double lo, hi, px0, px1;
  double operator()(double v) const {
    const double f = (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo));
    return px0 + f * (px1 - px0);
  }
};

std::string polyline(const std::vector<SweepRow>& rows, const LogMap& xm,
                     const LogMap& ym, double SweepRow::*field,
                     const char* color) {
  std::string pts;
  for (const auto& r : rows) {
    const double v = r.*field;
    if (!(v > 0.0)) continue;
    pts += fmt17(xm(r.S)) + "," + fmt17(ym(v)) + " ";
  }
  return "<polyline fill=\"none\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
}

}  // namespace

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("sweep_svg: no rows");
  double s_lo = rows.front().S, s_hi = rows.front().S;
  double v_lo = 0.0, v_hi = 0.0;
  bool have_v = false;
  for (const auto& r : rows) {
    s_lo = std::min(s_lo, r.S);
    s_hi = std::max(s_hi, r.S);
    for (double v : {r.regret, r.upper_bound, r.lower_bound}) {
      if (!(v > 0.0)) continue;
      if (!have_v) {
        v_lo = v_hi = v;
        have_v = true;
      } else {
        v_lo = std::min(v_lo, v);
        v_hi = std::max(v_hi, v);
      }
    }
  }
  if (!(s_lo > 0.0) || !have_v) {
    throw std::invalid_argument("sweep_svg: needs positive S and values");
  }
  if (s_hi == s_lo) s_hi = s_lo * 2.0;
  if (v_hi == v_lo) v_hi = v_lo * 2.0;
  const LogMap xm{s_lo, s_hi, 70.0, 610.0};
  const LogMap ym{v_lo, v_hi, 440.0, 30.0};  // y grows downward in SVG

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<line x1=\"70\" y1=\"440\" x2=\"610\" y2=\"440\" stroke=\"black\"/>\n";
  svg += "<line x1=\"70\" y1=\"30\" x2=\"70\" y2=\"440\" stroke=\"black\"/>\n";
  svg += polyline(rows, xm, ym, &SweepRow::upper_bound, "#888888");
  svg += polyline(rows, xm, ym, &SweepRow::lower_bound, "#bbbbbb");
  svg += polyline(rows, xm, ym, &SweepRow::regret, "#c0392b");
  svg += "<text x=\"300\" y=\"470\" font-size=\"13\">S (log)</text>\n";
  svg += "<text x=\"8\" y=\"240\" font-size=\"13\" transform=\"rotate(-90 14 "
         "240)\">regret (log)</text>\n";
  svg += "<text x=\"76\" y=\"456\" font-size=\"11\">" + fmt17(s_lo) +
         "</text>\n";
  svg += "<text x=\"560\" y=\"456\" font-size=\"11\">" + fmt17(s_hi) +
         "</text>\n";
  svg += "<text x=\"76\" y=\"44\" font-size=\"11\">max " + fmt17(v_hi) +
         "</text>\n";
  svg += "<text x=\"480\" y=\"60\" font-size=\"12\" fill=\"#c0392b\">regret"
         "</text>\n";
  svg += "<text x=\"480\" y=\"76\" font-size=\"12\" fill=\"#888888\">upper"
         "</text>\n";
  svg += "<text x=\"480\" y=\"92\" font-size=\"12\" fill=\"#bbbbbb\">lower"
         "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace swoco
