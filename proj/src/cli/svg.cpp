#include "metric_forge/svg.hpp"

#include <cstdio>
#include <sstream>

namespace metric_forge::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kMargin = 40.0;
constexpr double kAxisY = 80.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_range(const std::vector<Scalar>& values,
                         const std::optional<Nebula>& nebula) {
  Scalar top{1};
  for (const auto& v : values) top = std::max(top, v);
  top = Scalar::from_rational(mpq_class(top.ceil()));
  const double span = top.to_double();
  auto x_of = [&](const Scalar& v) {
    const double t = std::min(v.to_double(), span) / span;
    return kMargin + t * (kWidth - 2 * kMargin);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth)
      << "\" height=\"140.000\" data-max=\"" << top.str() << "\">\n";
  out << "  <line x1=\"" << fixed(kMargin) << "\" y1=\"" << fixed(kAxisY) << "\" x2=\""
      << fixed(kWidth - kMargin) << "\" y2=\"" << fixed(kAxisY)
      << "\" stroke=\"black\"/>\n";
  for (std::int64_t k = 0; Scalar{k} <= top; ++k) {
    const auto x = fixed(x_of(Scalar{k}));
    out << "  <text x=\"" << x << "\" y=\"" << fixed(kAxisY + 30)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << k << "</text>\n";
  }

  if (nebula) {
    out << "  <g class=\"nebula\" data-q=\"" << nebula->q << "\">\n";
    auto bar = [&](const Scalar& lo, const std::string& hi_attr, double x2) {
      const double x1 = x_of(lo);
      out << "    <rect x=\"" << fixed(x1) << "\" y=\"" << fixed(kAxisY - 20)
          << "\" width=\"" << fixed(std::max(x2 - x1, 1.0))
          << "\" height=\"12.000\" fill=\"steelblue\" data-lo=\"" << lo.str()
          << "\" data-hi=\"" << hi_attr << "\"/>\n";
    };
    for (const auto& iv : nebula->bounded) {
      if (iv.lo > top) continue;
      bar(iv.lo, iv.hi.str(), x_of(iv.hi));
    }
    if (nebula->tail_start <= top) bar(nebula->tail_start, "inf", x_of(top));
    out << "  </g>\n";
  }

  out << "  <g class=\"range\">\n";
  for (const auto& v : values) {
    const auto x = fixed(x_of(v));
    out << "    <line x1=\"" << x << "\" y1=\"" << fixed(kAxisY - 6) << "\" x2=\"" << x
        << "\" y2=\"" << fixed(kAxisY + 6) << "\" stroke=\"crimson\" data-value=\""
        << v.str() << "\"/>\n";
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

}  // namespace metric_forge::svg
