#include "qhg/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace qhg {

// ---------------------------------------------------------------------------
// Branches

SectorSpec SectorSpec::make(double arg_min, double arg_max, double radius_max) {
  if (!(arg_min >= -kPi && arg_min < arg_max && arg_max <= kPi))
    fail(ErrorKind::domain, "sector requires -pi <= arg_min < arg_max <= pi");
  if (!(radius_max > 0.0 && radius_max <= 1.0))
    fail(ErrorKind::domain, "sector requires 0 < radius_max <= 1");
  return SectorSpec{arg_min, arg_max, radius_max};
}

bool SectorSpec::contains(Complex z) const {
  if (z == Complex{}) return false;
  const double arg = std::arg(-z);
  return arg > arg_min && arg < arg_max && std::abs(z) < radius_max;
}

Complex log_neg(Complex z, const SectorSpec& sector) {
  if (z == Complex{}) fail(ErrorKind::domain, "log_neg: z = 0");
  if (!is_finite(z)) fail(ErrorKind::domain, "log_neg: non-finite argument");
  Complex w = -z;
  // std::arg returns values in [-pi, pi]; (-pi) is folded onto pi.
  double arg = std::arg(w);
  if (arg <= -kPi) arg = kPi;
  if (!(arg > sector.arg_min && arg < sector.arg_max))
    fail(ErrorKind::sector, "arg(-z) = " + std::to_string(arg) + " outside sector (" +
                                std::to_string(sector.arg_min) + ", " +
                                std::to_string(sector.arg_max) + ")");
  if (!(std::abs(z) < sector.radius_max))
    fail(ErrorKind::sector, "|z| = " + std::to_string(std::abs(z)) + " outside sector radius");
  return {std::log(std::abs(w)), arg};
}

Complex neg_pow(Complex s, Complex z, const SectorSpec& sector) {
  return std::exp(s * log_neg(z, sector));
}

Complex log_two_sin(Complex x) {
  if (x.imag() >= 0.0) return Complex{0.0, 0.5 * kPi} - kI * x + log1p(-std::exp(2.0 * kI * x));
  return Complex{0.0, -0.5 * kPi} + kI * x + log1p(-std::exp(-2.0 * kI * x));
}

namespace {

void check_kernel_pole(Complex s) {
  const double n = std::round(s.real());
  if (std::abs(s - Complex{n, 0.0}) < 1e-12)
    fail(ErrorKind::pole, "Barnes kernel evaluated within 1e-12 of the integer " +
                              std::to_string(static_cast<long long>(n)));
}

}  // namespace

Complex barnes_kernel(Complex s, Complex z, const SectorSpec& sector) {
  const Complex ell = log_neg(z, sector);
  check_kernel_pole(s);
  return std::exp(log_barnes_kernel(s, ell));
}

Complex log_barnes_kernel(Complex s, Complex log_neg_z) {
  check_kernel_pole(s);
  return std::log(kPi) + s * log_neg_z - (log_two_sin(kPi * s) - std::log(2.0));
}

// ---------------------------------------------------------------------------
// Probe circles

Complex residue_probe(const ComplexFunction& f, Complex s0, double radius, int n_points) {
  if (!(radius > 0.0) || n_points < 4) fail(ErrorKind::domain, "residue_probe: bad circle");
  Complex sum{};
  for (int k = 0; k < n_points; ++k) {
    const Complex e = std::polar(1.0, 2.0 * kPi * k / n_points);
    const Complex v = f(s0 + radius * e);
    if (!is_finite(v))
      fail(ErrorKind::probe, "residue_probe: non-finite sample at " +
                                 format_complex(s0 + radius * e));
    sum += v * e;
  }
  return sum * (radius / n_points);
}

int winding_number(const ComplexFunction& f, Complex s0, double radius, int n_points) {
  if (!(radius > 0.0) || n_points < 4) fail(ErrorKind::domain, "winding_number: bad circle");
  const double h = radius * 1e-3;
  Complex sum{};
  for (int k = 0; k < n_points; ++k) {
    const Complex e = std::polar(1.0, 2.0 * kPi * k / n_points);
    const Complex s = s0 + radius * e;
    const Complex fs = f(s);
    const Complex df = (f(s + h) - f(s - h)) / (2.0 * h);
    const Complex g = df / fs;
    if (!is_finite(g) || fs == Complex{})
      fail(ErrorKind::probe, "winding_number: f vanishes or is singular on the circle at " +
                                 format_complex(s));
    sum += g * e;
  }
  const Complex count = sum * (radius / n_points);
  const double nearest = std::round(count.real());
  if (std::abs(count - Complex{nearest, 0.0}) > 0.1)
    fail(ErrorKind::inconclusive, "winding_number: argument-principle integral " +
                                      format_complex(count) + " is not near an integer");
  return static_cast<int>(nearest);
}

// ---------------------------------------------------------------------------
// Pole families

std::vector<Complex> PoleFamily::enumerate(double re_min, double re_max, double im_min,
                                           double im_max) const {
  if (steps.size() != signs.size())
    fail(ErrorKind::parameter, "PoleFamily '" + label + "': steps/signs size mismatch");
  const double reach = std::abs(base) + std::max(std::abs(re_min), std::abs(re_max)) +
                       std::max(std::abs(im_min), std::abs(im_max));
  std::vector<std::pair<long, long>> ranges;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double len = std::abs(steps[i]);
    if (!(len > 0.0)) fail(ErrorKind::parameter, "PoleFamily '" + label + "': zero step");
    const long n = static_cast<long>(std::ceil(reach / len)) + 1;
    switch (signs[i]) {
      case IndexSign::nonpositive: ranges.emplace_back(-n, 0); break;
      case IndexSign::positive: ranges.emplace_back(1, n); break;
      case IndexSign::nonnegative: ranges.emplace_back(0, n); break;
      case IndexSign::any: ranges.emplace_back(-n, n); break;
    }
  }
  std::vector<Complex> out;
  std::vector<long> idx(steps.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = ranges[i].first;
  while (true) {
    Complex p = base;
    for (std::size_t i = 0; i < idx.size(); ++i) p += static_cast<double>(idx[i]) * steps[i];
    if (p.real() >= re_min && p.real() <= re_max && p.imag() >= im_min && p.imag() <= im_max)
      out.push_back(p);
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] <= ranges[i].second) break;
      idx[i] = ranges[i].first;
    }
    if (i == idx.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contours

namespace {

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

}  // namespace

double Contour::distance_to(Complex p) const {
  const Complex first = vertices.front();
  const Complex last = vertices.back();
  double best = p.imag() <= first.imag() ? std::abs(p.real() - abscissa_bottom)
                                         : std::abs(p - first);
  best = std::min(best, p.imag() >= last.imag() ? std::abs(p.real() - abscissa_top)
                                                : std::abs(p - last));
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    best = std::min(best, point_segment_distance(p, vertices[i], vertices[i + 1]));
  return best;
}

bool Contour::lies_left(Complex p) const {
  // Parity of crossings of the eastward horizontal ray from p.
  int crossings = 0;
  const Complex first = vertices.front();
  const Complex last = vertices.back();
  if (p.imag() < first.imag() && abscissa_bottom > p.real()) ++crossings;
  if (p.imag() >= last.imag() && abscissa_top > p.real()) ++crossings;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const Complex a = vertices[i];
    const Complex b = vertices[i + 1];
    if ((a.imag() > p.imag()) == (b.imag() > p.imag())) continue;
    const double t = (p.imag() - a.imag()) / (b.imag() - a.imag());
    const double x = a.real() + t * (b.real() - a.real());
    if (x > p.real()) ++crossings;
  }
  return crossings % 2 == 1;
}

bool Contour::is_simple() const {
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 2; j + 1 < n; ++j)
      if (segments_intersect(vertices[i], vertices[i + 1], vertices[j], vertices[j + 1]))
        return false;
  return true;
}

bool Contour::is_straight() const {
  for (const Complex& v : vertices)
    if (v.real() != abscissa_bottom) return false;
  return abscissa_bottom == abscissa_top;
}

namespace {

struct TaggedPole {
  Complex p;
  bool right;  // belongs to a right family (must end up on the left of the path)
  const std::string* label;
};

struct Finger {
  double ylo, yhi, tip;
  bool east;
};

std::string describe(const TaggedPole& t) {
  return (t.label ? *t.label : std::string("?")) + " at " + format_complex(t.p);
}

// Returns an empty optional when the candidate abscissa cannot be realized.
std::optional<Contour> fingers_contour(const std::vector<TaggedPole>& poles, double x0,
                                       double clearance, double height) {
  const double pad = 1.1 * clearance;
  std::vector<const TaggedPole*> violators;
  for (const auto& t : poles) {
    if (t.right && t.p.real() > x0 - pad) violators.push_back(&t);
    if (!t.right && t.p.real() < x0 + pad) violators.push_back(&t);
  }
  std::sort(violators.begin(), violators.end(),
            [](const TaggedPole* a, const TaggedPole* b) { return a->p.imag() < b->p.imag(); });
  std::vector<Finger> fingers;
  for (const TaggedPole* v : violators) {
    const double lo = v->p.imag() - pad;
    const double hi = v->p.imag() + pad;
    if (!fingers.empty() && lo < fingers.back().yhi + 0.5 * clearance) {
      Finger& f = fingers.back();
      if (f.east != v->right) return std::nullopt;
      f.yhi = std::max(f.yhi, hi);
      f.tip = f.east ? std::max(f.tip, v->p.real()) : std::min(f.tip, v->p.real());
    } else {
      fingers.push_back({lo, hi, v->p.real(), v->right});
    }
  }
  Contour c;
  c.abscissa_bottom = x0;
  c.abscissa_top = x0;
  c.clearance = clearance;
  double top = height;
  double bottom = -height;
  if (!fingers.empty()) {
    top = std::max(top, fingers.back().yhi + 1.0);
    bottom = std::min(bottom, fingers.front().ylo - 1.0);
  }
  c.vertices.emplace_back(x0, bottom);
  for (const Finger& f : fingers) {
    const double rho = 0.5 * (f.yhi - f.ylo);
    const double ymid = 0.5 * (f.yhi + f.ylo);
    const double xt = f.east ? std::max(f.tip, x0) : std::min(f.tip, x0);
    c.vertices.emplace_back(x0, f.ylo);
    c.vertices.emplace_back(xt, f.ylo);
    for (int k = 1; k < 8; ++k) {
      const double ang = -0.5 * kPi + (f.east ? 1.0 : -1.0) * kPi * k / 8.0;
      c.vertices.emplace_back(xt + rho * std::cos(ang), ymid + rho * std::sin(ang));
    }
    c.vertices.emplace_back(xt, f.yhi);
    c.vertices.emplace_back(x0, f.yhi);
  }
  c.vertices.emplace_back(x0, top);
  return c;
}

bool contour_admissible(const Contour& c, const std::vector<TaggedPole>& poles,
                        std::string* why) {
  if (!c.is_simple()) {
    if (why) *why = "path self-intersects";
    return false;
  }
  for (const auto& t : poles) {
    if (c.distance_to(t.p) < c.clearance * (1.0 - 1e-12)) {
      if (why) *why = "clearance violated by " + describe(t);
      return false;
    }
    if (c.lies_left(t.p) != t.right) {
      if (why) *why = "wrong side for " + describe(t);
      return false;
    }
  }
  return true;
}

}  // namespace

Contour build_separating_contour(const ContourRequest& request) {
  const double cl = request.clearance;
  if (!(cl > 0.0)) fail(ErrorKind::domain, "build_separating_contour: clearance must be > 0");
  if (!(request.height > 0.0)) fail(ErrorKind::domain, "build_separating_contour: height <= 0");

  double window = 10.0;
  for (const auto* fams : {&request.right_families, &request.left_families})
    for (const auto& f : *fams) window = std::max(window, std::abs(f.base.real()) + 10.0);
  if (request.preferred_abscissa) window = std::max(window, std::abs(*request.preferred_abscissa) + 10.0);
  const double ih = request.height + 1.0;

  std::vector<TaggedPole> poles;
  for (const auto& f : request.right_families)
    for (Complex p : f.enumerate(-window, window, -ih, ih)) poles.push_back({p, true, &f.label});
  for (const auto& f : request.left_families)
    for (Complex p : f.enumerate(-window, window, -ih, ih)) poles.push_back({p, false, &f.label});

  // Pairs of opposite poles closer than 2 * clearance can never be separated.
  std::vector<std::string> conflicts;
  for (const auto& r : poles) {
    if (!r.right) continue;
    for (const auto& l : poles) {
      if (l.right) continue;
      if (std::abs(r.p - l.p) < 2.0 * cl)
        conflicts.push_back(describe(r) + " vs " + describe(l));
    }
  }
  if (!conflicts.empty()) {
    std::ostringstream os;
    os << "inseparable pole families (within 2*clearance):";
    for (std::size_t i = 0; i < conflicts.size() && i < 8; ++i) os << " [" << conflicts[i] << "]";
    fail(ErrorKind::contour, os.str());
  }

  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& t : poles) {
    if (t.right) lo = std::max(lo, t.p.real() + cl);
    else hi = std::min(hi, t.p.real() - cl);
  }
  std::string why;
  if (lo < hi) {
    double x0;
    if (request.preferred_abscissa && *request.preferred_abscissa > lo &&
        *request.preferred_abscissa < hi)
      x0 = *request.preferred_abscissa;
    else if (std::isfinite(lo) && std::isfinite(hi))
      x0 = 0.5 * (lo + hi);
    else if (std::isfinite(lo))
      x0 = lo + 1.0;
    else if (std::isfinite(hi))
      x0 = hi - 1.0;
    else
      x0 = request.preferred_abscissa.value_or(0.0);
    Contour c;
    c.abscissa_bottom = c.abscissa_top = x0;
    c.clearance = cl;
    c.vertices = {Complex{x0, -request.height}, Complex{x0, request.height}};
    if (contour_admissible(c, poles, &why)) return c;
  }

  // Candidate abscissae for an indented path, cheapest detours first.
  std::vector<double> candidates;
  if (request.preferred_abscissa) candidates.push_back(*request.preferred_abscissa);
  std::vector<double> res;
  for (const auto& t : poles) res.push_back(t.p.real());
  std::sort(res.begin(), res.end());
  res.erase(std::unique(res.begin(), res.end()), res.end());
  for (std::size_t i = 0; i < res.size(); ++i) {
    candidates.push_back(res[i]);
    candidates.push_back(res[i] - 1.5 * cl);
    candidates.push_back(res[i] + 1.5 * cl);
    if (i + 1 < res.size()) candidates.push_back(0.5 * (res[i] + res[i + 1]));
  }
  auto cost = [&](double x0) {
    double total = 0.0;
    for (const auto& t : poles) {
      if (t.right && t.p.real() > x0 - cl) total += t.p.real() - x0 + cl;
      if (!t.right && t.p.real() < x0 + cl) total += x0 - t.p.real() + cl;
    }
    return total;
  };
  std::vector<std::pair<double, double>> ranked;
  for (double x0 : candidates) ranked.emplace_back(cost(x0), x0);
  std::sort(ranked.begin(), ranked.end());
  for (const auto& [unused, x0] : ranked) {
    auto c = fingers_contour(poles, x0, cl, request.height);
    if (c && contour_admissible(*c, poles, &why)) return *c;
  }
  fail(ErrorKind::contour, "no admissible separating contour found (last reason: " + why + ")");
}

Contour build_separating_contour(const std::vector<PoleFamily>& right_families,
                                 const std::vector<PoleFamily>& left_families, double clearance,
                                 double height) {
  ContourRequest req;
  req.right_families = right_families;
  req.left_families = left_families;
  req.clearance = clearance;
  req.height = height;
  return build_separating_contour(req);
}

// ---------------------------------------------------------------------------
// Quadrature

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0 && rel_tol > 0.0)) fail(ErrorKind::domain, "quadrature tolerances must be > 0");
  if (!(max_height > 0.0)) fail(ErrorKind::domain, "quadrature max_height must be > 0");
  if (max_refinements < 0) fail(ErrorKind::domain, "quadrature max_refinements must be >= 0");
  if (panel_order != 15) fail(ErrorKind::domain, "only the 7/15 Gauss-Kronrod panel is provided");
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  Complex a, b;
  std::vector<Complex> value;
  std::vector<double> error;
};

class GaussKronrod {
 public:
  GaussKronrod(const BatchIntegrand& f, std::size_t dim) : f_(f), dim_(dim), samples_(15 * dim) {}

  Panel eval(Complex a, Complex b) {
    const Complex center = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    const double habs = std::abs(half);
    for (int k = 0; k < 15; ++k) {
      const double x = k < 7 ? -kXgk[k] : (k == 7 ? 0.0 : kXgk[14 - k]);
      f_(center + half * x, std::span<Complex>(samples_.data() + k * dim_, dim_));
    }
    Panel p{a, b, std::vector<Complex>(dim_), std::vector<double>(dim_)};
    for (std::size_t d = 0; d < dim_; ++d) {
      Complex resk{}, resg{};
      double resabs = 0.0;
      for (int k = 0; k < 15; ++k) {
        const int j = k < 7 ? k : 14 - k;
        const Complex v = samples_[k * dim_ + d];
        resk += kWgk[j] * v;
        resabs += kWgk[j] * std::abs(v);
        if (j % 2 == 1) resg += kWg[j / 2] * v;
      }
      const Complex mean = 0.5 * resk;
      double resasc = 0.0;
      for (int k = 0; k < 15; ++k) {
        const int j = k < 7 ? k : 14 - k;
        resasc += kWgk[j] * std::abs(samples_[k * dim_ + d] - mean);
      }
      double err = std::abs(resk - resg) * habs;
      resasc *= habs;
      resabs *= habs;
      if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
      err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
      if (!is_finite(resk) || !std::isfinite(err))
        fail(ErrorKind::accuracy, "non-finite integrand value on panel near " + format_complex(center));
      p.value[d] = resk * half;
      p.error[d] = err;
    }
    return p;
  }

 private:
  const BatchIntegrand& f_;
  std::size_t dim_;
  std::vector<Complex> samples_;
};

struct AdaptiveOutcome {
  std::vector<Complex> values;
  std::vector<double> errors;
};

// Global adaptive bisection over a set of straight pieces.
AdaptiveOutcome adaptive(GaussKronrod& gk, std::size_t dim,
                         const std::vector<std::pair<Complex, Complex>>& pieces, double abs_tol,
                         double rel_tol, int max_panels) {
  std::vector<Panel> panels;
  panels.reserve(pieces.size() * 4);
  for (const auto& [a, b] : pieces) panels.push_back(gk.eval(a, b));
  std::vector<Complex> total(dim);
  std::vector<double> err(dim);
  auto accumulate = [&] {
    std::fill(total.begin(), total.end(), Complex{});
    std::fill(err.begin(), err.end(), 0.0);
    for (const auto& p : panels)
      for (std::size_t d = 0; d < dim; ++d) {
        total[d] += p.value[d];
        err[d] += p.error[d];
      }
  };
  accumulate();
  int since_refresh = 0;
  while (true) {
    std::vector<double> tol(dim);
    bool done = true;
    for (std::size_t d = 0; d < dim; ++d) {
      tol[d] = std::max(abs_tol, rel_tol * std::abs(total[d]));
      if (err[d] > tol[d]) done = false;
    }
    if (done) break;
    if (static_cast<int>(panels.size()) >= max_panels) {
      std::size_t worst = 0;
      for (std::size_t d = 1; d < dim; ++d)
        if (err[d] / tol[d] > err[worst] / tol[worst]) worst = d;
      throw AccuracyError("adaptive quadrature did not reach tolerance (panel budget exhausted)",
                          total[worst], err[worst]);
    }
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double pr = 0.0;
      for (std::size_t d = 0; d < dim; ++d) pr = std::max(pr, panels[i].error[d] / tol[d]);
      if (pr > best) {
        best = pr;
        pick = i;
      }
    }
    const Panel old = panels[pick];
    if (std::abs(old.b - old.a) < 1e-13 * (1.0 + std::abs(old.a))) {
      throw AccuracyError("adaptive quadrature stagnated on a vanishing panel near " +
                              format_complex(old.a),
                          total[0], err[0]);
    }
    const Complex mid = 0.5 * (old.a + old.b);
    panels[pick] = gk.eval(old.a, mid);
    panels.push_back(gk.eval(mid, old.b));
    for (std::size_t d = 0; d < dim; ++d) {
      total[d] += panels[pick].value[d] + panels.back().value[d] - old.value[d];
      err[d] += panels[pick].error[d] + panels.back().error[d] - old.error[d];
    }
    if (++since_refresh == 64) {
      accumulate();
      since_refresh = 0;
    }
  }
  accumulate();
  return {total, err};
}

void split_piece(Complex a, Complex b, double max_len,
                 std::vector<std::pair<Complex, Complex>>& out) {
  const double len = std::abs(b - a);
  if (len == 0.0) return;
  const int n = std::max(1, static_cast<int>(std::ceil(len / max_len)));
  for (int k = 0; k < n; ++k)
    out.emplace_back(a + (b - a) * (static_cast<double>(k) / n),
                     a + (b - a) * (static_cast<double>(k + 1) / n));
}

}  // namespace

QuadratureResult segment_integral(const ComplexFunction& f, Complex a, Complex b, double abs_tol,
                                  double rel_tol, int max_panels, int initial_panels) {
  BatchIntegrand g = [&f](Complex s, std::span<Complex> out) { out[0] = f(s); };
  GaussKronrod gk(g, 1);
  std::vector<std::pair<Complex, Complex>> pieces;
  split_piece(a, b, std::abs(b - a) / std::max(1, initial_panels) * (1.0 + 1e-12), pieces);
  if (pieces.empty()) return {};
  auto out = adaptive(gk, 1, pieces, abs_tol, rel_tol, max_panels);
  return {out.values[0], out.errors[0]};
}

BatchQuadratureResult contour_integral(const BatchIntegrand& f, std::size_t dim,
                                       const Contour& contour, const QuadratureConfig& cfg) {
  cfg.validate();
  if (contour.vertices.size() < 2) fail(ErrorKind::domain, "contour needs at least two vertices");
  GaussKronrod gk(f, dim);
  const Complex first = contour.vertices.front();
  const Complex last = contour.vertices.back();
  const double xb = contour.abscissa_bottom;
  const double xt = contour.abscissa_top;
  double height = std::max({cfg.max_height, -first.imag() + 1.0, last.imag() + 1.0});

  std::vector<std::pair<Complex, Complex>> pieces;
  split_piece(Complex{xb, -height}, first, 1.0, pieces);
  for (std::size_t i = 0; i + 1 < contour.vertices.size(); ++i)
    split_piece(contour.vertices[i], contour.vertices[i + 1], 1.0, pieces);
  split_piece(last, Complex{xt, height}, 1.0, pieces);

  auto core = adaptive(gk, dim, pieces, cfg.abs_tol, cfg.rel_tol, cfg.max_panels);
  BatchQuadratureResult result{core.values, core.errors};

  for (int k = 0; k <= cfg.max_refinements; ++k) {
    if (k == cfg.max_refinements) {
      fail(ErrorKind::divergence,
           "contour integral tail not decaying up to |Im s| = " + std::to_string(height));
    }
    std::vector<std::pair<Complex, Complex>> tail;
    split_piece(Complex{xb, -2.0 * height}, Complex{xb, -height}, 2.0, tail);
    split_piece(Complex{xt, height}, Complex{xt, 2.0 * height}, 2.0, tail);
    std::vector<double> tol(dim);
    for (std::size_t d = 0; d < dim; ++d)
      tol[d] = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(result.values[d]));
    auto piece = adaptive(gk, dim, tail, cfg.abs_tol * 0.1, cfg.rel_tol, cfg.max_panels);
    bool small = true;
    for (std::size_t d = 0; d < dim; ++d) {
      result.values[d] += piece.values[d];
      result.error_estimates[d] += piece.errors[d];
      if (std::abs(piece.values[d]) >= 0.1 * tol[d]) small = false;
    }
    height *= 2.0;
    if (small) {
      for (std::size_t d = 0; d < dim; ++d) result.error_estimates[d] += std::abs(piece.values[d]);
      break;
    }
  }
  return result;
}

QuadratureResult contour_integral(const ComplexFunction& f, const Contour& contour,
                                  const QuadratureConfig& cfg) {
  BatchIntegrand g = [&f](Complex s, std::span<Complex> out) { out[0] = f(s); };
  auto r = contour_integral(g, 1, contour, cfg);
  return {r.values[0], r.error_estimates[0]};
}

}  // namespace qhg
