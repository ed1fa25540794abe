#include "curvetop/resolution.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace curvetop {

namespace {

constexpr long long kMaxExponent = 100000;  // largest t-power after clearing denominators
constexpr int kBlowupGuard = 100000;        // total blow-ups per resolution
constexpr int kSimGuard = 100000;           // steps in a forward branch simulation

// ---------------------------------------------------------------------------
// Dense polynomials over Q in the local parameter t.  Index = power of t;
// no trailing zero coefficients; the empty vector is the zero polynomial.

using Poly = std::vector<Rat>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() + b.size() > (1u << 20))
    throw std::logic_error("internal error: polynomial degree overflow during resolution");
  Poly out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_rem(Poly a, const Poly& b) {
  while (a.size() >= b.size()) {
    Rat f = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = poly_rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  Poly rem = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (rem.size() >= b.size()) {
    Rat f = rem.back() / b.back();
    std::size_t off = rem.size() - b.size();
    q[off] = f;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) rem[off + i] -= f * b[i];
    rem.pop_back();
    poly_trim(rem);
    if (rem.empty()) break;
  }
  if (!rem.empty()) throw std::logic_error("internal error: inexact polynomial division");
  poly_trim(q);
  return q;
}

// ---------------------------------------------------------------------------
// Branch coordinates: zero, or t^ord * num(t)/den(t) with num(0) != 0 and
// den(0) = 1.  Exact rational functions of the local parameter.

struct Coord {
  bool zero = true;
  long long ord = 0;
  Poly num, den;
};

Coord make_coord(long long ord, Poly num, Poly den) {
  poly_trim(num);
  poly_trim(den);
  if (den.empty()) throw std::logic_error("internal error: zero denominator in coordinate");
  if (num.empty()) return Coord{};
  std::size_t k = 0;
  while (num[k] == 0) ++k;
  ord += static_cast<long long>(k);
  num.erase(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(k));
  k = 0;
  while (den[k] == 0) ++k;
  ord -= static_cast<long long>(k);
  den.erase(den.begin(), den.begin() + static_cast<std::ptrdiff_t>(k));
  if (num.size() > 1 && den.size() > 1) {
    Poly g = poly_gcd(num, den);
    if (g.size() > 1) {
      num = poly_div_exact(num, g);
      den = poly_div_exact(den, g);
    }
  }
  if (den[0] != 1) {
    Rat d0 = den[0];
    for (Rat& c : den) c /= d0;
    for (Rat& c : num) c /= d0;
  }
  Coord out;
  out.zero = false;
  out.ord = ord;
  out.num = std::move(num);
  out.den = std::move(den);
  return out;
}

Coord coord_monomial(long long ord) { return make_coord(ord, Poly{Rat(1)}, Poly{Rat(1)}); }

Coord coord_div(const Coord& a, const Coord& b) {
  if (b.zero) throw std::logic_error("internal error: division by zero coordinate");
  if (a.zero) return Coord{};
  return make_coord(a.ord - b.ord, poly_mul(a.num, b.den), poly_mul(a.den, b.num));
}

// a - c for a unit coordinate (ord 0); the constant term cancels when c is
// the leading coefficient.
Coord coord_sub_const(const Coord& a, const Rat& c) {
  if (a.zero || a.ord != 0)
    throw std::logic_error("internal error: constant subtraction from non-unit coordinate");
  Poly num = a.num;
  num.resize(std::max(num.size(), a.den.size()), Rat(0));
  for (std::size_t i = 0; i < a.den.size(); ++i) num[i] -= c * a.den[i];
  return make_coord(0, std::move(num), a.den);
}

Rat coord_lead(const Coord& a) {
  if (a.zero || a.ord != 0) throw std::logic_error("internal error: leading value of non-unit");
  return a.num[0];  // den(0) = 1
}

// ---------------------------------------------------------------------------
// Branch state at an infinitely near point: an exact parametrization of the
// strict transform in the local coordinates of that point.

struct BranchState {
  std::string name;
  Coord x, y;
};

long long branch_mult(const BranchState& b) {
  if (b.x.zero) return b.y.ord;
  if (b.y.zero) return b.x.ord;
  return std::min(b.x.ord, b.y.ord);
}

// +1: strict transform meets the new exceptional at the chart-1 origin
//     (tangent direction y = 0); 0: at a free point y_1 = c != 0;
// -1: at the chart-2 origin (tangent direction x = 0).
int branch_dir(const BranchState& b) {
  if (b.x.zero) return -1;
  if (b.y.zero) return +1;
  if (b.y.ord > b.x.ord) return +1;
  if (b.y.ord < b.x.ord) return -1;
  return 0;
}

struct Dispatch {
  int cls;  // +1 / 0 / -1 as branch_dir
  Rat c;    // free-point position when cls == 0
  BranchState next;
};

Dispatch dispatch_branch(const BranchState& b) {
  int d = branch_dir(b);
  if (d > 0) return {+1, Rat(0), {b.name, b.x, coord_div(b.y, b.x)}};
  if (d < 0) return {-1, Rat(0), {b.name, coord_div(b.x, b.y), b.y}};
  Coord q = coord_div(b.y, b.x);
  Rat c = coord_lead(q);
  return {0, c, {b.name, b.x, coord_sub_const(q, c)}};
}

// Delta invariant the branch still carries: sum of m(m-1)/2 over the
// infinitely near points from here until its strict transform is smooth.
Int solo_delta(BranchState b) {
  Int total = 0;
  for (int step = 0;; ++step) {
    if (step > kSimGuard)
      throw std::logic_error("internal error: branch '" + b.name + "' never becomes smooth");
    long long m = branch_mult(b);
    if (m == 1) break;
    total += Int(m) * Int(m - 1) / 2;
    b = dispatch_branch(b).next;
  }
  return total;
}

// Intersection multiplicity of two co-located branches: sum of the products
// of their multiplicities over the common infinitely near points.
Int pair_kappa(BranchState a, BranchState b) {
  Int total = 0;
  for (int step = 0;; ++step) {
    if (step > kSimGuard)
      throw std::invalid_argument(
          "branches '" + a.name + "' and '" + b.name +
          "' do not separate: identical branch (possibly a conjugate series) or "
          "insufficient truncation");
    total += Int(branch_mult(a)) * Int(branch_mult(b));
    Dispatch da = dispatch_branch(a), db = dispatch_branch(b);
    if (da.cls != db.cls || (da.cls == 0 && da.c != db.c)) break;
    a = std::move(da.next);
    b = std::move(db.next);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Infinitely near points awaiting a blow-up.  A point knows which divisor
// components pass through it: axis_v has local equation x = 0, axis_h has
// local equation y = 0.  The origin of the ambient plane has neither.

struct Point {
  std::optional<std::string> axis_v, axis_h;
  std::vector<BranchState> branches;
  bool initial = false;
};

// Component id to attach the strict transform to if the point is resolved:
// a single branch, on a single divisor component, crossing it transversally.
std::optional<std::string> resolved_attachment(const Point& p) {
  if (p.branches.size() != 1) return std::nullopt;
  if (p.axis_v.has_value() == p.axis_h.has_value()) return std::nullopt;
  const BranchState& b = p.branches.front();
  if (p.axis_v) {
    if (b.x.zero) throw std::logic_error("internal error: branch lies inside a component");
    return b.x.ord == 1 ? p.axis_v : std::nullopt;
  }
  if (b.y.zero) throw std::logic_error("internal error: branch lies inside a component");
  return b.y.ord == 1 ? p.axis_h : std::nullopt;
}

std::pair<std::string, std::string> norm_edge(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct Process {
  std::map<std::string, Int> self;  // exceptional component -> self-intersection
  std::set<std::pair<std::string, std::string>> edges;
  std::deque<Point> queue;
  std::vector<std::pair<std::string, std::string>> attachments;  // branch -> component
  int next_exceptional = 1;

  void settle(Point&& p) {
    if (auto attach = resolved_attachment(p))
      attachments.emplace_back(p.branches.front().name, *attach);
    else
      queue.push_back(std::move(p));
  }

  std::string blow_front() {
    Point p = std::move(queue.front());
    queue.pop_front();
    std::string eid = "E" + std::to_string(next_exceptional++);
    self.emplace(eid, Int(-1));
    if (p.axis_v) self.at(*p.axis_v) -= 1;
    if (p.axis_h) self.at(*p.axis_h) -= 1;
    if (p.axis_v && p.axis_h) edges.erase(norm_edge(*p.axis_v, *p.axis_h));
    if (p.axis_v) edges.insert(norm_edge(*p.axis_v, eid));
    if (p.axis_h) edges.insert(norm_edge(*p.axis_h, eid));

    std::vector<BranchState> chart1, chart2;
    std::map<Rat, std::vector<BranchState>> free_points;
    for (const BranchState& b : p.branches) {
      Dispatch d = dispatch_branch(b);
      if (d.cls > 0) chart1.push_back(std::move(d.next));
      else if (d.cls < 0) chart2.push_back(std::move(d.next));
      else free_points[d.c].push_back(std::move(d.next));
    }
    if (!chart1.empty()) settle(Point{eid, p.axis_h, std::move(chart1), false});
    for (auto& [c, bs] : free_points) settle(Point{eid, std::nullopt, std::move(bs), false});
    if (!chart2.empty()) settle(Point{p.axis_v, eid, std::move(chart2), false});
    return eid;
  }

  DualGraph exceptional_graph() const {
    DualGraph g;
    for (const auto& [id, s] : self) g.add_exceptional(id, s);
    for (const auto& e : edges) g.add_edge(e.first, e.second);
    return g;
  }

  ResolutionMeasure measure_state() const {
    Int delta = 0, kappa = 0, tangency = 0, corners = 0, origin = 0;
    for (const Point& p : queue) {
      for (const BranchState& b : p.branches) delta += solo_delta(b);
      for (std::size_t i = 0; i < p.branches.size(); ++i)
        for (std::size_t j = i + 1; j < p.branches.size(); ++j)
          kappa += pair_kappa(p.branches[i], p.branches[j]);
      const bool corner = p.axis_v && p.axis_h;
      for (const BranchState& b : p.branches) {
        long long m = branch_mult(b);
        if (p.axis_v) {
          if (b.x.zero) throw std::logic_error("internal error: branch lies inside a component");
          tangency += Int(b.x.ord - m);
        }
        if (p.axis_h) {
          if (b.y.zero) throw std::logic_error("internal error: branch lies inside a component");
          tangency += Int(b.y.ord - m);
        }
        if (corner) corners += 1;
      }
      if (p.initial) origin = 1;
    }
    return {delta, kappa, tangency, corners, origin};
  }
};

// ---------------------------------------------------------------------------
// Branch specifications.

bool reserved_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'E') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

void validate_specs(const std::vector<BranchSpec>& branches) {
  if (branches.empty()) throw std::invalid_argument("at least one branch is required");
  std::set<std::string> names;
  for (const BranchSpec& b : branches) {
    if (b.name.empty()) throw std::invalid_argument("branch with empty name");
    if (reserved_name(b.name))
      throw std::invalid_argument("branch name '" + b.name +
                                  "' is reserved for exceptional components");
    if (!names.insert(b.name).second)
      throw std::invalid_argument("duplicate branch name '" + b.name + "'");
    if (b.axis) {
      if (*b.axis != 'x' && *b.axis != 'y')
        throw std::invalid_argument("branch '" + b.name + "': axis must be 'x' or 'y'");
      if (!b.series.empty())
        throw std::invalid_argument("branch '" + b.name +
                                    "': 'axis' and 'series' are mutually exclusive");
      continue;
    }
    if (b.series.empty())
      throw std::invalid_argument("branch '" + b.name +
                                  "': empty series (declare an axis branch with 'axis')");
    for (std::size_t i = 0; i < b.series.size(); ++i) {
      const PuiseuxTerm& t = b.series[i];
      if (t.coeff == 0)
        throw std::invalid_argument("branch '" + b.name + "': zero coefficient in term " +
                                    std::to_string(i + 1));
      if (t.exponent <= 0)
        throw std::invalid_argument("branch '" + b.name + "': exponent " + to_string(t.exponent) +
                                    " in term " + std::to_string(i + 1) +
                                    " (exponents must be positive)");
      if (i > 0 && t.exponent <= b.series[i - 1].exponent)
        throw std::invalid_argument("branch '" + b.name +
                                    "': exponents must be strictly increasing (term " +
                                    std::to_string(i + 1) + ")");
    }
  }
  for (std::size_t i = 0; i < branches.size(); ++i)
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      const BranchSpec &a = branches[i], &b = branches[j];
      bool same;
      if (a.axis || b.axis) {
        same = a.axis && b.axis && *a.axis == *b.axis;
      } else {
        same = a.series.size() == b.series.size();
        for (std::size_t k = 0; same && k < a.series.size(); ++k)
          same = a.series[k].coeff == b.series[k].coeff &&
                 a.series[k].exponent == b.series[k].exponent;
      }
      if (same)
        throw std::invalid_argument("branches '" + a.name + "' and '" + b.name +
                                    "' are identical");
    }
}

BranchState initial_state(const BranchSpec& spec) {
  BranchState b;
  b.name = spec.name;
  if (spec.axis) {
    if (*spec.axis == 'x') b.x = coord_monomial(1);  // y = 0: (t, 0)
    else b.y = coord_monomial(1);                    // x = 0: (0, t)
    return b;
  }
  Int n = 1;
  for (const PuiseuxTerm& t : spec.series)
    n = boost::multiprecision::lcm(n, Int(boost::multiprecision::denominator(t.exponent)));
  std::vector<std::pair<long long, Rat>> terms;
  for (const PuiseuxTerm& t : spec.series) {
    Int e = n * Int(boost::multiprecision::numerator(t.exponent)) /
            Int(boost::multiprecision::denominator(t.exponent));
    if (e > kMaxExponent)
      throw std::invalid_argument("branch '" + spec.name + "': exponent " + to_string(e) +
                                  " too large after clearing denominators (limit " +
                                  std::to_string(kMaxExponent) + ")");
    terms.emplace_back(e.convert_to<long long>(), t.coeff);
  }
  if (n > kMaxExponent)
    throw std::invalid_argument("branch '" + spec.name + "': common exponent denominator " +
                                to_string(n) + " too large (limit " +
                                std::to_string(kMaxExponent) + ")");
  b.x = coord_monomial(n.convert_to<long long>());
  long long base = terms.front().first;
  Poly num(static_cast<std::size_t>(terms.back().first - base) + 1, Rat(0));
  for (const auto& [e, c] : terms) num[static_cast<std::size_t>(e - base)] = c;
  b.y = make_coord(base, std::move(num), Poly{Rat(1)});
  return b;
}

ResolutionTrace run_resolution(const std::vector<BranchSpec>& branches, bool with_trace) {
  validate_specs(branches);
  Process pr;
  Point origin;
  origin.initial = true;
  for (const BranchSpec& spec : branches) origin.branches.push_back(initial_state(spec));
  pr.settle(std::move(origin));

  ResolutionTrace trace;
  if (with_trace) trace.initial = pr.measure_state();
  int blowups = 0;
  while (!pr.queue.empty()) {
    if (++blowups > kBlowupGuard)
      throw std::invalid_argument(
          "resolution did not terminate after " + std::to_string(kBlowupGuard) +
          " blow-ups: branches may coincide (conjugate or duplicated series) or the "
          "truncations are insufficient");
    std::string eid = pr.blow_front();
    if (with_trace) trace.steps.push_back({eid, pr.exceptional_graph(), pr.measure_state()});
  }

  DualGraph g = pr.exceptional_graph();
  std::map<std::string, std::string> attach(pr.attachments.begin(), pr.attachments.end());
  for (const BranchSpec& spec : branches) {
    auto it = attach.find(spec.name);
    if (it == attach.end())
      throw std::logic_error("internal error: branch '" + spec.name + "' was never resolved");
    g.add_strict(spec.name);
    g.add_edge(spec.name, it->second);
  }
  ValidationReport rep = validate(g);
  if (!rep.ok())
    throw std::logic_error("internal error: resolution produced an invalid graph: " +
                           rep.violations.front());
  if (!rep.minimal)
    throw std::logic_error("internal error: resolution graph is not minimal at '" +
                           rep.non_minimal_vertices.front() + "'");
  trace.graph = std::move(g);
  return trace;
}

Rat json_rational(const nlohmann::json& v, const std::string& ctx, const char* field) {
  if (!v.contains(field))
    throw std::invalid_argument(ctx + ": missing field '" + field + "'");
  const nlohmann::json& f = v.at(field);
  if (f.is_string()) {
    try {
      return parse_rational(f.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(ctx + ": field '" + field + "': " + e.what());
    }
  }
  if (f.is_number_integer()) return Rat(f.get<long long>());
  throw std::invalid_argument(ctx + ": field '" + field +
                              "' must be an exact rational string such as \"3/2\"");
}

}  // namespace

std::vector<BranchSpec> parse_branches(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("branch input is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("branches") || !j.at("branches").is_array())
    throw std::invalid_argument("branch input must be an object with a 'branches' array");
  std::vector<BranchSpec> out;
  const nlohmann::json& arr = j.at("branches");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string ctx = "branches[" + std::to_string(i) + "]";
    const nlohmann::json& item = arr.at(i);
    if (!item.is_object()) throw std::invalid_argument(ctx + ": must be an object");
    if (!item.contains("name") || !item.at("name").is_string())
      throw std::invalid_argument(ctx + ": missing string field 'name'");
    BranchSpec spec;
    spec.name = item.at("name").get<std::string>();
    ctx += " ('" + spec.name + "')";
    if (item.contains("axis")) {
      if (!item.at("axis").is_string() ||
          (item.at("axis") != "x" && item.at("axis") != "y"))
        throw std::invalid_argument(ctx + ": field 'axis' must be \"x\" or \"y\"");
      spec.axis = item.at("axis").get<std::string>()[0];
    }
    if (item.contains("series")) {
      if (!item.at("series").is_array())
        throw std::invalid_argument(ctx + ": field 'series' must be an array");
      for (std::size_t k = 0; k < item.at("series").size(); ++k) {
        const nlohmann::json& term = item.at("series").at(k);
        std::string tctx = ctx + ".series[" + std::to_string(k) + "]";
        if (!term.is_object()) throw std::invalid_argument(tctx + ": must be an object");
        PuiseuxTerm t;
        t.coeff = json_rational(term, tctx, "coeff");
        t.exponent = json_rational(term, tctx, "exponent");
        spec.series.push_back(std::move(t));
      }
    }
    if (!item.contains("axis") && !item.contains("series"))
      throw std::invalid_argument(ctx + ": needs either 'series' or 'axis'");
    out.push_back(std::move(spec));
  }
  validate_specs(out);
  return out;
}

DualGraph resolve(const std::vector<BranchSpec>& branches) {
  return run_resolution(branches, false).graph;
}

ResolutionTrace resolve_trace(const std::vector<BranchSpec>& branches) {
  return run_resolution(branches, true);
}

ResolutionReport resolve_and_report(const std::vector<BranchSpec>& branches) {
  ResolutionReport report;
  report.graph = resolve(branches);
  report.classification = classify(report.graph);
  report.multiplicities = multiplicity_vector(report.graph);
  return report;
}

}  // namespace curvetop
