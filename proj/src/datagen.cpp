#include "sycos/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sycos {

namespace {

struct Family {
  Relation kind;
  const char* name;
  double lo;
  double hi;
  double noise;
};

constexpr Family kFamilies[] = {
    {Relation::Independent, "independent", 0.0, 0.0, 0.0},
    {Relation::Linear, "linear", 0.0, 10.0, 1.0},
    {Relation::Exponential, "exponential", -10.0, 10.0, 1.0},
    {Relation::Quadratic, "quadratic", -4.0, 4.0, 1.0},
    {Relation::Diamond, "diamond", 4.0, 8.0, 1.0},
    {Relation::Circle, "circle", -3.0, 3.0, 1.0},
    {Relation::Sine, "sine", 0.0, 10.0, 1.0},
    {Relation::Cross, "cross", -5.0, 5.0, 1.0},
    {Relation::Quartic, "quartic", -1.0, 3.0, 1.0},
    {Relation::Sqrt, "sqrt", 0.0, 25.0, 0.0},
};

const Family& family(Relation r) {
  for (const Family& f : kFamilies)
    if (f.kind == r) return f;
  throw DomainError("unknown relation");
}

double mean_of(std::span<const double> v) {
  double m = 0.0;
  for (double a : v) m += a;
  return m / static_cast<double>(v.size());
}

double sd_of(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double a : v) ss += (a - mean) * (a - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

const std::vector<Relation>& all_relations() {
  static const std::vector<Relation> all = [] {
    std::vector<Relation> v;
    for (const Family& f : kFamilies) v.push_back(f.kind);
    return v;
  }();
  return all;
}

const char* to_string(Relation r) { return family(r).name; }

Relation parse_relation(const std::string& name) {
  for (const Family& f : kFamilies)
    if (name == f.name) return f.kind;
  throw ConfigError("unknown relation '" + name + "'");
}

TimeSeriesPair generate_relation(const RelationSpec& spec) {
  if (spec.n < 2) throw DomainError("relation fixtures need at least 2 samples");
  const Family& fam = family(spec.kind);
  const double lo = spec.x_lo.value_or(fam.lo);
  const double hi = spec.x_hi.value_or(fam.hi);
  const double amp = spec.noise.value_or(fam.noise);
  if (spec.kind != Relation::Independent && !(lo < hi)) throw DomainError("empty x range");
  if (amp < 0.0) throw DomainError("noise amplitude must be non-negative");
  if (spec.kind == Relation::Sqrt && lo < 0.0) throw DomainError("sqrt needs x >= 0");
  if (spec.kind == Relation::Circle && (lo < -3.0 || hi > 3.0))
    throw DomainError("circle needs x within [-3, 3]");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(spec.n), y(spec.n);

  if (spec.kind == Relation::Independent) {
    std::normal_distribution<double> gx(3.0, 5.0), gy(0.0, 1.0);
    for (Index i = 0; i < spec.n; ++i) {
      x[i] = gx(rng);
      y[i] = gy(rng);
    }
    if (spec.sorted) std::sort(x.begin(), x.end());
    return TimeSeriesPair(std::move(x), std::move(y));
  }

  std::uniform_real_distribution<double> ux(lo, hi);
  for (double& a : x) a = ux(rng);
  if (spec.sorted) std::sort(x.begin(), x.end());
  for (Index i = 0; i < spec.n; ++i) {
    const double xi = x[i];
    const double u = amp * unit(rng);
    switch (spec.kind) {
      case Relation::Linear:
        y[i] = 2.0 * xi + u;
        break;
      case Relation::Exponential:
        y[i] = std::pow(0.01, xi + u);
        break;
      case Relation::Quadratic:
        y[i] = xi * xi + u;
        break;
      case Relation::Diamond: {
        const double branch[4] = {xi, 8.0 - xi, -4.0 + xi, 12.0 - xi};
        y[i] = branch[rng() % 4] + u;
        break;
      }
      case Relation::Circle: {
        const double r = std::sqrt(std::max(0.0, 9.0 - xi * xi + u));
        y[i] = (rng() & 1u) ? r : -r;
        break;
      }
      case Relation::Sine:
        y[i] = 2.0 * std::sin(xi) + u;
        break;
      case Relation::Cross:
        y[i] = ((rng() & 1u) ? xi : -xi) + u;
        break;
      case Relation::Quartic:
        y[i] = xi * xi * xi * xi - 4.0 * xi * xi * xi + 4.0 * xi * xi + xi + u;
        break;
      case Relation::Sqrt:
        y[i] = std::sqrt(xi) + u;
        break;
      case Relation::Independent:
        break;
    }
  }
  return TimeSeriesPair(std::move(x), std::move(y));
}

Scenario generate_scenario(const ScenarioSpec& spec) {
  if (spec.total_length < 2) throw ConfigError("scenario needs at least 2 samples");
  std::vector<Block> blocks = spec.blocks;
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.position < b.position; });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.length < 2 || b.position + b.length > spec.total_length)
      throw ConfigError("block outside scenario range");
    if (i > 0 && blocks[i - 1].position + blocks[i - 1].length > b.position)
      throw ConfigError("scenario blocks overlap");
  }

  RelationSpec bg;
  bg.kind = Relation::Independent;
  bg.n = spec.total_length;
  bg.seed = spec.seed;
  bg.sorted = false;
  const TimeSeriesPair background = generate_relation(bg);
  std::vector<double> x(background.x().begin(), background.x().end());
  std::vector<double> y(background.y().begin(), background.y().end());
  const double mx = mean_of(x), my = mean_of(y);
  const double sx = sd_of(x, mx), sy = sd_of(y, my);

  Scenario out;
  for (const Block& b : blocks) {
    RelationSpec rs = b.relation;
    rs.n = b.length;
    const TimeSeriesPair blk = generate_relation(rs);
    const double bmx = mean_of(blk.x()), bmy = mean_of(blk.y());
    const double bsx = sd_of(blk.x(), bmx), bsy = sd_of(blk.y(), bmy);
    for (Index i = 0; i < b.length; ++i) {
      x[b.position + i] = bsx > 0.0 ? mx + (blk.x()[i] - bmx) / bsx * sx : mx;
      y[b.position + i] = bsy > 0.0 ? my + (blk.y()[i] - bmy) / bsy * sy : my;
    }
    out.truth.push_back({b.position, b.position + b.length});
  }
  out.pair = TimeSeriesPair(std::move(x), std::move(y));
  return out;
}

namespace {

ScenarioSpec spaced(Index total, Index count, Index length, std::uint64_t seed) {
  ScenarioSpec s;
  s.total_length = total;
  s.seed = seed;
  const Index gap = (total - count * length) / count;
  for (Index i = 0; i < count; ++i) {
    Block b;
    b.position = gap / 2 + i * (length + gap);
    b.length = length;
    b.relation.kind = Relation::Linear;
    b.relation.seed = seed * 1000003ull + i + 1;
    s.blocks.push_back(b);
  }
  return s;
}

}  // namespace

ScenarioSpec dense_scenario(std::uint64_t seed) { return spaced(4000, 3, 800, seed); }

ScenarioSpec sparse_scenario(std::uint64_t seed) { return spaced(6000, 5, 60, seed); }

ScenarioSpec moderate_scenario(std::uint64_t seed) { return spaced(5000, 4, 250, seed); }

ScenarioSpec embedded_block(std::uint64_t seed, Index total, Index position, Index length,
                            Relation relation, std::optional<double> noise) {
  ScenarioSpec s;
  s.total_length = total;
  s.seed = seed;
  Block b;
  b.position = position;
  b.length = length;
  b.relation.kind = relation;
  b.relation.noise = noise;
  b.relation.seed = seed * 1000003ull + 7;
  s.blocks.push_back(b);
  return s;
}

}  // namespace sycos
