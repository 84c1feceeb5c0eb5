#include "paczk/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paczk/errors.hpp"

namespace paczk {

namespace {
// Finite stand-in for +infinity inside the circuit; larger than any schema
// span but far from overflow.
constexpr double kSortSentinel = 1e300;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}
}  // namespace

void KMeansConfig::validate() const {
  if (k < 2) throw ConfigError("KMeansConfig: k must be at least 2");
  if (iters < 1) throw ConfigError("KMeansConfig: iters must be at least 1");
  if (!(subsample_ratio > 0.0 && subsample_ratio <= 1.0))
    throw ConfigError("KMeansConfig: subsample_ratio must lie in (0, 1]");
}

void SvmConfig::validate() const {
  if (epochs < 1) throw ConfigError("SvmConfig: epochs must be at least 1");
  if (!(learning_rate > 0.0)) throw ConfigError("SvmConfig: learning_rate must be positive");
  if (regularization < 0.0) throw ConfigError("SvmConfig: regularization must be nonnegative");
  if (!(subsample_ratio > 0.0 && subsample_ratio <= 1.0))
    throw ConfigError("SvmConfig: subsample_ratio must lie in (0, 1]");
}

void MechanismSpec::validate(const AttributeSchema& schema) const {
  if (entries.empty()) throw ConfigError("MechanismSpec: needs at least one entry");
  for (const auto& e : entries)
    if (e.attribute >= schema.size())
      throw SchemaMismatch("MechanismSpec references attribute " + std::to_string(e.attribute) +
                           " outside the schema");
}

// ---------------------------------------------------------------------------
// K-means
// ---------------------------------------------------------------------------

KMeansRun kmeans_fixed(const Dataset& data, const KMeansConfig& cfg, Circuit& c) {
  cfg.validate();
  data.validate();
  const std::size_t n = data.n, d = data.d, k = cfg.k;
  if (n < k) throw TooFewPoints(n, k);
  if (data.has_labels())
    for (int l : data.labels)
      if (l < 0 || static_cast<std::size_t>(l) >= k)
        throw DataError("kmeans: label outside {0..K-1}");

  std::vector<double> cent(data.x.begin(), data.x.begin() + k * d);
  ClusterGroups groups(k, n);
  for (std::size_t j = 0; j < n; ++j) groups.active[(j % k) * n + j] = 1.0;

  std::vector<double> dist(k);
  for (std::size_t it = 0; it < cfg.iters; ++it) {
    // assignment: nearest centroid, ties to the smaller index
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        double acc = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
          const double diff = c.sub(data.at(j, t), cent[i * d + t]);
          acc = c.add(acc, c.mul(diff, diff));
        }
        dist[i] = acc;
      }
      double best = dist[0];
      double best_idx = 0.0;
      for (std::size_t i = 1; i < k; ++i) {
        const double closer = c.ind_lt(dist[i], best);
        best = c.select(closer, dist[i], best);
        best_idx = c.select(closer, static_cast<double>(i), best_idx);
      }
      for (std::size_t i = 0; i < k; ++i)
        groups.active[i * n + j] = c.ind_eq(best_idx, static_cast<double>(i));
    }
    // update: masked means; an empty cluster keeps its previous centroid
    for (std::size_t i = 0; i < k; ++i) {
      double count = 0.0;
      for (std::size_t j = 0; j < n; ++j) count = c.add(count, groups.active[i * n + j]);
      const double nonempty = c.ind_ge(count, 1.0);
      const double denom = c.select(nonempty, count, 1.0);
      for (std::size_t t = 0; t < d; ++t) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          sum = c.add(sum, c.mul(groups.active[i * n + j], data.at(j, t)));
        const double mean = c.div(sum, denom);
        cent[i * d + t] = c.select(nonempty, mean, cent[i * d + t]);
      }
    }
  }

  KMeansRun run;
  run.groups = std::move(groups);
  run.centroids = data.has_labels() ? canonicalize_kmeans(cent, run.groups, data.labels, d)
                                    : std::move(cent);
  return run;
}

namespace {
bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}
}  // namespace

std::vector<double> canonicalize_kmeans(std::span<const double> centroids,
                                        const ClusterGroups& groups, std::span<const int> labels,
                                        std::size_t d) {
  const std::size_t k = groups.k, n = groups.n;
  if (labels.size() != n) throw DimensionMismatch("canonicalize_kmeans label count");
  if (centroids.size() != k * d) throw DimensionMismatch("canonicalize_kmeans centroid grid");

  // votes[i][l]: actively assigned points of centroid i carrying label l
  std::vector<std::vector<std::size_t>> votes(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (groups.at(i, j) > 0.5) ++votes[i][static_cast<std::size_t>(labels[j])];

  std::vector<std::size_t> pref(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 1; l < k; ++l)
      if (votes[i][l] > votes[i][pref[i]]) pref[i] = l;  // strict: ties keep smaller label

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> class_of(k, kNone);   // centroid -> class
  std::vector<bool> taken(k, false);             // class -> already owned
  auto centroid_row = [&](std::size_t i) { return centroids.subspan(i * d, d); };

  for (std::size_t l = 0; l < k; ++l) {
    std::size_t winner = kNone;
    for (std::size_t i = 0; i < k; ++i) {
      if (pref[i] != l) continue;
      if (winner == kNone || votes[i][l] > votes[winner][l] ||
          (votes[i][l] == votes[winner][l] && lex_less(centroid_row(i), centroid_row(winner))))
        winner = i;
    }
    if (winner != kNone) {
      class_of[winner] = l;
      taken[l] = true;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (class_of[i] != kNone) continue;
    for (std::size_t l = 0; l < k; ++l)
      if (!taken[l]) {
        class_of[i] = l;
        taken[l] = true;
        break;
      }
  }

  std::vector<double> out(k * d, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < d; ++t) out[class_of[i] * d + t] = centroids[i * d + t];
  return out;
}

// ---------------------------------------------------------------------------
// SVM
// ---------------------------------------------------------------------------

SvmModel svm_fixed(const Dataset& data, const SvmConfig& cfg, Circuit& c) {
  cfg.validate();
  data.validate();
  if (!data.has_labels()) throw ConfigError("svm_fixed requires labeled data");
  const std::size_t n = data.n, d = data.d;
  bool saw0 = false, saw1 = false;
  for (int l : data.labels) {
    if (l == 0)
      saw0 = true;
    else if (l == 1)
      saw1 = true;
    else
      throw DataError("svm_fixed: label outside {0,1}");
  }
  if (!saw0 || !saw1) throw DegenerateLabels();

  // labels {0,1} -> y in {-1,+1}
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j)
    y[j] = c.sub(c.mul(2.0, static_cast<double>(data.labels[j])), 1.0);

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  for (std::size_t t = 0; t < cfg.epochs; ++t) {
    const double eta = cfg.learning_rate / (1.0 + cfg.regularization * static_cast<double>(t));
    const double decay = 1.0 - eta * cfg.regularization;
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t t2 = 0; t2 < d; ++t2) dot = c.add(dot, c.mul(w[t2], data.at(j, t2)));
      const double margin = c.mul(y[j], c.add(dot, b));
      const double viol = c.ind_lt(margin, 1.0);
      const double coef = c.mul(viol, y[j]);
      for (std::size_t t2 = 0; t2 < d; ++t2)
        w[t2] = c.add(c.mul(decay, w[t2]), c.mul(eta, c.mul(coef, data.at(j, t2))));
      b = c.add(b, c.mul(eta, coef));
    }
  }
  return canonicalize_svm(w, b, c);
}

SvmModel canonicalize_svm(std::span<const double> w, double b, Circuit& c) {
  require_finite(w, "canonicalize_svm normal");
  require_finite(b, "canonicalize_svm offset");
  double norm_sq = 0.0;
  for (double v : w) norm_sq = c.add(norm_sq, c.mul(v, v));
  const double norm = c.sqrt(norm_sq);
  if (norm == 0.0) throw ZeroVector();

  SvmModel m;
  m.w.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) m.w[i] = c.div(w[i], norm);
  m.b = c.div(b, norm);

  // sign of the first nonzero coordinate, branch-free scan
  double sign = 0.0;
  double unresolved = 1.0;
  for (double v : m.w) {
    const double nonzero = c.sub(1.0, c.ind_eq(v, 0.0));
    const double pick = c.mul(nonzero, unresolved);
    const double coord_sign = c.sub(c.mul(2.0, c.ind_ge(v, 0.0)), 1.0);
    sign = c.add(sign, c.mul(pick, coord_sign));
    unresolved = c.mul(unresolved, c.sub(1.0, nonzero));
  }
  sign = c.add(sign, unresolved);  // unreachable all-zero fallback

  for (auto& v : m.w) v = c.mul(v, sign);
  m.b = c.mul(m.b, sign);
  return m;
}

// ---------------------------------------------------------------------------
// Database statistics
// ---------------------------------------------------------------------------

namespace {
// Ascending bitonic sorting network; the compare-exchange sequence depends
// only on the (power-of-two) array length.
void bitonic_sort(std::vector<double>& v, Circuit& c) {
  const std::size_t p = v.size();
  for (std::size_t size = 2; size <= p; size <<= 1) {
    for (std::size_t stride = size >> 1; stride > 0; stride >>= 1) {
      for (std::size_t i = 0; i < p; ++i) {
        const std::size_t j = i ^ stride;
        if (j <= i) continue;
        const bool ascending = (i & size) == 0;
        const double a = v[i], bb = v[j];
        const double swap = c.ind_gt(a, bb);
        const double lo = c.select(swap, bb, a);
        const double hi = c.select(swap, a, bb);
        v[i] = ascending ? lo : hi;
        v[j] = ascending ? hi : lo;
      }
    }
  }
}
}  // namespace

DbStatResult db_stat_eval(const DbTable& table, const MechanismSpec& spec, const Formula& f,
                          Circuit& c) {
  spec.validate(table.schema);
  if (f.attr_count() != table.schema.size())
    throw SchemaMismatch("formula width disagrees with table schema");
  f.validate();
  if (table.n == 0) throw DataError("db_stat_eval: empty table");

  const std::size_t n = table.n;
  std::vector<double> ind(n);
  for (std::size_t j = 0; j < n; ++j) ind[j] = eval_formula(f, table.row(j), c);

  double count = 0.0;
  for (std::size_t j = 0; j < n; ++j) count = c.add(count, ind[j]);
  const double nonempty = c.ind_ge(count, 1.0);
  const double denom = c.select(nonempty, count, 1.0);

  DbStatResult res;
  res.values.reserve(spec.entries.size());
  for (const auto& entry : spec.entries) {
    if (entry.function == StatFn::kAverage) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        sum = c.add(sum, c.mul(ind[j], table.rows[j * table.schema.size() + entry.attribute]));
      res.values.push_back(c.div(sum, denom));
    } else {
      std::vector<double> vals(next_pow2(n), kSortSentinel);
      for (std::size_t j = 0; j < n; ++j)
        vals[j] = c.select(ind[j], table.rows[j * table.schema.size() + entry.attribute],
                           kSortSentinel);
      bitonic_sort(vals, c);
      // lower median: rank floor((count-1)/2), selected branch-free
      const double rank = c.div(c.sub(count, 1.0), 2.0);
      double med = 0.0;
      for (std::size_t j = 0; j < vals.size(); ++j) {
        const double here = c.mul(c.ind_ge(rank, static_cast<double>(j)),
                                  c.ind_lt(rank, static_cast<double>(j) + 1.0));
        med = c.add(med, c.mul(here, vals[j]));
      }
      res.values.push_back(med);
    }
  }
  res.match_count = static_cast<std::uint64_t>(std::llround(count));
  res.valid = res.match_count > 0;
  return res;
}

// ---------------------------------------------------------------------------
// Subsampling
// ---------------------------------------------------------------------------

Dataset subsample(const Dataset& data, double ratio, SeededRng& rng) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ConfigError("subsample: ratio must lie in (0, 1]");
  const std::size_t m = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(data.n)));
  if (m == 0) throw EmptyResult();

  std::vector<std::size_t> idx(data.n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(data.n) - 1));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());

  Dataset out;
  out.n = m;
  out.d = data.d;
  out.x.reserve(m * data.d);
  if (data.has_labels()) out.labels.reserve(m);
  for (std::size_t i : idx) {
    const auto p = data.point(i);
    out.x.insert(out.x.end(), p.begin(), p.end());
    if (data.has_labels()) out.labels.push_back(data.labels[i]);
  }
  return out;
}

}  // namespace paczk
