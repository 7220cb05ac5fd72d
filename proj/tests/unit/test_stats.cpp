#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wargame/experiment/human.hpp"
#include "wargame/gateway/synthetic.hpp"
#include "wargame/stats/analysis.hpp"
#include "wargame/stats/bootstrap.hpp"
#include "wargame/stats/lda.hpp"

using namespace wargame;

namespace {

BootstrapOptions quick(std::uint64_t seed = 1, int resamples = 2000) {
  BootstrapOptions o;
  o.resamples = resamples;
  o.seed = seed;
  return o;
}

GameRecord rec(ActionSet v, Treatment t = {}, int chunks = 3) {
  GameRecord r;
  r.status = RecordStatus::Complete;
  r.treatment = t;
  r.variant.dialog_chunks = chunks;
  r.response = ResponseVector{v, "", "", ""};
  return r;
}

std::uint32_t bit(std::string_view key) { return 1u << *catalog().find_key(key); }

// First action of the given stance in a move, found by scanning the catalog.
std::uint32_t first_of(Move m, Stance s) {
  for (const auto& a : catalog().actions(m))
    if (a.stance == s) return 1u << a.index;
  return 0;
}

}  // namespace

TEST_CASE("bootstrap of a constant statistic is a point") {
  const auto ci = bootstrap_ci(5, [](std::span<const std::uint32_t>) { return 2.5; }, quick());
  CHECK(ci.low == 2.5);
  CHECK(ci.high == 2.5);
  const std::vector<double> same(30, 0.7);
  const auto m = bootstrap_mean_ci(same, quick());
  CHECK(m.low == doctest::Approx(0.7));
  CHECK(m.high == doctest::Approx(0.7));
}

TEST_CASE("bootstrap rejects empty input and bad options") {
  CHECK_THROWS_AS(bootstrap_ci(0, [](std::span<const std::uint32_t>) { return 0.0; }, quick()), Error);
  CHECK_THROWS_AS(bootstrap_mean_ci(std::vector<double>{}, quick()), Error);
  auto o = quick();
  o.level = 1.0;
  CHECK_THROWS_AS(o.validate(), ConfigError);
  o = quick();
  o.resamples = 1;
  CHECK_THROWS_AS(o.validate(), ConfigError);
}

TEST_CASE("bootstrap is deterministic and independent of thread count") {
  const std::vector<double> v{0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 1};
  auto o = quick(42);
  const auto a = bootstrap_mean_ci(v, o);
  CHECK(bootstrap_mean_ci(v, o) == a);
  for (int t : {2, 3, 8}) {
    o.threads = t;
    CHECK(bootstrap_mean_ci(v, o) == a);
  }
  const std::vector<double> w{0.3, 0.1, 0.9};
  o.threads = 1;
  const auto d1 = bootstrap_diff_ci(v, w, o);
  o.threads = 5;
  CHECK(bootstrap_diff_ci(v, w, o) == d1);
  // binary data has coarse quantiles, so check seed sensitivity on reals
  const std::vector<double> r{0.13, 0.92, 0.45, 0.71, 0.08, 0.66, 0.29, 0.51};
  const auto r42 = bootstrap_mean_ci(r, o);
  o.seed = 43;
  CHECK_FALSE(bootstrap_mean_ci(r, o) == r42);
}

TEST_CASE("sorted_quantile interpolates linearly") {
  const std::vector<double> s{1, 2, 4, 8};
  CHECK(sorted_quantile(s, 0.0) == 1.0);
  CHECK(sorted_quantile(s, 1.0) == 8.0);
  // h = 3 * 0.5 = 1.5 -> halfway between 2 and 4
  CHECK(sorted_quantile(s, 0.5) == doctest::Approx(3.0));
  // h = 0.75 -> 1 + 0.75 * (2 - 1)
  CHECK(sorted_quantile(s, 0.25) == doctest::Approx(1.75));
}

TEST_CASE("percentile interval coverage on Bernoulli(0.3)") {
  // Monte-Carlo oracle: fraction of intervals containing the true mean.
  std::mt19937_64 gen(2024);
  std::bernoulli_distribution coin(0.3);
  int hits = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> v(200);
    for (auto& x : v) x = coin(gen) ? 1.0 : 0.0;
    hits += bootstrap_mean_ci(v, quick(static_cast<std::uint64_t>(t) + 1, 1000)).contains(0.3);
  }
  const double cov = static_cast<double>(hits) / trials;
  CHECK(cov >= 0.88);
  CHECK(cov <= 0.99);
}

TEST_CASE("total causal effect counts presence directly") {
  const auto b = ActionSet(bit("m1_b"));
  const std::vector<GameRecord> a{rec(b), rec(b), rec(b), rec(ActionSet{})};
  const std::vector<GameRecord> c{rec(b), rec(ActionSet{}), rec(ActionSet{}), rec(ActionSet{})};
  const auto e = total_causal_effect(a, c, *catalog().find_key("m1_b"), quick());
  CHECK(e.delta == doctest::Approx(3.0 / 4 - 1.0 / 4));
  CHECK(e.id == "m1_b");
  CHECK(e.n_a == 4);
  CHECK(e.n_b == 4);
  CHECK(e.ci.contains(e.delta));
  CHECK_THROWS_AS(total_causal_effect(a, {}, 0, quick()), Error);
}

TEST_CASE("self-contrast gives zero delta and a symmetric interval") {
  std::vector<GameRecord> g;
  for (std::uint32_t i = 0; i < 20; ++i) g.push_back(rec(ActionSet(i * 2654435761u)));
  for (const auto& e : total_causal_effects(g, g, quick())) {
    CHECK(e.delta == 0.0);
    CHECK(e.ci.low == -e.ci.high);
    CHECK_FALSE(e.significant());
  }
}

TEST_CASE("effects are antisymmetric and order invariant") {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<GameRecord> a, b;
    const auto na = 3 + gen() % 20, nb = 3 + gen() % 20;
    for (std::size_t i = 0; i < na; ++i) a.push_back(rec(ActionSet(static_cast<std::uint32_t>(gen()))));
    for (std::size_t i = 0; i < nb; ++i) b.push_back(rec(ActionSet(static_cast<std::uint32_t>(gen()))));
    const std::size_t act = gen() % kActionCount;
    const auto o = quick(gen(), 500);
    const auto ab = total_causal_effect(a, b, act, o);
    const auto ba = total_causal_effect(b, a, act, o);
    CHECK(ab.delta == doctest::Approx(-ba.delta));
    CHECK(ab.ci.low == doctest::Approx(-ba.ci.high));
    CHECK(ab.ci.high == doctest::Approx(-ba.ci.low));
    std::shuffle(a.begin(), a.end(), gen);
    std::reverse(b.begin(), b.end());
    const auto shuffled = total_causal_effect(a, b, act, o);
    CHECK(shuffled.delta == doctest::Approx(ab.delta));
    CHECK(shuffled.ci == ab.ci);
  }
}

TEST_CASE("format_effect uses distances to the interval ends") {
  EffectEstimate e;
  e.delta = 0.52;
  e.ci = {0.39, 0.65};
  CHECK(format_effect(e) == "0.52 (+0.13, -0.13)");
  e.delta = 0.0;
  e.ci = {-0.1, 0.2};
  CHECK(format_effect(e) == "0.00 (+0.20, -0.10)");
}

TEST_CASE("frequencies stay in [0, 1] and match counts") {
  std::mt19937_64 gen(5);
  std::vector<GameRecord> g;
  std::array<int, kActionCount> count{};
  for (int i = 0; i < 37; ++i) {
    const ActionSet v(static_cast<std::uint32_t>(gen()));
    for (std::size_t k = 0; k < kActionCount; ++k) count[k] += v.test(k);
    g.push_back(rec(v));
  }
  const auto f = action_frequencies(g, quick());
  REQUIRE(f.size() == kActionCount);
  for (std::size_t k = 0; k < kActionCount; ++k) {
    CHECK(f[k].mean == doctest::Approx(count[k] / 37.0));
    CHECK(f[k].ci.low >= 0.0);
    CHECK(f[k].ci.high <= 1.0);
  }
}

TEST_CASE("injected shift is detected and the null stays quiet") {
  ResponseModel shifted = ResponseModel::null_model();
  const std::size_t target = *catalog().find_key("m2_a2");
  shifted.status_quo[target] = 0.5;
  Treatment a, b;
  a.china_posture = ChinaPosture::StatusQuo;
  b.china_posture = ChinaPosture::Revisionist;
  int found = 0;
  std::array<int, kActionCount> null_flags{};
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto recs = synthetic_records(shifted, {{a, 40}, {b, 40}}, 100 + s);
    std::vector<GameRecord> ga(recs.begin(), recs.begin() + 40), gb(recs.begin() + 40, recs.end());
    found += total_causal_effect(ga, gb, target, quick(s + 1)).significant();
    const auto null = synthetic_records(ResponseModel::null_model(), {{a, 40}, {b, 40}}, 900 + s);
    std::vector<GameRecord> na(null.begin(), null.begin() + 40), nb(null.begin() + 40, null.end());
    const auto effs = total_causal_effects(na, nb, quick(s + 1, 1000));
    for (std::size_t k = 0; k < kActionCount; ++k) null_flags[k] += effs[k].significant();
  }
  CHECK(found == seeds);
  int total_flags = 0;
  for (int f : null_flags) total_flags += f;
  // about 5% of 21 * 20 tests; a loose bound guards against a broken interval
  CHECK(total_flags <= 45);
}

TEST_CASE("treatment table finds a posture effect and needs both levels") {
  ResponseModel m = ResponseModel::null_model();
  m.status_quo[*catalog().find_key("m2_h")] = 0.0;
  m.status_quo[*catalog().find_key("m2_a")] = -0.5;
  std::vector<SyntheticArm> arms;
  for (const auto& t : all_treatments()) arms.push_back({t, 10});
  const auto recs = synthetic_records(m, arms, 3);
  const auto table = treatment_effect_table(recs, quick());
  REQUIRE(table.size() == 3);
  CHECK(table[2].variable == TreatmentVariable::ChinaPosture);
  CHECK(table[2].effect);
  CHECK(table[0].actions.size() == kMove1ActionCount);
  CHECK(table[2].actions.size() == kMove2ActionCount);
  CHECK(table[2].actions[0].id == "m2_a");
  CHECK(table[2].actions[0].delta < -0.3);

  std::vector<GameRecord> one_level;
  for (const auto& r : recs)
    if (r.treatment.ai_accuracy == AiAccuracy::High) one_level.push_back(r);
  CHECK_THROWS_WITH_AS(treatment_effect_table(one_level, quick()), doctest::Contains("ai_accuracy"), Error);
}

TEST_CASE("aggressiveness curve matches direct computation") {
  const std::uint32_t agg1 = first_of(Move::One, Stance::Aggressive);
  const std::uint32_t des1 = first_of(Move::One, Stance::DeEscalatory);
  const std::uint32_t agg2 = first_of(Move::Two, Stance::Aggressive);
  // length 1: indices +1, +1, 0 -> 2/3; length 4: -1, 0 -> -1/2
  const std::vector<GameRecord> recs{rec(ActionSet(agg1), {}, 1), rec(ActionSet(agg1 | agg2), {}, 1),
                                     rec(ActionSet(agg1 | des1), {}, 1), rec(ActionSet(des1), {}, 4),
                                     rec(ActionSet{}, {}, 4)};
  const auto c = aggressiveness_curve(recs, quick(), {0, 1, 4, 7});
  REQUIRE(c.points.size() == 4);
  CHECK(c.points[0].move == Move::One);
  CHECK(c.points[0].dialog_chunks == 1);
  CHECK(c.points[0].mean_index == doctest::Approx(2.0 / 3.0));
  CHECK(c.points[0].mean_count == doctest::Approx(4.0 / 3.0));
  CHECK(c.points[1].dialog_chunks == 4);
  CHECK(c.points[1].mean_index == doctest::Approx(-0.5));
  CHECK(c.points[3].move == Move::Two);
  CHECK(c.points[3].mean_index == 0.0);
  CHECK(c.points[2].mean_index == doctest::Approx(1.0 / 3.0));
  CHECK(c.warnings.size() == 2);
  for (const auto& p : c.points) {
    CHECK(p.index_ci.low >= -1.0);
    CHECK(p.index_ci.high <= 1.0);
    CHECK(p.index_ci.contains(p.mean_index));
  }
}

TEST_CASE("curves on constant fixtures are flat") {
  std::vector<GameRecord> only_b, all;
  for (int len : {0, 2, 5})
    for (int i = 0; i < 4; ++i) {
      only_b.push_back(rec(ActionSet(bit("m1_b")), {}, len));
      all.push_back(rec(ActionSet(ActionSet::kAllBits), {}, len));
    }
  for (const auto& p : aggressiveness_curve(only_b, quick()).points)
    if (p.move == Move::One) CHECK(p.mean_index == -1.0);
  for (const auto& p : aggressiveness_curve(all, quick()).points) {
    CHECK(p.mean_count == (p.move == Move::One ? 7.0 : 14.0));
    CHECK(p.count_ci.low == p.mean_count);
  }
}

TEST_CASE("consistency table on a counted fixture") {
  const std::uint32_t agg1 = first_of(Move::One, Stance::Aggressive);
  const std::uint32_t des1 = first_of(Move::One, Stance::DeEscalatory);
  const std::uint32_t agg2 = first_of(Move::Two, Stance::Aggressive);
  const std::uint32_t des2 = first_of(Move::Two, Stance::DeEscalatory);
  std::vector<GameRecord> recs;
  for (int i = 0; i < 4; ++i) recs.push_back(rec(ActionSet(agg1 | (i < 3 ? agg2 : des2))));
  for (int i = 0; i < 5; ++i) recs.push_back(rec(ActionSet(des1 | (i < 2 ? agg2 : des2))));
  recs.push_back(rec(ActionSet(agg1 | des1 | agg2)));  // neutral move 1
  recs.push_back(rec(ActionSet(agg2)));                // empty move 1
  const auto t = consistency_table(recs, quick());
  REQUIRE(t.agg_given_agg.p);
  REQUIRE(t.agg_given_des.p);
  CHECK(*t.agg_given_agg.p == 0.75);
  CHECK(*t.agg_given_des.p == 0.40);
  CHECK(t.agg_given_agg.given + t.agg_given_des.given + t.neutral_excluded == recs.size());
  CHECK(t.neutral_excluded == 2);
  for (const auto* p : {&t.agg_given_agg, &t.agg_given_des}) {
    CHECK(p->ci.low >= 0.0);
    CHECK(p->ci.high <= 1.0);
    CHECK(p->ci.contains(*p->p));
  }
  CHECK(t.flags.empty());
  const auto text = render_consistency_table({{"fixture", t}});
  CHECK(text.find("p(agg2 | agg1)") != std::string::npos);
  CHECK(text.find("0.75 (+") != std::string::npos);
  CHECK(text.find("0.40 (+") != std::string::npos);
}

TEST_CASE("consistency with an empty cell is flagged undefined") {
  const std::uint32_t agg1 = first_of(Move::One, Stance::Aggressive);
  const std::uint32_t agg2 = first_of(Move::Two, Stance::Aggressive);
  std::vector<GameRecord> recs(10, rec(ActionSet(agg1 | agg2)));
  const auto t = consistency_table(recs, quick());
  CHECK(*t.agg_given_agg.p == 1.0);
  CHECK_FALSE(t.agg_given_des.p);
  CHECK(t.flags.size() == 1);
  CHECK(format_probability(t.agg_given_des) == "undefined");
}

namespace {

// Gauss-Jordan solve with partial pivoting, independent of Eigen.
std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::vector<LabeledVector> gaussian_classes(std::uint64_t seed, int per_class, double shift) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<LabeledVector> data;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < per_class; ++i) {
      FeatureVector x;
      for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = noise(gen) * (1.0 + 0.1 * static_cast<double>(k));
      x(0) += c * shift;
      x(3) -= c * shift * 0.5;
      data.push_back({c ? "b" : "a", x});
    }
  return data;
}

}  // namespace

TEST_CASE("two-class LDA direction matches the closed form") {
  const auto data = gaussian_classes(11, 40, 2.0);
  const std::size_t n = kActionCount;
  std::vector<double> mu[2] = {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (const auto& d : data)
    for (std::size_t k = 0; k < n; ++k) mu[d.label == "b"][k] += d.x(static_cast<Eigen::Index>(k)) / 40.0;
  std::vector<std::vector<double>> sw(n, std::vector<double>(n, 0.0));
  for (const auto& d : data) {
    const auto& m = mu[d.label == "b"];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        sw[i][j] += (d.x(static_cast<Eigen::Index>(i)) - m[i]) * (d.x(static_cast<Eigen::Index>(j)) - m[j]);
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += sw[i][i];
  for (std::size_t i = 0; i < n; ++i) sw[i][i] += 1e-6 * trace / static_cast<double>(n);
  std::vector<double> diff(n);
  for (std::size_t k = 0; k < n; ++k) diff[k] = mu[0][k] - mu[1][k];
  auto w = solve(sw, diff);
  double norm = 0.0, big = 0.0;
  for (double x : w) {
    norm += x * x;
    if (std::abs(x) > std::abs(big)) big = x;
  }
  norm = std::sqrt(norm) * (big < 0 ? -1.0 : 1.0);

  util::Rng rng(1);
  const auto proj = lda_project(data, {}, rng);
  for (std::size_t k = 0; k < n; ++k) CHECK(proj.basis[0](static_cast<Eigen::Index>(k)) == doctest::Approx(w[k] / norm).epsilon(1e-6));
  CHECK(std::abs(proj.basis[0].dot(proj.basis[1])) < 1.0 - 1e-6);
  CHECK(proj.points.size() == data.size());
  CHECK(proj.classes.size() == 2);
}

TEST_CASE("learned projection beats random projections") {
  std::vector<LabeledVector> data;
  std::mt19937_64 gen(3);
  std::normal_distribution<double> jitter(0.0, 0.01);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 30; ++i) {
      FeatureVector x = FeatureVector::Zero();
      x(c) = 1.0;
      for (Eigen::Index k = 0; k < x.size(); ++k) x(k) += jitter(gen);
      data.push_back({c ? "e2" : "e1", x});
    }
  util::Rng rng(2);
  const auto proj = lda_project(data, {}, rng);
  Eigen::MatrixXd w(kActionCount, 2);
  w.col(0) = proj.basis[0];
  w.col(1) = proj.basis[1];
  const double learned = fisher_ratio(data, w);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    Eigen::MatrixXd r(kActionCount, 2);
    for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = g(gen);
    CHECK(learned >= fisher_ratio(data, r) * (1.0 - 1e-9));
  }
  CHECK((proj.classes[0].mean - proj.classes[1].mean).norm() > 0.5);
}

TEST_CASE("LDA is invariant to class names up to sign") {
  auto data = gaussian_classes(21, 25, 1.5);
  util::Rng r1(1), r2(1);
  const auto p = lda_project(data, {}, r1);
  for (auto& d : data) d.label = d.label == "a" ? "zz" : "aa";
  const auto q = lda_project(data, {}, r2);
  for (std::size_t i = 0; i < data.size(); ++i)
    for (int k = 0; k < 2; ++k)
      CHECK(std::abs(p.points[i].y(k)) == doctest::Approx(std::abs(q.points[i].y(k))).epsilon(1e-9));
}

TEST_CASE("identical class distributions overlap") {
  std::mt19937_64 gen(8);
  std::vector<LabeledVector> data;
  for (int i = 0; i < 400; ++i)
    data.push_back({i % 2 ? "x" : "y", to_features(ActionSet(static_cast<std::uint32_t>(gen())))});
  util::Rng rng(1);
  const auto p = lda_project(data, {}, rng);
  const Eigen::Vector2d gap = p.classes[0].mean - p.classes[1].mean;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(p.classes[0].covariance);
  const double half_minor_axis = 0.5 * std::sqrt(es.eigenvalues()(0));
  CHECK(gap.norm() < half_minor_axis);
}

TEST_CASE("LDA rejects degenerate input and adds the random baseline") {
  util::Rng rng(4);
  const FeatureVector z = FeatureVector::Zero();
  CHECK_THROWS_AS(lda_project({{"a", z}, {"a", z}, {"a", z}}, {}, rng), Error);
  CHECK_THROWS_AS(lda_project({{"a", z}, {"a", z}, {"b", z}}, {}, rng), Error);
  CHECK_THROWS_AS(lda_project({{"a", z}, {"b", z}}, {}, rng), Error);

  std::vector<LabeledVector> data;
  std::mt19937_64 gen(6);
  const std::pair<std::string, int> classes[] = {{"human", 48}, {"gpt-3.5", 80}, {"gpt-4", 80}, {"gpt-4o", 80}};
  for (const auto& [label, n] : classes)
    for (int i = 0; i < n; ++i) data.push_back({label, to_features(ActionSet(static_cast<std::uint32_t>(gen())))});
  LdaOptions opts;
  opts.include_random_baseline = true;
  const auto p = lda_project(data, opts, rng);
  CHECK(p.random_count == 72);
  CHECK(p.points.size() == data.size() + 72);
  CHECK(p.classes.size() == 5);
  CHECK(random_baseline_count({48, 80, 80, 80}) == 72);
  CHECK(random_baseline_count({}) == 0);
}

TEST_CASE("random vectors are fair coins per bit") {
  util::Rng rng(12);
  CHECK(gen_random_vectors(0, rng).empty());
  const auto v = gen_random_vectors(10000, rng);
  for (std::size_t k = 0; k < kActionCount; ++k) {
    int c = 0;
    for (const auto& r : v) c += r.selections.test(k);
    CHECK(std::abs(c / 10000.0 - 0.5) <= 0.02);
  }
}
