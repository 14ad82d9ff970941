#include "doctest.h"

#include <random>

#include "motionclass/evaluation.hpp"
#include "oracles.hpp"

using namespace motionclass;

namespace {

ConfusionMatrix random_counts(int rows, int cols, std::mt19937_64& rng) {
  ConfusionMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<long>(rng() % 20);
  if (m.sum() == 0) m(0, 0) = 1;
  return m;
}

}  // namespace

TEST_SUITE("evaluation") {
  TEST_CASE("confusion counts and rejects out-of-range ids") {
    const std::vector<int> cl{0, 0, 1, 2}, tr{1, 1, 0, 1};
    const auto m = confusion(cl, tr, 3, 2);
    CHECK(m(0, 1) == 2);
    CHECK(m(1, 0) == 1);
    CHECK(m(2, 1) == 1);
    CHECK(m.sum() == 4);
    CHECK_THROWS_AS(confusion(cl, tr, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(confusion(cl, std::vector<int>{1}, 3, 2), std::invalid_argument);
  }

  TEST_CASE("diagonal and anti-diagonal matrices") {
    ConfusionMatrix d(2, 2);
    d << 5, 0, 0, 5;
    auto r = acc(d);
    CHECK(r.score == 1.0);
    CHECK(r.mapping == std::vector<int>{0, 1});
    d << 0, 5, 5, 0;
    r = acc(d);
    CHECK(r.score == 1.0);
    CHECK(r.mapping == std::vector<int>{1, 0});
  }

  TEST_CASE("acc equals the brute-force optimum and is permutation invariant") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      std::mt19937_64 rng(seed);
      const int k = 1 + static_cast<int>(rng() % 6);
      const int c = 1 + static_cast<int>(rng() % 6);
      const auto m = random_counts(k, c, rng);
      const auto r = acc(m);
      CHECK(r.score == doctest::Approx(oracle::acc(m)).epsilon(1e-12));
      long hits = 0;
      for (int i = 0; i < k; ++i)
        if (r.mapping[i] >= 0) hits += m(i, r.mapping[i]);
      CHECK(static_cast<double>(hits) / m.sum() == r.score);

      Eigen::PermutationMatrix<Eigen::Dynamic> pr(k), pc(c);
      pr.setIdentity();
      pc.setIdentity();
      std::shuffle(pr.indices().data(), pr.indices().data() + k, rng);
      std::shuffle(pc.indices().data(), pc.indices().data() + c, rng);
      const ConfusionMatrix permuted = pr * m * pc;
      CHECK(acc(permuted).score == r.score);
    }
  }

  TEST_CASE("all-in-one cluster scores the largest class share") {
    ConfusionMatrix m = ConfusionMatrix::Zero(3, 3);
    m.row(1) << 4, 9, 2;
    CHECK(acc(m).score == doctest::Approx(9.0 / 15.0));
    CHECK_THROWS(acc(ConfusionMatrix::Zero(2, 2)));
  }

  TEST_CASE("balancing up-samples minority classes") {
    std::vector<LabeledPrediction> even, skew;
    for (int i = 0; i < 20; ++i) even.push_back({i, i % 3 == 0, i % 2});
    for (int i = 0; i < 12; ++i) skew.push_back({i, i % 2, i < 10 ? 0 : 1});
    const auto b = balance(even, 2, 1);
    CHECK(b.size() == 20);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i].id == even[i].id);
    const auto s = balance(skew, 2, 1);
    CHECK(s.size() == 20);
    CHECK(std::count_if(s.begin(), s.end(), [](const auto& e) { return e.truth == 1; }) == 10);
    for (std::size_t i = 0; i < skew.size(); ++i) CHECK(s[i].id == skew[i].id);

    std::vector<int> cl, tr;
    for (const auto& e : even) {
      cl.push_back(e.cluster);
      tr.push_back(e.truth);
    }
    CHECK(balanced_acc(even, 2, 2, 1).score == acc(confusion(cl, tr, 2, 2)).score);
    CHECK(balanced_acc(even, 2, 2, 1).score == balanced_acc(even, 2, 2, 99).score);
    CHECK_THROWS_WITH(balance(skew, 3, 1), doctest::Contains("2"));
  }

  TEST_CASE("cluster report histograms and top lists") {
    std::vector<LabeledPrediction> ex;
    Eigen::MatrixXd post(6, 2);
    for (int i = 0; i < 6; ++i) {
      ex.push_back({i, i % 2, i % 2});
      post.row(i) << (i % 2 ? 0.1 + 0.01 * i : 0.9 - 0.01 * i), (i % 2 ? 0.9 - 0.01 * i : 0.1 + 0.01 * i);
    }
    const auto r = cluster_report(ex, post, 2, 2, 10);
    CHECK(r.histogram(0, 0) == 3);
    CHECK(r.histogram(0, 1) == 0);
    CHECK(r.histogram(1, 1) == 3);
    CHECK(r.top[0] == std::vector<int>{0, 2, 4});
    CHECK(r.top[1] == std::vector<int>{1, 3, 5});

    post.setConstant(0.5);
    const auto u = cluster_report(ex, post, 2, 2, 2);
    CHECK(u.top[0] == std::vector<int>{0, 2});
    CHECK(u.top[1] == std::vector<int>{1, 3});
    CHECK(u.histogram.rowwise().sum().sum() == 6);
  }
}
