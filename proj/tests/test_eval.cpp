#include <algorithm>
#include <random>

#include "doctest.h"
#include "landuse/eval.hpp"

using namespace landuse;
using Pairs = std::vector<std::pair<std::string, std::string>>;

namespace {

Pairs repeat(const std::string& t, const std::string& p, int n) { return Pairs(static_cast<std::size_t>(n), {t, p}); }

Pairs twelve_pairs() {
  Pairs out;
  for (const auto& part : {repeat("A", "A", 3), repeat("A", "B", 1), repeat("B", "B", 3), repeat("B", "C", 1),
                           repeat("C", "C", 2), repeat("C", "A", 1), repeat("A", "C", 1)}) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace

TEST_CASE("confusion tallies pairs") {
  const auto cm = confusion(twelve_pairs(), {"A", "B", "C"});
  // Rows are truth: A [3 1 1], B [0 3 1], C [1 0 2].
  const long expected[3][3] = {{3, 1, 1}, {0, 3, 1}, {1, 0, 2}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(cm.count(i, j) == expected[i][j]);
  }
  CHECK(cm.total() == 12);

  const auto diag = confusion(Pairs{{"A", "A"}, {"B", "B"}}, {"A", "B"});
  CHECK(diag.count(0, 1) == 0);
  CHECK(diag.count(1, 0) == 0);

  const auto empty = confusion(Pairs{}, {"A", "B"});
  CHECK(empty.total() == 0);
  CHECK_THROWS_AS(confusion(Pairs{{"A", "Z"}}, {"A", "B"}), std::invalid_argument);
}

TEST_CASE("metrics on the twelve-pair fixture") {
  const auto r = metrics(confusion(twelve_pairs(), {"A", "B", "C"}));
  CHECK(std::abs(r.per_class[0].precision - 3.0 / 4.0) < 1e-12);
  CHECK(std::abs(r.per_class[0].recall - 3.0 / 5.0) < 1e-12);
  CHECK(std::abs(r.per_class[0].f1 - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(r.per_class[1].f1 - 3.0 / 4.0) < 1e-12);
  CHECK(std::abs(r.per_class[2].precision - 1.0 / 2.0) < 1e-12);
  CHECK(std::abs(r.per_class[2].recall - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(r.per_class[2].f1 - 4.0 / 7.0) < 1e-12);
  CHECK(std::abs(r.macro_f1 - (2.0 / 3.0 + 3.0 / 4.0 + 4.0 / 7.0) / 3.0) < 1e-12);
  CHECK(std::abs(r.accuracy - 8.0 / 12.0) < 1e-12);
  CHECK(r.per_class[0].support == 5);
}

TEST_CASE("metrics on [[5,1],[2,4]]") {
  Pairs pairs = repeat("X", "X", 5);
  for (const auto& part : {repeat("X", "Y", 1), repeat("Y", "X", 2), repeat("Y", "Y", 4)}) {
    pairs.insert(pairs.end(), part.begin(), part.end());
  }
  const auto r = metrics(confusion(pairs, {"X", "Y"}));
  const double p1 = 5.0 / 7.0;
  const double r1 = 5.0 / 6.0;
  CHECK(std::abs(r.per_class[0].precision - p1) < 1e-12);
  CHECK(std::abs(r.per_class[0].recall - r1) < 1e-12);
  CHECK(std::abs(r.per_class[0].f1 - 2 * p1 * r1 / (p1 + r1)) < 1e-12);
  CHECK(std::abs(r.accuracy - 9.0 / 12.0) < 1e-12);
}

TEST_CASE("perfect predictions and degenerate classes") {
  const auto perfect = metrics(confusion(Pairs{{"A", "A"}, {"B", "B"}}, {"A", "B"}));
  CHECK(perfect.macro_precision == 1.0);
  CHECK(perfect.macro_recall == 1.0);
  CHECK(perfect.macro_f1 == 1.0);
  CHECK(perfect.accuracy == 1.0);

  const auto with_empty = metrics(confusion(Pairs{{"A", "A"}, {"B", "B"}}, {"A", "B", "C"}));
  CHECK(with_empty.per_class[2].precision == 0.0);
  CHECK(with_empty.per_class[2].recall == 0.0);
  CHECK(with_empty.per_class[2].f1 == 0.0);
  CHECK(std::abs(with_empty.macro_f1 - 2.0 / 3.0) < 1e-12);

  CHECK_THROWS_AS(metrics(confusion(Pairs{}, {"A"})), std::invalid_argument);
}

TEST_CASE("NonClassified stays out of the averages unless asked") {
  const std::string nc = "NonClassified";
  const Pairs pairs = {{"A", "A"}, {"A", nc}, {"B", "B"}, {"B", "B"}};
  const auto cm = confusion(pairs, {"A", "B", nc});
  const auto def = metrics(cm);
  // A: P 1, R 1/2, F1 2/3. B: all 1.
  CHECK(std::abs(def.macro_recall - 0.75) < 1e-12);
  CHECK(std::abs(def.macro_f1 - (2.0 / 3.0 + 1.0) / 2.0) < 1e-12);
  CHECK(std::abs(def.accuracy - 0.75) < 1e-12);
  const auto incl = metrics(cm, {true, false});
  CHECK(std::abs(incl.macro_f1 - (2.0 / 3.0 + 1.0 + 0.0) / 3.0) < 1e-12);
  const auto weighted = metrics(cm, {false, true});
  CHECK(std::abs(weighted.macro_f1 - (2 * 2.0 / 3.0 + 2 * 1.0) / 4.0) < 1e-12);
}

TEST_CASE("metrics ignore pair order and class order") {
  std::mt19937_64 rng(21);
  const std::vector<std::string> classes = {"A", "B", "C", "D"};
  for (int round = 0; round < 200; ++round) {
    Pairs pairs;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) pairs.emplace_back(classes[rng() % 4], classes[rng() % 4]);
    const auto base = metrics(confusion(pairs, classes));

    auto shuffled = pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto reordered = classes;
    std::shuffle(reordered.begin(), reordered.end(), rng);
    const auto other = metrics(confusion(shuffled, reordered));
    CHECK(std::abs(other.accuracy - base.accuracy) < 1e-12);
    CHECK(std::abs(other.macro_precision - base.macro_precision) < 1e-12);
    CHECK(std::abs(other.macro_recall - base.macro_recall) < 1e-12);
    CHECK(std::abs(other.macro_f1 - base.macro_f1) < 1e-12);
    for (const auto& m : base.per_class) {
      const auto it = std::find_if(other.per_class.begin(), other.per_class.end(),
                                   [&](const ClassMetrics& o) { return o.name == m.name; });
      REQUIRE(it != other.per_class.end());
      CHECK(it->f1 == m.f1);
      CHECK((m.f1 == 0.0) == (m.precision == 0.0 || m.recall == 0.0));
      CHECK(m.f1 <= 1.0);
    }
  }
}

TEST_CASE("class name lists") {
  CHECK(parent_class_names().size() == 6);
  CHECK(parent_class_names().back() == "NonClassified");
  CHECK(sub_class_names().size() == 10);
}
