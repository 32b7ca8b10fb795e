#include <cmath>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "swoco/csv.hpp"
#include "swoco/engine.hpp"
#include "swoco/rng.hpp"

using namespace swoco;

namespace {

GameConfig basic(long T, double S, PlayerKind p, AdversaryKind a) {
  GameConfig cfg;
  cfg.T = T;
  cfg.d = 2;
  cfg.D = 2.0;
  cfg.G = 1.0;
  cfg.S = S;
  cfg.player = p;
  cfg.adversary = a;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  GameConfig cfg = basic(100, 10.0, PlayerKind::kOgd, AdversaryKind::kAdaptive);
  CHECK_NOTHROW(cfg.validate());

  cfg.T = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.T = 100;

  cfg.S = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.S = 10.0;

  cfg.d = 1;  // picking adversaries need a plane to turn in
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.adversary = AdversaryKind::kRandom;
  CHECK_NOTHROW(cfg.validate());
  cfg.d = 2;

  cfg.player = PlayerKind::kOgdStronglyConvex;  // needs lambda > 0
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.lambda = 3.0;  // quadratic draws then need G >= lambda*D
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.lambda = 0.5;
  CHECK_NOTHROW(cfg.validate());

  cfg = basic(100, 10.0, PlayerKind::kOgd, AdversaryKind::kFixed);
  cfg.fixed_losses = {LinearLoss{{1.0, 0.0}}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // shorter than T
  cfg.fixed_losses.assign(100, LinearLoss{{3.0, 0.0}});
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // slope beyond G
}

TEST_CASE("single-round and frozen games never move") {
  const Transcript one =
      run_game(basic(1, 5.0, PlayerKind::kOgd, AdversaryKind::kAdaptive));
  CHECK(one.rounds.size() == 1);
  CHECK(one.total_switch == 0.0);
  CHECK(one.rounds[0].switch_step == 0.0);

  const Transcript frozen =
      run_game(basic(60, 0.0, PlayerKind::kFrozen, AdversaryKind::kRandom));
  CHECK(frozen.total_switch == 0.0);
  for (const auto& rec : frozen.rounds) CHECK(rec.action == Vec{0.0, 0.0});
}

TEST_CASE("fixed-step player honors a tight budget at scale") {
  const Transcript tr =
      run_game(basic(10000, 10.0, PlayerKind::kOgd, AdversaryKind::kAdaptive));
  CHECK(switching_cost(tr) <= 10.0 * (1.0 + 1e-9));
  CHECK(tr.total_switch == doctest::Approx(switching_cost(tr)));
}

TEST_CASE("switching cost recomputation") {
  CHECK(switching_cost(std::vector<Vec>{{0.0, 0.0}, {0.3, 0.4}}) ==
        doctest::Approx(0.5));
  CHECK(switching_cost(std::vector<Vec>{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}) ==
        0.0);
}

TEST_CASE("closed-form linear regret on replayed sequences") {
  // Constant slope against a frozen player at the origin:
  // played = 0, |sum m| = T, R = (D/2)*T = 10.
  GameConfig cfg = basic(10, 0.0, PlayerKind::kFrozen, AdversaryKind::kFixed);
  cfg.fixed_losses.assign(10, LinearLoss{{1.0, 0.0}});
  const Transcript tr = run_game(cfg);
  CHECK(regret_linear(tr) == doctest::Approx(10.0));

  // Zero-sum directions cancel: R = 0.
  cfg.fixed_losses.clear();
  for (int i = 0; i < 10; ++i) {
    cfg.fixed_losses.push_back(
        LinearLoss{{i % 2 == 0 ? 1.0 : -1.0, 0.0}});
  }
  const Transcript tr2 = run_game(cfg);
  CHECK(regret_linear(tr2) == doctest::Approx(0.0));

  // Quadratic rounds are outside this formula's contract.
  GameConfig qcfg = basic(5, 1.0, PlayerKind::kFrozen, AdversaryKind::kFixed);
  qcfg.fixed_losses.assign(5, QuadraticLoss{{0.1, 0.1}, 1.0});
  CHECK_THROWS_AS(regret_linear(run_game(qcfg)), std::invalid_argument);
}

TEST_CASE("regret against an explicit comparator") {
  // Identical quadratics centered at the origin: the frozen player sits at
  // the optimum, so regret vanishes.
  GameConfig cfg = basic(20, 0.0, PlayerKind::kFrozen, AdversaryKind::kFixed);
  cfg.fixed_losses.assign(20, QuadraticLoss{{0.0, 0.0}, 1.0});
  const Transcript tr = run_game(cfg);
  CHECK(regret(tr) == doctest::Approx(0.0));

  // Cross-oracle agreement on a random linear game.
  GameConfig lcfg = basic(100, 5.0, PlayerKind::kOgd, AdversaryKind::kRandom);
  const Transcript ltr = run_game(lcfg);
  std::vector<Vec> slopes;
  for (const auto& rec : ltr.rounds) {
    slopes.push_back(std::get<LinearLoss>(rec.loss).slope);
  }
  const Vec cmp = comparator_linear(slopes, lcfg.domain());
  CHECK(regret_general(ltr, cmp) ==
        doctest::Approx(regret_linear(ltr)).epsilon(1e-6));
  CHECK(regret(ltr) == regret_linear(ltr));
}

TEST_CASE("regret is nonnegative against the exact comparator") {
  Rng seeds(43);
  for (int i = 0; i < 10; ++i) {
    GameConfig cfg = basic(80, 3.0, PlayerKind::kOgd, AdversaryKind::kRandom);
    cfg.seed = seeds.next_u64();
    CHECK(regret(run_game(cfg)) >= -1e-9);

    GameConfig qcfg = basic(80, 3.0, PlayerKind::kOgdStronglyConvex,
                            AdversaryKind::kRandom);
    qcfg.D = 1.0;
    qcfg.G = 2.0;
    qcfg.lambda = 1.0;
    qcfg.seed = seeds.next_u64();
    CHECK(regret(run_game(qcfg)) >= -1e-9);
  }
}

TEST_CASE("audit confirms both sides of the budget-free game") {
  GameConfig cfg =
      basic(10000, 250.0, PlayerKind::kOgd, AdversaryKind::kAdaptive);
  const Transcript tr = run_game(cfg);
  const AuditReport rep = audit_bounds(tr);
  CHECK(rep.all_passed());
  CHECK(rep.compliant);
  const AuditCheck* up = rep.find("convex_regret_upper");
  REQUIRE(up != nullptr);
  CHECK(up->passed);
  CHECK(up->bound == doctest::Approx(2.0 * 100.0));  // D*G*sqrt(T)
  const AuditCheck* lo = rep.find("adaptive_regret_lower");
  REQUIRE(lo != nullptr);
  CHECK(lo->passed);
  CHECK(lo->bound == doctest::Approx(100.0));  // 0.5*D*G*sqrt(T)
  CHECK(rep.regret_value >= lo->bound * (1.0 - 1e-9) - 1e-9);
}

TEST_CASE("a frozen player concedes half the trivial cap") {
  // One fixed direction forever: regret is exactly (D/2)*G*T.
  GameConfig cfg =
      basic(100, 0.5, PlayerKind::kFrozen, AdversaryKind::kAdaptive);
  const Transcript tr = run_game(cfg);
  CHECK(tr.epoch_count == 1);
  const AuditReport rep = audit_bounds(tr);
  CHECK(rep.regret_value == doctest::Approx(100.0));
  const AuditCheck* lo = rep.find("adaptive_regret_lower");
  REQUIRE(lo != nullptr);
  CHECK(lo->passed);
  CHECK(lo->bound == doctest::Approx(0.05 * 2.0 * 100.0));
  CHECK(rep.all_passed());
}

TEST_CASE("the audit reports rather than clamps an overspent budget") {
  // Hand-built transcript: the player teleports across the ball while the
  // budget is tiny, so compliance fails but nothing throws.
  GameConfig cfg = basic(3, 0.1, PlayerKind::kOgd, AdversaryKind::kFixed);
  Transcript tr;
  tr.config = cfg;
  const Vec m = {1.0, 0.0};
  const Vec acts[3] = {{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}};
  for (int t = 1; t <= 3; ++t) {
    RoundRecord rec;
    rec.t = t;
    rec.action = acts[t - 1];
    rec.loss = LinearLoss{m};
    rec.value = dot(m, rec.action);
    rec.switch_step = t == 1 ? 0.0 : distance(acts[t - 1], acts[t - 2]);
    tr.total_switch += rec.switch_step;
    tr.rounds.push_back(rec);
  }
  const AuditReport rep = audit_bounds(tr);
  CHECK_FALSE(rep.compliant);
  const AuditCheck* bc = rep.find("budget_compliance");
  REQUIRE(bc != nullptr);
  CHECK_FALSE(bc->passed);
  CHECK(bc->measured == doctest::Approx(3.0));
  // The trivial cap applies only to compliant transcripts.
  CHECK(rep.find("trivial_regret_cap") == nullptr);
}

TEST_CASE("short strongly convex schedules are flagged, not failed") {
  GameConfig cfg = basic(2, 1.0, PlayerKind::kOgdStronglyConvex,
                         AdversaryKind::kRandom);
  cfg.D = 1.0;
  cfg.G = 2.0;
  cfg.lambda = 1.0;
  const AuditReport rep = audit_bounds(run_game(cfg));
  const AuditCheck* b = rep.find("strongly_convex_budget");
  REQUIRE(b != nullptr);
  CHECK(b->flagged);
  CHECK(rep.all_passed());
}

TEST_CASE("epoch bookkeeping rows pass on a mid-budget game") {
  GameConfig cfg =
      basic(2000, 5.0, PlayerKind::kOgd, AdversaryKind::kAdaptive);
  const Transcript tr = run_game(cfg);
  REQUIRE_FALSE(tr.epoch_starts.empty());
  CHECK(tr.epoch_starts.front() == 1);
  CHECK(tr.epoch_count == static_cast<long>(tr.epoch_starts.size()));
  const AuditReport rep = audit_bounds(tr);
  for (const char* name :
       {"direction_norms", "orthogonal_constraints", "epoch_interior_bound",
        "epoch_exit_bound", "direction_floor", "direction_sum_growth",
        "epoch_count_cap"}) {
    const AuditCheck* c = rep.find(name);
    REQUIRE_MESSAGE(c != nullptr, name);
    CHECK_MESSAGE(c->passed, name);
  }
}

TEST_CASE("reruns are bit-identical") {
  GameConfig cfg =
      basic(500, 5.0, PlayerKind::kMiniBatch, AdversaryKind::kAdaptive);
  const std::string a = transcript_csv(run_game(cfg));
  const std::string b = transcript_csv(run_game(cfg));
  CHECK(a == b);
}

TEST_CASE("transcript CSV shape and exact round-trip") {
  GameConfig cfg = basic(40, 3.0, PlayerKind::kOgd, AdversaryKind::kRandom);
  const Transcript tr = run_game(cfg);
  const std::string csv = transcript_csv(tr);

  std::vector<std::string> lines;
  std::string cur;
  for (char c : csv) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  REQUIRE(lines.size() == 41);
  CHECK(lines[0] == "t,loss_kind,switch_step,loss_value,w1,w2");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    REQUIRE(fields.size() == 6);
    CHECK(std::stol(fields[0]) == static_cast<long>(i));
    CHECK(fields[1] == "linear");
    // 17 significant digits round-trip doubles exactly.
    CHECK(std::stod(fields[2]) == tr.rounds[i - 1].switch_step);
    CHECK(std::stod(fields[3]) == tr.rounds[i - 1].value);
    CHECK(std::stod(fields[4]) == tr.rounds[i - 1].action[0]);
    CHECK(std::stod(fields[5]) == tr.rounds[i - 1].action[1]);
  }

  GameConfig qcfg = basic(5, 1.0, PlayerKind::kFrozen, AdversaryKind::kRandom);
  qcfg.lambda = 0.5;  // quadratic draws
  const std::string qcsv = transcript_csv(run_game(qcfg));
  CHECK(qcsv.find(",quadratic,") != std::string::npos);
}
