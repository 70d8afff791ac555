#include "suitegen/search_ops.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace suitegen {

namespace {

std::size_t max_suite_size(const GenerationLimits& limits) {
  return 2 * static_cast<std::size_t>(limits.max_test_cases);
}

std::size_t max_test_actions(const GenerationLimits& limits) {
  return 2 * static_cast<std::size_t>(limits.max_actions);
}

template <typename Pred>
std::vector<std::size_t> tests_where(const TestSuite& suite, Pred pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < suite.tests.size(); ++i) {
    if (pred(suite.tests[i])) out.push_back(i);
  }
  return out;
}

void resample_one_arg(ActionCall& call, const UutMetadata& meta, Rng& rng) {
  const auto& params = meta.params_of(call.action_id);
  if (params.empty()) return;
  const std::size_t which = rng.index(params.size());
  call.args[which] = sample_param(params[which], rng);
}

void modify_action(TestSuite& suite, const UutMetadata& meta, Rng& rng) {
  TestCase& test = suite.tests[rng.index(suite.tests.size())];
  ActionCall& call = test.calls[rng.index(test.calls.size())];
  if (call.action_id == kConstructorId) {
    resample_one_arg(call, meta, rng);
    return;
  }
  const bool replace_action = rng.coin();
  if (replace_action || meta.params_of(call.action_id).empty()) {
    const int id = static_cast<int>(rng.index(meta.actions.size()));
    call = random_call(id, meta, rng);
  } else {
    resample_one_arg(call, meta, rng);
  }
}

}  // namespace

const char* to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::AddTest: return "AddTest";
    case MutationKind::DeleteTest: return "DeleteTest";
    case MutationKind::AddAction: return "AddAction";
    case MutationKind::DeleteAction: return "DeleteAction";
    case MutationKind::ModifyAction: return "ModifyAction";
  }
  return "?";
}

std::vector<MutationKind> applicable_mutations(const TestSuite& suite,
                                               const GenerationLimits& limits) {
  std::vector<MutationKind> kinds;
  if (suite.tests.size() < max_suite_size(limits)) kinds.push_back(MutationKind::AddTest);
  if (suite.tests.size() > 1) kinds.push_back(MutationKind::DeleteTest);
  const std::size_t cap = max_test_actions(limits);
  bool can_grow = false;
  bool can_shrink = false;
  for (const auto& t : suite.tests) {
    can_grow = can_grow || t.action_count() < cap;
    can_shrink = can_shrink || t.action_count() > 0;
  }
  if (can_grow) kinds.push_back(MutationKind::AddAction);
  if (can_shrink) kinds.push_back(MutationKind::DeleteAction);
  kinds.push_back(MutationKind::ModifyAction);
  return kinds;
}

void apply_mutation(TestSuite& suite, MutationKind kind, const UutMetadata& meta,
                    const GenerationLimits& limits, Rng& rng) {
  suite.fitness.reset();
  switch (kind) {
    case MutationKind::AddTest:
      suite.tests.push_back(generate_random_test(meta, limits, rng));
      break;
    case MutationKind::DeleteTest:
      suite.tests.erase(suite.tests.begin() +
                        static_cast<std::ptrdiff_t>(rng.index(suite.tests.size())));
      break;
    case MutationKind::AddAction: {
      const std::size_t cap = max_test_actions(limits);
      auto eligible = tests_where(suite, [cap](const TestCase& t) { return t.action_count() < cap; });
      TestCase& test = suite.tests[eligible[rng.index(eligible.size())]];
      const auto pos = 1 + rng.index(test.calls.size());
      const int id = static_cast<int>(rng.index(meta.actions.size()));
      test.calls.insert(test.calls.begin() + static_cast<std::ptrdiff_t>(pos),
                        random_call(id, meta, rng));
      break;
    }
    case MutationKind::DeleteAction: {
      auto eligible = tests_where(suite, [](const TestCase& t) { return t.action_count() > 0; });
      TestCase& test = suite.tests[eligible[rng.index(eligible.size())]];
      const auto pos = 1 + rng.index(test.action_count());
      test.calls.erase(test.calls.begin() + static_cast<std::ptrdiff_t>(pos));
      break;
    }
    case MutationKind::ModifyAction:
      modify_action(suite, meta, rng);
      break;
  }
}

TestSuite mutate(const TestSuite& suite, const UutMetadata& meta, const GenerationLimits& limits,
                 Rng& rng) {
  TestSuite out = suite;
  const auto kinds = applicable_mutations(out, limits);
  apply_mutation(out, kinds[rng.index(kinds.size())], meta, limits, rng);
  return out;
}

std::pair<TestSuite, TestSuite> uniform_crossover(const TestSuite& a, const TestSuite& b,
                                                  Rng& rng) {
  TestSuite first;
  TestSuite second;
  const std::size_t common = std::min(a.tests.size(), b.tests.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (rng.coin()) {
      first.tests.push_back(a.tests[i]);
      second.tests.push_back(b.tests[i]);
    } else {
      first.tests.push_back(b.tests[i]);
      second.tests.push_back(a.tests[i]);
    }
  }
  const TestSuite& longer = a.tests.size() > b.tests.size() ? a : b;
  for (std::size_t i = common; i < longer.tests.size(); ++i) {
    (rng.coin() ? first : second).tests.push_back(longer.tests[i]);
  }
  // Keep both children non-empty by moving the sibling's last test over.
  if (first.tests.empty()) {
    first.tests.push_back(std::move(second.tests.back()));
    second.tests.pop_back();
  } else if (second.tests.empty()) {
    second.tests.push_back(std::move(first.tests.back()));
    first.tests.pop_back();
  }
  return {std::move(first), std::move(second)};
}

std::size_t tournament_index(std::span<const TestSuite> population, std::size_t k, Rng& rng,
                             std::vector<std::size_t>* sampled) {
  if (k < 1 || k > population.size()) {
    throw std::invalid_argument("tournament size " + std::to_string(k) +
                                " outside [1, population size " +
                                std::to_string(population.size()) + "]");
  }
  // Partial Fisher-Yates: the first k slots become a uniform sample.
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.index(order.size() - i);
    std::swap(order[i], order[j]);
  }
  std::size_t winner = order[0];
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t idx = order[i];
    if (!population[idx].fitness) {
      throw std::invalid_argument("tournament member " + std::to_string(idx) + " has no fitness");
    }
    const double f = *population[idx].fitness;
    const double best = *population[winner].fitness;
    if (f > best || (f == best && idx < winner)) winner = idx;
  }
  if (sampled) sampled->assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  return winner;
}

TestSuite tournament_select(std::span<const TestSuite> population, std::size_t k, Rng& rng) {
  return population[tournament_index(population, k, rng)];
}

}  // namespace suitegen
