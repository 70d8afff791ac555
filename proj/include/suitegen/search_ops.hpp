#pragma once

#include <span>
#include <utility>
#include <vector>

#include "suitegen/genotype.hpp"
#include "suitegen/metadata.hpp"
#include "suitegen/random.hpp"

namespace suitegen {

enum class MutationKind { AddTest, DeleteTest, AddAction, DeleteAction, ModifyAction };

const char* to_string(MutationKind kind);

/// Kinds that can be applied to `suite` without breaking its invariants.
/// Growth is capped at twice the generation limits.
std::vector<MutationKind> applicable_mutations(const TestSuite& suite,
                                               const GenerationLimits& limits);

/// Applies `kind` in place; `kind` must be applicable. Clears the fitness.
void apply_mutation(TestSuite& suite, MutationKind kind, const UutMetadata& meta,
                    const GenerationLimits& limits, Rng& rng);

/// Returns a copy of `suite` with exactly one random applicable mutation.
TestSuite mutate(const TestSuite& suite, const UutMetadata& meta, const GenerationLimits& limits,
                 Rng& rng);

std::pair<TestSuite, TestSuite> uniform_crossover(const TestSuite& a, const TestSuite& b,
                                                  Rng& rng);

/// Samples `k` distinct members and returns a copy of the fittest one; ties go
/// to the lowest population index. Throws std::invalid_argument on a bad `k` or
/// a member without fitness.
TestSuite tournament_select(std::span<const TestSuite> population, std::size_t k, Rng& rng);

/// Index form of tournament_select, also reporting which members competed.
std::size_t tournament_index(std::span<const TestSuite> population, std::size_t k, Rng& rng,
                             std::vector<std::size_t>* sampled = nullptr);

}  // namespace suitegen
