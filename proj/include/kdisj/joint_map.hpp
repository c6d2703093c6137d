#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "kdisj/disjunctive.hpp"
#include "kdisj/som.hpp"

namespace kdisj {

/// Kohonen map whose code vectors hold M components living in individual
/// space (rows of D^c) followed by N components living in modality space
/// (columns of D^c). Individuals and modalities are trained and classified on
/// the same grid.
class KdisjModel {
 public:
  KdisjModel(Codebook codebook, std::size_t individuals, std::size_t modalities);

  const Codebook& codebook() const noexcept { return codebook_; }
  Codebook& codebook() noexcept { return codebook_; }

  std::size_t individuals() const noexcept { return individuals_; }
  std::size_t modalities() const noexcept { return modalities_; }

  ComponentRange individual_part() const noexcept { return {0, modalities_}; }
  ComponentRange modality_part() const noexcept { return {modalities_, individuals_}; }

  std::uint64_t schema_hash = 0;
  std::uint64_t seed = 0;
  Schedule schedule;

 private:
  Codebook codebook_;
  std::size_t individuals_;
  std::size_t modalities_;
};

/// Row i of D^c followed by the column of i's rarest modality.
std::vector<double> extended_vector(const AdjustedTable& adjusted, std::size_t i);

/// Winner on the individual part; the winner and its neighbours move their
/// whole code vector toward the extended vector of i.
void step_individual(KdisjModel& model, const AdjustedTable& adjusted, std::size_t i, std::size_t t,
                     const Schedule& sched);

/// Winner on the modality part; only the modality part moves toward column j.
void step_modality(KdisjModel& model, const AdjustedTable& adjusted, std::size_t j, std::size_t t,
                   const Schedule& sched);

/// sched.total_steps iterations, each one individual draw then one modality
/// draw. Code vectors start uniform in [0, max d^c].
KdisjModel train(const AdjustedTable& adjusted, const GridSpec& spec, const Schedule& sched,
                 std::uint64_t seed);

std::vector<UnitId> classify_individuals(const KdisjModel& model, const AdjustedTable& adjusted);
std::vector<UnitId> classify_modalities(const KdisjModel& model, const AdjustedTable& adjusted);

void write_model_meta(std::ostream& os, const KdisjModel& model);

/// Writes the codebook to `path` and the sidecar header to `path` + ".meta".
void save_model(const std::filesystem::path& path, const KdisjModel& model,
                const std::string& provenance = {});
KdisjModel load_model(const std::filesystem::path& path);

}  // namespace kdisj
