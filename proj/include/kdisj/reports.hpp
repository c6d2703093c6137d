#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kdisj/dataset.hpp"
#include "kdisj/disjunctive.hpp"
#include "kdisj/grid.hpp"
#include "kdisj/profile.hpp"
#include "kdisj/superclass.hpp"

// Tab- and comma-delimited report writers. Classes are numbered from 1 in
// every report, as in the rendered maps.

namespace kdisj {

void write_disjunctive(std::ostream& os, const DisjunctiveTable& table);
void write_adjusted(std::ostream& os, const AdjustedTable& adjusted, const CategoricalSchema& schema);
void write_dropped_rows(std::ostream& os, std::span<const DroppedRow> dropped);
void write_dropped_modalities(std::ostream& os, const AdjustedTable& adjusted, const CategoricalSchema& schema);

void write_individuals(std::ostream& os, std::span<const std::string> ids, std::span<const UnitId> units,
                       const GridSpec& spec, const SuperClassification* sc = nullptr);
void write_modalities(std::ostream& os, const CategoricalSchema& schema, std::span<const std::size_t> columns,
                      std::span<const UnitId> units, const GridSpec& spec, const SuperClassification* sc = nullptr);

void write_superclasses(std::ostream& os, const SuperClassification& sc, const GridSpec& spec);
void write_contiguity(std::ostream& os, const SuperClassification& sc, const ContiguityReport& report);
void write_elbow(std::ostream& os, std::span<const ElbowEntry> elbow);

void write_sizes(std::ostream& os, std::span<const std::size_t> sizes);
/// Modalities as rows, classes as columns, then the whole population;
/// percentages rounded to integers, NA for empty classes.
void write_modality_pct(std::ostream& os, const CategoricalSchema& schema, const PercentTable& pct);
void write_means(std::ostream& os, std::span<const std::string> names, const MeansTable& means);
void write_fstats(std::ostream& os, std::span<const std::string> names, const Matrix& quantitative,
                  std::span<const std::size_t> labels);
void write_deviations(std::ostream& os, const CategoricalSchema& schema, const Matrix& deviations);

}  // namespace kdisj
