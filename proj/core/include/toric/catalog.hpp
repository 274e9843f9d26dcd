#pragma once

// The 18 smooth toric Fano 3-folds with their fans and, for the five Type IV
// varieties, the line-bundle data used by the verification pipeline.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

/// A maximal cone listed by the source together with its ray matrix
/// (rows in the listed ray order) and optionally the printed inverse.
struct PrintedFrame {
  IndexSet rays;  // 0-based, in listed order (not sorted)
  std::vector<LatticeVector> A;
  std::vector<LatticeVector> B;  // empty when not printed
};

struct FanoRecord {
  std::string id;    // "D1", "E4", ...
  std::string name;  // "Bl_P1(P_P2(O+O(1)))"
  std::vector<std::string> aliases;
  std::string type_class;  // "I" .. "V"
  std::size_t upsilon = 0;
  std::size_t rho = 0;
  std::size_t k0 = 0;
  Fan fan;
  IndexSet basis;  // Pic basis ray indices (0-based)
  bool reference_basis = false;  // basis from the recorded data; otherwise the rays outside cone 0

  std::vector<IndexSet> printed_collections;  // primitive collections as printed
  std::vector<PrimitiveRelation> printed_relations;
  std::vector<PrintedFrame> printed_frames;

  std::vector<std::string> printed_summands;    // class expressions as printed
  std::vector<std::string> expected_summands;   // computed set the pipeline must reproduce
  std::vector<std::string> printed_collection;  // ordered, as printed
  std::vector<std::string> collection;          // ordered sequence verified by default
  std::vector<std::string> notes;               // discrepancies against the printed data

  bool has_payload() const { return !collection.empty(); }
};

const std::vector<FanoRecord>& load_catalog();

/// Case-insensitive lookup by id, name or alias; throws UnknownVariety.
const FanoRecord& find_record(std::string_view key);

struct RecordCheck {
  std::string id;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Fan validity, Fano property, rho = upsilon - 3, k0 = 2 upsilon - 4 =
/// #maximal cones, and agreement with the printed collections, relations and
/// frames wherever they are recorded.
std::vector<RecordCheck> validate_catalog(const std::vector<FanoRecord>& records);
RecordCheck validate_record(const FanoRecord& record);

/// Maximal cones of a simplicial complete fan given its primitive collections:
/// every dim-subset of rays containing no primitive collection.
std::vector<IndexSet> cones_from_primitive_collections(std::size_t ray_count, std::size_t dim,
                                                       const std::vector<IndexSet>& collections);

/// Parses "v1+v2+v4=2v3" (1-based) into a relation; the degree is filled in.
PrimitiveRelation parse_relation(std::string_view text);

}  // namespace toric
