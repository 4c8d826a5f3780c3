#pragma once

#include "tforge/evaluator.hpp"
#include "tforge/rational.hpp"
#include "tforge/report.hpp"

#include <filesystem>
#include <string>

namespace tforge {

/// Largest weight accepted by `basis` (enumeration grows like 2^k).
inline constexpr std::uint32_t kBasisWeightCap = 64;
/// Largest weight accepted by `scan`.
inline constexpr std::uint32_t kScanWeightCap = 10;

/// Lists the conjectural basis (or Hoffman's {2,3} indices with mzv) of
/// weight k with its count and predicted dimensions.
RunReport cmd_basis(std::uint32_t k, bool mzv);

/// Evaluates one index with the evaluator's configuration.
RunReport cmd_eval(const std::string& index_text, Evaluator& evaluator);

/// Runs every reproduction check: listings, counts, polar classifier,
/// stuffle fact, shipped relation residuals and the weight-5 walkthrough.
RunReport cmd_verify_paper(long digits, const std::filesystem::path& relations,
                           Evaluator& evaluator);

/// Independence scan of the weight-k basis, then a basis expression for
/// every admissible weight-k index.
RunReport cmd_scan(std::uint32_t k, long digits, const BigInt& coeff_bound,
                   const std::filesystem::path& relations, Evaluator& evaluator,
                   unsigned jobs = 1);

/// Plain-text rendering built only from report.results.
std::string render_text(const RunReport& report);

} // namespace tforge
