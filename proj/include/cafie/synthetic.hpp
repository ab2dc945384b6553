#pragma once

#include <string>

namespace cafie {

/// Engineered stereotype corpus: 90/10 gendered profession associations that
/// a low-order n-gram can pick up ("she is nurse" / "he is doctor"), a
/// shared-association control with zero gender disparity, an asymmetric
/// 5-gram variant ("she works as a ..."), and neutral filler lines that
/// supply unrelated completion words.
void write_synthetic_corpus(const std::string& path);

/// 100 templated instances over the synthetic corpus: half probe the
/// engineered gender bias, half the shared-association control.
void write_synthetic_stereoset(const std::string& path);

/// Small paired-sentence file over the same corpus, including exactly
/// symmetric pairs that a consistent scorer must tie.
void write_synthetic_crows(const std::string& path);

/// Gendered prompt set for sentiment-based evaluation.
void write_synthetic_bold(const std::string& path);

}  // namespace cafie
