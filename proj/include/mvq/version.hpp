#pragma once

namespace mvq {

inline constexpr const char* kToolVersion = "0.1.0";

// Version tag for the built-in solution corpus. Bumped whenever the set of
// families or their parameters change, so report files stay reproducible.
inline constexpr const char* kCorpusVersion = "corpus-1";

}  // namespace mvq
