#pragma once

#include <optional>
#include <string>
#include <utility>

namespace talent {

/// Three-valued decision result. Yes carries a replayable witness, No a
/// machine-checkable certificate string, Unknown names the cap that was hit.
template <typename W>
struct Verdict {
  enum class Kind { Yes, No, Unknown };

  Kind kind = Kind::Unknown;
  std::optional<W> witness;
  std::string certificate;

  static Verdict yes(W w, std::string note = {}) {
    return Verdict{Kind::Yes, std::move(w), std::move(note)};
  }
  static Verdict no(std::string cert) { return Verdict{Kind::No, std::nullopt, std::move(cert)}; }
  static Verdict unknown(std::string cert) {
    return Verdict{Kind::Unknown, std::nullopt, std::move(cert)};
  }

  bool is_yes() const { return kind == Kind::Yes; }
  bool is_no() const { return kind == Kind::No; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

}  // namespace talent
