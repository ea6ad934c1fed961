#pragma once

#include "s3e/poly/poly.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace s3e {

/// Polynomials over one shared variable table, plus provenance metadata.
struct PolySystem {
    VarTablePtr vars;
    MonomialOrder order = MonomialOrder::lex;
    std::vector<QPoly> polys;
    std::string label;  // e.g. "z2xz2"
    std::string note;

    std::size_t size() const noexcept { return polys.size(); }
    /// Throws PolyError if a polynomial lives on another variable table.
    void check() const;
    /// Same ideal generators re-sorted under another order.
    PolySystem with_order(MonomialOrder order) const;
};

/// Parses the system file format:
///
///     # comment (optional "# case: <label>" and "# note: <text>")
///     vars: A B C
///     order: lex|grevlex          (optional, default lex)
///     <one polynomial per line>
PolySystem parse_system(std::string_view text);
PolySystem read_system_file(const std::filesystem::path& path);

/// Canonical serialization; `comments` are emitted as "# " lines after the metadata.
std::string format_system(const PolySystem& sys, const std::vector<std::string>& comments = {});
void write_system_file(const std::filesystem::path& path, const PolySystem& sys,
                       const std::vector<std::string>& comments = {});

/// FNV-1a hash of the canonical serialization, hex encoded. Used as provenance tag.
std::string system_hash(const PolySystem& sys);
std::string fnv1a_hex(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace s3e
