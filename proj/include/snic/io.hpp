#pragma once

// Canonical JSON documents. Every document carries "kind" and
// "format_version": 1; keys are emitted in a fixed order and arrays of
// scalars on one line, so equal values always produce identical bytes.

#include <filesystem>
#include <string>
#include <string_view>

#include "snic/codes.hpp"
#include "snic/model.hpp"
#include "snic/transform.hpp"

namespace snic::io {

inline constexpr int kFormatVersion = 1;

enum class DocumentKind {
    network_instance,
    index_instance,
    network_code,
    index_code,
    index_to_network_mapping,
    network_to_index_mapping,
    augmentation_record,
};

std::string_view to_string(DocumentKind kind) noexcept;

/// Kind of a document, checking "format_version". Throws FormatError.
DocumentKind peek_kind(std::string_view text);

std::string emit(const NetworkInstance& instance);
std::string emit(const IndexInstance& instance);
std::string emit(const NetworkCode& code);
std::string emit(const IndexCode& code);
std::string emit(const IndexToNetworkMapping& mapping);
std::string emit(const NetworkToIndexMapping& mapping);
std::string emit(const AugmentationRecord& record);

// All parsers throw FormatError on malformed input, a wrong kind or unknown
// fields. Instances are not validated.
NetworkInstance parse_network_instance(std::string_view text);
IndexInstance parse_index_instance(std::string_view text);
NetworkCode parse_network_code(std::string_view text);
IndexCode parse_index_code(std::string_view text);
IndexToNetworkMapping parse_index_to_network_mapping(std::string_view text);
NetworkToIndexMapping parse_network_to_index_mapping(std::string_view text);
AugmentationRecord parse_augmentation_record(std::string_view text);

/// Throws FormatError when the file cannot be read or written.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

/// Graphviz description of the graph; tapped edges are dashed.
std::string to_dot(const NetworkInstance& instance);

}  // namespace snic::io
