#pragma once

// Network and index codes, and the canonical argument layout of every
// function they contain.
//
//   edge function f_e      in(tail(e)) edges by id, sources at tail(e) by id,
//                          then "key:<tail>" when the tail's key alphabet > 1
//   node decoder g_u       in(u) edges by id, sources at u by id; output is the
//                          required sources (by id) packed mixed-radix
//   index encoder          all messages by id, then "key:sender" when keyed
//   index decoder          "broadcast", then has-set messages by id; output is
//                          the wants-set (by id) packed mixed-radix
//
// Mixed radix is always little-endian: the first listed item is the least
// significant digit.

#include <map>
#include <string>
#include <vector>

#include "snic/function.hpp"
#include "snic/model.hpp"

namespace snic {

inline constexpr const char* kSenderKeySlot = "key:sender";
inline constexpr const char* kBroadcastSlot = "broadcast";

inline std::string key_slot_name(const std::string& node) { return "key:" + node; }

struct NetworkCode {
    std::map<std::string, FiniteFunction> edge_functions;
    /// Only destination nodes carry a decoder.
    std::map<std::string, FiniteFunction> node_decoders;
    /// Missing entries mean size 1 (deterministic at that node).
    std::map<std::string, Alphabet> key_alphabets;

    Alphabet key_alphabet(const std::string& node) const;
    bool deterministic() const;

    friend bool operator==(const NetworkCode&, const NetworkCode&) = default;
};

struct IndexCode {
    FiniteFunction encoder;
    /// One decoder per receiver with a non-empty wants set.
    std::map<std::string, FiniteFunction> decoders;
    Alphabet key_alphabet;

    friend bool operator==(const IndexCode&, const IndexCode&) = default;
};

std::vector<Slot> edge_slots(const NetworkInstance& instance, const Edge& edge, Alphabet tail_key);
std::vector<Slot> decoder_slots(const NetworkInstance& instance, const std::string& node);
/// Product alphabet of the sources `node` requires.
Alphabet requirement_alphabet(const NetworkInstance& instance, const std::string& node);

std::vector<Slot> encoder_slots(const IndexInstance& instance, Alphabet key);
std::vector<Slot> index_decoder_slots(const IndexInstance& instance, const Receiver& receiver);
Alphabet wants_alphabet(const IndexInstance& instance, const Receiver& receiver);

/// Throw CodeMismatchError naming the first disagreement.
void check_code_matches(const NetworkInstance& instance, const NetworkCode& code);
void check_code_matches(const IndexInstance& instance, const IndexCode& code);

}  // namespace snic
