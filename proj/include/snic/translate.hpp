#pragma once

// Code translations between paired instances. Each takes the mapping record
// produced alongside the instance it targets.

#include <optional>
#include <vector>

#include "snic/codes.hpp"
#include "snic/transform.hpp"

namespace snic {

/// Deterministic code for augment(instance): the key slot "key:v" of every
/// edge function reads the fresh key source of v instead, reduced modulo the
/// original key size. Throws PreconditionError when a key size does not divide
/// the augmented key alphabet, CodeMismatchError.
NetworkCode randomized_to_augmented(const NetworkInstance& instance, const NetworkCode& code);

/// Inverse of randomized_to_augmented for the given key alphabets. Decoders
/// read the key source of their own node as 0. Throws PreconditionError when
/// `code` is not deterministic or an edge function uses its key source beyond
/// the residue modulo the requested key size.
NetworkCode augmented_to_randomized(const NetworkInstance& instance, const NetworkCode& code,
                                    const std::map<std::string, Alphabet>& key_alphabets);

/// Identity on source edges, the index encoder on 1->2 and the fanout, the
/// index decoders at the receiver nodes. Node 1 carries the sender key.
NetworkCode t1_index_code_to_network_code(const IndexInstance& index, const IndexToNetworkMapping& mapping,
                                          const IndexCode& code);

/// Encoder = global function of 1->2 with every key except node 1's held at 0.
/// Throws DecodabilityPreconditionError when `code` is not decodable,
/// PreconditionError("source not recoverable", id), CodeMismatchError.
IndexCode t1_network_code_to_index_code(const IndexInstance& index, const IndexToNetworkMapping& mapping,
                                        const NetworkCode& code);

/// Broadcast digit of edge e is (edge message + global symbol of e) mod size.
/// Throws PreconditionError("code not deterministic"), CodeMismatchError.
IndexCode t2_network_code_to_index_code(const NetworkInstance& augmented, const NetworkToIndexMapping& mapping,
                                        const NetworkCode& code);

/// Edge functions and decoders are the per-edge and per-destination index
/// decoders with the broadcast held at `sigma`. The default sigma is the
/// encoder output at the all-zero input. Throws DecodabilityPreconditionError
/// when `code` is not decodable, PreconditionError when sigma is not in the
/// encoder image, CodeMismatchError.
NetworkCode t2_index_code_to_network_code(const NetworkInstance& augmented, const NetworkToIndexMapping& mapping,
                                          const IndexCode& code, std::optional<Symbol> sigma = std::nullopt);

/// Distinct encoder outputs, ascending.
std::vector<Symbol> encoder_image(const IndexCode& code);

}  // namespace snic
