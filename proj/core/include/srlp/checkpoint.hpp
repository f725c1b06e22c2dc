#ifndef SRLP_CHECKPOINT_HPP
#define SRLP_CHECKPOINT_HPP

#include <cstdint>
#include <string>

#include "srlp/optim.hpp"

namespace srlp {

// Binary parameter container, little-endian:
//   magic "SRLPCKPT" | u32 version | u64 sidecar_hash | u64 n_params
//   then per parameter, sorted by name:
//   u32 name_len | name bytes | u8 trainable | u32 rank | u64 dims[rank] | f64 data[]
// Adam moments are not persisted; a loaded store starts with fresh state.
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string serialize_checkpoint(const ParamStore& store, std::uint64_t sidecar_hash);
void save_checkpoint(const ParamStore& store, const std::string& path,
                     std::uint64_t sidecar_hash);

// Verifies magic and version; returns the stored sidecar hash via out-param.
ParamStore parse_checkpoint(const std::string& bytes, std::uint64_t* sidecar_hash);
ParamStore load_checkpoint(const std::string& path, std::uint64_t* sidecar_hash);

}  // namespace srlp

#endif
