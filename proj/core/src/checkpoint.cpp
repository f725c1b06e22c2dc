#include "srlp/checkpoint.hpp"

#include <cstring>

#include "srlp/error.hpp"
#include "srlp/text.hpp"

namespace srlp {

namespace {

constexpr char kMagic[8] = {'S', 'R', 'L', 'P', 'C', 'K', 'P', 'T'};

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T take(const std::string& in, std::size_t* pos) {
  if (*pos + sizeof(T) > in.size()) fail("checkpoint: truncated file");
  T v;
  std::memcpy(&v, in.data() + *pos, sizeof(T));
  *pos += sizeof(T);
  return v;
}

}  // namespace

std::string serialize_checkpoint(const ParamStore& store, std::uint64_t sidecar_hash) {
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, sidecar_hash);
  put<std::uint64_t>(out, store.entries().size());
  for (const auto& [name, entry] : store.entries()) {  // std::map: sorted
    put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.append(name);
    put<std::uint8_t>(out, entry.trainable ? 1 : 0);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(entry.value.shape.size()));
    for (std::size_t d : entry.value.shape) put<std::uint64_t>(out, d);
    for (real_t v : entry.value.data) put<double>(out, static_cast<double>(v));
  }
  return out;
}

void save_checkpoint(const ParamStore& store, const std::string& path,
                     std::uint64_t sidecar_hash) {
  write_file(path, serialize_checkpoint(store, sidecar_hash));
}

ParamStore parse_checkpoint(const std::string& bytes, std::uint64_t* sidecar_hash) {
  std::size_t pos = 0;
  if (bytes.size() < sizeof(kMagic) ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
    fail("checkpoint: bad magic");
  pos = sizeof(kMagic);
  std::uint32_t version = take<std::uint32_t>(bytes, &pos);
  if (version != kCheckpointVersion)
    fail("checkpoint: unsupported format version %u", version);
  std::uint64_t hash = take<std::uint64_t>(bytes, &pos);
  if (sidecar_hash) *sidecar_hash = hash;

  ParamStore store;
  std::uint64_t n = take<std::uint64_t>(bytes, &pos);
  for (std::uint64_t k = 0; k < n; ++k) {
    std::uint32_t name_len = take<std::uint32_t>(bytes, &pos);
    if (pos + name_len > bytes.size()) fail("checkpoint: truncated file");
    std::string name = bytes.substr(pos, name_len);
    pos += name_len;
    bool trainable = take<std::uint8_t>(bytes, &pos) != 0;
    std::uint32_t rank = take<std::uint32_t>(bytes, &pos);
    std::vector<std::size_t> shape;
    std::size_t numel = 1;
    for (std::uint32_t d = 0; d < rank; ++d) {
      std::size_t dim = static_cast<std::size_t>(take<std::uint64_t>(bytes, &pos));
      shape.push_back(dim);
      numel *= dim;
    }
    Tensor t = Tensor::zeros(shape);
    for (std::size_t i = 0; i < numel; ++i)
      t.data[i] = static_cast<real_t>(take<double>(bytes, &pos));
    store.create(name, std::move(t), trainable);
  }
  return store;
}

ParamStore load_checkpoint(const std::string& path, std::uint64_t* sidecar_hash) {
  return parse_checkpoint(read_file(path), sidecar_hash);
}

}  // namespace srlp
